//! Affine automorphisms `x ↦ L·x + T` of the torus `R^n/Z^n` and the exact
//! decision whether such a map has a fixed point.
//!
//! A point is fixed iff `(L − I)·x = λ − T` for some `x ∈ R^n`, `λ ∈ Z^n`.
//! With `Q` the cokernel of `L − I` this happens iff `Q·T ∈ Q·Z^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ExactError, TorusError};
use crate::exact::normal_form::int_det;
use crate::exact::rational::{frac, from_bigint, rational_text};
use crate::exact::{
    cokernel_map, solve_linear, GaussianMatrix, GaussianRational, MembershipWitness,
    PreparedLattice, Rational, RationalMatrix,
};
use crate::words::{GroupElement, Images, ReducedWord};

/// An affine map of `R^n/Z^n` with unimodular integer linear part and
/// translation reduced into `[0, 1)^n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTorusMap", into = "RawTorusMap")]
pub struct AffineTorusMap {
    l: RationalMatrix,
    t: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawTorusMap {
    n: usize,
    #[serde(rename = "L")]
    l: RationalMatrix,
    #[serde(rename = "T", with = "crate::json::rational_vec")]
    t: Vec<Rational>,
}

impl TryFrom<RawTorusMap> for AffineTorusMap {
    type Error = TorusError;

    fn try_from(raw: RawTorusMap) -> Result<Self, TorusError> {
        if raw.l.rows() != raw.n {
            return Err(TorusError::Dimension(raw.n, raw.l.rows()));
        }
        if let Some(x) = raw.t.iter().find(|x| frac(x) != **x) {
            return Err(TorusError::NotReduced(rational_text(x)));
        }
        AffineTorusMap::new(raw.l, raw.t)
    }
}

impl From<AffineTorusMap> for RawTorusMap {
    fn from(f: AffineTorusMap) -> Self {
        RawTorusMap { n: f.dim(), l: f.l, t: f.t }
    }
}

fn check_dims(l: &RationalMatrix, len: usize) -> Result<(), TorusError> {
    if !l.is_square() {
        return Err(ExactError::NotSquare(l.rows(), l.cols()).into());
    }
    if l.rows() != len {
        return Err(TorusError::Dimension(l.rows(), len));
    }
    Ok(())
}

impl AffineTorusMap {
    pub fn new(l: RationalMatrix, t: Vec<Rational>) -> Result<Self, TorusError> {
        check_dims(&l, t.len())?;
        let rows = l.to_integer_rows().map_err(TorusError::NonIntegerLinear)?;
        let det = int_det(&rows);
        if det.abs() != BigInt::one() {
            return Err(TorusError::NotUnimodular(det.to_string()));
        }
        let t = t.iter().map(frac).collect();
        Ok(AffineTorusMap { l, t })
    }

    /// The linear automorphism `x ↦ L·x`.
    pub fn linear(l: RationalMatrix) -> Result<Self, TorusError> {
        let n = l.rows();
        Self::new(l, vec![Rational::zero(); n])
    }

    pub fn translation(t: Vec<Rational>) -> Self {
        let n = t.len();
        Self::new(RationalMatrix::identity(n), t).expect("identity is unimodular")
    }

    pub fn identity(n: usize) -> Self {
        Self::translation(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn linear_part(&self) -> &RationalMatrix {
        &self.l
    }

    pub fn translation_part(&self) -> &[Rational] {
        &self.t
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, TorusError> {
        if self.dim() != other.dim() {
            return Err(TorusError::Dimension(self.dim(), other.dim()));
        }
        let lt = self.l.mul_vec(&other.t)?;
        let t = lt.iter().zip(&self.t).map(|(a, b)| frac(&(a + b))).collect();
        Ok(AffineTorusMap { l: &self.l * &other.l, t })
    }

    pub fn invert(&self) -> Self {
        let inv = self.l.inverse().expect("unimodular matrices are invertible");
        let t = inv
            .mul_vec(&self.t)
            .expect("square")
            .iter()
            .map(|x| frac(&-x))
            .collect();
        AffineTorusMap { l: inv, t }
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>, TorusError> {
        if x.len() != self.dim() {
            return Err(TorusError::Dimension(self.dim(), x.len()));
        }
        let lx = self.l.mul_vec(x)?;
        Ok(lx.iter().zip(&self.t).map(|(a, b)| frac(&(a + b))).collect())
    }

    /// `L − I`.
    pub fn displacement_matrix(&self) -> RationalMatrix {
        &self.l - &RationalMatrix::identity(self.dim())
    }
}

impl GroupElement for AffineTorusMap {
    fn compose(&self, rhs: &Self) -> Self {
        AffineTorusMap::compose(self, rhs).expect("generator images share a dimension")
    }

    fn inverse(&self) -> Self {
        self.invert()
    }

    fn identity_like(&self) -> Self {
        AffineTorusMap::identity(self.dim())
    }
}

/// An affine map of `Q^n` with no reduction of the translation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalAffine {
    pub l: RationalMatrix,
    pub t: Vec<Rational>,
}

impl RationalAffine {
    pub fn new(l: RationalMatrix, t: Vec<Rational>) -> Result<Self, TorusError> {
        check_dims(&l, t.len())?;
        if l.det()?.is_zero() {
            return Err(ExactError::Singular.into());
        }
        Ok(RationalAffine { l, t })
    }

    pub fn to_torus_map(&self) -> Result<AffineTorusMap, TorusError> {
        AffineTorusMap::new(self.l.clone(), self.t.clone())
    }
}

impl GroupElement for RationalAffine {
    fn compose(&self, rhs: &Self) -> Self {
        let lt = self.l.mul_vec(&rhs.t).expect("matching dimensions");
        RationalAffine {
            l: &self.l * &rhs.l,
            t: lt.iter().zip(&self.t).map(|(a, b)| a + b).collect(),
        }
    }

    fn inverse(&self) -> Self {
        let inv = self.l.inverse().expect("validated invertible");
        let t = inv.mul_vec(&self.t).expect("square").into_iter().map(|x| -x).collect();
        RationalAffine { l: inv, t }
    }

    fn identity_like(&self) -> Self {
        let n = self.t.len();
        RationalAffine { l: RationalMatrix::identity(n), t: vec![Rational::zero(); n] }
    }
}

/// Evidence that `f` has no fixed point.
///
/// `q` annihilates the image of `L − I`. In the Smith frame
/// `U·(scale·q)·V = diag(diagonal)` the coordinate `obstruction.index` of
/// `U·scale·q·T` is not divisible by the matching diagonal entry, so `q·T`
/// misses the lattice `q·Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeWitness {
    pub q: RationalMatrix,
    #[serde(with = "crate::json::bigint")]
    pub scale: BigInt,
    pub u: RationalMatrix,
    pub v: RationalMatrix,
    #[serde(with = "crate::json::bigint_vec")]
    pub diagonal: Vec<BigInt>,
    pub membership: MembershipWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "lowercase")]
pub enum FixedPointDecision {
    /// `(L − I)·point = lattice_vector − T`.
    Fixed {
        #[serde(with = "crate::json::rational_vec")]
        point: Vec<Rational>,
        #[serde(with = "crate::json::bigint_vec")]
        lattice_vector: Vec<BigInt>,
    },
    Free { witness: FreeWitness },
}

impl FixedPointDecision {
    pub fn is_free(&self) -> bool {
        matches!(self, FixedPointDecision::Free { .. })
    }

    pub fn verdict(&self) -> &'static str {
        if self.is_free() {
            "free"
        } else {
            "fixed"
        }
    }

    /// Re-checks the stored witness against `f` from scratch.
    pub fn verify(&self, f: &AffineTorusMap) -> Result<(), String> {
        match self {
            FixedPointDecision::Fixed { point, lattice_vector } => {
                verify_fixed(f, point, lattice_vector)
            }
            FixedPointDecision::Free { witness } => verify_free(f, witness),
        }
    }
}

/// Cokernel of `L − I` with its Smith frame; reusable for every translation
/// sharing the linear part `L`.
#[derive(Clone, Debug)]
pub struct PreparedLinearPart {
    displacement: RationalMatrix,
    q: RationalMatrix,
    lattice: Option<PreparedLattice>,
}

impl PreparedLinearPart {
    pub fn new(l: &RationalMatrix) -> Self {
        let displacement = l - &RationalMatrix::identity(l.rows());
        let q = cokernel_map(&displacement);
        let lattice = (q.rows() > 0).then(|| PreparedLattice::new(&q));
        PreparedLinearPart { displacement, q, lattice }
    }

    pub fn cokernel(&self) -> &RationalMatrix {
        &self.q
    }

    /// Lattice `q·Z^n`, absent when `L − I` is invertible.
    pub fn lattice(&self) -> Option<&PreparedLattice> {
        self.lattice.as_ref()
    }

    /// Fast verdict: does `x ↦ L·x + t` have a fixed point?
    pub fn has_fixed_point(&self, t: &[Rational]) -> bool {
        match &self.lattice {
            None => true,
            Some(lat) => lat.contains(&self.q.mul_vec(t).expect("dimensions agree")),
        }
    }

    pub fn decide(&self, t: &[Rational]) -> FixedPointDecision {
        let n = self.displacement.rows();
        let lambda: Vec<BigInt> = match &self.lattice {
            None => vec![BigInt::zero(); n],
            Some(lat) => {
                let qt = self.q.mul_vec(t).expect("dimensions agree");
                let m = lat.membership(&qt).expect("dimensions agree");
                if !m.member {
                    let snf = lat.snf();
                    return FixedPointDecision::Free {
                        witness: FreeWitness {
                            q: self.q.clone(),
                            scale: lat.scale().clone(),
                            u: RationalMatrix::from_bigint_rows(snf.u.clone()),
                            v: RationalMatrix::from_bigint_rows(snf.v.clone()),
                            diagonal: snf.diagonal(),
                            membership: m,
                        },
                    };
                }
                m.coefficients.expect("member witnesses carry coefficients")
            }
        };
        let rhs: Vec<Rational> = lambda
            .iter()
            .zip(t)
            .map(|(l, ti)| from_bigint(l.clone()) - ti)
            .collect();
        let sol = solve_linear(&self.displacement, &rhs)
            .expect("dimensions agree")
            .expect("q·(λ − T) = 0 puts λ − T in the image of L − I");
        FixedPointDecision::Fixed { point: sol.particular, lattice_vector: lambda }
    }
}

pub fn has_fixed_point(f: &AffineTorusMap) -> FixedPointDecision {
    PreparedLinearPart::new(f.linear_part()).decide(f.translation_part())
}

fn verify_fixed(f: &AffineTorusMap, x: &[Rational], lambda: &[BigInt]) -> Result<(), String> {
    let n = f.dim();
    if x.len() != n || lambda.len() != n {
        return Err(format!("fixed-point witness must have length {n}"));
    }
    let lhs = f.displacement_matrix().mul_vec(x).map_err(|e| e.to_string())?;
    for i in 0..n {
        let rhs = from_bigint(lambda[i].clone()) - &f.translation_part()[i];
        if lhs[i] != rhs {
            return Err(format!("fixed-point equation fails in coordinate {i}"));
        }
    }
    Ok(())
}

fn integer_rows(m: &RationalMatrix, what: &str) -> Result<Vec<Vec<BigInt>>, String> {
    m.to_integer_rows().map_err(|e| format!("{what}: {e}"))
}

fn frame_ok(z: &Rational, d: &BigInt) -> bool {
    if d.is_zero() {
        z.is_zero()
    } else {
        z.is_integer() && z.to_integer().is_multiple_of(d)
    }
}

fn verify_free(f: &AffineTorusMap, w: &FreeWitness) -> Result<(), String> {
    let n = f.dim();
    let k = w.q.rows();
    if k == 0 || w.q.cols() != n {
        return Err(format!("cokernel map must be a nonempty k×{n} matrix"));
    }
    if !(&w.q * &f.displacement_matrix()).is_zero() {
        return Err("q·(L − I) ≠ 0".into());
    }
    if !w.scale.is_positive() {
        return Err("scale must be positive".into());
    }
    if (w.u.rows(), w.u.cols()) != (k, k) || (w.v.rows(), w.v.cols()) != (n, n) {
        return Err("Smith transforms have the wrong shape".into());
    }
    let u_rows = integer_rows(&w.u, "U")?;
    let v_rows = integer_rows(&w.v, "V")?;
    if int_det(&u_rows).abs() != BigInt::one() {
        return Err("U is not unimodular".into());
    }
    if int_det(&v_rows).abs() != BigInt::one() {
        return Err("V is not unimodular".into());
    }
    let scaled = w.q.scale(&from_bigint(w.scale.clone()));
    integer_rows(&scaled, "scale·q")?;
    let s = &(&w.u * &scaled) * &w.v;
    if w.diagonal.len() != k.min(n) {
        return Err("diagonal has the wrong length".into());
    }
    for i in 0..k {
        for j in 0..n {
            let expected = if i == j { from_bigint(w.diagonal[i].clone()) } else { Rational::zero() };
            if *s.get(i, j) != expected {
                return Err(format!("U·(scale·q)·V differs from the diagonal at ({i}, {j})"));
            }
        }
    }
    if w.diagonal.iter().any(|d| d.is_negative()) {
        return Err("diagonal entries must be nonnegative".into());
    }
    let m = &w.membership;
    if m.member || m.coefficients.is_some() {
        return Err("membership record claims membership".into());
    }
    let ob = m.obstruction.as_ref().ok_or("missing obstruction")?;
    if ob.index >= k {
        return Err("obstruction index out of range".into());
    }
    let z = (&w.u * &scaled).mul_vec(f.translation_part()).map_err(|e| e.to_string())?;
    let d = |i: usize| w.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
    if let Some(i) = (0..ob.index).find(|&i| !frame_ok(&z[i], &d(i))) {
        return Err(format!("an earlier coordinate {i} already obstructs"));
    }
    let di = d(ob.index);
    let divisor = if di.is_zero() { w.scale.clone() } else { di.clone() };
    if z[ob.index] != &ob.residue * from_bigint(divisor) {
        return Err("obstruction residue does not match U·scale·q·T".into());
    }
    if frame_ok(&z[ob.index], &di) {
        return Err("obstruction residue is not an obstruction".into());
    }
    Ok(())
}

/// Identifies `C^n/Z[i]^n` with `R^{2n}/Z^{2n}`: `a + bi` becomes the block
/// `[[a, −b], [b, a]]` and translations are interleaved `(re, im)`.
pub fn realify(l: &GaussianMatrix, t: &[GaussianRational]) -> Result<AffineTorusMap, TorusError> {
    if !l.is_square() {
        return Err(ExactError::NotSquare(l.rows(), l.cols()).into());
    }
    if l.rows() != t.len() {
        return Err(TorusError::Dimension(l.rows(), t.len()));
    }
    if let Some(bad) = l.entries().iter().find(|z| !z.is_gaussian_integer()) {
        return Err(TorusError::NonGaussianInteger(bad.to_text()));
    }
    let det = l.det()?;
    if det.norm() != Rational::one() {
        return Err(TorusError::NotUnimodular(det.to_text()));
    }
    AffineTorusMap::new(realify_matrix(l), realify_vector(t))
}

pub fn realify_matrix(l: &GaussianMatrix) -> RationalMatrix {
    let (r, c) = (l.rows(), l.cols());
    let mut out = RationalMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = l.get(i, j);
            out.set(2 * i, 2 * j, z.re.clone());
            out.set(2 * i, 2 * j + 1, -z.im.clone());
            out.set(2 * i + 1, 2 * j, z.im.clone());
            out.set(2 * i + 1, 2 * j + 1, z.re.clone());
        }
    }
    out
}

pub fn realify_vector(t: &[GaussianRational]) -> Vec<Rational> {
    t.iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect()
}

/// Translation part of `w(A_s, B_t)` written as `L_w·s + R_w·t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationDecomposition {
    pub word: ReducedWord,
    pub l_w: RationalMatrix,
    pub r_w: RationalMatrix,
}

/// Affine map whose translation depends linearly on parameters `p`:
/// `x ↦ L·x + M·p`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ParametricAffine {
    l: RationalMatrix,
    m: RationalMatrix,
}

impl GroupElement for ParametricAffine {
    fn compose(&self, rhs: &Self) -> Self {
        ParametricAffine { l: &self.l * &rhs.l, m: &(&self.l * &rhs.m) + &self.m }
    }

    fn inverse(&self) -> Self {
        let inv = self.l.inverse().expect("validated invertible");
        let m = -&(&inv * &self.m);
        ParametricAffine { l: inv, m }
    }

    fn identity_like(&self) -> Self {
        ParametricAffine {
            l: RationalMatrix::identity(self.l.rows()),
            m: RationalMatrix::zeros(self.m.rows(), self.m.cols()),
        }
    }
}

/// `L_w`, `R_w` for `A_s = a·x + s`, `B_t = b·x + t`.
pub fn translation_decomposition(
    w: &ReducedWord,
    a: &RationalMatrix,
    b: &RationalMatrix,
) -> Result<TranslationDecomposition, TorusError> {
    let n = a.rows();
    check_dims(a, n)?;
    check_dims(b, n)?;
    for m in [a, b] {
        AffineTorusMap::linear(m.clone())?;
    }
    let mut left = RationalMatrix::zeros(n, 2 * n);
    let mut right = RationalMatrix::zeros(n, 2 * n);
    for i in 0..n {
        left.set(i, i, Rational::one());
        right.set(i, n + i, Rational::one());
    }
    let images = Images::new(vec![
        ParametricAffine { l: a.clone(), m: left },
        ParametricAffine { l: b.clone(), m: right },
    ])?;
    let value = images.evaluate(w)?;
    let split = |offset: usize| {
        let mut out = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, value.m.get(i, offset + j).clone());
            }
        }
        out
    };
    Ok(TranslationDecomposition { word: w.clone(), l_w: split(0), r_w: split(n) })
}
