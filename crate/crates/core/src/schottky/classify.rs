//! Classification of integral isometries of a ternary form of signature
//! (1, 2) and of SL2 elements, and the projective action on the null conic.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::projective::ProjectivePoint;
use crate::error::{ExactError, SchottkyError};
use crate::exact::rational::from_bigint;
use crate::exact::{int, rational_text, solve_linear, Rational, RationalMatrix};

/// Ternary quadratic forms of signature (1, 2) with a rational
/// parametrization of their null conic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicModel {
    /// `x² − y² − z²`, parametrized by `t ↦ [1 + t² : 1 − t² : 2t]`.
    Lorentz,
    /// `XZ − Y²` (Gram matrix scaled by 2) in the coordinates `(p², pq, q²)`,
    /// parametrized by `t ↦ [t² : t : 1]`.
    BinaryForms,
}

impl ConicModel {
    pub fn gram(self) -> RationalMatrix {
        match self {
            ConicModel::Lorentz => RationalMatrix::from_i64_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            ConicModel::BinaryForms => {
                RationalMatrix::from_i64_rows(&[&[0, 0, 1], &[0, -2, 0], &[1, 0, 0]])
            }
        }
    }

    /// A vector of positive norm marking the sheet that isometries must keep.
    pub fn timelike(self) -> Vec<Rational> {
        match self {
            ConicModel::Lorentz => vec![int(1), int(0), int(0)],
            ConicModel::BinaryForms => vec![int(1), int(0), int(1)],
        }
    }

    /// Null vector over the parameter `t = p/q`.
    pub fn null_vector(self, t: &ProjectivePoint) -> Vec<Rational> {
        let (p, q) = t.coordinates();
        let (p, q) = (from_bigint(p.clone()), from_bigint(q.clone()));
        match self {
            ConicModel::Lorentz => vec![&q * &q + &p * &p, &q * &q - &p * &p, int(2) * &p * &q],
            ConicModel::BinaryForms => vec![&p * &p, &p * &q, &q * &q],
        }
    }

    /// Inverse of [`Self::null_vector`]; `None` off the conic.
    pub fn parameter(self, v: &[Rational]) -> Option<ProjectivePoint> {
        if v.len() != 3 {
            return None;
        }
        let g = self.gram();
        let gv = g.mul_vec(v).ok()?;
        let norm: Rational = v.iter().zip(&gv).map(|(a, b)| a * b).sum();
        if !norm.is_zero() {
            return None;
        }
        let t = match self {
            ConicModel::Lorentz => {
                let s = &v[0] + &v[1];
                if s.is_zero() {
                    ProjectivePoint::from_rationals(&(&v[0] - &v[1]), &v[2])?
                } else {
                    ProjectivePoint::from_rationals(&v[2], &s)?
                }
            }
            ConicModel::BinaryForms => {
                if v[0].is_zero() && v[1].is_zero() {
                    ProjectivePoint::from_rationals(&v[1], &v[2])?
                } else {
                    ProjectivePoint::from_rationals(&v[0], &v[1])?
                }
            }
        };
        Some(t)
    }
}

/// `a·x² + b·x + c` together with `b² − 4ac`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadratic {
    #[serde(with = "crate::json::rational_vec")]
    pub coefficients: Vec<Rational>,
    #[serde(with = "crate::json::rational")]
    pub discriminant: Rational,
}

impl Quadratic {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        let discriminant = &b * &b - int(4) * &a * &c;
        Quadratic { coefficients: vec![a, b, c], discriminant }
    }

    /// Fixed points of `x ↦ (a·x + b)/(c·x + d)` solve `c·x² + (d − a)·x − b = 0`.
    pub fn fixed_points_of(m: &RationalMatrix) -> Self {
        let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        Quadratic::new(c.clone(), d - a, -b.clone())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let [a, b, c] = [&self.coefficients[0], &self.coefficients[1], &self.coefficients[2]];
        a * x * x + b * x + c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ElementClassification {
    Identity,
    /// Finite order; `order` is absent for irrational rotations.
    Elliptic { order: Option<u32> },
    Parabolic,
    /// `λ_g > 1` is the larger root of `lambda_polynomial`; `fixed_points` is
    /// the quadratic cut out by the two boundary fixed points on RP¹.
    Loxodromic {
        #[serde(with = "crate::json::rational")]
        trace: Rational,
        #[serde(with = "crate::json::rational")]
        discriminant: Rational,
        lambda_polynomial: Quadratic,
        fixed_points: Quadratic,
    },
}

impl ElementClassification {
    pub fn is_loxodromic(&self) -> bool {
        matches!(self, ElementClassification::Loxodromic { .. })
    }

    pub fn name(&self) -> String {
        match self {
            ElementClassification::Identity => "identity".into(),
            ElementClassification::Elliptic { order: Some(n) } => format!("elliptic (order {n})"),
            ElementClassification::Elliptic { order: None } => "elliptic (infinite order)".into(),
            ElementClassification::Parabolic => "parabolic".into(),
            ElementClassification::Loxodromic { trace, .. } => {
                format!("loxodromic (trace {})", rational_text(trace))
            }
        }
    }
}

fn require_shape(m: &RationalMatrix, n: usize) -> Result<(), SchottkyError> {
    if m.rows() != n || m.cols() != n {
        return Err(ExactError::Shape {
            expected: format!("{n}x{n}"),
            found: format!("{}x{}", m.rows(), m.cols()),
        }
        .into());
    }
    Ok(())
}

/// Smallest `k ∈ {1, 2, 3, 4, 6}` with `m^k = I`, confirmed by multiplication.
fn confirmed_order(m: &RationalMatrix, k: u32) -> Result<u32, SchottkyError> {
    if m.pow(k as i64)?.is_identity() {
        Ok(k)
    } else {
        Err(SchottkyError::Invariant(format!("expected M^{k} = I")))
    }
}

/// Classifies `M ∈ SO⁺(1, 2)` for the given form. The eigenvalues are
/// `{1, λ, λ⁻¹}` with `λ + λ⁻¹ = trace − 1`.
pub fn classify_isometry(m: &RationalMatrix, model: ConicModel) -> Result<ElementClassification, SchottkyError> {
    require_shape(m, 3)?;
    let g = model.gram();
    let pulled = &(&m.transpose() * &g) * m;
    if pulled != g {
        return Err(SchottkyError::FormNotPreserved(format!(
            "Mᵀ·G·M = {pulled:?}, expected G = {g:?}"
        )));
    }
    let det = m.det()?;
    if !det.is_one() {
        return Err(SchottkyError::WrongDeterminant(rational_text(&det)));
    }
    let v = model.timelike();
    let mv = m.mul_vec(&v)?;
    let pairing: Rational = g.mul_vec(&v)?.iter().zip(&mv).map(|(a, b)| a * b).sum();
    if !pairing.is_positive() {
        return Err(SchottkyError::WrongSheet(rational_text(&pairing)));
    }
    if m.is_identity() {
        return Ok(ElementClassification::Identity);
    }
    let t = m.trace();
    let three = int(3);
    if t > three {
        let s = &t - int(1);
        let fixed = induced_moebius(m, model)?;
        return Ok(ElementClassification::Loxodromic {
            discriminant: &s * &s - int(4),
            lambda_polynomial: Quadratic::new(int(1), -s, int(1)),
            fixed_points: Quadratic::fixed_points_of(&fixed),
            trace: t,
        });
    }
    if t == three {
        return Ok(ElementClassification::Parabolic);
    }
    // rotation by θ with trace 1 + 2cos θ
    let order = [(-1, 2), (0, 3), (1, 4), (2, 6)]
        .iter()
        .find(|(tr, _)| t == int(*tr))
        .map(|&(_, k)| confirmed_order(m, k))
        .transpose()?;
    Ok(ElementClassification::Elliptic { order })
}

/// [`classify_isometry`] for the form `x² − y² − z²`.
pub fn classify_so12(m: &RationalMatrix) -> Result<ElementClassification, SchottkyError> {
    classify_isometry(m, ConicModel::Lorentz)
}

pub fn classify_sl2(m: &RationalMatrix) -> Result<ElementClassification, SchottkyError> {
    require_shape(m, 2)?;
    m.to_integer_rows()?;
    let det = m.det()?;
    if !det.is_one() {
        return Err(SchottkyError::WrongDeterminant(rational_text(&det)));
    }
    if m.is_identity() {
        return Ok(ElementClassification::Identity);
    }
    let t = m.trace();
    let two = int(2);
    if t.abs() > two {
        return Ok(ElementClassification::Loxodromic {
            discriminant: &t * &t - int(4),
            lambda_polynomial: Quadratic::new(int(1), -t.abs(), int(1)),
            fixed_points: Quadratic::fixed_points_of(m),
            trace: t,
        });
    }
    if (-m).is_identity() {
        return Ok(ElementClassification::Elliptic { order: Some(2) });
    }
    if t.abs() == two {
        return Ok(ElementClassification::Parabolic);
    }
    let k = [(0, 4), (1, 6), (-1, 3)]
        .iter()
        .find(|(tr, _)| t == int(*tr))
        .map(|&(_, k)| k)
        .expect("integer trace with |t| < 2");
    Ok(ElementClassification::Elliptic { order: Some(confirmed_order(m, k)?) })
}

/// Action of `[[a, b], [c, d]]` on binary quadratic forms, in the basis
/// `(p², pq, q²)`. It preserves `XZ − Y²` and induces `A` itself on the conic.
pub fn sym_square(a: &RationalMatrix) -> Result<RationalMatrix, SchottkyError> {
    require_shape(a, 2)?;
    let (a, b, c, d) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let two = int(2);
    Ok(RationalMatrix::from_rows(vec![
        vec![a * a, &two * a * b, b * b],
        vec![a * c, a * d + b * c, b * d],
        vec![c * c, &two * c * d, d * d],
    ])
    .expect("3x3"))
}

fn image_parameter(m: &RationalMatrix, model: ConicModel, t: &ProjectivePoint) -> Result<ProjectivePoint, SchottkyError> {
    let v = m.mul_vec(&model.null_vector(t))?;
    model
        .parameter(&v)
        .ok_or_else(|| SchottkyError::InconsistentInterpolation(format!("image of t = {t} is not null")))
}

fn column(p: &ProjectivePoint) -> [Rational; 2] {
    let (a, b) = p.coordinates();
    [from_bigint(a.clone()), from_bigint(b.clone())]
}

/// The 2×2 matrix (up to scale) by which `M` acts on conic parameters,
/// interpolated through `t = ∞, 0, 1` and checked at `t = 2`.
pub fn induced_moebius(m: &RationalMatrix, model: ConicModel) -> Result<RationalMatrix, SchottkyError> {
    require_shape(m, 3)?;
    let inf = image_parameter(m, model, &ProjectivePoint::infinity())?;
    let zero = image_parameter(m, model, &ProjectivePoint::from_i64(0))?;
    let one = image_parameter(m, model, &ProjectivePoint::from_i64(1))?;
    let (ci, cz, co) = (column(&inf), column(&zero), column(&one));
    // μ∞·img(∞) + μ₀·img(0) = img(1)
    let system = RationalMatrix::from_rows(vec![
        vec![ci[0].clone(), cz[0].clone()],
        vec![ci[1].clone(), cz[1].clone()],
    ])
    .expect("2x2");
    let sol = solve_linear(&system, &co)?
        .filter(|s| s.kernel.is_empty())
        .ok_or_else(|| SchottkyError::InconsistentInterpolation("images of ∞ and 0 coincide".into()))?;
    let (mu_i, mu_z) = (&sol.particular[0], &sol.particular[1]);
    let n = RationalMatrix::from_rows(vec![
        vec![&ci[0] * mu_i, &cz[0] * mu_z],
        vec![&ci[1] * mu_i, &cz[1] * mu_z],
    ])
    .expect("2x2");
    if n.det()?.is_zero() {
        return Err(SchottkyError::InconsistentInterpolation("degenerate interpolant".into()));
    }
    let probe = ProjectivePoint::from_i64(2);
    if probe.apply(&n) != Some(image_parameter(m, model, &probe)?) {
        return Err(SchottkyError::InconsistentInterpolation("t = 2".into()));
    }
    Ok(n)
}

/// Do two 2×2 matrices agree up to a nonzero scalar?
pub fn projectively_equal(a: &RationalMatrix, b: &RationalMatrix) -> bool {
    let (ea, eb) = (a.entries(), b.entries());
    if ea.len() != eb.len() {
        return false;
    }
    let Some(k) = ea.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if eb[k].is_zero() {
        return false;
    }
    let ratio = &eb[k] / &ea[k];
    ea.iter().zip(eb).all(|(x, y)| &(x * &ratio) == y)
}
