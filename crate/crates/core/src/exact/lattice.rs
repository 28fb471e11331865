//! Lattice membership with witnesses, exact linear solving, and cokernel maps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::normal_form::{snf_int, IntRows, IntSnf};
use super::rational::{from_bigint, lcm_of_denominators, Rational};
use crate::error::ExactError;

/// First violated coordinate in the Smith-diagonalized frame.
///
/// `residue` is `(U·v)_index / d_index` when the diagonal entry is nonzero and
/// `(U·v)_index` itself when it is zero; it is non-integral (resp. nonzero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub index: usize,
    #[serde(with = "crate::json::rational")]
    pub residue: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipWitness {
    pub member: bool,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::json::opt_bigint_vec"
    )]
    pub coefficients: Option<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
}

impl MembershipWitness {
    /// Re-checks a membership claim by substitution. Non-membership claims need
    /// the Smith frame, which torus witnesses carry alongside this record.
    pub fn verify_member(&self, basis: &RationalMatrix, v: &[Rational]) -> bool {
        let Some(coeffs) = &self.coefficients else {
            return false;
        };
        if !self.member || coeffs.len() != basis.cols() {
            return false;
        }
        let c: Vec<Rational> = coeffs.iter().cloned().map(from_bigint).collect();
        basis.mul_vec(&c).is_ok_and(|img| img == v)
    }
}

/// Smith frame of a lattice `B·Z^k` (columns of `B`), reusable across queries.
#[derive(Clone, Debug)]
pub struct PreparedLattice {
    basis: RationalMatrix,
    scale: BigInt,
    snf: IntSnf,
}

impl PreparedLattice {
    pub fn new(basis: &RationalMatrix) -> Self {
        let scale = lcm_of_denominators(basis.entries());
        let rows: IntRows = (0..basis.rows())
            .map(|i| {
                basis
                    .row(i)
                    .iter()
                    .map(|x| (x * from_bigint(scale.clone())).to_integer())
                    .collect()
            })
            .collect();
        let snf = snf_int(&rows, basis.cols());
        PreparedLattice {
            basis: basis.clone(),
            scale,
            snf,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn snf(&self) -> &IntSnf {
        &self.snf
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Coordinates `U·(scale·v)` in the diagonal frame.
    fn frame_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        let s = from_bigint(self.scale.clone());
        self.snf
            .u
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (u, x)| acc + from_bigint(u.clone()) * x * &s)
            })
            .collect()
    }

    fn diag(&self, i: usize) -> BigInt {
        if i < self.basis.cols().min(self.basis.rows()) {
            self.snf.s[i][i].clone()
        } else {
            BigInt::zero()
        }
    }

    /// Quick membership test without building a witness.
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.frame_coordinates(v)
            .iter()
            .enumerate()
            .all(|(i, z)| coordinate_ok(z, &self.diag(i)))
    }

    pub fn membership(&self, v: &[Rational]) -> Result<MembershipWitness, ExactError> {
        if v.len() != self.dim() {
            return Err(ExactError::Shape {
                expected: format!("vector of length {}", self.dim()),
                found: format!("length {}", v.len()),
            });
        }
        let z = self.frame_coordinates(v);
        for (i, zi) in z.iter().enumerate() {
            let d = self.diag(i);
            if !coordinate_ok(zi, &d) {
                let residue = if d.is_zero() {
                    zi / from_bigint(self.scale.clone())
                } else {
                    zi / from_bigint(d)
                };
                return Ok(MembershipWitness {
                    member: false,
                    coefficients: None,
                    obstruction: Some(Obstruction { index: i, residue }),
                });
            }
        }
        // coefficients c = V·c', kernel directions set to zero
        let k = self.basis.cols();
        let reduced: Vec<BigInt> = (0..k)
            .map(|j| {
                let d = self.diag(j);
                if d.is_zero() {
                    BigInt::zero()
                } else {
                    (&z[j] / from_bigint(d)).to_integer()
                }
            })
            .collect();
        let coeffs: Vec<BigInt> = self
            .snf
            .v
            .iter()
            .map(|row| row.iter().zip(&reduced).map(|(a, b)| a * b).sum())
            .collect();
        let witness = MembershipWitness {
            member: true,
            coefficients: Some(coeffs),
            obstruction: None,
        };
        debug_assert!(witness.verify_member(&self.basis, v));
        Ok(witness)
    }
}

fn coordinate_ok(z: &Rational, d: &BigInt) -> bool {
    if d.is_zero() {
        z.is_zero()
    } else {
        z.is_integer() && z.to_integer().is_multiple_of(d)
    }
}

/// Is `v` an integer combination of the columns of `basis`?
pub fn lattice_member(
    basis: &RationalMatrix,
    v: &[Rational],
) -> Result<MembershipWitness, ExactError> {
    PreparedLattice::new(basis).membership(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

/// Solves `a·x = b` over Q. The particular solution has all free coordinates zero.
pub fn solve_linear(
    a: &RationalMatrix,
    b: &[Rational],
) -> Result<Option<LinearSolution>, ExactError> {
    if b.len() != a.rows() {
        return Err(ExactError::Shape {
            expected: format!("right-hand side of length {}", a.rows()),
            found: format!("length {}", b.len()),
        });
    }
    let n = a.cols();
    let mut aug = RationalMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = r.get(row, n).clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut k = vec![Rational::zero(); n];
            k[f] = Rational::one();
            for (row, &col) in pivots.iter().enumerate() {
                k[col] = -r.get(row, f).clone();
            }
            k
        })
        .collect();
    Ok(Some(LinearSolution { particular, kernel }))
}

/// Rows spanning the rational annihilator of the column space of `a`, each
/// scaled to a primitive integer vector.
pub fn cokernel_map(a: &RationalMatrix) -> RationalMatrix {
    let m = a.rows();
    let zero = vec![Rational::zero(); a.cols()];
    let kernel = solve_linear(&a.transpose(), &zero)
        .expect("shapes agree by construction")
        .expect("homogeneous systems are solvable")
        .kernel;
    let rows: Vec<Vec<Rational>> = kernel.into_iter().map(primitive).collect();
    if rows.is_empty() {
        return RationalMatrix::zeros(0, m);
    }
    RationalMatrix::from_rows(rows).expect("uniform row length")
}

/// Scales a nonzero rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let den = lcm_of_denominators(&v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * from_bigint(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| if x.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.into_iter()
        .map(|x| from_bigint(x / &g * &sign))
        .collect()
}
