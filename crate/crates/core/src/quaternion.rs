//! Integer quaternions, compared up to positive real scalars, and their image
//! in SU(2) over Q(i).

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::gaussian::rational_sqrt;
use crate::exact::rational::from_bigint;
use crate::exact::{GaussianMatrix, GaussianRational};
use crate::words::GroupElement;

/// `a + b·i + c·j + d·k` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quaternion {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Quaternion {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn one() -> Self {
        Quaternion::new(1, 0, 0, 0)
    }

    pub fn conj(&self) -> Self {
        Quaternion { a: self.a.clone(), b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Equal to the identity rotation: a positive real multiple of 1.
    pub fn is_positive_scalar(&self) -> bool {
        self.is_real() && self.a.is_positive()
    }

    /// `q/|q|` as `[[z, −conj w], [w, conj z]]` with `z = a + bi`, `w = c − di`.
    /// `None` unless the norm is a perfect square.
    pub fn to_su2(&self) -> Option<GaussianMatrix> {
        let r = rational_sqrt(&from_bigint(self.norm()))?;
        if r.is_zero() {
            return None;
        }
        let z = GaussianRational::new(from_bigint(self.a.clone()) / &r, from_bigint(self.b.clone()) / &r);
        let w = GaussianRational::new(from_bigint(self.c.clone()) / &r, -from_bigint(self.d.clone()) / &r);
        let rows = vec![vec![z.clone(), -w.conj()], vec![w, z.conj()]];
        Some(GaussianMatrix::from_rows(rows).expect("2x2"))
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;

    fn mul(self, r: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&r.a, &r.b, &r.c, &r.d);
        Quaternion {
            a: a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            b: a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            c: a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            d: a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        }
    }
}

/// Inverse is the conjugate, which is the true inverse up to the positive
/// scalar `norm`; identity tests must use [`Quaternion::is_positive_scalar`].
impl GroupElement for Quaternion {
    fn compose(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn inverse(&self) -> Self {
        self.conj()
    }

    fn identity_like(&self) -> Self {
        Quaternion::one()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        for (v, unit) in [(&self.b, 'i'), (&self.c, 'j'), (&self.d, 'k')] {
            if v.is_negative() {
                write!(f, "-{}{unit}", v.abs())?;
            } else {
                write!(f, "+{v}{unit}")?;
            }
        }
        Ok(())
    }
}
