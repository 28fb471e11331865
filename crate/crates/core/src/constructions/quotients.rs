//! Free translations on `SL2(C)/Λ` and on the expanded real torus
//! `(R²∖0)/⟨×2⟩`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::exact::gaussian::rational_sqrt;
use crate::exact::{int, GaussianMatrix, Rational, RationalMatrix};
use crate::schottky::{classify_sl2, order_test, OrderReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LatticeVerdict {
    /// Infinite order in a compact subgroup: left translation is free.
    Sufficient { order: OrderReport },
    /// Finite order; no conclusion either way.
    Inconclusive { order: u32 },
}

/// Checks `γ = [[z, −conj w], [w, conj z]]` with `|z|² + |w|² = 1`.
fn check_unit_quaternion(g: &GaussianMatrix) -> Result<(), ConstructionError> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(ConstructionError::NotUnitQuaternion("not 2x2".into()));
    }
    let (z, mw, w, zc) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    if zc != &z.conj() {
        return Err(ConstructionError::NotUnitQuaternion("entry (1,1) is not conj of entry (0,0)".into()));
    }
    if mw != &(-w.conj()) {
        return Err(ConstructionError::NotUnitQuaternion("entry (0,1) is not −conj of entry (1,0)".into()));
    }
    let n = z.norm() + w.norm();
    if !n.is_one() {
        return Err(ConstructionError::NotUnitQuaternion(format!("|z|² + |w|² = {n}")));
    }
    Ok(())
}

pub fn sl2_lattice_free(gamma: &GaussianMatrix) -> Result<LatticeVerdict, ConstructionError> {
    check_unit_quaternion(gamma)?;
    match order_test(gamma)? {
        OrderReport::Finite { n } => Ok(LatticeVerdict::Inconclusive { order: n }),
        other => Ok(LatticeVerdict::Sufficient { order: other }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandedTorusDecision {
    pub accepted: bool,
    pub classification: String,
    #[serde(with = "crate::json::rational")]
    pub trace: Rational,
    #[serde(with = "crate::json::rational")]
    pub discriminant: Rational,
    /// Some eigenvalue is `2^k`, so `g` fixes a point of the quotient.
    pub eigenvalue_in_powers_of_two: bool,
    pub reason: String,
}

fn is_power_of_two(r: &Rational) -> bool {
    if !r.is_positive() {
        return false;
    }
    let pow2 = |n: &BigInt| n.is_one() || (n.bits() > 0 && (n & (n - BigInt::one())).is_zero());
    (r.numer().is_one() && pow2(r.denom())) || (r.denom().is_one() && pow2(r.numer()))
}

/// Accepts exactly the hyperbolic elements: their eigenvalues are quadratic
/// irrationals and so never powers of 2.
pub fn expanded_torus_check(g: &RationalMatrix) -> Result<ExpandedTorusDecision, ConstructionError> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(ConstructionError::Dimension("expected a 2x2 matrix".into()));
    }
    let det = g.det()?;
    if !det.is_one() {
        return Err(ConstructionError::WrongDeterminant(det.to_string()));
    }
    let class = classify_sl2(g)?;
    let trace = g.trace();
    let discriminant = &trace * &trace - int(4);
    let eigenvalues: Vec<Rational> = match rational_sqrt(&discriminant) {
        Some(root) if !discriminant.is_negative() => {
            vec![(&trace + &root) / int(2), (&trace - &root) / int(2)]
        }
        _ => vec![],
    };
    let eigenvalue_in_powers_of_two = eigenvalues.iter().any(is_power_of_two);
    let accepted = trace.abs() > int(2);
    if accepted && !eigenvalues.is_empty() {
        return Err(ConstructionError::Invariant(format!("hyperbolic trace {trace} with rational eigenvalues")));
    }
    let reason = if accepted {
        format!("hyperbolic: discriminant {discriminant} is not a square, eigenvalues are quadratic irrationals")
    } else if eigenvalue_in_powers_of_two {
        "eigenvalue 1 = 2⁰: fixed points on the quotient".to_string()
    } else {
        format!("{}: outside the hyperbolic case; no eigenvalue lies in 2^Z", class.name())
    };
    Ok(ExpandedTorusDecision {
        accepted,
        classification: class.name(),
        trace,
        discriminant,
        eigenvalue_in_powers_of_two,
        reason,
    })
}
