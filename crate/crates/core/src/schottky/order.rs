//! Finite-order decisions for SL2 over Q(i) and bounded relation searches.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ExactError, SchottkyError};
use crate::exact::{int, GaussianMatrix, Rational};
use crate::words::{find_first, GroupElement, Images, ReducedWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "order", rename_all = "kebab-case")]
pub enum OrderReport {
    Finite { n: u32 },
    Infinite,
    UnipotentNonIdentity,
}

impl OrderReport {
    pub fn is_infinite(&self) -> bool {
        !matches!(self, OrderReport::Finite { .. })
    }
}

/// Order of `M ∈ SL2(Q(i))` with rational trace `t`. The characteristic
/// polynomial `x² − t·x + 1` is cyclotomic only for `t ∈ {0, ±1, ±2}`.
pub fn order_test(m: &GaussianMatrix) -> Result<OrderReport, SchottkyError> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(ExactError::Shape { expected: "2x2".into(), found: format!("{}x{}", m.rows(), m.cols()) }.into());
    }
    let det = m.det()?;
    if !det.is_one() {
        return Err(SchottkyError::WrongDeterminant(det.to_text()));
    }
    let tr = m.trace();
    if !tr.is_real() {
        return Err(SchottkyError::UnsupportedTrace(tr.to_text()));
    }
    let t: Rational = tr.re;
    let two = int(2);
    if t.abs() > two {
        return Ok(OrderReport::Infinite);
    }
    if t.abs() == two {
        if m.is_identity() {
            return Ok(OrderReport::Finite { n: 1 });
        }
        if (-m).is_identity() {
            return Ok(OrderReport::Finite { n: 2 });
        }
        return Ok(OrderReport::UnipotentNonIdentity);
    }
    let claimed = if t.is_zero() {
        4
    } else if t == int(1) {
        6
    } else if t == int(-1) {
        3
    } else {
        return Ok(OrderReport::Infinite);
    };
    if !m.pow(claimed as i64)?.is_identity() {
        return Err(SchottkyError::Invariant(format!("M^{claimed} ≠ I despite cyclotomic trace")));
    }
    Ok(OrderReport::Finite { n: claimed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NontrivialityReport {
    pub max_len: usize,
    /// Shortlex-first nonempty word evaluating to the identity.
    pub relation: Option<String>,
}

impl NontrivialityReport {
    pub fn relation_word(&self) -> Option<ReducedWord> {
        self.relation.as_ref().map(|w| ReducedWord::parse(w).expect("stored words are valid"))
    }
}

/// Evaluates every nonempty reduced word of length `<= max_len` and reports
/// the first one that `is_identity` accepts.
pub fn bounded_nontriviality<E, F>(images: &Images<E>, max_len: usize, is_identity: F) -> NontrivialityReport
where
    E: GroupElement + Send + Sync,
    F: Fn(&E) -> bool + Sync,
{
    let relation = find_first(images, max_len, |_, v| is_identity(v)).map(|(w, _)| w.to_text());
    NontrivialityReport { max_len, relation }
}
