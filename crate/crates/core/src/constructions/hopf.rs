//! Fixed points of linear automorphisms on Hopf surfaces
//! `(C²∖0)/⟨x ↦ αξ·x⟩`, for `ξ ∈ {1, −1, i}`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::exact::{int, GaussianMatrix, GaussianRational, Rational};
use crate::schottky::bounded_nontriviality;
use crate::words::{enumerate_reduced, Images};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfDatum {
    #[serde(with = "crate::json::gaussian")]
    pub alpha: GaussianRational,
    pub xi_order: u32,
    #[serde(default)]
    pub generators: Vec<GaussianMatrix>,
}

impl HopfDatum {
    pub fn new(alpha: GaussianRational, xi_order: u32, generators: Vec<GaussianMatrix>) -> Result<Self, ConstructionError> {
        let d = HopfDatum { alpha, xi_order, generators };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let bad = |m: String| Err(ConstructionError::HopfDatum(m));
        if self.alpha.is_zero() {
            return bad("α must be nonzero".into());
        }
        if self.alpha.norm() >= Rational::one() {
            return bad(format!("|α|² = {} is not below 1", self.alpha.norm()));
        }
        if ![1, 2, 4].contains(&self.xi_order) {
            return bad(format!("ξ must have order 1, 2 or 4, got {}", self.xi_order));
        }
        for (k, g) in self.generators.iter().enumerate() {
            if g.rows() != 2 || g.cols() != 2 {
                return bad(format!("generator {k} is not 2x2"));
            }
            if g.det()?.is_zero() {
                return bad(format!("generator {k} is singular"));
            }
        }
        Ok(())
    }

    /// `1`, `−1` or `i`.
    pub fn xi(&self) -> GaussianRational {
        match self.xi_order {
            1 => GaussianRational::one(),
            2 => -GaussianRational::one(),
            _ => GaussianRational::i(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum HopfDecision {
    FixedPointFree { reason: String },
    /// `eigenvalue = α^m·ξ^k`.
    HasFixedPoint {
        #[serde(with = "crate::json::gaussian")]
        eigenvalue: GaussianRational,
        m: i64,
        k: u32,
    },
}

impl HopfDecision {
    pub fn is_free(&self) -> bool {
        matches!(self, HopfDecision::FixedPointFree { .. })
    }
}

/// Eigenvalues of a 2×2 matrix when they lie in Q(i).
pub fn gaussian_eigenvalues(g: &GaussianMatrix) -> Result<Option<Vec<GaussianRational>>, ConstructionError> {
    let tr = g.trace();
    let det = g.det()?;
    let four = GaussianRational::from(int(4));
    let disc = &(&tr * &tr) - &(&four * &det);
    let Some(root) = disc.sqrt() else {
        return Ok(None);
    };
    let half = GaussianRational::from(Rational::new(1.into(), 2.into()));
    let plus = &(&tr + &root) * &half;
    let minus = &(&tr - &root) * &half;
    Ok(Some(if root.is_zero() { vec![plus] } else { vec![plus, minus] }))
}

/// The unique `m` with `|α|^{2m} = |μ|²`, if any. Powers of `|α|² < 1` are
/// strictly monotone, so the scan stops as soon as it passes `|μ|²`.
fn norm_exponent(alpha_norm: &Rational, mu_norm: &Rational) -> Option<i64> {
    let one = Rational::one();
    if mu_norm == &one {
        return Some(0);
    }
    let (step, direction) = if mu_norm < &one {
        (alpha_norm.clone(), 1)
    } else {
        (Rational::one() / alpha_norm, -1)
    };
    let mut p = step.clone();
    let mut m = direction;
    loop {
        match (mu_norm < &one, p.cmp(mu_norm)) {
            (_, std::cmp::Ordering::Equal) => return Some(m),
            (true, std::cmp::Ordering::Less) | (false, std::cmp::Ordering::Greater) => return None,
            _ => {
                p *= &step;
                m += direction;
            }
        }
    }
}

/// Does `γ` act without fixed points? Only eigenvalues in `α^Z·ξ^Z` give
/// fixed points.
pub fn hopf_fixed_point_free(gamma: &GaussianMatrix, datum: &HopfDatum) -> Result<HopfDecision, ConstructionError> {
    datum.validate()?;
    if gamma.rows() != 2 || gamma.cols() != 2 {
        return Err(ConstructionError::Dimension("γ must be 2x2".into()));
    }
    if gamma.det()?.is_zero() {
        return Err(ConstructionError::Singular);
    }
    let Some(eigenvalues) = gaussian_eigenvalues(gamma)? else {
        return Ok(HopfDecision::FixedPointFree {
            reason: "characteristic polynomial is irreducible over Q(i)".into(),
        });
    };
    let alpha_norm = datum.alpha.norm();
    let xi = datum.xi();
    for mu in &eigenvalues {
        let Some(m) = norm_exponent(&alpha_norm, &mu.norm()) else {
            continue;
        };
        let am = datum.alpha.pow(m).expect("α ≠ 0");
        let mut candidate = am;
        for k in 0..datum.xi_order {
            if &candidate == mu {
                return Ok(HopfDecision::HasFixedPoint { eigenvalue: mu.clone(), m, k });
            }
            candidate = &candidate * &xi;
        }
    }
    let listed: Vec<String> = eigenvalues.iter().map(|e| e.to_text()).collect();
    Ok(HopfDecision::FixedPointFree {
        reason: format!("eigenvalues {} avoid α^m·ξ^k", listed.join(", ")),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfViolation {
    pub word: String,
    pub decision: HopfDecision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfReport {
    pub max_len: usize,
    pub xi_order: u32,
    #[serde(with = "crate::json::gaussian")]
    pub alpha: GaussianRational,
    /// Eigenvalues excluded by the check.
    pub exclusion: String,
    pub words_checked: u64,
    /// Words evaluating to the identity; they are reported as relations
    /// rather than as fixed-point violations.
    pub identity_words: u64,
    pub first_violation: Option<HopfViolation>,
    /// Shortlex-first relation among the generators.
    pub relation: Option<String>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none() && self.relation.is_none()
    }
}

/// Runs [`hopf_fixed_point_free`] on every nonempty reduced word of length
/// `<= max_len` and looks for relations among the generators.
pub fn hopf_group_check(datum: &HopfDatum, max_len: usize) -> Result<HopfReport, ConstructionError> {
    datum.validate()?;
    let mut report = HopfReport {
        max_len,
        xi_order: datum.xi_order,
        alpha: datum.alpha.clone(),
        exclusion: "α^m·ξ^k for m ∈ Z, 0 <= k < order(ξ)".into(),
        words_checked: 0,
        identity_words: 0,
        first_violation: None,
        relation: None,
    };
    if datum.generators.is_empty() {
        return Ok(report);
    }
    let images = Images::new(datum.generators.clone()).map_err(|e| ConstructionError::HopfDatum(e.to_string()))?;
    for w in enumerate_reduced(images.rank(), max_len).filter(|w| !w.is_empty()) {
        let g = images.evaluate(&w).map_err(|e| ConstructionError::Invariant(e.to_string()))?;
        report.words_checked += 1;
        if g.is_identity() {
            report.identity_words += 1;
            continue;
        }
        if report.first_violation.is_none() {
            let decision = hopf_fixed_point_free(&g, datum)?;
            if !decision.is_free() {
                report.first_violation = Some(HopfViolation { word: w.to_text(), decision });
            }
        }
    }
    report.relation = bounded_nontriviality(&images, max_len, |g| g.is_identity()).relation;
    Ok(report)
}
