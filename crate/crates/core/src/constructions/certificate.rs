//! Bounded freeness certificates for affine torus actions and the
//! stand-alone checker for both certificate kinds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::deformation::{projective_action, ComplexDeformationParameters};
use crate::exact::RationalMatrix;
use crate::schottky::{projectively_equal, ConicModel, PingPongCertificate, PINGPONG_VERSION};
use crate::torus::{has_fixed_point, realify_matrix, realify_vector, AffineTorusMap, FixedPointDecision};
use crate::words::{enumerate_reduced, Images, ReducedWord};

pub const FREENESS_VERSION: &str = "freeness-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub word: String,
    #[serde(flatten)]
    pub decision: FixedPointDecision,
}

/// Every nonempty reduced word of length `<= word_bound` in the two
/// generators acts without fixed points on the torus `R^n/Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessCertificate {
    pub version: String,
    /// Integer linear parts whose projective action the ping-pong table
    /// certifies (before realification in the complex case).
    pub linear_parts: Vec<RationalMatrix>,
    /// Invariant form used to transport 3×3 linear parts to RP¹.
    pub conic: Option<ConicModel>,
    pub generators: Vec<AffineTorusMap>,
    /// Gaussian-rational translations when the torus is `(C/Z[i])^n`.
    pub complex: Option<ComplexDeformationParameters>,
    pub pingpong: PingPongCertificate,
    pub word_bound: usize,
    pub entries: Vec<CertificateEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{item}: {reason}")]
pub struct CertificateRejection {
    pub item: String,
    pub reason: String,
}

fn reject(item: impl Into<String>, reason: impl Into<String>) -> CertificateRejection {
    CertificateRejection { item: item.into(), reason: reason.into() }
}

impl FreenessCertificate {
    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, AffineTorusMap::dim)
    }

    /// Re-derives every claim from the stored data. Witnesses must also be
    /// canonical, so that any edit to a certificate is detected.
    pub fn verify(&self) -> Result<(), CertificateRejection> {
        if self.version != FREENESS_VERSION {
            return Err(reject("version", format!("unknown version {:?}", self.version)));
        }
        if self.generators.len() != 2 || self.linear_parts.len() != 2 {
            return Err(reject("generators", "expected exactly two generators"));
        }
        self.pingpong.verify().map_err(|e| reject("pingpong", e.to_string()))?;
        if self.pingpong.generators.len() != 2 {
            return Err(reject("pingpong", "expected two generators"));
        }
        for (k, base) in self.linear_parts.iter().enumerate() {
            let item = format!("generator {k}");
            let (action, conic) = projective_action(base).map_err(|e| reject(&item, e.to_string()))?;
            if conic != self.conic {
                return Err(reject(&item, "recorded conic model does not match the linear part"));
            }
            if !projectively_equal(&action, &self.pingpong.generators[k]) {
                return Err(reject(&item, "ping-pong generator is not the projective action of the linear part"));
            }
            let expected = match &self.complex {
                None => base.clone(),
                Some(_) => realify_matrix(&base.to_gaussian()),
            };
            if self.generators[k].linear_part() != &expected {
                return Err(reject(&item, "linear part of the affine generator disagrees"));
            }
        }
        if let Some(c) = &self.complex {
            for (k, t) in [&c.s, &c.t].into_iter().enumerate() {
                if realify_vector(t).as_slice() != self.generators[k].translation_part() {
                    return Err(reject(
                        format!("generator {k}"),
                        "translation is not the realified complex parameter reduced mod Z[i]",
                    ));
                }
            }
        }
        let expected: Vec<ReducedWord> = enumerate_reduced(2, self.word_bound).filter(|w| !w.is_empty()).collect();
        if self.entries.len() != expected.len() {
            return Err(reject(
                "entries",
                format!("{} entries, expected {} words up to length {}", self.entries.len(), expected.len(), self.word_bound),
            ));
        }
        let images = Images::new(self.generators.clone()).map_err(|e| reject("generators", e.to_string()))?;
        for (entry, word) in self.entries.iter().zip(&expected) {
            let item = format!("entry {:?}", entry.word);
            if entry.word != word.to_text() {
                return Err(reject(item, format!("expected word {:?} in shortlex order", word.to_text())));
            }
            if !entry.decision.is_free() {
                return Err(reject(item, "decision is not free"));
            }
            let f = images.evaluate(word).map_err(|e| reject(&item, e.to_string()))?;
            entry.decision.verify(&f).map_err(|e| reject(&item, e))?;
            if entry.decision != has_fixed_point(&f) {
                return Err(reject(item, "witness checks out but is not the canonical one"));
            }
        }
        Ok(())
    }
}

/// Either certificate kind, as read from disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyCertificate {
    Freeness(Box<FreenessCertificate>),
    PingPong(Box<PingPongCertificate>),
}

impl AnyCertificate {
    pub fn from_json(text: &str) -> Result<Self, CertificateRejection> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| reject("json", e.to_string()))?;
        let version = value.get("version").and_then(|v| v.as_str()).unwrap_or_default().to_string();
        match version.as_str() {
            FREENESS_VERSION => serde_json::from_value(value)
                .map(|c| AnyCertificate::Freeness(Box::new(c)))
                .map_err(|e| reject("json", e.to_string())),
            PINGPONG_VERSION => serde_json::from_value(value)
                .map(|c| AnyCertificate::PingPong(Box::new(c)))
                .map_err(|e| reject("json", e.to_string())),
            other => Err(reject("version", format!("unknown certificate version {other:?}"))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyCertificate::Freeness(_) => FREENESS_VERSION,
            AnyCertificate::PingPong(_) => PINGPONG_VERSION,
        }
    }
}

pub fn verify_certificate(cert: &AnyCertificate) -> Result<(), CertificateRejection> {
    match cert {
        AnyCertificate::Freeness(c) => c.verify(),
        AnyCertificate::PingPong(c) => c.verify().map_err(|e| reject("pingpong", e.to_string())),
    }
}
