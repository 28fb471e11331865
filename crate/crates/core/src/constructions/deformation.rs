//! Affine deformations `A_s = a·x + s`, `B_t = b·x + t` of a Schottky pair
//! acting on a torus: certification up to a word bound and a seeded search
//! over rational parameters.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{CertificateEntry, FreenessCertificate, FREENESS_VERSION};
use crate::error::ConstructionError;
use crate::exact::rational::frac;
use crate::exact::{GaussianRational, Rational, RationalMatrix};
use crate::schottky::{
    classify_isometry, induced_moebius, projectively_equal, propose_with_retries, ConicModel,
    PingPongCertificate,
};
use crate::torus::{
    realify_matrix, realify_vector, translation_decomposition, AffineTorusMap, FixedPointDecision,
    PreparedLinearPart,
};
use crate::words::{enumerate_reduced, Images, ReducedWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeformationParameters {
    #[serde(with = "crate::json::rational_vec")]
    pub s: Vec<Rational>,
    #[serde(with = "crate::json::rational_vec")]
    pub t: Vec<Rational>,
}

impl DeformationParameters {
    pub fn zero(n: usize) -> Self {
        DeformationParameters { s: vec![Rational::zero(); n], t: vec![Rational::zero(); n] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexDeformationParameters {
    #[serde(with = "crate::json::gaussian_vec")]
    pub s: Vec<GaussianRational>,
    #[serde(with = "crate::json::gaussian_vec")]
    pub t: Vec<GaussianRational>,
}

impl ComplexDeformationParameters {
    pub fn realified(&self) -> DeformationParameters {
        DeformationParameters { s: realify_vector(&self.s), t: realify_vector(&self.t) }
    }

    /// Inverse of [`Self::realified`]: coordinates are interleaved `(re, im)`.
    pub fn from_realified(p: &DeformationParameters) -> Self {
        let pair = |v: &[Rational]| {
            v.chunks(2).map(|c| GaussianRational::new(c[0].clone(), c[1].clone())).collect()
        };
        ComplexDeformationParameters { s: pair(&p.s), t: pair(&p.t) }
    }
}

/// Translation parameters in either flavour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameters {
    Real(DeformationParameters),
    Complex(ComplexDeformationParameters),
}

/// Action of a linear part on RP¹: a 2×2 matrix acts directly, a 3×3 one
/// through the null conic of the first form in [`ConicModel`] it preserves.
pub fn projective_action(l: &RationalMatrix) -> Result<(RationalMatrix, Option<ConicModel>), ConstructionError> {
    match (l.rows(), l.cols()) {
        (2, 2) => {
            if l.det()?.is_zero() {
                return Err(ConstructionError::Singular);
            }
            Ok((l.clone(), None))
        }
        (3, 3) => {
            for model in [ConicModel::Lorentz, ConicModel::BinaryForms] {
                if classify_isometry(l, model).is_ok() {
                    return Ok((induced_moebius(l, model)?, Some(model)));
                }
            }
            Err(ConstructionError::Dimension(
                "3x3 linear part preserves neither x² − y² − z² nor XZ − Y² with determinant 1".into(),
            ))
        }
        (r, c) => Err(ConstructionError::Dimension(format!("linear parts must be 2x2 or 3x3, found {r}x{c}"))),
    }
}

fn check_linear_pair(a: &RationalMatrix, b: &RationalMatrix) -> Result<Option<ConicModel>, ConstructionError> {
    if a.rows() != b.rows() {
        return Err(ConstructionError::Dimension(format!("{}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    AffineTorusMap::linear(a.clone())?;
    AffineTorusMap::linear(b.clone())?;
    let (_, ca) = projective_action(a)?;
    let (_, cb) = projective_action(b)?;
    if ca != cb {
        return Err(ConstructionError::Dimension("generators preserve different forms".into()));
    }
    Ok(ca)
}

fn check_pingpong_link(
    a: &RationalMatrix,
    b: &RationalMatrix,
    pingpong: &PingPongCertificate,
) -> Result<(), ConstructionError> {
    pingpong.verify().map_err(|e| ConstructionError::PingPong(e.to_string()))?;
    if pingpong.generators.len() != 2 {
        return Err(ConstructionError::PingPong("expected two generators".into()));
    }
    for (k, l) in [a, b].into_iter().enumerate() {
        let (action, _) = projective_action(l)?;
        if !projectively_equal(&action, &pingpong.generators[k]) {
            return Err(ConstructionError::PingPong(format!(
                "generator {k} of the table is not the projective action of the linear part"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub word: String,
    pub decision: FixedPointDecision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum CertifyOutcome {
    Certified { certificate: Box<FreenessCertificate> },
    Counterexample(Counterexample),
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&FreenessCertificate> {
        match self {
            CertifyOutcome::Certified { certificate } => Some(certificate),
            CertifyOutcome::Counterexample(_) => None,
        }
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            CertifyOutcome::Counterexample(c) => Some(c),
            CertifyOutcome::Certified { .. } => None,
        }
    }
}

/// Words whose translation is checked against `L_w·s + R_w·t`: one in ten.
const SPOT_CHECK_STRIDE: usize = 10;

fn certify_generators(
    base: [&RationalMatrix; 2],
    generators: [AffineTorusMap; 2],
    complex: Option<ComplexDeformationParameters>,
    pingpong: &PingPongCertificate,
    word_bound: usize,
) -> Result<CertifyOutcome, ConstructionError> {
    let conic = check_linear_pair(base[0], base[1])?;
    check_pingpong_link(base[0], base[1], pingpong)?;
    let images = Images::new(generators.to_vec()).map_err(|e| ConstructionError::Invariant(e.to_string()))?;
    let (la, lb) = (generators[0].linear_part(), generators[1].linear_part());
    let (s, t) = (generators[0].translation_part(), generators[1].translation_part());
    let mut entries = Vec::new();
    for (i, w) in enumerate_reduced(2, word_bound).filter(|w| !w.is_empty()).enumerate() {
        let f = images.evaluate(&w).map_err(|e| ConstructionError::Invariant(e.to_string()))?;
        if i % SPOT_CHECK_STRIDE == 0 {
            let d = translation_decomposition(&w, la, lb)?;
            let predicted = d.l_w.mul_vec(s)?;
            let from_t = d.r_w.mul_vec(t)?;
            let predicted: Vec<Rational> = predicted.iter().zip(&from_t).map(|(x, y)| frac(&(x + y))).collect();
            if predicted.as_slice() != f.translation_part() {
                return Err(ConstructionError::Invariant(format!("translation of {w} is not L_w·s + R_w·t")));
            }
        }
        let decision = PreparedLinearPart::new(f.linear_part()).decide(f.translation_part());
        if !decision.is_free() {
            return Ok(CertifyOutcome::Counterexample(Counterexample { word: w.to_text(), decision }));
        }
        entries.push(CertificateEntry { word: w.to_text(), decision });
    }
    Ok(CertifyOutcome::Certified {
        certificate: Box::new(FreenessCertificate {
            version: FREENESS_VERSION.into(),
            linear_parts: vec![base[0].clone(), base[1].clone()],
            conic,
            generators: generators.to_vec(),
            complex,
            pingpong: pingpong.clone(),
            word_bound,
            entries,
        }),
    })
}

/// Certifies that `A_s`, `B_t` act without fixed points for every nonempty
/// reduced word of length `<= word_bound`, or returns the shortlex-first word
/// with a fixed point.
pub fn certify_free_torus_action(
    a: &RationalMatrix,
    b: &RationalMatrix,
    params: &DeformationParameters,
    pingpong: &PingPongCertificate,
    word_bound: usize,
) -> Result<CertifyOutcome, ConstructionError> {
    let n = a.rows();
    if params.s.len() != n || params.t.len() != n {
        return Err(ConstructionError::Dimension(format!("translations must have length {n}")));
    }
    let generators = [
        AffineTorusMap::new(a.clone(), params.s.clone())?,
        AffineTorusMap::new(b.clone(), params.t.clone())?,
    ];
    certify_generators([a, b], generators, None, pingpong, word_bound)
}

/// The same construction on `(C/Z[i])^3`, realified to `R^6/Z^6`.
pub fn build_abelian_threefold_action(
    a: &RationalMatrix,
    b: &RationalMatrix,
    params: &ComplexDeformationParameters,
    pingpong: &PingPongCertificate,
    word_bound: usize,
) -> Result<CertifyOutcome, ConstructionError> {
    let n = a.rows();
    if params.s.len() != n || params.t.len() != n {
        return Err(ConstructionError::Dimension(format!("translations must have length {n}")));
    }
    let real = params.realified();
    let generators = [
        AffineTorusMap::new(realify_matrix(&a.to_gaussian()), real.s)?,
        AffineTorusMap::new(realify_matrix(&b.to_gaussian()), real.t)?,
    ];
    // recorded modulo Z[i], like the real translations
    let reduced = ComplexDeformationParameters::from_realified(&DeformationParameters {
        s: generators[0].translation_part().to_vec(),
        t: generators[1].translation_part().to_vec(),
    });
    certify_generators([a, b], generators, Some(reduced), pingpong, word_bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Every coordinate runs over `k/D`, `0 <= k < D`, last coordinate fastest.
    Grid,
    /// Coordinates `p/q` with `q` uniform in `1..=D` and `p` in `0..q`.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub word_bound: usize,
    pub denominator_bound: u32,
    pub budget: u64,
    pub seed: u64,
    pub strategy: Strategy,
    /// Smallest power of the generators handed to the ping-pong proposer.
    pub power: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { word_bound: 4, denominator_bound: 8, budget: 10_000, seed: 0, strategy: Strategy::Random, power: 1 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let bad = |what: &str| Err(ConstructionError::Config(format!("{what} must be at least 1")));
        if self.word_bound == 0 {
            return bad("word bound");
        }
        if self.denominator_bound == 0 {
            return bad("denominator bound");
        }
        if self.budget == 0 {
            return bad("budget");
        }
        if self.power == 0 {
            return bad("power");
        }
        Ok(())
    }
}

/// Shortest blocked word of a candidate, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Score {
    Free,
    Blocked { word: ReducedWord },
}

struct PreparedWord {
    word: ReducedWord,
    l_w: RationalMatrix,
    r_w: RationalMatrix,
    linear: PreparedLinearPart,
}

/// Everything about a search that does not depend on the translations.
pub struct DeformationProblem {
    base: [RationalMatrix; 2],
    torus_linear: [RationalMatrix; 2],
    complex: bool,
    power: u32,
    pingpong: PingPongCertificate,
    words: Vec<PreparedWord>,
}

impl DeformationProblem {
    /// Certifies the projective action of `(a^m, b^m)` for the least `m >= power`
    /// the proposer handles, and prepares every word up to `word_bound`.
    pub fn new(
        a: &RationalMatrix,
        b: &RationalMatrix,
        power: u32,
        word_bound: usize,
        complex: bool,
    ) -> Result<Self, ConstructionError> {
        check_linear_pair(a, b)?;
        let (pa, _) = projective_action(a)?;
        let (pb, _) = projective_action(b)?;
        let (m, pingpong) = propose_with_retries(&[pa, pb], power)?;
        let base = [a.pow(m as i64)?, b.pow(m as i64)?];
        let torus_linear = if complex {
            [realify_matrix(&base[0].to_gaussian()), realify_matrix(&base[1].to_gaussian())]
        } else {
            base.clone()
        };
        let words = enumerate_reduced(2, word_bound)
            .filter(|w| !w.is_empty())
            .map(|w| {
                let d = translation_decomposition(&w, &torus_linear[0], &torus_linear[1])?;
                let l = Images::new(torus_linear.to_vec())
                    .and_then(|im| im.evaluate(&w))
                    .map_err(|e| ConstructionError::Invariant(e.to_string()))?;
                Ok(PreparedWord { word: w, l_w: d.l_w, r_w: d.r_w, linear: PreparedLinearPart::new(&l) })
            })
            .collect::<Result<Vec<_>, ConstructionError>>()?;
        Ok(DeformationProblem { base, torus_linear, complex, power: m, pingpong, words })
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// Linear parts actually deformed (the certified powers).
    pub fn linear_parts(&self) -> &[RationalMatrix; 2] {
        &self.base
    }

    pub fn pingpong(&self) -> &PingPongCertificate {
        &self.pingpong
    }

    /// Real dimension of the torus.
    pub fn torus_dim(&self) -> usize {
        self.torus_linear[0].rows()
    }

    pub fn word_bound(&self) -> usize {
        self.words.last().map_or(0, |w| w.word.len())
    }

    /// `params` are real translations of length [`Self::torus_dim`].
    pub fn score(&self, params: &DeformationParameters) -> Score {
        for w in &self.words {
            let mut t = w.l_w.mul_vec(&params.s).expect("dimensions agree");
            for (x, y) in t.iter_mut().zip(w.r_w.mul_vec(&params.t).expect("dimensions agree")) {
                *x += y;
            }
            if w.linear.has_fixed_point(&t) {
                return Score::Blocked { word: w.word.clone() };
            }
        }
        Score::Free
    }

    pub fn certify(&self, params: &DeformationParameters) -> Result<CertifyOutcome, ConstructionError> {
        let bound = self.word_bound();
        if self.complex {
            build_abelian_threefold_action(
                &self.base[0],
                &self.base[1],
                &ComplexDeformationParameters::from_realified(params),
                &self.pingpong,
                bound,
            )
        } else {
            certify_free_torus_action(&self.base[0], &self.base[1], params, &self.pingpong, bound)
        }
    }

    fn parameters(&self, params: &DeformationParameters) -> Parameters {
        if self.complex {
            Parameters::Complex(ComplexDeformationParameters::from_realified(params))
        } else {
            Parameters::Real(params.clone())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exhaustion {
    /// The candidate budget ran out.
    Budget,
    /// The grid was covered completely before the budget ran out.
    Space,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Certified {
        params: Parameters,
        certificate: Box<FreenessCertificate>,
    },
    BestEffort {
        exhausted: Exhaustion,
        params: Parameters,
        score: usize,
        blocking_word: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    /// Power of the input generators that the ping-pong table certifies.
    pub power: u32,
    pub complex: bool,
    pub candidates_examined: u64,
    /// Blocked candidates by length of their shortest blocked word.
    pub blocking_lengths: BTreeMap<usize, u64>,
    pub outcome: SearchOutcome,
}

impl SearchReport {
    pub fn certificate(&self) -> Option<&FreenessCertificate> {
        match &self.outcome {
            SearchOutcome::Certified { certificate, .. } => Some(certificate),
            SearchOutcome::BestEffort { .. } => None,
        }
    }
}

/// Deterministic stream of candidate translations.
struct Candidates {
    strategy: Strategy,
    den: u32,
    coords: usize,
    rng: ChaCha8Rng,
    next_index: u64,
    space: Option<u64>,
}

impl Candidates {
    fn new(cfg: &SearchConfig, n: usize) -> Self {
        let coords = 2 * n;
        let space = match cfg.strategy {
            Strategy::Random => None,
            Strategy::Grid => u32::try_from(coords).ok().and_then(|c| u64::from(cfg.denominator_bound).checked_pow(c)),
        };
        Candidates {
            strategy: cfg.strategy,
            den: cfg.denominator_bound,
            coords,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            next_index: 0,
            space,
        }
    }
}

impl Iterator for Candidates {
    type Item = DeformationParameters;

    fn next(&mut self) -> Option<DeformationParameters> {
        let values: Vec<Rational> = match self.strategy {
            Strategy::Random => (0..self.coords)
                .map(|_| {
                    let q = self.rng.gen_range(1..=self.den);
                    let p = self.rng.gen_range(0..q);
                    Rational::new(p.into(), q.into())
                })
                .collect(),
            Strategy::Grid => {
                if self.space.is_some_and(|s| self.next_index >= s) {
                    return None;
                }
                let d = u64::from(self.den);
                let mut rest = self.next_index;
                let mut digits = vec![0u64; self.coords];
                for slot in digits.iter_mut().rev() {
                    *slot = rest % d;
                    rest /= d;
                }
                digits.into_iter().map(|k| Rational::new(k.into(), d.into())).collect()
            }
        };
        self.next_index += 1;
        let n = self.coords / 2;
        Some(DeformationParameters { s: values[..n].to_vec(), t: values[n..].to_vec() })
    }
}

const BATCH: usize = 256;

/// Scans candidates in order; the first one with no blocked word up to the
/// bound is certified. Batches are scored in parallel but the result only
/// depends on candidate order.
pub fn run_search(problem: &DeformationProblem, cfg: &SearchConfig) -> Result<SearchReport, ConstructionError> {
    cfg.validate()?;
    if problem.word_bound() != cfg.word_bound {
        return Err(ConstructionError::Config("problem prepared for a different word bound".into()));
    }
    let mut candidates = Candidates::new(cfg, problem.torus_dim());
    let mut examined = 0u64;
    let mut histogram = BTreeMap::new();
    let mut best: Option<(DeformationParameters, ReducedWord)> = None;
    let mut space_done = false;
    while examined < cfg.budget {
        let take = (cfg.budget - examined).min(BATCH as u64) as usize;
        let batch: Vec<DeformationParameters> = candidates.by_ref().take(take).collect();
        if batch.is_empty() {
            space_done = true;
            break;
        }
        let scores: Vec<Score> = batch.par_iter().map(|p| problem.score(p)).collect();
        for (params, score) in batch.into_iter().zip(scores) {
            examined += 1;
            match score {
                Score::Free => {
                    let outcome = problem.certify(&params)?;
                    let Some(cert) = outcome.certificate() else {
                        return Err(ConstructionError::Invariant(
                            "fast scoring and full certification disagree".into(),
                        ));
                    };
                    return Ok(SearchReport {
                        config: cfg.clone(),
                        power: problem.power(),
                        complex: problem.complex,
                        candidates_examined: examined,
                        blocking_lengths: histogram,
                        outcome: SearchOutcome::Certified {
                            params: problem.parameters(&params),
                            certificate: Box::new(cert.clone()),
                        },
                    });
                }
                Score::Blocked { word } => {
                    *histogram.entry(word.len()).or_insert(0) += 1;
                    if best.as_ref().is_none_or(|(_, w)| word.len() > w.len()) {
                        best = Some((params, word));
                    }
                }
            }
        }
    }
    if candidates.space.is_some_and(|s| examined >= s) {
        space_done = true;
    }
    let (params, word) = best.expect("budget >= 1 and the first candidate always exists");
    Ok(SearchReport {
        config: cfg.clone(),
        power: problem.power(),
        complex: problem.complex,
        candidates_examined: examined,
        blocking_lengths: histogram,
        outcome: SearchOutcome::BestEffort {
            exhausted: if space_done { Exhaustion::Space } else { Exhaustion::Budget },
            params: problem.parameters(&params),
            score: word.len(),
            blocking_word: word.to_text(),
        },
    })
}

/// Seeded search for real translations `(s, t)`.
pub fn search_affine_deformation(
    a: &RationalMatrix,
    b: &RationalMatrix,
    cfg: &SearchConfig,
) -> Result<SearchReport, ConstructionError> {
    cfg.validate()?;
    let problem = DeformationProblem::new(a, b, cfg.power, cfg.word_bound, false)?;
    run_search(&problem, cfg)
}

/// Seeded search for Gaussian-rational translations on `(C/Z[i])^n`.
pub fn search_complex_deformation(
    a: &RationalMatrix,
    b: &RationalMatrix,
    cfg: &SearchConfig,
) -> Result<SearchReport, ConstructionError> {
    cfg.validate()?;
    let problem = DeformationProblem::new(a, b, cfg.power, cfg.word_bound, true)?;
    run_search(&problem, cfg)
}
