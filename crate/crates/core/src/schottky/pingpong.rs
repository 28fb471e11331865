//! Four-interval ping-pong on RP¹: exact verification and a proposer that
//! builds tables around the fixed points of powers of two loxodromic maps.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::classify::Quadratic;
use super::projective::{ProjectiveInterval, ProjectivePoint};
use crate::error::SchottkyError;
use crate::exact::{int, Rational, RationalMatrix};

pub const PINGPONG_VERSION: &str = "pingpong-v1";

/// Letters in table order.
pub const LETTERS: [char; 4] = ['a', 'b', 'A', 'B'];

fn inverse_letter(c: char) -> char {
    if c.is_ascii_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PingPongTable {
    pub a: ProjectiveInterval,
    pub b: ProjectiveInterval,
    #[serde(rename = "A")]
    pub a_inv: ProjectiveInterval,
    #[serde(rename = "B")]
    pub b_inv: ProjectiveInterval,
}

impl PingPongTable {
    pub fn interval(&self, letter: char) -> &ProjectiveInterval {
        match letter {
            'a' => &self.a,
            'b' => &self.b,
            'A' => &self.a_inv,
            'B' => &self.b_inv,
            _ => panic!("no interval for letter {letter:?}"),
        }
    }

    /// Applies a projective map to every interval; the results are canonical.
    pub fn transform(&self, h: &RationalMatrix) -> Option<Self> {
        Some(PingPongTable {
            a: self.a.image(h)?.canonical(),
            b: self.b.image(h)?.canonical(),
            a_inv: self.a_inv.image(h)?.canonical(),
            b_inv: self.b_inv.image(h)?.canonical(),
        })
    }
}

/// Invariants of a generator as a projective map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorData {
    #[serde(with = "crate::json::rational")]
    pub det: Rational,
    #[serde(with = "crate::json::rational")]
    pub trace: Rational,
    pub fixed_points: Quadratic,
    /// Real distinct fixed points with distinct multipliers.
    pub loxodromic: bool,
}

impl GeneratorData {
    pub fn of(m: &RationalMatrix) -> Self {
        let det = m.det().expect("2x2");
        let trace = m.trace();
        let fixed_points = Quadratic::fixed_points_of(m);
        let loxodromic = !det.is_zero() && fixed_points.discriminant.is_positive() && !trace.is_zero();
        GeneratorData { det, trace, fixed_points, loxodromic }
    }
}

/// `g` maps `source` (the closed complement of the interior of `I_{g⁻¹}`)
/// onto `image`, which lies in the interior of `I_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentRecord {
    pub letter: char,
    pub source: ProjectiveInterval,
    pub image: ProjectiveInterval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PingPongCertificate {
    pub version: String,
    pub generators: Vec<RationalMatrix>,
    pub table: PingPongTable,
    pub classification: Vec<GeneratorData>,
    pub containments: Vec<ContainmentRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PingPongRejection {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("intervals {0} and {1} meet at {2}")]
    Overlap(char, char, String),
    #[error("letter {0}: image of the complement of I_{1} leaves the interior of I_{0} at {2}")]
    Containment(char, char, String),
}

fn letter_matrix(generators: &[RationalMatrix; 2], letter: char) -> Result<RationalMatrix, PingPongRejection> {
    let m = match letter {
        'a' | 'A' => &generators[0],
        _ => &generators[1],
    };
    if letter.is_ascii_lowercase() {
        Ok(m.clone())
    } else {
        m.inverse().map_err(|_| PingPongRejection::Malformed(format!("generator {letter} is singular")))
    }
}

/// Checks the Schottky conditions exactly and returns a certificate.
pub fn verify_pingpong(
    generators: &[RationalMatrix; 2],
    table: &PingPongTable,
) -> Result<PingPongCertificate, PingPongRejection> {
    for g in generators {
        if g.rows() != 2 || g.cols() != 2 {
            return Err(PingPongRejection::Malformed("generators must be 2x2".into()));
        }
    }
    for c in LETTERS {
        table
            .interval(c)
            .validate()
            .map_err(|e| PingPongRejection::Malformed(format!("interval {c}: {e}")))?;
    }
    for (i, &x) in LETTERS.iter().enumerate() {
        for &y in &LETTERS[i + 1..] {
            if let Some(p) = table.interval(x).meets(table.interval(y)) {
                return Err(PingPongRejection::Overlap(x, y, p.to_text()));
            }
        }
    }
    let mut containments = Vec::with_capacity(4);
    for letter in LETTERS {
        let g = letter_matrix(generators, letter)?;
        let inv = inverse_letter(letter);
        let source = table.interval(inv).complement();
        let image = source
            .image(&g)
            .ok_or_else(|| PingPongRejection::Malformed(format!("generator {letter} is singular")))?;
        if let Some(p) = table.interval(letter).escapes_interior(&image) {
            return Err(PingPongRejection::Containment(letter, inv, p.to_text()));
        }
        containments.push(ContainmentRecord { letter, source, image });
    }
    Ok(PingPongCertificate {
        version: PINGPONG_VERSION.into(),
        generators: generators.to_vec(),
        table: table.clone(),
        classification: generators.iter().map(GeneratorData::of).collect(),
        containments,
    })
}

impl PingPongCertificate {
    pub fn generator_pair(&self) -> Result<[RationalMatrix; 2], PingPongRejection> {
        <[RationalMatrix; 2]>::try_from(self.generators.clone())
            .map_err(|_| PingPongRejection::Malformed("expected two generators".into()))
    }

    /// Re-derives every stored field from the generators and the table.
    pub fn verify(&self) -> Result<(), PingPongRejection> {
        if self.version != PINGPONG_VERSION {
            return Err(PingPongRejection::Malformed(format!("unknown version {:?}", self.version)));
        }
        let fresh = verify_pingpong(&self.generator_pair()?, &self.table)?;
        for c in LETTERS {
            let i = self.table.interval(c);
            if i != &i.canonical() {
                return Err(PingPongRejection::Malformed(format!("interval {c} is not in canonical form")));
            }
        }
        if fresh.classification != self.classification {
            return Err(PingPongRejection::Malformed("stored classification data disagree".into()));
        }
        if fresh.containments.len() != self.containments.len() {
            return Err(PingPongRejection::Malformed("wrong number of containment records".into()));
        }
        for (ours, theirs) in fresh.containments.iter().zip(&self.containments) {
            if ours != theirs {
                return Err(PingPongRejection::Malformed(format!(
                    "containment record for {} does not match the exact images",
                    ours.letter
                )));
            }
        }
        Ok(())
    }
}

/// Rational brackets of `√k`, refined by bisection.
struct SqrtBracket {
    k: Rational,
    lo: Rational,
    hi: Rational,
}

impl SqrtBracket {
    fn new(k: Rational) -> Self {
        let hi = &k + Rational::one();
        SqrtBracket { k, lo: Rational::zero(), hi }
    }

    fn refine_below(&mut self, width: &Rational) {
        while &(&self.hi - &self.lo) >= width {
            let mid = (&self.lo + &self.hi) / int(2);
            if &mid * &mid < self.k {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }
}

/// Isolated fixed points of one loxodromic map (no fixed point at `∞`).
struct FixedPointBrackets {
    vertex: Rational,
    root: SqrtBracket,
    /// Attracting fixed point is `vertex + √k` (else `vertex − √k`).
    attracting_is_upper: bool,
}

impl FixedPointBrackets {
    fn new(m: &RationalMatrix) -> Self {
        let q = Quadratic::fixed_points_of(m);
        let (c, b) = (&q.coefficients[0], &q.coefficients[1]);
        let vertex = -b / (int(2) * c);
        let k = &q.discriminant / (int(4) * c * c);
        let attracting_is_upper = c.is_positive() == m.trace().is_positive();
        FixedPointBrackets { vertex, root: SqrtBracket::new(k), attracting_is_upper }
    }

    /// `[lo, hi]` around the attracting (or repelling) fixed point.
    fn bracket(&self, attracting: bool) -> (Rational, Rational) {
        let upper = attracting == self.attracting_is_upper;
        if upper {
            (&self.vertex + &self.root.lo, &self.vertex + &self.root.hi)
        } else {
            (&self.vertex - &self.root.hi, &self.vertex - &self.root.lo)
        }
    }
}

/// Maximum halvings of the interval half-width.
pub const PROPOSER_STEPS: u32 = 64;
/// Largest power tried by [`propose_with_retries`].
pub const MAX_POWER: u32 = 8;

fn conjugator(k: i64) -> RationalMatrix {
    // x ↦ k − 1/x, sending ∞ to k
    RationalMatrix::from_i64_rows(&[&[k, -1], &[1, 0]])
}

/// Builds a table for `(g₀^m, g₁^m)` and returns it once it verifies.
pub fn propose_pingpong_table(generators: &[RationalMatrix; 2], m: u32) -> Result<PingPongTable, SchottkyError> {
    if m == 0 {
        return Err(SchottkyError::ZeroPower);
    }
    let mut powers = Vec::with_capacity(2);
    for (i, g) in generators.iter().enumerate() {
        if g.rows() != 2 || g.cols() != 2 {
            return Err(SchottkyError::MalformedTable("generators must be 2x2".into()));
        }
        let data = GeneratorData::of(g);
        if !data.loxodromic {
            return Err(SchottkyError::NotLoxodromic(
                i,
                format!("trace {}, det {}", data.trace, data.det),
            ));
        }
        powers.push(g.pow(m as i64)?);
    }
    let powers: [RationalMatrix; 2] = powers.try_into().expect("two generators");
    // move ∞ off every fixed point
    let fixes = |x: &Rational| {
        powers.iter().any(|g| {
            let q = Quadratic::fixed_points_of(g);
            q.eval(x).is_zero()
        })
    };
    let needs_conjugation = powers.iter().any(|g| g.get(1, 0).is_zero());
    let h = if needs_conjugation {
        let k = (0..)
            .flat_map(|k: i64| [k, -k])
            .find(|&k| !fixes(&int(k)))
            .expect("finitely many fixed points");
        conjugator(k)
    } else {
        RationalMatrix::identity(2)
    };
    let h_inv = h.inverse()?;
    let conj: Vec<RationalMatrix> = powers.iter().map(|g| &(&h_inv * g) * &h).collect();
    let mut brackets: Vec<FixedPointBrackets> = conj.iter().map(FixedPointBrackets::new).collect();

    // Step k brackets every fixed point to width 2^-k. Once the brackets are
    // separated by a gap δ, each interval gets half-width δ/2·(1 − 2^-j), so
    // the intervals grow toward each other while staying disjoint.
    let mut precision = Rational::one();
    let mut grown = 0u32;
    for _ in 0..=PROPOSER_STEPS {
        for b in brackets.iter_mut() {
            b.root.refine_below(&precision);
        }
        precision /= int(2);
        let mut spans: Vec<(Rational, Rational)> = brackets
            .iter()
            .flat_map(|b| [b.bracket(true), b.bracket(false)])
            .collect();
        spans.sort();
        let gap = spans.windows(2).map(|w| &w[1].0 - &w[0].1).min().expect("four brackets");
        if !gap.is_positive() {
            continue;
        }
        grown += 1;
        let half_width = &gap / int(2) * (Rational::one() - Rational::new(1.into(), BigInt::one() << grown));
        let around = |b: &FixedPointBrackets, attracting: bool| {
            let (lo, hi) = b.bracket(attracting);
            let lo = ProjectivePoint::from_rational(&(lo - &half_width));
            let hi = ProjectivePoint::from_rational(&(hi + &half_width));
            ProjectiveInterval::increasing(lo, hi).expect("positive width")
        };
        let local = PingPongTable {
            a: around(&brackets[0], true),
            a_inv: around(&brackets[0], false),
            b: around(&brackets[1], true),
            b_inv: around(&brackets[1], false),
        };
        let table = local
            .transform(&h)
            .ok_or_else(|| SchottkyError::Invariant("conjugator is singular".into()))?;
        if verify_pingpong(&powers, &table).is_ok() {
            return Ok(table);
        }
    }
    Err(SchottkyError::ProposerExhausted(m))
}

/// Tries powers `m, m + 1, …, MAX_POWER` and certifies the first that works.
pub fn propose_with_retries(
    generators: &[RationalMatrix; 2],
    m: u32,
) -> Result<(u32, PingPongCertificate), SchottkyError> {
    if m == 0 {
        return Err(SchottkyError::ZeroPower);
    }
    let mut last = SchottkyError::ProposerExhausted(m);
    for power in m..=MAX_POWER.max(m) {
        match propose_pingpong_table(generators, power) {
            Ok(table) => {
                let powers = [generators[0].pow(power as i64)?, generators[1].pow(power as i64)?];
                let cert = verify_pingpong(&powers, &table)
                    .map_err(|e| SchottkyError::Invariant(format!("proposed table fails: {e}")))?;
                return Ok((power, cert));
            }
            Err(e @ SchottkyError::ProposerExhausted(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}
