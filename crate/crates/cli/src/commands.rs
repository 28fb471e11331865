use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use serde_json::json;

use freeact_core::constructions::{
    self, expanded_torus_check, hopf_fixed_point_free, hopf_group_check, sl2_lattice_free, AnyCertificate,
    CertifyOutcome, ComplexDeformationParameters, DeformationParameters, DeformationProblem, HopfDecision,
    SearchOutcome, SearchReport, Strategy,
};
use freeact_core::schottky::{order_test, propose_with_retries, verify_pingpong};
use freeact_core::torus::has_fixed_point;
use freeact_core::{
    AffineTorusMap, FixedPointDecision, GaussianMatrix, HopfDatum, PingPongTable, RationalMatrix, SchottkyError,
    SearchConfig,
};

use crate::io::{read_json, read_text};
use crate::{SearchArgs, StrategyArg};

/// What a subcommand produced: the JSON document, a human summary and the
/// verdict that selects exit code 0 or 1.
pub struct Outcome {
    pub accepted: bool,
    /// Pretty JSON, fields in declaration order.
    pub json: String,
    pub text: String,
}

fn outcome<T: Serialize>(accepted: bool, doc: &T, text: String) -> anyhow::Result<Outcome> {
    Ok(Outcome { accepted, json: serde_json::to_string_pretty(doc)? + "\n", text })
}

fn describe_decision(d: &FixedPointDecision) -> String {
    match d {
        FixedPointDecision::Free { witness } => {
            let ob = witness.membership.obstruction.as_ref();
            match ob {
                Some(o) => format!(
                    "free\n  obstruction: coordinate {} of the Smith frame has residue {}\n",
                    o.index, o.residue
                ),
                None => "free\n".into(),
            }
        }
        FixedPointDecision::Fixed { point, lattice_vector } => {
            let p: Vec<String> = point.iter().map(ToString::to_string).collect();
            let l: Vec<String> = lattice_vector.iter().map(ToString::to_string).collect();
            format!("fixed\n  point: ({})\n  lattice vector: ({})\n", p.join(", "), l.join(", "))
        }
    }
}

pub fn fixed_point(input: &Path) -> anyhow::Result<Outcome> {
    let f: AffineTorusMap = read_json(input)?;
    let decision = has_fixed_point(&f);
    decision
        .verify(&f)
        .map_err(|e| anyhow::anyhow!("internal invariant violated: decision does not re-verify: {e}"))?;
    let text = describe_decision(&decision);
    outcome(decision.is_free(), &decision, text)
}

#[derive(Deserialize)]
struct PairInput {
    a: RationalMatrix,
    b: RationalMatrix,
}

#[derive(Deserialize)]
struct CertifyInput {
    a: RationalMatrix,
    b: RationalMatrix,
    #[serde(flatten)]
    params: DeformationParameters,
}

fn describe_certify(out: &CertifyOutcome, power: u32) -> String {
    match out {
        CertifyOutcome::Certified { certificate } => format!(
            "certified: {} words up to length {} act freely on R^{}/Z^{} (linear parts raised to power {})\n",
            certificate.entries.len(),
            certificate.word_bound,
            certificate.dim(),
            certificate.dim(),
            power
        ),
        CertifyOutcome::Counterexample(c) => {
            format!("counterexample: word {}\n  {}", c.word, describe_decision(&c.decision).replace('\n', "\n  ").trim_end())
                + "\n"
        }
    }
}

pub fn certify(input: &Path, words: usize, power: u32) -> anyhow::Result<Outcome> {
    let req: CertifyInput = read_json(input)?;
    let problem = DeformationProblem::new(&req.a, &req.b, power, words, false)?;
    let out = problem.certify(&req.params)?;
    let text = describe_certify(&out, problem.power());
    outcome(out.certificate().is_some(), &out, text)
}

fn config(args: &SearchArgs) -> SearchConfig {
    SearchConfig {
        word_bound: args.words as usize,
        denominator_bound: args.denom,
        budget: args.budget,
        seed: args.seed,
        strategy: match args.strategy {
            StrategyArg::Grid => Strategy::Grid,
            StrategyArg::Random => Strategy::Random,
        },
        power: args.power,
    }
}

fn describe_search(r: &SearchReport) -> String {
    let mut s = String::new();
    match &r.outcome {
        SearchOutcome::Certified { certificate, .. } => {
            let _ = writeln!(
                s,
                "certified after {} candidates: {} words up to length {} (power {})",
                r.candidates_examined,
                certificate.entries.len(),
                certificate.word_bound,
                r.power
            );
        }
        SearchOutcome::BestEffort { exhausted, score, blocking_word, .. } => {
            let why = match exhausted {
                constructions::Exhaustion::Budget => "budget exhausted",
                constructions::Exhaustion::Space => "candidate space exhausted",
            };
            let _ = writeln!(
                s,
                "not certified ({why}) after {} candidates; best candidate blocked at length {score} by {blocking_word}",
                r.candidates_examined
            );
        }
    }
    let _ = writeln!(s, "  seed {} strategy {:?} denominators <= {}", r.config.seed, r.config.strategy, r.config.denominator_bound);
    for (len, count) in &r.blocking_lengths {
        let _ = writeln!(s, "  blocked at length {len}: {count}");
    }
    s
}

pub fn search(input: &Path, args: &SearchArgs, complex: bool) -> anyhow::Result<Outcome> {
    let req: PairInput = read_json(input)?;
    let cfg = config(args);
    let report = if complex {
        constructions::search_complex_deformation(&req.a, &req.b, &cfg)?
    } else {
        constructions::search_affine_deformation(&req.a, &req.b, &cfg)?
    };
    let text = describe_search(&report);
    outcome(report.certificate().is_some(), &report, text)
}

#[derive(Deserialize)]
struct PingPongInput {
    generators: Vec<RationalMatrix>,
    #[serde(default)]
    table: Option<PingPongTable>,
}

pub fn pingpong(input: &Path, power: u32) -> anyhow::Result<Outcome> {
    let req: PingPongInput = read_json(input)?;
    let gens: [RationalMatrix; 2] = req
        .generators
        .try_into()
        .map_err(|_| anyhow::anyhow!("parsing {}: expected exactly two generators", input.display()))?;
    if let Some(table) = req.table {
        return match verify_pingpong(&gens, &table) {
            Ok(cert) => outcome(true, &cert, "accepted: table verifies\n".into()),
            Err(e) => outcome(false, &json!({ "result": "rejected", "reason": e.to_string() }), format!("rejected: {e}\n")),
        };
    }
    match propose_with_retries(&gens, power) {
        Ok((m, cert)) => {
            let mut text = format!("accepted: table certifies the generators raised to power {m}\n");
            for (c, i) in [('a', &cert.table.a), ('b', &cert.table.b), ('A', &cert.table.a_inv), ('B', &cert.table.b_inv)] {
                let _ = writeln!(text, "  I_{c} = {i}");
            }
            outcome(true, &cert, text)
        }
        Err(SchottkyError::ProposerExhausted(m)) => outcome(
            false,
            &json!({ "result": "proposer-exhausted", "max_power": m }),
            format!("rejected: no table found up to power {m} (not a proof of non-freeness)\n"),
        ),
        Err(e) => Err(e.into()),
    }
}

#[derive(Deserialize)]
struct HopfInput {
    #[serde(flatten)]
    datum: HopfDatum,
    #[serde(default)]
    gamma: Option<GaussianMatrix>,
}

fn describe_hopf_decision(d: &HopfDecision) -> String {
    match d {
        HopfDecision::FixedPointFree { reason } => format!("fixed-point free: {reason}"),
        HopfDecision::HasFixedPoint { eigenvalue, m, k } => {
            format!("fixed point: eigenvalue {eigenvalue} = α^{m}·ξ^{k}")
        }
    }
}

pub fn hopf(input: &Path, words: usize) -> anyhow::Result<Outcome> {
    let req: HopfInput = read_json(input)?;
    req.datum.validate()?;
    if let Some(gamma) = &req.gamma {
        let d = hopf_fixed_point_free(gamma, &req.datum)?;
        let text = describe_hopf_decision(&d) + "\n";
        return outcome(d.is_free(), &d, text);
    }
    let report = hopf_group_check(&req.datum, words)?;
    let mut text = if report.passed() {
        format!("passed: {} words up to length {words}, no fixed points, no relations\n", report.words_checked)
    } else {
        format!("failed after checking {} words up to length {words}\n", report.words_checked)
    };
    if let Some(v) = &report.first_violation {
        let _ = writeln!(text, "  word {}: {}", v.word, describe_hopf_decision(&v.decision));
    }
    if let Some(r) = &report.relation {
        let _ = writeln!(text, "  relation: {r} = 1");
    }
    outcome(report.passed(), &report, text)
}

pub fn order(input: &Path) -> anyhow::Result<Outcome> {
    let m: GaussianMatrix = read_json(input)?;
    let report = order_test(&m)?;
    let lattice = sl2_lattice_free(&m).ok();
    let mut text = match &report {
        freeact_core::schottky::OrderReport::Finite { n } => format!("finite order {n}\n"),
        freeact_core::schottky::OrderReport::Infinite => "infinite order\n".into(),
        freeact_core::schottky::OrderReport::UnipotentNonIdentity => "infinite order (unipotent, not the identity)\n".into(),
    };
    if let Some(l) = &lattice {
        let verdict = match l {
            constructions::LatticeVerdict::Sufficient { .. } => "sufficient for a free action on SL2(C)/Λ",
            constructions::LatticeVerdict::Inconclusive { .. } => "inconclusive for SL2(C)/Λ",
        };
        let _ = writeln!(text, "  unit quaternion: {verdict}");
    }
    outcome(true, &json!({ "order": report, "lattice": lattice }), text)
}

pub fn expanded_torus(input: &Path) -> anyhow::Result<Outcome> {
    let m: RationalMatrix = read_json(input)?;
    let d = expanded_torus_check(&m)?;
    let text = format!("{}: {}\n", if d.accepted { "accepted" } else { "rejected" }, d.reason);
    outcome(d.accepted, &d, text)
}

/// Reports from `search`, `certify` and `pingpong` carry their certificate
/// under `certificate` or `outcome.certificate`; anything else is passed through.
fn embedded_certificate(text: String) -> String {
    let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) else { return text };
    if v.get("version").is_some() {
        return text;
    }
    ["/certificate", "/outcome/certificate"]
        .iter()
        .find_map(|p| v.pointer(p).filter(|c| c.is_object()))
        .map_or(text.clone(), |c| c.to_string())
}

pub fn verify(input: &Path) -> anyhow::Result<Outcome> {
    let text = embedded_certificate(read_text(input)?);
    let cert = match AnyCertificate::from_json(&text) {
        Ok(c) => c,
        Err(e) if e.item == "json" => {
            return Err(anyhow::anyhow!("{}", e.reason)).with_context(|| format!("parsing {}", input.display()));
        }
        Err(e) => {
            return outcome(false, &json!({ "result": "rejected", "item": e.item, "reason": e.reason }), format!("rejected: {e}\n"));
        }
    };
    match constructions::verify_certificate(&cert) {
        Ok(()) => outcome(
            true,
            &json!({ "result": "accepted", "kind": cert.kind() }),
            format!("accepted: {} certificate re-verifies\n", cert.kind()),
        ),
        Err(e) => outcome(
            false,
            &json!({ "result": "rejected", "kind": cert.kind(), "item": e.item, "reason": e.reason }),
            format!("rejected: {e}\n"),
        ),
    }
}

#[derive(Deserialize)]
struct Abelian3Input {
    a: RationalMatrix,
    b: RationalMatrix,
    #[serde(default, flatten)]
    params: Option<ComplexDeformationParameters>,
}

pub fn abelian3(input: &Path, args: &SearchArgs) -> anyhow::Result<Outcome> {
    let req: Abelian3Input = read_json(input)?;
    match &req.params {
        Some(p) => {
            let problem = DeformationProblem::new(&req.a, &req.b, args.power, args.words as usize, true)?;
            let out = problem.certify(&p.realified())?;
            let text = describe_certify(&out, problem.power());
            outcome(out.certificate().is_some(), &out, text)
        }
        None => {
            let report = constructions::search_complex_deformation(&req.a, &req.b, &config(args))?;
            let text = describe_search(&report);
            outcome(report.certificate().is_some(), &report, text)
        }
    }
}
