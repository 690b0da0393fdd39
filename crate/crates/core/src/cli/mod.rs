//! End-to-end certification commands and their reports.
//!
//! Every command returns a [`CertificationReport`] (or a plain value for
//! `alexander` and `genus`). Reports are deterministic apart from
//! `wall_time_ms`; [`CertificationReport::to_json`] can drop that field.

mod args;
pub mod selftest;

use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bigjson::{self, JsonInt};
use crate::fpgroups::{self, is_cyclic_of_order, CyclicCheck, FiniteGroup, Homomorphism, Presentation};
use crate::knots::{self, Knot, KnotError};
use crate::laurent::LaurentPoly;
use crate::lcurve::{self, NestConfig, NestError, OvalError, OvalReport, Window};
use crate::swcalc::{self, DistinctnessCertificate, HClass, HomologyLattice, SwError, SwPolynomial, TermJson};

pub use args::{run, Cli, Command, Outcome};

pub const TOOL: &str = "rimcert";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const MAX_COSETS_ENV: &str = "RIMCERT_MAX_COSETS";

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Sw(#[from] SwError),
    #[error(transparent)]
    Nest(#[from] NestError),
    #[error(transparent)]
    Oval(#[from] OvalError),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Exit code for malformed input or a violated precondition.
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubCertificate {
    Pi1(Pi1Certificate),
    SwFamily(SwFamilyCertificate),
    Ovals(OvalReport),
    Selftest(selftest::SelftestReport),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Value,
    pub verdict: Verdict,
    pub summary: String,
    pub certificate: SubCertificate,
    /// Not covered by the determinism contract.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<f64>,
}

impl CertificationReport {
    fn new(
        command: &str,
        input: Value,
        verdict: Verdict,
        summary: String,
        certificate: SubCertificate,
        start: Instant,
    ) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            input,
            verdict,
            summary,
            certificate,
            wall_time_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        }
    }

    pub fn without_timing(&self) -> Self {
        Self { wall_time_ms: None, ..self.clone() }
    }

    pub fn to_json(&self, include_timing: bool) -> String {
        let r = if include_timing { self.clone() } else { self.without_timing() };
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlexanderReport {
    pub knot: Knot,
    pub polynomial: LaurentPoly,
    pub display: String,
    pub degree_span: i64,
}

pub fn cmd_alexander(spec: &str) -> Result<AlexanderReport, CliError> {
    let knot: Knot = spec.parse()?;
    let polynomial = knots::alexander(&knot)?;
    let degree_span = polynomial.degree_span().map_err(KnotError::from)?;
    Ok(AlexanderReport { display: polynomial.to_string(), knot, polynomial, degree_span })
}

/// `(d - 1)(d - 2) / 2`.
pub fn cmd_genus(d: u64) -> Result<u64, CliError> {
    if d == 0 {
        return Err(CliError::Input("degree must be at least 1".into()));
    }
    Ok((d - 1) * d.saturating_sub(2) / 2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Pi1Outcome {
    /// The group is `ℤ/order`.
    Cyclic {
        order: usize,
        cosets_used: usize,
    },
    NonAbelian {
        witness: Homomorphism,
    },
    Fail {
        reason: String,
    },
    Inconclusive {
        max_cosets: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pi1Certificate {
    pub degree: usize,
    pub membrane: usize,
    pub genus: u64,
    pub punctured: Vec<usize>,
    pub presentation: Presentation,
    pub abelianization: Vec<JsonInt>,
    pub cyclic_check: CyclicCheck,
    pub outcome: Pi1Outcome,
}

/// Certifies `π₁ ≅ ℤ/d` for the nest with every region but the membrane's
/// punctured, or finds a non-abelian finite quotient.
pub fn cmd_pi1(d: usize, membrane: usize, max_cosets: usize) -> Result<CertificationReport, CliError> {
    let start = Instant::now();
    if d < 4 {
        return Err(NestError::InvalidConfig(format!("degree {d} < 4")).into());
    }
    let config = NestConfig::all_but_membrane(d, membrane)?;
    let presentation = lcurve::nest_presentation(&config);
    let abelianization = fpgroups::abelianization(&presentation);
    let check = is_cyclic_of_order(&presentation, d, max_cosets);

    let outcome = match &check {
        CyclicCheck::Pass { order, cosets_used } => Pi1Outcome::Cyclic { order: *order, cosets_used: *cosets_used },
        other => match non_abelian_quotient(&presentation) {
            Some(witness) => Pi1Outcome::NonAbelian { witness },
            None => match other {
                CyclicCheck::Inconclusive { max_cosets } => Pi1Outcome::Inconclusive { max_cosets: *max_cosets },
                CyclicCheck::Fail { reason } => Pi1Outcome::Fail { reason: reason.clone() },
                CyclicCheck::Pass { .. } => unreachable!(),
            },
        },
    };
    let (verdict, summary) = match &outcome {
        Pi1Outcome::Cyclic { order, .. } => (Verdict::Pass, format!("π₁ ≅ ℤ/{order}")),
        Pi1Outcome::NonAbelian { witness } => (
            Verdict::Fail,
            format!("non-abelian: surjects onto {} via ({})", witness.target, witness.image_labels.join(", ")),
        ),
        Pi1Outcome::Fail { reason } => (Verdict::Fail, reason.clone()),
        Pi1Outcome::Inconclusive { max_cosets } => {
            (Verdict::Inconclusive, format!("coset enumeration exceeded {max_cosets} cosets"))
        }
    };

    let cert = Pi1Certificate {
        degree: d,
        membrane,
        genus: cmd_genus(d as u64)?,
        punctured: config.punctured().iter().copied().collect(),
        presentation,
        abelianization: bigjson::wrap_vec(&abelianization),
        cyclic_check: check,
        outcome,
    };
    let input = json!({ "degree": d, "membrane": membrane, "max_cosets": max_cosets });
    Ok(CertificationReport::new("pi1", input, verdict, summary, SubCertificate::Pi1(cert), start))
}

fn non_abelian_quotient(p: &Presentation) -> Option<Homomorphism> {
    FiniteGroup::library().iter().filter(|g| !g.is_abelian()).find_map(|g| fpgroups::find_finite_quotient(p, g))
}

/// Base invariant for `sw-family`.
#[derive(Clone, Debug, PartialEq)]
pub enum BaseSw {
    /// `{0 ↦ 1}`.
    K3Like,
    /// JSON: either a term list `[{"class": [..], "coeff": c}, ..]` or an
    /// object with a `terms` field (and optionally a matching `lattice`).
    Json(String),
}

impl std::str::FromStr for BaseSw {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "k3" | "k3-like" => BaseSw::K3Like,
            other => BaseSw::Json(other.to_string()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwFamilyCertificate {
    pub cover_degree: usize,
    pub counts: Vec<usize>,
    pub counts_pairwise_distinct: bool,
    pub distinctness: DistinctnessCertificate,
    /// Per knot: surgery with `Δ_{K#K}` once equals surgery with `Δ_K`
    /// twice. Present in verbose mode.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub double_application_agrees: Option<Vec<bool>>,
}

/// Rank-1 free lattice for `cover_degree = 2`, otherwise `ℤᵈ/(1,…,1)` with
/// the tori `e₁, …, e_d`.
pub fn cover_lattice(cover_degree: usize) -> Result<(HomologyLattice, Vec<HClass>), CliError> {
    match cover_degree {
        0 | 1 => Err(CliError::Input(format!("cover degree {cover_degree} < 2"))),
        2 => {
            let l = HomologyLattice::free(1)?;
            let t = l.basis(0);
            Ok((l, vec![t]))
        }
        d => {
            let l = HomologyLattice::cover(d)?;
            let tori = (0..d).map(|i| l.basis(i)).collect();
            Ok((l, tori))
        }
    }
}

fn parse_base(base: &BaseSw, lattice: &HomologyLattice) -> Result<SwPolynomial, CliError> {
    let text = match base {
        BaseSw::K3Like => return Ok(SwPolynomial::k3_like(lattice.clone())),
        BaseSw::Json(t) => t,
    };
    let bad = |e: serde_json::Error| CliError::Input(format!("base invariant: {e}"));
    let value: Value = serde_json::from_str(text).map_err(bad)?;
    let terms_value = match value {
        Value::Array(_) => value,
        Value::Object(mut map) => {
            if let Some(l) = map.remove("lattice") {
                let l: swcalc::LatticeJson = serde_json::from_value(l).map_err(bad)?;
                if HomologyLattice::try_from(l)? != *lattice {
                    return Err(CliError::Input("base invariant lattice differs from the cover lattice".into()));
                }
            }
            map.remove("terms").ok_or_else(|| CliError::Input("base invariant: missing `terms`".into()))?
        }
        _ => return Err(CliError::Input("base invariant must be a JSON array or object".into())),
    };
    let terms: Vec<TermJson> = serde_json::from_value(terms_value).map_err(bad)?;
    Ok(SwPolynomial::from_terms_json(lattice.clone(), terms)?)
}

pub fn cmd_sw_family(
    base: &BaseSw,
    cover_degree: usize,
    knots: &[Knot],
    doubled: bool,
    verbose: bool,
) -> Result<CertificationReport, CliError> {
    let start = Instant::now();
    if knots.is_empty() {
        return Err(CliError::Input("no knots given".into()));
    }
    let (lattice, tori) = cover_lattice(cover_degree)?;
    let sw0 = parse_base(base, &lattice)?;
    let cert = swcalc::certify_family_distinct(&sw0, &tori, knots, doubled)?;

    let double_application_agrees = if verbose && doubled {
        let checks = knots
            .iter()
            .zip(&cert.entries)
            .map(|(k, e)| {
                let delta = knots::alexander(k)?;
                let once = swcalc::multi_torus_surgery(&sw0, &tori, &delta)?;
                let twice = swcalc::multi_torus_surgery(&once, &tori, &delta)?;
                Ok(twice.terms_json() == e.sw_terms)
            })
            .collect::<Result<Vec<bool>, SwError>>()?;
        Some(checks)
    } else {
        None
    };

    let mut verdict = match cert.verdict {
        swcalc::Verdict::Pass => Verdict::Pass,
        swcalc::Verdict::Fail => Verdict::Fail,
    };
    if double_application_agrees.as_ref().is_some_and(|c| c.iter().any(|ok| !ok)) {
        verdict = Verdict::Fail;
    }
    let counts = cert.counts();
    let shown: Vec<String> = counts.iter().map(ToString::to_string).collect();
    let summary = format!(
        "{} knots, basic-class counts [{}], {}",
        knots.len(),
        shown.join(", "),
        if verdict == Verdict::Pass { "pairwise distinct" } else { "not pairwise distinct" }
    );
    let input = json!({
        "base_sw": match base { BaseSw::K3Like => "k3".to_string(), BaseSw::Json(t) => t.clone() },
        "cover_degree": cover_degree,
        "knots": knots.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "doubled": doubled,
    });
    let sub = SwFamilyCertificate {
        cover_degree,
        counts_pairwise_distinct: cert.counts_pairwise_distinct(),
        counts,
        distinctness: cert,
        double_application_agrees,
    };
    Ok(CertificationReport::new("sw-family", input, verdict, summary, SubCertificate::SwFamily(sub), start))
}

/// Default window: the square `[-0.3, 0.3]²`.
pub const X9_DEFAULT_WINDOW: (f64, f64) = (-0.3, 0.3);

pub fn cmd_x9(
    epsilon: f64,
    delta: f64,
    window: Window,
    resolution: usize,
    svg: Option<&Path>,
) -> Result<CertificationReport, CliError> {
    let start = Instant::now();
    let report = lcurve::x9_ovals(epsilon, delta, window, resolution)?;
    if let Some(path) = svg {
        std::fs::write(path, report.to_svg(600))
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    let verdict = if report.nested_pair { Verdict::Pass } else { Verdict::Fail };
    let summary = if report.nested_pair {
        "2 nested ovals".to_string()
    } else {
        format!("{} component(s), containment {:?}", report.component_count, report.containment)
    };
    let input = json!({
        "epsilon": epsilon,
        "delta": delta,
        "window": window,
        "resolution": resolution,
    });
    Ok(CertificationReport::new("x9", input, verdict, summary, SubCertificate::Ovals(report), start))
}

pub fn cmd_selftest(seed: u64, cases: usize, max_cosets: usize) -> CertificationReport {
    let start = Instant::now();
    let report = selftest::run_selftest(seed, cases, max_cosets);
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    let verdict = if failed == 0 { Verdict::Pass } else { Verdict::Fail };
    let summary = format!("{} of {} checks passed", report.checks.len() - failed, report.checks.len());
    let input = json!({ "seed": seed, "cases": cases, "max_cosets": max_cosets });
    CertificationReport::new("selftest", input, verdict, summary, SubCertificate::Selftest(report), start)
}

pub(crate) fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
