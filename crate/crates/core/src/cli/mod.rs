//! Command-line front end. Exit codes: 0 for *-clean (or true), 1 for not
//! *-clean (or false), 2 for Unknown or a sampled result, and above 2 for
//! errors.

mod report;
mod spec;

use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use report::Report;
pub use spec::{parse_group_spec, GroupSpec, SlcParams};

use crate::canonical::{decompose_f, f_projection_data, involution_formula, is_symmetric_f};
use crate::coeff::{level_classify_prime, make_ring, CoefficientRing, RingSpec, DEFAULT_HEIGHT_BOUND};
use crate::decide::{
    brute_clean, brute_star_clean, cross_validate, decide, element_star_clean, exists_n_dividing, involution_for,
    Agreement, BruteConfig, BruteMode, BruteResult, Carrier, Certificate, DecideOptions, InvolutionKind, Reason, Status,
    Verdict,
};
use crate::error::{Error, Result};
use crate::groupring::{central_idempotents, GroupRingElement, ProjectionEnumerator, UnitEnumerator};
use crate::groups::{InvolutionMap, SLCStructure, DEFAULT_MAX_ORDER};
use crate::numtheory::{is_prime, primes_below};
use crate::witness::{
    check_witness, generate_witness, lift_c2, C2Extension, CheckMode, StarCleanDecomposition, WitnessOutcome,
    DEFAULT_CONDITION2_BUDGET,
};

#[derive(Debug, Parser)]
#[command(name = "starclean", version, about = "Decide and verify *-cleanness of group rings RG")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvolutionArg {
    Canonical,
    Classical,
}

impl From<InvolutionArg> for InvolutionKind {
    fn from(a: InvolutionArg) -> Self {
        match a {
            InvolutionArg::Canonical => InvolutionKind::Canonical,
            InvolutionArg::Classical => InvolutionKind::Classical,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Target {
    /// Group, e.g. `Q8xC7`, `D1[k=1]xC3`, `C2xC4`
    #[arg(long)]
    pub group: String,
    /// Coefficient ring: `Z/n`, `Fp`, `Fp^k`, `Q`, `Q(zetad)`
    #[arg(long)]
    pub ring: String,
    #[arg(long, value_enum, default_value = "canonical")]
    pub involution: InvolutionArg,
    /// Largest group order to construct
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    #[arg(long)]
    pub json: bool,
    /// Include wall-clock timings in the report
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide *-cleanness from the structure of G and the arithmetic of R
    Decide {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
        /// Enumeration budget for witness verification
        #[arg(long, default_value_t = DEFAULT_CONDITION2_BUDGET)]
        budget: u64,
        /// Show canonical forms of the elements behind a witness
        #[arg(long)]
        explain: bool,
    },
    /// Search RG for an element that is not a unit plus a projection
    Brute {
        #[command(flatten)]
        target: Target,
        /// Largest ring enumerated in full; larger rings are sampled
        #[arg(long, default_value_t = BruteConfig::default().full_limit)]
        budget: u64,
        #[arg(long, default_value_t = BruteConfig::default().sample_size)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check cleanness (unit plus idempotent) instead
        #[arg(long)]
        clean: bool,
    },
    /// Build and check a witness of non-*-cleanness
    Witness {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
        #[arg(long, default_value_t = DEFAULT_CONDITION2_BUDGET)]
        budget: u64,
        #[arg(long)]
        explain: bool,
    },
    /// Lift *-clean decompositions from RH to R(H x C2)
    Lift {
        #[command(flatten)]
        target: Target,
        /// Element of RH as JSON, e.g. '{"1": "2"}'; random decompositions otherwise
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 10)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
    },
    /// Projections of (RG)f and canonical forms of elements
    Canonical {
        #[command(flatten)]
        target: Target,
        /// Element of RG as JSON; its (1-s)/2 component is decomposed
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
    },
    /// Run the decision procedure and brute force and compare them
    Crossval {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
        #[arg(long, default_value_t = BruteConfig::default().full_limit)]
        budget: u64,
        #[arg(long, default_value_t = BruteConfig::default().sample_size)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Level of Q(zeta_p) and the least n with p | 2^n + 1
    Levels {
        #[arg(long)]
        prime: Option<u64>,
        /// Tabulate all odd primes below this bound
        #[arg(long)]
        below: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

/// Exit code for an error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidParameter(_)
        | Error::InvalidRing(_)
        | Error::Hypothesis(_)
        | Error::CharDivides { .. }
        | Error::NotInFComponent
        | Error::MismatchedCarriers(_)
        | Error::InvalidDecomposition(_)
        | Error::NotAUnit => 3,
        Error::Capacity { .. } | Error::Budget { .. } => 4,
        Error::Discrepancy(_) => 5,
        Error::Inconclusive(_) => 6,
    }
}

pub fn status_code(status: Status) -> i32 {
    match status {
        Status::StarClean => 0,
        Status::NotStarClean => 1,
        Status::Unknown => 2,
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match run(&cli) {
            Ok(outcome) => outcome,
            Err(e) => Outcome { code: error_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
        },
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::out(0, text),
                _ => Outcome { code: 3, stdout: String::new(), stderr: text },
            }
        }
    }
}

struct Loaded {
    carrier: Carrier,
    ring: Arc<CoefficientRing>,
    sigma: InvolutionMap,
}

fn load(target: &Target) -> Result<Loaded> {
    let carrier = parse_group_spec(&target.group)?.build(target.max_order)?;
    let ring = Arc::new(make_ring(&RingSpec::parse(&target.ring)?)?);
    let sigma = involution_for(&carrier, target.involution.into())?;
    Ok(Loaded { carrier, ring, sigma })
}

fn require_slc(carrier: &Carrier) -> Result<&SLCStructure> {
    carrier.slc().ok_or_else(|| Error::InvalidParameter("this command needs an SLC-group".into()))
}

fn base_report(command: &str, target: &Target, loaded: &Loaded) -> Report {
    Report::new(command, &target.group, loaded.carrier.group().order(), &loaded.ring.to_string(), InvolutionKind::from(target.involution))
}

fn finish(mut report: Report, target: &Target, started: Instant) -> Outcome {
    if target.timings {
        report.timings = Some(json!({ "total_ms": started.elapsed().as_millis() as u64 }));
    }
    let stdout = if target.json { report.to_json_string() } else { report.to_text() };
    Outcome::out(report.code, stdout)
}

fn explain_witness(slc: &SLCStructure, problem: &GroupRingElement) -> Result<Value> {
    let form = decompose_f(slc, problem)?;
    Ok(json!({ "problem_element": problem.to_json(), "canonical_form": form.to_json() }))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let started = Instant::now();
    match &cli.command {
        Command::Decide { target, height_bound, budget, explain } => {
            let loaded = load(target)?;
            let opts = DecideOptions { height_bound: *height_bound, condition2_budget: *budget };
            let verdict = decide(&loaded.carrier, &loaded.ring, &loaded.sigma, &opts)?;
            let mut report = base_report("decide", target, &loaded).with_verdict(&verdict);
            if *explain {
                if let (Some(slc), Status::NotStarClean) = (loaded.carrier.slc(), verdict.status) {
                    if let WitnessOutcome::Found(w) = generate_witness(slc, &loaded.ring, *height_bound) {
                        report.extra.insert("explain".into(), explain_witness(slc, &w.problem_element(slc))?);
                    }
                }
            }
            Ok(finish(report, target, started))
        }
        Command::Brute { target, budget, samples, seed, clean } => {
            let loaded = load(target)?;
            let config = BruteConfig { full_limit: *budget, sample_size: *samples, seed: *seed };
            let result = if *clean {
                let split = loaded.carrier.slc().map(|s| central_idempotents(s, &loaded.ring));
                brute_clean(loaded.carrier.group(), &loaded.ring, &config, split.as_ref())?
            } else {
                brute_star_clean(&loaded.sigma, &loaded.ring, &config)?
            };
            let mut report = base_report("brute", target, &loaded);
            report.status = Some(brute_status(&result));
            report.code = brute_code(&result);
            report.extra.insert("property".into(), json!(if *clean { "clean" } else { "star-clean" }));
            report.extra.insert("search".into(), result.to_json());
            if let Some(c) = &result.counterexample {
                report.certificates.push(Certificate::new("counterexample", json!({ "element": c.to_json() })));
            }
            Ok(finish(report, target, started))
        }
        Command::Witness { target, height_bound, budget, explain } => {
            let loaded = load(target)?;
            let slc = require_slc(&loaded.carrier)?;
            let mut report = base_report("witness", target, &loaded);
            match generate_witness(slc, &loaded.ring, *height_bound) {
                WitnessOutcome::Found(w) => {
                    let check = check_witness(slc, &w, CheckMode::Auto, *budget)?;
                    report.status = Some(if check.is_valid() { Status::NotStarClean } else { Status::Unknown });
                    report.code = if check.is_valid() { 1 } else { 2 };
                    report.reasons.push(Reason::new(w.case.to_string(), w.case.citation(), json!({ "case": w.case.tag() })));
                    report.certificates.push(Certificate::new(
                        "witness",
                        json!({ "witness": w.to_json(), "check": check.to_json() }),
                    ));
                    if *explain {
                        report.extra.insert("explain".into(), explain_witness(slc, &w.problem_element(slc))?);
                    }
                }
                WitnessOutcome::NotFound => {
                    report.status = Some(Status::Unknown);
                    report.code = 2;
                    report.extra.insert("witness".into(), json!("none: the necessary conditions hold"));
                }
                WitnessOutcome::Undetermined(why) => {
                    report.status = Some(Status::Unknown);
                    report.code = 2;
                    report.extra.insert("witness".into(), json!(format!("undetermined: {why}")));
                }
            }
            Ok(finish(report, target, started))
        }
        Command::Lift { target, element, samples, seed, budget } => run_lift(target, element.as_deref(), *samples, *seed, *budget, started),
        Command::Canonical { target, element, budget } => {
            let loaded = load(target)?;
            let slc = require_slc(&loaded.carrier)?;
            let mut report = base_report("canonical", target, &loaded);
            let data = f_projection_data(slc, &loaded.ring, *budget)?;
            let projections: Vec<Value> = data
                .iter()
                .map(|d| json!({ "d": d.d.to_json(), "projection": d.projection(slc).to_json() }))
                .collect();
            report.extra.insert("f_projections".into(), json!({ "count": projections.len(), "items": projections }));
            if let Some(text) = element {
                let value: Value = serde_json::from_str(text)
                    .map_err(|e| Error::Parse { pos: e.column().saturating_sub(1), msg: e.to_string() })?;
                let alpha = GroupRingElement::from_json(slc.group(), &loaded.ring, &value)?;
                let pair = central_idempotents(slc, &loaded.ring);
                let component = alpha.mul(&pair.f)?;
                let form = decompose_f(slc, &component)?;
                let starred = involution_formula(&form);
                report.extra.insert(
                    "element".into(),
                    json!({
                        "f_component": component.to_json(),
                        "canonical_form": form.to_json(),
                        "involution": starred.to_json(),
                        "symmetric": is_symmetric_f(&form),
                    }),
                );
            }
            report.code = 0;
            Ok(finish(report, target, started))
        }
        Command::Crossval { target, height_bound, budget, samples, seed } => {
            let loaded = load(target)?;
            let opts = DecideOptions { height_bound: *height_bound, condition2_budget: DEFAULT_CONDITION2_BUDGET };
            let config = BruteConfig { full_limit: *budget, sample_size: *samples, seed: *seed };
            let cv = cross_validate(&loaded.carrier, &loaded.ring, &loaded.sigma, &opts, &config)?;
            let status = match (&cv.theory, cv.agreement) {
                (Some(v), Agreement::Agree) => v.status,
                _ => brute_status(&cv.star_clean),
            };
            let mut report = match &cv.theory {
                Some(v) => base_report("crossval", target, &loaded).with_verdict(v),
                None => base_report("crossval", target, &loaded),
            };
            report.status = Some(status);
            report.code = status_code(status);
            report.extra.insert("crossval".into(), cv.to_json());
            report.extra.insert("clean".into(), json!(cv.clean.holds));
            report.extra.insert("star_clean".into(), json!(cv.star_clean.holds));
            if let Some(c) = &cv.star_clean.counterexample {
                report.certificates.push(Certificate::new("counterexample", json!({ "element": c.to_json() })));
            }
            Ok(finish(report, target, started))
        }
        Command::Levels { prime, below, json } => run_levels(*prime, *below, *json),
    }
}

fn brute_status(r: &BruteResult) -> Status {
    match (r.holds, r.mode) {
        (false, _) => Status::NotStarClean,
        (true, BruteMode::Full) => Status::StarClean,
        (true, BruteMode::Sampled) => Status::Unknown,
    }
}

fn brute_code(r: &BruteResult) -> i32 {
    status_code(brute_status(r))
}

fn random_pick<T: Clone>(items: &[T], rng: &mut ChaCha8Rng) -> T {
    items[rng.gen_range(0..items.len())].clone()
}

fn run_lift(target: &Target, element: Option<&str>, samples: u64, seed: u64, budget: u64, started: Instant) -> Result<Outcome> {
    let loaded = load(target)?;
    let ext = C2Extension::new(&loaded.sigma)?;
    let h = loaded.carrier.group();
    let mut report = base_report("lift", target, &loaded);
    let mut lifted = Vec::new();
    match element {
        Some(text) => {
            let value: Value = serde_json::from_str(text)
                .map_err(|e| Error::Parse { pos: e.column().saturating_sub(1), msg: e.to_string() })?;
            let alpha = GroupRingElement::from_json(h, &loaded.ring, &value)?;
            let Some(dec) = element_star_clean(&alpha, &loaded.sigma, budget)? else {
                report.status = Some(Status::NotStarClean);
                report.code = 1;
                report.extra.insert("element".into(), json!({ "value": alpha.to_json(), "star_clean": false }));
                return Ok(finish(report, target, started));
            };
            let up = lift_c2(&ext, &loaded.sigma, &dec, None)?;
            lifted.push(json!({ "input": dec.to_json(), "lifted": up.to_json() }));
        }
        None => {
            let units: Vec<_> = UnitEnumerator::new(h, &loaded.ring, budget)?.collect();
            let projections: Vec<_> = ProjectionEnumerator::new(&loaded.sigma, &loaded.ring, budget)?.collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let dec = StarCleanDecomposition { unit: random_pick(&units, &mut rng), projection: random_pick(&projections, &mut rng) };
                let plus = StarCleanDecomposition { unit: random_pick(&units, &mut rng), projection: random_pick(&projections, &mut rng) };
                let up = lift_c2(&ext, &loaded.sigma, &dec, Some(&plus))?;
                lifted.push(json!({ "input": dec.to_json(), "plus_side": plus.to_json(), "lifted": up.to_json() }));
            }
        }
    }
    report.status = Some(Status::StarClean);
    report.code = 0;
    report.extra.insert("extension_order".into(), json!(ext.group().order()));
    report.extra.insert("lifted".into(), json!({ "count": lifted.len(), "all_valid": true, "items": lifted }));
    Ok(finish(report, target, started))
}

fn level_row(p: u64) -> Result<Value> {
    let level = level_classify_prime(p)?;
    Ok(json!({ "p": p, "p_mod_8": p % 8, "level": format!("{level:?}"), "n": exists_n_dividing(p) }))
}

fn run_levels(prime: Option<u64>, below: Option<u64>, as_json: bool) -> Result<Outcome> {
    let rows: Vec<Value> = match (prime, below) {
        (Some(p), None) => {
            if p == 2 || !is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
            }
            vec![level_row(p)?]
        }
        (None, Some(b)) => primes_below(usize::try_from(b).map_err(|_| Error::InvalidParameter("bound too large".into()))?)
            .into_iter()
            .filter(|&p| p != 2)
            .map(level_row).collect::<Result<_>>()?,
        _ => return Err(Error::InvalidParameter("give exactly one of --prime and --below".into())),
    };
    let stdout = if as_json {
        let value = if rows.len() == 1 && prime.is_some() { rows[0].clone() } else { json!(rows) };
        serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n"
    } else {
        let mut out = String::new();
        for r in &rows {
            let n = match &r["n"] {
                Value::Null => "none".to_string(),
                v => v.to_string(),
            };
            if prime.is_some() {
                out.push_str(&format!("{}\n", r["level"].as_str().unwrap_or_default()));
                out.push_str(&format!("p = {}, p mod 8 = {}, least n with p | 2^n + 1: {n}\n", r["p"], r["p_mod_8"]));
            } else {
                out.push_str(&format!("{:>6} {:>2} {:<10} {n}\n", r["p"], r["p_mod_8"], r["level"].as_str().unwrap_or_default()));
            }
        }
        out
    };
    Ok(Outcome::out(0, stdout))
}

impl Report {
    fn with_verdict(mut self, v: &Verdict) -> Self {
        self.status = Some(v.status);
        self.code = status_code(v.status);
        self.reasons = v.reasons.clone();
        self.certificates = v.certificates.clone();
        self
    }
}
