use std::path::Path;

use serde_json::{json, Map, Value};

use sepforge_core::algebra::{Algebra, AlgebraElement, AlgebraKind, Derivation};
use sepforge_core::oracles::{
    check_trace_coverage, differential_monomial_ideals, exact_quotient, jacobson_family, prime_field_witness,
    verify_separation, witness_by_deepening, IdealDescriptor, OracleError, TruncatedIdeal,
};
use sepforge_core::separator::{
    chain, diff_separate, diff_stabilize, mod_separate, SeparationResult, SeparatorError, Subspace,
};

use crate::config::{AlgebraDescriptor, Command, ConfigError, RunConfig};

pub const REPORT_SCHEMA: &str = "sepforge.report/v1";

pub mod exit {
    pub const PASS: u8 = 0;
    pub const VIOLATION: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const NO_SPLITTING: u8 = 3;
    pub const BUDGET_EXHAUSTED: u8 = 4;
    pub const NOT_FOUND: u8 = 5;
    pub const CHAIN_FAILED: u8 = 6;
}

/// A finished run. `report` is absent only for configuration errors.
pub struct Outcome {
    pub code: u8,
    pub report: Option<Value>,
    pub diagnostic: Option<String>,
}

impl From<ConfigError> for Outcome {
    fn from(e: ConfigError) -> Self {
        Outcome { code: exit::CONFIG, report: None, diagnostic: Some(format!("config error: {e}")) }
    }
}

struct Report {
    fields: Map<String, Value>,
}

impl Report {
    fn new(command: Command, descriptor: &AlgebraDescriptor, algebra: &Algebra) -> Self {
        let mut fields = Map::new();
        fields.insert("schema".into(), json!(REPORT_SCHEMA));
        fields.insert("command".into(), json!(command.name()));
        fields.insert("algebra".into(), json!(descriptor));
        fields.insert("presentation".into(), json!(algebra.to_string()));
        Report { fields }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    fn finish(mut self, code: u8, status: &str) -> Outcome {
        self.set("status", json!(status));
        self.set("exit_code", json!(code));
        Outcome { code, report: Some(Value::Object(self.fields)), diagnostic: None }
    }
}

fn parse_elements(algebra: &Algebra, literals: &[String]) -> Result<Vec<AlgebraElement>, ConfigError> {
    literals
        .iter()
        .map(|s| algebra.parse(s).map_err(|e| ConfigError(format!("cannot parse {s:?}: {e}"))))
        .collect()
}

fn parse_subspace(algebra: &Algebra, literals: &[String]) -> Result<Subspace, ConfigError> {
    let space = Subspace::from_elements(algebra, &parse_elements(algebra, literals)?)?;
    if space.is_zero() {
        return Err(ConfigError("the subspace is zero".into()));
    }
    Ok(space)
}

/// Ideal checks, trace coverage and structural invariants for one result.
fn verification(
    result: &SeparationResult,
    family: Option<&[IdealDescriptor]>,
    space: &Subspace,
    notes: Vec<String>,
) -> Result<(Value, bool), OracleError> {
    let structural = result.structural_violations();
    let mut passed = structural.is_empty();
    let mut out = json!({ "structural_violations": structural, "notes": notes });
    match family {
        Some(family) => {
            let report = verify_separation(result, family, space)?;
            let coverage = check_trace_coverage(&result.trace, family)?;
            passed &= report.passed() && coverage.is_empty();
            out["family_size"] = json!(family.len());
            out["ideals_meeting"] = json!(report.ideals_meeting());
            out["violations"] = json!(report.violations);
            out["coverage_violations"] = json!(coverage);
            out["checks"] = json!(report.checks);
            out["ideal_checks"] = json!("performed");
        }
        None => out["ideal_checks"] = json!("not performed"),
    }
    out["passed"] = json!(passed);
    Ok((out, passed))
}

fn oracle_error(e: OracleError) -> Outcome {
    ConfigError(format!("oracle: {e}")).into()
}

pub fn separate_diff(config: &RunConfig) -> Outcome {
    match run_separate_diff(config) {
        Ok(outcome) | Err(outcome) => outcome,
    }
}

fn run_separate_diff(config: &RunConfig) -> Result<Outcome, Outcome> {
    let descriptor = config.descriptor()?;
    let algebra = descriptor.build()?;
    if !matches!(algebra.kind(), AlgebraKind::CommPoly { .. }) {
        return Err(ConfigError("separate-diff needs a commutative polynomial ring".into()).into());
    }
    let images = config.derivations.as_deref().unwrap_or_default();
    if images.is_empty() {
        return Err(ConfigError("at least one derivation is required".into()).into());
    }
    let ds: Vec<Derivation> =
        images.iter().map(|im| Derivation::parse(&algebra, im)).collect::<Result<_, _>>().map_err(ConfigError::from)?;
    let mut report = Report::new(Command::SeparateDiff, &descriptor, &algebra);
    report.set("derivations", json!(ds.iter().map(ToString::to_string).collect::<Vec<_>>()));
    let oracle_bound = config.oracle.as_ref().and_then(|o| o.monomial_degree_bound);

    let family_for = |degree: u32| -> Result<(Vec<IdealDescriptor>, Vec<String>), OracleError> {
        let bound = oracle_bound.unwrap_or(degree.max(1));
        let (kept, dropped) = differential_monomial_ideals(&algebra, &ds, bound)?;
        let mut notes = vec![format!("monomial ideals with generators of degree <= {bound}")];
        if dropped > 0 {
            notes.push(format!("excluded {dropped} monomial ideals not closed under the derivations"));
        }
        Ok((kept.into_iter().map(IdealDescriptor::Monomial).collect(), notes))
    };

    let no_split = |report: Report, e: SeparatorError| -> Outcome {
        let mut report = report;
        report.set("error", json!(e.to_string()));
        if let SeparatorError::NoSplittingFound { subspace, scanned } = &e {
            report.set("stuck_subspace", json!(subspace));
            report.set("candidates_scanned", json!(scanned));
        }
        report.finish(exit::NO_SPLITTING, "no_splitting_found")
    };

    if let Some(literals) = &config.subspace {
        let space = parse_subspace(&algebra, literals)?;
        report.set("subspace", json!(space));
        let result = match diff_separate(&ds, &space) {
            Ok(r) => r,
            Err(e @ SeparatorError::NoSplittingFound { .. }) => return Ok(no_split(report, e)),
            Err(e) => return Err(ConfigError(e.to_string()).into()),
        };
        let (family, notes) = family_for(space.degree().unwrap_or(0)).map_err(oracle_error)?;
        let (check, passed) = verification(&result, Some(&family), &space, notes).map_err(oracle_error)?;
        report.set("elements", json!(result.elements));
        report.set("result", json!(result));
        report.set("verification", check);
        return Ok(finish_verdict(report, passed));
    }

    let d_max = config.d_max.expect("validated");
    let steps = match diff_stabilize(&algebra, &ds, d_max) {
        Ok(s) => s,
        Err(e @ SeparatorError::NoSplittingFound { .. }) => return Ok(no_split(report, e)),
        Err(e) => return Err(ConfigError(e.to_string()).into()),
    };
    let mut all_passed = true;
    let mut step_reports = Vec::new();
    for step in &steps {
        let space = &step.result.trace.subspace;
        let (family, notes) = family_for(step.degree).map_err(oracle_error)?;
        let (check, passed) = verification(&step.result, Some(&family), space, notes).map_err(oracle_error)?;
        all_passed &= passed;
        step_reports.push(json!({
            "degree": step.degree,
            "element": step.element(),
            "result": step.result,
            "verification": check,
        }));
    }
    report.set("d_max", json!(d_max));
    report.set("elements", json!(steps.iter().map(|s| s.element()).collect::<Vec<_>>()));
    report.set("steps", Value::Array(step_reports));
    Ok(finish_verdict(report, all_passed))
}

fn finish_verdict(report: Report, passed: bool) -> Outcome {
    if passed {
        report.finish(exit::PASS, "pass")
    } else {
        report.finish(exit::VIOLATION, "violation")
    }
}

pub fn separate_mod(config: &RunConfig) -> Outcome {
    match run_separate_mod(config) {
        Ok(outcome) | Err(outcome) => outcome,
    }
}

fn run_separate_mod(config: &RunConfig) -> Result<Outcome, Outcome> {
    let descriptor = config.descriptor()?;
    let algebra = descriptor.build()?;
    if algebra.is_commutative() {
        return Err(ConfigError("separate-mod needs a noncommutative algebra".into()).into());
    }
    let space = parse_subspace(&algebra, config.subspace.as_deref().unwrap_or_default())?;
    let budget = config.budget.expect("validated");
    let mut report = Report::new(Command::SeparateMod, &descriptor, &algebra);
    report.set("subspace", json!(space));
    report.set("budget", json!(budget));
    let result = match mod_separate(&space, budget) {
        Ok(r) => r,
        Err(SeparatorError::SearchBudgetExhausted { subspace, scanned }) => {
            report.set("error", json!(format!("none of the first {scanned} basis words splits {subspace}")));
            report.set("stuck_subspace", json!(subspace));
            report.set("candidates_scanned", json!(scanned));
            return Ok(report.finish(exit::BUDGET_EXHAUSTED, "search_budget_exhausted"));
        }
        Err(e) => return Err(ConfigError(e.to_string()).into()),
    };
    let oracle = config.oracle.clone().unwrap_or_default();
    let (family, notes): (Option<Vec<IdealDescriptor>>, Vec<String>) = match algebra.kind() {
        AlgebraKind::Jacobson => {
            let coeffs = oracle.laurent_coefficients.unwrap_or_else(|| vec![-1, 0, 1]);
            let width = oracle.laurent_width.unwrap_or(3);
            let note = format!("Socle and Laurent preimages, coefficients {coeffs:?}, width <= {width}");
            (Some(jacobson_family(algebra.spec(), &coeffs, width)), vec![note])
        }
        AlgebraKind::Matrix { .. } => (
            Some(vec![IdealDescriptor::Zero, IdealDescriptor::Whole]),
            vec!["matrix algebras are simple: the ideals are (0) and (1)".into()],
        ),
        AlgebraKind::Weyl => {
            (None, vec!["the Weyl algebra is simple; ideal family trivial, only trace invariants checked".into()])
        }
        _ => (None, vec!["no ideal oracle for this algebra; only trace invariants checked".into()]),
    };
    let (check, passed) = verification(&result, family.as_deref(), &space, notes).map_err(oracle_error)?;
    report.set("elements", json!(result.elements));
    report.set("result", json!(result));
    report.set("verification", check);
    if passed && family.is_none() {
        return Ok(report.finish(exit::PASS, "structural_pass"));
    }
    Ok(finish_verdict(report, passed))
}

pub fn witness(config: &RunConfig) -> Outcome {
    match run_witness(config) {
        Ok(outcome) | Err(outcome) => outcome,
    }
}

fn run_witness(config: &RunConfig) -> Result<Outcome, Outcome> {
    let descriptor = config.descriptor()?;
    let algebra = descriptor.build()?;
    let gens = parse_elements(&algebra, config.ideal_generators.as_deref().unwrap_or_default())?;
    let mut report = Report::new(Command::Witness, &descriptor, &algebra);
    report.set("ideal_generators", json!(gens));
    let (found, tried, max) = match (config.bound, config.max_bound) {
        (Some(bound), _) => {
            let w = prime_field_witness(&algebra, &gens, bound).map_err(oracle_error)?;
            (w.map(|w| (bound, w)), vec![bound], bound)
        }
        (None, Some(max)) => {
            let search = witness_by_deepening(&algebra, &gens, max).map_err(oracle_error)?;
            (search.found, search.bounds_tried, max)
        }
        (None, None) => unreachable!("validated"),
    };
    report.set("bounds_tried", json!(tried));
    let Some((bound, w)) = found else {
        report.set("message", json!(format!("not found up to bound {max}")));
        return Ok(report.finish(exit::NOT_FOUND, "not_found"));
    };
    let truncated = TruncatedIdeal::new(&algebra, &gens, bound).map_err(oracle_error)?;
    let confirmed = truncated.contains(&w).map_err(oracle_error)? && w.has_prime_field_coefficients() && !w.is_zero();
    report.set("witness", json!(w));
    report.set("bound", json!(bound));
    report.set("confirmed", json!(confirmed));
    Ok(if confirmed { report.finish(exit::PASS, "found") } else { report.finish(exit::VIOLATION, "violation") })
}

pub fn chain_command(config: &RunConfig, config_dir: &Path) -> Outcome {
    match run_chain(config, config_dir) {
        Ok(outcome) | Err(outcome) => outcome,
    }
}

fn run_chain(config: &RunConfig, config_dir: &Path) -> Result<Outcome, Outcome> {
    let path = config_dir.join(config.input_report.as_deref().expect("validated"));
    let text = std::fs::read_to_string(&path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    let input: Value = serde_json::from_str(&text).map_err(ConfigError::from)?;
    let schema_error = |what: &str| -> Outcome { ConfigError(format!("input report: {what}")).into() };
    if input["schema"] != json!(REPORT_SCHEMA) {
        return Err(schema_error("wrong or missing schema"));
    }
    let descriptor: AlgebraDescriptor =
        serde_json::from_value(input["algebra"].clone()).map_err(|e| schema_error(&format!("algebra: {e}")))?;
    let algebra = descriptor.build()?;
    let strings = |key: &str| -> Result<Option<Vec<String>>, Outcome> {
        match &input[key] {
            Value::Null => Ok(None),
            v => serde_json::from_value(v.clone()).map(Some).map_err(|e| schema_error(&format!("{key}: {e}"))),
        }
    };
    let elements = parse_elements(&algebra, &strings("elements")?.ok_or_else(|| schema_error("missing elements"))?)?;
    if elements.is_empty() {
        return Err(schema_error("no elements"));
    }
    let b = chain(&elements).map_err(|e| ConfigError(e.to_string()))?;
    let divides_next = |list: &[AlgebraElement]| -> Result<Vec<bool>, Outcome> {
        list.windows(2)
            .map(|w| exact_quotient(&w[1], &w[0]).map(|q| q.is_some()).map_err(oracle_error))
            .collect()
    };
    let mut report = Report::new(Command::Chain, &descriptor, &algebra);
    report.set("input_report", json!(config.input_report));
    report.set("elements", json!(elements));
    report.set("chain", json!(b));
    let flags = divides_next(&b)?;
    let mut ok = flags.iter().all(|&f| f);
    report.set("divides_next", json!(flags));
    if let Some(claimed) = strings("chain")? {
        let claimed = parse_elements(&algebra, &claimed)?;
        let claimed_flags = divides_next(&claimed)?;
        let matches = claimed == b;
        ok &= matches && claimed_flags.iter().all(|&f| f);
        report.set("input_chain_matches", json!(matches));
        report.set("input_chain_divides_next", json!(claimed_flags));
    }
    Ok(if ok { report.finish(exit::PASS, "pass") } else { report.finish(exit::CHAIN_FAILED, "chain_verification_failed") })
}
