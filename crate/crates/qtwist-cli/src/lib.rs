//! Batch front end: parses a JSON input file, runs one verification job and
//! produces a deterministic JSON report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use qtwist_core::cartan::{symmetrize, validate_cartan};
use qtwist_core::cocycles::GroupCocycleTable;
use qtwist_core::datum::{build_dj_datum, validate_reduced_datum, QMatrix, ReducedDatum};
use qtwist_core::exactnum::{RadicalTable, Rational};
use qtwist_core::ideals::Presentation;
use qtwist_core::qgroups::{
    build_hpr, build_ured, default_bound, quotient_dj, serre_expand, twist_to_dj, verify_halfroot, verify_isomorphism,
    QuotientConvention, SerreKind,
};
use qtwist_core::racks::{
    compose_with_group_twist, fk_relations, nichols_hilbert, parse_group_table, transposition_rack, twist_rack_cocycle,
    validate_rack, validate_rack_cocycle, verify_exp_deformation, TranspositionCocycle,
};
use qtwist_core::smash::{braided_adjoint, render, SmashElement};
use qtwist_core::yd::symmetric_group;
use qtwist_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("missing or invalid field {0:?}")]
    Schema(String),
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Present,
    Serre,
    TwistToDj,
    VerifyIso,
    QuotientDj,
    HalfrootCocycle,
    RackCheck,
    NicholsHilbert,
    HqDeform,
    ComposeTwist,
}

impl std::str::FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "validate" => Command::Validate,
            "present" => Command::Present,
            "serre" => Command::Serre,
            "twist-to-dj" => Command::TwistToDj,
            "verify-iso" => Command::VerifyIso,
            "quotient-dj" => Command::QuotientDj,
            "halfroot-cocycle" => Command::HalfrootCocycle,
            "rack-check" => Command::RackCheck,
            "nichols-hilbert" => Command::NicholsHilbert,
            "hq-deform" => Command::HqDeform,
            "compose-twist" => Command::ComposeTwist,
            other => return Err(CliError::UnknownCommand(other.into())),
        })
    }
}

impl Command {
    fn theorem(self) -> &'static str {
        match self {
            Command::Validate => "reduced YD-datum of Cartan type",
            Command::Present => "presentations of U~(D_red, l) and U_q(g_A)",
            Command::Serre => "quantum Serre elements as iterated braided adjoints",
            Command::TwistToDj => "cocycle deformation of pre-Nichols bosonizations to DJ type",
            Command::VerifyIso => "U_q(g_A) isomorphic to U~(D_q, l)",
            Command::QuotientDj => "one-parameter quotient of U~(D_q, l)",
            Command::HalfrootCocycle => "half-root cocycle relating U_{q,q^-1} and U_q",
            Command::RackCheck => "rack and rack 2-cocycle validation",
            Command::NicholsHilbert => "Hilbert series of B(O_2^n, q)",
            Command::HqDeform => "exp(eta) deformation of B(O_2^n, -1) # kS_n",
            Command::ComposeTwist => "composite deformation of B(O_2^n, chi) # kS_n",
        }
    }
}

/// Rack given by its elements and a 1-based operation table.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RackInput {
    pub elements: Vec<String>,
    pub op: Vec<Vec<usize>>,
    #[serde(default)]
    pub q: Option<Vec<Vec<Rational>>>,
}

/// Group 2-cocycle as `{"group": "S4", "values": {"g,h": "-1"}}`; omitted pairs are 1.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiInput {
    pub group: String,
    pub values: BTreeMap<String, String>,
}

/// Flat input schema shared by all commands. Each command reads the fields it needs.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    pub cartan: Option<Vec<Vec<i64>>>,
    pub q: Option<Vec<Vec<Rational>>>,
    pub linking: Option<Vec<Rational>>,
    pub q_components: Option<Vec<Rational>>,
    pub r5_constant: Option<Rational>,
    pub radicals: Option<BTreeMap<String, Rational>>,
    pub radius: Option<i32>,
    pub convention: Option<String>,
    pub kind: Option<String>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub n: Option<usize>,
    pub power: Option<u32>,
    pub cocycle: Option<String>,
    pub rack: Option<RackInput>,
    pub twist: Option<Vec<Vec<Rational>>>,
    pub phi: Option<PhiInput>,
    pub lambda: Option<Rational>,
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub input: Input,
    pub max_degree: Option<usize>,
    pub input_hash: String,
}

pub fn parse_input(command: &str, text: &str, max_degree: Option<usize>) -> Result<Job, CliError> {
    let command: Command = command.parse()?;
    let input: Input =
        serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), reason: e.to_string() })?;
    let input_hash = format!("{:x}", Sha256::digest(text.as_bytes()));
    let max_degree = max_degree.or(input.max_degree);
    let job = Job { command, input, max_degree, input_hash };
    job.check_schema()?;
    Ok(job)
}

fn need<'a, T>(v: &'a Option<T>, field: &str) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| CliError::Schema(field.into()))
}

impl Job {
    fn check_schema(&self) -> Result<(), CliError> {
        let inp = &self.input;
        let datum = || -> Result<(), CliError> {
            need(&inp.cartan, "cartan")?;
            need(&inp.q, "q").map(|_| ())
        };
        match self.command {
            Command::Validate | Command::Present | Command::VerifyIso | Command::QuotientDj => datum(),
            Command::Serre => {
                datum()?;
                need(&inp.kind, "kind")?;
                need(&inp.i, "i")?;
                need(&inp.j, "j").map(|_| ())
            }
            Command::TwistToDj => {
                datum()?;
                need(&inp.q_components, "q_components").map(|_| ())
            }
            Command::HalfrootCocycle => {
                datum()?;
                need(&inp.radicals, "radicals").map(|_| ())
            }
            Command::RackCheck => {
                if inp.rack.is_none() && inp.n.is_none() {
                    return Err(CliError::Schema("rack".into()));
                }
                Ok(())
            }
            Command::NicholsHilbert => {
                need(&inp.n, "n")?;
                need(&inp.cocycle, "cocycle").map(|_| ())
            }
            Command::HqDeform => need(&inp.lambda, "lambda").map(|_| ()),
            Command::ComposeTwist => {
                need(&inp.phi, "phi")?;
                need(&inp.lambda, "lambda").map(|_| ())
            }
        }
    }

    fn datum(&self) -> Result<ReducedDatum, CliError> {
        let inp = &self.input;
        let cartan = validate_cartan(need(&inp.cartan, "cartan")?.clone())?;
        let q = QMatrix::new(need(&inp.q, "q")?.clone())?;
        Ok(validate_reduced_datum(cartan, q, inp.linking.clone())?)
    }

    fn cocycle_kind(&self) -> Result<TranspositionCocycle, CliError> {
        match self.input.cocycle.as_deref() {
            Some("minus_one") | Some("-1") => Ok(TranspositionCocycle::MinusOne),
            Some("chi") => Ok(TranspositionCocycle::Chi),
            _ => Err(CliError::Schema("cocycle".into())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn check(name: impl Into<String>, pass: bool) -> Check {
    Check { name: name.into(), pass, detail: None }
}

fn check_with(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: Some(detail.into()) }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Command,
    pub theorem: &'static str,
    pub datum_hash: String,
    pub bounds: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
    pub wall_time_ms: u128,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match (&self.error, self.pass) {
            (Some(_), _) => 2,
            (None, true) => 0,
            (None, false) => 1,
        }
    }

    /// The report with the timing field zeroed, for byte comparisons.
    pub fn without_timing(&self) -> Report {
        Report { wall_time_ms: 0, ..self.clone() }
    }
}

/// Report for an input that never reached a job.
pub fn error_report(command: &str, err: &CliError) -> Value {
    json!({ "command": command, "error": err.to_string(), "pass": false })
}

struct Outcome {
    bounds: BTreeMap<String, Value>,
    checks: Vec<Check>,
    result: Value,
}

fn relations_json(p: &Presentation) -> Value {
    let v = p.model();
    p.labels()
        .iter()
        .zip(p.relations())
        .map(|(l, r)| json!({ "label": l, "relation": render(v, r) }))
        .collect()
}

fn radical_table(map: &BTreeMap<String, Rational>) -> Result<RadicalTable, CliError> {
    let pairs = map
        .iter()
        .map(|(k, r)| k.parse::<Rational>().map(|q| (q, r.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RadicalTable::new(pairs)?)
}

pub fn execute(job: &Job) -> Report {
    let start = Instant::now();
    let (outcome, error) = match run(job) {
        Ok(o) => (o, None),
        Err(e) => (Outcome { bounds: BTreeMap::new(), checks: vec![], result: Value::Null }, Some(e.to_string())),
    };
    let pass = error.is_none() && outcome.checks.iter().all(|c| c.pass);
    Report {
        command: job.command,
        theorem: job.command.theorem(),
        datum_hash: job.input_hash.clone(),
        bounds: outcome.bounds,
        checks: outcome.checks,
        result: outcome.result,
        error,
        pass,
        wall_time_ms: start.elapsed().as_millis(),
    }
}

fn run(job: &Job) -> Result<Outcome, CliError> {
    let inp = &job.input;
    let mut bounds = BTreeMap::new();
    let mut checks = Vec::new();
    let result = match job.command {
        Command::Validate => {
            let d = job.datum()?;
            let sym = symmetrize(d.cartan())?;
            checks.push(check("cartan", true));
            checks.push(check("datum", true));
            let positive = d.check_positive().is_ok();
            json!({
                "theta": d.theta(),
                "symmetrizer": sym.d,
                "linking": d.linking(),
                "positive": positive,
                "warnings": d.warnings(),
            })
        }
        Command::Present => {
            let d = job.datum()?;
            let ured = build_ured(&d)?;
            let (_, hpr) = build_hpr(&d, inp.r5_constant.as_ref())?;
            bounds.insert("filtration".into(), json!(ured.bound()));
            json!({
                "ured": { "letters": ured.model().names(), "relations": relations_json(&ured) },
                "hpr": { "letters": hpr.model().names(), "relations": relations_json(&hpr) },
            })
        }
        Command::Serre => {
            let d = job.datum()?;
            let t = d.theta();
            let kind = match need(&inp.kind, "kind")?.as_str() {
                "x" => SerreKind::X,
                "y" => SerreKind::Y,
                _ => return Err(CliError::Schema("kind".into())),
            };
            let (i, j) = (*need(&inp.i, "i")?, *need(&inp.j, "j")?);
            if i == 0 || j == 0 || i > t || j > t {
                return Err(CoreError::IndexError(format!("({i}, {j}) for rank {t}")).into());
            }
            let n = inp.power.unwrap_or((1 - d.cartan().get(i - 1, j - 1)).max(0) as u32);
            let z = serre_expand(kind, i - 1, j - 1, n, &d)?;
            let v = d.module();
            let off = if kind == SerreKind::X { 0 } else { t };
            let x = SmashElement::letter(&v, off + i - 1);
            let mut adj = SmashElement::letter(&v, off + j - 1);
            for _ in 0..n {
                adj = braided_adjoint(&v, &x, &adj)?;
            }
            checks.push(check("closed form equals iterated braided adjoint", adj == z));
            json!({ "power": n, "element": render(&v, &z) })
        }
        Command::TwistToDj => {
            let d = job.datum()?;
            let bound = job.max_degree.unwrap_or_else(|| default_bound(&d));
            bounds.insert("filtration".into(), json!(bound));
            let out = twist_to_dj(&d, need(&inp.q_components, "q_components")?, bound)?;
            for c in &out.report.checks {
                checks.push(check_with(format!("{}:{}", c.item, c.label), c.pass, c.detail.clone()));
            }
            json!({
                "qhat": out.dj.qhat().rows(),
                "sigma": out.sigma.describe(),
                "target": relations_json(&out.presentation),
            })
        }
        Command::VerifyIso => {
            let d = job.datum()?;
            let bound = job.max_degree.unwrap_or_else(|| default_bound(&d));
            bounds.insert("filtration".into(), json!(bound));
            let rep = verify_isomorphism(&d, bound, inp.r5_constant.as_ref())?;
            for c in &rep.checks {
                checks.push(check(format!("{}:{}", c.direction, c.relation), c.member));
            }
            json!({ "relations_checked": rep.checks.len() })
        }
        Command::QuotientDj => {
            let d = job.datum()?;
            let convention = match inp.convention.as_deref() {
                None | Some("kl_inverse") => QuotientConvention::KlInverse,
                Some("k_equals_l") => QuotientConvention::KEqualsL,
                Some(_) => return Err(CliError::Schema("convention".into())),
            };
            let p = quotient_dj(&build_ured(&d)?, convention)?;
            json!({ "convention": convention, "relations": relations_json(&p) })
        }
        Command::HalfrootCocycle => {
            let target = job.datum()?;
            let radicals = radical_table(need(&inp.radicals, "radicals")?)?;
            let base = match &inp.q_components {
                Some(qc) => build_dj_datum(&target, qc)?.datum().clone(),
                None => target.clone(),
            };
            let radius = inp.radius.unwrap_or(3);
            bounds.insert("radius".into(), json!(radius));
            let rep = verify_halfroot(&base, &target, &radicals, radius)?;
            checks.push(check_with("group values", rep.group_values, format!("{} pairs", rep.group_pairs)));
            checks.push(check("vanishing off the torus", rep.vanishing));
            for c in &rep.products {
                checks.push(check_with(format!("{}:{}", c.item, c.label), c.pass, c.detail.clone()));
            }
            json!({ "base_q": base.q().rows() })
        }
        Command::RackCheck => rack_check(job, &mut checks)?,
        Command::NicholsHilbert => {
            let n = *need(&inp.n, "n")?;
            let kind = job.cocycle_kind()?;
            let max_deg = job.max_degree.unwrap_or(4);
            bounds.insert("max_degree".into(), json!(max_deg));
            let series = nichols_hilbert(n, kind, max_deg)?;
            let mut result = json!({ "series": series, "total": series.iter().sum::<usize>() });
            if (3..=5).contains(&n) && max_deg <= 4 {
                let p = fk_relations(n, kind)?;
                let quad: Vec<usize> = (0..=max_deg.min(2))
                    .map(|d| qtwist_core::ideals::graded_dimension(&p, d))
                    .collect::<Result<_, _>>()?;
                checks.push(check("degree <= 2 agrees with the FK relations", quad[..] == series[..quad.len()]));
                result["fk_low_degrees"] = json!(quad);
            }
            result
        }
        Command::HqDeform => {
            let n = inp.n.unwrap_or(4);
            let lambda = need(&inp.lambda, "lambda")?;
            bounds.insert("filtration".into(), json!(2));
            let rep = verify_exp_deformation(n, lambda)?;
            for c in &rep.target_checks {
                checks.push(check(format!("target:{}", c.relation), c.member));
            }
            for c in &rep.identity_checks {
                checks.push(check(format!("identity:{}", c.relation), c.member));
            }
            checks.push(check("undeformed at lambda = 0", rep.undeformed));
            json!({
                "target_t": [rep.target_t.0, rep.target_t.1],
                "identity_t": [rep.identity_t.0, rep.identity_t.1],
                "scale_squared": rep.scale_squared,
            })
        }
        Command::ComposeTwist => {
            let phi_in = need(&inp.phi, "phi")?;
            let n = group_order_n(&phi_in.group)?;
            if inp.n.is_some_and(|m| m != n) {
                return Err(CliError::Schema("n".into()));
            }
            let lambda = need(&inp.lambda, "lambda")?;
            let table = GroupCocycleTable::unchecked(parse_group_table(n, &phi_in.values)?);
            table.validate(&symmetric_group(n))?;
            bounds.insert("filtration".into(), json!(2));
            let rep = compose_with_group_twist(n, &table, lambda)?;
            checks.push(check("twisted action is the sign action", rep.twisted_action_is_sign));
            checks.push(check("groupoid law on generator pairs", rep.groupoid_consistent));
            for c in &rep.minus_one_relations {
                checks.push(check(format!("fk(-1):{}", c.relation), c.member));
            }
            for c in &rep.deformation.target_checks {
                checks.push(check(format!("target:{}", c.relation), c.member));
            }
            checks.push(check("undeformed at lambda = 0", rep.deformation.undeformed));
            json!({ "target_t": [rep.deformation.target_t.0, rep.deformation.target_t.1] })
        }
    };
    Ok(Outcome { bounds, checks, result })
}

fn group_order_n(group: &str) -> Result<usize, CliError> {
    group
        .strip_prefix('S')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| CliError::Schema("phi.group".into()))
}

fn rack_check(job: &Job, checks: &mut Vec<Check>) -> Result<Value, CliError> {
    let inp = &job.input;
    let (rack, q) = match (&inp.rack, inp.n) {
        (Some(r), _) => {
            let op = r
                .op
                .iter()
                .map(|row| row.iter().map(|&x| x.checked_sub(1).ok_or_else(|| CliError::Schema("rack.op".into()))).collect())
                .collect::<Result<Vec<Vec<usize>>, _>>()?;
            (validate_rack(r.elements.clone(), op)?, r.q.clone())
        }
        (None, Some(n)) => {
            let x = transposition_rack(n)?;
            let q = match inp.cocycle {
                Some(_) => Some(x.cocycle_values(job.cocycle_kind()?)),
                None => None,
            };
            (x.rack().clone(), q)
        }
        (None, None) => return Err(CliError::Schema("rack".into())),
    };
    checks.push(check("rack", true));
    let mut result = json!({ "size": rack.len(), "elements": rack.elements() });
    if let Some(q) = q {
        let q = validate_rack_cocycle(&rack, q)?;
        checks.push(check("rack 2-cocycle", true));
        if let Some(phi) = &inp.twist {
            let t = twist_rack_cocycle(&rack, &q, phi)?;
            checks.push(check("twist condition", t.valid));
            checks.push(check("twisted values form a 2-cocycle", t.cocycle_valid));
            result["q_phi"] = json!(t.q_phi);
            result["witness"] = json!(t.witness);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_round_trip() {
        for name in [
            "validate",
            "present",
            "serre",
            "twist-to-dj",
            "verify-iso",
            "quotient-dj",
            "halfroot-cocycle",
            "rack-check",
            "nichols-hilbert",
            "hq-deform",
            "compose-twist",
        ] {
            let c: Command = name.parse().unwrap();
            assert_eq!(serde_json::to_value(c).unwrap(), json!(name));
        }
    }

    #[test]
    fn schema_by_command() {
        let err = parse_input("twist-to-dj", r#"{"cartan": [[2]], "q": [["4"]]}"#, None).unwrap_err();
        assert!(matches!(err, CliError::Schema(f) if f == "q_components"));
        let err = parse_input("nichols-hilbert", r#"{"n": 3}"#, None).unwrap_err();
        assert!(matches!(err, CliError::Schema(f) if f == "cocycle"));
        let job = parse_input("verify-iso", r#"{"cartan": [[2]], "q": [["4"]], "max_degree": 5}"#, None).unwrap();
        assert_eq!(job.max_degree, Some(5));
        let job = parse_input("verify-iso", r#"{"cartan": [[2]], "q": [["4"]], "max_degree": 5}"#, Some(6)).unwrap();
        assert_eq!(job.max_degree, Some(6));
    }

    #[test]
    fn exit_codes() {
        let job = parse_input("validate", r#"{"cartan": [[2]], "q": [["4"]]}"#, None).unwrap();
        assert_eq!(execute(&job).exit_code(), 0);
        let job = parse_input("validate", r#"{"cartan": [[2]], "q": [["1"]]}"#, None).unwrap();
        let r = execute(&job);
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.without_timing().wall_time_ms, 0);
    }
}
