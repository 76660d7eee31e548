//! Command-line front end.
//!
//! Every invocation is turned into a [`Request`] with canonical string
//! inputs before anything is computed. JSON output embeds that request, so
//! feeding it back through [`rerun`] reproduces the result.
//!
//! Exit codes: 0 when a result was computed (an answer of K included), 2 for
//! invalid input or usage, 1 when the computation itself gave up.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::arith::Place;
use crate::error::{Error, Result};
use crate::field::{find_automorphism, make_field, parse_poly, splitting_type, NumField};
use crate::hilbert::{hilbert_symbol, ramified_set, QuatAlg};
use crate::lattice::{conductor_order, make_order, Lattice, OrderLat};
use crate::selectivity::{decide_odd, decide_quadratic, embeds_quadratic, CsaSpec, Verdict};

#[derive(Parser, Debug)]
#[command(name = "maxsel", version, about = "Maximal selectivity of orders in prime-degree fields")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local Hilbert symbol (a,b)_v.
    Hilbert {
        #[arg(long = "a", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "b", allow_hyphen_values = true)]
        b: String,
        /// A prime, or "inf" for the real place.
        #[arg(long)]
        place: String,
    },
    /// Ramified places of a quaternion algebra.
    Ramset(AlgebraArgs),
    /// Whether Q(sqrt d) embeds in a quaternion algebra.
    Embeds {
        #[arg(long = "d", allow_hyphen_values = true)]
        d: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// F_M for an order in Q(sqrt d) inside a quaternion algebra.
    SelectiveQuadratic {
        #[arg(long = "d", allow_hyphen_values = true)]
        d: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// F_M for an order in a field of odd prime degree.
    SelectiveOdd {
        #[command(flatten)]
        field: FieldArgs,
        /// Basis of H, one vector per ';'-separated row, or @file.json.
        /// Defaults to Z[theta].
        #[arg(long, allow_hyphen_values = true, conflicts_with = "conductor")]
        order_basis: Option<String>,
        /// Use H = Z + c O_L.
        #[arg(long)]
        conductor: Option<String>,
        /// Comma-separated finite ramified primes of the algebra.
        #[arg(long, value_delimiter = ',')]
        ramified: Vec<String>,
        #[arg(long)]
        ramified_infinite: bool,
    },
    /// Decomposition of a prime in L.
    Splitting {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        prime: String,
    },
    /// A generator of Gal(L/Q), if L is Galois.
    Automorphism {
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Symbol algebra (a,b): first entry.
    #[arg(long = "a", allow_hyphen_values = true, requires = "b", conflicts_with_all = ["ramified", "ramified_infinite"])]
    a: Option<String>,
    #[arg(long = "b", allow_hyphen_values = true, requires = "a")]
    b: Option<String>,
    /// Comma-separated finite ramified primes.
    #[arg(long, value_delimiter = ',')]
    ramified: Vec<String>,
    /// The algebra ramifies at the real place.
    #[arg(long)]
    ramified_infinite: bool,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Coefficients of f, constant term first: "-1,-2,1,1" is x^3 + x^2 - 2x - 1.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Expected degree of f.
    #[arg(long)]
    degree: Option<usize>,
    /// Basis of O_L in the same format as --order-basis.
    #[arg(long, allow_hyphen_values = true)]
    integral_basis: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum AlgebraInput {
    Symbol { a: String, b: String },
    Ramified { primes: Vec<String>, infinite: bool },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FieldInput {
    pub poly: String,
    pub degree: Option<usize>,
    pub integral_basis: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrderInput {
    PowerBasis,
    Basis { rows: Vec<Vec<String>> },
    Conductor { c: String },
}

/// A fully resolved invocation.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "command", content = "inputs", rename_all = "kebab-case")]
pub enum Request {
    Hilbert { a: String, b: String, place: String },
    Ramset { algebra: AlgebraInput },
    Embeds { d: String, algebra: AlgebraInput },
    SelectiveQuadratic { d: String, algebra: AlgebraInput },
    SelectiveOdd { field: FieldInput, order: OrderInput, ramified: Vec<String>, ramified_infinite: bool },
    Splitting { field: FieldInput, prime: String },
    Automorphism { field: FieldInput },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// What a request produced, before rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub result: Value,
    /// Extra top-level JSON fields, also printed in text mode.
    pub fields: Vec<(&'static str, Value)>,
    /// (place, finding); place is "-" for global findings.
    pub trace: Vec<(String, String)>,
}

fn canonical_int(s: &str) -> Result<String> {
    parse_int(s).map(|n| n.to_string())
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("expected a rational number, got {s:?}"));
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().map_err(|_| bad())?;
            let d = d.trim().parse::<BigInt>().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reads "a,b;c,d" or "@file.json" (an array of arrays of integers or
/// "p/q" strings). Each row is one basis vector.
fn parse_matrix(source: &str) -> Result<Vec<Vec<String>>> {
    let rows: Vec<Vec<String>> = if let Some(path) = source.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        let not_matrix = || Error::Parse(format!("{path}: expected an array of arrays"));
        value
            .as_array()
            .ok_or_else(not_matrix)?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(not_matrix)?
                    .iter()
                    .map(|x| match x {
                        Value::Number(n) => Ok(n.to_string()),
                        Value::String(s) => Ok(s.clone()),
                        _ => Err(Error::Parse(format!("{path}: bad entry {x}"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?
    } else {
        source.split(';').map(|row| row.split(',').map(|x| x.trim().to_string()).collect()).collect()
    };
    rows.iter().map(|row| row.iter().map(|x| parse_rational(x).map(|q| format_rational(&q))).collect()).collect()
}

fn rational_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<BigRational>>> {
    rows.iter().map(|row| row.iter().map(|x| parse_rational(x)).collect()).collect()
}

fn algebra_input(args: AlgebraArgs) -> Result<AlgebraInput> {
    match (args.a, args.b) {
        (Some(a), Some(b)) => Ok(AlgebraInput::Symbol { a: canonical_int(&a)?, b: canonical_int(&b)? }),
        _ => {
            let mut primes: Vec<BigInt> = args.ramified.iter().map(|p| parse_int(p)).collect::<Result<_>>()?;
            primes.sort();
            primes.dedup();
            Ok(AlgebraInput::Ramified {
                primes: primes.iter().map(ToString::to_string).collect(),
                infinite: args.ramified_infinite,
            })
        }
    }
}

fn field_input(args: FieldArgs) -> Result<FieldInput> {
    let poly = parse_poly(&args.poly)?.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let integral_basis = args.integral_basis.as_deref().map(parse_matrix).transpose()?;
    Ok(FieldInput { poly, degree: args.degree, integral_basis })
}

fn sorted_primes(list: &[String]) -> Result<Vec<String>> {
    let set: BTreeSet<BigInt> = list.iter().map(|p| parse_int(p)).collect::<Result<_>>()?;
    Ok(set.iter().map(ToString::to_string).collect())
}

fn to_request(cmd: Command) -> Result<Request> {
    Ok(match cmd {
        Command::Hilbert { a, b, place } => {
            let place: Place = place.parse()?;
            Request::Hilbert { a: canonical_int(&a)?, b: canonical_int(&b)?, place: place.to_string() }
        }
        Command::Ramset(args) => Request::Ramset { algebra: algebra_input(args)? },
        Command::Embeds { d, algebra } => Request::Embeds { d: canonical_int(&d)?, algebra: algebra_input(algebra)? },
        Command::SelectiveQuadratic { d, algebra } => {
            Request::SelectiveQuadratic { d: canonical_int(&d)?, algebra: algebra_input(algebra)? }
        }
        Command::SelectiveOdd { field, order_basis, conductor, ramified, ramified_infinite } => {
            let order = match (order_basis, conductor) {
                (Some(source), _) => OrderInput::Basis { rows: parse_matrix(&source)? },
                (None, Some(c)) => OrderInput::Conductor { c: canonical_int(&c)? },
                (None, None) => OrderInput::PowerBasis,
            };
            Request::SelectiveOdd {
                field: field_input(field)?,
                order,
                ramified: sorted_primes(&ramified)?,
                ramified_infinite,
            }
        }
        Command::Splitting { field, prime } => {
            Request::Splitting { field: field_input(field)?, prime: canonical_int(&prime)? }
        }
        Command::Automorphism { field } => Request::Automorphism { field: field_input(field)? },
    })
}

fn build_algebra(input: &AlgebraInput) -> Result<QuatAlg> {
    match input {
        AlgebraInput::Symbol { a, b } => QuatAlg::symbol(parse_int(a)?, parse_int(b)?),
        AlgebraInput::Ramified { primes, infinite } => {
            let ps: Vec<BigInt> = primes.iter().map(|p| parse_int(p)).collect::<Result<_>>()?;
            QuatAlg::from_ramification(ps, *infinite)
        }
    }
}

fn build_field(input: &FieldInput) -> Result<NumField> {
    let f = parse_poly(&input.poly)?;
    let found = f.len().saturating_sub(1);
    if let Some(expected) = input.degree {
        if expected != found {
            return Err(Error::DegreeMismatch { expected, found });
        }
    }
    let field = make_field(&f)?;
    match &input.integral_basis {
        Some(rows) => field.with_integral_basis(&rational_rows(rows)?),
        None => Ok(field),
    }
}

fn build_order(input: &OrderInput, field: &NumField) -> Result<OrderLat> {
    match input {
        OrderInput::PowerBasis => make_order(&Lattice::standard(field.degree()).columns(), field),
        OrderInput::Basis { rows } => make_order(&rational_rows(rows)?, field),
        OrderInput::Conductor { c } => conductor_order(field, &parse_int(c)?),
    }
}

fn verdict_report(v: Verdict) -> Report {
    Report {
        result: json!(v.f_m.to_string()),
        fields: vec![("selective", json!(v.selective)), ("proportion", json!(format_rational(&v.proportion)))],
        trace: v
            .trace
            .into_iter()
            .map(|e| (e.place.map_or_else(|| "-".to_string(), |p| p.to_string()), e.finding))
            .collect(),
    }
}

fn places_json(places: &BTreeSet<Place>) -> Value {
    json!(places.iter().map(ToString::to_string).collect::<Vec<_>>())
}

/// Runs one request against the library.
pub fn execute(req: &Request) -> Result<Report> {
    let plain = |result: Value| Report { result, fields: Vec::new(), trace: Vec::new() };
    match req {
        Request::Hilbert { a, b, place } => {
            let v: Place = place.parse()?;
            Ok(plain(json!(hilbert_symbol(&parse_int(a)?, &parse_int(b)?, &v)?)))
        }
        Request::Ramset { algebra } => Ok(plain(places_json(&ramified_set(&build_algebra(algebra)?)?))),
        Request::Embeds { d, algebra } => Ok(plain(json!(embeds_quadratic(&parse_int(d)?, &build_algebra(algebra)?)?))),
        Request::SelectiveQuadratic { d, algebra } => {
            Ok(verdict_report(decide_quadratic(&parse_int(d)?, &build_algebra(algebra)?)?))
        }
        Request::SelectiveOdd { field, order, ramified, ramified_infinite } => {
            let l = build_field(field)?;
            if *ramified_infinite {
                return Err(Error::InfiniteRamificationOddDegree);
            }
            let csa = CsaSpec::odd(l.degree(), ramified.iter().map(|p| parse_int(p)).collect::<Result<Vec<_>>>()?)?;
            let h = build_order(order, &l)?;
            let CsaSpec::OddDegree { finite_ramified, .. } = &csa else {
                return Err(Error::Internal("odd-degree algebra expected".into()));
            };
            Ok(verdict_report(decide_odd(&l, &h, finite_ramified)?))
        }
        Request::Splitting { field, prime } => {
            let l = build_field(field)?;
            let shape = splitting_type(&l, &parse_int(prime)?)?;
            Ok(Report {
                result: json!(shape.describe()),
                fields: vec![("factors", json!(shape.factors.iter().map(|&(f, e)| json!([f, e])).collect::<Vec<_>>()))],
                trace: Vec::new(),
            })
        }
        Request::Automorphism { field } => {
            let l = build_field(field)?;
            let sigma = find_automorphism(&l)?;
            Ok(Report {
                result: sigma.as_ref().map_or(Value::Null, |s| json!(s.to_poly_string())),
                fields: vec![("galois", json!(sigma.is_some()))],
                trace: Vec::new(),
            })
        }
    }
}

fn error_json(e: &Error) -> Value {
    json!({
        "kind": if e.is_validation() { "validation" } else { "internal" },
        "message": e.to_string(),
    })
}

fn exit_code(e: &Error) -> u8 {
    if e.is_validation() {
        2
    } else {
        1
    }
}

fn render_json(req: &Request, outcome: &Result<Report>) -> String {
    let mut obj = match serde_json::to_value(req) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    };
    match outcome {
        Ok(r) => {
            obj.insert("result".into(), r.result.clone());
            for (k, v) in &r.fields {
                obj.insert((*k).into(), v.clone());
            }
            let trace: Vec<Value> = r.trace.iter().map(|(p, f)| json!({"place": p, "finding": f})).collect();
            obj.insert("trace".into(), Value::Array(trace));
            obj.insert("errors".into(), json!([]));
        }
        Err(e) => {
            obj.insert("result".into(), Value::Null);
            obj.insert("trace".into(), json!([]));
            obj.insert("errors".into(), json!([error_json(e)]));
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
    s.push('\n');
    s
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(xs) => format!("{{{}}}", xs.iter().map(value_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render_text(r: &Report) -> String {
    if r.fields.is_empty() && r.trace.is_empty() {
        return value_text(&r.result) + "\n";
    }
    let mut out = String::new();
    let rows: Vec<(&str, String)> = std::iter::once(("result", value_text(&r.result)))
        .chain(r.fields.iter().map(|(k, v)| (*k, value_text(v))))
        .collect();
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    if !r.trace.is_empty() {
        out.push_str("trace\n");
        let pw = r.trace.iter().map(|(p, _)| p.len()).max().unwrap_or(0);
        for (p, f) in &r.trace {
            let _ = writeln!(out, "  {p:<pw$}  {f}");
        }
    }
    out
}

fn respond(req: &Request, json_mode: bool) -> RunOutput {
    let outcome = execute(req);
    let code = outcome.as_ref().err().map_or(0, exit_code);
    let stderr = outcome.as_ref().err().map_or_else(String::new, |e| format!("error: {e}\n"));
    let stdout = if json_mode {
        render_json(req, &outcome)
    } else {
        outcome.as_ref().map_or_else(|_| String::new(), render_text)
    };
    RunOutput { code, stdout, stderr }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                RunOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match to_request(cli.command) {
        Ok(req) => respond(&req, cli.json),
        Err(e) => {
            let stdout = if cli.json {
                let obj =
                    json!({"command": null, "inputs": null, "result": null, "trace": [], "errors": [error_json(&e)]});
                serde_json::to_string_pretty(&obj).expect("json values serialize") + "\n"
            } else {
                String::new()
            };
            RunOutput { code: exit_code(&e), stdout, stderr: format!("error: {e}\n") }
        }
    }
}

/// Re-executes the request embedded in a previous JSON output.
pub fn rerun(previous_output: &str) -> Result<RunOutput> {
    let value: Value = serde_json::from_str(previous_output).map_err(|e| Error::Parse(e.to_string()))?;
    let req_value = json!({"command": value["command"], "inputs": value["inputs"]});
    let req: Request = serde_json::from_value(req_value).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(respond(&req, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> RunOutput {
        run(std::iter::once("maxsel").chain(args.iter().copied()))
    }

    #[test]
    fn hilbert_text() {
        let out = run_args(&["hilbert", "--a", "-1", "--b", "-1", "--place", "2"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "-1\n");
    }

    #[test]
    fn quadratic_json() {
        let out = run_args(&["--json", "selective-quadratic", "--d", "-1", "--ramified", "2", "--ramified-infinite"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"], "L");
        assert_eq!(v["proportion"], "1/2");
        assert_eq!(v["command"], "selective-quadratic");
    }

    #[test]
    fn inline_order_basis() {
        let out = run_args(&[
            "selective-odd",
            "--poly",
            "-1,-2,1,1",
            "--order-basis",
            "1,0,0;0,14,0;0,0,196",
            "--ramified",
            "2,7",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("result"));
        assert!(out.stdout.lines().next().unwrap().ends_with(" L"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["selective-odd", "--poly", "-1,-2,1,1", "--ramified", "7"]).code, 2);
        assert_eq!(run_args(&["selective-quadratic", "--d", "4"]).code, 2);
        assert_eq!(run_args(&["no-such-command"]).code, 2);
        assert_eq!(run_args(&["hilbert", "--a", "x", "--b", "1", "--place", "2"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn matrix_formats() {
        assert_eq!(parse_matrix("1, 0; 1/2 ,2/4").unwrap(), vec![vec!["1", "0"], vec!["1/2", "1/2"]]);
        assert!(parse_matrix("1,0;x,1").is_err());
        assert!(parse_matrix("1/0").is_err());
    }
}
