//! Command-line front end. Every subcommand writes exactly one JSON document
//! to standard output.
//!
//! Exit codes: 0 success, 2 input error, 3 graph is not purely infinite
//! simple, 4 oracle bound exceeded.

use std::io::Read;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::classifier::{kp_invariant_compare, m_graph, IsoReason, IsoVerdict, MatrixTypeVerdict};
use crate::error::Error;
use crate::graph::{parse_graph, purely_infinite_simple, DirectedGraph, PisReport};
use crate::group::{lemma1_criterion, FGAbelianGroup, GroupElement, OrderValue};
use crate::ktheory::k0_of_graph;
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::oracle::{automorphism_maps_x_to_y, eigen_search, DEFAULT_SIZE_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_PIS: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "leavitt",
    version,
    about = "K0 invariants and matrix types of Leavitt path algebras"
)]
pub struct CommandRequest {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph conditions, K0 group, unit class and unit order.
    Analyze {
        #[arg(long)]
        graph: String,
    },
    /// Decide whether M_c(L(E)) and M_d(L(E)) are isomorphic.
    MatrixType {
        #[arg(long)]
        graph: String,
        #[arg(long = "c")]
        c: u64,
        #[arg(long = "d")]
        d: u64,
        #[arg(long, default_value_t = DEFAULT_SIZE_BOUND)]
        bound: u64,
    },
    /// Partition {1..max} into matrix-size isomorphism classes.
    Classes {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        max: u64,
    },
    /// Build the graph M_m E realizing M_m(L(E)).
    Mgraph {
        #[arg(long)]
        graph: String,
        #[arg(long = "m")]
        m: u64,
        /// Output path, or `-` for standard output.
        #[arg(long)]
        out: String,
    },
    /// Look for a unit-preserving isomorphism between two K0 groups.
    Compare {
        #[arg(long = "graph-a")]
        graph_a: String,
        #[arg(long = "graph-b")]
        graph_b: String,
        #[arg(long, default_value_t = DEFAULT_SIZE_BOUND)]
        bound: u64,
    },
    /// Smith normal form of a JSON integer matrix.
    Snf {
        #[arg(long)]
        file: Option<String>,
    },
    /// Exhaustive oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// gcd criterion against the automorphism brute force.
    Lemma1(Lemma1Args),
    /// Search GL(t, Z) for sigma with n sigma(x) = m x.
    Eigen(EigenArgs),
}

#[derive(Debug, Args)]
pub struct Lemma1Args {
    /// Comma-separated invariant factors; empty for the trivial group.
    #[arg(long, allow_hyphen_values = true)]
    factors: String,
    #[arg(long = "x", allow_hyphen_values = true)]
    x: String,
    #[arg(long = "c")]
    c: u64,
    #[arg(long = "d")]
    d: u64,
    #[arg(long, default_value_t = DEFAULT_SIZE_BOUND)]
    bound: u64,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long = "t")]
    t: usize,
    #[arg(long)]
    bound: u64,
    #[arg(long = "x", allow_hyphen_values = true)]
    x: String,
    #[arg(long = "m")]
    m: u64,
    #[arg(long = "n")]
    n: u64,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Self {
            code: EXIT_OK,
            stdout: render(&doc),
            stderr: String::new(),
        }
    }

    fn error(code: i32, kind: &str, message: String) -> Self {
        let doc = json!({ "error": kind, "message": message });
        Self {
            code,
            stdout: render(&doc),
            stderr: format!("error: {message}\n"),
        }
    }

    fn from_error(e: Error) -> Self {
        match e {
            Error::NotPurelyInfiniteSimple => {
                Self::error(EXIT_NOT_PIS, "not_purely_infinite_simple", e.to_string())
            }
            Error::BoundExceeded { .. } => Self::error(EXIT_BOUND, "bound_exceeded", e.to_string()),
            other => Self::error(EXIT_INPUT, "input_error", other.to_string()),
        }
    }
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string(doc).expect("JSON value serializes");
    s.push('\n');
    s
}

/// Parses `args` (program name first) and runs the request. `stdin` backs
/// every `-` input.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let request = match CommandRequest::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome::error(EXIT_INPUT, "usage", e.to_string().trim_end().to_string()),
            };
        }
    };
    match execute(request, stdin) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::from_error(e),
    }
}

fn execute(request: CommandRequest, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    match request.command {
        Command::Analyze { graph } => {
            let g = load_graph(&graph, stdin)?;
            let pis = purely_infinite_simple(&g);
            let k = k0_of_graph(&g);
            Ok(Outcome::ok(json!({
                "pis": pis_json(&pis),
                "invariant_factors": k.group.invariant_factors().iter().map(num).collect::<Vec<_>>(),
                "free_rank": k.group.free_rank(),
                "unit_coords": k.unit.coords().iter().map(num).collect::<Vec<_>>(),
                "unit_order": order_json(&k.unit_order),
            })))
        }
        Command::MatrixType {
            graph,
            c,
            d,
            bound: _,
        } => {
            let g = load_graph(&graph, stdin)?;
            let verdict = MatrixTypeVerdict::new(&k0_of_graph(&g), &purely_infinite_simple(&g))?;
            let equal = verdict.equal(c, d)?;
            Ok(Outcome::ok(json!({
                "verdict": equal,
                "regime": regime(&verdict),
                "n": verdict.order().map_or(Value::Null, num),
            })))
        }
        Command::Classes { graph, max } => {
            let g = load_graph(&graph, stdin)?;
            if max == 0 {
                return Err(Error::NonPositiveScalar("0".into()));
            }
            let verdict = MatrixTypeVerdict::new(&k0_of_graph(&g), &purely_infinite_simple(&g))?;
            Ok(Outcome::ok(json!({
                "classes": verdict.classes(max),
                "regime": regime(&verdict),
                "n": verdict.order().map_or(Value::Null, num),
            })))
        }
        Command::Mgraph { graph, m, out } => {
            let g = load_graph(&graph, stdin)?;
            let h = m_graph(&g, m)?;
            let text = h.to_json();
            if out == "-" {
                let doc: Value = serde_json::from_str(&text).expect("graph JSON reparses");
                return Ok(Outcome::ok(doc));
            }
            std::fs::write(&out, format!("{text}\n"))
                .map_err(|e| Error::InvalidArgument(format!("cannot write {out}: {e}")))?;
            Ok(Outcome::ok(json!({
                "out": out,
                "vertex_count": h.vertex_count(),
                "edge_records": h.edges().count(),
            })))
        }
        Command::Compare {
            graph_a,
            graph_b,
            bound,
        } => {
            let a = load_graph(&graph_a, stdin)?;
            let b = load_graph(&graph_b, stdin)?;
            for g in [&a, &b] {
                if !purely_infinite_simple(g).purely_infinite_simple {
                    return Err(Error::NotPurelyInfiniteSimple);
                }
            }
            let verdict = kp_invariant_compare(&k0_of_graph(&a), &k0_of_graph(&b), bound);
            if verdict.reason == IsoReason::UndecidedBoundExceeded {
                return Ok(Outcome::error(
                    EXIT_BOUND,
                    "bound_exceeded",
                    format!("torsion subgroup is larger than the oracle bound {bound}"),
                ));
            }
            Ok(Outcome::ok(iso_json(&verdict)))
        }
        Command::Snf { file } => {
            let text = match file.as_deref() {
                Some(path) => read_source(path, stdin)?,
                None => read_source("-", stdin)?,
            };
            let a = parse_matrix(&text)?;
            let s = smith_normal_form(&a)?;
            Ok(Outcome::ok(json!({
                "U": matrix_json(&s.left),
                "D": matrix_json(&s.diagonal_matrix),
                "V": matrix_json(&s.right),
                "diagonal": s.diagonal.iter().map(num).collect::<Vec<_>>(),
            })))
        }
        Command::Oracle(OracleCommand::Lemma1(args)) => {
            let factors = parse_list(&args.factors)?;
            let group = FGAbelianGroup::new(factors, 0)?;
            let coords = parse_list(&args.x)?;
            let x = group.element(coords, Vec::new())?;
            let n = match group.element_order(&x)? {
                OrderValue::Finite(n) => n,
                OrderValue::Infinite => unreachable!("finite group"),
            };
            let (c, d) = (BigInt::from(args.c), BigInt::from(args.d));
            let criterion = lemma1_criterion(&n, &c, &d)?;
            let cx = group.scale(&c, &x)?;
            let dx = group.scale(&d, &x)?;
            let bruteforce = automorphism_maps_x_to_y(&group, &cx, &dx, args.bound)?;
            Ok(Outcome::ok(json!({
                "criterion": criterion,
                "bruteforce": bruteforce,
                "agree": criterion == bruteforce,
            })))
        }
        Command::Oracle(OracleCommand::Eigen(args)) => {
            let x = parse_list(&args.x)?;
            let witness = eigen_search(
                args.t,
                args.bound,
                &x,
                &BigInt::from(args.m),
                &BigInt::from(args.n),
            )?;
            Ok(Outcome::ok(json!({
                "witness": witness.as_ref().map_or(Value::Null, matrix_json),
            })))
        }
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, Error> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidArgument(format!("cannot read standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn load_graph(path: &str, stdin: &mut dyn Read) -> Result<DirectedGraph, Error> {
    parse_graph(&read_source(path, stdin)?)
}

fn parse_list(s: &str) -> Result<Vec<BigInt>, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            BigInt::from_str(part.trim())
                .map_err(|_| Error::InvalidArgument(format!("not an integer: `{part}`")))
        })
        .collect()
}

/// Parses `[[...], ...]` with arbitrary-size integer entries.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, Error> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array".into()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                .iter()
                .map(|e| match e {
                    Value::Number(n) => BigInt::from_str(&n.to_string())
                        .map_err(|_| Error::Parse(format!("matrix entry {n} is not an integer"))),
                    other => Err(Error::Parse(format!(
                        "matrix entry {other} is not a number"
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    IntMatrix::from_rows(rows)
}

fn num(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal is valid JSON"))
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(num).collect()))
            .collect(),
    )
}

fn element_json(x: &GroupElement) -> Value {
    Value::Array(x.coords().iter().map(num).collect())
}

fn order_json(o: &OrderValue) -> Value {
    match o {
        OrderValue::Finite(n) => num(n),
        OrderValue::Infinite => Value::String("infinite".into()),
    }
}

fn pis_json(p: &PisReport) -> Value {
    serde_json::to_value(p).expect("report serializes")
}

fn regime(v: &MatrixTypeVerdict) -> &'static str {
    match v {
        MatrixTypeVerdict::FiniteOrder(_) => "finite",
        MatrixTypeVerdict::InfiniteOrder => "infinite",
    }
}

fn iso_json(v: &IsoVerdict) -> Value {
    let mut doc = Map::new();
    doc.insert("isomorphic".into(), Value::Bool(v.isomorphic));
    let (reason, witness) = match &v.reason {
        IsoReason::GroupMismatch => ("group_mismatch", Value::Null),
        IsoReason::UnitOrbitMismatch => ("unit_orbit_mismatch", Value::Null),
        IsoReason::UndecidedBoundExceeded => ("undecided_bound_exceeded", Value::Null),
        IsoReason::UnitOrbitMatch { witness } => (
            "unit_orbit_match",
            json!({
                "torsion_images": witness.torsion_images.iter().map(element_json).collect::<Vec<_>>(),
                "free_content": num(&witness.free_content),
                "torsion_offset": element_json(&witness.torsion_offset),
            }),
        ),
    };
    doc.insert("reason".into(), Value::String(reason.into()));
    doc.insert("witness".into(), witness);
    Value::Object(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> Outcome {
        let mut input = stdin.as_bytes();
        run(
            std::iter::once("leavitt").chain(args.iter().copied()),
            &mut input,
        )
    }

    #[test]
    fn analyze_from_stdin() {
        let out = call(
            &["analyze", "--graph", "-"],
            r#"{"vertices":["v"],"edges":[["v","v",5]]}"#,
        );
        assert_eq!(out.code, 0, "{out:?}");
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["unit_order"], json!(4));
        assert_eq!(doc["invariant_factors"], json!([4]));
        assert_eq!(doc["pis"]["purely_infinite_simple"], json!(true));
    }

    #[test]
    fn usage_errors_are_json() {
        let out = call(&["matrix-type", "--graph", "-", "--bogus", "1"], "");
        assert_eq!(out.code, EXIT_INPUT);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["error"], json!("usage"));
    }

    #[test]
    fn big_matrix_entries() {
        let out = call(&["snf"], "[[123456789012345678901234567890, 0], [0, 2]]");
        assert_eq!(out.code, 0, "{out:?}");
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(
            doc["diagonal"].to_string(),
            "[2,123456789012345678901234567890]"
        );
    }

    #[test]
    fn parse_list_handles_empty_and_negatives() {
        assert_eq!(parse_list("").unwrap(), Vec::<BigInt>::new());
        assert_eq!(
            parse_list("-1, 2").unwrap(),
            vec![BigInt::from(-1), BigInt::from(2)]
        );
        assert!(parse_list("1,x").is_err());
    }
}
