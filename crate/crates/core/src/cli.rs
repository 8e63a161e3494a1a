//! Command-line front end. Every command prints one JSON object on stdout.
//!
//! Exit status: 0 on success, 1 on bad input, 2 when a bounded search could
//! not decide (`Unknown` verdicts and exhausted bounds).

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{h4_certificate, involution_generators};
use crate::commensurator::{
    centralizer_enum, commensurable, normalizer_descriptor, Commensurability, RankEvidence, SearchBound,
};
use crate::error::{Error, Result};
use crate::exact::encoding::int_matrix_from_value;
use crate::exact::{charpoly, IntMatrix};
use crate::hypotheses::{integral_char_check, unipotent_hirsch_report, GeneratorSet};
use crate::report::{dimension_certificate, ktheory_skeleton, standard_table};
use crate::vcyc::{classify, require_sl3};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sl3z", version, about = "Virtually cyclic subgroups of SL(3,Z)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an infinite-order element of SL(3,Z).
    Classify {
        /// Matrix as JSON rows, or @path to a file holding it.
        #[arg(short = 'm', long)]
        matrix: String,
    },
    /// Decide whether <A> and <B> are commensurable.
    Comm {
        #[arg(short = 'a')]
        a: String,
        #[arg(short = 'b')]
        b: String,
        #[arg(long, default_value_t = 12)]
        power_bound: u32,
    },
    /// Enumerate the centralizer within an entry bound.
    Centralizer {
        #[arg(short = 'm', long)]
        matrix: String,
        #[arg(long, default_value_t = 3)]
        entry_bound: u32,
        #[arg(long, default_value_t = 12)]
        power_bound: u32,
    },
    /// Structure of the commensurator of <A>.
    Normalizer {
        #[arg(short = 'm', long)]
        matrix: String,
        #[arg(long, default_value_t = 3)]
        entry_bound: u32,
        #[arg(long, default_value_t = 12)]
        power_bound: u32,
    },
    /// Hirsch length of the subgroup generated by the unipotent generators.
    Hirsch {
        #[arg(short = 'f', long)]
        file: PathBuf,
    },
    /// Check integral characteristic on words up to length L.
    Intchar {
        #[arg(short = 'f', long)]
        file: PathBuf,
        #[arg(short = 'L', long)]
        length: usize,
    },
    /// The dimension-4 certificate.
    #[command(name = "cert-dim4")]
    CertDim4,
    /// K-theory summand skeleton for a list of matrices.
    Ktheory {
        #[arg(short = 'f', long)]
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        power_bound: u32,
    },
}

/// Output of one invocation.
pub struct Outcome {
    pub code: i32,
    pub body: Value,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize to JSON")
}

fn with_header(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

pub fn error_body(e: &Error) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "error": { "kind": e.kind(), "message": e.to_string() } })
}

fn read_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}"))),
        None => Ok(arg.to_owned()),
    }
}

fn read_json_file(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_matrix(arg: &str) -> Result<IntMatrix> {
    let v: Value = serde_json::from_str(&read_text(arg)?).map_err(|e| Error::Parse(e.to_string()))?;
    int_matrix_from_value(&v)
}

fn classify_body(m: &IntMatrix) -> Result<Value> {
    let c = classify(m)?;
    Ok(json!({
        "matrix": to_value(m),
        "class": c.tag,
        "normalization_power": c.normalization_power,
        "charpoly": charpoly(m)?.poly().to_string(),
        "spectral": to_value(&c.spectral),
        "unipotent_square": c.unipotent_square.as_ref().map(to_value),
    }))
}

fn execute(command: &Command) -> Result<Outcome> {
    let ok = |name: &str, body: Value| Outcome { code: EXIT_OK, body: with_header(name, body) };
    Ok(match command {
        Command::Classify { matrix } => ok("classify", classify_body(&parse_matrix(matrix)?)?),
        Command::Comm { a, b, power_bound } => {
            let (a, b) = (parse_matrix(a)?, parse_matrix(b)?);
            let bound = SearchBound { power_bound: *power_bound, ..SearchBound::default() };
            let verdict = commensurable(&a, &b, bound)?;
            let code = if matches!(verdict, Commensurability::Unknown { .. }) { EXIT_UNDECIDED } else { EXIT_OK };
            let body = json!({ "a": to_value(&a), "b": to_value(&b), "result": to_value(&verdict), "bounds_used": bound });
            Outcome { code, body: with_header("comm", body) }
        }
        Command::Centralizer { matrix, entry_bound, power_bound } => {
            let a = parse_matrix(matrix)?;
            require_sl3(&a)?;
            let bound = SearchBound::new(*power_bound, *entry_bound)?;
            let elems = centralizer_enum(&a, bound)?;
            let abelian = elems.iter().all(|x| elems.iter().all(|y| x.commutes_with(y)));
            let evidence = if abelian { Some(RankEvidence::from_commuting(&elems, bound.power_bound)?) } else { None };
            let body = json!({
                "matrix": to_value(&a),
                "count": elems.len(),
                "elements": to_value(&elems),
                "abelian": abelian,
                "rank_evidence": evidence.as_ref().map(to_value),
                "bounds_used": bound,
            });
            ok("centralizer", body)
        }
        Command::Normalizer { matrix, entry_bound, power_bound } => {
            let a = parse_matrix(matrix)?;
            let bound = SearchBound::new(*power_bound, *entry_bound)?;
            ok("normalizer", to_value(&normalizer_descriptor(&a, bound)?))
        }
        Command::Hirsch { file } => {
            let gens = GeneratorSet::from_json(&read_json_file(file)?)?;
            ok("hirsch", to_value(&unipotent_hirsch_report(&gens)))
        }
        Command::Intchar { file, length } => {
            let gens = GeneratorSet::from_json(&read_json_file(file)?)?;
            let verdict = integral_char_check(&gens, *length);
            let body = json!({ "dimension": gens.dimension, "result": to_value(&verdict) });
            ok("intchar", body)
        }
        Command::CertDim4 => {
            let cert = h4_certificate(&involution_generators())?;
            let (table, ambient) = standard_table();
            let dims = dimension_certificate(&table, ambient);
            let dimension = cert.dimension();
            let mut body = to_value(&cert);
            body["dimension"] = json!(dimension);
            body["upper_bound_arithmetic"] = to_value(&dims);
            ok("cert-dim4", body)
        }
        Command::Ktheory { file, power_bound } => {
            let v = read_json_file(file)?;
            let list = v.get("matrices").unwrap_or(&v);
            let list = list.as_array().ok_or_else(|| Error::Parse("expected an array of matrices".into()))?;
            let mats = list.iter().map(int_matrix_from_value).collect::<Result<Vec<_>>>()?;
            let bound = SearchBound { power_bound: *power_bound, ..SearchBound::default() };
            bound.validate()?;
            let skeleton = ktheory_skeleton(&mats, bound);
            let code = if skeleton.unresolved_pairs.is_empty() { EXIT_OK } else { EXIT_UNDECIDED };
            Outcome { code, body: with_header("ktheory", to_value(&skeleton)) }
        }
    })
}

/// Runs one parsed command, mapping errors to exit codes.
pub fn dispatch(cli: &Cli) -> Outcome {
    match execute(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            let code = if matches!(e, Error::BoundExhausted(_)) { EXIT_UNDECIDED } else { EXIT_INPUT };
            Outcome { code, body: error_body(&e) }
        }
    }
}

/// Parses arguments and runs. Usage errors exit with 1, not clap's 2, so
/// that 2 keeps meaning "undecided".
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => return (EXIT_OK, e.to_string()),
        Err(e) => {
            let body = error_body(&Error::Parse(e.to_string().trim().to_owned()));
            return (EXIT_INPUT, body.to_string());
        }
    };
    let out = dispatch(&cli);
    let text = if cli.pretty {
        serde_json::to_string_pretty(&out.body).expect("JSON values serialize")
    } else {
        out.body.to_string()
    };
    (out.code, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let (code, text) = run(std::iter::once("sl3z").chain(args.iter().copied()));
        (code, serde_json::from_str(&text).unwrap())
    }

    #[test]
    fn classify_command() {
        let (code, v) = call(&["classify", "-m", "[[1,0,1],[0,1,0],[0,0,1]]"]);
        assert_eq!(code, 0);
        assert_eq!(v["class"], "I3");
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        let (code, v) = call(&["classify", "-m", "[[1,0,0],[0,1,0],[0,0,1]]"]);
        assert_eq!(code, 1);
        assert_eq!(v["error"]["kind"], "FiniteOrder");
        let (code, v) = call(&["classify", "-m", "[[1,0"]);
        assert_eq!(code, 1);
        assert_eq!(v["error"]["kind"], "Parse");
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, v) = call(&["frobnicate"]);
        assert_eq!(code, 1);
        assert_eq!(v["error"]["kind"], "Parse");
    }

    #[test]
    fn comm_unknown_exits_two() {
        let a = "[[0,0,1],[1,0,1],[0,1,0]]";
        let (code, v) = call(&["comm", "-a", a, "-b", a, "--power-bound", "3"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["verdict"], "yes");
        let a13 = IntMatrix::lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]]).pow(13).unwrap().to_string();
        let (code, v) = call(&["comm", "-a", a, "-b", &a13]);
        assert_eq!(code, 2);
        assert_eq!(v["result"]["verdict"], "unknown");
    }

    #[test]
    fn certificate_command() {
        let (code, v) = call(&["cert-dim4"]);
        assert_eq!(code, 0);
        assert_eq!(v["dimension"], 4);
        assert_eq!(v["invariant_dim"], 1);
        assert_eq!(v["upper_bound_arithmetic"]["d"], 4);
    }
}
