//! The `kep` command line: JSON documents in, JSON reports out.
//!
//! Input document:
//!
//! ```json
//! {"mode": "katsura", "n": 1, "A": [[2]], "B": [[1]]}
//! {"mode": "sft", "n": 2, "A": [[2, 1], [1, 2]]}
//! ```
//!
//! Matrix entries may be JSON integers of any size or decimal strings.
//! Integers in reports are numbers below 2^53 in magnitude and strings
//! otherwise. Exit codes: 0 success, 1 unrealizable or failed/inconclusive
//! check, 2 parse or usage error, 3 violated standing assumption.

use std::io::Read;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::abgroup::FGAbelianGroup;
use crate::error::Error;
use crate::groupoid::classify;
use crate::intmat::IntMatrix;
use crate::invariants::{self, compare, Operand, OperandInvariants};
use crate::laws::check_pair;
use crate::selfsim::{MatrixPair, Path};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNREALIZABLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Katsura,
    Sft,
}

/// A validated input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub mode: Mode,
    pub n: usize,
    pub a: IntMatrix,
    pub b: Option<IntMatrix>,
}

impl InputDocument {
    pub fn operand(&self) -> Operand {
        match self.mode {
            Mode::Katsura => Operand::Katsura(self.pair().expect("validated")),
            Mode::Sft => Operand::Sft(self.a.clone()),
        }
    }

    /// The pair `(A, B)`, with `B = 0` for an SFT document.
    pub fn pair(&self) -> Result<MatrixPair, Error> {
        let b = self
            .b
            .clone()
            .unwrap_or_else(|| IntMatrix::zeros(self.n, self.n));
        MatrixPair::new(self.a.clone(), b)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("mode".into(), json!(self.mode));
        m.insert("n".into(), json!(self.n));
        m.insert("A".into(), matrix_json(&self.a));
        if let Some(b) = &self.b {
            m.insert("B".into(), matrix_json(b));
        }
        Value::Object(m)
    }
}

/// A failure carrying its process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax(_) => EXIT_PARSE,
            Error::Unrealizable(_) => EXIT_UNREALIZABLE,
            Error::Internal(_) => EXIT_UNREALIZABLE,
            _ => EXIT_VALIDATION,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_entry(v: &Value, what: &str) -> Result<BigInt, CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => {
            return Err(CliError::parse(format!(
                "{} entries must be integers",
                what
            )))
        }
    };
    text.parse::<BigInt>()
        .map_err(|_| CliError::parse(format!("{} entry {} is not an integer", what, text)))
}

fn parse_matrix(v: &Value, what: &str, n: usize) -> Result<IntMatrix, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::parse(format!("{} must be an array of rows", what)))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::parse(format!("each row of {} must be an array", what)))?;
        parsed.push(
            row.iter()
                .map(|x| parse_entry(x, what))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if parsed.len() != n || parsed.iter().any(|r| r.len() != n) {
        return Err(CliError::validation(format!(
            "shape: {} must be {}x{}",
            what, n, n
        )));
    }
    IntMatrix::from_rows(&parsed).map_err(|e| CliError::validation(e.to_string()))
}

/// Parses and validates an input document.
pub fn parse_input(bytes: &[u8]) -> Result<InputDocument, CliError> {
    let text = std::str::from_utf8(bytes).map_err(|_| CliError::parse("input is not UTF-8"))?;
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| CliError::parse(format!("malformed JSON: {}", e)))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::parse("input must be a JSON object"))?;
    let mode = match obj.get("mode").and_then(Value::as_str) {
        Some("katsura") | None => Mode::Katsura,
        Some("sft") => Mode::Sft,
        Some(other) => return Err(CliError::parse(format!("unknown mode {:?}", other))),
    };
    let a_value = obj
        .get("A")
        .ok_or_else(|| CliError::parse("missing field \"A\""))?;
    let n = match obj.get("n") {
        Some(v) => v
            .as_u64()
            .filter(|&n| n >= 1)
            .ok_or_else(|| CliError::parse("\"n\" must be a positive integer"))?
            as usize,
        None => a_value.as_array().map_or(0, Vec::len),
    };
    if n == 0 {
        return Err(CliError::validation("shape: matrices must be at least 1x1"));
    }
    let a = parse_matrix(a_value, "A", n)?;
    let b = match (mode, obj.get("B")) {
        (Mode::Katsura, Some(b)) => Some(parse_matrix(b, "B", n)?),
        (Mode::Katsura, None) => {
            return Err(CliError::parse("missing field \"B\" in katsura mode"))
        }
        (Mode::Sft, Some(_)) => return Err(CliError::validation("sft mode takes no \"B\" matrix")),
        (Mode::Sft, None) => None,
    };
    let doc = InputDocument { mode, n, a, b };
    doc.pair()
        .map_err(|e| CliError::validation(e.to_string()))?;
    Ok(doc)
}

/// Integer as a JSON number when it survives a double, else as a string.
pub fn int_json(x: &BigInt) -> Value {
    let limit = BigInt::from(1u64 << 53);
    if x.abs() < limit {
        let v: i64 = x.try_into().expect("below 2^53");
        json!(v)
    } else {
        json!(x.to_string())
    }
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int_json).collect()))
            .collect(),
    )
}

pub fn group_json(g: &FGAbelianGroup) -> Value {
    json!({
        "rendered": g.to_string(),
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(int_json).collect::<Vec<_>>(),
    })
}

fn rendered(groups: &[FGAbelianGroup]) -> Value {
    json!(groups.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn structured(groups: &[FGAbelianGroup]) -> Value {
    Value::Array(
        groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v = group_json(g);
                v["degree"] = json!(i);
                v
            })
            .collect(),
    )
}

#[derive(Parser, Debug)]
#[command(
    name = "kep",
    about = "Homology and K-theory of Katsura-Exel-Pardo groupoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full invariant report for one input file ("-" reads stdin).
    Analyze { file: String },
    /// Compare two inputs by their Kakutani invariants.
    Compare { left: String, right: String },
    /// Apply the action kappa_m to a path.
    Kappa {
        file: String,
        #[arg(long, allow_negative_numbers = true)]
        m: String,
        #[arg(long)]
        path: String,
    },
    /// Build a pair with prescribed K-theory.
    Realize {
        /// Common free rank of K_0 and K_1.
        #[arg(long, default_value_t = 0)]
        rank: usize,
        /// Free rank of K_0 when it differs from --rank.
        #[arg(long)]
        rank0: Option<usize>,
        /// Free rank of K_1 when it differs from --rank.
        #[arg(long)]
        rank1: Option<usize>,
        /// Comma-separated torsion orders of K_0.
        #[arg(long, default_value = "")]
        t0: String,
        /// Comma-separated torsion orders of K_1.
        #[arg(long, default_value = "")]
        t1: String,
    },
    /// Seeded property sweep over the laws of one input.
    Check {
        file: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_source(name: &str, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    if name == "-" {
        stdin
            .read_to_end(&mut buf)
            .map_err(|e| CliError::parse(format!("reading stdin: {}", e)))?;
    } else {
        buf =
            std::fs::read(name).map_err(|e| CliError::parse(format!("reading {}: {}", name, e)))?;
    }
    Ok(buf)
}

fn load(name: &str, stdin: &mut dyn Read) -> Result<InputDocument, CliError> {
    parse_input(&read_source(name, stdin)?)
}

fn envelope(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m
}

fn analyze_json(doc: &InputDocument) -> Result<Value, CliError> {
    let mut out = envelope("analyze");
    out.insert("input".into(), doc.to_json());
    match doc.mode {
        Mode::Katsura => {
            let pair = doc.pair()?;
            let report = invariants::analyze(&pair)?;
            let limits = invariants::homology_via_limits(&pair)?;
            let h = report.homology.degrees();
            let k = [report.k0.clone(), report.k1.clone()];
            out.insert("validity".into(), json!(report.validity));
            out.insert("properties".into(), json!(report.properties));
            out.insert("H".into(), rendered(&h));
            out.insert("K".into(), rendered(&k));
            out.insert("homology".into(), structured(&h));
            out.insert("k_theory".into(), structured(&k));
            out.insert("homology_via_limits".into(), rendered(&limits.degrees()));
            out.insert("det_I_minus_A".into(), int_json(&report.det_ia));
            out.insert("det_I_minus_B".into(), int_json(&report.det_ib));
            out.insert("hk_ok".into(), json!(report.hk_ok));
            out.insert("oracle_ok".into(), json!(report.oracle_ok));
        }
        Mode::Sft => {
            let inv = doc.operand().invariants()?;
            let lim = crate::dirlimit::StationaryLimit::of_matrix(&doc.a)?;
            let limits = [
                lim.coker_one_minus_shift(),
                lim.ker_one_minus_shift()?,
                FGAbelianGroup::trivial(),
                FGAbelianGroup::trivial(),
            ];
            let h = inv.homology.degrees();
            let k = [inv.k0.clone(), inv.k1.clone()];
            let pair = doc.pair()?;
            let props = classify(&pair);
            let hk_ok =
                inv.k0.is_isomorphic(&h[0].direct_sum(&h[2])) && inv.k1.is_isomorphic(&h[1]);
            out.insert(
                "properties".into(),
                json!({
                    "minimal_pi_sufficient": props.minimal_pi_sufficient,
                    "effective_sufficient": props.effective_sufficient,
                    "unit_space_compact": true,
                }),
            );
            out.insert("H".into(), rendered(&h));
            out.insert("K".into(), rendered(&k));
            out.insert("homology".into(), structured(&h));
            out.insert("k_theory".into(), structured(&k));
            out.insert("homology_via_limits".into(), rendered(&limits));
            out.insert("det_I_minus_A".into(), int_json(&inv.det_ia));
            out.insert("hk_ok".into(), json!(hk_ok));
            out.insert(
                "oracle_ok".into(),
                json!(h.iter().zip(&limits).all(|(x, y)| x == y)),
            );
        }
    }
    Ok(Value::Object(out))
}

fn operand_json(doc: &InputDocument, inv: &OperandInvariants) -> Value {
    json!({
        "input": doc.to_json(),
        "H": rendered(&inv.homology.degrees()),
        "K": rendered(&[inv.k0.clone(), inv.k1.clone()]),
        "ker_I_minus_A": inv.ker_ia.to_string(),
        "ker_I_minus_B": inv.ker_ib.to_string(),
        "coker_I_minus_A": inv.coker_ia.to_string(),
        "det_I_minus_A": int_json(&inv.det_ia),
        "det_I_minus_B": int_json(&inv.det_ib),
    })
}

fn compare_json(left: &InputDocument, right: &InputDocument) -> Result<Value, CliError> {
    let r = compare(&left.operand(), &right.operand())?;
    let mut out = envelope("compare");
    out.insert("left".into(), operand_json(left, &r.left));
    out.insert("right".into(), operand_json(right, &r.right));
    out.insert("homology_isomorphic".into(), json!(r.homology_isomorphic));
    out.insert("k_theory_isomorphic".into(), json!(r.k_isomorphic));
    out.insert("k_theory_equal".into(), json!(r.k_theory_equal()));
    out.insert(
        "ker_I_minus_A_isomorphic".into(),
        json!(r.ker_ia_isomorphic),
    );
    out.insert(
        "ker_I_minus_B_isomorphic".into(),
        json!(r.ker_ib_isomorphic),
    );
    out.insert(
        "coker_I_minus_A_isomorphic".into(),
        json!(r.coker_ia_isomorphic),
    );
    out.insert("det_I_minus_A_equal".into(), json!(r.det_ia_equal));
    out.insert(
        "distinguishing_degrees".into(),
        json!(r.distinguishing_degrees()),
    );
    out.insert("distinguished".into(), json!(r.distinguished));
    out.insert("verdict".into(), json!(r.verdict()));
    Ok(Value::Object(out))
}

fn kappa_json(doc: &InputDocument, m: &str, path: &str) -> Result<Value, CliError> {
    let m: BigInt = m
        .trim()
        .parse()
        .map_err(|_| CliError::parse(format!("--m {:?} is not an integer", m)))?;
    let path: Path = path.parse()?;
    let (image, phi) = doc.pair()?.kappa_path(&m, &path)?;
    let mut out = envelope("kappa");
    out.insert("input".into(), doc.to_json());
    out.insert("m".into(), int_json(&m));
    out.insert("path".into(), json!(path.to_string()));
    out.insert("kappa".into(), json!(image.to_string()));
    out.insert("phi".into(), int_json(&phi));
    Ok(Value::Object(out))
}

fn parse_orders(s: &str, flag: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigInt>()
                .ok()
                .filter(|d| d.is_positive())
                .ok_or_else(|| {
                    CliError::parse(format!("{} entry {:?} is not a positive integer", flag, t))
                })
        })
        .collect()
}

fn realize_json(
    rank0: usize,
    rank1: usize,
    t0: &str,
    t1: &str,
) -> Result<Value, (CliError, Value)> {
    let orders0 = parse_orders(t0, "--t0").map_err(|e| (e, Value::Null))?;
    let orders1 = parse_orders(t1, "--t1").map_err(|e| (e, Value::Null))?;
    let target0 = FGAbelianGroup::new(rank0, orders0);
    let target1 = FGAbelianGroup::new(rank1, orders1);
    let mut out = envelope("realize");
    out.insert(
        "target".into(),
        json!({"K0": group_json(&target0), "K1": group_json(&target1)}),
    );
    match invariants::realize_groups(&target0, &target1) {
        Ok(r) => {
            out.insert("A".into(), matrix_json(r.pair.a()));
            out.insert("B".into(), matrix_json(r.pair.b()));
            out.insert("K".into(), rendered(&[r.k0.clone(), r.k1.clone()]));
            out.insert("verified".into(), json!(true));
            out.insert("properties".into(), json!(r.properties));
            Ok(Value::Object(out))
        }
        Err(e) => {
            let err = CliError::from(e);
            out.insert("verified".into(), json!(false));
            out.insert("unrealizable".into(), json!(err.code == EXIT_UNREALIZABLE));
            out.insert("error".into(), json!(err.message));
            Err((err, Value::Object(out)))
        }
    }
}

fn check_json(doc: &InputDocument, trials: u64, seed: u64) -> Result<(Value, bool), CliError> {
    let pair = doc.pair()?;
    let reports = check_pair(&pair, trials, seed)?;
    let all_passed = reports.iter().all(|r| r.passed());
    let mut out = envelope("check");
    out.insert("input".into(), doc.to_json());
    out.insert("trials".into(), json!(trials));
    out.insert("seed".into(), json!(seed));
    out.insert("pseudo_free".into(), json!(classify(&pair).pseudo_free));
    out.insert("laws".into(), json!(reports));
    out.insert("all_passed".into(), json!(all_passed));
    Ok((Value::Object(out), all_passed))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn failure(err: CliError, body: Value) -> Outcome {
    let body = if body.is_null() {
        let mut m = Map::new();
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("error".into(), json!(err.message));
        m.insert("exit_code".into(), json!(err.code));
        Value::Object(m)
    } else {
        body
    };
    Outcome {
        code: err.code,
        stdout: render(&body),
        stderr: format!("kep: {}\n", err.message),
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result: Result<(Value, i32), (CliError, Value)> = match cli.command {
        Command::Analyze { file } => load(&file, stdin)
            .and_then(|d| analyze_json(&d))
            .map(|v| (v, EXIT_OK))
            .map_err(|e| (e, Value::Null)),
        Command::Compare { left, right } => load(&left, stdin)
            .and_then(|l| Ok((l, load(&right, stdin)?)))
            .and_then(|(l, r)| compare_json(&l, &r))
            .map(|v| (v, EXIT_OK))
            .map_err(|e| (e, Value::Null)),
        Command::Kappa { file, m, path } => load(&file, stdin)
            .and_then(|d| kappa_json(&d, &m, &path))
            .map(|v| (v, EXIT_OK))
            .map_err(|e| (e, Value::Null)),
        Command::Realize {
            rank,
            rank0,
            rank1,
            t0,
            t1,
        } => realize_json(rank0.unwrap_or(rank), rank1.unwrap_or(rank), &t0, &t1)
            .map(|v| (v, EXIT_OK)),
        Command::Check { file, trials, seed } => load(&file, stdin)
            .and_then(|d| check_json(&d, trials, seed))
            .map(|(v, ok)| (v, if ok { EXIT_OK } else { EXIT_UNREALIZABLE }))
            .map_err(|e| (e, Value::Null)),
    };
    match result {
        Ok((v, code)) => Outcome {
            code,
            stdout: render(&v),
            stderr: String::new(),
        },
        Err((err, body)) => failure(err, body),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documents() {
        let d = parse_input(br#"{"mode":"katsura","n":1,"A":[[2]],"B":[[1]]}"#).unwrap();
        assert_eq!(d.mode, Mode::Katsura);
        let d = parse_input(br#"{"mode":"sft","n":2,"A":[[2,1],[1,2]]}"#).unwrap();
        assert_eq!(d.mode, Mode::Sft);
        assert!(d.b.is_none());
        let d =
            parse_input(br#"{"n":1,"A":[["123456789012345678901234567890"]],"B":[[1]]}"#).unwrap();
        assert_eq!(
            d.a[(0, 0)],
            "123456789012345678901234567890".parse().unwrap()
        );
        let d =
            parse_input(br#"{"n":1,"A":[[123456789012345678901234567890]],"B":[[1]]}"#).unwrap();
        assert_eq!(
            d.a[(0, 0)],
            "123456789012345678901234567890".parse().unwrap()
        );
    }

    #[test]
    fn rejects_documents() {
        let zero = parse_input(br#"{"mode":"katsura","n":1,"A":[[0]],"B":[[0]]}"#).unwrap_err();
        assert_eq!(zero.code, EXIT_VALIDATION);
        assert!(zero.message.contains("zero row"));
        assert_eq!(parse_input(b"{not json").unwrap_err().code, EXIT_PARSE);
        assert_eq!(
            parse_input(br#"{"n":1,"A":[[-1]],"B":[[1]]}"#)
                .unwrap_err()
                .code,
            EXIT_VALIDATION
        );
        assert_eq!(
            parse_input(br#"{"n":2,"A":[[1]],"B":[[1]]}"#)
                .unwrap_err()
                .code,
            EXIT_VALIDATION
        );
        assert_eq!(
            parse_input(br#"{"n":1,"A":[[1.5]],"B":[[1]]}"#)
                .unwrap_err()
                .code,
            EXIT_PARSE
        );
        assert_eq!(
            parse_input(br#"{"mode":"sft","n":1,"A":[[2]],"B":[[1]]}"#)
                .unwrap_err()
                .code,
            EXIT_VALIDATION
        );
    }

    #[test]
    fn integer_encoding() {
        assert_eq!(int_json(&BigInt::from(-7)), json!(-7));
        let big = BigInt::from(1u64 << 53);
        assert_eq!(int_json(&big), json!("9007199254740992"));
        assert_eq!(
            int_json(&(BigInt::from(1u64 << 53) - 1)),
            json!(9007199254740991i64)
        );
    }
}
