//! JSON and Markdown formats: state files, descriptors, reports, witness
//! files and the class atlas.
//!
//! Exact numbers are always strings (`"3"`, `"-1/2"`, `"1/3+2i"`) so no
//! value passes through a float. State files use 1-based indices:
//!
//! ```json
//! {"dims": [2, 2, 2],
//!  "entries": [{"i": 1, "j": 1, "k": 1, "re": "1", "im": "0"},
//!              {"i": 2, "j": 2, "k": 2, "re": "1"}]}
//! ```
//!
//! `im` may be omitted and defaults to zero.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::canonical::{Block, Canonical, Exactness};
use crate::classify::ClassDescriptor;
use crate::enumerate::ClassFamily;
use crate::error::{Error, Result};
use crate::linalg::scalar::parse_rational;
use crate::linalg::{ExactMatrix, GaussianRational as Q, Value};
use crate::moebius::ProjPoint;
use crate::state::{to_matrix_pair, IloTriple, MatrixPair, StateTensor};

/// Version tag carried by every machine-readable document.
pub const SCHEMA: &str = "1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: Vec<usize>,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    i: usize,
    j: usize,
    k: usize,
    re: String,
    #[serde(default = "zero_string")]
    im: String,
}

fn zero_string() -> String {
    "0".into()
}

fn parse_err(e: impl ToString) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_state(text: &str) -> Result<StateTensor> {
    let file: StateFile = serde_json::from_str(text).map_err(parse_err)?;
    let n = match file.dims.as_slice() {
        [2, a, b] if a == b => *a,
        other => return Err(Error::Parse(format!("dims must be [2, N, N], got {other:?}"))),
    };
    let mut entries = Vec::with_capacity(file.entries.len());
    for e in file.entries {
        let re = parse_rational(&e.re).map_err(parse_err)?;
        let im = parse_rational(&e.im).map_err(parse_err)?;
        entries.push(((e.i, e.j, e.k), Q::new(re, im)));
    }
    StateTensor::new(n, entries).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::Parse(msg),
        other => other,
    })
}

pub fn parse_state_file(path: &Path) -> Result<StateTensor> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_state(&text)
}

/// Reads a state file straight into matrix-pair form.
pub fn read_pair(path: &Path) -> Result<MatrixPair> {
    parse_state_file(path).map(|s| to_matrix_pair(&s))
}

pub fn state_to_json(s: &StateTensor) -> String {
    let file = StateFile {
        dims: vec![2, s.dim(), s.dim()],
        entries: s
            .entries()
            .map(|(&(i, j, k), v)| EntryJson { i, j, k, re: v.re.to_string(), im: v.im.to_string() })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("state serializes")
}

pub fn pair_to_json(m: &MatrixPair) -> String {
    state_to_json(&StateTensor::from_pair(m).expect("matrix pairs are nonzero"))
}

fn matrix_rows(m: &ExactMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<ExactMatrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| s.parse::<Q>().map_err(parse_err)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let n = parsed.len();
    if parsed.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("matrix must be square".into()));
    }
    Ok(ExactMatrix::from_rows(parsed))
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum PointJson {
    Exact { re: String, im: String },
    Approx { re: f64, im: f64, tol: f64 },
    Infinity,
}

impl From<&ProjPoint> for PointJson {
    fn from(p: &ProjPoint) -> Self {
        match p {
            ProjPoint::Infinity => PointJson::Infinity,
            ProjPoint::Finite(Value::Exact(q)) => PointJson::Exact { re: q.re.to_string(), im: q.im.to_string() },
            ProjPoint::Finite(Value::Approx(a)) => PointJson::Approx { re: a.re, im: a.im, tol: a.tol },
        }
    }
}

#[derive(Serialize)]
struct KeyEntryJson {
    point: PointJson,
    segre: Vec<usize>,
}

#[derive(Serialize)]
struct DescriptorJson {
    schema: &'static str,
    label: String,
    dim: usize,
    n: usize,
    l: usize,
    b_shape: Option<String>,
    config: Vec<KeyEntryJson>,
    param_count: usize,
    exact: bool,
}

impl From<&ClassDescriptor> for DescriptorJson {
    fn from(d: &ClassDescriptor) -> Self {
        DescriptorJson {
            schema: SCHEMA,
            label: d.label(),
            dim: d.dim,
            n: d.n,
            l: d.l,
            b_shape: d.b_shape.as_ref().map(ToString::to_string),
            config: d.config_key.entries().iter().map(|e| KeyEntryJson { point: (&e.point).into(), segre: e.segre.clone() }).collect(),
            param_count: d.param_count,
            exact: d.is_exact(),
        }
    }
}

pub fn descriptor_to_json(d: &ClassDescriptor) -> String {
    serde_json::to_string_pretty(&DescriptorJson::from(d)).expect("descriptor serializes")
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    t: Vec<Vec<String>>,
    p: Vec<Vec<String>>,
    q: Vec<Vec<String>>,
}

impl From<&IloTriple> for OperatorJson {
    fn from(op: &IloTriple) -> Self {
        OperatorJson { t: matrix_rows(op.t()), p: matrix_rows(op.p()), q: matrix_rows(op.q()) }
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorFile {
    schema: String,
    #[serde(flatten)]
    ops: OperatorJson,
}

/// Operator file: `{"schema": "1", "t": [[..]], "p": [[..]], "q": [[..]]}`.
pub fn operator_to_json(op: &IloTriple) -> String {
    serde_json::to_string_pretty(&OperatorFile { schema: SCHEMA.into(), ops: op.into() }).expect("operator serializes")
}

pub fn parse_operator(text: &str) -> Result<IloTriple> {
    let file: OperatorFile = serde_json::from_str(text).map_err(parse_err)?;
    IloTriple::new(parse_matrix(&file.ops.t)?, parse_matrix(&file.ops.p)?, parse_matrix(&file.ops.q)?).map_err(parse_err)
}

#[derive(Serialize)]
struct CanonicalJson {
    first: Vec<Vec<String>>,
    second: Vec<Vec<String>>,
    blocks: Vec<String>,
}

fn block_name(b: &Block) -> String {
    match b {
        Block::Jordan { value, size } => format!("J{size}({value})"),
        Block::Singular(bb) => bb.to_string(),
    }
}

#[derive(Serialize)]
struct WitnessJson {
    #[serde(flatten)]
    ops: OperatorJson,
    verified: &'static str,
    residual: Option<f64>,
}

#[derive(Serialize)]
struct ReportJson {
    schema: &'static str,
    descriptor: DescriptorJson,
    canonical: Option<CanonicalJson>,
    witness: Option<WitnessJson>,
    warnings: Vec<String>,
}

/// Full classification report. The witness is re-applied to `input` here,
/// so the status is never taken on trust.
pub fn report_to_json(input: &MatrixPair, descriptor: &ClassDescriptor, canonical: Option<&Canonical>, mut warnings: Vec<String>) -> String {
    let (canonical_json, witness_json) = match canonical {
        Some(c) => {
            warnings.extend(c.notes.iter().cloned());
            let (verified, residual) = match c.witness.verify(input, &c.pair) {
                Exactness::Exact => ("exact", None),
                Exactness::Approximate { residual } => ("approximate", Some(residual)),
            };
            (
                Some(CanonicalJson {
                    first: matrix_rows(&c.pair.first),
                    second: matrix_rows(&c.pair.second),
                    blocks: c.pair.blocks.iter().map(block_name).collect(),
                }),
                Some(WitnessJson { ops: (&c.witness.ops).into(), verified, residual }),
            )
        }
        None => (None, None),
    };
    let report = ReportJson { schema: SCHEMA, descriptor: descriptor.into(), canonical: canonical_json, witness: witness_json, warnings };
    serde_json::to_string_pretty(&report).expect("report serializes")
}

/// One-screen summary of a classification.
pub fn report_table(descriptor: &ClassDescriptor, canonical: Option<&Canonical>) -> String {
    let mut out = String::new();
    let row = |out: &mut String, k: &str, v: &dyn std::fmt::Display| writeln!(out, "{k:<12} {v}").unwrap();
    row(&mut out, "class", &descriptor.label());
    row(&mut out, "N", &descriptor.dim);
    row(&mut out, "(n, l)", &format!("({}, {})", descriptor.n, descriptor.l));
    if let Some(b) = &descriptor.b_shape {
        row(&mut out, "B blocks", b);
    }
    row(&mut out, "points", &descriptor.config_key);
    row(&mut out, "parameters", &descriptor.param_count);
    if let Some(c) = canonical {
        let blocks: Vec<String> = c.pair.blocks.iter().map(block_name).collect();
        row(&mut out, "blocks", &blocks.join(" + "));
        let status = match c.witness.exactness {
            Exactness::Exact => "exact".to_string(),
            Exactness::Approximate { residual } => format!("approximate (residual {residual:.3e})"),
        };
        row(&mut out, "witness", &status);
    }
    out
}

#[derive(Serialize)]
struct PointPatternJson {
    at_zero: bool,
    segre: Vec<usize>,
}

#[derive(Serialize)]
struct FamilyJson {
    set: String,
    n: usize,
    l: usize,
    b_shape: Option<String>,
    points: Vec<PointPatternJson>,
    first: String,
    second: String,
    param_count: usize,
}

pub fn atlas_to_json(families: &[ClassFamily]) -> String {
    let rows: Vec<FamilyJson> = families
        .iter()
        .map(|f| FamilyJson {
            set: f.set_name(),
            n: f.n,
            l: f.l,
            b_shape: f.b_shape.as_ref().map(ToString::to_string),
            points: f.points.iter().map(|p| PointPatternJson { at_zero: p.at_zero, segre: p.segre.clone() }).collect(),
            first: f.representative.render_first(),
            second: f.representative.render_second(),
            param_count: f.param_count,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("atlas serializes")
}

fn representative_cell(f: &ClassFamily) -> String {
    let r = &f.representative;
    if f.b_shape.is_none() {
        format!("(E, {})", r.render_second())
    } else {
        format!("({}, {})", r.render_first(), r.render_second())
    }
}

/// One row per family: set, representative, parameter count.
pub fn atlas_to_markdown(families: &[ClassFamily]) -> String {
    let mut out = String::from("| set | representative | parameters |\n|---|---|---|\n");
    for f in families {
        writeln!(out, "| {} | `{}` | {} |", f.set_name(), representative_cell(f), f.param_count).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::samples;

    const GHZ: &str = r#"{"dims":[2,2,2],"entries":[{"i":1,"j":1,"k":1,"re":"1","im":"0"},{"i":2,"j":2,"k":2,"re":"1","im":"0"}]}"#;

    #[test]
    fn ghz_file_parses() {
        let s = parse_state(GHZ).unwrap();
        assert_eq!(to_matrix_pair(&s), samples::ghz());
    }

    #[test]
    fn thirds_round_trip() {
        let text = r#"{"dims":[2,2,2],"entries":[{"i":1,"j":1,"k":1,"re":"1/3"},{"i":2,"j":2,"k":2,"re":"1","im":"-2/7"}]}"#;
        let s = parse_state(text).unwrap();
        assert_eq!(s.entry(1, 1, 1), Q::from_ratio(1, 3));
        assert_eq!(parse_state(&state_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn bad_inputs_are_parse_errors() {
        let dup = r#"{"dims":[2,2,2],"entries":[{"i":1,"j":1,"k":1,"re":"1"},{"i":1,"j":1,"k":1,"re":"2"}]}"#;
        let range = r#"{"dims":[2,2,2],"entries":[{"i":3,"j":1,"k":1,"re":"1"}]}"#;
        let zero = r#"{"dims":[2,2,2],"entries":[{"i":1,"j":1,"k":1,"re":"0"}]}"#;
        let rational = r#"{"dims":[2,2,2],"entries":[{"i":1,"j":1,"k":1,"re":"1/0"}]}"#;
        let dims = r#"{"dims":[2,2,3],"entries":[]}"#;
        for text in [dup, range, zero, rational, dims, "{", "[]"] {
            let err = parse_state(text).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}");
        }
    }

    #[test]
    fn operator_round_trip() {
        let op = crate::state::random_ilo(3, 5);
        assert_eq!(parse_operator(&operator_to_json(&op)).unwrap(), op);
    }

    #[test]
    fn descriptor_json_field_order() {
        let d = crate::classify::descriptor_of(&samples::w(), 1e-9).unwrap();
        let text = descriptor_to_json(&d);
        let keys = ["schema", "label", "dim", "n", "l", "b_shape", "config", "param_count", "exact"];
        let at: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\":")).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]), "{text}");
        assert!(text.contains("\"W-type\""));
    }
}
