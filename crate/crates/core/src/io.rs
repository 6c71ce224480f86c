//! JSON interchange documents.
//!
//! A document looks like
//!
//! ```json
//! {
//!   "kind": "hadamard",
//!   "index_base": 1,
//!   "dims": { "n": 2 },
//!   "data": [[[1.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [-1.0, 0.0]]]
//! }
//! ```
//!
//! Scalars are `[re, im]` pairs or symbolic tokens such as `"-i/sqrt2"`.
//! Hadamard data is a matrix, QLS data is `data[a][b][i]`, UEB data is a list
//! of matrices and Latin data holds symbols `1..=n`. Controlled families carry
//! `base_kind`, `control_dims` and a list of `items`, each with a 1-based
//! `control_index` and its own `data`. Saving always writes numeric pairs.

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::biunitarity::BiunitaryReport;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Tolerance, C64};
use crate::structures::{
    qls_from_latin, verify_family, BaseKind, Candidate, ControlledFamily, HadamardMatrix, LatinSquare, QlsGrid,
    QuantumLatinSquare, Structure, UnitaryErrorBasis,
};

/// A structure read from or destined for a file. Contents are shape-checked
/// but not verified.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Hadamard(CMatrix),
    Qls(QlsGrid),
    Ueb { elements: Vec<CMatrix>, label_dims: Vec<usize> },
    /// Symbols `0..n`.
    Latin(Vec<Vec<usize>>),
    Controlled { control_dims: Vec<usize>, items: Vec<Candidate> },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Hadamard(_) => "hadamard",
            Document::Qls(_) => "qls",
            Document::Ueb { .. } => "ueb",
            Document::Latin(_) => "latin",
            Document::Controlled { .. } => "controlled",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Document::Hadamard(m) => m.rows(),
            Document::Qls(g) => g.len(),
            Document::Ueb { elements, .. } => elements.first().map_or(0, CMatrix::rows),
            Document::Latin(rows) => rows.len(),
            Document::Controlled { items, .. } => items.first().map_or(0, Candidate::dimension),
        }
    }

    /// The base structure, for non-controlled Hadamard, QLS and UEB documents.
    pub fn candidate(&self) -> Option<Candidate> {
        match self {
            Document::Hadamard(m) => Some(Candidate::Hadamard(m.clone())),
            Document::Qls(g) => Some(Candidate::Qls(g.clone())),
            Document::Ueb { elements, .. } => Some(Candidate::Ueb(elements.clone())),
            _ => None,
        }
    }

    /// Runs the verifier for the document's kind. Latin squares are checked
    /// through their associated quantum Latin square.
    pub fn verify(&self, tol: &Tolerance) -> Result<BiunitaryReport> {
        Ok(match self {
            Document::Latin(_) => {
                let latin = self.latin()?;
                let mut report = qls_from_latin(&latin).to_candidate().verify(tol);
                report.kind = "latin".into();
                report
            }
            Document::Controlled { control_dims, items } => verify_family(control_dims, items, tol),
            _ => self.candidate().expect("base document").verify(tol),
        })
    }

    pub fn hadamard(&self, tol: &Tolerance) -> Result<HadamardMatrix> {
        match self {
            Document::Hadamard(m) => HadamardMatrix::new(m.clone(), tol),
            _ => Err(self.wrong_kind("hadamard")),
        }
    }

    /// A QLS document, or a Latin square promoted to its basis-vector QLS.
    pub fn qls(&self, tol: &Tolerance) -> Result<QuantumLatinSquare> {
        match self {
            Document::Qls(g) => QuantumLatinSquare::from_grid(g, tol),
            Document::Latin(_) => Ok(qls_from_latin(&self.latin()?)),
            _ => Err(self.wrong_kind("qls")),
        }
    }

    pub fn ueb(&self, tol: &Tolerance) -> Result<UnitaryErrorBasis> {
        match self {
            Document::Ueb { elements, label_dims } => {
                UnitaryErrorBasis::new(elements.clone(), tol)?.with_label_dims(label_dims.clone())
            }
            _ => Err(self.wrong_kind("ueb")),
        }
    }

    pub fn latin(&self) -> Result<LatinSquare> {
        match self {
            Document::Latin(rows) => LatinSquare::new(rows),
            _ => Err(self.wrong_kind("latin")),
        }
    }

    /// A controlled family whose items verify as `T`.
    pub fn family<T: Structure>(&self, tol: &Tolerance) -> Result<ControlledFamily<T>> {
        match self {
            Document::Controlled { control_dims, items } => {
                let typed = items
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        T::from_candidate(c, tol).map_err(|e| Error::InvalidInput(format!("item {}: {e}", k + 1)))
                    })
                    .collect::<Result<Vec<T>>>()?;
                ControlledFamily::new(control_dims.clone(), typed)
            }
            _ => Err(self.wrong_kind("controlled")),
        }
    }

    pub fn from_family<T: Structure>(family: &ControlledFamily<T>) -> Self {
        Document::Controlled {
            control_dims: family.control_dims().to_vec(),
            items: family.items().iter().map(Structure::to_candidate).collect(),
        }
    }

    fn wrong_kind(&self, expected: &str) -> Error {
        Error::InvalidInput(format!("expected a {expected} document, got {}", self.kind()))
    }
}

impl From<&HadamardMatrix> for Document {
    fn from(h: &HadamardMatrix) -> Self {
        Document::Hadamard(h.matrix().clone())
    }
}

impl From<&QuantumLatinSquare> for Document {
    fn from(q: &QuantumLatinSquare) -> Self {
        Document::Qls(q.to_grid())
    }
}

impl From<&UnitaryErrorBasis> for Document {
    fn from(u: &UnitaryErrorBasis) -> Self {
        Document::Ueb {
            elements: u.elements().to_vec(),
            label_dims: u.label_dims().to_vec(),
        }
    }
}

impl From<&LatinSquare> for Document {
    fn from(l: &LatinSquare) -> Self {
        Document::Latin(l.to_rows())
    }
}

impl From<Candidate> for Document {
    fn from(c: Candidate) -> Self {
        match c {
            Candidate::Hadamard(m) => Document::Hadamard(m),
            Candidate::Qls(g) => Document::Qls(g),
            Candidate::Ueb(elements) => {
                let count = elements.len();
                Document::Ueb {
                    elements,
                    label_dims: vec![count],
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Dims {
    n: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Item {
    control_index: Vec<usize>,
    data: Value,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    kind: String,
    index_base: usize,
    dims: Dims,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    control_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    data: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    items: Option<Vec<Item>>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn shape_err(path: &str, message: impl std::fmt::Display) -> Error {
    Error::DimensionMismatch(format!("{path}: {message}"))
}

/// Evaluates a symbolic scalar token.
pub fn eval_token(token: &str) -> Option<C64> {
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let r5 = 1.0 / 5f64.sqrt();
    let z = match body {
        "0" if !negative => C64::new(0.0, 0.0),
        "1" => C64::new(1.0, 0.0),
        "i" => C64::new(0.0, 1.0),
        "1/sqrt2" => C64::new(FRAC_1_SQRT_2, 0.0),
        "i/sqrt2" => C64::new(0.0, FRAC_1_SQRT_2),
        "1/sqrt5" => C64::new(r5, 0.0),
        "2/sqrt5" => C64::new(2.0 * r5, 0.0),
        "i/sqrt5" => C64::new(0.0, r5),
        "2i/sqrt5" => C64::new(0.0, 2.0 * r5),
        _ => return None,
    };
    Some(if negative { -z } else { z })
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value]> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| parse_err(path, "expected an array"))
}

fn array_of_len<'a>(v: &'a Value, len: usize, path: &str) -> Result<&'a [Value]> {
    let a = as_array(v, path)?;
    if a.len() != len {
        return Err(shape_err(path, format!("expected {len} entries, found {}", a.len())));
    }
    Ok(a)
}

fn parse_scalar(v: &Value, path: &str) -> Result<C64> {
    let z = match v {
        Value::String(token) => eval_token(token).ok_or_else(|| Error::UnknownToken {
            token: token.clone(),
            location: path.to_string(),
        })?,
        Value::Array(pair) if pair.len() == 2 => {
            let part = |k: usize| {
                pair[k]
                    .as_f64()
                    .ok_or_else(|| parse_err(format!("{path}[{k}]"), "expected a number"))
            };
            C64::new(part(0)?, part(1)?)
        }
        Value::Number(x) => C64::new(x.as_f64().ok_or_else(|| parse_err(path, "expected a number"))?, 0.0),
        _ => return Err(parse_err(path, "expected [re, im] or a scalar token")),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(parse_err(path, "non-finite scalar"));
    }
    Ok(z)
}

fn parse_matrix(v: &Value, n: usize, path: &str) -> Result<CMatrix> {
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in array_of_len(v, n, path)?.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        for (j, x) in array_of_len(row, n, &rp)?.iter().enumerate() {
            data.push(parse_scalar(x, &format!("{rp}[{j}]"))?);
        }
    }
    CMatrix::new(n, n, data)
}

fn parse_grid(v: &Value, n: usize, path: &str) -> Result<QlsGrid> {
    array_of_len(v, n, path)?
        .iter()
        .enumerate()
        .map(|(a, row)| {
            let rp = format!("{path}[{a}]");
            array_of_len(row, n, &rp)?
                .iter()
                .enumerate()
                .map(|(b, vec)| {
                    let vp = format!("{rp}[{b}]");
                    array_of_len(vec, n, &vp)?
                        .iter()
                        .enumerate()
                        .map(|(i, x)| parse_scalar(x, &format!("{vp}[{i}]")))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn parse_ueb(v: &Value, n: usize, path: &str) -> Result<Vec<CMatrix>> {
    array_of_len(v, n * n, path)?
        .iter()
        .enumerate()
        .map(|(k, m)| parse_matrix(m, n, &format!("{path}[{k}]")))
        .collect()
}

fn parse_latin(v: &Value, n: usize, path: &str) -> Result<Vec<Vec<usize>>> {
    array_of_len(v, n, path)?
        .iter()
        .enumerate()
        .map(|(a, row)| {
            let rp = format!("{path}[{a}]");
            array_of_len(row, n, &rp)?
                .iter()
                .enumerate()
                .map(|(b, x)| {
                    let cp = format!("{rp}[{b}]");
                    match x.as_u64() {
                        Some(s) if s >= 1 && s as usize <= n => Ok(s as usize - 1),
                        _ => Err(parse_err(cp, format!("expected a symbol in 1..={n}"))),
                    }
                })
                .collect()
        })
        .collect()
}

fn parse_candidate(kind: BaseKind, v: &Value, n: usize, path: &str) -> Result<Candidate> {
    Ok(match kind {
        BaseKind::Hadamard => Candidate::Hadamard(parse_matrix(v, n, path)?),
        BaseKind::Qls => Candidate::Qls(parse_grid(v, n, path)?),
        BaseKind::Ueb => Candidate::Ueb(parse_ueb(v, n, path)?),
    })
}

fn require_data(raw: &Raw) -> Result<&Value> {
    raw.data.as_ref().ok_or_else(|| parse_err("data", "missing field"))
}

fn reject_field(present: bool, field: &str, kind: &str) -> Result<()> {
    if present {
        Err(parse_err(field, format!("not allowed for kind {kind}")))
    } else {
        Ok(())
    }
}

fn from_raw(raw: Raw) -> Result<Document> {
    if raw.index_base != 1 {
        return Err(parse_err("index_base", format!("must be 1, found {}", raw.index_base)));
    }
    let n = raw.dims.n;
    if n == 0 {
        return Err(parse_err("dims.n", "must be positive"));
    }
    let kind = raw.kind.as_str();
    if kind != "controlled" {
        reject_field(raw.base_kind.is_some(), "base_kind", kind)?;
        reject_field(raw.control_dims.is_some(), "control_dims", kind)?;
        reject_field(raw.items.is_some(), "items", kind)?;
    }
    if kind != "ueb" {
        reject_field(raw.label_dims.is_some(), "label_dims", kind)?;
    }
    match kind {
        "hadamard" => Ok(Document::Hadamard(parse_matrix(require_data(&raw)?, n, "data")?)),
        "qls" => Ok(Document::Qls(parse_grid(require_data(&raw)?, n, "data")?)),
        "latin" => Ok(Document::Latin(parse_latin(require_data(&raw)?, n, "data")?)),
        "ueb" => {
            let elements = parse_ueb(require_data(&raw)?, n, "data")?;
            let label_dims = raw.label_dims.unwrap_or_else(|| vec![n * n]);
            if label_dims.is_empty() || label_dims.iter().product::<usize>() != n * n {
                return Err(shape_err("label_dims", format!("{label_dims:?} does not index {} elements", n * n)));
            }
            Ok(Document::Ueb { elements, label_dims })
        }
        "controlled" => {
            reject_field(raw.data.is_some(), "data", kind)?;
            let base_name = raw.base_kind.as_deref().ok_or_else(|| parse_err("base_kind", "missing field"))?;
            let base = BaseKind::parse(base_name)
                .ok_or_else(|| parse_err("base_kind", format!("unknown base kind {base_name:?}")))?;
            let control_dims = raw.control_dims.ok_or_else(|| parse_err("control_dims", "missing field"))?;
            if control_dims.is_empty() || control_dims.contains(&0) {
                return Err(parse_err("control_dims", format!("invalid control dimensions {control_dims:?}")));
            }
            let raw_items = raw.items.ok_or_else(|| parse_err("items", "missing field"))?;
            let count: usize = control_dims.iter().product();
            let mut slots: Vec<Option<Candidate>> = vec![None; count];
            for (k, item) in raw_items.iter().enumerate() {
                let ip = format!("items[{k}]");
                let idx = &item.control_index;
                if idx.len() != control_dims.len() {
                    return Err(shape_err(
                        &format!("{ip}.control_index"),
                        format!("expected {} indices, found {}", control_dims.len(), idx.len()),
                    ));
                }
                let mut flat = 0;
                for (&i, &d) in idx.iter().zip(&control_dims) {
                    if i == 0 || i > d {
                        return Err(parse_err(format!("{ip}.control_index"), format!("index {i} outside 1..={d}")));
                    }
                    flat = flat * d + (i - 1);
                }
                if slots[flat].is_some() {
                    return Err(parse_err(format!("{ip}.control_index"), format!("duplicate control index {idx:?}")));
                }
                slots[flat] = Some(parse_candidate(base, &item.data, n, &format!("{ip}.data"))?);
            }
            let items = slots
                .into_iter()
                .enumerate()
                .map(|(k, s)| s.ok_or_else(|| shape_err("items", format!("no item for control position {}", k + 1))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Document::Controlled { control_dims, items })
        }
        other => Err(parse_err("kind", format!("unknown kind {other:?}"))),
    }
}

fn scalar_value(z: C64) -> Result<Value> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput("cannot serialize a non-finite scalar".into()));
    }
    Ok(Value::Array(vec![z.re.into(), z.im.into()]))
}

fn matrix_value(m: &CMatrix) -> Result<Value> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&z| scalar_value(z)).collect::<Result<Vec<_>>>().map(Value::Array))
        .collect::<Result<Vec<_>>>()
        .map(Value::Array)
}

fn grid_value(g: &QlsGrid) -> Result<Value> {
    g.iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(|&z| scalar_value(z)).collect::<Result<Vec<_>>>().map(Value::Array))
                .collect::<Result<Vec<_>>>()
                .map(Value::Array)
        })
        .collect::<Result<Vec<_>>>()
        .map(Value::Array)
}

fn ueb_value(els: &[CMatrix]) -> Result<Value> {
    els.iter().map(matrix_value).collect::<Result<Vec<_>>>().map(Value::Array)
}

fn candidate_value(c: &Candidate) -> Result<Value> {
    match c {
        Candidate::Hadamard(m) => matrix_value(m),
        Candidate::Qls(g) => grid_value(g),
        Candidate::Ueb(els) => ueb_value(els),
    }
}

fn to_raw(doc: &Document) -> Result<Raw> {
    let mut raw = Raw {
        kind: doc.kind().to_string(),
        index_base: 1,
        dims: Dims { n: doc.dimension() },
        label_dims: None,
        base_kind: None,
        control_dims: None,
        data: None,
        items: None,
    };
    match doc {
        Document::Hadamard(m) => raw.data = Some(matrix_value(m)?),
        Document::Qls(g) => raw.data = Some(grid_value(g)?),
        Document::Ueb { elements, label_dims } => {
            raw.label_dims = Some(label_dims.clone());
            raw.data = Some(ueb_value(elements)?);
        }
        Document::Latin(rows) => {
            raw.data = Some(Value::Array(
                rows.iter()
                    .map(|r| Value::Array(r.iter().map(|&s| (s + 1).into()).collect()))
                    .collect(),
            ));
        }
        Document::Controlled { control_dims, items } => {
            let base = items
                .first()
                .ok_or_else(|| Error::InvalidInput("controlled family without items".into()))?;
            raw.base_kind = Some(base.kind().name().to_string());
            raw.control_dims = Some(control_dims.clone());
            let mut out = Vec::with_capacity(items.len());
            for (k, item) in items.iter().enumerate() {
                let mut rest = k;
                let mut control_index = vec![0; control_dims.len()];
                for (slot, &d) in control_index.iter_mut().zip(control_dims).rev() {
                    *slot = rest % d + 1;
                    rest /= d;
                }
                out.push(Item {
                    control_index,
                    data: candidate_value(item)?,
                });
            }
            raw.items = Some(out);
        }
    }
    Ok(raw)
}

/// Parses a document from JSON text.
pub fn from_json_str(text: &str) -> Result<Document> {
    let raw: Raw = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    from_raw(raw)
}

/// Renders a document as JSON, one matrix row or QLS vector per line.
pub fn to_json_string(doc: &Document) -> Result<String> {
    let value = serde_json::to_value(to_raw(doc)?).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    Ok(out)
}

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(a) => 1 + a.iter().map(depth).max().unwrap_or(0),
        Value::Object(o) => 1 + o.values().map(depth).max().unwrap_or(0),
        _ => 0,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(a) if depth(v) > 2 => {
            out.push_str("[\n");
            for (k, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(o) if depth(v) > 1 => {
            out.push_str("{\n");
            for (k, (key, x)) in o.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    from_json_str(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

pub fn save(doc: &Document, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json_string(doc)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{cyclic_latin, fourier, pauli_ueb};

    fn bits(m: &CMatrix) -> Vec<(u64, u64)> {
        m.as_slice().iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect()
    }

    #[test]
    fn tokens_cover_the_alphabet() {
        assert_eq!(eval_token("-i"), Some(C64::new(0.0, -1.0)));
        assert_eq!(eval_token("2i/sqrt5").unwrap().im, 2.0 / 5f64.sqrt());
        assert_eq!(eval_token("-1/sqrt2").unwrap().re, -FRAC_1_SQRT_2);
        for bad in ["-0", "3", "1/sqrt3", "", "i/2"] {
            assert_eq!(eval_token(bad), None, "{bad}");
        }
    }

    #[test]
    fn fourier_round_trip_is_bit_exact() {
        let f = fourier(3).unwrap();
        let text = to_json_string(&Document::from(&f)).unwrap();
        match from_json_str(&text).unwrap() {
            Document::Hadamard(m) => assert_eq!(bits(&m), bits(f.matrix())),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn latin_is_written_one_based() {
        let doc = Document::from(&cyclic_latin(2).unwrap());
        let text = to_json_string(&doc).unwrap();
        assert!(text.contains("[[1,2],[2,1]]"), "{text}");
        assert_eq!(from_json_str(&text).unwrap(), doc);
    }

    #[test]
    fn controlled_round_trip() {
        let fam = ControlledFamily::constant(vec![2, 3], pauli_ueb(2).unwrap()).unwrap();
        let doc = Document::from_family(&fam);
        let back = from_json_str(&to_json_string(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
        let typed: ControlledFamily<UnitaryErrorBasis> = back.family(&Tolerance::default()).unwrap();
        assert_eq!(typed.control_dims(), &[2, 3]);
    }

    #[test]
    fn malformed_dims_report_location() {
        let text = "{\n  \"kind\": \"hadamard\",\n  \"index_base\": 1,\n  \"dims\": { \"n\": \"two\" },\n  \"data\": []\n}";
        match from_json_str(text) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 4"), "{location}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_and_token_errors() {
        let short = r#"{"kind":"hadamard","index_base":1,"dims":{"n":2},"data":[["1","1"]]}"#;
        assert!(matches!(from_json_str(short), Err(Error::DimensionMismatch(_))));
        let token = r#"{"kind":"hadamard","index_base":1,"dims":{"n":1},"data":[["1/sqrt7"]]}"#;
        match from_json_str(token) {
            Err(Error::UnknownToken { token, location }) => {
                assert_eq!(token, "1/sqrt7");
                assert_eq!(location, "data[0][0]");
            }
            other => panic!("unexpected {other:?}"),
        }
        let base = r#"{"kind":"hadamard","index_base":0,"dims":{"n":1},"data":[["1"]]}"#;
        assert!(matches!(from_json_str(base), Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_control_item_is_reported() {
        let text = r#"{"kind":"controlled","index_base":1,"dims":{"n":1},"base_kind":"hadamard",
            "control_dims":[2],"items":[{"control_index":[1],"data":[["1"]]}]}"#;
        assert!(matches!(from_json_str(text), Err(Error::DimensionMismatch(_))));
    }
}
