//! The bundle document: a JSON object with string rationals and
//! image-major matrices, plus a canonical text layout.
//!
//! Every matrix is stored as one row per domain basis element, holding the
//! coefficients of that element's image. `delta` is therefore `n` rows of
//! `n²` entries, `alpha` row `i` is `α(e_i)`, `mu` is `n²` rows of `n`.

use std::fmt;

use homcoder_core::{parse_scalar, Bundle, LinMap, ModuleData, Scalar, Side, TensorSpace};
use serde_json::{Map, Value};

pub const FORMAT_VERSION: &str = "1";

const TOP_LEVEL: [&str; 7] = [
    "dimension",
    "flavor",
    "format_version",
    "lambda",
    "matrices",
    "metadata",
    "module_dimension",
];

const COALGEBRA_FLAVORS: [&str; 4] = ["lie", "coassociative", "pre_lie", "unchecked"];
const ALGEBRA_FLAVORS: [&str; 3] = ["lie", "associative", "unchecked"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Version,
    MissingField,
    UnknownField,
    MalformedRational,
    Shape,
    UnknownFlavor,
}

/// A parse failure, located by field path and, where possible, line.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub field: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

/// A parsed bundle file: the structure itself and its free-form metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub bundle: Bundle,
    pub metadata: Map<String, Value>,
}

impl Document {
    pub fn new(bundle: Bundle) -> Self {
        Self {
            bundle,
            metadata: Map::new(),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
}

impl Parser<'_> {
    fn error(
        &self,
        kind: ParseErrorKind,
        path: &[&str],
        token: Option<&str>,
        message: String,
    ) -> ParseError {
        ParseError {
            kind,
            field: path.join("."),
            line: locate(self.text, path, token),
            message,
        }
    }
}

/// Line of `token` (or of the last key in `path`) found by scanning for the
/// keys of `path` in order.
fn locate(text: &str, path: &[&str], token: Option<&str>) -> Option<usize> {
    let mut at = 0;
    for key in path {
        let quoted = format!("\"{}\"", key.split('[').next().unwrap_or(key));
        at += text[at..].find(&quoted)?;
    }
    if let Some(token) = token {
        let quoted = format!("\"{token}\"");
        at += text[at..].find(&quoted).unwrap_or(0);
    }
    Some(text[..at].matches('\n').count() + 1)
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError {
        kind: ParseErrorKind::Syntax,
        field: "document".into(),
        line: Some(e.line()),
        message: e.to_string(),
    })?;
    let p = Parser { text };
    let Value::Object(top) = value else {
        return Err(p.error(
            ParseErrorKind::Syntax,
            &[],
            None,
            "expected a JSON object".into(),
        ));
    };
    for key in top.keys() {
        if !TOP_LEVEL.contains(&key.as_str()) {
            return Err(p.error(
                ParseErrorKind::UnknownField,
                &[key],
                None,
                "unknown field".into(),
            ));
        }
    }
    match top.get("format_version") {
        Some(Value::String(v)) if v == FORMAT_VERSION => {}
        Some(other) => {
            return Err(p.error(
                ParseErrorKind::Version,
                &["format_version"],
                None,
                format!("unsupported format version {other}, expected \"{FORMAT_VERSION}\""),
            ))
        }
        None => return Err(missing(&p, "format_version")),
    }
    let n = dimension(&p, &top, "dimension")?.ok_or_else(|| missing(&p, "dimension"))?;
    let m = dimension(&p, &top, "module_dimension")?;
    let flavor = match top.get("flavor") {
        Some(Value::String(f)) => f.clone(),
        Some(_) => {
            return Err(p.error(
                ParseErrorKind::Syntax,
                &["flavor"],
                None,
                "expected a string".into(),
            ))
        }
        None => return Err(missing(&p, "flavor")),
    };
    let lambda = match top.get("lambda") {
        None => None,
        Some(Value::String(s)) => Some(rational(&p, &["lambda"], s)?),
        Some(_) => {
            return Err(p.error(
                ParseErrorKind::MalformedRational,
                &["lambda"],
                None,
                "rationals must be strings".into(),
            ))
        }
    };
    let metadata = match top.get("metadata") {
        None => Map::new(),
        Some(Value::Object(meta)) => meta.clone(),
        Some(_) => {
            return Err(p.error(
                ParseErrorKind::Syntax,
                &["metadata"],
                None,
                "expected an object".into(),
            ))
        }
    };
    let matrices = match top.get("matrices") {
        Some(Value::Object(mats)) => mats,
        Some(_) => {
            return Err(p.error(
                ParseErrorKind::Syntax,
                &["matrices"],
                None,
                "expected an object".into(),
            ))
        }
        None => return Err(missing(&p, "matrices")),
    };

    let coalgebra = matrices.contains_key("delta");
    if coalgebra == matrices.contains_key("mu") {
        return Err(p.error(
            ParseErrorKind::MissingField,
            &["matrices"],
            None,
            "exactly one of `delta` and `mu` is required".into(),
        ));
    }
    let known: &[&str] = if coalgebra {
        &COALGEBRA_FLAVORS
    } else {
        &ALGEBRA_FLAVORS
    };
    if !known.contains(&flavor.as_str()) {
        return Err(p.error(
            ParseErrorKind::UnknownFlavor,
            &["flavor"],
            None,
            format!(
                "unknown flavor `{flavor}`; expected one of {}",
                known.join(", ")
            ),
        ));
    }

    let names: &[&str] = if coalgebra {
        &["delta", "alpha", "phi", "R", "T", "rho", "beta", "phi_m"]
    } else {
        &["mu", "alpha", "phi", "action", "a_op", "phi_v"]
    };
    for key in matrices.keys() {
        if !names.contains(&key.as_str()) {
            return Err(p.error(
                ParseErrorKind::UnknownField,
                &["matrices", key],
                None,
                "unknown matrix for this side".into(),
            ));
        }
    }

    let line = TensorSpace::power(n, 1);
    let square = |name: &str| -> Result<Option<LinMap>, ParseError> {
        matrix(&p, matrices, name, &line, &line)
    };
    let side = if coalgebra {
        let delta =
            matrix(&p, matrices, "delta", &line, &TensorSpace::power(n, 2))?.expect("present");
        Side::Coalgebra { delta }
    } else {
        let mu = matrix(&p, matrices, "mu", &TensorSpace::power(n, 2), &line)?.expect("present");
        Side::Algebra { mu }
    };
    let (structure_key, twist_key, derivation_key) = if coalgebra {
        ("rho", "beta", "phi_m")
    } else {
        ("action", "a_op", "phi_v")
    };
    let module_keys = [structure_key, twist_key, derivation_key];
    let module = match m {
        None => {
            if let Some(k) = module_keys.iter().find(|k| matrices.contains_key(**k)) {
                return Err(p.error(
                    ParseErrorKind::MissingField,
                    &["module_dimension"],
                    None,
                    format!("`{k}` requires module_dimension"),
                ));
            }
            None
        }
        Some(m) => {
            let mspace = TensorSpace::power(m, 1);
            let pair_space = TensorSpace::from_factors(vec![n, m]);
            let structure = if coalgebra {
                matrix(&p, matrices, structure_key, &mspace, &pair_space)?
            } else {
                matrix(&p, matrices, structure_key, &pair_space, &mspace)?
            };
            let structure = structure.ok_or_else(|| missing_matrix(&p, structure_key))?;
            let twist = matrix(&p, matrices, twist_key, &mspace, &mspace)?
                .ok_or_else(|| missing_matrix(&p, twist_key))?;
            let derivation = matrix(&p, matrices, derivation_key, &mspace, &mspace)?;
            Some(ModuleData {
                dim: m,
                structure,
                twist,
                derivation,
            })
        }
    };
    let bundle = Bundle {
        dimension: n,
        flavor,
        side,
        alpha: square("alpha")?,
        phi: square("phi")?,
        r: square("R")?,
        t: square("T")?,
        lambda,
        module,
    };
    Ok(Document { bundle, metadata })
}

fn missing(p: &Parser<'_>, field: &str) -> ParseError {
    p.error(
        ParseErrorKind::MissingField,
        &[field],
        None,
        "required field is missing".into(),
    )
}

fn missing_matrix(p: &Parser<'_>, name: &str) -> ParseError {
    p.error(
        ParseErrorKind::MissingField,
        &["matrices", name],
        None,
        "required when module_dimension is given".into(),
    )
}

fn dimension(
    p: &Parser<'_>,
    top: &Map<String, Value>,
    key: &str,
) -> Result<Option<usize>, ParseError> {
    match top.get(key) {
        None => Ok(None),
        Some(v) => match v.as_u64() {
            Some(d) if d > 0 => Ok(Some(d as usize)),
            _ => Err(p.error(
                ParseErrorKind::Shape,
                &[key],
                None,
                format!("expected a positive integer, got {v}"),
            )),
        },
    }
}

fn rational(p: &Parser<'_>, path: &[&str], text: &str) -> Result<Scalar, ParseError> {
    parse_scalar(text).ok_or_else(|| {
        p.error(
            ParseErrorKind::MalformedRational,
            path,
            Some(text),
            format!("malformed rational \"{text}\"; expected \"p/q\" with q != 0 or an integer"),
        )
    })
}

fn matrix(
    p: &Parser<'_>,
    matrices: &Map<String, Value>,
    name: &str,
    domain: &TensorSpace,
    codomain: &TensorSpace,
) -> Result<Option<LinMap>, ParseError> {
    let Some(value) = matrices.get(name) else {
        return Ok(None);
    };
    let path = ["matrices", name];
    let shape_error = |message: String| p.error(ParseErrorKind::Shape, &path, None, message);
    let Value::Array(rows) = value else {
        return Err(shape_error("expected a list of rows".into()));
    };
    if rows.len() != domain.dim() {
        return Err(shape_error(format!(
            "expected {} rows (one per basis element of {domain}), got {}",
            domain.dim(),
            rows.len()
        )));
    }
    let mut images = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let Value::Array(entries) = row else {
            return Err(shape_error(format!("row {i} is not a list")));
        };
        if entries.len() != codomain.dim() {
            return Err(shape_error(format!(
                "row {i} has {} entries, expected {} (coefficients in {codomain})",
                entries.len(),
                codomain.dim()
            )));
        }
        let mut image = Vec::with_capacity(entries.len());
        for entry in entries {
            match entry {
                Value::String(s) => image.push(rational(p, &path, s)?),
                other => {
                    return Err(p.error(
                        ParseErrorKind::MalformedRational,
                        &path,
                        None,
                        format!("row {i}: entry {other} is not a string rational"),
                    ))
                }
            }
        }
        images.push(image);
    }
    Ok(Some(
        LinMap::from_images(domain.clone(), codomain.clone(), images).expect("shape checked"),
    ))
}

/// Image-major rows of string rationals.
pub fn matrix_value(map: &LinMap) -> Value {
    Value::Array(
        (0..map.cols())
            .map(|c| {
                Value::Array(
                    map.column(c)
                        .iter()
                        .map(|x| Value::String(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn to_value(doc: &Document) -> Value {
    let b = &doc.bundle;
    let mut top = Map::new();
    top.insert("dimension".into(), Value::from(b.dimension));
    top.insert("flavor".into(), Value::String(b.flavor.clone()));
    top.insert(
        "format_version".into(),
        Value::String(FORMAT_VERSION.into()),
    );
    if let Some(lambda) = &b.lambda {
        top.insert("lambda".into(), Value::String(lambda.to_string()));
    }
    let mut mats = Map::new();
    let (structure_key, twist_key, derivation_key) = match &b.side {
        Side::Coalgebra { delta } => {
            mats.insert("delta".into(), matrix_value(delta));
            ("rho", "beta", "phi_m")
        }
        Side::Algebra { mu } => {
            mats.insert("mu".into(), matrix_value(mu));
            ("action", "a_op", "phi_v")
        }
    };
    for (key, map) in [
        ("alpha", &b.alpha),
        ("phi", &b.phi),
        ("R", &b.r),
        ("T", &b.t),
    ] {
        if let Some(map) = map {
            mats.insert(key.into(), matrix_value(map));
        }
    }
    if let Some(module) = &b.module {
        top.insert("module_dimension".into(), Value::from(module.dim));
        mats.insert(structure_key.into(), matrix_value(&module.structure));
        mats.insert(twist_key.into(), matrix_value(&module.twist));
        if let Some(d) = &module.derivation {
            mats.insert(derivation_key.into(), matrix_value(d));
        }
    }
    top.insert("matrices".into(), Value::Object(mats));
    top.insert("metadata".into(), Value::Object(doc.metadata.clone()));
    Value::Object(top)
}

/// Canonical text: sorted keys, two-space indentation, one matrix row per
/// line, trailing newline.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    write_canonical(&mut out, &to_value(doc), 0);
    out.push('\n');
    out
}

/// The canonical layout of any JSON value.
pub fn canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_canonical(&mut out, value, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_canonical(out: &mut String, value: &Value, indent: usize) {
    let pad = |depth: usize| " ".repeat(depth);
    match value {
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, key) in keys.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_canonical(out, &map[*key], indent + 2);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&item.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                write_canonical(out, item, indent + 2);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Parses and re-serializes: the canonical form of a document.
pub fn canonicalize(text: &str) -> Result<String, ParseError> {
    parse(text).map(|doc| serialize(&doc))
}
