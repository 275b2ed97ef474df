//! JSON documents for complexes and families of complexes.
//!
//! Rationals are strings `"p/q"` or `"p"` (bare JSON integers are accepted
//! on input); polynomials are coefficient arrays, lowest degree first.

use cocom_core::degeneration::{PolyComplex, RawEntry};
use cocom_core::exactlin::{parse_q, q};
use cocom_core::{Complex, GradedDims, LocalFn, Matrix, Poly, Q};
use serde_json::{json, Value};

/// A document that failed to parse or validate; `path` points into the
/// JSON input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct DocumentError {
    pub path: String,
    pub message: String,
}

fn err(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError {
        path: path.into(),
        message: message.into(),
    }
}

fn rational(v: &Value, path: &str) -> Result<Q, DocumentError> {
    match v {
        Value::String(s) => parse_q(s).ok_or_else(|| err(path, format!("not a rational: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Q::from_integer(x.into()))
            .ok_or_else(|| err(path, "numbers must be integers; write fractions as \"p/q\"")),
        _ => Err(err(path, "expected a rational")),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, DocumentError> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn dims(doc: &Value) -> Result<GradedDims, DocumentError> {
    let raw = doc
        .get("dims")
        .ok_or_else(|| err("$", "missing \"dims\""))?;
    let n = array(raw, "$.dims")?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| err(format!("$.dims[{i}]"), "expected a nonnegative integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    GradedDims::new(n).map_err(|e| err("$.dims", e.to_string()))
}

/// Walks `$.diffs` checking the shape of each matrix against `dims`.
fn matrices<T>(
    doc: &Value,
    dims: &GradedDims,
    mut entry: impl FnMut(&Value, &str) -> Result<T, DocumentError>,
) -> Result<Vec<Vec<Vec<T>>>, DocumentError> {
    let raw = doc
        .get("diffs")
        .ok_or_else(|| err("$", "missing \"diffs\""))?;
    let list = array(raw, "$.diffs")?;
    if list.len() != dims.m() {
        return Err(err(
            "$.diffs",
            format!(
                "expected {} matrices for dims {dims}, found {}",
                dims.m(),
                list.len()
            ),
        ));
    }
    let n = dims.as_slice();
    let mut out = Vec::with_capacity(list.len());
    for (i, m) in list.iter().enumerate() {
        let path = format!("$.diffs[{i}]");
        let rows = array(m, &path)?;
        if rows.len() != n[i + 1] {
            return Err(err(
                &path,
                format!("expected {} rows, found {}", n[i + 1], rows.len()),
            ));
        }
        let mut mat = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            let path = format!("$.diffs[{i}][{r}]");
            let cells = array(row, &path)?;
            if cells.len() != n[i] {
                return Err(err(
                    &path,
                    format!("expected {} entries, found {}", n[i], cells.len()),
                ));
            }
            let row = cells
                .iter()
                .enumerate()
                .map(|(c, x)| entry(x, &format!("$.diffs[{i}][{r}][{c}]")))
                .collect::<Result<Vec<_>, _>>()?;
            mat.push(row);
        }
        out.push(mat);
    }
    Ok(out)
}

fn not_a_complex(e: cocom_core::Error) -> DocumentError {
    match e {
        cocom_core::Error::NotAComplex { index } => err(
            format!("$.diffs[{}]", index + 1),
            format!("not a complex: D_{} * D_{index} != 0", index + 1),
        ),
        cocom_core::Error::PoleAt { degree, row, col } => {
            err(format!("$.diffs[{degree}][{row}][{col}]"), "pole at t = 0")
        }
        other => err("$", other.to_string()),
    }
}

pub fn parse_complex(doc: &Value) -> Result<Complex<Q>, DocumentError> {
    let dims = dims(doc)?;
    let raw = matrices(doc, &dims, rational)?;
    let n = dims.as_slice();
    let diffs = raw
        .into_iter()
        .enumerate()
        .map(|(i, rows)| Matrix::from_rows(rows, n[i]).expect("shape checked"))
        .collect();
    Complex::new(dims, diffs).map_err(not_a_complex)
}

fn poly(v: &Value, path: &str) -> Result<Poly, DocumentError> {
    let coeffs = array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, c)| rational(c, &format!("{path}[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

fn family_entry(v: &Value, path: &str) -> Result<RawEntry, DocumentError> {
    match v {
        Value::Object(o) => {
            for key in o.keys() {
                if key != "num" && key != "den" {
                    return Err(err(path, format!("unknown key {key:?}")));
                }
            }
            let num = match o.get("num") {
                Some(x) => poly(x, &format!("{path}.num"))?,
                None => return Err(err(path, "missing \"num\"")),
            };
            let den = match o.get("den") {
                Some(x) => poly(x, &format!("{path}.den"))?,
                None => Poly::constant(q(1)),
            };
            Ok(RawEntry { num, den })
        }
        _ => Ok(RawEntry {
            num: Poly::constant(rational(v, path)?),
            den: Poly::constant(q(1)),
        }),
    }
}

pub fn parse_family(doc: &Value) -> Result<PolyComplex, DocumentError> {
    let dims = dims(doc)?;
    let raw = matrices(doc, &dims, family_entry)?;
    PolyComplex::from_raw(dims, raw).map_err(not_a_complex)
}

pub fn rational_json(x: &Q) -> Value {
    Value::String(x.to_string())
}

fn matrix_json<T: cocom_core::Ring>(m: &Matrix<T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(&f).collect()))
            .collect(),
    )
}

pub fn complex_json(c: &Complex<Q>) -> Value {
    json!({
        "dims": c.dims().as_slice(),
        "diffs": c.diffs().iter().map(|d| matrix_json(d, rational_json)).collect::<Vec<_>>(),
    })
}

fn local_json(x: &LocalFn) -> Value {
    let poly = |p: &Poly| Value::Array(p.coeffs().iter().map(rational_json).collect());
    if x.den().coeffs().len() == 1 && x.num().coeffs().len() <= 1 {
        return rational_json(&x.num().coeff(0));
    }
    if x.den().coeffs().len() == 1 {
        return json!({ "num": poly(x.num()) });
    }
    json!({ "num": poly(x.num()), "den": poly(x.den()) })
}

pub fn family_json(pc: &PolyComplex) -> Value {
    json!({
        "dims": pc.dims().as_slice(),
        "diffs": pc.diffs().iter().map(|d| matrix_json(d, local_json)).collect::<Vec<_>>(),
    })
}
