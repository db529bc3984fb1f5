//! Wire forms shared by every command.
//!
//! * a rational is the string `"p/q"`, or `"p"` when `q = 1`;
//! * a polynomial is the array of its coefficient strings, index = power of `x`;
//! * a series is `{"trunc_order": N, "coeffs": [...]}` with `N + 1` entries;
//! * a check report follows the object layout built in [`report_json`].

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value as Json};
use umbral_core::identities::{CheckReport, ParamValue, Value};
use umbral_core::{parse_rational, Poly, Rational, Series};

pub fn rational_str(r: &Rational) -> String {
    r.to_string()
}

pub fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rational_str).collect()
}

pub fn poly_from_strings(cs: &[String]) -> umbral_core::Result<Poly> {
    Ok(Poly::from_coeffs(cs.iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub trunc_order: usize,
    pub coeffs: Vec<String>,
}

impl From<&Series> for SeriesDoc {
    fn from(s: &Series) -> Self {
        Self { trunc_order: s.trunc_order(), coeffs: s.coeffs().iter().map(rational_str).collect() }
    }
}

impl TryFrom<&SeriesDoc> for Series {
    type Error = umbral_core::Error;
    fn try_from(doc: &SeriesDoc) -> umbral_core::Result<Series> {
        if doc.coeffs.len() != doc.trunc_order + 1 {
            return Err(umbral_core::Error::InvalidParameter(format!(
                "series has {} coefficients but trunc_order {}",
                doc.coeffs.len(),
                doc.trunc_order
            )));
        }
        Series::from_coeffs(doc.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?)
    }
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Scalar(r) => Json::String(rational_str(r)),
        Value::Poly(p) => json!(poly_strings(p)),
    }
}

fn param_json(p: &ParamValue) -> Json {
    match p {
        ParamValue::Int(i) => json!(i),
        ParamValue::Rational(r) => Json::String(rational_str(r)),
        ParamValue::Text(t) => Json::String((*t).to_owned()),
    }
}

pub fn report_json(r: &CheckReport) -> Json {
    let failures: Vec<Json> = r
        .failures
        .iter()
        .map(|f| {
            let params: Map<String, Json> = f.params.iter().map(|(k, v)| ((*k).to_owned(), param_json(v))).collect();
            json!({
                "params": params,
                "expected": value_json(&f.expected),
                "actual": value_json(&f.actual),
            })
        })
        .collect();
    json!({
        "id": r.id.tag(),
        "grid": {
            "n_max": r.grid.n_max,
            "a_values": r.grid.a_values,
            "v_values": r.grid.v_values.iter().map(rational_str).collect::<Vec<_>>(),
            "k_max": r.grid.k_max,
        },
        "total_points": r.total_points,
        "skipped_points": r.skipped_points,
        "failures": failures,
        "verdict": r.verdict.as_str(),
        "note": r.note,
    })
}
