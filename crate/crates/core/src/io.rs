//! JSON wire format for series, trees and rationals.
//!
//! A series vector is written as
//!
//! ```json
//! { "nvars": 2, "trunc": 4,
//!   "components": [ [ {"exps": [1, 0], "coeff": "1"}, {"exps": [0, 2], "coeff": "1/2"} ],
//!                   [ {"exps": [0, 1], "coeff": "1"} ] ] }
//! ```
//!
//! Rational coefficients are `"p/q"` strings (integers drop the `/1`).
//! Coefficients in `ℚ[t]` are `{"t_poly": ["c0", "c1", …]}` in ascending
//! order. Terms are listed in ascending exponent order, so output is stable.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{parse_rational, Coeff, RatPoly, Rational, Series, SeriesVector};
use crate::trees::RootedTree;
use crate::{Error, Result};

/// A coefficient ring with a JSON representation.
pub trait JsonCoeff: Coeff {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonCoeff for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
            other => Err(Error::Parse(format!(
                "coefficient must be a \"p/q\" string, found {other}"
            ))),
        }
    }
}

impl JsonCoeff for RatPoly {
    fn to_json(&self) -> Value {
        let coeffs = self.coeffs().iter().map(|c| Value::String(c.to_string())).collect();
        serde_json::json!({ "t_poly": Value::Array(coeffs) })
    }

    fn from_json(v: &Value) -> Result<Self> {
        if let Some(list) = v.get("t_poly").and_then(Value::as_array) {
            let coeffs = list.iter().map(Rational::from_json).collect::<Result<Vec<_>>>()?;
            return Ok(RatPoly::from_coeffs(coeffs));
        }
        Rational::from_json(v).map(RatPoly::constant)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coeff: Value,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    nvars: usize,
    trunc: usize,
    components: Vec<Vec<TermJson>>,
}

fn terms_to_json<C: JsonCoeff>(s: &Series<C>) -> Vec<TermJson> {
    s.terms()
        .map(|(e, c)| TermJson {
            exps: e.clone(),
            coeff: c.to_json(),
        })
        .collect()
}

pub fn series_vector_to_value<C: JsonCoeff>(v: &SeriesVector<C>) -> Value {
    let doc = SeriesJson {
        nvars: v.nvars(),
        trunc: v.trunc(),
        components: v.components().iter().map(terms_to_json).collect(),
    };
    serde_json::to_value(doc).expect("series documents are plain JSON")
}

pub fn series_vector_to_json<C: JsonCoeff>(v: &SeriesVector<C>) -> String {
    serde_json::to_string_pretty(&series_vector_to_value(v)).expect("series documents are plain JSON")
}

pub fn series_vector_from_value<C: JsonCoeff>(v: &Value) -> Result<SeriesVector<C>> {
    let doc: SeriesJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("malformed series JSON: {e}")))?;
    if doc.components.len() != doc.nvars {
        return Err(Error::Dimension(format!(
            "series JSON has {} components for {} variables",
            doc.components.len(),
            doc.nvars
        )));
    }
    let comps = doc
        .components
        .into_iter()
        .map(|terms| {
            let parsed = terms
                .into_iter()
                .map(|t| Ok((t.exps, C::from_json(&t.coeff)?)))
                .collect::<Result<Vec<_>>>()?;
            Series::from_terms(doc.nvars, doc.trunc, parsed)
        })
        .collect::<Result<Vec<_>>>()?;
    SeriesVector::new(comps)
}

pub fn series_vector_from_json<C: JsonCoeff>(s: &str) -> Result<SeriesVector<C>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("malformed series JSON: {e}")))?;
    series_vector_from_value(&v)
}

/// `{"tree": "(()())"}`.
pub fn tree_to_value(tree: &RootedTree) -> Value {
    serde_json::json!({ "tree": tree.encoding() })
}

/// Accepts the wrapper object or a bare encoding string.
pub fn tree_from_value(v: &Value) -> Result<RootedTree> {
    let code = match v {
        Value::String(s) => s.as_str(),
        _ => v
            .get("tree")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("tree JSON must be {\"tree\": \"…\"}".into()))?,
    };
    code.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn rational_series_round_trip() {
        let s = Series::from_terms(2, 4, [(vec![1, 0], int(1)), (vec![0, 2], rat(-3, 2))]).unwrap();
        let v = SeriesVector::new(vec![s, Series::var(2, 4, 1)]).unwrap();
        let text = series_vector_to_json(&v);
        assert!(text.contains("\"-3/2\""));
        assert_eq!(series_vector_from_json::<Rational>(&text).unwrap(), v);
    }

    #[test]
    fn poly_series_round_trip() {
        let p = RatPoly::from_coeffs(vec![int(0), rat(1, 2), int(-1)]);
        let v = SeriesVector::new(vec![Series::monomial(1, 3, &[2], p)]).unwrap();
        let value = series_vector_to_value(&v);
        assert_eq!(value["components"][0][0]["coeff"]["t_poly"][1], "1/2");
        assert_eq!(series_vector_from_value::<RatPoly>(&value).unwrap(), v);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(series_vector_from_json::<Rational>("{").is_err());
        let wrong_len = r#"{"nvars":1,"trunc":2,"components":[[{"exps":[1,0],"coeff":"1"}]]}"#;
        assert!(matches!(
            series_vector_from_json::<Rational>(wrong_len),
            Err(Error::Dimension(_))
        ));
        let bad_coeff = r#"{"nvars":1,"trunc":2,"components":[[{"exps":[1],"coeff":"1/0"}]]}"#;
        assert!(series_vector_from_json::<Rational>(bad_coeff).is_err());
        let float = r#"{"nvars":1,"trunc":2,"components":[[{"exps":[1],"coeff":0.5}]]}"#;
        assert!(series_vector_from_json::<Rational>(float).is_err());
    }

    #[test]
    fn tree_wrapper() {
        let t: RootedTree = "(()())".parse().unwrap();
        assert_eq!(tree_from_value(&tree_to_value(&t)).unwrap(), t);
        assert_eq!(
            tree_from_value(&Value::String("(())".into())).unwrap(),
            RootedTree::chain(2)
        );
        assert!(tree_from_value(&serde_json::json!({"t": 1})).is_err());
    }
}
