//! JSON forms: vectors as `{key: "num/den"}` in key order, linear maps as
//! basis lists plus a row-major matrix.

use std::fmt::Display;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use super::key::Key;
use super::linmap::LinearMap;
use super::rational::{fmt_rational, parse_rational, Rational};
use super::vector::FreeVector;
use crate::error::{Result, RotaError};

pub fn vector_to_json<K: Ord + Clone + Display>(v: &FreeVector<K>) -> Value {
    let mut m = Map::new();
    for (k, c) in v.iter() {
        m.insert(k.to_string(), Value::String(fmt_rational(c)));
    }
    Value::Object(m)
}

pub fn vector_from_json<K>(v: &Value) -> Result<FreeVector<K>>
where
    K: Ord + Clone + FromStr<Err = RotaError>,
{
    let obj = v.as_object().ok_or_else(|| RotaError::Invalid("vector must be a JSON object".into()))?;
    obj.iter().map(|(k, c)| Ok((k.parse()?, rational_from_json(c)?))).collect()
}

/// Accepts `"num/den"`, `"n"` or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(RotaError::Invalid(format!("expected a rational, found {v}"))),
    }
}

pub fn keys_to_json(keys: &[Key]) -> Value {
    Value::Array(keys.iter().map(|k| Value::String(k.to_string())).collect())
}

pub fn keys_from_json(v: &Value) -> Result<Vec<Key>> {
    v.as_array()
        .ok_or_else(|| RotaError::Invalid("basis must be a list of keys".into()))?
        .iter()
        .map(|k| k.as_str().ok_or_else(|| RotaError::Invalid("basis keys must be strings".into()))?.parse())
        .collect()
}

pub fn matrix_to_json(m: &[Vec<Rational>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|x| Value::String(fmt_rational(x))).collect())).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<Vec<Vec<Rational>>> {
    let rows = v.as_array().ok_or_else(|| RotaError::Invalid("matrix must be a list of rows".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| RotaError::Invalid("matrix rows must be lists".into()))?
                .iter()
                .map(rational_from_json)
                .collect()
        })
        .collect()
}

pub fn linmap_to_json(f: &LinearMap) -> Value {
    json!({
        "domain": keys_to_json(f.domain()),
        "codomain": keys_to_json(f.codomain()),
        "matrix": matrix_to_json(f.matrix()),
    })
}

pub fn linmap_from_json(v: &Value) -> Result<LinearMap> {
    let domain = keys_from_json(&v["domain"])?;
    let codomain = match v.get("codomain") {
        Some(c) => keys_from_json(c)?,
        None => domain.clone(),
    };
    LinearMap::new(domain, codomain, matrix_from_json(&v["matrix"])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn vector_json_is_sorted_and_round_trips() {
        let v = FreeVector::from_terms([(Key::Mono(3), rat(1, 2)), (Key::Mono(-1), int(2))]);
        let j = vector_to_json(&v);
        assert_eq!(j.to_string(), r#"{"t^-1":"2/1","t^3":"1/2"}"#);
        assert_eq!(vector_from_json::<Key>(&j).unwrap(), v);
    }

    #[test]
    fn linmap_json_round_trip() {
        let b = vec![Key::name("e1"), Key::name("e2")];
        let f = LinearMap::new(b.clone(), b, vec![vec![int(0), int(1)], vec![rat(-1, 3), int(0)]]).unwrap();
        assert_eq!(linmap_from_json(&linmap_to_json(&f)).unwrap(), f);
    }
}
