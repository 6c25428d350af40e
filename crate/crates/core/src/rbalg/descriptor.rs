//! JSON instance descriptors.
//!
//! ```json
//! {"kind": "laurent", "weight": "-1/1", "precision": 48, "sample_degree": 6}
//! {"kind": "divided", "weight": "0/1", "max_degree": 64}
//! {"kind": "scalar", "weight": "1/1", "operator": "-1/1"}
//! {"kind": "matrix", "size": 2, "inner": {...}}
//! {"kind": "product", "left": {...}, "right": {...}}
//! {"kind": "finite", "weight": ..., "basis": [...], "table": {"(a|b)": {...}},
//!  "unit": {...}, "operator": [[...]]}
//! {"kind": "dual"} | {"kind": "split-matrix", "weight": ...} | {"kind": "truncated-divided", "n": 2}
//! ```
//!
//! Any descriptor may add `"tilde": true` (dual operator), `"scale": "a/b"`
//! (weight scaling) or `"opposite": true`, applied in that order. `"form":
//! {"id": .., "base": ..}` sets the operator to `id·Id + base·P₀` directly.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::algebra::{FiniteTable, Kind, OpForm, RbAlgebra};
use super::instances::{DIVIDED_MAX_DEGREE, DIVIDED_SAMPLE_DEGREE, LAURENT_PRECISION, LAURENT_SAMPLE_DEGREE};
use super::structure::RotaBaxter;
use crate::error::{Result, RotaError};
use crate::exactalg::{
    fmt_rational, int, keys_from_json, keys_to_json, matrix_from_json, matrix_to_json, rational_from_json,
    vector_from_json, vector_to_json, FreeVector, LinearMap, Rational, TensorKey,
};

fn field_rational(v: &Value, name: &str, default: Option<Rational>) -> Result<Rational> {
    match v.get(name) {
        Some(x) => rational_from_json(x),
        None => default.ok_or_else(|| RotaError::Invalid(format!("descriptor needs `{name}`"))),
    }
}

fn field_int(v: &Value, name: &str, default: i64) -> Result<i64> {
    match v.get(name) {
        Some(x) => x.as_i64().ok_or_else(|| RotaError::Invalid(format!("`{name}` must be an integer"))),
        None => Ok(default),
    }
}

fn field_unsigned(v: &Value, name: &str, default: u32) -> Result<u32> {
    let n = field_int(v, name, i64::from(default))?;
    u32::try_from(n).map_err(|_| RotaError::Invalid(format!("`{name}` must be a non-negative integer")))
}

/// Parses a descriptor without auditing it (the `check` command wants to
/// report violations rather than refuse the instance).
pub fn algebra_from_json(v: &Value) -> Result<RbAlgebra> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| RotaError::Invalid("descriptor needs a string `kind`".into()))?;
    let mut alg = match kind {
        "laurent" => RbAlgebra::laurent_unchecked(
            field_rational(v, "weight", Some(int(-1)))?,
            field_int(v, "precision", LAURENT_PRECISION)?,
            field_int(v, "sample_degree", LAURENT_SAMPLE_DEGREE)?,
        ),
        "divided" => RbAlgebra::divided_unchecked(
            field_rational(v, "weight", Some(Rational::zero()))?,
            field_unsigned(v, "max_degree", DIVIDED_MAX_DEGREE)?,
            field_unsigned(v, "sample_degree", DIVIDED_SAMPLE_DEGREE)?,
        ),
        "scalar" => {
            let w = field_rational(v, "weight", None)?;
            let c = field_rational(v, "operator", Some(-w.clone()))?;
            RbAlgebra::scalar_with(w, c)
        }
        "dual" => RbAlgebra::dual_numbers(),
        "truncated-divided" => RbAlgebra::truncated_divided(field_unsigned(v, "n", 2)?),
        "split-matrix" => RbAlgebra::split_matrix2(field_rational(v, "weight", Some(int(-1)))?)?,
        "finite" => finite_from_json(v)?,
        "matrix" => {
            let size = field_int(v, "size", 2)?;
            let size = usize::try_from(size).map_err(|_| RotaError::Invalid("`size` must be positive".into()))?;
            RbAlgebra::matrix(&algebra_from_json(&v["inner"])?, size)?
        }
        "product" => RbAlgebra::product(&algebra_from_json(&v["left"])?, &algebra_from_json(&v["right"])?)?,
        other => return Err(RotaError::Invalid(format!("unknown algebra kind `{other}`"))),
    };
    if let Some(f) = v.get("form") {
        alg = alg.with_form(OpForm { id: field_rational(f, "id", None)?, base: field_rational(f, "base", None)? });
        // A scaled product or matrix algebra carries its own weight.
        if let Some(w) = v.get("weight") {
            alg = alg.with_weight(rational_from_json(w)?);
        }
    }
    if v.get("tilde").and_then(Value::as_bool) == Some(true) {
        alg = alg.tilde();
    }
    if let Some(s) = v.get("scale") {
        alg = alg.scaled(&rational_from_json(s)?);
    }
    if v.get("opposite").and_then(Value::as_bool) == Some(true) {
        alg = alg.opposite();
    }
    Ok(alg)
}

fn finite_from_json(v: &Value) -> Result<RbAlgebra> {
    let weight = field_rational(v, "weight", None)?;
    let basis = keys_from_json(&v["basis"])?;
    let mut table = BTreeMap::new();
    let entries =
        v["table"].as_object().ok_or_else(|| RotaError::Invalid("`table` must map \"(a|b)\" to vectors".into()))?;
    for (k, prod) in entries {
        let t: TensorKey = k.parse()?;
        table.insert((t.left, t.right), vector_from_json(prod)?);
    }
    let unit: FreeVector = vector_from_json(&v["unit"])?;
    let op = LinearMap::new(basis.clone(), basis.clone(), matrix_from_json(&v["operator"])?)?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or("finite");
    let t = FiniteTable { basis, table, unit, op };
    let commutative = t
        .basis
        .iter()
        .all(|a| t.basis.iter().all(|b| t.table.get(&(a.clone(), b.clone())) == t.table.get(&(b.clone(), a.clone()))));
    Ok(RbAlgebra::finite_unchecked(name, weight, t, commutative))
}

/// Descriptor that [`algebra_from_json`] maps back to an equal algebra.
pub fn algebra_to_json(a: &RbAlgebra) -> Value {
    let mut obj = match a.kind() {
        Kind::Laurent { precision, sample_degree } => json!({
            "kind": "laurent", "precision": precision, "sample_degree": sample_degree,
        }),
        Kind::Divided { max_degree, sample_degree } => json!({
            "kind": "divided", "max_degree": max_degree, "sample_degree": sample_degree,
        }),
        Kind::Finite(t) => {
            let mut table = Map::new();
            for ((x, y), prod) in &t.table {
                table.insert(TensorKey::new(x.clone(), y.clone()).to_string(), vector_to_json(prod));
            }
            json!({
                "kind": "finite",
                "name": a.name(),
                "basis": keys_to_json(&t.basis),
                "table": table,
                "unit": vector_to_json(&t.unit),
                "operator": matrix_to_json(t.op.matrix()),
            })
        }
        Kind::Matrix { inner, size } => json!({"kind": "matrix", "size": size, "inner": algebra_to_json(inner)}),
        Kind::Product(l, r) => json!({"kind": "product", "left": algebra_to_json(l), "right": algebra_to_json(r)}),
        Kind::Opposite(inner) => {
            // Fold the outer operator form into the inner descriptor.
            let (f, g) = (a.form(), inner.form());
            let folded = inner
                .as_ref()
                .clone()
                .with_form(OpForm { id: &f.id + &f.base * &g.id, base: &f.base * &g.base })
                .with_weight(a.weight().clone());
            let mut v = algebra_to_json(&folded);
            v["opposite"] = Value::Bool(true);
            return v;
        }
    };
    obj["weight"] = Value::String(fmt_rational(a.weight()));
    if *a.form() != OpForm::base() {
        obj["form"] = json!({"id": fmt_rational(&a.form().id), "base": fmt_rational(&a.form().base)});
    }
    obj
}

/// Resolves either a descriptor object or the name of a built-in instance.
pub fn algebra_ref_from_json(v: &Value) -> Result<RbAlgebra> {
    match v {
        Value::String(name) => builtin_algebra(name),
        _ => algebra_from_json(v),
    }
}

/// Named built-in instances.
pub fn builtin_algebra(name: &str) -> Result<RbAlgebra> {
    Ok(match name {
        "laurent" => RbAlgebra::laurent(),
        "divided" => RbAlgebra::divided(),
        "dual" => RbAlgebra::dual_numbers(),
        "zero-id-product" => super::instances::zero_id_product(),
        "split-matrix" => RbAlgebra::split_matrix2(int(-1))?,
        "truncated-divided" => RbAlgebra::truncated_divided(2),
        _ => {
            if let Some(w) = name.strip_prefix("scalar:") {
                RbAlgebra::scalar(crate::exactalg::parse_rational(w)?)
            } else {
                return Err(RotaError::Invalid(format!("unknown built-in algebra `{name}`")));
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn same_algebra(a: &RbAlgebra, b: &RbAlgebra) -> bool {
        algebra_to_json(a) == algebra_to_json(b)
    }

    #[test]
    fn descriptors_round_trip() {
        let cases = [
            json!({"kind": "laurent", "weight": "-1/1", "precision": 12}),
            json!({"kind": "divided"}),
            json!({"kind": "scalar", "weight": "2/1"}),
            json!({"kind": "matrix", "size": 2, "inner": {"kind": "laurent"}}),
            json!({"kind": "product", "left": {"kind": "scalar", "weight": "-1", "operator": "0"},
                   "right": {"kind": "scalar", "weight": "-1", "operator": "1"}}),
            json!({"kind": "split-matrix", "tilde": true}),
            json!({"kind": "dual", "opposite": true}),
            json!({"kind": "product", "left": {"kind": "scalar", "weight": "-1"},
                   "right": {"kind": "scalar", "weight": "-1"}, "scale": "2"}),
            json!({"kind": "split-matrix", "opposite": true, "weight": "-1"}),
        ];
        for c in cases {
            let a = algebra_from_json(&c).unwrap();
            let b = algebra_from_json(&algebra_to_json(&a)).unwrap();
            assert!(same_algebra(&a, &b), "{c}");
            assert_eq!(a.weight(), b.weight());
        }
    }

    #[test]
    fn transformed_opposites_keep_their_operator() {
        let base = RbAlgebra::split_matrix2(int(-1)).unwrap();
        for a in [base.opposite().tilde(), base.opposite().scaled(&int(3)), base.tilde().opposite()] {
            let b = algebra_from_json(&algebra_to_json(&a)).unwrap();
            assert_eq!(a.op_matrix().unwrap(), b.op_matrix().unwrap());
            assert_eq!(a.weight(), b.weight());
        }
    }

    #[test]
    fn unknown_kind_is_an_input_error() {
        assert!(matches!(algebra_from_json(&json!({"kind": "banana"})), Err(RotaError::Invalid(_))));
        assert!(matches!(algebra_from_json(&json!({"weight": "1"})), Err(RotaError::Invalid(_))));
    }
}
