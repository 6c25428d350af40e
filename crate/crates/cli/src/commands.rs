use std::collections::BTreeMap;

use rota_core::exactalg::{fmt_rational, matrix_from_json, rational_from_json, vector_to_json, LinearMap};
use rota_core::hopfconv::{
    birkhoff_factorize, rb_coalgebra_check, rooted_tree_hopf, tree_character, Coalgebra, Forest,
};
use rota_core::rbalg::{algebra_ref_from_json, RbAlgebra, RotaBaxter};
use rota_core::rbmod::{module_split, rbm_check, reconstruct_operator, RbModule, RotaBaxterModule};
use rota_core::urb::{urb_audit, urb_basis, urb_dimension, urb_product, UrbElement};
use rota_core::{Elem, LawReport, RotaError};
use serde_json::{json, Map, Value};

use crate::report::Report;
use crate::{CliError, RunConfig};

/// Seeded triples per operator-ring associativity audit.
const CHECK_TRIPLES: usize = 200;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Rota(RotaError::Invalid(msg.into()))
}

/// Fills in the run precision wherever a Laurent descriptor leaves it out,
/// including the bare name `"laurent"` as an algebra reference.
pub fn with_precision(v: &Value, precision: i64) -> Value {
    match v {
        Value::Object(obj) => {
            let mut out = Map::new();
            for (k, child) in obj {
                let child = match (k.as_str(), child) {
                    ("algebra" | "left" | "right" | "inner", Value::String(s)) if s == "laurent" => {
                        json!({"kind": "laurent", "precision": precision})
                    }
                    _ => with_precision(child, precision),
                };
                out.insert(k.clone(), child);
            }
            if out.get("kind").and_then(Value::as_str) == Some("laurent") && !out.contains_key("precision") {
                out.insert("precision".into(), json!(precision));
            }
            Value::Object(out)
        }
        Value::Array(xs) => Value::Array(xs.iter().map(|x| with_precision(x, precision)).collect()),
        other => other.clone(),
    }
}

pub fn algebra(v: &Value, cfg: &RunConfig) -> Result<RbAlgebra, CliError> {
    let v = match v {
        Value::String(s) if s == "laurent" => json!({"kind": "laurent"}),
        _ => v.clone(),
    };
    algebra_ref_from_json(&with_precision(&v, cfg.precision)).map_err(|e| match e {
        RotaError::Invalid(msg) if msg.starts_with("unknown built-in") => {
            CliError::UnknownInstance(v.as_str().unwrap_or_default().to_string())
        }
        e => e.into(),
    })
}

fn algebra_field(input: &Value, cfg: &RunConfig) -> Result<RbAlgebra, CliError> {
    algebra(input.get("algebra").ok_or_else(|| invalid("input needs `algebra`"))?, cfg)
}

fn is_module_descriptor(v: &Value) -> bool {
    v.get("algebra").is_some() && ["basis", "action", "regular"].iter().any(|k| v.get(k).is_some())
}

fn algebra_suite(alg: &RbAlgebra, cfg: &RunConfig) -> Result<(Value, bool), CliError> {
    let mut reports = alg.audit()?;
    reports.extend(urb_audit(alg, cfg.seed, CHECK_TRIPLES)?);
    let (laws, ok) = Report::laws(&reports);
    let mut out = json!({"instance": alg.name(), "weight": fmt_rational(alg.weight()), "laws": laws});
    if alg.is_finite_based() {
        out["urb_dimension"] = json!(urb_dimension(alg)?);
    }
    Ok((out, ok))
}

fn module_suite(v: &Value, cfg: &RunConfig) -> Result<(Value, bool), CliError> {
    let m = RbModule::from_json_unchecked(&with_precision(v, cfg.precision))?;
    let mut reports = m.audit()?;
    if reports.is_empty() {
        // Infinite regular module: the identity on generator pairs.
        let mut r = LawReport::new("rota-baxter module");
        'outer: for a in m.algebra().generators()? {
            for x in m.sample_vectors()? {
                r.samples += 1;
                if !rbm_check(&m, &a, &x)? {
                    r.counterexample = Some(format!("({a}, {x})"));
                    break 'outer;
                }
            }
        }
        reports.push(r);
    }
    let (laws, ok) = Report::laws(&reports);
    Ok((json!({"instance": m.algebra().name(), "weight": fmt_rational(m.weight()), "laws": laws}), ok))
}

fn coalgebra_suite(input: &Value) -> Result<(Value, bool), CliError> {
    let h = Coalgebra::from_json(&input["coalgebra"])?;
    let sigma = input.get("sigma").ok_or_else(|| invalid("a coalgebra check needs `sigma`"))?;
    let sigma = LinearMap::new(h.basis().to_vec(), h.basis().to_vec(), matrix_from_json(sigma)?)?;
    let lambda = rational_from_json(input.get("weight").ok_or_else(|| invalid("a coalgebra check needs `weight`"))?)?;
    let r = rb_coalgebra_check(&h, &sigma, &lambda)?;
    let (laws, ok) = Report::laws(&[r]);
    Ok((json!({"instance": h.name(), "weight": fmt_rational(&lambda), "laws": laws}), ok))
}

/// Audits whatever the input describes: a bare algebra descriptor or name,
/// a bare module descriptor, or an object with any of `algebra`, `module`
/// and `coalgebra` (with `sigma` and `weight`).
pub fn check(input: &Value, cfg: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new();
    let mut suites: Vec<(&str, Value, bool)> = Vec::new();
    if input.is_string() || input.get("kind").is_some() {
        let (v, ok) = algebra_suite(&algebra(input, cfg)?, cfg)?;
        suites.push(("algebra", v, ok));
    } else if is_module_descriptor(input) {
        let (v, ok) = module_suite(input, cfg)?;
        suites.push(("module", v, ok));
    } else {
        if input.get("algebra").is_some() {
            let (v, ok) = algebra_suite(&algebra_field(input, cfg)?, cfg)?;
            suites.push(("algebra", v, ok));
        }
        if let Some(m) = input.get("module") {
            let (v, ok) = module_suite(m, cfg)?;
            suites.push(("module", v, ok));
        }
        if input.get("coalgebra").is_some() {
            let (v, ok) = coalgebra_suite(input)?;
            suites.push(("coalgebra", v, ok));
        }
    }
    if suites.is_empty() {
        return Err(invalid("check needs an algebra, a module or a coalgebra"));
    }
    for (name, v, ok) in suites {
        report.set(name, v);
        report.passed &= ok;
    }
    Ok(report)
}

/// `{"algebra": .., "left": u, "right": v}` or `{"algebra": .., "factors": [..]}`.
pub fn urb_mul(input: &Value, cfg: &RunConfig) -> Result<Report, CliError> {
    let alg = algebra_field(input, cfg)?;
    let factors: Vec<UrbElement> = match input.get("factors") {
        Some(Value::Array(xs)) => xs.iter().map(UrbElement::from_json).collect::<Result<_, _>>()?,
        Some(_) => return Err(invalid("`factors` must be a list")),
        None => {
            let get = |k: &str| input.get(k).ok_or_else(|| invalid(format!("urb-mul needs `{k}` or `factors`")));
            vec![UrbElement::from_json(get("left")?)?, UrbElement::from_json(get("right")?)?]
        }
    };
    let product = urb_product(&alg, &factors)?;
    let mut report = Report::new();
    report.set("instance", json!(alg.name()));
    report.set("product", product.to_json());
    Ok(report)
}

pub fn urb_dim(input: &Value, cfg: &RunConfig) -> Result<Report, CliError> {
    let alg = if input.get("kind").is_some() || input.is_string() {
        algebra(input, cfg)?
    } else {
        algebra_field(input, cfg)?
    };
    let d = alg.dimension()?;
    let n = urb_dimension(&alg)?;
    let mut report = Report::new();
    report.set("instance", json!(alg.name()));
    report.set("dimension", json!(d));
    report.set("urb_dimension", json!(n));
    report.set("basis", Value::Array(urb_basis(&alg)?.iter().map(|k| json!(k.to_string())).collect()));
    Ok(report)
}

pub fn split(input: &Value, cfg: &RunConfig) -> Result<Report, CliError> {
    let v = input.get("module").unwrap_or(input);
    let m = RbModule::from_json(&with_precision(v, cfg.precision))?;
    let s = module_split(&m)?;
    let mut rec = LawReport::new("reconstruction");
    rec.samples = 1;
    let rebuilt = reconstruct_operator(&m, &s)?;
    if rebuilt != m.op_matrix()? {
        rec.counterexample = Some(format!("{rebuilt:?}"));
    }
    let mut report = Report::new();
    let vectors = |vs: &[rota_core::FreeVector]| Value::Array(vs.iter().map(vector_to_json).collect());
    report.set("instance", json!(m.algebra().name()));
    report.set("weight", json!(fmt_rational(m.weight())));
    report.set("dimension", json!(m.dimension()?));
    report.set("regular", vectors(&s.regular));
    report.set("singular", vectors(&s.singular));
    let (laws, ok) = Report::laws(&[rec]);
    report.set("laws", laws);
    report.passed = ok;
    Ok(report)
}

fn series_json(a: &RbAlgebra, e: &Elem) -> Result<Value, CliError> {
    Ok(vector_to_json(&a.coords(e)?))
}

/// `{"max_degree": n, "trees": {"[]": {"t^-1": "1/1"}, ..}, "algebra"?: ..}`.
/// Every tree up to the degree bound needs a value; forests get the product.
pub fn birkhoff(input: &Value, cfg: &RunConfig) -> Result<Report, CliError> {
    let max = input
        .get("max_degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("birkhoff needs a non-negative integer `max_degree`"))?;
    let h = rooted_tree_hopf(usize::try_from(max).unwrap_or(usize::MAX))?;
    let a = match input.get("algebra") {
        Some(v) => algebra(v, cfg)?,
        None => RbAlgebra::laurent_with_precision(cfg.precision),
    };
    let given = input.get("trees").and_then(Value::as_object).ok_or_else(|| invalid("birkhoff needs `trees`"))?;
    let mut trees = BTreeMap::new();
    for (k, v) in given {
        let f = Forest::parse(k)?;
        if f.trees().len() != 1 {
            return Err(invalid(format!("`{k}` is not a single tree")));
        }
        trees.insert(f.key(), a.elem_from_json(v)?);
    }
    let phi = tree_character(&h, &a, &trees)?;
    let b = birkhoff_factorize(&h, &phi)?;
    let mut table = Map::new();
    for k in h.basis() {
        let row = json!({
            "phi": series_json(&a, &phi.value(k))?,
            "phi_minus": series_json(&a, &b.minus.value(k))?,
            "phi_plus": series_json(&a, &b.plus.value(k))?,
        });
        table.insert(k.to_string(), row);
    }
    let mut report = Report::new();
    report.set("coalgebra", json!(h.name()));
    report.set("instance", json!(a.name()));
    report.set("table", Value::Object(table));
    let (laws, ok) = Report::laws(&b.checks);
    report.set("laws", laws);
    report.passed = ok;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_fills_only_missing_laurent_fields() {
        let v = json!({"algebra": "laurent", "module": {"algebra": {"kind": "laurent", "precision": 9}},
                       "other": {"kind": "product", "left": {"kind": "laurent"}, "right": "dual"}});
        let out = with_precision(&v, 12);
        assert_eq!(out["algebra"], json!({"kind": "laurent", "precision": 12}));
        assert_eq!(out["module"]["algebra"]["precision"], 9);
        assert_eq!(out["other"]["left"]["precision"], 12);
        assert_eq!(out["other"]["right"], "dual");
    }
}
