//! Built-in worked examples. Output depends only on the precision.

use num_traits::Zero;
use rota_core::exactalg::{fmt_rational, int};
use rota_core::urb::{
    closed_form_check, product_projection_audit, product_table, urb_dimension, urb_mul, urb_q, zero_divisor_product,
    ClosedForm,
};
use rota_core::{FreeVector, Key, LawReport, Rational, RbAlgebra, UrbElement};
use serde_json::{json, Map, Value};

use crate::commands::algebra;
use crate::report::Report;
use crate::{CliError, RunConfig};

pub fn run(name: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    let mut report = match name {
        "hecke" => hecke()?,
        "kernel" => kernel()?,
        "zerodiv" => zerodiv(cfg)?,
        "tables" => tables(cfg)?,
        other => return Err(CliError::UnknownInstance(other.to_string())),
    };
    let mut body = Map::new();
    body.insert("demo".into(), json!(name));
    body.extend(std::mem::take(&mut report.body));
    report.body = body;
    Ok(report)
}

/// `U_RB(𝐤, P)` for `P ∈ {0, −λ}`: two-dimensional with `Q² = −λQ`.
fn hecke() -> Result<Report, CliError> {
    let mut report = Report::new();
    let mut rows = Vec::new();
    for w in [1, -1, 2, 0] {
        let ops: Vec<Rational> = if w == 0 { vec![Rational::zero()] } else { vec![Rational::zero(), int(-w)] };
        for c in ops {
            let alg = RbAlgebra::scalar_with(int(w), c.clone());
            let q = urb_q(&alg);
            let q2 = urb_mul(&alg, &q, &q)?;
            let holds = q2.add(&q.scale(&int(w))).is_zero();
            report.passed &= holds;
            rows.push(json!({
                "weight": fmt_rational(&int(w)),
                "operator": fmt_rational(&c),
                "dimension": urb_dimension(&alg)?,
                "q_squared": q2.to_json(),
                "relation": "t(t+weight) = 0",
                "holds": holds,
            }));
        }
    }
    report.set("instances", Value::Array(rows));
    Ok(report)
}

/// The product projection for `(𝐤, 0) × (𝐤, Id)` at weight −1.
fn kernel() -> Result<Report, CliError> {
    let r1 = RbAlgebra::scalar_with(int(-1), Rational::zero());
    let r2 = RbAlgebra::scalar_with(int(-1), int(1));
    let a = product_projection_audit(&r1, &r2)?;
    let mut report = Report::new();
    report.set("source_dimension", json!(a.source_dim));
    report.set("target_dimension", json!(a.target_dim));
    report.set("rank", json!(a.rank));
    report.set("kernel_dimension", json!(a.kernel_dim));
    report.set("surjective", json!(a.surjective()));
    report.set("kernel_is_cross_span", json!(a.kernel_is_cross_span));
    report.set("multiplicative", json!(a.multiplicative));
    report.passed = a.surjective() && a.kernel_is_cross_span && a.multiplicative;
    Ok(report)
}

/// `(1⊗t − t⊗1)(s₁⊗s₂) = 0` in `U_RB` of Laurent series with `P = Id`.
fn zerodiv(cfg: &RunConfig) -> Result<Report, CliError> {
    let desc = json!({"kind": "laurent", "weight": "-1/1", "form": {"id": "1/1", "base": "0/1"}});
    let alg = algebra(&desc, cfg)?;
    let r = FreeVector::basis(Key::Mono(1));
    let one = alg.unit_vec();
    let witness = UrbElement::pure(&one, &r).sub(&UrbElement::pure(&r, &one));
    let mut products = LawReport::new("witness annihilates s1⊗s2");
    for i in -2..=2 {
        for j in -2..=2 {
            products.samples += 1;
            let (s1, s2) = (FreeVector::basis(Key::Mono(i)), FreeVector::basis(Key::Mono(j)));
            let p = zero_divisor_product(&alg, &r, &s1, &s2)?;
            if products.passed() && !p.is_zero() {
                products.counterexample = Some(format!("(t^{i}, t^{j}): {p}"));
            }
        }
    }
    let mut nonzero = LawReport::new("witness is nonzero");
    nonzero.samples = 1;
    if witness.is_zero() {
        nonzero.counterexample = Some(witness.to_string());
    }
    let mut report = Report::new();
    report.set("instance", json!(alg.name()));
    report.set("r", json!(Key::Mono(1).to_string()));
    report.set("witness", witness.to_json());
    let (laws, ok) = Report::laws(&[nonzero, products]);
    report.set("laws", laws);
    report.passed = ok;
    Ok(report)
}

fn table_json(alg: &RbAlgebra, keys: &[Key]) -> Result<Value, CliError> {
    let mut out = Map::new();
    for (k, p) in product_table(alg, keys)? {
        let shown: Vec<String> = k.iter().map(Key::to_string).collect();
        out.insert(format!("({})·({})", shown[..2].join("⊗"), shown[2..].join("⊗")), p.to_json());
    }
    Ok(Value::Object(out))
}

/// Operator-ring product tables and every closed form checked against
/// them.
fn tables(cfg: &RunConfig) -> Result<Report, CliError> {
    let laurent = algebra(&json!("laurent"), cfg)?;
    let divided = RbAlgebra::divided();
    let mono: Vec<Key> = (-1..=1).map(Key::Mono).collect();
    let div: Vec<Key> = (0..=2).map(Key::Div).collect();
    let mut report = Report::new();
    let mut t = Map::new();
    t.insert("laurent".into(), table_json(&laurent, &mono)?);
    t.insert("divided".into(), table_json(&divided, &div)?);
    report.set("tables", Value::Object(t));

    let mut checks = Vec::new();
    let mut add = |instance: String, r: LawReport| {
        let mut v = r.to_json();
        v["instance"] = json!(instance);
        checks.push((v, r.passed()));
    };
    let wide_mono: Vec<Key> = (-3..=3).map(Key::Mono).collect();
    let wide_div: Vec<Key> = (0..=4).map(Key::Div).collect();
    add(laurent.name().into(), closed_form_check(&laurent, ClosedForm::LaurentBranches, &wide_mono)?);
    for form in [ClosedForm::DividedMultinomial, ClosedForm::DividedLeft, ClosedForm::DividedRight] {
        add(divided.name().into(), closed_form_check(&divided, form, &wide_div)?);
    }
    for w in ["0/1", "1/1", "-1/1", "2/1"] {
        let minus = format!("{}", -rota_core::exactalg::parse_rational(w)?);
        for (form, id) in [(ClosedForm::ZeroOperator, "0"), (ClosedForm::ScalarOperator, minus.as_str())] {
            let desc = json!({"kind": "dual", "form": {"id": id, "base": "0"}, "weight": w});
            let alg = algebra(&desc, cfg)?;
            add(format!("dual numbers, P = {id}, weight {w}"), closed_form_check(&alg, form, &alg.basis()?)?);
        }
    }
    let id = algebra(&json!({"kind": "dual", "form": {"id": "1", "base": "0"}, "weight": "-1"}), cfg)?;
    add("dual numbers, P = 1, weight -1/1".into(), closed_form_check(&id, ClosedForm::IdentityOperator, &id.basis()?)?);
    let flat = RbAlgebra::scalar_with(Rational::zero(), Rational::zero());
    let mut nilpotent = LawReport::new("Q^2 = 0");
    nilpotent.samples = 1;
    let q = urb_q(&flat);
    if !urb_mul(&flat, &q, &q)?.is_zero() {
        nilpotent.counterexample = Some("Q".into());
    }
    add(format!("{}, P = 0, weight 0/1", flat.name()), nilpotent);

    report.passed = checks.iter().all(|(_, ok)| *ok);
    report.set("closed_forms", Value::Array(checks.into_iter().map(|(v, _)| v).collect()));
    Ok(report)
}
