//! Algebraic Birkhoff factorization of characters of a connected graded
//! Hopf algebra into a weight −1 algebra with idempotent operator.
//!
//! The factors come from the recursion by degree
//! `φ₋(h) = −Q(φ(h) + Σ′ φ₋(h′)φ(h″))` and `φ₊(h) = (1 − Q)(…)` over the
//! reduced coproduct. Every postcondition is then checked independently.

use std::collections::BTreeMap;

use num_traits::One;

use super::coalgebra::Coalgebra;
use super::convolution::{convolution_mul, multiplicativity_witness, ConvMap};
use crate::error::{Result, RotaError};
use crate::exactalg::{fmt_rational, int, Key, Rational};
use crate::rbalg::{Elem, RbAlgebra, RbHom, RotaBaxter};
use crate::rbmod::{RbModule, RotaBaxterModule};
use crate::report::LawReport;

/// `φ = φ₋⁻¹ ∗ φ₊` with the audit of its defining properties.
#[derive(Clone, Debug)]
pub struct Birkhoff {
    pub minus: ConvMap,
    pub plus: ConvMap,
    pub checks: Vec<LawReport>,
}

impl Birkhoff {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(LawReport::passed)
    }
}

fn preconditions(h: &Coalgebra, a: &RbAlgebra) -> Result<()> {
    if *a.weight() != int(-1) {
        return Err(RotaError::WrongWeight { expected: "-1".into(), found: fmt_rational(a.weight()) });
    }
    for x in a.generators()? {
        let qx = a.op(&x)?;
        if !a.same(&a.op(&qx)?, &qx)? {
            return Err(RotaError::NotIdempotent(format!("Q(Q({x})) ≠ Q({x})")));
        }
    }
    h.connected_grading()?;
    if !h.has_product() {
        return Err(RotaError::NotConnectedGraded(format!("{} has no product", h.name())));
    }
    Ok(())
}

fn at_forest(k: &Key, e: RotaError) -> RotaError {
    match e {
        RotaError::PrecisionExhausted(why) => RotaError::PrecisionExhausted(format!("at forest {k}: {why}")),
        e => e,
    }
}

/// Factors a character `φ: H → A`. `A` must have weight −1 and `Q² = Q`.
pub fn birkhoff_factorize(h: &Coalgebra, phi: &ConvMap) -> Result<Birkhoff> {
    let a = phi.codomain();
    preconditions(h, a)?;
    let unit = h.unit().expect("checked by preconditions").clone();
    let one = a.one()?;
    let mut minus: BTreeMap<Key, Elem> = BTreeMap::new();
    let mut plus: BTreeMap<Key, Elem> = BTreeMap::new();
    for k in h.by_degree()? {
        if k == unit {
            minus.insert(k.clone(), one.clone());
            plus.insert(k, one.clone());
            continue;
        }
        let step = || -> Result<(Elem, Elem)> {
            let mut acc = phi.value(&k);
            for (t, c) in h.reduced_coproduct(&k)?.iter() {
                let left = minus.get(&t.left).expect("lower degrees come first");
                acc = a.add(&acc, &a.scale(c, &a.mul(left, &phi.value(&t.right))?)?)?;
            }
            let m = a.scale(&-Rational::one(), &a.op(&acc)?)?;
            Ok((m.clone(), a.add(&acc, &m)?))
        };
        let (m, p) = step().map_err(|e| at_forest(&k, e))?;
        plus.insert(k.clone(), p);
        minus.insert(k, m);
    }
    let minus = ConvMap::new(h, a, minus)?;
    let plus = ConvMap::new(h, a, plus)?;
    let checks = audit(h, phi, &minus, &plus)?;
    Ok(Birkhoff { minus, plus, checks })
}

fn audit(h: &Coalgebra, phi: &ConvMap, minus: &ConvMap, plus: &ConvMap) -> Result<Vec<LawReport>> {
    let a = phi.codomain();
    let unit = h.unit().expect("graded with product");
    let one = a.one()?;
    let mut convolution = LawReport::new("plus = minus * phi");
    let mut minus_polar = LawReport::new("minus in k + Q(A)");
    let mut plus_regular = LawReport::new("plus in k + (1-Q)(A)");
    let mut units = LawReport::new("minus(1) = plus(1) = 1");
    let conv = convolution_mul(h, minus, phi)?;
    for k in h.basis() {
        convolution.samples += 1;
        if convolution.passed() && !a.same(&conv.value(k), &plus.value(k))? {
            convolution.counterexample = Some(k.to_string());
        }
        if k == unit {
            units.samples += 1;
            if !a.same(&minus.value(k), &one)? || !a.same(&plus.value(k), &one)? {
                units.counterexample = Some(k.to_string());
            }
            continue;
        }
        minus_polar.samples += 1;
        plus_regular.samples += 1;
        let m = minus.value(k);
        if minus_polar.passed() && !a.same(&a.op(&m)?, &m)? {
            minus_polar.counterexample = Some(k.to_string());
        }
        if plus_regular.passed() && !a.same(&a.op(&plus.value(k))?, &a.zero())? {
            plus_regular.counterexample = Some(k.to_string());
        }
    }
    let mut checks = vec![convolution, minus_polar, plus_regular, units];
    for (name, f) in [("minus multiplicative", minus), ("plus multiplicative", plus)] {
        let mut r = LawReport::new(name);
        r.samples = h.basis().len().pow(2);
        r.counterexample = multiplicativity_witness(h, f)?;
        checks.push(r);
    }
    Ok(checks)
}

/// Factorizing then pushing forward along `f` agrees with pushing forward
/// then factorizing, on every basis element.
pub fn birkhoff_functorial_check(h: &Coalgebra, f: &RbHom, phi: &ConvMap) -> Result<bool> {
    let before = birkhoff_factorize(h, phi)?;
    let pushed = phi.push_forward(f.target(), |e| f.apply(e))?;
    let after = birkhoff_factorize(h, &pushed)?;
    let target = f.target();
    for k in h.basis() {
        for (x, y) in [(&before.minus, &after.minus), (&before.plus, &after.plus)] {
            if !target.same(&f.apply(&x.value(k))?, &y.value(k))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A linear map `H → V` into a module over the codomain of a character.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub values: BTreeMap<Key, Elem>,
}

impl ModuleMap {
    pub fn value(&self, v: &RbModule, k: &Key) -> Elem {
        self.values.get(k).cloned().unwrap_or_else(|| v.vzero())
    }
}

/// `(φ ∗ ψ)(h) = Σ φ(h₁)·ψ(h₂)`.
pub fn module_convolution(h: &Coalgebra, v: &RbModule, phi: &ConvMap, psi: &ModuleMap) -> Result<ModuleMap> {
    let mut values = BTreeMap::new();
    for k in h.basis() {
        let mut acc = v.vzero();
        for (t, c) in h.coproduct(k)?.iter() {
            let term = v.act(&phi.value(&t.left), &psi.value(v, &t.right))?;
            acc = v.vcombo(&[(Rational::one(), &acc), (c.clone(), &term)])?;
        }
        values.insert(k.clone(), acc);
    }
    Ok(ModuleMap { values })
}

/// The first `(h, x)` with `ψ(hx) ≠ φ(h)·ψ(x)`.
fn linearity_witness(h: &Coalgebra, v: &RbModule, phi: &ConvMap, psi: &ModuleMap) -> Result<Option<String>> {
    for x in h.basis() {
        for y in h.basis() {
            let Some(xy) = h.product(x, y) else { continue };
            let mut lhs = v.vzero();
            for (k, c) in xy.iter() {
                lhs = v.vcombo(&[(Rational::one(), &lhs), (c.clone(), &psi.value(v, k))])?;
            }
            let rhs = v.act(&phi.value(x), &psi.value(v, y))?;
            match v.vsame(&lhs, &rhs) {
                Ok(true) => {}
                Ok(false) => return Ok(Some(format!("({x}, {y})"))),
                Err(RotaError::PrecisionExhausted(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

/// `ψ±(h) = φ±(h)·ψ(1)`, with the checks `ψ₊ = φ₋ ∗ ψ` and
/// `ψ±(hx) = φ±(h)ψ±(x)`.
#[derive(Clone, Debug)]
pub struct ModuleBirkhoff {
    pub character: Birkhoff,
    pub minus: ModuleMap,
    pub plus: ModuleMap,
    pub checks: Vec<LawReport>,
}

impl ModuleBirkhoff {
    pub fn verified(&self) -> bool {
        self.character.verified() && self.checks.iter().all(LawReport::passed)
    }
}

/// Factors a `φ`-linear map `ψ: H → V`.
pub fn module_birkhoff(h: &Coalgebra, phi: &ConvMap, v: &RbModule, psi: &ModuleMap) -> Result<ModuleBirkhoff> {
    if let Some(w) = linearity_witness(h, v, phi, psi)? {
        return Err(RotaError::NotPhiLinear(format!("ψ(hx) ≠ φ(h)ψ(x) at {w}")));
    }
    let character = birkhoff_factorize(h, phi)?;
    let unit = h.unit().expect("checked by the factorization");
    let seed = psi.value(v, unit);
    let induced = |f: &ConvMap| -> Result<ModuleMap> {
        let values = h.basis().iter().map(|k| Ok((k.clone(), v.act(&f.value(k), &seed)?))).collect::<Result<_>>()?;
        Ok(ModuleMap { values })
    };
    let minus = induced(&character.minus)?;
    let plus = induced(&character.plus)?;

    let mut convolution = LawReport::new("psi_plus = minus * psi");
    let conv = module_convolution(h, v, &character.minus, psi)?;
    for k in h.basis() {
        convolution.samples += 1;
        if !v.vsame(&conv.value(v, k), &plus.value(v, k))? {
            convolution.counterexample = Some(k.to_string());
            break;
        }
    }
    let mut checks = vec![convolution];
    for (name, f, g) in [("psi_minus linear", &character.minus, &minus), ("psi_plus linear", &character.plus, &plus)] {
        let mut r = LawReport::new(name);
        r.samples = h.basis().len().pow(2);
        r.counterexample = linearity_witness(h, v, f, g)?;
        checks.push(r);
    }
    Ok(ModuleBirkhoff { character, minus, plus, checks })
}

/// The character of the rooted-tree algebra with the given values on
/// single trees, extended multiplicatively to forests.
pub fn tree_character(h: &Coalgebra, a: &RbAlgebra, trees: &BTreeMap<Key, Elem>) -> Result<ConvMap> {
    let mut values = BTreeMap::new();
    for k in h.basis() {
        let mut acc = a.one()?;
        for t in super::trees::forest_trees(k)? {
            let v = trees.get(&t).ok_or_else(|| RotaError::Invalid(format!("no value for the tree {t}")))?;
            acc = a.mul(&acc, v).map_err(|e| at_forest(k, e))?;
        }
        values.insert(k.clone(), acc);
    }
    ConvMap::character(h, a, values)
}

/// `T ↦ ε^(−|T|)` in the Laurent algebra, `|T|` the vertex count.
pub fn pole_character(h: &Coalgebra, a: &RbAlgebra) -> Result<ConvMap> {
    let mut trees = BTreeMap::new();
    for k in h.basis() {
        if let Some(d) = h.degree(k) {
            if super::trees::forest_trees(k)?.len() == 1 {
                trees.insert(k.clone(), a.embed(&crate::exactalg::FreeVector::basis(Key::Mono(-(d as i64))))?);
            }
        }
    }
    tree_character(h, a, &trees)
}
