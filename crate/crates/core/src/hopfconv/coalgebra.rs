//! Coalgebras given by coproduct tables, and their comodules.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Result, RotaError};
use crate::exactalg::{
    fmt_rational, keys_from_json, keys_to_json, rational_from_json, vector_from_json, vector_to_json, FreeVector, Key,
    LinearMap, Rational, TensorKey,
};
use crate::report::LawReport;

type Triple = (Key, Key, Key);

/// Product and unit of a bialgebra, on basis keys. Pairs whose product
/// leaves a truncated basis are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    pub unit: Key,
    pub table: BTreeMap<(Key, Key), FreeVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    name: String,
    basis: Vec<Key>,
    coproduct: BTreeMap<Key, FreeVector<TensorKey>>,
    counit: BTreeMap<Key, Rational>,
    grading: Option<BTreeMap<Key, usize>>,
    product: Option<ProductTable>,
}

impl Coalgebra {
    /// Checks coassociativity and the counit laws on every basis element.
    pub fn new(
        name: &str,
        basis: Vec<Key>,
        coproduct: BTreeMap<Key, FreeVector<TensorKey>>,
        mut counit: BTreeMap<Key, Rational>,
    ) -> Result<Self> {
        counit.retain(|_, c| !c.is_zero());
        let c = Coalgebra { name: name.into(), basis, coproduct, counit, grading: None, product: None };
        c.verify()?;
        Ok(c)
    }

    /// Adds a grading; it must be connected (degree 0 is spanned by the
    /// unit when there is one, otherwise by a single element) and `Δ` must
    /// preserve total degree.
    pub fn with_grading(mut self, grading: BTreeMap<Key, usize>) -> Result<Self> {
        self.grading = Some(grading);
        self.connected_grading()?;
        Ok(self)
    }

    /// Adds a product; `Δ` and `ε` must be multiplicative on every
    /// representable product of basis elements.
    pub fn with_product(mut self, product: ProductTable) -> Result<Self> {
        self.product = Some(product);
        self.verify_bialgebra()?;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[Key] {
        &self.basis
    }

    pub fn coproduct(&self, k: &Key) -> Result<&FreeVector<TensorKey>> {
        self.coproduct.get(k).ok_or_else(|| RotaError::UnknownBasisKey(k.to_string()))
    }

    pub fn counit(&self, k: &Key) -> Rational {
        self.counit.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self, k: &Key) -> Option<usize> {
        self.grading.as_ref().and_then(|g| g.get(k).copied())
    }

    pub fn unit(&self) -> Option<&Key> {
        self.product.as_ref().map(|p| &p.unit)
    }

    pub fn has_product(&self) -> bool {
        self.product.is_some()
    }

    /// `hh'`, or `None` when the product leaves the (truncated) basis.
    pub fn product(&self, a: &Key, b: &Key) -> Option<&FreeVector> {
        self.product.as_ref().and_then(|p| p.table.get(&(a.clone(), b.clone())))
    }

    /// `Δ(v)` for a combination of basis keys.
    pub fn coproduct_vec(&self, v: &FreeVector) -> Result<FreeVector<TensorKey>> {
        v.linear_extend(|k| self.coproduct(k).cloned())
    }

    /// `Δ'h = Δh − h⊗1 − 1⊗h`, for connected graded bialgebras.
    pub fn reduced_coproduct(&self, k: &Key) -> Result<FreeVector<TensorKey>> {
        let unit = self.unit().ok_or_else(|| RotaError::NotConnectedGraded(format!("{} has no unit", self.name)))?;
        let mut d = self.coproduct(k)?.clone();
        if k != unit {
            d.add_term(TensorKey::new(k.clone(), unit.clone()), -Rational::one());
            d.add_term(TensorKey::new(unit.clone(), k.clone()), -Rational::one());
        }
        Ok(d)
    }

    /// Basis keys ordered by degree, then key.
    pub fn by_degree(&self) -> Result<Vec<Key>> {
        let g = self
            .grading
            .as_ref()
            .ok_or_else(|| RotaError::NotConnectedGraded(format!("{} is not graded", self.name)))?;
        let mut keys = self.basis.clone();
        keys.sort_by_key(|k| (g.get(k).copied().unwrap_or(usize::MAX), k.clone()));
        Ok(keys)
    }

    /// Errors unless this is a connected graded bialgebra.
    pub fn connected_grading(&self) -> Result<()> {
        let bad = |why: String| Err(RotaError::NotConnectedGraded(why));
        let Some(g) = &self.grading else {
            return bad(format!("{} has no grading", self.name));
        };
        let degree_zero: Vec<&Key> = self.basis.iter().filter(|k| g.get(*k) == Some(&0)).collect();
        if self.basis.iter().any(|k| !g.contains_key(k)) {
            return bad("every basis element needs a degree".into());
        }
        if degree_zero.len() != 1 || self.unit().is_some_and(|u| degree_zero[0] != u) {
            return bad("degree 0 must be spanned by the unit".into());
        }
        for k in &self.basis {
            for (t, _) in self.coproduct(k)?.iter() {
                if g.get(&t.left).zip(g.get(&t.right)).map(|(a, b)| a + b) != g.get(k).copied() {
                    return bad(format!("Δ({k}) contains {t} of the wrong degree"));
                }
            }
        }
        Ok(())
    }

    fn verify(&self) -> Result<()> {
        let fail = |why: String| Err(RotaError::AxiomViolation(why));
        for k in &self.basis {
            let d = self.coproduct(k)?;
            for t in d.keys() {
                for x in [&t.left, &t.right] {
                    if !self.coproduct.contains_key(x) {
                        return Err(RotaError::UnknownBasisKey(format!("{x} in Δ({k})")));
                    }
                }
            }
            let mut left: FreeVector<Triple> = FreeVector::zero();
            let mut right: FreeVector<Triple> = FreeVector::zero();
            let mut eps_left = FreeVector::zero();
            let mut eps_right = FreeVector::zero();
            for (t, c) in d.iter() {
                for (s, e) in self.coproduct(&t.left)?.iter() {
                    left.add_term((s.left.clone(), s.right.clone(), t.right.clone()), c * e);
                }
                for (s, e) in self.coproduct(&t.right)?.iter() {
                    right.add_term((t.left.clone(), s.left.clone(), s.right.clone()), c * e);
                }
                eps_left.add_term(t.right.clone(), c * self.counit(&t.left));
                eps_right.add_term(t.left.clone(), c * self.counit(&t.right));
            }
            if left != right {
                return fail(format!("coassociativity fails at {k}"));
            }
            let id = FreeVector::basis(k.clone());
            if eps_left != id || eps_right != id {
                return fail(format!("counit law fails at {k}"));
            }
        }
        Ok(())
    }

    fn verify_bialgebra(&self) -> Result<()> {
        let Some(p) = &self.product else { return Ok(()) };
        let fail = |why: String| Err(RotaError::AxiomViolation(why));
        if self.counit(&p.unit) != Rational::one()
            || *self.coproduct(&p.unit)? != FreeVector::basis(TensorKey::new(p.unit.clone(), p.unit.clone()))
        {
            return fail("the unit must be group-like".into());
        }
        for ((a, b), ab) in &p.table {
            let lhs = self.coproduct_vec(ab)?;
            let mut rhs = FreeVector::zero();
            for (s, c) in self.coproduct(a)?.iter() {
                for (t, e) in self.coproduct(b)?.iter() {
                    let (Some(l), Some(r)) = (self.product(&s.left, &t.left), self.product(&s.right, &t.right)) else {
                        return fail(format!("Δ({a}·{b}) leaves the basis"));
                    };
                    rhs.add_scaled(&(c * e), &crate::exactalg::tensor_expand(l, r));
                }
            }
            if lhs != rhs {
                return fail(format!("Δ is not multiplicative at ({a}, {b})"));
            }
            let eps: Rational = ab.iter().map(|(k, c)| c * self.counit(k)).sum();
            if eps != self.counit(a) * self.counit(b) {
                return fail(format!("ε is not multiplicative at ({a}, {b})"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut cop = Map::new();
        for k in &self.basis {
            cop.insert(k.to_string(), vector_to_json(&self.coproduct[k]));
        }
        let mut eps = Map::new();
        for (k, c) in &self.counit {
            if !c.is_zero() {
                eps.insert(k.to_string(), Value::String(fmt_rational(c)));
            }
        }
        let mut out = json!({"name": self.name, "basis": keys_to_json(&self.basis), "coproduct": cop, "counit": eps});
        if let Some(g) = &self.grading {
            out["grading"] = Value::Object(g.iter().map(|(k, d)| (k.to_string(), json!(d))).collect());
        }
        if let Some(p) = &self.product {
            out["unit"] = Value::String(p.unit.to_string());
            out["product"] = Value::Object(
                p.table
                    .iter()
                    .map(|((a, b), v)| (TensorKey::new(a.clone(), b.clone()).to_string(), vector_to_json(v)))
                    .collect(),
            );
        }
        out
    }

    /// An explicit table as written by [`Coalgebra::to_json`], or one of
    /// `{"kind": "rooted-trees", "max_degree": n}`, `{"kind": "matrix", "n": n}`,
    /// `{"kind": "triangular", "n": n}`, `{"kind": "trivial"}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let size = |name: &str| -> Result<usize> {
            let n = v
                .get(name)
                .and_then(Value::as_u64)
                .ok_or_else(|| RotaError::Invalid(format!("coalgebra needs `{name}`")))?;
            usize::try_from(n).map_err(|_| RotaError::Invalid(format!("`{name}` is too large")))
        };
        match v.get("kind").and_then(Value::as_str) {
            Some("rooted-trees") => return super::trees::rooted_tree_hopf(size("max_degree")?),
            Some("matrix") => return matrix_coalgebra(size("n")?),
            Some("triangular") => return triangular_coalgebra(size("n")?),
            Some("trivial") => return trivial_coalgebra(),
            Some(other) => return Err(RotaError::Invalid(format!("unknown coalgebra kind `{other}`"))),
            None => {}
        }
        let obj = |name: &str| {
            v.get(name)
                .and_then(Value::as_object)
                .ok_or_else(|| RotaError::Invalid(format!("coalgebra needs an object `{name}`")))
        };
        let basis = keys_from_json(&v["basis"])?;
        let mut coproduct = BTreeMap::new();
        for (k, d) in obj("coproduct")? {
            coproduct.insert(k.parse()?, vector_from_json(d)?);
        }
        let mut counit = BTreeMap::new();
        for (k, c) in obj("counit")? {
            counit.insert(k.parse()?, rational_from_json(c)?);
        }
        let name = v.get("name").and_then(Value::as_str).unwrap_or("coalgebra");
        let mut c = Coalgebra::new(name, basis, coproduct, counit)?;
        if let Some(p) = v.get("product") {
            let unit =
                v["unit"].as_str().ok_or_else(|| RotaError::Invalid("a product needs a `unit`".into()))?.parse()?;
            let mut table = BTreeMap::new();
            for (k, prod) in p.as_object().ok_or_else(|| RotaError::Invalid("`product` must be an object".into()))? {
                let t: TensorKey = k.parse()?;
                table.insert((t.left, t.right), vector_from_json(prod)?);
            }
            c = c.with_product(ProductTable { unit, table })?;
        }
        if v.get("grading").is_some() {
            let mut g = BTreeMap::new();
            for (k, d) in obj("grading")? {
                let d = d.as_u64().ok_or_else(|| RotaError::Invalid("degrees must be non-negative integers".into()))?;
                g.insert(k.parse()?, d as usize);
            }
            c = c.with_grading(g)?;
        }
        Ok(c)
    }
}

pub(crate) fn entry(i: usize, j: usize) -> Key {
    Key::name(format!("E{}{}", i + 1, j + 1))
}

/// `M_n(𝐤)*` with `Δ(E_ij) = Σ_l E_il ⊗ E_lj` and `ε(E_ij) = δ_ij`.
pub fn matrix_coalgebra(n: usize) -> Result<Coalgebra> {
    upper_or_full(n, false)
}

/// The span of `E_ij`, `i ≤ j`, a subcoalgebra of the matrix coalgebra.
pub fn triangular_coalgebra(n: usize) -> Result<Coalgebra> {
    upper_or_full(n, true)
}

fn upper_or_full(n: usize, upper: bool) -> Result<Coalgebra> {
    if n == 0 {
        return Err(RotaError::Invalid("matrix coalgebras need n ≥ 1".into()));
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| !upper || i <= j).collect();
    let basis: Vec<Key> = pairs.iter().map(|&(i, j)| entry(i, j)).collect();
    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    for &(i, j) in &pairs {
        let d = (0..n)
            .filter(|&l| !upper || (i <= l && l <= j))
            .map(|l| (TensorKey::new(entry(i, l), entry(l, j)), Rational::one()))
            .collect();
        coproduct.insert(entry(i, j), d);
        counit.insert(entry(i, j), if i == j { Rational::one() } else { Rational::zero() });
    }
    let name = if upper { format!("triangular-{n}") } else { format!("matrix-{n}") };
    Coalgebra::new(&name, basis, coproduct, counit)
}

/// `𝐤` as a Hopf algebra: `Δ1 = 1⊗1`.
pub fn trivial_coalgebra() -> Result<Coalgebra> {
    let one = Key::name("1");
    let c = Coalgebra::new(
        "trivial",
        vec![one.clone()],
        BTreeMap::from([(one.clone(), FreeVector::basis(TensorKey::new(one.clone(), one.clone())))]),
        BTreeMap::from([(one.clone(), Rational::one())]),
    )?;
    let table = BTreeMap::from([((one.clone(), one.clone()), FreeVector::basis(one.clone()))]);
    c.with_product(ProductTable { unit: one.clone(), table })?.with_grading(BTreeMap::from([(one, 0)]))
}

/// Checks `(σ⊗σ)Δ = (σ⊗1 + 1⊗σ + λ·1⊗1)Δσ` on every basis element, the
/// condition under which `f ↦ f∘σ` is a Rota-Baxter operator of weight `λ`
/// on every convolution algebra `Hom(H, A)`.
pub fn rb_coalgebra_check(h: &Coalgebra, sigma: &LinearMap, lambda: &Rational) -> Result<LawReport> {
    if sigma.domain() != h.basis() || sigma.codomain() != h.basis() {
        return Err(RotaError::DimensionMismatch("σ must be an operator on the coalgebra basis".into()));
    }
    let s = |k: &Key| sigma.apply(&FreeVector::basis(k.clone()));
    let mut report = LawReport::new("rota-baxter coalgebra");
    for k in h.basis() {
        report.samples += 1;
        let mut lhs = FreeVector::zero();
        for (t, c) in h.coproduct(k)?.iter() {
            lhs.add_scaled(c, &crate::exactalg::tensor_expand(&s(&t.left)?, &s(&t.right)?));
        }
        let mut rhs = FreeVector::zero();
        for (t, c) in h.coproduct_vec(&s(k)?)?.iter() {
            let (l, r) = (FreeVector::basis(t.left.clone()), FreeVector::basis(t.right.clone()));
            rhs.add_scaled(c, &crate::exactalg::tensor_expand(&s(&t.left)?, &r));
            rhs.add_scaled(c, &crate::exactalg::tensor_expand(&l, &s(&t.right)?));
            rhs.add_scaled(&(c * lambda), &FreeVector::basis(t.clone()));
        }
        if lhs != rhs {
            report.counterexample = Some(k.to_string());
            break;
        }
    }
    Ok(report)
}

/// A right comodule `δ: M → M ⊗ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    coalgebra: Coalgebra,
    basis: Vec<Key>,
    coaction: BTreeMap<Key, FreeVector<TensorKey>>,
}

impl Comodule {
    /// Checks `(δ⊗1)δ = (1⊗Δ)δ` and `(1⊗ε)δ = id` on every basis element.
    pub fn new(h: &Coalgebra, basis: Vec<Key>, coaction: BTreeMap<Key, FreeVector<TensorKey>>) -> Result<Self> {
        let m = Comodule { coalgebra: h.clone(), basis, coaction };
        for k in &m.basis {
            let d = m.coaction(k)?;
            let mut left: FreeVector<Triple> = FreeVector::zero();
            let mut right: FreeVector<Triple> = FreeVector::zero();
            let mut counit = FreeVector::zero();
            for (t, c) in d.iter() {
                for (s, e) in m.coaction(&t.left)?.iter() {
                    left.add_term((s.left.clone(), s.right.clone(), t.right.clone()), c * e);
                }
                for (s, e) in h.coproduct(&t.right)?.iter() {
                    right.add_term((t.left.clone(), s.left.clone(), s.right.clone()), c * e);
                }
                counit.add_term(t.left.clone(), c * h.counit(&t.right));
            }
            if left != right {
                return Err(RotaError::AxiomViolation(format!("coaction is not coassociative at {k}")));
            }
            if counit != FreeVector::basis(k.clone()) {
                return Err(RotaError::AxiomViolation(format!("coaction is not counital at {k}")));
            }
        }
        Ok(m)
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn basis(&self) -> &[Key] {
        &self.basis
    }

    pub fn coaction(&self, k: &Key) -> Result<&FreeVector<TensorKey>> {
        self.coaction.get(k).ok_or_else(|| RotaError::UnknownBasisKey(k.to_string()))
    }

    /// `h_ij ∈ H` with `δ(m_j) = Σ_i m_i ⊗ h_ij`.
    pub fn coefficient(&self, i: usize, j: usize) -> Result<FreeVector> {
        let mi = &self.basis[i];
        Ok(self
            .coaction(&self.basis[j])?
            .iter()
            .filter(|(t, _)| &t.left == mi)
            .map(|(t, c)| (t.right.clone(), c.clone()))
            .collect())
    }

    /// `𝐤ⁿ` over `M_n(𝐤)*` with `δ(e_i) = Σ_l e_l ⊗ E_li`.
    pub fn standard(n: usize) -> Result<Self> {
        Self::standard_over(&matrix_coalgebra(n)?, n, false)
    }

    /// `𝐤ⁿ` over the triangular coalgebra, `δ(e_i) = Σ_{l ≤ i} e_l ⊗ E_li`.
    pub fn triangular(n: usize) -> Result<Self> {
        Self::standard_over(&triangular_coalgebra(n)?, n, true)
    }

    fn standard_over(h: &Coalgebra, n: usize, upper: bool) -> Result<Self> {
        let e = |i: usize| Key::name(format!("e{}", i + 1));
        let basis: Vec<Key> = (0..n).map(e).collect();
        let coaction = (0..n)
            .map(|i| {
                let d = (0..n)
                    .filter(|&l| !upper || l <= i)
                    .map(|l| (TensorKey::new(e(l), entry(l, i)), Rational::one()))
                    .collect();
                (e(i), d)
            })
            .collect();
        Comodule::new(h, basis, coaction)
    }

    /// `H` coacting on itself by `Δ`.
    pub fn regular(h: &Coalgebra) -> Result<Self> {
        let coaction = h.basis().iter().map(|k| Ok((k.clone(), h.coproduct(k)?.clone()))).collect::<Result<_>>()?;
        Comodule::new(h, h.basis().to_vec(), coaction)
    }
}
