//! The convolution algebra `Hom(H, A)` of a coalgebra into a Rota-Baxter
//! algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{Map, Value};

use super::coalgebra::Coalgebra;
use crate::error::{Result, RotaError};
use crate::exactalg::{FreeVector, Key, LinearMap, Rational};
use crate::rbalg::{Elem, MatrixOver, RbAlgebra, RotaBaxter};
use crate::rbmod::same_algebra;

/// A linear map `H → A`, stored by its values on the basis of `H`. Basis
/// elements without a value map to zero.
#[derive(Clone, Debug)]
pub struct ConvMap {
    codomain: RbAlgebra,
    values: BTreeMap<Key, Elem>,
    character: bool,
}

impl ConvMap {
    pub fn new(h: &Coalgebra, codomain: &RbAlgebra, values: BTreeMap<Key, Elem>) -> Result<Self> {
        for k in values.keys() {
            if !h.basis().contains(k) {
                return Err(RotaError::UnknownBasisKey(format!("{k} is not in {}", h.name())));
            }
        }
        Ok(ConvMap { codomain: codomain.clone(), values, character: false })
    }

    /// Checks `f(1) = 1` and `f(hh') = f(h)f(h')` on every representable
    /// product of basis elements.
    pub fn character(h: &Coalgebra, codomain: &RbAlgebra, values: BTreeMap<Key, Elem>) -> Result<Self> {
        let mut f = ConvMap::new(h, codomain, values)?;
        let unit = h.unit().ok_or_else(|| RotaError::Invalid(format!("{} has no product", h.name())))?;
        if !codomain.same(&f.value(unit), &codomain.one()?)? {
            return Err(RotaError::NotHomomorphism(format!("f({unit}) is not 1")));
        }
        if let Some(bad) = multiplicativity_witness(h, &f)? {
            return Err(RotaError::NotHomomorphism(format!("f is not multiplicative at {bad}")));
        }
        f.character = true;
        Ok(f)
    }

    /// `u∘ε`, the unit for convolution.
    pub fn unit(h: &Coalgebra, codomain: &RbAlgebra) -> Result<Self> {
        let one = codomain.one()?;
        let values = h
            .basis()
            .iter()
            .filter(|k| !h.counit(k).is_zero())
            .map(|k| Ok((k.clone(), codomain.scale(&h.counit(k), &one)?)))
            .collect::<Result<_>>()?;
        Ok(ConvMap { codomain: codomain.clone(), values, character: h.has_product() })
    }

    pub fn zero(codomain: &RbAlgebra) -> Self {
        ConvMap { codomain: codomain.clone(), values: BTreeMap::new(), character: false }
    }

    pub fn codomain(&self) -> &RbAlgebra {
        &self.codomain
    }

    pub fn is_character(&self) -> bool {
        self.character
    }

    pub fn value(&self, k: &Key) -> Elem {
        self.values.get(k).cloned().unwrap_or_else(|| self.codomain.zero())
    }

    pub fn values(&self) -> &BTreeMap<Key, Elem> {
        &self.values
    }

    /// `f(Σ c_k k)`.
    pub fn eval(&self, v: &FreeVector) -> Result<Elem> {
        let terms: Vec<(Rational, Elem)> = v.iter().map(|(k, c)| (c.clone(), self.value(k))).collect();
        self.codomain.combo(&terms.iter().map(|(c, e)| (c.clone(), e)).collect::<Vec<_>>())
    }

    /// `g∘f` for a map `g` of codomains applied value by value.
    pub fn push_forward(&self, codomain: &RbAlgebra, g: impl Fn(&Elem) -> Result<Elem>) -> Result<Self> {
        let values = self.values.iter().map(|(k, v)| Ok((k.clone(), g(v)?))).collect::<Result<_>>()?;
        Ok(ConvMap { codomain: codomain.clone(), values, character: self.character })
    }

    fn with_values(&self, values: BTreeMap<Key, Elem>) -> Self {
        ConvMap { codomain: self.codomain.clone(), values, character: false }
    }

    /// `{"basis-key": element}` with elements as the codomain writes them.
    pub fn to_json(&self) -> Value {
        Value::Object(
            self.values.iter().map(|(k, v)| (k.to_string(), self.codomain.elem_to_json(v))).collect::<Map<_, _>>(),
        )
    }

    pub fn from_json(h: &Coalgebra, codomain: &RbAlgebra, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| RotaError::Invalid("a map needs an object of values".into()))?;
        let mut values = BTreeMap::new();
        for (k, e) in obj {
            values.insert(k.parse()?, codomain.elem_from_json(e)?);
        }
        ConvMap::new(h, codomain, values)
    }
}

impl fmt::Display for ConvMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} ↦ {v}")?;
        }
        f.write_str("}")
    }
}

/// The first `(h, h')` with `f(hh') ≠ f(h)f(h')`, as text.
pub(crate) fn multiplicativity_witness(h: &Coalgebra, f: &ConvMap) -> Result<Option<String>> {
    let a = &f.codomain;
    for x in h.basis() {
        for y in h.basis() {
            let Some(xy) = h.product(x, y) else { continue };
            match a.same(&f.eval(xy)?, &a.mul(&f.value(x), &f.value(y))?) {
                Ok(true) => {}
                Ok(false) => return Ok(Some(format!("({x}, {y})"))),
                Err(RotaError::PrecisionExhausted(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

/// `(f∗g)(h) = Σ f(h₁)g(h₂)` over the coproduct table.
pub fn convolution_mul(h: &Coalgebra, f: &ConvMap, g: &ConvMap) -> Result<ConvMap> {
    if !same_algebra(&f.codomain, &g.codomain) {
        return Err(RotaError::CodomainMismatch(format!("{} vs {}", f.codomain.name(), g.codomain.name())));
    }
    let a = &f.codomain;
    let mut values = BTreeMap::new();
    for k in h.basis() {
        let mut acc = a.zero();
        for (t, c) in h.coproduct(k)?.iter() {
            let (x, y) = (f.values.get(&t.left), g.values.get(&t.right));
            if let (Some(x), Some(y)) = (x, y) {
                acc = a.add(&acc, &a.scale(c, &a.mul(x, y)?)?)?;
            }
        }
        values.insert(k.clone(), acc);
    }
    Ok(f.with_values(values))
}

/// `P(f) = Q∘f`.
pub fn conv_p(f: &ConvMap) -> Result<ConvMap> {
    let values = f.values.iter().map(|(k, v)| Ok((k.clone(), f.codomain.op(v)?))).collect::<Result<_>>()?;
    Ok(f.with_values(values))
}

/// `f∘σ` for a linear operator `σ` on `H`.
pub fn precompose(h: &Coalgebra, f: &ConvMap, sigma: &LinearMap) -> Result<ConvMap> {
    let values = h
        .basis()
        .iter()
        .map(|k| Ok((k.clone(), f.eval(&sigma.apply(&FreeVector::basis(k.clone()))?)?)))
        .collect::<Result<_>>()?;
    Ok(f.with_values(values))
}

#[derive(Clone, Debug)]
enum ConvOperator {
    /// `f ↦ Q∘f`.
    Codomain,
    /// `f ↦ f∘σ`, with its own weight.
    Coalgebra(LinearMap, Rational),
}

/// `(Hom(H, A), P)` for either choice of operator.
#[derive(Clone, Debug)]
pub struct ConvolutionAlgebra {
    coalgebra: Coalgebra,
    codomain: RbAlgebra,
    operator: ConvOperator,
}

impl ConvolutionAlgebra {
    /// `P(f) = Q∘f`, of the codomain's weight.
    pub fn new(h: &Coalgebra, codomain: &RbAlgebra) -> Self {
        ConvolutionAlgebra { coalgebra: h.clone(), codomain: codomain.clone(), operator: ConvOperator::Codomain }
    }

    /// `P(f) = f∘σ` of weight `λ`.
    pub fn with_coalgebra_operator(
        h: &Coalgebra,
        codomain: &RbAlgebra,
        sigma: &LinearMap,
        lambda: &Rational,
    ) -> Result<Self> {
        if sigma.domain() != h.basis() || sigma.codomain() != h.basis() {
            return Err(RotaError::DimensionMismatch("σ must be an operator on the coalgebra basis".into()));
        }
        Ok(ConvolutionAlgebra {
            coalgebra: h.clone(),
            codomain: codomain.clone(),
            operator: ConvOperator::Coalgebra(sigma.clone(), lambda.clone()),
        })
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn codomain(&self) -> &RbAlgebra {
        &self.codomain
    }

    /// Maps sending each basis element to a codomain sample, cycling
    /// through the samples with a shift per map.
    pub fn sample_maps(&self, count: usize) -> Result<Vec<ConvMap>> {
        let samples = self.codomain.generators()?;
        let basis = self.coalgebra.basis();
        Ok((0..count)
            .map(|s| {
                let values = basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (i + s) % 3 != 2)
                    .map(|(i, k)| (k.clone(), samples[(i * (s + 1) + s) % samples.len()].clone()))
                    .collect();
                self.map(values)
            })
            .collect())
    }

    pub fn map(&self, values: BTreeMap<Key, Elem>) -> ConvMap {
        ConvMap { codomain: self.codomain.clone(), values, character: false }
    }

    fn check(&self, f: &ConvMap) -> Result<()> {
        if same_algebra(&f.codomain, &self.codomain) {
            Ok(())
        } else {
            Err(RotaError::CodomainMismatch(format!("{} vs {}", f.codomain.name(), self.codomain.name())))
        }
    }
}

impl RotaBaxter for ConvolutionAlgebra {
    type Elem = ConvMap;

    fn weight(&self) -> &Rational {
        match &self.operator {
            ConvOperator::Codomain => self.codomain.weight(),
            ConvOperator::Coalgebra(_, w) => w,
        }
    }

    fn zero(&self) -> ConvMap {
        ConvMap::zero(&self.codomain)
    }

    fn one(&self) -> Result<ConvMap> {
        ConvMap::unit(&self.coalgebra, &self.codomain)
    }

    fn add(&self, f: &ConvMap, g: &ConvMap) -> Result<ConvMap> {
        self.check(f)?;
        self.check(g)?;
        let mut values = f.values.clone();
        for (k, v) in &g.values {
            let sum = match values.get(k) {
                Some(x) => self.codomain.add(x, v)?,
                None => v.clone(),
            };
            values.insert(k.clone(), sum);
        }
        Ok(f.with_values(values))
    }

    fn scale(&self, c: &Rational, f: &ConvMap) -> Result<ConvMap> {
        self.check(f)?;
        let values =
            f.values.iter().map(|(k, v)| Ok((k.clone(), self.codomain.scale(c, v)?))).collect::<Result<_>>()?;
        Ok(f.with_values(values))
    }

    fn mul(&self, f: &ConvMap, g: &ConvMap) -> Result<ConvMap> {
        self.check(f)?;
        convolution_mul(&self.coalgebra, f, g)
    }

    fn op(&self, f: &ConvMap) -> Result<ConvMap> {
        self.check(f)?;
        match &self.operator {
            ConvOperator::Codomain => conv_p(f),
            ConvOperator::Coalgebra(sigma, _) => precompose(&self.coalgebra, f, sigma),
        }
    }

    fn same(&self, f: &ConvMap, g: &ConvMap) -> Result<bool> {
        for k in self.coalgebra.basis() {
            if !self.codomain.same(&f.value(k), &g.value(k))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The value matrix `(f(E_ij))` of a map on the matrix coalgebra.
pub fn value_matrix(f: &ConvMap, n: usize) -> MatrixOver {
    MatrixOver::from_fn(n, n, |i, j| f.value(&super::coalgebra::entry(i, j)))
}

/// The inverse of [`value_matrix`].
pub fn from_value_matrix(codomain: &RbAlgebra, m: &MatrixOver) -> ConvMap {
    let values = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| (super::coalgebra::entry(i, j), m.get(i, j).clone()))
        .collect();
    ConvMap { codomain: codomain.clone(), values, character: false }
}
