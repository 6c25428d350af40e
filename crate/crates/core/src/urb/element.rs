//! Elements of `U_RB(R) = R ⊕ (R ⊗ R)` and the product.

use std::fmt;

use num_traits::One;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Result, RotaError};
use crate::exactalg::{tensor_expand, vector_from_json, vector_to_json, FreeVector, Key, Rational, TensorKey};
use crate::rbalg::RbAlgebra;
use crate::sampling::{small_coeff, SeededRng};

/// `scalar + Σ c·(a ⊗ b)` in basis coordinates of `R`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UrbElement {
    pub scalar: FreeVector,
    pub tensor: FreeVector<TensorKey>,
}

/// Basis element of `U_RB(R)` for finite-dimensional `R`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UrbKey {
    Scalar(Key),
    Tensor(TensorKey),
}

impl fmt::Display for UrbKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UrbKey::Scalar(k) => write!(f, "{k}"),
            UrbKey::Tensor(t) => write!(f, "{t}"),
        }
    }
}

impl UrbElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(v: FreeVector) -> Self {
        UrbElement { scalar: v, tensor: FreeVector::zero() }
    }

    /// `a ⊗ b` for two elements of `R`.
    pub fn pure(a: &FreeVector, b: &FreeVector) -> Self {
        UrbElement { scalar: FreeVector::zero(), tensor: tensor_expand(a, b) }
    }

    pub fn tensor_key(a: Key, b: Key) -> Self {
        UrbElement { scalar: FreeVector::zero(), tensor: FreeVector::basis(TensorKey::new(a, b)) }
    }

    pub fn from_key(k: &UrbKey) -> Self {
        match k {
            UrbKey::Scalar(a) => UrbElement::scalar(FreeVector::basis(a.clone())),
            UrbKey::Tensor(t) => UrbElement::tensor_key(t.left.clone(), t.right.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.tensor.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        UrbElement { scalar: self.scalar.add(&other.scalar), tensor: self.tensor.add(&other.tensor) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        UrbElement { scalar: self.scalar.sub(&other.scalar), tensor: self.tensor.sub(&other.tensor) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UrbElement { scalar: self.scalar.scale(c), tensor: self.tensor.scale(c) }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &Self) {
        self.scalar.add_scaled(c, &other.scalar);
        self.tensor.add_scaled(c, &other.tensor);
    }

    /// Coordinates on [`UrbKey`]s.
    pub fn coords(&self) -> FreeVector<UrbKey> {
        let s = self.scalar.iter().map(|(k, c)| (UrbKey::Scalar(k.clone()), c.clone()));
        let t = self.tensor.iter().map(|(k, c)| (UrbKey::Tensor(k.clone()), c.clone()));
        s.chain(t).collect()
    }

    pub fn from_coords(v: &FreeVector<UrbKey>) -> Self {
        let mut out = UrbElement::zero();
        for (k, c) in v.iter() {
            out.add_scaled(c, &UrbElement::from_key(k));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"scalar": vector_to_json(&self.scalar), "tensor": vector_to_json(&self.tensor)})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| RotaError::Invalid("U_RB element must be an object".into()))?;
        let part = |name: &str| obj.get(name).cloned().unwrap_or_else(|| json!({}));
        Ok(UrbElement { scalar: vector_from_json(&part("scalar"))?, tensor: vector_from_json(&part("tensor"))? })
    }
}

impl fmt::Display for UrbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.scalar.is_zero(), self.tensor.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.scalar),
            (true, false) => write!(f, "{}", self.tensor),
            (false, false) => write!(f, "{} + {}", self.scalar, self.tensor),
        }
    }
}

/// `Q = 1 ⊗ 1`.
pub fn urb_q(alg: &RbAlgebra) -> UrbElement {
    let one = alg.unit_vec();
    UrbElement::pure(&one, &one)
}

/// The unit of `U_RB(R)`, the unit of `R`.
pub fn urb_one(alg: &RbAlgebra) -> UrbElement {
    UrbElement::scalar(alg.unit_vec())
}

/// Product in `U_RB(R)`. Tensors multiply by
/// `(r₁⊗s₁)(r₂⊗s₂) = r₁P(s₁r₂) ⊗ s₂ + r₁ ⊗ P̃(s₁r₂)s₂`, and `R` acts on the
/// tensor part by `s(a⊗b) = sa ⊗ b`, `(a⊗b)s = a ⊗ bs`.
pub fn urb_mul(alg: &RbAlgebra, u: &UrbElement, v: &UrbElement) -> Result<UrbElement> {
    let mut out = UrbElement::scalar(alg.vmul(&u.scalar, &v.scalar)?);
    if !u.scalar.is_zero() {
        for (t, c) in v.tensor.iter() {
            let left = alg.vmul(&u.scalar, &FreeVector::basis(t.left.clone()))?;
            out.tensor.add_scaled(c, &tensor_expand(&left, &FreeVector::basis(t.right.clone())));
        }
    }
    if !v.scalar.is_zero() {
        for (t, c) in u.tensor.iter() {
            let right = alg.vmul(&FreeVector::basis(t.right.clone()), &v.scalar)?;
            out.tensor.add_scaled(c, &tensor_expand(&FreeVector::basis(t.left.clone()), &right));
        }
    }
    for (t1, c1) in u.tensor.iter() {
        let r1 = FreeVector::basis(t1.left.clone());
        for (t2, c2) in v.tensor.iter() {
            let s2 = FreeVector::basis(t2.right.clone());
            let mid = alg.basis_mul(&t1.right, &t2.left)?;
            let c = c1 * c2;
            let left = alg.vmul(&r1, &alg.vop(&mid)?)?;
            out.tensor.add_scaled(&c, &tensor_expand(&left, &s2));
            let right = alg.vmul(&alg.vtilde(&mid)?, &s2)?;
            out.tensor.add_scaled(&c, &tensor_expand(&r1, &right));
        }
    }
    Ok(out)
}

/// Left-to-right product of several factors.
pub fn urb_product(alg: &RbAlgebra, factors: &[UrbElement]) -> Result<UrbElement> {
    let mut acc = urb_one(alg);
    for f in factors {
        acc = urb_mul(alg, &acc, f)?;
    }
    Ok(acc)
}

/// Basis `{xᵢ} ∪ {xᵢ ⊗ xⱼ}` of `U_RB(R)` for finite-dimensional `R`.
pub fn urb_basis(alg: &RbAlgebra) -> Result<Vec<UrbKey>> {
    let b = alg.basis()?;
    let mut out: Vec<UrbKey> = b.iter().cloned().map(UrbKey::Scalar).collect();
    for x in &b {
        out.extend(b.iter().map(|y| UrbKey::Tensor(TensorKey::new(x.clone(), y.clone()))));
    }
    Ok(out)
}

/// Random element built from the algebra's generator keys: a scalar term,
/// a tensor term, both, or a scalar term and two tensor terms.
pub fn random_element(alg: &RbAlgebra, r: &mut SeededRng) -> UrbElement {
    let keys = alg.generator_keys();
    let pick = |r: &mut SeededRng| keys[r.gen_range(0..keys.len())].clone();
    let mut out = UrbElement::zero();
    let shape = r.gen_range(0..4);
    if shape != 1 {
        let k = pick(r);
        out.scalar.add_term(k, small_coeff(r, 3));
    }
    let tensors = [0, 1, 1, 2][shape];
    for _ in 0..tensors {
        let (a, b) = (pick(r), pick(r));
        out.tensor.add_term(TensorKey::new(a, b), small_coeff(r, 3));
    }
    out
}

impl UrbElement {
    /// `c·1` for the unit of `R`.
    pub fn constant(alg: &RbAlgebra, c: &Rational) -> Self {
        UrbElement::scalar(alg.unit_vec().scale(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
}
