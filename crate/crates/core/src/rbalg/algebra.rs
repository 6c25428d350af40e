//! Concrete Rota-Baxter algebras.
//!
//! An [`RbAlgebra`] is a descriptor: a carrier kind (finite table, Laurent
//! series, divided powers, matrices over another algebra, a product of two
//! algebras, or an opposite algebra), a weight, and an operator of the form
//! `P = a·Id + b·P₀` where `P₀` is the kind's own operator. The affine form
//! makes the dual operator `−λ − P` and the weight-scaling `αP` closed
//! operations on descriptors.
//!
//! Every kind is available at two levels. Elements ([`Elem`]) carry the
//! actual arithmetic, including truncated Laurent series. Basis keys carry
//! exact structure constants (`basis_mul`, `basis_op`), which is what the
//! operator ring and finite linear algebra work with.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use super::laurent::LaurentSeries;
use super::structure::RotaBaxter;
use crate::error::{Result, RotaError};
use crate::exactalg::{binomial, fmt_rational, vector_from_json, vector_to_json, FreeVector, Key, LinearMap, Rational};

/// Multiplication table, unit and operator of a finite-dimensional algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    pub basis: Vec<Key>,
    /// Products of basis elements; absent pairs multiply to zero.
    pub table: BTreeMap<(Key, Key), FreeVector>,
    pub unit: FreeVector,
    pub op: LinearMap,
}

#[derive(Clone, Debug)]
pub enum Kind {
    Finite(Arc<FiniteTable>),
    /// `𝐤((t))` with the pole-part projection; monomials above `precision`
    /// are not representable. Samples are `t^i` with `|i| ≤ sample_degree`.
    Laurent {
        precision: i64,
        sample_degree: i64,
    },
    /// Divided powers with `P(u_k) = u_{k+1}`, truncated at `max_degree`.
    Divided {
        max_degree: u32,
        sample_degree: u32,
    },
    /// Square matrices with the entrywise operator.
    Matrix {
        inner: Box<RbAlgebra>,
        size: usize,
    },
    Product(Box<RbAlgebra>, Box<RbAlgebra>),
    /// Same carrier and operator, reversed multiplication.
    Opposite(Box<RbAlgebra>),
}

/// `P = id·Id + base·P₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpForm {
    pub id: Rational,
    pub base: Rational,
}

impl OpForm {
    pub fn base() -> Self {
        OpForm { id: Rational::zero(), base: Rational::one() }
    }
}

#[derive(Clone, Debug)]
pub struct RbAlgebra {
    name: String,
    weight: Rational,
    kind: Kind,
    form: OpForm,
    commutative: bool,
}

/// An element of some [`RbAlgebra`]; which variant is used depends on the kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Vec(FreeVector),
    Series(LaurentSeries),
    Mat(MatrixOver),
    Pair(Box<Elem>, Box<Elem>),
}

/// Row-major matrix of elements of an entry algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOver {
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl MatrixOver {
    pub fn new(rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(RotaError::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(MatrixOver { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        MatrixOver { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }
}

impl fmt::Display for MatrixOver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Vec(v) => write!(f, "{v}"),
            Elem::Series(s) => write!(f, "{s}"),
            Elem::Mat(m) => write!(f, "{m}"),
            Elem::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

fn mismatch(alg: &RbAlgebra, e: &Elem) -> RotaError {
    RotaError::KindMismatch(format!("{e} is not an element of {}", alg.name))
}

impl RbAlgebra {
    pub(crate) fn from_parts(name: String, weight: Rational, kind: Kind, commutative: bool) -> Self {
        RbAlgebra { name, weight, kind, form: OpForm::base(), commutative }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn form(&self) -> &OpForm {
        &self.form
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub(crate) fn with_form(mut self, form: OpForm) -> Self {
        self.form = form;
        self
    }

    pub(crate) fn with_weight(mut self, weight: Rational) -> Self {
        self.weight = weight;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same algebra with operator `−λ·Id − P`.
    pub fn tilde(&self) -> RbAlgebra {
        let mut out = self.clone();
        out.form = OpForm { id: -&self.weight - &self.form.id, base: -self.form.base.clone() };
        out.name = format!("~{}", self.name);
        out
    }

    /// `(R, αP)` of weight `αλ`.
    pub fn scaled(&self, alpha: &Rational) -> RbAlgebra {
        let mut out = self.clone();
        out.form = OpForm { id: alpha * &self.form.id, base: alpha * &self.form.base };
        out.weight = alpha * &self.weight;
        out.name = format!("{}*{}", fmt_rational(alpha), self.name);
        out
    }

    /// Opposite algebra with the same operator.
    pub fn opposite(&self) -> RbAlgebra {
        RbAlgebra {
            name: format!("{}^op", self.name),
            weight: self.weight.clone(),
            kind: Kind::Opposite(Box::new(self.clone())),
            form: OpForm::base(),
            commutative: self.commutative,
        }
    }

    pub fn is_finite_based(&self) -> bool {
        match &self.kind {
            Kind::Finite(_) => true,
            Kind::Laurent { .. } | Kind::Divided { .. } => false,
            Kind::Matrix { inner, .. } | Kind::Opposite(inner) => inner.is_finite_based(),
            Kind::Product(a, b) => a.is_finite_based() && b.is_finite_based(),
        }
    }

    /// Ordered basis of a finite-dimensional algebra.
    pub fn basis(&self) -> Result<Vec<Key>> {
        match &self.kind {
            Kind::Finite(t) => Ok(t.basis.clone()),
            Kind::Laurent { .. } | Kind::Divided { .. } => Err(RotaError::NotFiniteBased(self.name.clone())),
            Kind::Matrix { inner, size } => {
                let b = inner.basis()?;
                let mut out = Vec::new();
                for i in 0..*size {
                    for j in 0..*size {
                        out.extend(b.iter().map(|k| Key::unit(i, j, k.clone())));
                    }
                }
                Ok(out)
            }
            Kind::Product(a, b) => {
                let mut out: Vec<Key> = a.basis()?.into_iter().map(Key::left).collect();
                out.extend(b.basis()?.into_iter().map(Key::right));
                Ok(out)
            }
            Kind::Opposite(inner) => inner.basis(),
        }
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.basis()?.len())
    }

    /// The documented sample set: full basis when finite, otherwise
    /// `t^{-1}, …, t^{-s}, 1, t, …, t^s` or `u_0, …, u_s`.
    pub fn generator_keys(&self) -> Vec<Key> {
        match &self.kind {
            Kind::Finite(t) => t.basis.clone(),
            Kind::Laurent { sample_degree: s, .. } => {
                (1..=*s).map(|i| Key::Mono(-i)).chain((0..=*s).map(Key::Mono)).collect()
            }
            Kind::Divided { sample_degree: s, .. } => (0..=*s).map(Key::Div).collect(),
            Kind::Matrix { inner, size } => {
                let g = inner.generator_keys();
                let mut out = Vec::new();
                for i in 0..*size {
                    for j in 0..*size {
                        out.extend(g.iter().map(|k| Key::unit(i, j, k.clone())));
                    }
                }
                out
            }
            Kind::Product(a, b) => a
                .generator_keys()
                .into_iter()
                .map(Key::left)
                .chain(b.generator_keys().into_iter().map(Key::right))
                .collect(),
            Kind::Opposite(inner) => inner.generator_keys(),
        }
    }

    pub fn generators(&self) -> Result<Vec<Elem>> {
        self.generator_keys().into_iter().map(|k| self.embed(&FreeVector::basis(k))).collect()
    }

    // ---- basis level -------------------------------------------------

    pub fn unit_vec(&self) -> FreeVector {
        match &self.kind {
            Kind::Finite(t) => t.unit.clone(),
            Kind::Laurent { .. } => FreeVector::basis(Key::Mono(0)),
            Kind::Divided { .. } => FreeVector::basis(Key::Div(0)),
            Kind::Matrix { inner, size } => {
                let u = inner.unit_vec();
                let mut out = FreeVector::zero();
                for i in 0..*size {
                    out.add_scaled(&Rational::one(), &u.map_keys(|k| Key::unit(i, i, k.clone())));
                }
                out
            }
            Kind::Product(a, b) => {
                a.unit_vec().map_keys(|k| Key::left(k.clone())).add(&b.unit_vec().map_keys(|k| Key::right(k.clone())))
            }
            Kind::Opposite(inner) => inner.unit_vec(),
        }
    }

    /// Product of two basis elements, exactly.
    pub fn basis_mul(&self, a: &Key, b: &Key) -> Result<FreeVector> {
        match &self.kind {
            Kind::Finite(t) => {
                self.check_key(a)?;
                self.check_key(b)?;
                Ok(t.table.get(&(a.clone(), b.clone())).cloned().unwrap_or_default())
            }
            Kind::Laurent { precision, .. } => match (a, b) {
                (Key::Mono(i), Key::Mono(j)) => {
                    if i + j > *precision {
                        return Err(RotaError::PrecisionExhausted(format!(
                            "t^{i}·t^{j} exceeds precision {precision}"
                        )));
                    }
                    Ok(FreeVector::basis(Key::Mono(i + j)))
                }
                _ => Err(self.foreign(a, b)),
            },
            Kind::Divided { max_degree, .. } => match (a, b) {
                (Key::Div(m), Key::Div(n)) => {
                    if m + n > *max_degree {
                        return Err(RotaError::PrecisionExhausted(format!(
                            "u{m}·u{n} exceeds degree bound {max_degree}"
                        )));
                    }
                    Ok(FreeVector::term(Key::Div(m + n), binomial(u64::from(m + n), u64::from(*m))))
                }
                _ => Err(self.foreign(a, b)),
            },
            Kind::Matrix { inner, .. } => match (a, b) {
                (Key::Unit(i, j, x), Key::Unit(k, l, y)) => {
                    if j != k {
                        return Ok(FreeVector::zero());
                    }
                    Ok(inner.basis_mul(x, y)?.map_keys(|z| Key::unit(*i, *l, z.clone())))
                }
                _ => Err(self.foreign(a, b)),
            },
            Kind::Product(l, r) => match (a, b) {
                (Key::Left(x), Key::Left(y)) => Ok(l.basis_mul(x, y)?.map_keys(|z| Key::left(z.clone()))),
                (Key::Right(x), Key::Right(y)) => Ok(r.basis_mul(x, y)?.map_keys(|z| Key::right(z.clone()))),
                (Key::Left(_) | Key::Right(_), Key::Left(_) | Key::Right(_)) => Ok(FreeVector::zero()),
                _ => Err(self.foreign(a, b)),
            },
            Kind::Opposite(inner) => inner.basis_mul(b, a),
        }
    }

    fn foreign(&self, a: &Key, b: &Key) -> RotaError {
        RotaError::UnknownBasisKey(format!("{a} or {b} in {}", self.name))
    }

    fn check_key(&self, k: &Key) -> Result<()> {
        if let Kind::Finite(t) = &self.kind {
            if !t.basis.contains(k) {
                return Err(RotaError::UnknownBasisKey(k.to_string()));
            }
        }
        Ok(())
    }

    /// The kind's own operator `P₀` on a basis element.
    fn base_basis_op(&self, k: &Key) -> Result<FreeVector> {
        match &self.kind {
            Kind::Finite(t) => t.op.apply(&FreeVector::basis(k.clone())),
            Kind::Laurent { .. } => match k {
                Key::Mono(i) if *i < 0 => Ok(FreeVector::basis(k.clone())),
                Key::Mono(_) => Ok(FreeVector::zero()),
                _ => Err(RotaError::UnknownBasisKey(k.to_string())),
            },
            Kind::Divided { max_degree, .. } => match k {
                Key::Div(n) if n < max_degree => Ok(FreeVector::basis(Key::Div(n + 1))),
                Key::Div(n) => Err(RotaError::PrecisionExhausted(format!("P(u{n}) exceeds degree bound {max_degree}"))),
                _ => Err(RotaError::UnknownBasisKey(k.to_string())),
            },
            Kind::Matrix { inner, .. } => match k {
                Key::Unit(i, j, x) => Ok(inner.basis_op(x)?.map_keys(|z| Key::unit(*i, *j, z.clone()))),
                _ => Err(RotaError::UnknownBasisKey(k.to_string())),
            },
            Kind::Product(l, r) => match k {
                Key::Left(x) => Ok(l.basis_op(x)?.map_keys(|z| Key::left(z.clone()))),
                Key::Right(x) => Ok(r.basis_op(x)?.map_keys(|z| Key::right(z.clone()))),
                _ => Err(RotaError::UnknownBasisKey(k.to_string())),
            },
            Kind::Opposite(inner) => inner.basis_op(k),
        }
    }

    /// The operator `P` on a basis element.
    pub fn basis_op(&self, k: &Key) -> Result<FreeVector> {
        let mut out = FreeVector::zero();
        if !self.form.id.is_zero() {
            out.add_term(k.clone(), self.form.id.clone());
        }
        if !self.form.base.is_zero() {
            out.add_scaled(&self.form.base, &self.base_basis_op(k)?);
        }
        Ok(out)
    }

    pub fn vmul(&self, a: &FreeVector, b: &FreeVector) -> Result<FreeVector> {
        let mut out = FreeVector::zero();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                out.add_scaled(&(c * d), &self.basis_mul(x, y)?);
            }
        }
        Ok(out)
    }

    pub fn vop(&self, a: &FreeVector) -> Result<FreeVector> {
        a.linear_extend(|k| self.basis_op(k))
    }

    /// `P̃(a) = −λa − P(a)` on coordinates.
    pub fn vtilde(&self, a: &FreeVector) -> Result<FreeVector> {
        Ok(FreeVector::combine(&-self.weight.clone(), a, &-Rational::one(), &self.vop(a)?))
    }

    /// The operator as a matrix on the basis (finite-dimensional only).
    pub fn op_matrix(&self) -> Result<LinearMap> {
        let b = self.basis()?;
        LinearMap::from_columns(b.clone(), b, |k| self.basis_op(k))
    }

    /// Left multiplication by `a` as a matrix on the basis.
    pub fn left_mul_matrix(&self, a: &FreeVector) -> Result<LinearMap> {
        let b = self.basis()?;
        LinearMap::from_columns(b.clone(), b, |k| self.vmul(a, &FreeVector::basis(k.clone())))
    }

    // ---- element level -----------------------------------------------

    /// Element with the given basis coordinates.
    pub fn embed(&self, v: &FreeVector) -> Result<Elem> {
        match &self.kind {
            Kind::Finite(_) => {
                for k in v.keys() {
                    self.check_key(k)?;
                }
                Ok(Elem::Vec(v.clone()))
            }
            Kind::Divided { max_degree, .. } => {
                for k in v.keys() {
                    match k {
                        Key::Div(n) if n <= max_degree => {}
                        Key::Div(n) => {
                            return Err(RotaError::PrecisionExhausted(format!(
                                "u{n} exceeds degree bound {max_degree}"
                            )))
                        }
                        _ => return Err(RotaError::UnknownBasisKey(k.to_string())),
                    }
                }
                Ok(Elem::Vec(v.clone()))
            }
            Kind::Laurent { precision, .. } => {
                let mut degrees = FreeVector::zero();
                for (k, c) in v.iter() {
                    match k {
                        Key::Mono(i) => degrees.add_term(*i, c.clone()),
                        _ => return Err(RotaError::UnknownBasisKey(k.to_string())),
                    }
                }
                Ok(Elem::Series(LaurentSeries::from_terms(&degrees, *precision)?))
            }
            Kind::Matrix { inner, size } => {
                let mut cells: BTreeMap<(usize, usize), FreeVector> = BTreeMap::new();
                for (k, c) in v.iter() {
                    match k {
                        Key::Unit(i, j, x) if i < size && j < size => {
                            cells.entry((*i, *j)).or_default().add_term((**x).clone(), c.clone())
                        }
                        _ => return Err(RotaError::UnknownBasisKey(k.to_string())),
                    }
                }
                let mut entries = Vec::with_capacity(size * size);
                for i in 0..*size {
                    for j in 0..*size {
                        entries.push(match cells.get(&(i, j)) {
                            Some(w) => inner.embed(w)?,
                            None => inner.zero(),
                        });
                    }
                }
                Ok(Elem::Mat(MatrixOver { rows: *size, cols: *size, entries }))
            }
            Kind::Product(l, r) => {
                let (mut a, mut b) = (FreeVector::zero(), FreeVector::zero());
                for (k, c) in v.iter() {
                    match k {
                        Key::Left(x) => a.add_term((**x).clone(), c.clone()),
                        Key::Right(x) => b.add_term((**x).clone(), c.clone()),
                        _ => return Err(RotaError::UnknownBasisKey(k.to_string())),
                    }
                }
                Ok(Elem::Pair(Box::new(l.embed(&a)?), Box::new(r.embed(&b)?)))
            }
            Kind::Opposite(inner) => inner.embed(v),
        }
    }

    /// Basis coordinates of an element. For a truncated series these are
    /// the known coefficients.
    pub fn coords(&self, e: &Elem) -> Result<FreeVector> {
        match (&self.kind, e) {
            (Kind::Finite(_) | Kind::Divided { .. }, Elem::Vec(v)) => Ok(v.clone()),
            (Kind::Laurent { .. }, Elem::Series(s)) => Ok(s.key_terms()),
            (Kind::Matrix { inner, .. }, Elem::Mat(m)) => {
                let mut out = FreeVector::zero();
                for i in 0..m.rows {
                    for j in 0..m.cols {
                        let c = inner.coords(m.get(i, j))?;
                        out.add_scaled(&Rational::one(), &c.map_keys(|k| Key::unit(i, j, k.clone())));
                    }
                }
                Ok(out)
            }
            (Kind::Product(l, r), Elem::Pair(a, b)) => Ok(l
                .coords(a)?
                .map_keys(|k| Key::left(k.clone()))
                .add(&r.coords(b)?.map_keys(|k| Key::right(k.clone())))),
            (Kind::Opposite(inner), _) => inner.coords(e),
            _ => Err(mismatch(self, e)),
        }
    }

    fn base_op(&self, a: &Elem) -> Result<Elem> {
        match (&self.kind, a) {
            (Kind::Finite(t), Elem::Vec(v)) => Ok(Elem::Vec(t.op.apply(v)?)),
            (Kind::Divided { .. }, Elem::Vec(v)) => Ok(Elem::Vec(v.linear_extend(|k| self.base_basis_op(k))?)),
            (Kind::Laurent { .. }, Elem::Series(s)) => Ok(Elem::Series(s.pole_part())),
            (Kind::Matrix { inner, .. }, Elem::Mat(m)) => Ok(Elem::Mat(MatrixOver {
                rows: m.rows,
                cols: m.cols,
                entries: m.entries.iter().map(|x| inner.op(x)).collect::<Result<_>>()?,
            })),
            (Kind::Product(l, r), Elem::Pair(x, y)) => Ok(Elem::Pair(Box::new(l.op(x)?), Box::new(r.op(y)?))),
            (Kind::Opposite(inner), _) => inner.op(a),
            _ => Err(mismatch(self, a)),
        }
    }

    /// Laurent products must still determine the constant term.
    fn guard_series(&self, s: LaurentSeries) -> Result<Elem> {
        if s.precision() < 0 {
            return Err(RotaError::PrecisionExhausted(format!(
                "result known only modulo t^{} (below the constant term)",
                s.precision() + 1
            )));
        }
        Ok(Elem::Series(s))
    }

    pub fn elem_to_json(&self, e: &Elem) -> Value {
        match e {
            Elem::Vec(v) => vector_to_json(v),
            Elem::Series(s) => s.to_json(),
            Elem::Mat(m) => {
                let inner = match &self.kind {
                    Kind::Matrix { inner, .. } => inner.as_ref(),
                    Kind::Opposite(a) => return a.elem_to_json(e),
                    _ => self,
                };
                let rows: Vec<Value> = (0..m.rows)
                    .map(|i| Value::Array((0..m.cols).map(|j| inner.elem_to_json(m.get(i, j))).collect()))
                    .collect();
                json!({"rows": m.rows, "cols": m.cols, "entries": rows})
            }
            Elem::Pair(a, b) => match &self.kind {
                Kind::Product(l, r) => {
                    let mut obj = Map::new();
                    obj.insert("left".into(), l.elem_to_json(a));
                    obj.insert("right".into(), r.elem_to_json(b));
                    Value::Object(obj)
                }
                Kind::Opposite(inner) => inner.elem_to_json(e),
                _ => Value::Null,
            },
        }
    }

    pub fn elem_from_json(&self, v: &Value) -> Result<Elem> {
        match &self.kind {
            Kind::Laurent { .. } if v.get("coeffs").is_some() => Ok(Elem::Series(LaurentSeries::from_json(v)?)),
            Kind::Matrix { inner, size } if v.get("entries").is_some() => {
                let rows = v["entries"]
                    .as_array()
                    .ok_or_else(|| RotaError::Invalid("matrix entries must be a list".into()))?;
                let mut entries = Vec::new();
                for r in rows {
                    for x in r.as_array().ok_or_else(|| RotaError::Invalid("matrix row must be a list".into()))? {
                        entries.push(inner.elem_from_json(x)?);
                    }
                }
                let m = MatrixOver::new(rows.len(), entries.len() / rows.len().max(1), entries)?;
                if m.rows != *size || m.cols != *size {
                    return Err(RotaError::DimensionMismatch(format!("expected a {size}x{size} matrix")));
                }
                Ok(Elem::Mat(m))
            }
            Kind::Product(l, r) if v.get("left").is_some() => {
                Ok(Elem::Pair(Box::new(l.elem_from_json(&v["left"])?), Box::new(r.elem_from_json(&v["right"])?)))
            }
            Kind::Opposite(inner) => inner.elem_from_json(v),
            _ => self.embed(&vector_from_json(v)?),
        }
    }
}

impl RotaBaxter for RbAlgebra {
    type Elem = Elem;

    fn weight(&self) -> &Rational {
        &self.weight
    }

    fn zero(&self) -> Elem {
        match &self.kind {
            Kind::Finite(_) | Kind::Divided { .. } => Elem::Vec(FreeVector::zero()),
            Kind::Laurent { precision, .. } => Elem::Series(LaurentSeries::zero(*precision)),
            Kind::Matrix { inner, size } => {
                Elem::Mat(MatrixOver { rows: *size, cols: *size, entries: vec![inner.zero(); size * size] })
            }
            Kind::Product(l, r) => Elem::Pair(Box::new(l.zero()), Box::new(r.zero())),
            Kind::Opposite(inner) => inner.zero(),
        }
    }

    fn one(&self) -> Result<Elem> {
        self.embed(&self.unit_vec())
    }

    fn add(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        match (&self.kind, a, b) {
            (Kind::Opposite(inner), _, _) => inner.add(a, b),
            (_, Elem::Vec(x), Elem::Vec(y)) => Ok(Elem::Vec(x.add(y))),
            (_, Elem::Series(x), Elem::Series(y)) => Ok(Elem::Series(x.add(y))),
            (Kind::Matrix { inner, .. }, Elem::Mat(x), Elem::Mat(y)) => {
                Ok(Elem::Mat(entrywise2(inner.as_ref(), x, y, |r, p, q| r.add(p, q))?))
            }
            (Kind::Product(l, r), Elem::Pair(x1, x2), Elem::Pair(y1, y2)) => {
                Ok(Elem::Pair(Box::new(l.add(x1, y1)?), Box::new(r.add(x2, y2)?)))
            }
            _ => Err(mismatch(self, a)),
        }
    }

    fn scale(&self, c: &Rational, a: &Elem) -> Result<Elem> {
        match (&self.kind, a) {
            (Kind::Opposite(inner), _) => inner.scale(c, a),
            (_, Elem::Vec(x)) => Ok(Elem::Vec(x.scale(c))),
            (_, Elem::Series(x)) => Ok(Elem::Series(x.scale(c))),
            (Kind::Matrix { inner, .. }, Elem::Mat(m)) => Ok(Elem::Mat(MatrixOver {
                rows: m.rows,
                cols: m.cols,
                entries: m.entries.iter().map(|x| inner.scale(c, x)).collect::<Result<_>>()?,
            })),
            (Kind::Product(l, r), Elem::Pair(x, y)) => {
                Ok(Elem::Pair(Box::new(l.scale(c, x)?), Box::new(r.scale(c, y)?)))
            }
            _ => Err(mismatch(self, a)),
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        match (&self.kind, a, b) {
            (Kind::Opposite(inner), _, _) => inner.mul(b, a),
            (Kind::Finite(_) | Kind::Divided { .. }, Elem::Vec(x), Elem::Vec(y)) => Ok(Elem::Vec(self.vmul(x, y)?)),
            (Kind::Laurent { .. }, Elem::Series(x), Elem::Series(y)) => self.guard_series(x.mul(y)),
            (Kind::Matrix { inner, .. }, Elem::Mat(x), Elem::Mat(y)) => Ok(Elem::Mat(matrix_product(inner, x, y)?)),
            (Kind::Product(l, r), Elem::Pair(x1, x2), Elem::Pair(y1, y2)) => {
                Ok(Elem::Pair(Box::new(l.mul(x1, y1)?), Box::new(r.mul(x2, y2)?)))
            }
            _ => Err(mismatch(self, a)),
        }
    }

    fn op(&self, a: &Elem) -> Result<Elem> {
        let mut terms = Vec::new();
        let base;
        if !self.form.base.is_zero() {
            base = self.base_op(a)?;
            terms.push((self.form.base.clone(), &base));
        }
        if !self.form.id.is_zero() {
            terms.push((self.form.id.clone(), a));
        }
        if terms.is_empty() {
            // Still reject foreign elements.
            self.coords(a)?;
        }
        self.combo(&terms)
    }

    fn same(&self, a: &Elem, b: &Elem) -> Result<bool> {
        match (a, b) {
            (Elem::Vec(x), Elem::Vec(y)) => Ok(x == y),
            (Elem::Series(x), Elem::Series(y)) => {
                if x.precision().min(y.precision()) < 0 {
                    return Err(RotaError::PrecisionExhausted("cannot compare series below the constant term".into()));
                }
                Ok(x.agrees_with(y))
            }
            (Elem::Mat(x), Elem::Mat(y)) => {
                if x.rows != y.rows || x.cols != y.cols {
                    return Ok(false);
                }
                let inner = self.entry_algebra();
                for (p, q) in x.entries.iter().zip(&y.entries) {
                    if !inner.same(p, q)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (Elem::Pair(x1, x2), Elem::Pair(y1, y2)) => match &self.kind {
                Kind::Product(l, r) => Ok(l.same(x1, y1)? && r.same(x2, y2)?),
                Kind::Opposite(inner) => inner.same(a, b),
                _ => Err(mismatch(self, a)),
            },
            _ => Err(mismatch(self, a)),
        }
    }
}

impl RbAlgebra {
    fn entry_algebra(&self) -> &RbAlgebra {
        match &self.kind {
            Kind::Matrix { inner, .. } => inner,
            Kind::Opposite(inner) => inner.entry_algebra(),
            _ => self,
        }
    }
}

fn entrywise2(
    inner: &RbAlgebra,
    x: &MatrixOver,
    y: &MatrixOver,
    f: impl Fn(&RbAlgebra, &Elem, &Elem) -> Result<Elem>,
) -> Result<MatrixOver> {
    if x.rows != y.rows || x.cols != y.cols {
        return Err(RotaError::DimensionMismatch(format!("{}x{} vs {}x{}", x.rows, x.cols, y.rows, y.cols)));
    }
    let entries = x.entries.iter().zip(&y.entries).map(|(p, q)| f(inner, p, q)).collect::<Result<_>>()?;
    Ok(MatrixOver { rows: x.rows, cols: x.cols, entries })
}

/// `XY` for matrices over `inner`, keeping the left-to-right order of entries.
pub fn matrix_product(inner: &RbAlgebra, x: &MatrixOver, y: &MatrixOver) -> Result<MatrixOver> {
    if x.cols != y.rows {
        return Err(RotaError::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    let mut entries = Vec::with_capacity(x.rows * y.cols);
    for i in 0..x.rows {
        for j in 0..y.cols {
            let mut acc = inner.zero();
            for k in 0..x.cols {
                acc = inner.add(&acc, &inner.mul(x.get(i, k), y.get(k, j))?)?;
            }
            entries.push(acc);
        }
    }
    Ok(MatrixOver { rows: x.rows, cols: y.cols, entries })
}

/// Entrywise sum of equally shaped matrices.
pub fn matrix_sum(inner: &RbAlgebra, x: &MatrixOver, y: &MatrixOver) -> Result<MatrixOver> {
    entrywise2(inner, x, y, |r, p, q| r.add(p, q))
}

/// Entrywise `c·X`.
pub fn matrix_scale(inner: &RbAlgebra, c: &Rational, x: &MatrixOver) -> Result<MatrixOver> {
    Ok(MatrixOver {
        rows: x.rows,
        cols: x.cols,
        entries: x.entries.iter().map(|e| inner.scale(c, e)).collect::<Result<_>>()?,
    })
}

/// Entrywise operator `(Q(x_ij))`.
pub fn matrix_op(inner: &RbAlgebra, x: &MatrixOver) -> Result<MatrixOver> {
    Ok(MatrixOver {
        rows: x.rows,
        cols: x.cols,
        entries: x.entries.iter().map(|e| inner.op(e)).collect::<Result<_>>()?,
    })
}

pub fn matrix_same(inner: &RbAlgebra, x: &MatrixOver, y: &MatrixOver) -> Result<bool> {
    if x.rows != y.rows || x.cols != y.cols {
        return Ok(false);
    }
    for (p, q) in x.entries.iter().zip(&y.entries) {
        if !inner.same(p, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}
