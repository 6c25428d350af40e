//! `End_A(M ⊗ A)` for a comodule `M`, the map `φ: Hom(H, A) → End_A(M ⊗ A)`
//! and the induced modules `M ⊗ A` and `M ⊗ V`.
//!
//! A right `A`-linear endomorphism `g` is determined by the images
//! `g(m_j ⊗ 1) = Σ_i m_i ⊗ g_ij`, so it is stored as the matrix `(g_ij)`
//! over `A`. Composition is then the matrix product and the operator
//! `1⊗Q` acts entrywise.

use std::fmt;

use super::coalgebra::Comodule;
use super::convolution::{ConvMap, ConvolutionAlgebra};
use crate::error::{Result, RotaError};
use crate::exactalg::{index_of, FreeVector, Key, LinearMap, Rational, TensorKey};
use crate::rbalg::{matrix_op, matrix_product, Elem, MatrixOver, RbAlgebra, RotaBaxter};
use crate::rbmod::{same_algebra, RbModule, RotaBaxterModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAM {
    basis: Vec<Key>,
    matrix: MatrixOver,
}

impl EndAM {
    pub fn matrix(&self) -> &MatrixOver {
        &self.matrix
    }

    pub fn basis(&self) -> &[Key] {
        &self.basis
    }

    /// `g(m_j ⊗ 1)` as `(m_i, g_ij)` pairs.
    pub fn image(&self, j: usize) -> Vec<(Key, Elem)> {
        self.basis.iter().enumerate().map(|(i, k)| (k.clone(), self.matrix.get(i, j).clone())).collect()
    }
}

impl fmt::Display for EndAM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// `(End_A(M ⊗ A), 𝒬)` with `𝒬(g) = (1⊗Q)∘g` on generators.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    basis: Vec<Key>,
    entries: RbAlgebra,
}

impl EndAlgebra {
    pub fn new(comodule_basis: &[Key], a: &RbAlgebra) -> Result<Self> {
        if comodule_basis.is_empty() {
            return Err(RotaError::DimensionMismatch("the comodule must be nonzero".into()));
        }
        if !a.is_commutative() {
            return Err(RotaError::Invalid(format!("{} must be commutative", a.name())));
        }
        Ok(EndAlgebra { basis: comodule_basis.to_vec(), entries: a.clone() })
    }

    pub fn entries(&self) -> &RbAlgebra {
        &self.entries
    }

    pub fn basis(&self) -> &[Key] {
        &self.basis
    }

    pub fn element(&self, matrix: MatrixOver) -> Result<EndAM> {
        let n = self.basis.len();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(RotaError::DimensionMismatch(format!("expected a {n}x{n} matrix")));
        }
        Ok(EndAM { basis: self.basis.clone(), matrix })
    }

    pub fn identity(&self) -> Result<EndAM> {
        let (one, zero) = (self.entries.one()?, self.entries.zero());
        self.element(MatrixOver::from_fn(
            self.dim(),
            self.dim(),
            |i, j| if i == j { one.clone() } else { zero.clone() },
        ))
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn check(&self, g: &EndAM) -> Result<()> {
        if g.basis == self.basis {
            Ok(())
        } else {
            Err(RotaError::DimensionMismatch("endomorphism of a different comodule".into()))
        }
    }

    fn entrywise2(&self, f: &EndAM, g: &EndAM, op: impl Fn(&Elem, &Elem) -> Result<Elem>) -> Result<EndAM> {
        self.check(f)?;
        self.check(g)?;
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(op(f.matrix.get(i, j), g.matrix.get(i, j))?);
            }
        }
        self.element(MatrixOver::new(n, n, entries)?)
    }

    /// Sample endomorphisms built from the entry algebra's samples.
    pub fn sample_elements(&self, count: usize) -> Result<Vec<EndAM>> {
        let samples = self.entries.generators()?;
        let n = self.dim();
        let zero = self.entries.zero();
        (0..count)
            .map(|s| {
                self.element(MatrixOver::from_fn(n, n, |i, j| {
                    let pick = i * n + j + s * 7;
                    if pick % 4 == 3 {
                        zero.clone()
                    } else {
                        samples[pick % samples.len()].clone()
                    }
                }))
            })
            .collect()
    }
}

impl RotaBaxter for EndAlgebra {
    type Elem = EndAM;

    fn weight(&self) -> &Rational {
        self.entries.weight()
    }

    fn zero(&self) -> EndAM {
        let z = self.entries.zero();
        EndAM { basis: self.basis.clone(), matrix: MatrixOver::from_fn(self.dim(), self.dim(), |_, _| z.clone()) }
    }

    fn one(&self) -> Result<EndAM> {
        self.identity()
    }

    fn add(&self, f: &EndAM, g: &EndAM) -> Result<EndAM> {
        self.entrywise2(f, g, |x, y| self.entries.add(x, y))
    }

    fn scale(&self, c: &Rational, f: &EndAM) -> Result<EndAM> {
        self.entrywise2(f, f, |x, _| self.entries.scale(c, x))
    }

    /// Composition `f∘g`.
    fn mul(&self, f: &EndAM, g: &EndAM) -> Result<EndAM> {
        self.check(f)?;
        self.check(g)?;
        self.element(matrix_product(&self.entries, &f.matrix, &g.matrix)?)
    }

    fn op(&self, g: &EndAM) -> Result<EndAM> {
        end_q(&self.entries, g)
    }

    fn same(&self, f: &EndAM, g: &EndAM) -> Result<bool> {
        self.check(f)?;
        self.check(g)?;
        for (x, y) in f.matrix.entries().iter().zip(g.matrix.entries()) {
            if !self.entries.same(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `𝒬(g) = (1⊗Q)∘g`, evaluated on the generators `m ⊗ 1`.
pub fn end_q(a: &RbAlgebra, g: &EndAM) -> Result<EndAM> {
    Ok(EndAM { basis: g.basis.clone(), matrix: matrix_op(a, &g.matrix)? })
}

/// `φ(f)(m ⊗ a) = Σ m₍₀₎ ⊗ f(m₍₁₎)a`: the matrix `(f(h_ij))` where
/// `δ(m_j) = Σ_i m_i ⊗ h_ij`.
pub fn phi_map(m: &Comodule, f: &ConvMap) -> Result<EndAM> {
    let n = m.basis().len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(f.eval(&m.coefficient(i, j)?)?);
        }
    }
    Ok(EndAM { basis: m.basis().to_vec(), matrix: MatrixOver::new(n, n, entries)? })
}

/// `Σ m_i ⊗ a_i` as the column `(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector(pub Vec<Elem>);

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// `(M ⊗ A, p = 1⊗Q)` as a module over `(End_A(M ⊗ A), 𝒬)`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    end: EndAlgebra,
}

/// `p = 1⊗Q` on `M ⊗ A`.
pub fn module_operator_p(m: &Comodule, a: &RbAlgebra) -> Result<TensorModule> {
    Ok(TensorModule { end: EndAlgebra::new(m.basis(), a)? })
}

impl TensorModule {
    pub fn pure(&self, m: &Key, a: &Elem) -> Result<TensorVector> {
        let i = index_of(&self.end.basis, m)?;
        let zero = self.end.entries.zero();
        Ok(TensorVector((0..self.end.dim()).map(|k| if k == i { a.clone() } else { zero.clone() }).collect()))
    }

    /// Vectors `m_i ⊗ a` for entry-algebra samples `a`.
    pub fn sample_vectors(&self) -> Result<Vec<TensorVector>> {
        let samples = self.end.entries.generators()?;
        let mut out = Vec::new();
        for (i, m) in self.end.basis.iter().enumerate() {
            for a in samples.iter().skip(i % 2).step_by(2) {
                out.push(self.pure(m, a)?);
            }
        }
        Ok(out)
    }

    fn check(&self, x: &TensorVector) -> Result<()> {
        if x.0.len() == self.end.dim() {
            Ok(())
        } else {
            Err(RotaError::DimensionMismatch(format!("expected {} components", self.end.dim())))
        }
    }
}

impl RotaBaxterModule for TensorModule {
    type Alg = EndAlgebra;
    type Vector = TensorVector;

    fn algebra(&self) -> &EndAlgebra {
        &self.end
    }

    fn act(&self, g: &EndAM, x: &TensorVector) -> Result<TensorVector> {
        self.end.check(g)?;
        self.check(x)?;
        let a = &self.end.entries;
        let n = self.end.dim();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = a.zero();
            for (j, xj) in x.0.iter().enumerate() {
                acc = a.add(&acc, &a.mul(g.matrix.get(i, j), xj)?)?;
            }
            out.push(acc);
        }
        Ok(TensorVector(out))
    }

    fn op_p(&self, x: &TensorVector) -> Result<TensorVector> {
        self.check(x)?;
        Ok(TensorVector(x.0.iter().map(|e| self.end.entries.op(e)).collect::<Result<_>>()?))
    }

    fn vzero(&self) -> TensorVector {
        TensorVector(vec![self.end.entries.zero(); self.end.dim()])
    }

    fn vadd(&self, x: &TensorVector, y: &TensorVector) -> Result<TensorVector> {
        self.check(x)?;
        self.check(y)?;
        Ok(TensorVector(x.0.iter().zip(&y.0).map(|(p, q)| self.end.entries.add(p, q)).collect::<Result<_>>()?))
    }

    fn vscale(&self, c: &Rational, x: &TensorVector) -> Result<TensorVector> {
        Ok(TensorVector(x.0.iter().map(|e| self.end.entries.scale(c, e)).collect::<Result<_>>()?))
    }

    fn vsame(&self, x: &TensorVector, y: &TensorVector) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        for (p, q) in x.0.iter().zip(&y.0) {
            if !self.end.entries.same(p, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(M ⊗ V, 1⊗p_V)` as a module over `(Hom(H, A), Q∘-)`, with
/// `f·(m ⊗ v) = Σ m₍₀₎ ⊗ f(m₍₁₎)·v`. `V` must be finite-dimensional.
#[derive(Clone, Debug)]
pub struct ComoduleTensor {
    comodule: Comodule,
    v: RbModule,
    conv: ConvolutionAlgebra,
    v_basis: Vec<Key>,
    v_op: LinearMap,
}

impl ComoduleTensor {
    pub fn new(m: &Comodule, v: &RbModule) -> Result<Self> {
        let v = v.to_finite()?;
        let conv = ConvolutionAlgebra::new(m.coalgebra(), v.algebra());
        Ok(ComoduleTensor { comodule: m.clone(), v_basis: v.basis()?, v_op: v.op_matrix()?, v, conv })
    }

    pub fn basis(&self) -> Vec<TensorKey> {
        self.comodule
            .basis()
            .iter()
            .flat_map(|m| self.v_basis.iter().map(move |v| TensorKey::new(m.clone(), v.clone())))
            .collect()
    }

    /// Pure tensors of basis elements.
    pub fn sample_vectors(&self) -> Vec<FreeVector<TensorKey>> {
        self.basis().into_iter().map(FreeVector::basis).collect()
    }

    fn check(&self, x: &FreeVector<TensorKey>) -> Result<()> {
        for t in x.keys() {
            index_of(self.comodule.basis(), &t.left)?;
            index_of(&self.v_basis, &t.right)?;
        }
        Ok(())
    }
}

impl RotaBaxterModule for ComoduleTensor {
    type Alg = ConvolutionAlgebra;
    type Vector = FreeVector<TensorKey>;

    fn algebra(&self) -> &ConvolutionAlgebra {
        &self.conv
    }

    fn act(&self, f: &ConvMap, x: &FreeVector<TensorKey>) -> Result<FreeVector<TensorKey>> {
        self.check(x)?;
        if !same_algebra(f.codomain(), self.v.algebra()) {
            return Err(RotaError::CodomainMismatch(format!("{} vs {}", f.codomain().name(), self.v.algebra().name())));
        }
        let basis = self.comodule.basis();
        let mut out = FreeVector::zero();
        for (t, c) in x.iter() {
            let k = index_of(basis, &t.left)?;
            for (i, mi) in basis.iter().enumerate() {
                let coeff = self.comodule.coefficient(i, k)?;
                if coeff.is_zero() {
                    continue;
                }
                let fv = self.v.rho(&f.eval(&coeff)?)?.apply(&FreeVector::basis(t.right.clone()))?;
                for (w, e) in fv.iter() {
                    out.add_term(TensorKey::new(mi.clone(), w.clone()), c * e);
                }
            }
        }
        Ok(out)
    }

    fn op_p(&self, x: &FreeVector<TensorKey>) -> Result<FreeVector<TensorKey>> {
        self.check(x)?;
        let mut out = FreeVector::zero();
        for (t, c) in x.iter() {
            for (w, e) in self.v_op.apply(&FreeVector::basis(t.right.clone()))?.iter() {
                out.add_term(TensorKey::new(t.left.clone(), w.clone()), c * e);
            }
        }
        Ok(out)
    }

    fn vzero(&self) -> FreeVector<TensorKey> {
        FreeVector::zero()
    }

    fn vadd(&self, x: &FreeVector<TensorKey>, y: &FreeVector<TensorKey>) -> Result<FreeVector<TensorKey>> {
        Ok(x.add(y))
    }

    fn vscale(&self, c: &Rational, x: &FreeVector<TensorKey>) -> Result<FreeVector<TensorKey>> {
        Ok(x.scale(c))
    }

    fn vsame(&self, x: &FreeVector<TensorKey>, y: &FreeVector<TensorKey>) -> Result<bool> {
        Ok(x == y)
    }
}

/// The action of `f` on `M ⊗ V` as a matrix over the basis `m ⊗ v`.
pub fn comodule_tensor_action(m: &Comodule, v: &RbModule, f: &ConvMap) -> Result<(Vec<TensorKey>, Vec<Vec<Rational>>)> {
    let t = ComoduleTensor::new(m, v)?;
    let basis = t.basis();
    let mut rows = vec![vec![Rational::from_integer(0.into()); basis.len()]; basis.len()];
    for (j, b) in basis.iter().enumerate() {
        let image = t.act(f, &FreeVector::basis(b.clone()))?;
        for (k, c) in image.iter() {
            let i = basis.iter().position(|x| x == k).ok_or_else(|| RotaError::UnknownBasisKey(k.to_string()))?;
            rows[i][j] = c.clone();
        }
    }
    Ok((basis, rows))
}

/// `φ(f∗g)` against both orders of composition. Returns
/// `(φ(f∗g) = φ(f)∘φ(g), φ(f∗g) = φ(g)∘φ(f))`.
pub fn phi_composition_orders(
    m: &Comodule,
    conv: &ConvolutionAlgebra,
    f: &ConvMap,
    g: &ConvMap,
) -> Result<(bool, bool)> {
    let end = EndAlgebra::new(m.basis(), conv.codomain())?;
    let fg = phi_map(m, &conv.mul(f, g)?)?;
    let (pf, pg) = (phi_map(m, f)?, phi_map(m, g)?);
    Ok((end.same(&fg, &end.mul(&pf, &pg)?)?, end.same(&fg, &end.mul(&pg, &pf)?)?))
}
