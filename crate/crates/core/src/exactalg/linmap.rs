//! Dense rational matrices between named bases, and Gaussian elimination.

use std::fmt;

use num_traits::{One, Zero};

use super::key::Key;
use super::rational::{fmt_rational, Rational};
use super::vector::FreeVector;
use crate::error::{Result, RotaError};

pub type Matrix = Vec<Vec<Rational>>;

/// Linear map stored as a `codomain × domain` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    domain: Vec<Key>,
    codomain: Vec<Key>,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: Vec<Key>, codomain: Vec<Key>, matrix: Matrix) -> Result<Self> {
        if matrix.len() != codomain.len() || matrix.iter().any(|r| r.len() != domain.len()) {
            return Err(RotaError::DimensionMismatch(format!(
                "matrix shape does not match {} x {} bases",
                codomain.len(),
                domain.len()
            )));
        }
        Ok(LinearMap { domain, codomain, matrix })
    }

    /// Builds the map whose column `j` is `f(domain[j])`.
    pub fn from_columns(
        domain: Vec<Key>,
        codomain: Vec<Key>,
        mut f: impl FnMut(&Key) -> Result<FreeVector>,
    ) -> Result<Self> {
        let mut m = zeros(codomain.len(), domain.len());
        for (j, k) in domain.iter().enumerate() {
            let col = f(k)?;
            for (key, c) in col.iter() {
                let i = index_of(&codomain, key)?;
                m[i][j] = c.clone();
            }
        }
        Ok(LinearMap { domain, codomain, matrix: m })
    }

    pub fn identity(basis: Vec<Key>) -> Self {
        Self::scalar(basis, &Rational::one())
    }

    pub fn scalar(basis: Vec<Key>, c: &Rational) -> Self {
        let n = basis.len();
        let mut m = zeros(n, n);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = c.clone();
        }
        LinearMap { domain: basis.clone(), codomain: basis, matrix: m }
    }

    pub fn zero(domain: Vec<Key>, codomain: Vec<Key>) -> Self {
        let m = zeros(codomain.len(), domain.len());
        LinearMap { domain, codomain, matrix: m }
    }

    pub fn domain(&self) -> &[Key] {
        &self.domain
    }

    pub fn codomain(&self) -> &[Key] {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[i][j]
    }

    pub fn is_square(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, v: &FreeVector) -> Result<FreeVector> {
        let x = to_dense(&self.domain, v)?;
        Ok(from_dense(&self.codomain, &mat_vec(&self.matrix, &x)))
    }

    pub fn apply_dense(&self, x: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.matrix, x)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LinearMap) -> Result<LinearMap> {
        if g.codomain != self.domain {
            return Err(RotaError::DimensionMismatch("composition of incompatible maps".into()));
        }
        Ok(LinearMap {
            domain: g.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: mat_mul(&self.matrix, &g.matrix),
        })
    }

    pub fn add(&self, g: &LinearMap) -> Result<LinearMap> {
        self.combine(&Rational::one(), g, &Rational::one())
    }

    pub fn sub(&self, g: &LinearMap) -> Result<LinearMap> {
        self.combine(&Rational::one(), g, &-Rational::one())
    }

    /// `a·self + b·g`.
    pub fn combine(&self, a: &Rational, g: &LinearMap, b: &Rational) -> Result<LinearMap> {
        if self.domain != g.domain || self.codomain != g.codomain {
            return Err(RotaError::DimensionMismatch("sum of maps on different bases".into()));
        }
        let matrix = self
            .matrix
            .iter()
            .zip(&g.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| a * x + b * y).collect())
            .collect();
        Ok(LinearMap { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix })
    }

    pub fn scale(&self, c: &Rational) -> LinearMap {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        LinearMap { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.matrix.clone();
        rref(&mut m).len()
    }

    /// Kernel basis in reduced row-echelon form (each vector has a leading 1
    /// in a distinct domain position, and zeros in the other leading
    /// positions). Empty exactly when the map is injective.
    pub fn kernel_basis(&self) -> Vec<FreeVector> {
        let vecs = null_space(&self.matrix, self.domain.len());
        echelon_basis(&vecs).iter().map(|v| from_dense(&self.domain, v)).collect()
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        let inv = invert(&self.matrix)?;
        Some(LinearMap { domain: self.codomain.clone(), codomain: self.domain.clone(), matrix: inv })
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap { domain: self.codomain.clone(), codomain: self.domain.clone(), matrix: transpose(&self.matrix) }
    }

    /// Same matrix on a relabelled basis (used when transporting structure).
    pub fn with_bases(&self, domain: Vec<Key>, codomain: Vec<Key>) -> Result<LinearMap> {
        LinearMap::new(domain, codomain, self.matrix.clone())
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn index_of(basis: &[Key], k: &Key) -> Result<usize> {
    basis.iter().position(|b| b == k).ok_or_else(|| RotaError::UnknownBasisKey(k.to_string()))
}

pub fn to_dense(basis: &[Key], v: &FreeVector) -> Result<Vec<Rational>> {
    let mut x = vec![Rational::zero(); basis.len()];
    for (k, c) in v.iter() {
        x[index_of(basis, k)?] = c.clone();
    }
    Ok(x)
}

pub fn from_dense(basis: &[Key], x: &[Rational]) -> FreeVector {
    FreeVector::from_terms(basis.iter().cloned().zip(x.iter().cloned()))
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity_matrix(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn mat_vec(m: &Matrix, x: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// In-place reduced row-echelon form; returns the pivot columns. Zero rows
/// are dropped.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    pivots
}

/// Basis of `{x : m x = 0}` (one vector per free column).
pub fn null_space(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (row, &p) in a.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Canonical (row-reduced) basis of the span of `vectors`.
pub fn echelon_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m = vectors.to_vec();
    rref(&mut m);
    m
}

pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    echelon_basis(vectors).len()
}

pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: Matrix = m.iter().zip(identity_matrix(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn basis(n: usize) -> Vec<Key> {
        (1..=n).map(|i| Key::name(format!("e{i}"))).collect()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn apply_identity_and_zero() {
        let id = LinearMap::identity(basis(2));
        let v = FreeVector::term(Key::name("e1"), int(3));
        assert_eq!(id.apply(&v).unwrap(), v);
        let z = LinearMap::zero(basis(2), basis(2));
        assert!(z.apply(&v).unwrap().is_zero());
    }

    #[test]
    fn apply_projection_scaled_operator() {
        let p = LinearMap::new(basis(2), basis(2), m(&[&[0, 0], &[0, -1]])).unwrap();
        let v = FreeVector::from_terms([(Key::name("e1"), int(1)), (Key::name("e2"), int(1))]);
        assert_eq!(p.apply(&v).unwrap(), FreeVector::term(Key::name("e2"), int(-1)));
    }

    #[test]
    fn apply_rejects_foreign_keys() {
        let id = LinearMap::identity(basis(2));
        let err = id.apply(&FreeVector::basis(Key::name("e9"))).unwrap_err();
        assert_eq!(err, RotaError::UnknownBasisKey("e9".into()));
    }

    #[test]
    fn kernel_examples() {
        assert!(LinearMap::identity(basis(3)).kernel_basis().is_empty());
        assert_eq!(LinearMap::zero(basis(2), basis(2)).kernel_basis().len(), 2);
        let f = LinearMap::new(basis(2), basis(2), m(&[&[1, 1], &[1, 1]])).unwrap();
        let ker = f.kernel_basis();
        assert_eq!(ker.len(), 1);
        let want = FreeVector::from_terms([(Key::name("e1"), int(1)), (Key::name("e2"), int(-1))]);
        assert_eq!(ker[0], want);
    }

    #[test]
    fn inverse_round_trip() {
        let a = LinearMap::new(basis(2), basis(2), m(&[&[2, 1], &[1, 1]])).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.compose(&inv).unwrap(), LinearMap::identity(basis(2)));
        let singular = LinearMap::new(basis(2), basis(2), m(&[&[1, 2], &[2, 4]])).unwrap();
        assert!(singular.inverse().is_none());
    }
}
