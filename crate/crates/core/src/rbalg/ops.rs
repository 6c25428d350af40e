//! Operator-level constructions on concrete data: the pole projection,
//! divided-power products, eigenspace splitting and rectangular matrices.

use num_traits::{One, Zero};

use super::algebra::{matrix_op, matrix_product, matrix_same, matrix_scale, matrix_sum, MatrixOver, RbAlgebra};
use super::laurent::LaurentSeries;
use super::structure::RotaBaxter;
use crate::error::{Result, RotaError};
use crate::exactalg::{binomial, fmt_rational, invert, mat_mul, to_dense, FreeVector, Key, LinearMap, Rational};

pub fn laurent_p(x: &LaurentSeries) -> LaurentSeries {
    x.pole_part()
}

/// Bilinear extension of `u_m u_n = C(m+n, m) u_{m+n}` (keys must be `u_k`).
pub fn divided_mul(x: &FreeVector, y: &FreeVector) -> Result<FreeVector> {
    let mut out = FreeVector::zero();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            let (Key::Div(m), Key::Div(n)) = (a, b) else {
                return Err(RotaError::UnknownBasisKey(format!("{a} or {b} is not a divided power")));
            };
            out.add_term(Key::Div(m + n), c * d * binomial(u64::from(m + n), u64::from(*m)));
        }
    }
    Ok(out)
}

/// `p² + λp` as a matrix.
fn quasi_defect(p: &LinearMap, lambda: &Rational) -> Result<LinearMap> {
    p.compose(p)?.combine(&Rational::one(), p, lambda)
}

/// Bases of `M_{−λ} = ker(p + λ)` and `M₀ = ker p`, in echelon form.
pub fn regular_singular_split(p: &LinearMap, lambda: &Rational) -> Result<(Vec<FreeVector>, Vec<FreeVector>)> {
    if lambda.is_zero() {
        return Err(RotaError::ZeroWeight);
    }
    if !p.is_square() {
        return Err(RotaError::DimensionMismatch("operator must be square".into()));
    }
    if !quasi_defect(p, lambda)?.is_zero() {
        return Err(RotaError::NotQuasiIdempotent(format!("p^2 + ({})p is not zero", fmt_rational(lambda))));
    }
    let shifted = p.add(&LinearMap::scalar(p.domain().to_vec(), lambda))?;
    Ok((shifted.kernel_basis(), p.kernel_basis()))
}

/// Rebuilds `−λ·(projection onto M_{−λ} along M₀)` from the two bases.
pub fn reconstruct_from_split(
    basis: &[Key],
    regular: &[FreeVector],
    singular: &[FreeVector],
    lambda: &Rational,
) -> Result<LinearMap> {
    let n = basis.len();
    if regular.len() + singular.len() != n {
        return Err(RotaError::DimensionMismatch("eigenspace dimensions do not sum to the carrier".into()));
    }
    let mut cols = Vec::with_capacity(n);
    for v in regular.iter().chain(singular) {
        cols.push(to_dense(basis, v)?);
    }
    // Columns of B are the eigenvectors.
    let b: Vec<Vec<Rational>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let b_inv = invert(&b).ok_or_else(|| RotaError::DimensionMismatch("eigenvectors are dependent".into()))?;
    let mut d = vec![vec![Rational::zero(); n]; n];
    for (i, row) in d.iter_mut().enumerate().take(regular.len()) {
        row[i] = -lambda.clone();
    }
    LinearMap::new(basis.to_vec(), basis.to_vec(), mat_mul(&mat_mul(&b, &d), &b_inv))
}

/// `Q(X)Q(Y) = Q(Q(X)Y + XQ(Y) + λXY)` for an `ℓ×m` and an `m×n` matrix
/// over a commutative algebra.
pub fn matrix_rb_product_check(a: &RbAlgebra, x: &MatrixOver, y: &MatrixOver) -> Result<bool> {
    if !a.is_commutative() {
        return Err(RotaError::Invalid(format!("{} is not commutative", a.name())));
    }
    if x.cols() != y.rows() {
        return Err(RotaError::DimensionMismatch(format!("{}x{} times {}x{}", x.rows(), x.cols(), y.rows(), y.cols())));
    }
    let qx = matrix_op(a, x)?;
    let qy = matrix_op(a, y)?;
    let lhs = matrix_product(a, &qx, &qy)?;
    let inner = matrix_sum(
        a,
        &matrix_sum(a, &matrix_product(a, &qx, y)?, &matrix_product(a, x, &qy)?)?,
        &matrix_scale(a, a.weight(), &matrix_product(a, x, y)?)?,
    )?;
    matrix_same(a, &lhs, &matrix_op(a, &inner)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, linmap_from_json, Matrix};
    use crate::rbalg::Elem;
    use serde_json::json;

    fn u(k: u32) -> FreeVector {
        FreeVector::basis(Key::Div(k))
    }

    #[test]
    fn divided_products() {
        assert_eq!(divided_mul(&u(1), &u(1)).unwrap(), FreeVector::term(Key::Div(2), int(2)));
        let x = u(2).add(&u(5).scale(&int(3)));
        assert_eq!(divided_mul(&u(0), &x).unwrap(), x);
        let want = FreeVector::from_terms([(Key::Div(2), int(2)), (Key::Div(3), int(3))]);
        assert_eq!(divided_mul(&u(1).add(&u(2)), &u(1)).unwrap(), want);
    }

    fn map(rows: Matrix) -> LinearMap {
        let n = rows.len();
        let basis: Vec<Key> = (1..=n).map(|i| Key::name(format!("e{i}"))).collect();
        LinearMap::new(basis.clone(), basis, rows).unwrap()
    }

    #[test]
    fn split_of_diagonal_operator() {
        let p = map(vec![vec![int(0), int(0)], vec![int(0), int(-1)]]);
        let (reg, sing) = regular_singular_split(&p, &int(1)).unwrap();
        assert_eq!(reg, vec![FreeVector::basis(Key::name("e2"))]);
        assert_eq!(sing, vec![FreeVector::basis(Key::name("e1"))]);
    }

    #[test]
    fn split_of_zero_operator() {
        let p = map(vec![vec![int(0); 3]; 3]);
        let (reg, sing) = regular_singular_split(&p, &int(1)).unwrap();
        assert!(reg.is_empty());
        assert_eq!(sing.len(), 3);
    }

    #[test]
    fn split_rejects_jordan_block_and_zero_weight() {
        let j = map(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        assert!(matches!(regular_singular_split(&j, &int(1)), Err(RotaError::NotQuasiIdempotent(_))));
        assert_eq!(regular_singular_split(&j, &int(0)), Err(RotaError::ZeroWeight));
    }

    #[test]
    fn reconstruction_recovers_a_conjugated_projection() {
        let p = linmap_from_json(&json!({
            "domain": ["e1", "e2"],
            "matrix": [["2/1", "-2/1"], ["1/1", "-1/1"]]
        }))
        .unwrap();
        let lam = int(-1);
        let (reg, sing) = regular_singular_split(&p, &lam).unwrap();
        assert_eq!(reconstruct_from_split(p.domain(), &reg, &sing, &lam).unwrap(), p);
    }

    #[test]
    fn rectangular_identity_on_laurent_entries() {
        let a = RbAlgebra::laurent();
        let t = |i: i64| a.embed(&FreeVector::basis(Key::Mono(i))).unwrap();
        let x = MatrixOver::new(2, 3, vec![t(-1), t(0), t(1), t(1), t(-1), t(-1)]).unwrap();
        let y = MatrixOver::new(3, 1, vec![t(-1), t(1), t(0)]).unwrap();
        assert!(matrix_rb_product_check(&a, &x, &y).unwrap());
        let one = MatrixOver::new(1, 1, vec![t(-1)]).unwrap();
        assert!(matrix_rb_product_check(&a, &one, &one).unwrap());
        let bad = MatrixOver::new(1, 1, vec![Elem::Series(LaurentSeries::zero(4))]).unwrap();
        assert!(matches!(matrix_rb_product_check(&a, &x, &bad), Err(RotaError::DimensionMismatch(_))));
    }
}
