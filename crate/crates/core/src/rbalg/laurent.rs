//! Truncated Laurent series `Σ c_i t^i + O(t^{N+1})` over the rationals.
//!
//! A series knows its coefficients exactly up to degree `N` (its
//! precision) and nothing beyond. Arithmetic propagates precision the way
//! truncated power series do, so a product `x·y` is only known up to
//! `min(N_x + v(y), N_y + v(x))` where `v` is the valuation. Nothing is ever
//! padded with invented zeros.

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Result, RotaError};
use crate::exactalg::{fmt_rational, parse_rational, FreeVector, Key, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    min_degree: i64,
    coeffs: Vec<Rational>,
    precision: i64,
}

impl LaurentSeries {
    /// Normalizes: drops terms beyond the precision and leading/trailing zeros.
    pub fn new(min_degree: i64, coeffs: Vec<Rational>, precision: i64) -> Self {
        let mut s = LaurentSeries { min_degree, coeffs, precision };
        s.normalize();
        s
    }

    pub fn zero(precision: i64) -> Self {
        LaurentSeries::new(precision + 1, Vec::new(), precision)
    }

    pub fn monomial(degree: i64, c: Rational, precision: i64) -> Result<Self> {
        if degree > precision {
            return Err(RotaError::PrecisionExhausted(format!(
                "t^{degree} lies beyond precision O(t^{})",
                precision + 1
            )));
        }
        Ok(LaurentSeries::new(degree, vec![c], precision))
    }

    pub fn from_terms(terms: &FreeVector<i64>, precision: i64) -> Result<Self> {
        let Some(lo) = terms.keys().next().copied() else {
            return Ok(LaurentSeries::zero(precision));
        };
        let hi = *terms.keys().last().unwrap();
        if hi > precision {
            return Err(RotaError::PrecisionExhausted(format!("t^{hi} lies beyond precision O(t^{})", precision + 1)));
        }
        let coeffs = (lo..=hi).map(|d| terms.coeff(&d)).collect();
        Ok(LaurentSeries::new(lo, coeffs, precision))
    }

    fn normalize(&mut self) {
        let keep = (self.precision - self.min_degree + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.min_degree += lead as i64;
        if self.coeffs.is_empty() {
            self.min_degree = self.precision + 1;
        }
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Lowest degree with a nonzero coefficient; `N + 1` for a zero series.
    pub fn valuation(&self) -> i64 {
        self.min_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: i64) -> Rational {
        let i = degree - self.min_degree;
        if i < 0 || i as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Known terms as a sparse vector over degrees.
    pub fn terms(&self) -> FreeVector<i64> {
        FreeVector::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| (self.min_degree + i as i64, c.clone())))
    }

    pub fn with_precision(&self, precision: i64) -> Self {
        LaurentSeries::new(self.min_degree, self.coeffs.clone(), precision.min(self.precision))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.precision.min(other.precision);
        let lo = self.min_degree.min(other.min_degree).min(n + 1);
        let coeffs = (lo..=n).map(|d| self.coeff(d) + other.coeff(d)).collect();
        LaurentSeries::new(lo, coeffs, n)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentSeries::new(self.min_degree, self.coeffs.iter().map(|x| x * c).collect(), self.precision)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = (self.precision + other.valuation()).min(other.precision + self.valuation());
        let lo = self.min_degree + other.min_degree;
        if self.is_zero() || other.is_zero() || lo > n {
            return LaurentSeries::zero(n);
        }
        let mut coeffs = vec![Rational::zero(); (n - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k < coeffs.len() && !a.is_zero() && !b.is_zero() {
                    coeffs[k] += a * b;
                }
            }
        }
        LaurentSeries::new(lo, coeffs, n)
    }

    /// Pole part: the terms of negative degree, precision unchanged.
    pub fn pole_part(&self) -> Self {
        let coeffs = (self.min_degree..0).map(|d| self.coeff(d)).collect();
        LaurentSeries::new(self.min_degree, coeffs, self.precision)
    }

    /// Everything but the pole part.
    pub fn regular_part(&self) -> Self {
        self.sub(&self.pole_part())
    }

    /// Equality on the degrees both sides know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.precision.min(other.precision);
        let lo = self.min_degree.min(other.min_degree);
        (lo..=n).all(|d| self.coeff(d) == other.coeff(d))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "min_degree": self.min_degree,
            "coeffs": self.coeffs.iter().map(fmt_rational).collect::<Vec<_>>(),
            "precision": self.precision,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| RotaError::Invalid(format!("Laurent series: {what}"));
        let min_degree = v["min_degree"].as_i64().ok_or_else(|| bad("missing min_degree"))?;
        let precision = v["precision"].as_i64().ok_or_else(|| bad("missing precision"))?;
        let coeffs = v["coeffs"]
            .as_array()
            .ok_or_else(|| bad("missing coeffs"))?
            .iter()
            .map(|c| c.as_str().ok_or_else(|| bad("coefficients must be strings")).and_then(parse_rational))
            .collect::<Result<Vec<_>>>()?;
        if min_degree > precision + 1 {
            return Err(bad("min_degree exceeds precision + 1"));
        }
        Ok(LaurentSeries::new(min_degree, coeffs, precision))
    }

    /// Keys of the known terms, as `t^i` basis keys.
    pub fn key_terms(&self) -> FreeVector<Key> {
        self.terms().map_keys(|&d| Key::Mono(d))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "{}·t^{} + ", fmt_rational(c), self.min_degree + i as i64)?;
        }
        write!(f, "O(t^{})", self.precision + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn s(terms: &[(i64, i64)], n: i64) -> LaurentSeries {
        LaurentSeries::from_terms(&terms.iter().map(|&(d, c)| (d, int(c))).collect(), n).unwrap()
    }

    #[test]
    fn pole_projection_examples() {
        assert_eq!(s(&[(-2, 1), (0, 3), (1, 1)], 8).pole_part(), s(&[(-2, 1)], 8));
        assert!(s(&[(0, 5), (3, 1)], 8).pole_part().is_zero());
        assert_eq!(s(&[(-1, 1)], 8).pole_part(), s(&[(-1, 1)], 8));
    }

    #[test]
    fn product_tracks_precision() {
        let x = s(&[(-1, 1)], 10);
        let y = s(&[(2, 1), (3, 1)], 10);
        let p = x.mul(&y);
        assert_eq!(p.precision(), 9);
        assert_eq!(p, s(&[(1, 1), (2, 1)], 9));
    }

    #[test]
    fn normalization_keeps_invariants() {
        let z = LaurentSeries::new(-3, vec![int(0), int(0)], 4);
        assert!(z.is_zero());
        assert_eq!(z.min_degree(), 5);
        let t = LaurentSeries::new(-1, vec![int(0), rat(1, 2), int(0)], 0);
        assert_eq!(t.min_degree(), 0);
        assert_eq!(t.coeffs(), &[rat(1, 2)]);
    }

    #[test]
    fn monomial_beyond_precision_is_refused() {
        assert!(matches!(LaurentSeries::monomial(5, int(1), 4), Err(RotaError::PrecisionExhausted(_))));
    }

    #[test]
    fn json_round_trip() {
        let x = s(&[(-2, 1), (0, -3)], 6);
        assert_eq!(LaurentSeries::from_json(&x.to_json()).unwrap(), x);
    }
}
