//! Seeded sampling. ChaCha8 keeps streams identical across platforms and
//! `rand` releases, which the CLI determinism contract relies on.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{int, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All index triples below `n` when there are at most `cap`, otherwise
/// `cap` distinct triples drawn with `seed`, in lexicographic order.
pub fn index_triples(n: usize, cap: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    let all: Vec<_> = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    if all.len() <= cap {
        return all;
    }
    let mut picked: Vec<_> = all.choose_multiple(&mut rng(seed), cap).copied().collect();
    picked.sort_unstable();
    picked
}

/// Small nonzero integer coefficient in `[-bound, bound]`.
pub fn small_coeff(r: &mut SeededRng, bound: i64) -> Rational {
    loop {
        let c = r.gen_range(-bound..=bound);
        if c != 0 {
            return int(c);
        }
    }
}

/// Small rational `a/b` with `|a| ≤ bound`, `1 ≤ b ≤ bound`, possibly zero.
pub fn small_rational(r: &mut SeededRng, bound: i64) -> Rational {
    let a = r.gen_range(-bound..=bound);
    let b = r.gen_range(1..=bound);
    Rational::new(a.into(), b.into())
}

/// Invertible matrix on `basis` with integer entries in `[-2, 2]`.
pub fn random_invertible(r: &mut SeededRng, basis: &[crate::exactalg::Key]) -> crate::exactalg::LinearMap {
    let n = basis.len();
    loop {
        let m: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| int(r.gen_range(-2..=2))).collect()).collect();
        if crate::exactalg::invert(&m).is_some() {
            return crate::exactalg::LinearMap::new(basis.to_vec(), basis.to_vec(), m).expect("square");
        }
    }
}
