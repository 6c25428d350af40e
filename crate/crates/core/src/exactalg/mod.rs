//! Exact scalars, sparse vectors, dense linear maps and elimination.

mod key;
mod linmap;
mod rational;
mod vector;

pub use key::{Key, TensorKey};
pub use linmap::{
    echelon_basis, from_dense, identity_matrix, index_of, invert, mat_mul, mat_vec, null_space, rank_of, rref,
    to_dense, transpose, zeros, LinearMap, Matrix,
};
pub use rational::{binomial, fmt_rational, int, one, parse_rational, rat, zero, Rational};
pub use vector::{tensor_expand, FreeVector};

mod json;
pub use json::{
    keys_from_json, keys_to_json, linmap_from_json, linmap_to_json, matrix_from_json, matrix_to_json,
    rational_from_json, vector_from_json, vector_to_json,
};
