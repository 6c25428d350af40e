//! Rota-Baxter algebras: instances, axiom checks and operator-level
//! constructions (dual operator, double product, Atkinson pairs,
//! eigenspace splitting, matrices and products).

mod algebra;
mod descriptor;
mod hom;
mod instances;
mod laurent;
mod ops;
mod structure;

pub use algebra::{
    matrix_op, matrix_product, matrix_same, matrix_scale, matrix_sum, Elem, FiniteTable, Kind, MatrixOver, OpForm,
    RbAlgebra,
};
pub use descriptor::{algebra_from_json, algebra_ref_from_json, algebra_to_json, builtin_algebra};
pub use hom::RbHom;
pub use instances::{
    product_rba, tilde_p, zero_id_product, DIVIDED_MAX_DEGREE, DIVIDED_SAMPLE_DEGREE, LAURENT_PRECISION,
    LAURENT_SAMPLE_DEGREE,
};
pub use laurent::LaurentSeries;
pub use ops::{divided_mul, laurent_p, matrix_rb_product_check, reconstruct_from_split, regular_singular_split};
pub use structure::{
    assoc_check, atkinson_check, atkinson_mul, atkinson_pair, audit_algebra, audit_pairs, audit_triples,
    p_one_invariance_check, quasi_idempotent_check, rb_check, rb_sides, star_assoc_check, star_hom_check, star_product,
    tilde_involution_check, tilde_star_check, unit_check, RotaBaxter, AUDIT_TRIPLES,
};
