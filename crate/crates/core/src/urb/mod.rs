//! The ring of Rota-Baxter operators `U_RB(R)`, realized as `R ⊕ (R ⊗ R)`
//! with `Q = 1 ⊗ 1`. Modules over it are exactly Rota-Baxter modules over
//! `(R, P)`, with `Q` acting as `p`.
//!
//! Over Laurent series and divided powers the tensor part lives on
//! monomials, and products leaving the precision bound raise
//! `PrecisionExhausted`.

mod action;
mod checks;
mod coinduce;
mod element;
#[cfg(test)]
mod tests;

pub use action::{
    free_rank, opposite_antimultiplicative_check, opposite_ring, product_projection_audit, regular_action_rank,
    urb_act, urb_action_matrix, urb_opposite_iso, urb_product_projection, ProjectionAudit, Side,
};
pub use checks::{
    closed_form_check, multinomial, product_table, sample_triples, urb_associativity_check, urb_audit, urb_dimension,
    urb_relation_check, urb_relation_sides, zero_divisor_product, ClosedForm,
};
pub use coinduce::{coinduce, restrict, urb_map, Coinduced};
pub use element::{random_element, urb_basis, urb_mul, urb_one, urb_product, urb_q, UrbElement, UrbKey};
