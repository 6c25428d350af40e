//! Rota-Baxter modules.
//!
//! A module `(M, p)` over `(R, P)` satisfies
//! `P(a)p(x) = p(a·p(x)) + p(P(a)·x) + λp(a·x)`. Finite carriers store one
//! action matrix per algebra basis element and are audited exactly when
//! built; the regular module (`R` over itself, `p = P`) covers the
//! infinite-dimensional algebras.

mod bimodule;
mod module;
mod ops;
mod samples;

pub use bimodule::{strict_bimodule_check, BimoduleVerdict, BimoduleWitness};
pub use module::{
    atkinson_module_check, atkinson_module_pair, compatibility_chain_check, derived_action,
    p_one_invariance_module_check, rbm_check, rbm_sides, semilinearity_check, tilde_derived_action,
    tilde_derived_check, AlgElem, Carrier, FiniteCarrier, RbModule, RotaBaxterModule,
};
pub use ops::{
    direct_sum, dual_module, hom_dimension, is_module_hom, is_quasi_idempotent, module_split,
    product_module_conditions, reconstruct_operator, same_algebra, same_subspace, scale_module, ModuleSplit,
    ProductModuleOutcome,
};
pub use samples::{glued_product_module, one_dim, scalar_projection_module, seeded_modules, trivial_regular};

#[cfg(test)]
mod tests;
