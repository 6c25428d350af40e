//! Coalgebras, convolution algebras `Hom(H, A)`, endomorphism algebras
//! `End_A(M ⊗ A)`, rooted trees and Birkhoff factorization.

mod birkhoff;
mod coalgebra;
mod convolution;
mod endo;
mod trees;

pub use birkhoff::{
    birkhoff_factorize, birkhoff_functorial_check, module_birkhoff, module_convolution, pole_character, tree_character,
    Birkhoff, ModuleBirkhoff, ModuleMap,
};
pub use coalgebra::{
    matrix_coalgebra, rb_coalgebra_check, triangular_coalgebra, trivial_coalgebra, Coalgebra, Comodule, ProductTable,
};
pub use convolution::{
    conv_p, convolution_mul, from_value_matrix, precompose, value_matrix, ConvMap, ConvolutionAlgebra,
};
pub use endo::{
    comodule_tensor_action, end_q, module_operator_p, phi_composition_orders, phi_map, ComoduleTensor, EndAM,
    EndAlgebra, TensorModule, TensorVector,
};
pub use trees::{forest_trees, forests_up_to, rooted_tree_hopf, Forest, Tree, MAX_TREE_DEGREE};
