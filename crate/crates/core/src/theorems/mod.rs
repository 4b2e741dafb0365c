//! Numerical checks of the structural results behind programmable
//! networks: program orthogonality, the non-unitary programming operator,
//! operator-state encoding and its Bell expansion, Lie-algebraic
//! universality, product-formula orders and the rebit remark.

mod lie;
mod orthogonality;
mod product;
mod programming;

pub use lie::{lie_closure_dimension, traceless_hermitian_dim, LieClosureReport};
pub use orthogonality::{
    extract_program_action, output_independence_check, program_orthogonality_check, Order,
    OrthogonalityReport, ProgramAction, STRUCTURE_TOL,
};
pub use product::{empirical_order, product_formula_error, rebit_expectation, ProductFormulaError};
pub use programming::{
    apply_programming_operator, bell_expansion, bell_project, bell_state, encode_operator_state,
    encoded_programming_map, matrix_mult_operator, operator_state_vector, residue_decomposition,
    swap_last_two, BellOutcome, BellProjection, OperatorState, Residue,
};
