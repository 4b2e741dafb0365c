//! Pauli strings, their exact exponentials, controlled and conditional
//! gates, and the fixed control Hamiltonians of the processor.

mod controlled;
mod gateset;
mod hamiltonians;
mod pauli;

pub use controlled::{cnot12, cnot21, conditional, controlled, dnot, hadamard, swap};
pub use gateset::{gate_set_from_specs, GateSet, GateSpec, NamedGate};
pub use hamiltonians::{
    control_hamiltonian, control_hamiltonian_with, controlled_diag_sign, decompose_controlled_diag,
    decompose_controlled_diag_with, indexed_two_qubit_hamiltonian, qutrit_control_projector_form,
    ControlHamiltonianKind,
};
pub use pauli::{
    commutator_exp, commutator_exp_with, pauli, pauli_exp, pauli_exp_with, pauli_string,
    pauli_string_with, pauli_with, universal_generators, PauliConvention, PauliString,
};
