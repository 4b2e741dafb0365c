use num_complex::Complex64;

use super::gateset::GateSet;
use crate::error::{Error, Result};
use crate::linalg::{Operator, RegisterShape, Tags};

const UNITARY: Tags = Tags {
    unitary: true,
    hermitian: false,
};

fn qubits(n: usize) -> RegisterShape {
    RegisterShape::qubits(n).expect("small register")
}

/// `Λ₁(U)`: block-diag(1, 1, U) on control ⊗ target.
pub fn controlled(u: &Operator) -> Result<Operator> {
    if u.shape() != &qubits(1) {
        return Err(Error::shape([2], u.shape().sites()));
    }
    let u = u.clone().require_unitary()?;
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let (a, b, c, d) = (u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1));
    let data = vec![
        o, z, z, z, //
        z, o, z, z, //
        z, z, a, b, //
        z, z, c, d,
    ];
    Ok(Operator::new(qubits(2), data)?.with_tags(UNITARY))
}

/// Conditional dynamics `Σₖ |k⟩⟨k| ⊗ u_k`, program register first.
pub fn conditional(gs: &GateSet) -> Result<Operator> {
    let m = gs.len();
    let data_shape = gs.data_shape();
    let n = data_shape.total_dim();
    let shape = RegisterShape::single(m)?.concat(data_shape)?;
    let dim = m * n;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (k, u) in gs.entries().iter().enumerate() {
        for r in 0..n {
            let row = (k * n + r) * dim + k * n;
            out[row..row + n].copy_from_slice(&u.entries()[r * n..(r + 1) * n]);
        }
    }
    Ok(Operator::new(shape, out)?.with_tags(UNITARY))
}

/// `(√2/2)·[[1, 1], [1, −1]]`.
pub fn hadamard() -> Operator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Operator::from_real_rows(qubits(1), &[&[h, h], &[h, -h]])
        .expect("2x2")
        .with_tags(Tags {
            unitary: true,
            hermitian: true,
        })
}

/// `|a⟩|b⟩ ↦ |a⟩|b ⊕ a⟩`.
pub fn cnot12() -> Operator {
    Operator::permutation(qubits(2), |j| if j >= 2 { j ^ 1 } else { j }).expect("permutation")
}

/// `|a⟩|b⟩ ↦ |a ⊕ b⟩|b⟩`.
pub fn cnot21() -> Operator {
    Operator::permutation(qubits(2), |j| if j & 1 == 1 { j ^ 2 } else { j }).expect("permutation")
}

/// `Λ₁(σ₃) = diag(1, 1, 1, −1)`.
pub fn dnot() -> Operator {
    let o = Complex64::new(1.0, 0.0);
    Operator::diagonal(qubits(2), &[o, o, o, -o])
        .expect("4x4")
        .with_tags(Tags {
            unitary: true,
            hermitian: true,
        })
}

/// Exchange of two `d`-level sites, `|k⟩|l⟩ ↦ |l⟩|k⟩`.
pub fn swap(d: usize) -> Result<Operator> {
    let shape = RegisterShape::new(vec![d, d])?;
    Operator::permutation(shape, |j| (j % d) * d + j / d)
}
