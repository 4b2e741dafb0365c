use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pauli::{pauli_exp_with, pauli_with, PauliConvention, PauliString};
use crate::error::{Error, Result};
use crate::linalg::{Operator, RegisterShape, Tags};

const HERMITIAN: Tags = Tags {
    unitary: false,
    hermitian: true,
};

/// The fixed control Hamiltonians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ControlHamiltonianKind {
    /// Qubit-controlled `σ₁`: block-diag(0, σ₁).
    X2,
    /// Qubit-controlled `σ₃`: block-diag(0, σ₃).
    Z2,
    /// `|1⟩⟨1| ⊗ σ₃ ⊗ σ₃`, control first.
    D3,
    /// Two control qubits selecting `σ₁, σ₂, σ₃` (or nothing on `|00⟩`).
    P3,
    /// Qutrit control: nothing on `|0⟩`, `σ₁` on `|1⟩`, `σ₃` on `|2⟩`.
    #[serde(rename = "QUTRIT32")]
    Qutrit32,
    /// `σ₃ ⊗ |1⟩⟨1| ⊗ σ₃`, control between the two data qubits.
    D3Centered,
}

impl ControlHamiltonianKind {
    pub const ALL: [ControlHamiltonianKind; 6] = [
        Self::X2,
        Self::Z2,
        Self::D3,
        Self::P3,
        Self::Qutrit32,
        Self::D3Centered,
    ];

    pub fn shape(self) -> RegisterShape {
        let dims = match self {
            Self::X2 | Self::Z2 => vec![2, 2],
            Self::D3 | Self::P3 | Self::D3Centered => vec![2, 2, 2],
            Self::Qutrit32 => vec![3, 2],
        };
        RegisterShape::new(dims).expect("fixed shape")
    }
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Literal matrix for `kind` in the default Pauli convention.
pub fn control_hamiltonian(kind: ControlHamiltonianKind) -> Operator {
    control_hamiltonian_with(kind, PauliConvention::default())
}

/// Literal matrix for `kind`; only `P3` depends on the convention (its
/// `|10⟩` block is `σ₂`).
pub fn control_hamiltonian_with(kind: ControlHamiltonianKind, conv: PauliConvention) -> Operator {
    use ControlHamiltonianKind::*;
    let shape = kind.shape();
    let n = shape.total_dim();
    let mut m = vec![re(0.0); n * n];
    let mut set = |r: usize, c: usize, v: Complex64| m[r * n + c] = v;
    match kind {
        X2 => {
            set(2, 3, re(1.0));
            set(3, 2, re(1.0));
        }
        Z2 => {
            set(2, 2, re(1.0));
            set(3, 3, re(-1.0));
        }
        D3 => {
            for (i, v) in [(4, 1.0), (5, -1.0), (6, -1.0), (7, 1.0)] {
                set(i, i, re(v));
            }
        }
        P3 => {
            let s = conv.sigma2_sign();
            set(2, 3, re(1.0));
            set(3, 2, re(1.0));
            set(4, 5, Complex64::new(0.0, s));
            set(5, 4, Complex64::new(0.0, -s));
            set(6, 6, re(1.0));
            set(7, 7, re(-1.0));
        }
        Qutrit32 => {
            set(2, 3, re(1.0));
            set(3, 2, re(1.0));
            set(4, 4, re(1.0));
            set(5, 5, re(-1.0));
        }
        D3Centered => {
            // σ₃ ⊗ |1⟩⟨1| ⊗ σ₃: nonzero only when the middle bit is 1.
            for i in 0..8 {
                if (i >> 1) & 1 == 1 {
                    let sign = if (i >> 2) & 1 == i & 1 { 1.0 } else { -1.0 };
                    set(i, i, re(sign));
                }
            }
        }
    }
    Operator::new(shape, m)
        .expect("fixed matrix")
        .with_tags(HERMITIAN)
}

/// Qutrit-controlled Hamiltonian assembled from projectors,
/// `Σ_v |v⟩⟨v| ⊗ B_v` with `B_0 = 0`, `B_1 = σ₁`, `B_2 = σ₃`.
///
/// The control-`|0⟩` block is taken as zero (no interaction); it therefore
/// coincides with [`ControlHamiltonianKind::Qutrit32`].
pub fn qutrit_control_projector_form() -> Operator {
    let qutrit = RegisterShape::single(3).expect("qutrit");
    let blocks = [
        Operator::zeros(RegisterShape::qubits(1).expect("qubit")),
        pauli_with(1, PauliConvention::default()).expect("σ₁"),
        pauli_with(3, PauliConvention::default()).expect("σ₃"),
    ];
    let mut acc = Operator::zeros(RegisterShape::new(vec![3, 2]).expect("shape"));
    for (v, b) in blocks.iter().enumerate() {
        let mut diag = vec![re(0.0); 3];
        diag[v] = re(1.0);
        let proj = Operator::diagonal(qutrit.clone(), &diag).expect("projector");
        acc = acc
            .add(&proj.tensor(b).expect("tensor"))
            .expect("same shape");
    }
    acc.with_tags(HERMITIAN)
}

/// The four two-body exponentials whose ordered product is
/// `exp(i·h·τ)` for `h = D3` (`centered = false`) or `h = D3Centered`.
///
/// Factors are `e^{iτ/2·Z_aZ_b} · e^{iπ/4·A} · e^{−s·iτ/2·B} · e^{−iπ/4·A}`
/// where the conjugation turns `B` into `±Z₁Z₂Z₃`. With the printed `σ₂`
/// the sign `s` is `+1`; with the standard `σ_y` the conjugated string picks
/// up a minus sign and `s = −1`. [`controlled_diag_sign`] returns `s`.
pub fn decompose_controlled_diag(tau: f64, centered: bool) -> Vec<Operator> {
    decompose_controlled_diag_with(tau, centered, PauliConvention::default())
}

/// Sign of the middle factor that makes the decomposition exact.
pub fn controlled_diag_sign(conv: PauliConvention) -> f64 {
    conv.sigma2_sign()
}

pub fn decompose_controlled_diag_with(
    tau: f64,
    centered: bool,
    conv: PauliConvention,
) -> Vec<Operator> {
    decompose_controlled_diag_signed(tau, centered, conv, controlled_diag_sign(conv))
}

pub(crate) fn decompose_controlled_diag_signed(
    tau: f64,
    centered: bool,
    conv: PauliConvention,
    sign: f64,
) -> Vec<Operator> {
    let quarter = std::f64::consts::FRAC_PI_4;
    let s = |v: [u8; 3]| PauliString::new(v.to_vec()).expect("valid string");
    let (zz, a, b) = if centered {
        (s([3, 0, 3]), s([3, 1, 0]), s([0, 2, 3]))
    } else {
        (s([0, 3, 3]), s([1, 3, 0]), s([2, 0, 3]))
    };
    [
        (zz, tau / 2.0),
        (a.clone(), quarter),
        (b, -sign * tau / 2.0),
        (a, -quarter),
    ]
    .iter()
    .map(|(p, phi)| pauli_exp_with(p, *phi, conv).expect("3-qubit string"))
    .collect()
}

/// `½(σ₃^{(a)}σ₃^{(c)} − σ₃^{(a)}σ₃^{(b)}σ₃^{(c)})` on sites
/// `a = 2k, b = 2k+1, c = 2k+2` (0-based), identity elsewhere.
///
/// With 0-based numbering the data qubits sit at even sites `2k`, `2k+2`
/// (odd sites counting from 1) and the control at `2k+1`.
pub fn indexed_two_qubit_hamiltonian(k: usize, total_sites: usize) -> Result<Operator> {
    let c = 2 * k + 2;
    if c >= total_sites {
        return Err(Error::IndexOutOfRange {
            index: c,
            limit: total_sites,
        });
    }
    let full = RegisterShape::qubits(total_sites)?;
    let local = control_hamiltonian(ControlHamiltonianKind::D3Centered);
    Ok(local
        .embed(&full, &[2 * k, 2 * k + 1, c])?
        .with_tags(HERMITIAN))
}
