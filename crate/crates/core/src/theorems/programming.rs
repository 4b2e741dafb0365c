use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{pauli, swap};
use crate::linalg::{Amplitudes, Operator, RegisterShape, StateVector, VALIDATION_TOL};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `M: |k⟩|i⟩|j⟩ ↦ δ_{jk}|i⟩|0⟩|0⟩` on three `N`-level sites.
///
/// Its image is spanned by the `N` vectors `|i⟩|0⟩|0⟩`, so `rank M = N` and
/// `‖M†M − 1‖_F² = 2N³ − 2N²`.
pub fn matrix_mult_operator(n: usize) -> Result<Operator> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "N must be at least 2, got {n}"
        )));
    }
    let shape = RegisterShape::new(vec![n; 3])?;
    let dim = shape.total_dim();
    let mut data = vec![c(0.0); dim * dim];
    for k in 0..n {
        for i in 0..n {
            let col = (k * n + i) * n + k;
            let row = i * n * n;
            data[row * dim + col] = c(1.0);
        }
    }
    Operator::new(shape, data)
}

/// `|A⟩ = Σ A_ij |i⟩|j⟩`, unnormalized.
pub fn operator_state_vector(a: &Operator) -> Result<Amplitudes> {
    let n = a.dim();
    Amplitudes::new(RegisterShape::new(vec![n, n])?, a.entries().to_vec())
}

/// `M(|ψ⟩|A⟩)`, which equals `(Aψ) ⊗ |0,0⟩`. Raw amplitudes: the norm is
/// `‖Aψ‖`.
pub fn apply_programming_operator(psi: &StateVector, a: &Operator) -> Result<Amplitudes> {
    let n = a.dim();
    if psi.dim() != n {
        return Err(Error::shape(n, psi.dim()));
    }
    let m = matrix_mult_operator(n)?;
    let flat_psi = Amplitudes::new(RegisterShape::single(n)?, psi.amps().to_vec())?;
    let input = flat_psi.tensor(&operator_state_vector(a)?)?;
    m.apply_raw(&input)
}

/// `|U⟩ = N^{-1/2} Σ_j |j⟩ (U|j⟩)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorState {
    pub amplitudes: Amplitudes,
    pub norm: f64,
    /// False when the input was not unitary; the norm then differs from 1.
    pub unitary: bool,
}

impl OperatorState {
    pub fn state(&self) -> Result<StateVector> {
        StateVector::new(
            self.amplitudes.shape().clone(),
            self.amplitudes.data().to_vec(),
        )
    }
}

pub fn encode_operator_state(u: &Operator) -> Result<OperatorState> {
    let n = u.dim();
    let s = 1.0 / (n as f64).sqrt();
    let mut data = vec![c(0.0); n * n];
    for j in 0..n {
        for i in 0..n {
            data[j * n + i] = u.get(i, j) * s;
        }
    }
    let amplitudes = Amplitudes::new(u.shape().concat(u.shape())?, data)?;
    Ok(OperatorState {
        norm: amplitudes.norm(),
        unitary: u.unitarity_defect() <= VALIDATION_TOL,
        amplitudes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellOutcome {
    PhiPlus,
    PsiPlus,
    PsiMinus,
    PhiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
        BellOutcome::PhiMinus,
    ];

    /// Pauli index `k` of the branch `U σ_k |ψ⟩`.
    pub fn pauli_index(self) -> usize {
        match self {
            BellOutcome::PhiPlus => 0,
            BellOutcome::PsiPlus => 1,
            BellOutcome::PsiMinus => 2,
            BellOutcome::PhiMinus => 3,
        }
    }

    /// Coefficient of the branch in the expansion of `|ψ⟩|U⟩`.
    pub fn coefficient(self) -> Complex64 {
        match self {
            BellOutcome::PsiMinus => Complex64::new(0.0, 0.5),
            _ => c(0.5),
        }
    }
}

pub fn bell_state(outcome: BellOutcome) -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match outcome {
        BellOutcome::PhiPlus => [h, 0.0, 0.0, h],
        BellOutcome::PhiMinus => [h, 0.0, 0.0, -h],
        BellOutcome::PsiPlus => [0.0, h, h, 0.0],
        BellOutcome::PsiMinus => [0.0, h, -h, 0.0],
    };
    StateVector::from_parts_unchecked(
        RegisterShape::qubits(2).expect("two qubits"),
        amps.iter().map(|&x| c(x)).collect(),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct BellProjection {
    pub probability: f64,
    pub post_state: StateVector,
}

fn require_qubit(psi: &StateVector, u: &Operator) -> Result<()> {
    if psi.dim() != 2 || u.dim() != 2 {
        return Err(Error::shape(2, psi.dim().max(u.dim())));
    }
    Ok(())
}

/// Projects the first two qubits of `|ψ⟩|U⟩` onto a Bell state.
pub fn bell_project(
    psi: &StateVector,
    u: &Operator,
    outcome: BellOutcome,
) -> Result<BellProjection> {
    require_qubit(psi, u)?;
    let enc = encode_operator_state(u)?;
    if !enc.unitary {
        return Err(Error::NotUnitary(u.unitarity_defect()));
    }
    let joint = psi.as_amplitudes().tensor(&enc.amplitudes)?;
    let bell = bell_state(outcome);
    let mut post = [c(0.0); 2];
    for (ab, b) in bell.amps().iter().enumerate() {
        for (t, slot) in post.iter_mut().enumerate() {
            *slot += b.conj() * joint.data()[ab * 2 + t];
        }
    }
    let probability = post.iter().map(|z| z.norm_sqr()).sum();
    Ok(BellProjection {
        probability,
        post_state: StateVector::normalized(RegisterShape::qubits(1)?, post.to_vec())?,
    })
}

/// Branches `(outcome, coefficient, U σ_k |ψ⟩)` whose sum
/// `Σ coefficient · |outcome⟩ ⊗ branch` is `|ψ⟩|U⟩`.
pub fn bell_expansion(
    psi: &StateVector,
    u: &Operator,
) -> Result<Vec<(BellOutcome, Complex64, StateVector)>> {
    require_qubit(psi, u)?;
    let psi = StateVector::new(RegisterShape::qubits(1)?, psi.amps().to_vec())?;
    let u = u
        .clone()
        .reshape(RegisterShape::qubits(1)?)?
        .require_unitary()?;
    BellOutcome::ALL
        .iter()
        .map(|&o| {
            let branch = u.dot(&pauli(o.pauli_index())?)?.apply(&psi)?;
            Ok((o, o.coefficient(), branch))
        })
        .collect()
}

/// Programming map `L` on `|ψ⟩ ⊗ |U⟩` with `|U⟩` as produced by
/// [`encode_operator_state`]: `L(|ψ⟩|U⟩) = (U|ψ⟩)|0,0⟩`.
///
/// The encoded state stores `U_ij` at `|j⟩|i⟩` and carries `N^{-1/2}`, while
/// `M` reads `A_ij` at `|i⟩|j⟩`; hence `L = √N · M · (1 ⊗ SWAP)`.
pub fn encoded_programming_map(n: usize) -> Result<Operator> {
    let m = matrix_mult_operator(n)?;
    let shape = m.shape().clone();
    let swap_last = Operator::permutation(shape.clone(), |idx| {
        let (k, rest) = (idx / (n * n), idx % (n * n));
        k * n * n + (rest % n) * n + rest / n
    })?;
    Ok(m.dot(&swap_last)?.scale(c((n as f64).sqrt())))
}

/// `G = L + R` split of a unitary `G` against a programming map `L`.
#[derive(Clone, Debug)]
pub struct Residue {
    pub residue: Operator,
    pub programming: Operator,
    /// `‖L†L − 1‖_F`.
    pub non_unitarity: f64,
}

pub fn residue_decomposition(g: &Operator, l: &Operator) -> Result<Residue> {
    if g.dim() != l.dim() {
        return Err(Error::shape(g.shape().sites(), l.shape().sites()));
    }
    let l = l.clone().reshape(g.shape().clone())?;
    let residue = g.sub(&l)?;
    let ltl = l.adjoint().dot(&l)?;
    let non_unitarity = ltl.frob_distance(&Operator::identity(g.shape().clone()))?;
    Ok(Residue {
        residue,
        programming: l,
        non_unitarity,
    })
}

impl Residue {
    /// `‖G(|ψ⟩|U⟩) − (U|ψ⟩)|0,0⟩ − R(|ψ⟩|U⟩)‖` with `G = L + R`.
    pub fn identity_defect(&self, psi: &StateVector, u: &Operator) -> Result<f64> {
        let n = u.dim();
        let shape = self.residue.shape().clone();
        if psi.dim() != n || shape.total_dim() != n * n * n {
            return Err(Error::shape(shape.total_dim(), psi.dim() * n * n));
        }
        let enc = encode_operator_state(u)?;
        let x = Amplitudes::new(
            shape.clone(),
            psi.as_amplitudes().tensor(&enc.amplitudes)?.data().to_vec(),
        )?;
        let g = self.programming.add(&self.residue)?;
        let gx = g.apply_raw(&x)?;
        let rx = self.residue.apply_raw(&x)?;
        let upsi = u.apply_raw(&psi.as_amplitudes())?;
        let mut target = vec![c(0.0); n * n * n];
        for (i, a) in upsi.data().iter().enumerate() {
            target[i * n * n] = *a;
        }
        let target = Amplitudes::new(shape, target)?;
        gx.add(&target.scale(c(-1.0)))?
            .add(&rx.scale(c(-1.0)))
            .map(|d| d.norm())
    }
}

/// SWAP of the last two `N`-level sites, a convenient unitary `G`.
pub fn swap_last_two(n: usize) -> Result<Operator> {
    Operator::identity(RegisterShape::single(n)?).tensor(&swap(n)?)
}
