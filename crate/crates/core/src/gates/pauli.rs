use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Operator, RegisterShape, Tags};

/// Which `σ₂` to use.
///
/// `Printed` is `[[0, i], [−i, 0]]`, the transpose of the textbook `σ_y`.
/// Every identity used by this crate depends only on `σ_j² = 1` and pairwise
/// anticommutation, which both conventions satisfy; the sign of a few
/// derived quantities (the `σ₁σ₂` product, the Bell `Ψ⁻` coefficient, the
/// controlled-diagonal decomposition) follows the choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliConvention {
    #[default]
    Printed,
    Standard,
}

impl PauliConvention {
    /// `+1` for `Printed`, `−1` for `Standard`: the factor relating this
    /// convention's `σ₂` to `[[0, i], [−i, 0]]`.
    pub fn sigma2_sign(self) -> f64 {
        match self {
            PauliConvention::Printed => 1.0,
            PauliConvention::Standard => -1.0,
        }
    }
}

fn qubit() -> RegisterShape {
    RegisterShape::qubits(1).expect("one qubit")
}

const HT: Tags = Tags {
    unitary: true,
    hermitian: true,
};

/// `σ_j` for `j ∈ {0, 1, 2, 3}` in the default convention.
pub fn pauli(j: usize) -> Result<Operator> {
    pauli_with(j, PauliConvention::default())
}

pub fn pauli_with(j: usize, conv: PauliConvention) -> Result<Operator> {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, conv.sigma2_sign());
    let data = match j {
        0 => vec![o, z, z, o],
        1 => vec![z, o, o, z],
        2 => vec![z, i, -i, z],
        3 => vec![o, z, z, -o],
        _ => return Err(Error::IndexOutOfRange { index: j, limit: 4 }),
    };
    Ok(Operator::new(qubit(), data)?.validate())
}

/// Multi-index `j = (j₁, …, jₙ)` naming `σ_{j₁} ⊗ … ⊗ σ_{jₙ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct PauliString(Vec<u8>);

impl PauliString {
    pub fn new(indices: Vec<u8>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Precondition("empty Pauli string".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&j| j > 3) {
            return Err(Error::IndexOutOfRange {
                index: bad as usize,
                limit: 4,
            });
        }
        Ok(Self(indices))
    }

    /// Identity everywhere except `axis` at each `(site, axis)`.
    pub fn from_sites(n: usize, ops: &[(usize, u8)]) -> Result<Self> {
        let mut v = vec![0u8; n];
        for &(site, axis) in ops {
            if site >= n {
                return Err(Error::IndexOutOfRange {
                    index: site,
                    limit: n,
                });
            }
            v[site] = axis;
        }
        Self::new(v)
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&j| j == 0)
    }

    /// Symbolic commutation test: strings commute iff they differ in an
    /// even number of sites where both are non-identity.
    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::shape(self.len(), other.len()));
        }
        let clashes = self
            .0
            .iter()
            .zip(&other.0)
            .filter(|(&a, &b)| a != 0 && b != 0 && a != b)
            .count();
        Ok(clashes % 2 == 0)
    }

    /// Every string of length `n` (`4ⁿ` of them).
    pub fn all(n: usize) -> Vec<PauliString> {
        (0..4usize.pow(n as u32))
            .map(|mut k| {
                let mut v = vec![0u8; n];
                for slot in v.iter_mut().rev() {
                    *slot = (k % 4) as u8;
                    k /= 4;
                }
                PauliString(v)
            })
            .collect()
    }
}

impl TryFrom<Vec<u8>> for PauliString {
    type Error = Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PauliString> for Vec<u8> {
    fn from(p: PauliString) -> Self {
        p.0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &j in &self.0 {
            f.write_str(["I", "X", "Y", "Z"][j as usize])?;
        }
        Ok(())
    }
}

/// `H_j = ⊗ₖ σ_{jₖ}`.
pub fn pauli_string(j: &PauliString) -> Result<Operator> {
    pauli_string_with(j, PauliConvention::default())
}

pub fn pauli_string_with(j: &PauliString, conv: PauliConvention) -> Result<Operator> {
    let mut it = j.indices().iter();
    let first = pauli_with(*it.next().expect("non-empty") as usize, conv)?;
    it.try_fold(first, |acc, &k| acc.tensor(&pauli_with(k as usize, conv)?))
        .map(|op| op.with_tags(HT))
}

/// `exp(iφ·H_j) = cos φ · 1 + i sin φ · H_j`.
pub fn pauli_exp(j: &PauliString, phi: f64) -> Result<Operator> {
    pauli_exp_with(j, phi, PauliConvention::default())
}

pub fn pauli_exp_with(j: &PauliString, phi: f64, conv: PauliConvention) -> Result<Operator> {
    let h = pauli_string_with(j, conv)?;
    let id = Operator::identity(h.shape().clone());
    Ok(id
        .scale(Complex64::new(phi.cos(), 0.0))
        .add(&h.scale(Complex64::new(0.0, phi.sin())))?
        .with_tags(Tags {
            unitary: true,
            hermitian: false,
        }))
}

/// `exp(−[H_j, H_k]·τ)` without a matrix exponential: the identity when the
/// strings commute, otherwise `e^{iπ/4·H_j} · e^{2iτ·H_k} · e^{−iπ/4·H_j}`.
pub fn commutator_exp(j: &PauliString, k: &PauliString, tau: f64) -> Result<Operator> {
    commutator_exp_with(j, k, tau, PauliConvention::default())
}

pub fn commutator_exp_with(
    j: &PauliString,
    k: &PauliString,
    tau: f64,
    conv: PauliConvention,
) -> Result<Operator> {
    if j.commutes_with(k)? {
        return Ok(Operator::identity(RegisterShape::qubits(j.len())?));
    }
    let quarter = std::f64::consts::FRAC_PI_4;
    Operator::product([
        &pauli_exp_with(j, quarter, conv)?,
        &pauli_exp_with(k, 2.0 * tau, conv)?,
        &pauli_exp_with(j, -quarter, conv)?,
    ])
}

/// The `2n + 1` generators `Z₀, Z₁, X₀…X_{n−1}, D₀…D_{n−2}`.
///
/// `Z₀`, `Z₁` are `σ₃` on the first two sites, `X_k` is `σ₁` on site `k`,
/// and `D_k` is `σ₃σ₃` on sites `k, k+1`.
pub fn universal_generators(n: usize) -> Result<Vec<PauliString>> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "universal generator set needs at least 2 qubits, got {n}"
        )));
    }
    let mut out = vec![
        PauliString::from_sites(n, &[(0, 3)])?,
        PauliString::from_sites(n, &[(1, 3)])?,
    ];
    for k in 0..n {
        out.push(PauliString::from_sites(n, &[(k, 1)])?);
    }
    for k in 0..n - 1 {
        out.push(PauliString::from_sites(n, &[(k, 3), (k + 1, 3)])?);
    }
    Ok(out)
}
