use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::controlled::{cnot12, dnot, hadamard, swap};
use super::pauli::{pauli_exp, PauliString};
use crate::error::{Error, Result};
use crate::linalg::{Operator, RegisterShape, IDENTITY_TOL};

/// Ordered unitaries `u₀ … u_{m−1}` over one data shape; `u₀` is the
/// identity.
#[derive(Clone, Debug, PartialEq)]
pub struct GateSet {
    entries: Vec<Operator>,
}

impl GateSet {
    pub fn new(entries: Vec<Operator>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::Precondition("empty gate set".into()))?;
        let shape = first.shape().clone();
        let id = Operator::identity(shape.clone());
        let d = first.frob_distance(&id)?;
        if d > IDENTITY_TOL {
            return Err(Error::Precondition(format!(
                "gate-set entry 0 must be the identity (distance {d:.3e})"
            )));
        }
        let entries = entries
            .into_iter()
            .map(|u| {
                if u.shape() != &shape {
                    return Err(Error::shape(shape.sites(), u.shape().sites()));
                }
                u.require_unitary()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { entries })
    }

    /// Prepends the identity to `gates`.
    pub fn with_identity(data_shape: RegisterShape, gates: Vec<Operator>) -> Result<Self> {
        let mut entries = vec![Operator::identity(data_shape)];
        entries.extend(gates);
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Operator] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> Result<&Operator> {
        self.entries.get(k).ok_or(Error::IndexOutOfRange {
            index: k,
            limit: self.entries.len(),
        })
    }

    pub fn data_shape(&self) -> &RegisterShape {
        self.entries[0].shape()
    }
}

/// Named gates accepted in gate-set files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedGate {
    Identity,
    Cnot12,
    Dnot,
    Hadamard,
    Swap,
}

/// One gate-set entry as written in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GateSpec {
    /// `exp(iφ·H_axes)`.
    PauliExp {
        axes: PauliString,
        phi: f64,
    },
    Named {
        name: NamedGate,
    },
    /// Row-major complex entries `[[re, im], …]`.
    Matrix {
        rows: Vec<Vec<Complex64>>,
    },
}

impl GateSpec {
    /// Builds the operator over `data_shape`.
    pub fn build(&self, data_shape: &RegisterShape) -> Result<Operator> {
        let op = match self {
            GateSpec::PauliExp { axes, phi } => pauli_exp(axes, *phi)?,
            GateSpec::Named { name } => match name {
                NamedGate::Identity => Operator::identity(data_shape.clone()),
                NamedGate::Cnot12 => cnot12(),
                NamedGate::Dnot => dnot(),
                NamedGate::Hadamard => hadamard(),
                NamedGate::Swap => swap(2)?,
            },
            GateSpec::Matrix { rows } => Operator::from_rows(data_shape.clone(), rows.clone())?,
        };
        if op.dim() != data_shape.total_dim() {
            return Err(Error::shape(data_shape.sites(), op.shape().sites()));
        }
        op.reshape(data_shape.clone())
    }
}

/// Builds a gate set from specs; entry 0 must evaluate to the identity.
pub fn gate_set_from_specs(data_shape: &RegisterShape, specs: &[GateSpec]) -> Result<GateSet> {
    GateSet::new(
        specs
            .iter()
            .map(|s| s.build(data_shape))
            .collect::<Result<Vec<_>>>()?,
    )
}
