//! JSON input and output documents for program runs and QCA runs.
//!
//! Complex amplitudes are written as `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{gate_set_from_specs, GateSpec};
use crate::linalg::{RegisterShape, StateVector, VALIDATION_TOL};
use crate::processor::{run_joint, ProcessorConfig, Program, DEFAULT_DTAU};
use crate::qca::{evolve, Lattice, Line, Sequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramFile {
    pub data_shape: RegisterShape,
    /// Entry 0 must be the identity.
    pub gate_set: Vec<GateSpec>,
    pub program: Program,
    /// Defaults to `|0…0⟩`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub final_state: Vec<Complex64>,
    pub program_restored: bool,
}

fn initial_state(
    shape: &RegisterShape,
    amps: Option<&Vec<Complex64>>,
    tol: f64,
) -> Result<StateVector> {
    let Some(amps) = amps else {
        return Ok(StateVector::zero(shape.clone()));
    };
    if amps.len() != shape.total_dim() {
        return Err(Error::shape(shape.total_dim(), amps.len()));
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > tol {
        return Err(Error::NotNormalized(norm));
    }
    StateVector::normalized(shape.clone(), amps.clone())
}

impl ProgramFile {
    pub fn run(&self) -> Result<RunOutput> {
        self.run_with_tol(VALIDATION_TOL)
    }

    /// `norm_tol` bounds how far the initial state's norm may be from 1.
    pub fn run_with_tol(&self, norm_tol: f64) -> Result<RunOutput> {
        let gs = gate_set_from_specs(&self.data_shape, &self.gate_set)?;
        let cfg = ProcessorConfig::new(gs, self.program.len())?;
        let data = initial_state(&self.data_shape, self.initial_state.as_ref(), norm_tol)?;
        let exec = run_joint(&self.program, &cfg, &data)?;
        Ok(RunOutput {
            final_state: exec.final_state.into_data().into_amps(),
            program_restored: exec.program_restored,
        })
    }
}

fn default_dtau() -> f64 {
    DEFAULT_DTAU
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QcaConfig {
    pub data_qubits: usize,
    pub perimeter: usize,
    pub lines: Vec<Line>,
    pub sequence: Sequence,
    #[serde(default = "default_dtau")]
    pub dtau: f64,
    pub repetitions: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QcaOutput {
    pub final_state: Vec<Complex64>,
    pub lines: Vec<Line>,
    pub lines_restored: bool,
}

impl QcaConfig {
    pub fn lattice(&self) -> Result<Lattice> {
        if self.lines.len() != 2 * self.data_qubits.max(1) - 1 {
            return Err(Error::shape(
                2 * self.data_qubits.max(1) - 1,
                self.lines.len(),
            ));
        }
        if let Some(l) = self.lines.iter().find(|l| l.slots.len() != self.perimeter) {
            return Err(Error::shape(self.perimeter, l.slots.len()));
        }
        let shape = RegisterShape::qubits(self.data_qubits)?;
        let data = initial_state(&shape, self.initial_state.as_ref(), VALIDATION_TOL)?;
        Lattice::new(self.lines.clone(), vec![data])
    }

    pub fn run(&self) -> Result<QcaOutput> {
        if !self.dtau.is_finite() {
            return Err(Error::NonFinite);
        }
        let lat = self.lattice()?;
        let out = evolve(&lat, self.sequence, self.repetitions, self.dtau)?;
        Ok(QcaOutput {
            final_state: out.data().amps().to_vec(),
            lines_restored: out.lines() == lat.lines(),
            lines: out.lines().to_vec(),
        })
    }
}
