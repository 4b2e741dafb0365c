//! Three-bus Control-Shift processor.
//!
//! The program and control buses hold orthogonal basis states only, so they
//! are carried as a classical index tuple; [`conditional_full_operator`]
//! keeps the fully quantum representation for cross-validation on small
//! instances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{pauli_exp, GateSet, PauliString};
use crate::linalg::{Operator, RegisterShape, StateVector};

/// Default fixed evolution time per instruction, in radians.
pub const DEFAULT_DTAU: f64 = 1.0;
/// Default scan limit for [`approximate_angle`].
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

/// Gate-set indices `(k₁, …, k_L)`, executed `k₁` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Program(Vec<usize>);

impl Program {
    pub fn new(steps: Vec<usize>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Precondition(
                "program must have at least one step".into(),
            ));
        }
        Ok(Self(steps))
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Program) -> Program {
        let mut v = self.0.clone();
        v.extend_from_slice(&next.0);
        Program(v)
    }
}

impl TryFrom<Vec<usize>> for Program {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Program> for Vec<usize> {
    fn from(p: Program) -> Self {
        p.0
    }
}

#[derive(Clone, Debug)]
pub struct ProcessorConfig {
    gate_set: GateSet,
    length: usize,
}

impl ProcessorConfig {
    pub fn new(gate_set: GateSet, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::Precondition(
                "program length must be at least 1".into(),
            ));
        }
        Ok(Self { gate_set, length })
    }

    pub fn gate_set(&self) -> &GateSet {
        &self.gate_set
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn data_shape(&self) -> &RegisterShape {
        self.gate_set.data_shape()
    }

    fn check_program(&self, prog: &Program) -> Result<()> {
        if prog.len() != self.length {
            return Err(Error::shape(self.length, prog.len()));
        }
        let m = self.gate_set.len();
        match prog.steps().iter().find(|&&k| k >= m) {
            Some(&k) => Err(Error::IndexOutOfRange { index: k, limit: m }),
            None => Ok(()),
        }
    }
}

/// Program/control tuple together with the data register.
///
/// `slots()[0]` is the control slot `k₁`; `slots()[i]` is `k_{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    slots: Vec<usize>,
    data: StateVector,
}

impl JointState {
    pub fn new(prog: &Program, data: StateVector) -> Self {
        Self {
            slots: prog.steps().to_vec(),
            data,
        }
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn control(&self) -> usize {
        self.slots[0]
    }

    pub fn data(&self) -> &StateVector {
        &self.data
    }

    pub fn into_data(self) -> StateVector {
        self.data
    }
}

/// Cyclic shift `(k_L,…,k₂ | k₁) ↦ (k₁,k_L,…,k₃ | k₂)`; data untouched.
pub fn shift(js: &JointState) -> JointState {
    let mut slots = js.slots.clone();
    slots.rotate_left(1);
    JointState {
        slots,
        data: js.data.clone(),
    }
}

/// `|k⟩|D⟩ ↦ |k⟩(u_k|D⟩)` with `k` the control slot.
pub fn control_step(js: &JointState, cfg: &ProcessorConfig) -> Result<JointState> {
    let u = cfg.gate_set.get(js.control())?;
    Ok(JointState {
        slots: js.slots.clone(),
        data: u.apply(&js.data)?,
    })
}

/// Outcome of a full `(SC)^L` execution.
#[derive(Clone, Debug)]
pub struct Execution {
    pub final_state: JointState,
    /// Whether the program/control tuple equals its initial value.
    pub program_restored: bool,
}

/// Runs `(SC)^L` and reports the final joint state.
pub fn run_joint(prog: &Program, cfg: &ProcessorConfig, data: &StateVector) -> Result<Execution> {
    cfg.check_program(prog)?;
    if data.shape() != cfg.data_shape() {
        return Err(Error::shape(cfg.data_shape().sites(), data.shape().sites()));
    }
    let mut js = JointState::new(prog, data.clone());
    for _ in 0..cfg.length {
        js = shift(&control_step(&js, cfg)?);
    }
    let program_restored = js.slots == prog.steps();
    Ok(Execution {
        final_state: js,
        program_restored,
    })
}

/// `u_{k_L} ⋯ u_{k₁} · data`.
pub fn run(prog: &Program, cfg: &ProcessorConfig, data: &StateVector) -> Result<StateVector> {
    let exec = run_joint(prog, cfg, data)?;
    if !exec.program_restored {
        return Err(Error::Contract(
            "program tuple not restored after L steps".into(),
        ));
    }
    Ok(exec.final_state.into_data())
}

/// Shape `[m; L] ++ data`, program sites ordered `k_L … k₁`.
pub fn full_shape(cfg: &ProcessorConfig) -> Result<RegisterShape> {
    RegisterShape::new(vec![cfg.gate_set.len(); cfg.length])?.concat(cfg.data_shape())
}

/// The single-step unitary `S·C` on the whole `m^L · dim(data)` space.
pub fn conditional_full_operator(cfg: &ProcessorConfig) -> Result<Operator> {
    let shape = full_shape(cfg)?;
    let l = cfg.length;
    let sites: Vec<usize> = (l - 1..shape.num_sites()).collect();
    let c = crate::gates::conditional(&cfg.gate_set)?.embed(&shape, &sites)?;
    let s = Operator::permutation(shape.clone(), |j| {
        let mut d = shape.digits(j);
        d[..l].rotate_right(1);
        shape.index(&d).expect("digits in range")
    })?;
    s.dot(&c)
}

/// Data block `⟨K|·|K⟩` of an operator over [`full_shape`].
pub fn program_block(full: &Operator, cfg: &ProcessorConfig, prog: &Program) -> Result<Operator> {
    cfg.check_program(prog)?;
    if full.shape() != &full_shape(cfg)? {
        return Err(Error::shape(full_shape(cfg)?.sites(), full.shape().sites()));
    }
    let m = cfg.gate_set.len();
    let k_index = prog
        .steps()
        .iter()
        .rev()
        .fold(0usize, |acc, &k| acc * m + k);
    let n = cfg.data_shape().total_dim();
    let base = k_index * n;
    let dim = full.dim();
    let mut out = Vec::with_capacity(n * n);
    for r in 0..n {
        out.extend_from_slice(
            &full.entries()[(base + r) * dim + base..(base + r) * dim + base + n],
        );
    }
    Operator::new(cfg.data_shape().clone(), out)
}

/// `{exp(i·2πk/N·σ₃) : k = 0..N−1}` on one qubit.
pub fn u1_gate_set(n: usize) -> Result<GateSet> {
    if n < 1 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let z = PauliString::new(vec![3])?;
    GateSet::new(
        (0..n)
            .map(|k| pauli_exp(&z, std::f64::consts::TAU * k as f64 / n as f64))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Result of an angle search; `found == false` carries the best candidate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleApprox {
    pub m: usize,
    pub error: f64,
    pub found: bool,
}

/// Circular distance between two angles.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Smallest `m ∈ 1..=max_steps` with `|m·dtau − theta| mod 2π ≤ eps`.
pub fn approximate_angle(theta: f64, dtau: f64, eps: f64, max_steps: usize) -> Result<AngleApprox> {
    if eps.is_nan() || eps <= 0.0 || dtau.is_nan() || dtau <= 0.0 || !theta.is_finite() {
        return Err(Error::Precondition(
            "need eps > 0, dtau > 0 and finite theta".into(),
        ));
    }
    let mut best = AngleApprox {
        m: 0,
        error: f64::INFINITY,
        found: false,
    };
    for m in 1..=max_steps {
        let err = angle_distance(m as f64 * dtau, theta);
        if err <= eps {
            return Ok(AngleApprox {
                m,
                error: err,
                found: true,
            });
        }
        if err < best.error {
            best = AngleApprox {
                m,
                error: err,
                found: false,
            };
        }
    }
    Ok(best)
}
