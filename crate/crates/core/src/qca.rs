//! Cylindrical quantum-cellular-automaton realization of the Control-Shift
//! processor.
//!
//! Geometry: `d` data qubits in a row. Above qubit `q` runs a one-qubit
//! control line (qutrit indices `{0,1,2}`); between qubits `q` and `q+1`
//! runs a two-qubit control line (bit indices `{0,1}`). Lines alternate
//! `one, two, one, …, one`, so there are `2d − 1` of them. Every line is a
//! cyclic array of `2L` slots and the control elements read slot
//! [`CONTROL_SLOT`].
//!
//! Shifts are the Margolus pair: `S₁` swaps 0-based slot pairs
//! `(2j, 2j+1)`, `S₂` swaps `(2j+1, 2j+2 mod 2L)`. Under the alternating
//! sequence, contents starting on even slots travel one way and contents
//! starting on odd slots the other, so one-qubit programs live on even
//! slots and two-qubit programs on odd slots (the checkerboard).
//!
//! Data evolution under a control layer is `exp(i·Σh·Δτ)`, with one local
//! term per nonzero control index. Program lines are basis configurations,
//! so each term is the control-value block of the corresponding control
//! Hamiltonian.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{
    control_hamiltonian, pauli_exp, swap, ControlHamiltonianKind, GateSet, PauliString,
};
use crate::linalg::{expi_hermitian, Operator, RegisterShape, StateVector, IDENTITY_TOL};
use crate::par;
use crate::processor::{self, ProcessorConfig, Program};

/// Slot read by the control elements.
pub const CONTROL_SLOT: usize = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineKind {
    /// Controls a single data qubit; indices `0, 1, 2`.
    One,
    /// Controls a neighbouring pair of data qubits; indices `0, 1`.
    Two,
}

impl LineKind {
    pub fn radix(self) -> usize {
        match self {
            LineKind::One => 3,
            LineKind::Two => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub kind: LineKind,
    pub slots: Vec<usize>,
}

/// Which Margolus half-step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `S₁`: pairs `(2j, 2j+1)` (0-based).
    Odd,
    /// `S₂`: pairs `(2j+1, 2j+2)`, cyclically.
    Even,
}

/// Control layer selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layer {
    /// One-qubit controls (`C₁`).
    C1,
    /// Two-qubit controls (`C₂`).
    C2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOperator {
    S1,
    S2,
    C1,
    C2,
}

/// Global update words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sequence {
    /// `C₁ S₁ C₂ S₂`, for checkerboard programs.
    #[serde(rename = "U_IV")]
    UIv,
    /// `C₁ C₂ S₁ C₁ C₂ S₂`.
    #[serde(rename = "U_VI")]
    UVi,
}

impl Sequence {
    /// The word as written; it acts right to left.
    pub fn word(self) -> &'static [StepOperator] {
        use StepOperator::*;
        match self {
            Sequence::UIv => &[C1, S1, C2, S2],
            Sequence::UVi => &[C1, C2, S1, C1, C2, S2],
        }
    }
}

/// Program lines plus one or more data registers sharing them.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    perimeter: usize,
    lines: Vec<Line>,
    registers: Vec<StateVector>,
}

impl Lattice {
    pub fn new(lines: Vec<Line>, registers: Vec<StateVector>) -> Result<Self> {
        if lines.len().is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "need 2d − 1 lines for d data qubits, got {}",
                lines.len()
            )));
        }
        for (i, line) in lines.iter().enumerate() {
            let want = if i % 2 == 0 {
                LineKind::One
            } else {
                LineKind::Two
            };
            if line.kind != want {
                return Err(Error::Arrangement(format!(
                    "line {i} must be {want:?}: one- and two-qubit lines alternate"
                )));
            }
        }
        let perimeter = lines[0].slots.len();
        if perimeter < 2 || !perimeter.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "perimeter must be even and at least 2, got {perimeter}"
            )));
        }
        for line in &lines {
            if line.slots.len() != perimeter {
                return Err(Error::shape(perimeter, line.slots.len()));
            }
            if let Some(&bad) = line.slots.iter().find(|&&v| v >= line.kind.radix()) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    limit: line.kind.radix(),
                });
            }
        }
        let d = lines.len().div_ceil(2);
        let shape = RegisterShape::qubits(d)?;
        if registers.is_empty() {
            return Err(Error::Precondition("at least one data register".into()));
        }
        if let Some(r) = registers.iter().find(|r| r.shape() != &shape) {
            return Err(Error::shape(shape.sites(), r.shape().sites()));
        }
        Ok(Self {
            perimeter,
            lines,
            registers,
        })
    }

    /// Lattice with all data registers in `|0…0⟩`.
    pub fn with_zero_data(lines: Vec<Line>, copies: usize) -> Result<Self> {
        let d = lines.len().div_ceil(2);
        let zero = StateVector::zero(RegisterShape::qubits(d)?);
        Self::new(lines, vec![zero; copies.max(1)])
    }

    pub fn data_qubits(&self) -> usize {
        self.lines.len().div_ceil(2)
    }

    pub fn perimeter(&self) -> usize {
        self.perimeter
    }

    /// Program length `L` (half the perimeter).
    pub fn half_perimeter(&self) -> usize {
        self.perimeter / 2
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn registers(&self) -> &[StateVector] {
        &self.registers
    }

    /// The first data register.
    pub fn data(&self) -> &StateVector {
        &self.registers[0]
    }

    /// One-qubit lines hold nonzero indices only on even slots and two-qubit
    /// lines only on odd slots.
    pub fn is_checkerboard(&self) -> bool {
        self.lines.iter().all(|line| {
            let allowed = match line.kind {
                LineKind::One => 0,
                LineKind::Two => 1,
            };
            line.slots
                .iter()
                .enumerate()
                .all(|(i, &v)| v == 0 || i % 2 == allowed)
        })
    }

    fn control_values(&self, kind: LineKind) -> Vec<usize> {
        self.lines
            .iter()
            .filter(|l| l.kind == kind)
            .map(|l| l.slots[CONTROL_SLOT])
            .collect()
    }
}

/// `|k⟩|l⟩ ↦ |l⟩|k⟩` for qubits or qutrits.
pub fn swap_gate(d: usize) -> Result<Operator> {
    if d != 2 && d != 3 {
        return Err(Error::Precondition(format!(
            "swap supports d = 2 or 3, got {d}"
        )));
    }
    swap(d)
}

fn shift_slots(slots: &mut [usize], parity: Parity) {
    let p = slots.len();
    let start = match parity {
        Parity::Odd => 0,
        Parity::Even => 1,
    };
    for j in (start..p).step_by(2) {
        slots.swap(j, (j + 1) % p);
    }
}

/// Pairwise exchange of slot contents on every line; data untouched.
pub fn partition_shift(lat: &Lattice, parity: Parity) -> Lattice {
    let mut out = lat.clone();
    for line in &mut out.lines {
        shift_slots(&mut line.slots, parity);
    }
    out
}

/// `(k₁, 0, k₂, 0, …, k_L, 0)`.
pub fn interleave_zeros(prog: &Program) -> Vec<usize> {
    prog.steps().iter().flat_map(|&k| [k, 0]).collect()
}

/// Local data Hamiltonians switched on by the control slot of each line of
/// the given layer.
pub fn local_hamiltonians(lat: &Lattice, which: Layer) -> Result<Vec<Operator>> {
    let d = lat.data_qubits();
    let full = RegisterShape::qubits(d)?;
    let mut out = Vec::new();
    match which {
        Layer::C1 => {
            let h = control_hamiltonian(ControlHamiltonianKind::Qutrit32);
            for (q, v) in lat.control_values(LineKind::One).into_iter().enumerate() {
                if v != 0 {
                    out.push(h.control_block(0, v)?.embed(&full, &[q])?);
                }
            }
        }
        Layer::C2 => {
            let h = control_hamiltonian(ControlHamiltonianKind::D3Centered);
            for (q, v) in lat.control_values(LineKind::Two).into_iter().enumerate() {
                if v != 0 {
                    out.push(h.control_block(1, v)?.embed(&full, &[q, q + 1])?);
                }
            }
        }
    }
    Ok(out)
}

fn check_commuting(hams: &[Operator]) -> Result<()> {
    for (i, a) in hams.iter().enumerate() {
        for b in &hams[i + 1..] {
            let c = a.commutator(b)?.frobenius_norm();
            if c > IDENTITY_TOL {
                return Err(Error::Arrangement(format!(
                    "active local Hamiltonians do not commute (‖[a,b]‖ = {c:.3e})"
                )));
            }
        }
    }
    Ok(())
}

/// Layer unitary `exp(i·Σh·Δτ)`, or `None` if no control is active.
pub fn layer_unitary(lat: &Lattice, which: Layer, dtau: f64) -> Result<Option<Operator>> {
    let hams = local_hamiltonians(lat, which)?;
    if hams.is_empty() {
        return Ok(None);
    }
    check_commuting(&hams)?;
    let mut total = hams[0].clone();
    for h in &hams[1..] {
        total = total.add(h)?;
    }
    expi_hermitian(&total, dtau).map(Some)
}

/// Applies `C₁` or `C₂` to every data register; lines unchanged.
pub fn control_layer(lat: &Lattice, which: Layer, dtau: f64) -> Result<Lattice> {
    let Some(u) = layer_unitary(lat, which, dtau)? else {
        return Ok(lat.clone());
    };
    let registers = par::map(&lat.registers, |r| u.apply(r))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Lattice {
        registers,
        ..lat.clone()
    })
}

/// `‖exp(i·Σh·Δτ) − Π exp(i·h·Δτ)‖_F`, product in the given order.
pub fn global_vs_local_check(local_hams: &[Operator], dtau: f64) -> Result<f64> {
    let first = local_hams
        .first()
        .ok_or_else(|| Error::Precondition("no Hamiltonians".into()))?;
    let mut sum = first.clone();
    for h in &local_hams[1..] {
        sum = sum.add(h)?;
    }
    let global = expi_hermitian(&sum, dtau)?;
    let locals = par::map(local_hams, |h| expi_hermitian(h, dtau))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    global.frob_distance(&Operator::product(&locals)?)
}

fn other(which: Layer) -> Layer {
    match which {
        Layer::C1 => Layer::C2,
        Layer::C2 => Layer::C1,
    }
}

/// Applies the word `repetitions` times, each time right to left.
///
/// `U_IV` requires the checkerboard arrangement and checks before every
/// control step that the other layer would act as the identity.
pub fn evolve(lat: &Lattice, sequence: Sequence, repetitions: usize, dtau: f64) -> Result<Lattice> {
    if repetitions == 0 {
        return Err(Error::Precondition("repetitions must be at least 1".into()));
    }
    if sequence == Sequence::UIv && !lat.is_checkerboard() {
        return Err(Error::Arrangement(
            "U_IV needs one-qubit indices on even slots and two-qubit indices on odd slots".into(),
        ));
    }
    let mut cur = lat.clone();
    for _ in 0..repetitions {
        for op in sequence.word().iter().rev() {
            cur = match op {
                StepOperator::S1 => partition_shift(&cur, Parity::Odd),
                StepOperator::S2 => partition_shift(&cur, Parity::Even),
                StepOperator::C1 | StepOperator::C2 => {
                    let which = if *op == StepOperator::C1 {
                        Layer::C1
                    } else {
                        Layer::C2
                    };
                    if sequence == Sequence::UIv
                        && !local_hamiltonians(&cur, other(which))?.is_empty()
                    {
                        return Err(Error::Arrangement(format!(
                            "both control layers active at a {which:?} step"
                        )));
                    }
                    control_layer(&cur, which, dtau)?
                }
            };
        }
    }
    Ok(cur)
}

/// Instruction alphabet used to run a lattice on the processor.
///
/// Index 0 is the identity. Indices `1 … 3^d − 1` are one-qubit layers,
/// the base-3 digits (big-endian, qubit 0 first) giving each qutrit index.
/// Indices from `3^d` on are two-qubit layers: `3^d − 1 + b` where `b` is
/// the nonzero base-2 word of the `d − 1` pair controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstructionAlphabet {
    data_qubits: usize,
}

/// A decoded instruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Identity,
    OneQubit(Vec<usize>),
    TwoQubit(Vec<usize>),
}

impl InstructionAlphabet {
    pub fn new(data_qubits: usize) -> Result<Self> {
        if data_qubits == 0 {
            return Err(Error::Precondition("need at least one data qubit".into()));
        }
        let size = 3usize
            .checked_pow(data_qubits as u32)
            .and_then(|a| a.checked_add(1 << (data_qubits - 1)));
        if size.is_none() || data_qubits > 12 {
            return Err(Error::Capacity {
                requested: usize::MAX,
                max: crate::linalg::max_total_dim(),
            });
        }
        Ok(Self { data_qubits })
    }

    fn one_count(&self) -> usize {
        3usize.pow(self.data_qubits as u32)
    }

    pub fn len(&self) -> usize {
        self.one_count() + (1 << (self.data_qubits - 1)) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, instr: &Instruction) -> Result<usize> {
        let digits = |v: &[usize], radix: usize, len: usize| -> Result<usize> {
            if v.len() != len {
                return Err(Error::shape(len, v.len()));
            }
            v.iter().try_fold(0usize, |acc, &x| {
                if x >= radix {
                    Err(Error::IndexOutOfRange {
                        index: x,
                        limit: radix,
                    })
                } else {
                    Ok(acc * radix + x)
                }
            })
        };
        match instr {
            Instruction::Identity => Ok(0),
            Instruction::OneQubit(v) => digits(v, 3, self.data_qubits),
            Instruction::TwoQubit(v) => {
                let b = digits(v, 2, self.data_qubits - 1)?;
                Ok(if b == 0 { 0 } else { self.one_count() - 1 + b })
            }
        }
    }

    pub fn decode(&self, index: usize) -> Result<Instruction> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                limit: self.len(),
            });
        }
        let split = |mut x: usize, radix: usize, len: usize| {
            let mut v = vec![0; len];
            for slot in v.iter_mut().rev() {
                *slot = x % radix;
                x /= radix;
            }
            v
        };
        Ok(if index == 0 {
            Instruction::Identity
        } else if index < self.one_count() {
            Instruction::OneQubit(split(index, 3, self.data_qubits))
        } else {
            Instruction::TwoQubit(split(index + 1 - self.one_count(), 2, self.data_qubits - 1))
        })
    }

    /// Unitary of one instruction as a product of closed-form Pauli
    /// exponentials: `e^{iσ₁Δτ}` / `e^{iσ₃Δτ}` per qutrit index 1 / 2 and
    /// `e^{iσ₃σ₃Δτ}` per active pair.
    pub fn unitary(&self, instr: &Instruction, dtau: f64) -> Result<Operator> {
        let d = self.data_qubits;
        let shape = RegisterShape::qubits(d)?;
        let mut acc = Operator::identity(shape);
        match instr {
            Instruction::Identity => {}
            Instruction::OneQubit(v) => {
                for (q, &x) in v.iter().enumerate() {
                    let axis = match x {
                        0 => continue,
                        1 => 1,
                        _ => 3,
                    };
                    let p = PauliString::from_sites(d, &[(q, axis)])?;
                    acc = pauli_exp(&p, dtau)?.dot(&acc)?;
                }
            }
            Instruction::TwoQubit(v) => {
                for (q, &b) in v.iter().enumerate() {
                    if b == 1 {
                        let p = PauliString::from_sites(d, &[(q, 3), (q + 1, 3)])?;
                        acc = pauli_exp(&p, dtau)?.dot(&acc)?;
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Gate set over the whole alphabet.
    pub fn gate_set(&self, dtau: f64) -> Result<GateSet> {
        let ops = par::map_range(self.len(), |i| {
            self.decode(i).and_then(|instr| self.unitary(&instr, dtau))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        GateSet::new(ops)
    }
}

/// Processor gate set for a `d`-qubit lattice at `dtau`.
pub fn instruction_gate_set(data_qubits: usize, dtau: f64) -> Result<GateSet> {
    InstructionAlphabet::new(data_qubits)?.gate_set(dtau)
}

/// The processor program a lattice executes under `sequence`: one
/// instruction per control step, in time order.
pub fn decode_program(lat: &Lattice, sequence: Sequence, repetitions: usize) -> Result<Program> {
    let alphabet = InstructionAlphabet::new(lat.data_qubits())?;
    let mut cur = lat.clone();
    let mut steps = Vec::new();
    for _ in 0..repetitions {
        for op in sequence.word().iter().rev() {
            match op {
                StepOperator::S1 => cur = partition_shift(&cur, Parity::Odd),
                StepOperator::S2 => cur = partition_shift(&cur, Parity::Even),
                StepOperator::C1 => steps.push(
                    alphabet.index(&Instruction::OneQubit(cur.control_values(LineKind::One)))?,
                ),
                StepOperator::C2 => steps.push(
                    alphabet.index(&Instruction::TwoQubit(cur.control_values(LineKind::Two)))?,
                ),
            }
        }
    }
    Program::new(steps)
}

/// Checkerboard lattice that executes `prog` under `U_IV` with `L`
/// repetitions, `prog.len() = 2L`.
///
/// Steps alternate two-qubit (0-based even positions) and one-qubit (odd
/// positions) instructions; `0` is allowed anywhere. One-qubit line `q`
/// holds its `L` indices as `interleave_zeros` rotated right by two slots
/// (the first read happens after one full `S₂S₁` pass); two-qubit line `q`
/// holds its indices as the reversed interleaving, since odd-slot contents
/// travel the other way round the cylinder.
pub fn encode_program(data_qubits: usize, prog: &Program) -> Result<Vec<Line>> {
    let alphabet = InstructionAlphabet::new(data_qubits)?;
    if !prog.len().is_multiple_of(2) {
        return Err(Error::EncodingMismatch(format!(
            "U_IV programs have even length, got {}",
            prog.len()
        )));
    }
    let l = prog.len() / 2;
    let mut one = vec![vec![0usize; l]; data_qubits];
    let mut two = vec![vec![0usize; l]; data_qubits - 1];
    for (i, &k) in prog.steps().iter().enumerate() {
        let r = i / 2;
        match (alphabet.decode(k)?, i % 2) {
            (Instruction::Identity, _) => {}
            (Instruction::TwoQubit(bits), 0) => {
                for (q, b) in bits.into_iter().enumerate() {
                    two[q][r] = b;
                }
            }
            (Instruction::OneQubit(vals), 1) => {
                for (q, v) in vals.into_iter().enumerate() {
                    one[q][r] = v;
                }
            }
            (instr, _) => {
                return Err(Error::EncodingMismatch(format!(
                    "step {i} holds {instr:?}, but U_IV alternates two-qubit and one-qubit steps"
                )))
            }
        }
    }
    let mut lines = Vec::with_capacity(2 * data_qubits - 1);
    for q in 0..data_qubits {
        let mut slots = interleave_zeros(&Program::new(one[q].clone())?);
        let n = slots.len();
        slots.rotate_right(2 % n);
        lines.push(Line {
            kind: LineKind::One,
            slots,
        });
        if q + 1 < data_qubits {
            let mut slots = interleave_zeros(&Program::new(two[q].clone())?);
            slots.reverse();
            lines.push(Line {
                kind: LineKind::Two,
                slots,
            });
        }
    }
    Ok(lines)
}

/// Runs `prog` on the processor and the lattice under `U_IV` (`L`
/// repetitions) and returns the largest distance between final data states
/// over all registers.
pub fn cross_check_processor(
    lat: &Lattice,
    cfg: &ProcessorConfig,
    prog: &Program,
    dtau: f64,
) -> Result<f64> {
    let reps = lat.half_perimeter();
    let decoded = decode_program(lat, Sequence::UIv, reps)?;
    if &decoded != prog {
        return Err(Error::EncodingMismatch(format!(
            "lattice reads {:?}, program is {:?}",
            decoded.steps(),
            prog.steps()
        )));
    }
    let alphabet = InstructionAlphabet::new(lat.data_qubits())?;
    if cfg.gate_set().len() != alphabet.len() || cfg.data_shape() != lat.data().shape() {
        return Err(Error::EncodingMismatch(
            "processor gate set does not match the lattice instruction alphabet".into(),
        ));
    }
    let evolved = evolve(lat, Sequence::UIv, reps, dtau)?;
    let dists = par::map_range(lat.registers.len(), |i| {
        let expected = processor::run(prog, cfg, &lat.registers[i])?;
        expected.distance(&evolved.registers[i])
    });
    dists
        .into_iter()
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
}
