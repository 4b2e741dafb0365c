//! Registry of self-checks behind `ctrlshift verify`.
//!
//! Each check yields one [`CheckRecord`]. Records are sorted by name so the
//! report is stable regardless of which thread finished first.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gates::{
    cnot12, cnot21, commutator_exp, conditional, control_hamiltonian, decompose_controlled_diag,
    hadamard, indexed_two_qubit_hamiltonian, pauli, pauli_exp, pauli_string, swap,
    universal_generators, ControlHamiltonianKind, GateSet, PauliString,
};
use crate::linalg::{eigenvalues_hermitian, expi_hermitian, Operator, RegisterShape, StateVector};
use crate::par;
use crate::processor::{
    approximate_angle, conditional_full_operator, program_block, run_joint, ProcessorConfig,
    Program,
};
use crate::qca::{
    cross_check_processor, decode_program, encode_program, evolve, global_vs_local_check,
    instruction_gate_set, local_hamiltonians, Instruction, InstructionAlphabet, Lattice, Layer,
    Line, LineKind, Sequence,
};
use crate::random::{
    random_operator, random_state, random_unit_plane_vector, random_unitary, rng_for, SeededRng,
};
use crate::theorems::{
    apply_programming_operator, bell_expansion, bell_project, bell_state, empirical_order,
    encode_operator_state, encoded_programming_map, lie_closure_dimension, matrix_mult_operator,
    output_independence_check, product_formula_error, program_orthogonality_check,
    rebit_expectation, residue_decomposition, swap_last_two, BellOutcome, Order,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Gates,
    Processor,
    Qca,
    Theorems,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["all", "gates", "processor", "qca", "theorems"];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "gates" => Ok(Suite::Gates),
            "processor" => Ok(Suite::Processor),
            "qca" => Ok(Suite::Qca),
            "theorems" => Ok(Suite::Theorems),
            _ => Err(Error::Precondition(format!(
                "unknown suite {s:?}; expected one of {:?}",
                Suite::NAMES
            ))),
        }
    }
}

/// Direction of the comparison between metric and tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Pass iff `metric ≤ tol`.
    Max,
    /// Pass iff `metric ≥ tol`.
    Min,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: Value,
    pub metric: f64,
    pub tol: f64,
    pub bound: Bound,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

type CheckFn = fn(&mut SeededRng) -> Result<(Value, f64)>;

struct Check {
    name: &'static str,
    suite: Suite,
    bound: Bound,
    tol: f64,
    run: CheckFn,
}

const fn max(name: &'static str, suite: Suite, tol: f64, run: CheckFn) -> Check {
    Check {
        name,
        suite,
        bound: Bound::Max,
        tol,
        run,
    }
}

const fn min(name: &'static str, suite: Suite, tol: f64, run: CheckFn) -> Check {
    Check {
        name,
        suite,
        bound: Bound::Min,
        tol,
        run,
    }
}

fn registry() -> Vec<Check> {
    use Suite::*;
    vec![
        max("gates.cnot_basis_change", Gates, 1e-12, cnot_basis_change),
        max(
            "gates.commutator_exponential",
            Gates,
            1e-12,
            commutator_exponential,
        ),
        max(
            "gates.controlled_diag_decomposition",
            Gates,
            1e-12,
            controlled_diag,
        ),
        max(
            "gates.controlled_diag_spectrum",
            Gates,
            1e-12,
            controlled_diag_spectrum,
        ),
        max(
            "gates.pauli_exp_closed_form",
            Gates,
            1e-12,
            pauli_exp_closed_form,
        ),
        max("gates.swap_three_cnots", Gates, 1e-12, swap_three_cnots),
        max(
            "processor.angle_approximation",
            Processor,
            1e-3,
            angle_approximation,
        ),
        max(
            "processor.full_operator_blocks",
            Processor,
            1e-12,
            full_operator_blocks,
        ),
        max(
            "processor.program_restored",
            Processor,
            0.0,
            program_restored,
        ),
        max(
            "processor.run_vs_matrix_product",
            Processor,
            1e-12,
            run_vs_matrix_product,
        ),
        max("qca.cross_check_processor", Qca, 1e-10, qca_cross_check),
        max("qca.global_vs_local", Qca, 1e-12, qca_global_vs_local),
        max("qca.layer_commutation", Qca, 1e-12, qca_layer_commutation),
        max("qca.lines_restored", Qca, 0.0, qca_lines_restored),
        max("qca.u_vi_vs_processor", Qca, 1e-10, qca_u_vi),
        max(
            "theorems.bell_probability",
            Theorems,
            1e-12,
            bell_probability,
        ),
        max(
            "theorems.bell_reconstruction",
            Theorems,
            1e-12,
            bell_reconstruction,
        ),
        max(
            "theorems.encode_unit_norm",
            Theorems,
            1e-12,
            encode_unit_norm,
        ),
        max("theorems.lie_closure_n2", Theorems, 0.0, |_| lie_gap(2)),
        max("theorems.lie_closure_n3", Theorems, 0.0, |_| lie_gap(3)),
        max(
            "theorems.orthogonality_basis_programs",
            Theorems,
            1e-12,
            orthogonality_basis,
        ),
        min(
            "theorems.orthogonality_superposed_program",
            Theorems,
            0.1,
            orthogonality_superposed,
        ),
        max(
            "theorems.output_independence",
            Theorems,
            1e-10,
            output_independence,
        ),
        min(
            "theorems.product_formula_order_commutator",
            Theorems,
            2.7,
            |_| order(false),
        ),
        min("theorems.product_formula_order_sum", Theorems, 1.8, |_| {
            order(true)
        }),
        max(
            "theorems.programming_operator",
            Theorems,
            1e-12,
            programming_operator,
        ),
        min(
            "theorems.programming_non_unitarity",
            Theorems,
            0.5,
            programming_non_unitarity,
        ),
        max("theorems.rebit_expectation", Theorems, 1e-12, rebit),
        max(
            "theorems.residue_identity",
            Theorems,
            1e-12,
            residue_identity,
        ),
    ]
}

/// Names of the checks a suite runs.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    registry()
        .into_iter()
        .filter(|c| suite.includes(c.suite))
        .map(|c| c.name)
        .collect()
}

/// Runs a suite. `tol_override` replaces the tolerance of upper-bound checks
/// only; lower bounds are witnesses and are never relaxed.
pub fn run_suite(suite: Suite, seed: u64, tol_override: Option<f64>) -> Vec<CheckRecord> {
    let checks: Vec<(u64, Check)> = registry()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| suite.includes(c.suite))
        .map(|(i, c)| (i as u64, c))
        .collect();
    let mut records = par::map(&checks, |(stream, c)| {
        let tol = match (c.bound, tol_override) {
            (Bound::Max, Some(t)) => t,
            _ => c.tol,
        };
        let mut rng = rng_for(seed, *stream);
        let (params, metric, error) = match (c.run)(&mut rng) {
            Ok((p, m)) => (p, m, None),
            Err(e) => (Value::Null, f64::INFINITY, Some(e.to_string())),
        };
        let pass = error.is_none()
            && match c.bound {
                Bound::Max => metric <= tol,
                Bound::Min => metric >= tol,
            };
        CheckRecord {
            check: c.name.to_string(),
            params,
            metric,
            tol,
            bound: c.bound,
            pass,
            error,
        }
    });
    records.sort_by(|a, b| a.check.cmp(&b.check));
    records
}

/// One JSON object per line.
pub fn to_json_lines(records: &[CheckRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
        .collect()
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn q(n: usize) -> RegisterShape {
    RegisterShape::qubits(n).expect("small register")
}

fn cnot_basis_change(_: &mut SeededRng) -> Result<(Value, f64)> {
    let hh = hadamard().tensor(&hadamard())?;
    let lhs = Operator::product([&hh, &cnot12(), &hh])?;
    Ok((json!({}), lhs.frob_distance(&cnot21())?))
}

fn swap_three_cnots(_: &mut SeededRng) -> Result<(Value, f64)> {
    let p = Operator::product([&cnot12(), &cnot21(), &cnot12()])?;
    Ok((json!({}), p.frob_distance(&swap(2)?)?))
}

fn pauli_exp_closed_form(_: &mut SeededRng) -> Result<(Value, f64)> {
    let phis = [0.3, 1.1, 2.5];
    let mut worst: f64 = 0.0;
    for p in PauliString::all(2) {
        let h = pauli_string(&p)?;
        for phi in phis {
            worst = worst.max(pauli_exp(&p, phi)?.frob_distance(&expi_hermitian(&h, phi)?)?);
        }
    }
    Ok((json!({"qubits": 2, "phi": phis}), worst))
}

fn commutator_exponential(_: &mut SeededRng) -> Result<(Value, f64)> {
    let taus = [0.1, 0.7, 1.3];
    let strings = PauliString::all(2);
    let i = Complex64::new(0.0, 1.0);
    let mut worst: f64 = 0.0;
    for j in &strings {
        for k in &strings {
            let (hj, hk) = (pauli_string(j)?, pauli_string(k)?);
            let gen = hj.commutator(&hk)?.scale(i);
            for tau in taus {
                let want = expi_hermitian(&gen, tau)?;
                worst = worst.max(commutator_exp(j, k, tau)?.frob_distance(&want)?);
            }
        }
    }
    Ok((json!({"qubits": 2, "tau": taus}), worst))
}

fn controlled_diag(_: &mut SeededRng) -> Result<(Value, f64)> {
    let taus = [0.1, 0.3, 0.7, 1.0, 2.0];
    let mut worst: f64 = 0.0;
    for (centered, kind) in [
        (false, ControlHamiltonianKind::D3),
        (true, ControlHamiltonianKind::D3Centered),
    ] {
        let h = control_hamiltonian(kind);
        for tau in taus {
            let prod = Operator::product(&decompose_controlled_diag(tau, centered))?;
            worst = worst.max(prod.frob_distance(&expi_hermitian(&h, tau)?)?);
        }
    }
    Ok((json!({"tau": taus}), worst))
}

fn controlled_diag_spectrum(_: &mut SeededRng) -> Result<(Value, f64)> {
    let want = [-1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0];
    let mut worst: f64 = 0.0;
    for kind in [
        ControlHamiltonianKind::D3,
        ControlHamiltonianKind::D3Centered,
    ] {
        let ev = eigenvalues_hermitian(&control_hamiltonian(kind))?;
        worst = worst.max(max_of(ev.iter().zip(want).map(|(a, b)| (a - b).abs())));
    }
    Ok((json!({}), worst))
}

fn random_instance(rng: &mut SeededRng) -> Result<(ProcessorConfig, Program, StateVector)> {
    let data = q(2);
    let m = rng.random_range(2..=4);
    let l = rng.random_range(1..=6);
    let gates = (1..m)
        .map(|_| random_unitary(&data, rng))
        .collect::<Result<Vec<_>>>()?;
    let gs = GateSet::with_identity(data.clone(), gates)?;
    let prog = Program::new((0..l).map(|_| rng.random_range(0..m)).collect())?;
    let psi = random_state(&data, rng)?;
    Ok((ProcessorConfig::new(gs, l)?, prog, psi))
}

fn ordered_product(cfg: &ProcessorConfig, prog: &Program) -> Result<Operator> {
    let mut acc = Operator::identity(cfg.data_shape().clone());
    for &k in prog.steps() {
        acc = cfg.gate_set().get(k)?.dot(&acc)?;
    }
    Ok(acc)
}

const INSTANCES: usize = 25;

fn run_vs_matrix_product(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..INSTANCES {
        let (cfg, prog, psi) = random_instance(rng)?;
        let got = run_joint(&prog, &cfg, &psi)?.final_state.into_data();
        let want = ordered_product(&cfg, &prog)?.apply(&psi)?;
        worst = worst.max(got.distance(&want)?);
    }
    Ok((json!({"instances": INSTANCES}), worst))
}

fn program_restored(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let mut failures = 0;
    for _ in 0..INSTANCES {
        let (cfg, prog, psi) = random_instance(rng)?;
        if !run_joint(&prog, &cfg, &psi)?.program_restored {
            failures += 1;
        }
    }
    Ok((json!({"instances": INSTANCES}), failures as f64))
}

fn full_operator_blocks(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let data = q(1);
    let gs = GateSet::with_identity(
        data.clone(),
        vec![random_unitary(&data, rng)?, random_unitary(&data, rng)?],
    )?;
    let l = 2;
    let cfg = ProcessorConfig::new(gs, l)?;
    let sc = conditional_full_operator(&cfg)?;
    let mut full = Operator::identity(sc.shape().clone());
    for _ in 0..l {
        full = sc.dot(&full)?;
    }
    let mut worst: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let prog = Program::new(vec![a, b])?;
            let block = program_block(&full, &cfg, &prog)?;
            worst = worst.max(block.frob_distance(&ordered_product(&cfg, &prog)?)?);
        }
    }
    Ok((json!({"m": 3, "L": l}), worst))
}

fn angle_approximation(_: &mut SeededRng) -> Result<(Value, f64)> {
    let a = approximate_angle(FRAC_PI_4, 1.0, 1e-3, 100_000)?;
    let control = approximate_angle(0.3, FRAC_PI_2, 1e-6, 100_000)?;
    let metric = if a.found && !control.found {
        a.error
    } else {
        f64::INFINITY
    };
    Ok((json!({"theta": FRAC_PI_4, "dtau": 1.0, "m": a.m}), metric))
}

fn random_checkerboard_program(d: usize, l: usize, rng: &mut SeededRng) -> Result<Program> {
    let a = InstructionAlphabet::new(d)?;
    let mut steps = Vec::with_capacity(2 * l);
    for _ in 0..l {
        let bits = (0..d - 1).map(|_| rng.random_range(0..2)).collect();
        steps.push(a.index(&Instruction::TwoQubit(bits))?);
        let vals = (0..d).map(|_| rng.random_range(0..3)).collect();
        steps.push(a.index(&Instruction::OneQubit(vals))?);
    }
    Program::new(steps)
}

fn qca_cross_check(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let (d, half, dtau) = (3, 2, 1.0);
    let prog = random_checkerboard_program(d, half, rng)?;
    let regs = (0..2)
        .map(|_| random_state(&q(d), rng))
        .collect::<Result<Vec<_>>>()?;
    let lat = Lattice::new(encode_program(d, &prog)?, regs)?;
    let cfg = ProcessorConfig::new(instruction_gate_set(d, dtau)?, prog.len())?;
    let dist = cross_check_processor(&lat, &cfg, &prog, dtau)?;
    Ok((
        json!({"data_qubits": d, "program": prog.steps(), "dtau": dtau}),
        dist,
    ))
}

fn random_lines(d: usize, perimeter: usize, rng: &mut SeededRng) -> Vec<Line> {
    (0..2 * d - 1)
        .map(|i| {
            let kind = if i % 2 == 0 {
                LineKind::One
            } else {
                LineKind::Two
            };
            let slots = (0..perimeter)
                .map(|_| rng.random_range(0..kind.radix()))
                .collect();
            Line { kind, slots }
        })
        .collect()
}

fn qca_u_vi(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let (d, dtau) = (2, 1.0);
    let lat = Lattice::new(random_lines(d, 4, rng), vec![random_state(&q(d), rng)?])?;
    let reps = lat.half_perimeter();
    let prog = decode_program(&lat, Sequence::UVi, reps)?;
    let cfg = ProcessorConfig::new(instruction_gate_set(d, dtau)?, prog.len())?;
    let want = run_joint(&prog, &cfg, lat.data())?.final_state.into_data();
    let got = evolve(&lat, Sequence::UVi, reps, dtau)?;
    Ok((
        json!({"data_qubits": d, "perimeter": 4}),
        got.data().distance(&want)?,
    ))
}

fn qca_lines_restored(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let mut mismatched = 0;
    for perimeter in [2, 4, 6] {
        let lat = Lattice::with_zero_data(random_lines(2, perimeter, rng), 1)?;
        let out = evolve(&lat, Sequence::UVi, lat.half_perimeter(), 1.0)?;
        if out.lines() != lat.lines() {
            mismatched += 1;
        }
    }
    Ok((json!({"perimeters": [2, 4, 6]}), mismatched as f64))
}

fn qca_global_vs_local(_: &mut SeededRng) -> Result<(Value, f64)> {
    let sites = 7;
    let hams = (0..3)
        .map(|k| indexed_two_qubit_hamiltonian(k, sites))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        json!({"sites": sites, "terms": 3}),
        global_vs_local_check(&hams, 1.0)?,
    ))
}

fn qca_layer_commutation(_: &mut SeededRng) -> Result<(Value, f64)> {
    let d = 4;
    let lines = (0..2 * d - 1)
        .map(|i| Line {
            kind: if i % 2 == 0 {
                LineKind::One
            } else {
                LineKind::Two
            },
            slots: vec![if i % 2 == 0 { 1 + (i / 2) % 2 } else { 1 }, 0],
        })
        .collect();
    let lat = Lattice::with_zero_data(lines, 1)?;
    let mut worst: f64 = 0.0;
    for layer in [Layer::C1, Layer::C2] {
        let hams = local_hamiltonians(&lat, layer)?;
        for (i, a) in hams.iter().enumerate() {
            for b in &hams[i + 1..] {
                worst = worst.max(a.commutator(b)?.frobenius_norm());
            }
        }
    }
    Ok((json!({"data_qubits": d}), worst))
}

fn cond_gate_set(rng: &mut SeededRng) -> Result<Operator> {
    let data = q(1);
    let gs = GateSet::with_identity(data.clone(), vec![random_unitary(&data, rng)?])?;
    conditional(&gs)
}

fn orthogonality_basis(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let u = cond_gate_set(rng)?;
    let samples = (0..10)
        .map(|_| random_state(&q(1), rng))
        .collect::<Result<Vec<_>>>()?;
    let p0 = StateVector::basis(q(1), 0)?;
    let p1 = StateVector::basis(q(1), 1)?;
    let rep = program_orthogonality_check(&u, Order::ProgramFirst, (&p0, &p1), &samples)?;
    Ok((
        json!({"samples": 10}),
        rep.max_violation.max(rep.overlap_pp.norm()),
    ))
}

fn orthogonality_superposed(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let gs = GateSet::with_identity(q(1), vec![pauli(1)?])?;
    let u = conditional(&gs)?;
    let plus = StateVector::normalized(q(1), vec![Complex64::new(1.0, 0.0); 2])?;
    let p0 = StateVector::basis(q(1), 0)?;
    let samples = vec![random_state(&q(1), rng)?];
    match program_orthogonality_check(&u, Order::ProgramFirst, (&plus, &p0), &samples) {
        Err(Error::Structure { violation }) => Ok((json!({"program": "plus"}), violation)),
        Err(e) => Err(e),
        Ok(_) => Ok((json!({"program": "plus"}), 0.0)),
    }
}

fn output_independence(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let u = cond_gate_set(rng)?;
    let mut worst: f64 = 0.0;
    for k in 0..2 {
        let prog = StateVector::basis(q(1), k)?;
        let d1 = random_state(&q(1), rng)?;
        let d2 = random_state(&q(1), rng)?;
        worst = worst.max(output_independence_check(
            &u,
            Order::ProgramFirst,
            &prog,
            (&d1, &d2),
        )?);
    }
    Ok((json!({}), worst))
}

fn programming_operator(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        let shape = RegisterShape::single(n)?;
        for _ in 0..5 {
            let psi = random_state(&shape, rng)?;
            let a = random_operator(&shape, rng)?;
            let out = apply_programming_operator(&psi, &a)?;
            let direct = a.apply_raw(&psi.as_amplitudes())?;
            let mut dev: f64 = 0.0;
            for (idx, z) in out.data().iter().enumerate() {
                let want = if idx % (n * n) == 0 {
                    direct.data()[idx / (n * n)]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                dev = dev.hypot((z - want).norm());
            }
            worst = worst.max(dev);
        }
    }
    Ok((json!({"N": [2, 3, 4]}), worst))
}

fn programming_non_unitarity(_: &mut SeededRng) -> Result<(Value, f64)> {
    let mut least = f64::INFINITY;
    for n in 2..=4 {
        let m = matrix_mult_operator(n)?;
        let d = m
            .adjoint()
            .dot(&m)?
            .frob_distance(&Operator::identity(m.shape().clone()))?;
        least = least.min(d);
    }
    Ok((json!({"N": [2, 3, 4]}), least))
}

fn encode_unit_norm(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let mut worst: f64 = 0.0;
    for n in [2, 3, 4] {
        let u = random_unitary(&RegisterShape::single(n)?, rng)?;
        worst = worst.max((encode_operator_state(&u)?.norm - 1.0).abs());
    }
    for (k, b) in [(0, BellOutcome::PhiPlus), (1, BellOutcome::PsiPlus)] {
        let s = encode_operator_state(&pauli(k)?)?.state()?;
        worst = worst.max(s.distance(&bell_state(b))?);
    }
    Ok((json!({}), worst))
}

fn bell_probability(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let psi = random_state(&q(1), rng)?;
        let u = random_unitary(&q(1), rng)?;
        for o in BellOutcome::ALL {
            let p = bell_project(&psi, &u, o)?;
            worst = worst.max((p.probability - 0.25).abs());
            if o == BellOutcome::PhiPlus {
                worst = worst.max(p.post_state.distance_up_to_phase(&u.apply(&psi)?)?);
            }
        }
    }
    Ok((json!({"samples": 10}), worst))
}

fn bell_reconstruction(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let psi = random_state(&q(1), rng)?;
        let u = random_unitary(&q(1), rng)?;
        let lhs = psi
            .as_amplitudes()
            .tensor(&encode_operator_state(&u)?.amplitudes)?;
        let mut sum = vec![Complex64::new(0.0, 0.0); 8];
        for (o, coeff, branch) in bell_expansion(&psi, &u)? {
            let term = bell_state(o).tensor(&branch)?;
            sum.iter_mut()
                .zip(term.amps())
                .for_each(|(s, t)| *s += coeff * t);
        }
        let dev = lhs
            .data()
            .iter()
            .zip(&sum)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(dev);
    }
    Ok((json!({"samples": 10}), worst))
}

fn residue_identity(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let l = encoded_programming_map(2)?;
    let res = residue_decomposition(&swap_last_two(2)?, &l)?;
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let psi = random_state(&q(1), rng)?;
        let u = random_unitary(&q(1), rng)?;
        worst = worst.max(res.identity_defect(&psi, &u)?);
    }
    if res.non_unitarity <= 0.0 {
        worst = f64::INFINITY;
    }
    Ok((json!({"N": 2}), worst))
}

fn lie_gap(n: usize) -> Result<(Value, f64)> {
    let gens = universal_generators(n)?
        .iter()
        .map(pauli_string)
        .collect::<Result<Vec<_>>>()?;
    let rep = lie_closure_dimension(&gens, 10)?;
    let target = (1usize << (2 * n)) - 1;
    let gap = (target as f64 - rep.closure_dimension as f64).abs();
    Ok((
        json!({"qubits": n, "dimension": rep.closure_dimension, "depth": rep.depth_reached}),
        gap,
    ))
}

fn order(sum: bool) -> Result<(Value, f64)> {
    let taus = [0.2, 0.1, 0.05, 0.025];
    let (x, z) = (pauli(1)?, pauli(3)?);
    let errs = taus
        .iter()
        .map(|&t| product_formula_error(&x, &z, t).map(|e| if sum { e.err29 } else { e.err30 }))
        .collect::<Result<Vec<_>>>()?;
    Ok((json!({"tau": taus}), empirical_order(&taus, &errs)?))
}

fn rebit(rng: &mut SeededRng) -> Result<(Value, f64)> {
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let phi = 0.37 * k as f64;
        for _ in 0..20 {
            let r = random_unit_plane_vector(rng);
            worst = worst.max((rebit_expectation(phi, r)? - phi.cos()).abs());
        }
    }
    Ok((json!({"angles": 10, "vectors": 20}), worst))
}
