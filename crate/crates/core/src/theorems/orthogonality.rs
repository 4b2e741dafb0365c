use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank_one, Operator, RegisterShape, StateVector, VALIDATION_TOL};

/// Largest relative rank-one residual for which an output still counts as
/// `|Π′⟩ ⊗ u|D⟩`.
pub const STRUCTURE_TOL: f64 = 1e-8;

/// Register order of the network `U`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// `U` acts on `program ⊗ data`.
    #[default]
    ProgramFirst,
    /// `U` acts on `data ⊗ program`.
    DataFirst,
}

/// What a network does to one program state: `U|Π⟩|d⟩ = |Π′⟩ ⊗ u|d⟩`.
#[derive(Clone, Debug)]
pub struct ProgramAction {
    pub program_out: StateVector,
    pub gate: Operator,
    /// `‖W − σ·Π′⊗u‖_F / √D`: zero iff the output factorizes for every
    /// data input.
    pub violation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    /// `⟨Π|Ξ⟩`.
    pub overlap_pp: Complex64,
    /// `|⟨Π|Ξ⟩ − ⟨D|u_Π†u_Ξ|D⟩⟨Π′|Ξ′⟩|` per data sample.
    pub residuals: Vec<f64>,
    pub max_violation: f64,
}

fn joint_shape(order: Order, prog: &RegisterShape, data: &RegisterShape) -> Result<RegisterShape> {
    match order {
        Order::ProgramFirst => prog.concat(data),
        Order::DataFirst => data.concat(prog),
    }
}

fn check_network(u: &Operator, joint: &RegisterShape) -> Result<()> {
    if u.dim() != joint.total_dim() {
        return Err(Error::shape(joint.sites(), u.shape().sites()));
    }
    let d = u.unitarity_defect();
    if d > VALIDATION_TOL {
        return Err(Error::NotUnitary(d));
    }
    Ok(())
}

/// Factors `U(|Π⟩ ⊗ ·)` as `|Π′⟩ ⊗ u` by a rank-one fit over all data basis
/// inputs; the global phase split between the two factors is arbitrary.
pub fn extract_program_action(
    u: &Operator,
    order: Order,
    program: &StateVector,
    data_shape: &RegisterShape,
) -> Result<ProgramAction> {
    let joint = joint_shape(order, program.shape(), data_shape)?;
    check_network(u, &joint)?;
    let p = program.dim();
    let d = data_shape.total_dim();
    let mut w = vec![Complex64::new(0.0, 0.0); p * d * d];
    for d_in in 0..d {
        let basis = StateVector::basis(data_shape.clone(), d_in)?;
        let input = match order {
            Order::ProgramFirst => program.tensor(&basis)?,
            Order::DataFirst => basis.tensor(program)?,
        };
        let raw = u.apply_raw(&input.as_amplitudes())?;
        for (idx, &a) in raw.data().iter().enumerate() {
            let (pi, d_out) = match order {
                Order::ProgramFirst => (idx / d, idx % d),
                Order::DataFirst => (idx % p, idx / p),
            };
            w[pi * d * d + d_out * d + d_in] = a;
        }
    }
    let fit = rank_one(p, d * d, &w)?;
    let violation = fit.residual / (d as f64).sqrt();
    let gate_data = fit.right.iter().map(|x| x * fit.sigma).collect();
    Ok(ProgramAction {
        program_out: StateVector::normalized(program.shape().clone(), fit.left)?,
        gate: Operator::new(data_shape.clone(), gate_data)?,
        violation,
    })
}

fn factorized(
    u: &Operator,
    order: Order,
    program: &StateVector,
    data_shape: &RegisterShape,
) -> Result<ProgramAction> {
    let act = extract_program_action(u, order, program, data_shape)?;
    if act.violation > STRUCTURE_TOL {
        return Err(Error::Structure {
            violation: act.violation,
        });
    }
    Ok(act)
}

/// Compares `⟨Π|Ξ⟩` with `⟨D|u_Π†u_Ξ|D⟩⟨Π′|Ξ′⟩` on each data sample.
///
/// Fails with a structure error if either program does not act as
/// `|Π′⟩ ⊗ u_Π`.
pub fn program_orthogonality_check(
    u: &Operator,
    order: Order,
    programs: (&StateVector, &StateVector),
    data_samples: &[StateVector],
) -> Result<OrthogonalityReport> {
    let (pi, xi) = programs;
    if pi.shape() != xi.shape() {
        return Err(Error::shape(pi.shape().sites(), xi.shape().sites()));
    }
    let data_shape = data_samples
        .first()
        .ok_or_else(|| Error::Precondition("at least one data sample".into()))?
        .shape()
        .clone();
    let a = factorized(u, order, pi, &data_shape)?;
    let b = factorized(u, order, xi, &data_shape)?;
    let overlap_pp = pi.overlap(xi)?;
    let primes = a.program_out.overlap(&b.program_out)?;
    let gram = a.gate.adjoint().dot(&b.gate)?;
    let mut residuals = Vec::with_capacity(data_samples.len());
    for dv in data_samples {
        if dv.shape() != &data_shape {
            return Err(Error::shape(data_shape.sites(), dv.shape().sites()));
        }
        let moved = gram.apply_raw(&dv.as_amplitudes())?;
        let expect: Complex64 = dv
            .amps()
            .iter()
            .zip(moved.data())
            .map(|(x, y)| x.conj() * y)
            .sum();
        residuals.push((overlap_pp - expect * primes).norm());
    }
    let max_violation = residuals.iter().copied().fold(0.0, f64::max);
    Ok(OrthogonalityReport {
        overlap_pp,
        residuals,
        max_violation,
    })
}

/// `‖|Π′₁⟩ − |Π′₂⟩‖` up to global phase, where `U|Π⟩|Dᵢ⟩ = |Π′ᵢ⟩ ⊗ |D′ᵢ⟩`.
pub fn output_independence_check(
    u: &Operator,
    order: Order,
    program: &StateVector,
    data_pair: (&StateVector, &StateVector),
) -> Result<f64> {
    let (d1, d2) = data_pair;
    if d1.shape() != d2.shape() {
        return Err(Error::shape(d1.shape().sites(), d2.shape().sites()));
    }
    if d1.overlap(d2)?.norm() <= VALIDATION_TOL {
        return Err(Error::Precondition(
            "data states are orthogonal; the program output is then unconstrained".into(),
        ));
    }
    let joint = joint_shape(order, program.shape(), d1.shape())?;
    check_network(u, &joint)?;
    let p = program.dim();
    let d = d1.dim();
    let prime = |dv: &StateVector| -> Result<StateVector> {
        let input = match order {
            Order::ProgramFirst => program.tensor(dv)?,
            Order::DataFirst => dv.tensor(program)?,
        };
        let raw = u.apply_raw(&input.as_amplitudes())?;
        let mut m = vec![Complex64::new(0.0, 0.0); p * d];
        for (idx, &a) in raw.data().iter().enumerate() {
            let (pi, di) = match order {
                Order::ProgramFirst => (idx / d, idx % d),
                Order::DataFirst => (idx % p, idx / p),
            };
            m[pi * d + di] = a;
        }
        let fit = rank_one(p, d, &m)?;
        if fit.residual > STRUCTURE_TOL {
            return Err(Error::Structure {
                violation: fit.residual,
            });
        }
        StateVector::normalized(program.shape().clone(), fit.left)
    };
    prime(d1)?.distance_up_to_phase(&prime(d2)?)
}
