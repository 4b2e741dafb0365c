//! Seeded sampling of states, unitaries and plain matrices.
//!
//! Everything is driven by a caller-supplied `ChaCha8Rng`, so sweeps are
//! reproducible across platforms and thread counts.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{Complex64, Operator, RegisterShape, StateVector};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream derived from a base seed and a label.
pub fn rng_for(seed: u64, stream: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn gaussian(rng: &mut SeededRng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-random pure state.
pub fn random_state(shape: &RegisterShape, rng: &mut SeededRng) -> Result<StateVector> {
    let amps = (0..shape.total_dim()).map(|_| gaussian(rng)).collect();
    StateVector::normalized(shape.clone(), amps)
}

/// Matrix with i.i.d. complex Gaussian entries (generally not unitary).
pub fn random_operator(shape: &RegisterShape, rng: &mut SeededRng) -> Result<Operator> {
    let n = shape.total_dim();
    let data = (0..n * n).map(|_| gaussian(rng)).collect();
    Operator::new(shape.clone(), data)
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn random_unitary(shape: &RegisterShape, rng: &mut SeededRng) -> Result<Operator> {
    let n = shape.total_dim();
    let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let d = r[(j, j)];
            let ph = if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            data.push(q[(i, j)] * ph);
        }
    }
    Operator::new(shape.clone(), data)?.require_unitary()
}

/// Random Hermitian matrix `(G + G†)/2`.
pub fn random_hermitian(shape: &RegisterShape, rng: &mut SeededRng) -> Result<Operator> {
    let g = random_operator(shape, rng)?;
    g.add(&g.adjoint())
        .map(|s| s.scale(Complex64::new(0.5, 0.0)))
}

/// Uniform point on the unit circle.
pub fn random_unit_plane_vector(rng: &mut SeededRng) -> [f64; 2] {
    let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    [a.cos(), a.sin()]
}
