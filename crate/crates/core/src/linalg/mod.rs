//! Dense complex linear algebra over mixed-radix tensor spaces.
//!
//! Complex numbers serialize as `[re, im]`; operators as row-major nested
//! arrays; shapes as arrays of site dimensions.

mod operator;
mod shape;
mod spectral;
mod state;

pub use num_complex::Complex64;
pub use operator::{tensor, Operator, Tags, Tensor};
pub use shape::{max_total_dim, RegisterShape, DEFAULT_MAX_DIM, MAX_DIM_ENV};
pub use spectral::{
    eigenvalues_hermitian, exp_antihermitian, expi_hermitian, hermitian_spectrum, rank, rank_one,
    singular_values, HermitianSpectrum, RankOne,
};
pub use state::{Amplitudes, StateVector};

use crate::error::{Error, Result};

/// Complex amplitude type.
pub type ComplexScalar = Complex64;

/// Tolerance for unitarity/hermiticity tags and state normalization.
pub const VALIDATION_TOL: f64 = 1e-10;
/// Tolerance for identity checks.
pub const IDENTITY_TOL: f64 = 1e-12;
pub(crate) const NORM_TOL: f64 = VALIDATION_TOL;

pub(crate) fn ensure_finite(v: &[Complex64]) -> Result<()> {
    if v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// `⟨a|b⟩`.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    a.overlap(b)
}

/// `‖a − b‖_F`.
pub fn frob_distance(a: &Operator, b: &Operator) -> Result<f64> {
    a.frob_distance(b)
}

/// Matrix–vector product; see [`Operator::apply`].
pub fn apply(op: &Operator, s: &StateVector) -> Result<StateVector> {
    op.apply(s)
}
