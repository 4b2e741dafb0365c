use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{expi_hermitian, Operator, VALIDATION_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProductFormulaError {
    /// `‖e^{−iH₁τ}e^{−iH₂τ} − e^{−i(H₁+H₂)τ}‖_F`, order `τ²`.
    pub err29: f64,
    /// `‖U₁U₂U₁⁻¹U₂⁻¹ − e^{−[H₁,H₂]τ²}‖_F`, order `τ³`.
    pub err30: f64,
}

pub fn product_formula_error(
    h1: &Operator,
    h2: &Operator,
    tau: f64,
) -> Result<ProductFormulaError> {
    if h1.dim() != h2.dim() {
        return Err(Error::shape(h1.shape().sites(), h2.shape().sites()));
    }
    let u1 = expi_hermitian(h1, -tau)?;
    let u2 = expi_hermitian(h2, -tau)?;
    let joint = expi_hermitian(&h1.add(h2)?, -tau)?;
    let err29 = u1.dot(&u2)?.frob_distance(&joint)?;
    let group = Operator::product([&u1, &u2, &u1.adjoint(), &u2.adjoint()])?;
    // e^{−[H₁,H₂]τ²} = e^{i·(i[H₁,H₂])·τ²}, and i[H₁,H₂] is Hermitian
    let k = h1.commutator(h2)?.scale(Complex64::new(0.0, 1.0));
    let reference = expi_hermitian(&k, tau * tau)?;
    let err30 = group.frob_distance(&reference)?;
    Ok(ProductFormulaError { err29, err30 })
}

/// Least-squares slope of `ln err` against `ln τ`.
pub fn empirical_order(taus: &[f64], errs: &[f64]) -> Result<f64> {
    if taus.len() != errs.len() || taus.len() < 2 {
        return Err(Error::Precondition(
            "need at least two (τ, err) pairs".into(),
        ));
    }
    if taus.iter().chain(errs).any(|&x| !x.is_finite() || x <= 0.0) {
        return Err(Error::Precondition("τ and errors must be positive".into()));
    }
    let xs: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// `⟨R|u(φ)|R⟩` for the plane rotation `u(φ)` and a real unit vector `r`.
pub fn rebit_expectation(phi: f64, r: [f64; 2]) -> Result<f64> {
    let norm = r[0].hypot(r[1]);
    if (norm - 1.0).abs() > VALIDATION_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let (s, c) = phi.sin_cos();
    let ur = [c * r[0] - s * r[1], s * r[0] + c * r[1]];
    Ok(r[0] * ur[0] + r[1] * ur[1])
}
