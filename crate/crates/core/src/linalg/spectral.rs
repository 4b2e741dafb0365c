//! Eigen- and singular-value routines, backed by nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::operator::{Operator, Tags};
use super::VALIDATION_TOL;
use crate::error::{Error, Result};

fn to_dmatrix(op: &Operator) -> DMatrix<Complex64> {
    let n = op.dim();
    DMatrix::from_row_slice(n, n, op.entries())
}

fn from_dmatrix(template: &Operator, m: &DMatrix<Complex64>) -> Operator {
    let n = m.nrows();
    let mut data = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            data.push(m[(r, c)]);
        }
    }
    Operator::from_parts_unchecked(template.shape().clone(), data)
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum {
    pub values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

/// Spectral decomposition of a Hermitian operator.
pub fn hermitian_spectrum(h: &Operator) -> Result<HermitianSpectrum> {
    let d = h.hermiticity_defect();
    if d > VALIDATION_TOL {
        return Err(Error::NotHermitian(d));
    }
    let eig = nalgebra::SymmetricEigen::new(to_dmatrix(h));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(h.dim(), h.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianSpectrum { values, vectors })
}

/// Sorted eigenvalues of a Hermitian operator.
pub fn eigenvalues_hermitian(h: &Operator) -> Result<Vec<f64>> {
    Ok(hermitian_spectrum(h)?.values)
}

/// `exp(+i·H·τ)` for Hermitian `H`, by spectral decomposition.
///
/// The physical propagator `exp(−iHτ)` is `expi_hermitian(H, -τ)`.
pub fn expi_hermitian(h: &Operator, tau: f64) -> Result<Operator> {
    let spec = hermitian_spectrum(h)?;
    let n = h.dim();
    let phases: Vec<Complex64> = spec
        .values
        .iter()
        .map(|&l| Complex64::from_polar(1.0, l * tau))
        .collect();
    let v = &spec.vectors;
    let scaled = DMatrix::from_fn(n, n, |r, c| v[(r, c)] * phases[c]);
    let out = scaled * v.adjoint();
    Ok(from_dmatrix(h, &out).with_tags(Tags {
        unitary: true,
        hermitian: false,
    }))
}

/// `exp(A)` for anti-Hermitian `A`, via `A = i·K` with `K = −i·A` Hermitian.
pub fn exp_antihermitian(a: &Operator) -> Result<Operator> {
    let k = a.scale(Complex64::new(0.0, -1.0));
    expi_hermitian(&k, 1.0)
}

/// Singular values, descending.
pub fn singular_values(rows: usize, cols: usize, data: &[Complex64]) -> Vec<f64> {
    let m = DMatrix::from_row_slice(rows, cols, data);
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank at relative tolerance `tol`.
pub fn rank(rows: usize, cols: usize, data: &[Complex64], tol: f64) -> usize {
    let s = singular_values(rows, cols, data);
    let top = s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&x| x > tol * top.max(1.0)).count()
}

/// Best rank-one approximation `M ≈ σ·u·vᵀ` of a row-major `rows × cols`
/// matrix.
#[derive(Clone, Debug)]
pub struct RankOne {
    pub sigma: f64,
    /// Unit left factor (length `rows`).
    pub left: Vec<Complex64>,
    /// Unit right factor (length `cols`); `M ≈ σ·left ⊗ right`.
    pub right: Vec<Complex64>,
    /// `sqrt(Σ_{k≥2} σ_k²)`: Frobenius distance to the approximation.
    pub residual: f64,
}

pub fn rank_one(rows: usize, cols: usize, data: &[Complex64]) -> Result<RankOne> {
    let m = DMatrix::from_row_slice(rows, cols, data);
    let svd = m.svd(true, true);
    let (u, vt) = match (svd.u, svd.v_t) {
        (Some(u), Some(vt)) => (u, vt),
        _ => return Err(Error::Numerical("svd did not return factors".into())),
    };
    let s = &svd.singular_values;
    let top = (0..s.len())
        .max_by(|&a, &b| s[a].total_cmp(&s[b]))
        .ok_or_else(|| Error::Numerical("empty matrix".into()))?;
    let residual = (0..s.len())
        .filter(|&i| i != top)
        .map(|i| s[i] * s[i])
        .sum::<f64>()
        .sqrt();
    Ok(RankOne {
        sigma: s[top],
        left: u.column(top).iter().copied().collect(),
        right: vt.row(top).iter().copied().collect(),
        residual,
    })
}
