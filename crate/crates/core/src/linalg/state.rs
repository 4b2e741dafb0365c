use num_complex::Complex64;

use super::shape::RegisterShape;
use super::{ensure_finite, NORM_TOL};
use crate::error::{Error, Result};

/// Unit-norm complex amplitude vector over a [`RegisterShape`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    shape: RegisterShape,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Validates length, finiteness and unit norm (within `1e-10`).
    pub fn new(shape: RegisterShape, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != shape.total_dim() {
            return Err(Error::shape(shape.total_dim(), amps.len()));
        }
        ensure_finite(&amps)?;
        let norm = l2_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { shape, amps })
    }

    /// Normalizes `amps` first; fails on the zero vector.
    pub fn normalized(shape: RegisterShape, amps: Vec<Complex64>) -> Result<Self> {
        Amplitudes::new(shape, amps)?.normalize()
    }

    pub fn basis(shape: RegisterShape, index: usize) -> Result<Self> {
        let dim = shape.total_dim();
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, limit: dim });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { shape, amps })
    }

    /// `|0…0⟩`.
    pub fn zero(shape: RegisterShape) -> Self {
        Self::basis(shape, 0).expect("shape has at least one state")
    }

    pub(crate) fn from_parts_unchecked(shape: RegisterShape, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(shape.total_dim(), amps.len());
        Self { shape, amps }
    }

    pub fn shape(&self) -> &RegisterShape {
        &self.shape
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        if self.shape != other.shape {
            return Err(Error::shape(self.shape.sites(), other.shape.sites()));
        }
        Ok(inner(&self.amps, &other.amps))
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let shape = self.shape.concat(&other.shape)?;
        Ok(Self {
            shape,
            amps: kron_vec(&self.amps, &other.amps),
        })
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if self.shape != other.shape {
            return Err(Error::shape(self.shape.sites(), other.shape.sites()));
        }
        Ok(diff_norm(&self.amps, &other.amps))
    }

    /// Distance after rotating `other` by the global phase that best aligns
    /// it with `self`.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let ov = other.overlap(self)?;
        let phase = if ov.norm() > 0.0 {
            ov / ov.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let rotated: Vec<Complex64> = other.amps.iter().map(|a| a * phase).collect();
        Ok(diff_norm(&self.amps, &rotated))
    }

    pub fn as_amplitudes(&self) -> Amplitudes {
        Amplitudes {
            shape: self.shape.clone(),
            data: self.amps.clone(),
        }
    }
}

/// Amplitude vector without the unit-norm invariant.
///
/// Produced by non-unitary maps and by intermediate projections.
#[derive(Clone, Debug, PartialEq)]
pub struct Amplitudes {
    shape: RegisterShape,
    data: Vec<Complex64>,
}

impl Amplitudes {
    pub fn new(shape: RegisterShape, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != shape.total_dim() {
            return Err(Error::shape(shape.total_dim(), data.len()));
        }
        ensure_finite(&data)?;
        Ok(Self { shape, data })
    }

    pub(crate) fn from_parts_unchecked(shape: RegisterShape, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(shape.total_dim(), data.len());
        Self { shape, data }
    }

    pub fn shape(&self) -> &RegisterShape {
        &self.shape
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.data)
    }

    pub fn normalize(self) -> Result<StateVector> {
        let n = self.norm();
        if n <= f64::EPSILON {
            return Err(Error::NotNormalized(n));
        }
        Ok(StateVector {
            shape: self.shape,
            amps: self.data.into_iter().map(|a| a / n).collect(),
        })
    }

    pub fn tensor(&self, other: &Amplitudes) -> Result<Amplitudes> {
        Ok(Self {
            shape: self.shape.concat(&other.shape)?,
            data: kron_vec(&self.data, &other.data),
        })
    }

    pub fn distance(&self, other: &Amplitudes) -> Result<f64> {
        if self.shape != other.shape {
            return Err(Error::shape(self.shape.sites(), other.shape.sites()));
        }
        Ok(diff_norm(&self.data, &other.data))
    }

    pub fn scale(&self, c: Complex64) -> Amplitudes {
        Self {
            shape: self.shape.clone(),
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Amplitudes) -> Result<Amplitudes> {
        if self.shape != other.shape {
            return Err(Error::shape(self.shape.sites(), other.shape.sites()));
        }
        Ok(Self {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl From<StateVector> for Amplitudes {
    fn from(s: StateVector) -> Self {
        Amplitudes {
            shape: s.shape,
            data: s.amps,
        }
    }
}

pub(crate) fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn diff_norm(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        out.extend(b.iter().map(|y| x * y));
    }
    out
}
