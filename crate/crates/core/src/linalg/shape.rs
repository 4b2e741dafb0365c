use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the total Hilbert-space dimension.
pub const DEFAULT_MAX_DIM: usize = 1 << 20;

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "CTRLSHIFT_MAX_DIM";

/// Maximum total dimension, read once from `CTRLSHIFT_MAX_DIM`.
pub fn max_total_dim() -> usize {
    static MAX: OnceLock<usize> = OnceLock::new();
    *MAX.get_or_init(|| {
        std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(DEFAULT_MAX_DIM)
    })
}

/// Mixed-radix factorization of a Hilbert space.
///
/// Indices are big-endian: the leftmost site is the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct RegisterShape {
    site_dims: Vec<usize>,
    total: usize,
}

impl RegisterShape {
    pub fn new(site_dims: Vec<usize>) -> Result<Self> {
        if site_dims.is_empty() {
            return Err(Error::InvalidShape("no sites".into()));
        }
        if site_dims.contains(&0) {
            return Err(Error::InvalidShape(format!(
                "zero site dimension in {site_dims:?}"
            )));
        }
        let max = max_total_dim();
        let mut total = 1usize;
        for &d in &site_dims {
            total = match total.checked_mul(d) {
                Some(t) if t <= max => t,
                _ => {
                    return Err(Error::Capacity {
                        requested: site_dims.iter().fold(1usize, |a, &d| a.saturating_mul(d)),
                        max,
                    })
                }
            };
        }
        Ok(Self { site_dims, total })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    /// A single site of dimension `d`.
    pub fn single(d: usize) -> Result<Self> {
        Self::new(vec![d])
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn sites(&self) -> &[usize] {
        &self.site_dims
    }

    pub fn num_sites(&self) -> usize {
        self.site_dims.len()
    }

    /// Shape of `self ⊗ other`.
    pub fn concat(&self, other: &RegisterShape) -> Result<Self> {
        let mut dims = self.site_dims.clone();
        dims.extend_from_slice(&other.site_dims);
        Self::new(dims)
    }

    /// Shape restricted to the given sites, in the order given.
    pub fn select(&self, sites: &[usize]) -> Result<Self> {
        let dims = sites
            .iter()
            .map(|&s| {
                self.site_dims
                    .get(s)
                    .copied()
                    .ok_or(Error::IndexOutOfRange {
                        index: s,
                        limit: self.site_dims.len(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims)
    }

    /// Big-endian digits of a flat index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.site_dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.site_dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    /// Flat index of big-endian digits.
    pub fn index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.site_dims.len() {
            return Err(Error::shape(&self.site_dims, digits));
        }
        let mut idx = 0usize;
        for (&x, &d) in digits.iter().zip(&self.site_dims) {
            if x >= d {
                return Err(Error::IndexOutOfRange { index: x, limit: d });
            }
            idx = idx * d + x;
        }
        Ok(idx)
    }

    /// Stride (place value) of each site.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.site_dims.len()];
        for i in (0..self.site_dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.site_dims[i + 1];
        }
        strides
    }
}

impl TryFrom<Vec<usize>> for RegisterShape {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RegisterShape> for Vec<usize> {
    fn from(s: RegisterShape) -> Self {
        s.site_dims
    }
}
