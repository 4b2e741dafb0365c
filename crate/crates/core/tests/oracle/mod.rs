//! Small dense complex linear algebra written from scratch, used as an
//! independent reference for the library routines.
#![allow(dead_code)]

use ctrlshift::linalg::{Operator, StateVector};
use num_complex::Complex64 as C;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn r(re: f64) -> C {
    C::new(re, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<C>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            a: vec![r(0.0); n * n],
        }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = r(1.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[C]]) -> Self {
        let n = rows.len();
        Mat {
            n,
            a: rows.iter().flat_map(|row| row.iter().copied()).collect(),
        }
    }

    pub fn diag(d: &[C]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.a[i * d.len() + i] = x;
        }
        m
    }

    pub fn of(op: &Operator) -> Self {
        Mat {
            n: op.dim(),
            a: op.entries().to_vec(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> C {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, b: &Mat) -> Mat {
        assert_eq!(self.n, b.n);
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == r(0.0) {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * b.a[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, b: &Mat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().zip(&b.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, b: &Mat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().zip(&b.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, s: C) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().map(|x| x * s).collect(),
        }
    }

    pub fn adj(&self) -> Mat {
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.a[j * n + i] = self.a[i * n + j].conj();
            }
        }
        out
    }

    pub fn kron(&self, b: &Mat) -> Mat {
        let (n, m) = (self.n, b.n);
        let mut out = Mat::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        out.a[(i * m + k) * n * m + j * m + l] = self.a[i * n + j] * b.a[k * m + l];
                    }
                }
            }
        }
        out
    }

    pub fn comm(&self, b: &Mat) -> Mat {
        self.mul(b).sub(&b.mul(self))
    }

    pub fn frob(&self) -> f64 {
        self.a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn dist(&self, b: &Mat) -> f64 {
        self.sub(b).frob()
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.a[i * self.n + j] * v[j]).sum())
            .collect()
    }

    fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| {
                (0..self.n)
                    .map(|i| self.a[i * self.n + j].norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// `exp(A)` by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &Mat) -> Mat {
    let norm = a.norm1();
    let s = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as i32
    } else {
        0
    };
    let b = a.scale(r(0.5f64.powi(s)));
    let mut sum = Mat::eye(a.n);
    let mut term = Mat::eye(a.n);
    for k in 1..=40 {
        term = term.mul(&b).scale(r(1.0 / k as f64));
        sum = sum.add(&term);
        if term.frob() < 1e-20 {
            break;
        }
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    sum
}

/// `exp(i·t·H)`.
pub fn expi(h: &Mat, t: f64) -> Mat {
    expm(&h.scale(c(0.0, t)))
}

/// Pauli matrices with `σ₂ = [[0, i], [−i, 0]]` as printed in the source
/// notation (the negative of the usual `σ_y`).
pub fn sigma(k: usize) -> Mat {
    let (o, z, i) = (r(1.0), r(0.0), c(0.0, 1.0));
    match k {
        0 => Mat::from_rows(&[&[o, z], &[z, o]]),
        1 => Mat::from_rows(&[&[z, o], &[o, z]]),
        2 => Mat::from_rows(&[&[z, i], &[-i, z]]),
        3 => Mat::from_rows(&[&[o, z], &[z, -o]]),
        _ => panic!("pauli index"),
    }
}

pub fn string(ix: &[usize]) -> Mat {
    ix.iter().fold(Mat::eye(1), |acc, &k| acc.kron(&sigma(k)))
}

/// `σ_k` on `site` of an `n`-qubit register.
pub fn on(n: usize, site: usize, k: usize) -> Mat {
    let mut ix = vec![0; n];
    ix[site] = k;
    string(&ix)
}

pub fn vdist(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn vnorm(a: &[C]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Distance after removing the best global phase.
pub fn vdist_phase(a: &[C], b: &[C]) -> f64 {
    let ov = inner(b, a);
    let ph = if ov.norm() > 0.0 {
        ov / ov.norm()
    } else {
        r(1.0)
    };
    let rotated: Vec<C> = b.iter().map(|x| x * ph).collect();
    vdist(a, &rotated)
}

pub fn kron_v(a: &[C], b: &[C]) -> Vec<C> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

pub fn amps(s: &StateVector) -> Vec<C> {
    s.amps().to_vec()
}

/// Singular values of a 2×2 matrix, descending.
pub fn singular_values_2x2(m: [[C; 2]; 2]) -> [f64; 2] {
    let fro2: f64 = m.iter().flatten().map(|x| x.norm_sqr()).sum();
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    [
        ((fro2 + disc) / 2.0).sqrt(),
        ((fro2 - disc) / 2.0).max(0.0).sqrt(),
    ]
}
