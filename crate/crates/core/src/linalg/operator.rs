use num_complex::Complex64;

use super::shape::RegisterShape;
use super::state::{Amplitudes, StateVector};
use super::{ensure_finite, NORM_TOL, VALIDATION_TOL};
use crate::error::{Error, Result};
use crate::par;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Properties established by [`Operator::validate`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tags {
    pub unitary: bool,
    pub hermitian: bool,
}

/// Dense square complex matrix over a [`RegisterShape`], row-major.
#[derive(Clone, Debug)]
pub struct Operator {
    shape: RegisterShape,
    data: Vec<Complex64>,
    tags: Tags,
}

impl PartialEq for Operator {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.data == other.data
    }
}

impl Operator {
    pub fn new(shape: RegisterShape, data: Vec<Complex64>) -> Result<Self> {
        let n = shape.total_dim();
        if data.len() != n * n {
            return Err(Error::shape(n * n, data.len()));
        }
        ensure_finite(&data)?;
        Ok(Self {
            shape,
            data,
            tags: Tags::default(),
        })
    }

    pub fn from_rows(shape: RegisterShape, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = shape.total_dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::shape(
                (n, n),
                (rows.len(), rows.first().map_or(0, |r| r.len())),
            ));
        }
        Self::new(shape, rows.into_iter().flatten().collect())
    }

    /// Convenience for real-valued literal matrices.
    pub fn from_real_rows(shape: RegisterShape, rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            shape,
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub(crate) fn from_parts_unchecked(shape: RegisterShape, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(shape.total_dim().pow(2), data.len());
        Self {
            shape,
            data,
            tags: Tags::default(),
        }
    }

    pub fn identity(shape: RegisterShape) -> Self {
        let n = shape.total_dim();
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = ONE;
        }
        Self {
            shape,
            data,
            tags: Tags {
                unitary: true,
                hermitian: true,
            },
        }
    }

    pub fn zeros(shape: RegisterShape) -> Self {
        let n = shape.total_dim();
        Self {
            shape,
            data: vec![ZERO; n * n],
            tags: Tags {
                unitary: false,
                hermitian: true,
            },
        }
    }

    pub fn diagonal(shape: RegisterShape, diag: &[Complex64]) -> Result<Self> {
        let n = shape.total_dim();
        if diag.len() != n {
            return Err(Error::shape(n, diag.len()));
        }
        let mut data = vec![ZERO; n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        Self::new(shape, data)
    }

    /// Permutation matrix sending basis state `j` to `perm(j)`.
    pub fn permutation(shape: RegisterShape, perm: impl Fn(usize) -> usize) -> Result<Self> {
        let n = shape.total_dim();
        let mut data = vec![ZERO; n * n];
        let mut seen = vec![false; n];
        for j in 0..n {
            let i = perm(j);
            if i >= n || seen[i] {
                return Err(Error::Contract(format!(
                    "map is not a permutation at {j} -> {i}"
                )));
            }
            seen[i] = true;
            data[i * n + j] = ONE;
        }
        Ok(Self {
            shape,
            data,
            tags: Tags {
                unitary: true,
                hermitian: false,
            },
        })
    }

    pub fn shape(&self) -> &RegisterShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.total_dim()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.dim()).map(|r| r.to_vec()).collect()
    }

    pub fn tags(&self) -> Tags {
        self.tags
    }

    /// Same entries under a different factorization of the same dimension.
    pub fn reshape(mut self, shape: RegisterShape) -> Result<Self> {
        if shape.total_dim() != self.dim() {
            return Err(Error::shape(self.shape.sites(), shape.sites()));
        }
        self.shape = shape;
        Ok(self)
    }

    fn check_same(&self, other: &Operator) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::shape(self.shape.sites(), other.shape.sites()));
        }
        Ok(())
    }

    /// Matrix product `self · other`.
    pub fn dot(&self, other: &Operator) -> Result<Operator> {
        self.check_same(other)?;
        let n = self.dim();
        let mut out = vec![ZERO; n * n];
        par::fill_rows(&mut out, n, |r, row| {
            let a = &self.data[r * n..(r + 1) * n];
            for (k, &ark) in a.iter().enumerate() {
                if ark == ZERO {
                    continue;
                }
                let b = &other.data[k * n..(k + 1) * n];
                for (o, &bkc) in row.iter_mut().zip(b) {
                    *o += ark * bkc;
                }
            }
        });
        Ok(Self::from_parts_unchecked(self.shape.clone(), out))
    }

    /// Product of a sequence applied right to left: `ops[0] · ops[1] · …`.
    pub fn product<'a>(ops: impl IntoIterator<Item = &'a Operator>) -> Result<Operator> {
        let mut it = ops.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Precondition("empty product".into()))?
            .clone();
        it.try_fold(first, |acc, op| acc.dot(op))
    }

    pub fn adjoint(&self) -> Operator {
        let n = self.dim();
        let mut out = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                out[c * n + r] = self.data[r * n + c].conj();
            }
        }
        Self {
            shape: self.shape.clone(),
            data: out,
            tags: self.tags,
        }
    }

    pub fn scale(&self, c: Complex64) -> Operator {
        Self::from_parts_unchecked(
            self.shape.clone(),
            self.data.iter().map(|x| x * c).collect(),
        )
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.check_same(other)?;
        Ok(Self::from_parts_unchecked(
            self.shape.clone(),
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.check_same(other)?;
        Ok(Self::from_parts_unchecked(
            self.shape.clone(),
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        self.dot(other)?.sub(&other.dot(self)?)
    }

    /// `self·other + other·self`.
    pub fn anticommutator(&self, other: &Operator) -> Result<Operator> {
        self.dot(other)?.add(&other.dot(self)?)
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.dim();
        (0..n).map(|i| self.data[i * n + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖_F`.
    pub fn frob_distance(&self, other: &Operator) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// `‖self − self†‖_F`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                acc += (self.data[r * n + c] - self.data[c * n + r].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖self†·self − 1‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.adjoint().dot(self).expect("same shape");
        gram.frob_distance(&Operator::identity(self.shape.clone()))
            .expect("same shape")
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Recompute tags at the validation tolerance `1e-10`.
    pub fn validate(mut self) -> Operator {
        self.tags = Tags {
            unitary: self.is_unitary(VALIDATION_TOL),
            hermitian: self.is_hermitian(VALIDATION_TOL),
        };
        self
    }

    pub fn require_unitary(self) -> Result<Operator> {
        if self.tags.unitary {
            return Ok(self);
        }
        let d = self.unitarity_defect();
        if d > VALIDATION_TOL {
            return Err(Error::NotUnitary(d));
        }
        Ok(self.validate())
    }

    pub fn require_hermitian(self) -> Result<Operator> {
        if self.tags.hermitian {
            return Ok(self);
        }
        let d = self.hermiticity_defect();
        if d > VALIDATION_TOL {
            return Err(Error::NotHermitian(d));
        }
        Ok(self.validate())
    }

    pub(crate) fn with_tags(mut self, tags: Tags) -> Self {
        self.tags = tags;
        self
    }

    /// Matrix–vector product on raw amplitudes.
    pub fn apply_raw(&self, v: &Amplitudes) -> Result<Amplitudes> {
        if &self.shape != v.shape() {
            return Err(Error::shape(self.shape.sites(), v.shape().sites()));
        }
        Ok(Amplitudes::from_parts_unchecked(
            self.shape.clone(),
            self.matvec(v.data()),
        ))
    }

    /// Matrix–vector product. No renormalization is applied; an operator
    /// that changes the norm by more than `1e-10` is a contract error.
    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        if &self.shape != s.shape() {
            return Err(Error::shape(self.shape.sites(), s.shape().sites()));
        }
        let out = self.matvec(s.amps());
        let norm = super::state::l2_norm(&out);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Contract(format!(
                "operator changed the state norm to {norm}"
            )));
        }
        Ok(StateVector::from_parts_unchecked(self.shape.clone(), out))
    }

    fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = vec![ZERO; n];
        par::fill_rows(&mut out, 1, |r, o| {
            o[0] = self.data[r * n..(r + 1) * n]
                .iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .sum();
        });
        out
    }

    /// Kronecker product, left operand most significant.
    pub fn tensor(&self, other: &Operator) -> Result<Operator> {
        let shape = self.shape.concat(&other.shape)?;
        let (n, m) = (self.dim(), other.dim());
        let nm = n * m;
        let mut out = vec![ZERO; nm * nm];
        par::fill_rows(&mut out, nm, |r, row| {
            let (ra, rb) = (r / m, r % m);
            for ca in 0..n {
                let a = self.data[ra * n + ca];
                if a == ZERO {
                    continue;
                }
                for cb in 0..m {
                    row[ca * m + cb] = a * other.data[rb * m + cb];
                }
            }
        });
        let tags = Tags {
            unitary: self.tags.unitary && other.tags.unitary,
            hermitian: self.tags.hermitian && other.tags.hermitian,
        };
        Ok(Self::from_parts_unchecked(shape, out).with_tags(tags))
    }

    /// Embed `self` (acting on `sites`, in that order) into `full`, identity
    /// elsewhere.
    pub fn embed(&self, full: &RegisterShape, sites: &[usize]) -> Result<Operator> {
        let local = full.select(sites)?;
        if local != self.shape {
            return Err(Error::shape(self.shape.sites(), local.sites()));
        }
        let mut sorted = sites.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != sites.len() {
            return Err(Error::Precondition(format!("repeated sites in {sites:?}")));
        }
        let n = full.total_dim();
        let strides = full.strides();
        let local_strides = local.strides();
        let k = self.dim();
        let mut out = vec![ZERO; n * n];
        par::fill_rows(&mut out, n, |r, row| {
            let digits = full.digits(r);
            let local_r: usize = sites
                .iter()
                .zip(&local_strides)
                .map(|(&s, &st)| digits[s] * st)
                .sum();
            let base = r - sites.iter().map(|&s| digits[s] * strides[s]).sum::<usize>();
            for local_c in 0..k {
                let v = self.data[local_r * k + local_c];
                if v == ZERO {
                    continue;
                }
                let col = base
                    + sites
                        .iter()
                        .zip(&local_strides)
                        .zip(local.sites())
                        .map(|((&s, &st), &d)| ((local_c / st) % d) * strides[s])
                        .sum::<usize>();
                row[col] = v;
            }
        });
        Ok(Self::from_parts_unchecked(full.clone(), out).with_tags(self.tags))
    }

    /// Block `⟨value|·|value⟩` on `site` for an operator that is diagonal in
    /// that site; the result acts on the remaining sites.
    pub fn control_block(&self, site: usize, value: usize) -> Result<Operator> {
        let sites = self.shape.sites();
        if site >= sites.len() {
            return Err(Error::IndexOutOfRange {
                index: site,
                limit: sites.len(),
            });
        }
        if value >= sites[site] {
            return Err(Error::IndexOutOfRange {
                index: value,
                limit: sites[site],
            });
        }
        if sites.len() == 1 {
            return Err(Error::Precondition(
                "no sites left after restriction".into(),
            ));
        }
        let n = self.dim();
        let mut off_block = 0.0;
        for r in 0..n {
            let dr = self.shape.digits(r)[site];
            for c in 0..n {
                if self.shape.digits(c)[site] != dr {
                    off_block += self.data[r * n + c].norm_sqr();
                }
            }
        }
        if off_block.sqrt() > VALIDATION_TOL {
            return Err(Error::Contract(format!(
                "operator is not block-diagonal in site {site}"
            )));
        }
        let rest: Vec<usize> = (0..sites.len()).filter(|&s| s != site).collect();
        let rest_shape = self.shape.select(&rest)?;
        let idx: Vec<usize> = (0..n)
            .filter(|&i| self.shape.digits(i)[site] == value)
            .collect();
        let m = idx.len();
        let mut out = Vec::with_capacity(m * m);
        for &r in &idx {
            for &c in &idx {
                out.push(self.data[r * n + c]);
            }
        }
        Ok(Self::from_parts_unchecked(rest_shape, out))
    }
}

/// Kronecker products of operators and of states share one entry point.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Result<Self>;
}

impl Tensor for Operator {
    fn tensor(&self, other: &Self) -> Result<Self> {
        Operator::tensor(self, other)
    }
}

impl Tensor for StateVector {
    fn tensor(&self, other: &Self) -> Result<Self> {
        StateVector::tensor(self, other)
    }
}

/// `a ⊗ b` for operators or state vectors.
pub fn tensor<T: Tensor>(a: &T, b: &T) -> Result<T> {
    a.tensor(b)
}
