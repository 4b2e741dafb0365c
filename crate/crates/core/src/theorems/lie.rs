use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Operator, VALIDATION_TOL};
use crate::par;

/// Relative threshold below which a candidate is considered inside the span.
const SPAN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieClosureReport {
    pub generator_count: usize,
    pub closure_dimension: usize,
    /// Number of commutator rounds that enlarged the span.
    pub depth_reached: usize,
    /// True if a round added nothing, i.e. the span is closed.
    pub saturated: bool,
}

/// Dimension of the traceless Hermitian `d × d` matrices, `d² − 1`.
pub fn traceless_hermitian_dim(d: usize) -> usize {
    d * d - 1
}

/// Real coordinates of the traceless part; the Euclidean product of two
/// such vectors is `Re tr(A†B)`.
fn coords(h: &Operator) -> Vec<f64> {
    let d = h.dim();
    let shift = h.trace().re / d as f64;
    let mut v = Vec::with_capacity(2 * d * d);
    for r in 0..d {
        for c in 0..d {
            let mut z = h.get(r, c);
            if r == c {
                z -= shift;
            }
            v.push(z.re);
            v.push(z.im);
        }
    }
    v
}

struct Span {
    ops: Vec<Operator>,
    vecs: Vec<Vec<f64>>,
}

impl Span {
    /// Gram-Schmidt step (twice, for stability). Returns whether `h` was new.
    fn try_add(&mut self, h: &Operator) -> bool {
        let mut v = coords(h);
        let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if scale == 0.0 {
            return false;
        }
        v.iter_mut().for_each(|x| *x /= scale);
        for _ in 0..2 {
            for b in &self.vecs {
                let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n <= SPAN_TOL {
            return false;
        }
        v.iter_mut().for_each(|x| *x /= n);
        let d = h.dim();
        let data = (0..d * d)
            .map(|k| Complex64::new(v[2 * k], v[2 * k + 1]))
            .collect();
        self.ops
            .push(Operator::from_parts_unchecked(h.shape().clone(), data));
        self.vecs.push(v);
        true
    }
}

/// Dimension of the real Lie algebra generated by `i·H_k`, counted on
/// traceless parts: the span of the generators is extended by `i[A, B]`
/// until it stops growing or `max_depth` rounds have run.
pub fn lie_closure_dimension(
    generators: &[Operator],
    max_depth: usize,
) -> Result<LieClosureReport> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Precondition("at least one generator".into()))?;
    for g in generators {
        if g.dim() != first.dim() {
            return Err(Error::shape(first.shape().sites(), g.shape().sites()));
        }
        let d = g.hermiticity_defect();
        if d > VALIDATION_TOL {
            return Err(Error::NotHermitian(d));
        }
    }
    let mut span = Span {
        ops: Vec::new(),
        vecs: Vec::new(),
    };
    for g in generators {
        span.try_add(g);
    }
    let i = Complex64::new(0.0, 1.0);
    let mut frontier = 0..span.ops.len();
    let mut depth_reached = 0;
    let mut saturated = false;
    for depth in 1..=max_depth {
        let known = span.ops.len();
        let pairs: Vec<(usize, usize)> = frontier
            .clone()
            .flat_map(|a| (0..known).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b)
            .collect();
        let ops = &span.ops;
        let cands = par::map(&pairs, |&(a, b)| {
            ops[a].commutator(&ops[b]).map(|c| c.scale(i))
        });
        for c in cands {
            span.try_add(&c?);
        }
        if span.ops.len() == known {
            saturated = true;
            break;
        }
        depth_reached = depth;
        frontier = known..span.ops.len();
    }
    Ok(LieClosureReport {
        generator_count: generators.len(),
        closure_dimension: span.ops.len(),
        depth_reached,
        saturated,
    })
}
