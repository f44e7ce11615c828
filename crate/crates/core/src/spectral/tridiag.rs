//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for the
//! eigenvalues, inverse iteration for the vectors.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    /// Unit-norm eigenvectors, one per value.
    pub vectors: Vec<Vec<f64>>,
    /// Largest `|T v - lambda v|` over the returned pairs.
    pub max_residual: f64,
}

const MAX_INVERSE_ITERATIONS: usize = 8;

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1), "off-diagonal length");
        SymTridiag { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt() * self.norm();
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.len() {
            let e2 = if i > 0 { self.off[i - 1] * self.off[i - 1] } else { 0.0 };
            q = self.diag[i] - x - if i > 0 { e2 / q } else { 0.0 };
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection to full precision.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * self.norm() * 4.0;
        lo -= pad;
        hi += pad;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Solves `(T - shift) x = b` by Gaussian elimination with partial pivoting.
    fn shifted_solve(&self, shift: f64, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        let tiny = f64::EPSILON * self.norm();
        // Rows hold up to three entries after pivoting: u0 (diag), u1, u2.
        let mut u0: Vec<f64> = self.diag.iter().map(|d| d - shift).collect();
        let mut u1: Vec<f64> = (0..n).map(|i| if i + 1 < n { self.off[i] } else { 0.0 }).collect();
        let mut u2 = vec![0.0; n];
        let mut lower: Vec<f64> = (0..n).map(|i| if i > 0 { self.off[i - 1] } else { 0.0 }).collect();
        let mut rhs = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            // Candidate pivot rows: i (entries u0[i], u1[i], u2[i]) and i+1
            // (entries lower[i+1], u0[i+1], u1[i+1]).
            if lower[i + 1].abs() > u0[i].abs() {
                let (a0, a1, a2) = (u0[i], u1[i], u2[i]);
                u0[i] = lower[i + 1];
                u1[i] = u0[i + 1];
                u2[i] = u1[i + 1];
                lower[i + 1] = a0;
                u0[i + 1] = a1;
                u1[i + 1] = a2;
                rhs.swap(i, i + 1);
            }
            if u0[i] == 0.0 {
                u0[i] = tiny;
            }
            let f = lower[i + 1] / u0[i];
            u0[i + 1] -= f * u1[i];
            u1[i + 1] -= f * u2[i];
            rhs[i + 1] -= f * rhs[i];
            lower[i + 1] = 0.0;
        }
        if n > 0 && u0[n - 1] == 0.0 {
            u0[n - 1] = tiny;
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= u2[i] * x[i + 2];
            }
            x[i] = s / u0[i];
        }
        x
    }

    /// Lowest `count` eigenpairs. Vectors belonging to close eigenvalues are
    /// orthogonalized against each other.
    pub fn lowest(&self, count: usize) -> Result<Eigenpairs> {
        let n = self.len();
        let count = count.min(n);
        let values: Vec<f64> = (0..count).map(|k| self.eigenvalue(k)).collect();
        let norm = self.norm();
        let cluster = 1e-7 * norm;
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(count);
        let mut max_residual: f64 = 0.0;
        for (k, &lambda) in values.iter().enumerate() {
            // Deterministic, generic starting vector.
            let mut v: Vec<f64> = (0..n)
                .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * (k as f64 + 1.7)).sin())
                .collect();
            normalize(&mut v);
            let mut residual = f64::INFINITY;
            for _ in 0..MAX_INVERSE_ITERATIONS {
                let mut w = self.shifted_solve(lambda, &v);
                for prev in (0..k).filter(|&j| (values[j] - lambda).abs() < cluster) {
                    let p = &vectors[prev];
                    let dot: f64 = w.iter().zip(p).map(|(a, b)| a * b).sum();
                    for (wi, pi) in w.iter_mut().zip(p) {
                        *wi -= dot * pi;
                    }
                }
                normalize(&mut w);
                v = w;
                let tv = self.mul_vec(&v);
                residual = tv
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a - lambda * b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                if residual <= 64.0 * f64::EPSILON * norm {
                    break;
                }
            }
            if residual > 1e-8 * norm.max(1.0) {
                return Err(Error::NonConvergence {
                    iterations: MAX_INVERSE_ITERATIONS,
                    residual,
                });
            }
            max_residual = max_residual.max(residual);
            vectors.push(v);
        }
        Ok(Eigenpairs {
            values,
            vectors,
            max_residual,
        })
    }
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}
