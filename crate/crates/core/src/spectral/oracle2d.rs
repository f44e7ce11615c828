//! Independent check of the sector solver: the full Hamiltonian
//! `(p - a)^2 / 2 + omega_0^2 r^2 / 2` (units `hbar = m = 1`) on a Cartesian
//! lattice, with no use of the angular decomposition.
//!
//! Sites sit at `-L + (i + 1/2) h`, so the flux line at the origin pierces a
//! plaquette centre. Hopping uses the fourth-order stencil
//! `(-1, 16, -30, 16, -1) / 12 h^2` with exact link phases
//! `exp(-i int a.dl)` along the straight segment between the two sites.

use num_complex::Complex64;

use super::closed_form::energy_with_signs;
use super::tridiag::SymTridiag;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub sites_per_side: usize,
    pub half_width: f64,
}

impl Default for LatticeSpec {
    fn default() -> Self {
        LatticeSpec {
            sites_per_side: 80,
            half_width: 5.5,
        }
    }
}

pub struct LatticeHamiltonian {
    n: usize,
    h: f64,
    coords: Vec<f64>,
    diag: Vec<f64>,
    /// Per site: neighbour index and hopping amplitude.
    hops: Vec<Vec<(usize, Complex64)>>,
}

impl LatticeHamiltonian {
    pub fn new(spec: LatticeSpec, alpha: f64, omega_c: f64, omega_0: f64) -> Self {
        let n = spec.sites_per_side;
        let h = 2.0 * spec.half_width / n as f64;
        let coords: Vec<f64> = (0..n).map(|i| -spec.half_width + (i as f64 + 0.5) * h).collect();
        let inv = 1.0 / (12.0 * h * h);
        let stencil = [(1_isize, -0.5 * 16.0 * inv), (2, 0.5 * inv)];
        let kin0 = 2.0 * 0.5 * 30.0 * inv;
        let mut diag = Vec::with_capacity(n * n);
        let mut hops = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = [coords[i], coords[j]];
                diag.push(kin0 + 0.5 * omega_0 * omega_0 * (p[0] * p[0] + p[1] * p[1]));
                let mut list = Vec::with_capacity(8);
                for &(s, c) in &stencil {
                    for (di, dj) in [(s, 0), (-s, 0), (0, s), (0, -s)] {
                        let (ii, jj) = (i as isize + di, j as isize + dj);
                        if ii < 0 || jj < 0 || ii >= n as isize || jj >= n as isize {
                            continue;
                        }
                        let q = [coords[ii as usize], coords[jj as usize]];
                        let cross = p[0] * q[1] - p[1] * q[0];
                        let dphi = cross.atan2(p[0] * q[0] + p[1] * q[1]);
                        let line_integral = -0.5 * omega_c * cross - alpha * dphi;
                        let u = Complex64::from_polar(1.0, -line_integral);
                        list.push((ii as usize * n + jj as usize, u * c));
                    }
                }
                hops.push(list);
            }
        }
        LatticeHamiltonian {
            n,
            h,
            coords,
            diag,
            hops,
        }
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        for k in 0..self.dim() {
            let mut s = v[k] * self.diag[k];
            for &(q, c) in &self.hops[k] {
                s += c * v[q];
            }
            out[k] = s;
        }
    }

    /// `<psi| -i (x d/dy - y d/dx) |psi>` by central differences.
    pub fn angular_momentum(&self, psi: &[Complex64]) -> f64 {
        let n = self.n;
        let at = |i: isize, j: isize| -> Complex64 {
            if i < 0 || j < 0 || i >= n as isize || j >= n as isize {
                Complex64::new(0.0, 0.0)
            } else {
                psi[i as usize * n + j as usize]
            }
        };
        let mut num = Complex64::new(0.0, 0.0);
        let mut norm = 0.0;
        for i in 0..n as isize {
            for j in 0..n as isize {
                let x = self.coords[i as usize];
                let y = self.coords[j as usize];
                let dx = (at(i + 1, j) - at(i - 1, j)) / (2.0 * self.h);
                let dy = (at(i, j + 1) - at(i, j - 1)) / (2.0 * self.h);
                let lz = Complex64::new(0.0, -1.0) * (dy * x - dx * y);
                let p = at(i, j);
                num += p.conj() * lz;
                norm += p.norm_sqr();
            }
        }
        num.re / norm
    }
}

#[derive(Debug, Clone)]
pub struct OracleLevels {
    /// Energies in units of `hbar` (natural units), ascending.
    pub energies: Vec<f64>,
    /// Measured `<L_z>` per level.
    pub angular_momenta: Vec<f64>,
    pub iterations: usize,
    pub max_residual: f64,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Lowest `count` eigenpairs by Lanczos with full reorthogonalization.
pub fn lowest_levels(ham: &LatticeHamiltonian, count: usize, max_iter: usize) -> Result<OracleLevels> {
    let dim = ham.dim();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut alphas = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut v: Vec<Complex64> = (0..dim)
        .map(|k| {
            let t = k as f64;
            Complex64::new(1.0 + 0.3 * (0.37 * t).sin(), 0.2 * (0.11 * t).cos())
        })
        .collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    let tol = 1e-9;
    let check_every = 25;
    let mut last_residual = f64::INFINITY;
    for it in 0..max_iter.min(dim) {
        ham.apply(&v, &mut w);
        let a = dot(&v, &w).re;
        alphas.push(a);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi -= vi * a;
        }
        if let Some(prev) = basis.last() {
            let b = *betas.last().unwrap();
            for (wi, pi) in w.iter_mut().zip(prev) {
                *wi -= pi * b;
            }
        }
        basis.push(v.clone());
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= qi * c;
                }
            }
        }
        let b = norm(&w);
        let m = alphas.len();
        if (it + 1) % check_every == 0 || b < 1e-12 || it + 1 == max_iter.min(dim) {
            if m >= count {
                let t = SymTridiag::new(alphas.clone(), betas.clone());
                let ritz = t.lowest(count)?;
                let res = ritz
                    .vectors
                    .iter()
                    .map(|s| (b * s[m - 1]).abs())
                    .fold(0.0, f64::max);
                last_residual = res;
                if res < tol || b < 1e-12 {
                    let mut energies = Vec::with_capacity(count);
                    let mut lz = Vec::with_capacity(count);
                    for s in &ritz.vectors {
                        let mut y = vec![Complex64::new(0.0, 0.0); dim];
                        for (coef, q) in s.iter().zip(&basis) {
                            for (yi, qi) in y.iter_mut().zip(q) {
                                *yi += qi * *coef;
                            }
                        }
                        let mut hy = vec![Complex64::new(0.0, 0.0); dim];
                        ham.apply(&y, &mut hy);
                        energies.push(dot(&y, &hy).re / dot(&y, &y).re);
                        lz.push(ham.angular_momentum(&y));
                    }
                    return Ok(OracleLevels {
                        energies,
                        angular_momenta: lz,
                        iterations: m,
                        max_residual: res,
                    });
                }
            }
        }
        betas.push(b);
        v = w.iter().map(|x| x / b).collect();
    }
    Err(Error::NonConvergence {
        iterations: alphas.len(),
        residual: last_residual,
    })
}

/// Result of fitting the four `(sigma, s)` combinations to lattice levels.
#[derive(Debug, Clone)]
pub struct SignFit {
    /// Lattice levels in units of `hbar Omega`.
    pub lattice: Vec<f64>,
    /// Sector labels from the rounded `<L_z>`.
    pub ells: Vec<i64>,
    /// Radial quantum numbers inferred from the labels.
    pub ns: Vec<u32>,
    /// `((sigma, s), max relative deviation)` for all four combinations.
    pub combos: Vec<((i32, i32), f64)>,
}

impl SignFit {
    pub fn best(&self) -> ((i32, i32), f64) {
        *self
            .combos
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("four combinations")
    }

    /// Combinations whose worst relative deviation is below `tol`.
    pub fn matching(&self, tol: f64) -> Vec<(i32, i32)> {
        self.combos.iter().filter(|c| c.1 < tol).map(|c| c.0).collect()
    }
}

/// Diagonalizes the lattice Hamiltonian and scores every sign combination of
/// the closed form against its lowest `count` levels.
pub fn determine_signs(
    spec: LatticeSpec,
    alpha: f64,
    omega_c: f64,
    omega_0: f64,
    count: usize,
) -> Result<(OracleLevels, SignFit)> {
    let ham = LatticeHamiltonian::new(spec, alpha, omega_c, omega_0);
    let levels = lowest_levels(&ham, count, 3000)?;
    let omega = (omega_0 * omega_0 + 0.25 * omega_c * omega_c).sqrt();
    let kappa = omega_c / (2.0 * omega);
    let lattice: Vec<f64> = levels.energies.iter().map(|e| e / omega).collect();
    let ells: Vec<i64> = levels.angular_momenta.iter().map(|l| l.round() as i64).collect();
    let ns: Vec<u32> = (0..ells.len())
        .map(|i| ells[..i].iter().filter(|&&l| l == ells[i]).count() as u32)
        .collect();
    let mut combos = Vec::new();
    for sigma in [1, -1] {
        for s in [1, -1] {
            let dev = (0..lattice.len())
                .map(|i| {
                    let e = energy_with_signs(ns[i], ells[i], alpha, kappa, sigma, s);
                    ((lattice[i] - e) / e).abs()
                })
                .fold(0.0, f64::max);
            combos.push(((sigma, s), dev));
        }
    }
    Ok((
        levels,
        SignFit {
            lattice,
            ells,
            ns,
            combos,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_is_hermitian() {
        let ham = LatticeHamiltonian::new(
            LatticeSpec {
                sites_per_side: 12,
                half_width: 3.0,
            },
            0.3,
            2.0,
            1.0,
        );
        for (k, list) in ham.hops.iter().enumerate() {
            for &(q, c) in list {
                let back = ham.hops[q].iter().find(|e| e.0 == k).unwrap().1;
                assert!((back - c.conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn flux_free_oscillator_on_small_lattice() {
        let spec = LatticeSpec {
            sites_per_side: 40,
            half_width: 6.0,
        };
        let ham = LatticeHamiltonian::new(spec, 0.0, 0.0, 1.0);
        let lv = lowest_levels(&ham, 3, 2000).unwrap();
        assert!((lv.energies[0] - 1.0).abs() < 1e-3, "{:?}", lv.energies);
        assert!((lv.energies[1] - 2.0).abs() < 1e-2);
    }
}
