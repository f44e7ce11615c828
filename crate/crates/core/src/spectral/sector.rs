//! One canonical-angular-momentum sector of the trapped dipole.
//!
//! In sector `ell` the wavefunction is `R(rho) e^(i ell phi)` and the radial
//! Hamiltonian, in units of `hbar Omega` with `rho = r / l0`, is
//!
//! `-(1/2)(R'' + R'/rho - nu^2 R / rho^2) + rho^2 R / 2 + kappa nu R`
//!
//! with `nu = ell + alpha`, `kappa = omega_c / (2 Omega)` and both `alpha`,
//! `omega_c` taken from the signed effective coupling.

use super::laguerre;
use super::tridiag::SymTridiag;
use crate::error::{Error, Result};
use crate::params::Config;

/// Radial sampling window `[0, r_max]` (oscillator lengths) with `n_points`
/// intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_max: f64,
    pub n_points: usize,
}

impl Default for RadialGrid {
    fn default() -> Self {
        RadialGrid {
            r_max: 12.0,
            n_points: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Discretization {
    /// Laguerre basis of the given size and basis frequency `w` (in units of
    /// `Omega`); the grid is used for sampling and quadrature only.
    Spectral { basis_size: usize, basis_frequency: f64 },
    /// Three-point differences on `u = sqrt(rho) R` with Dirichlet ends.
    FiniteDifference,
}

impl Default for Discretization {
    fn default() -> Self {
        Discretization::Spectral {
            basis_size: 64,
            basis_frequency: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorProblem {
    pub ell: i64,
    pub alpha: f64,
    pub omega_c: f64,
    pub omega_0: f64,
    pub grid: RadialGrid,
    pub discretization: Discretization,
}

impl SectorProblem {
    pub fn new(ell: i64, alpha: f64, omega_c: f64, omega_0: f64) -> Self {
        SectorProblem {
            ell,
            alpha,
            omega_c,
            omega_0,
            grid: RadialGrid::default(),
            discretization: Discretization::default(),
        }
    }

    pub fn from_config(cfg: &Config, ell: i64) -> Result<Self> {
        let g = cfg.coupling()?;
        let f = cfg.frequencies()?;
        Ok(SectorProblem::new(ell, g.alpha(cfg.params.hbar), f.omega_c, f.omega_0))
    }

    pub fn with_grid(mut self, grid: RadialGrid) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_discretization(mut self, d: Discretization) -> Self {
        self.discretization = d;
        self
    }

    pub fn nu(&self) -> f64 {
        self.ell as f64 + self.alpha
    }

    pub fn omega(&self) -> f64 {
        (self.omega_0 * self.omega_0 + 0.25 * self.omega_c * self.omega_c).sqrt()
    }

    pub fn kappa(&self) -> f64 {
        self.omega_c / (2.0 * self.omega())
    }

    /// Resolution checks for `n_levels` requested states.
    pub fn validate(&self, n_levels: usize) -> Result<()> {
        if !(self.omega() > 0.0 && self.omega().is_finite()) {
            return Err(Error::config(
                "K",
                "no confinement: trap stiffness and volume source both vanish",
            ));
        }
        if !self.alpha.is_finite() {
            return Err(Error::config("lambda", "flux analog is not finite"));
        }
        if n_levels == 0 {
            return Err(Error::config("levels", "at least one level is required"));
        }
        let g = &self.grid;
        if g.n_points < 200 {
            return Err(Error::GridTooCoarse(format!(
                "n_points = {} is below the minimum of 200",
                g.n_points
            )));
        }
        let reach = 2.0 * (2.0 * n_levels as f64 + self.nu().abs() + 1.0).sqrt();
        if !(g.r_max >= reach) {
            return Err(Error::GridTooCoarse(format!(
                "r_max = {} oscillator lengths does not cover {n_levels} levels of sector {} (needs >= {reach:.3})",
                g.r_max, self.ell
            )));
        }
        if let Discretization::Spectral {
            basis_size,
            basis_frequency,
        } = self.discretization
        {
            if basis_size < n_levels + 8 {
                return Err(Error::GridTooCoarse(format!(
                    "basis of {basis_size} functions is too small for {n_levels} levels (needs >= {})",
                    n_levels + 8
                )));
            }
            if !(basis_frequency > 0.0 && basis_frequency.is_finite()) {
                return Err(Error::config("basis_frequency", "must be positive"));
            }
        }
        Ok(())
    }

    fn fd_step(&self) -> f64 {
        self.grid.r_max / (self.grid.n_points + 1) as f64
    }
}

/// The discretized radial operator of a sector.
pub fn radial_hamiltonian(sp: &SectorProblem) -> Result<SymTridiag> {
    sp.validate(1)?;
    let nu = sp.nu();
    let kappa_nu = sp.kappa() * nu;
    Ok(match sp.discretization {
        Discretization::Spectral {
            basis_size,
            basis_frequency,
        } => laguerre::hamiltonian(basis_size, nu.abs(), basis_frequency, kappa_nu),
        Discretization::FiniteDifference => {
            let n = sp.grid.n_points;
            let h = sp.fd_step();
            let cent = 0.5 * (nu * nu - 0.25);
            let diag = (1..=n)
                .map(|i| {
                    let r = i as f64 * h;
                    1.0 / (h * h) + cent / (r * r) + 0.5 * r * r + kappa_nu
                })
                .collect();
            SymTridiag::new(diag, vec![-0.5 / (h * h); n - 1])
        }
    })
}

#[derive(Debug, Clone)]
pub struct SectorSolution {
    pub problem: SectorProblem,
    /// Energies in units of `hbar Omega`, increasing.
    pub energies: Vec<f64>,
    /// Basis coefficients (spectral) or `sqrt(h) u_i` values (finite
    /// differences); unit `l2` norm is unit norm under `rho d rho`.
    pub vectors: Vec<Vec<f64>>,
    /// `<rho^2>` per level from the operator matrix.
    pub rho2: Vec<f64>,
    pub max_residual: f64,
}

/// Lowest `n_levels` eigenpairs of a sector.
pub fn solve_sector(sp: &SectorProblem, n_levels: usize) -> Result<SectorSolution> {
    sp.validate(n_levels)?;
    let h = radial_hamiltonian(sp)?;
    let pairs = h.lowest(n_levels)?;
    let mut vectors = pairs.vectors;
    for v in vectors.iter_mut() {
        fix_sign(v);
    }
    let r2 = match sp.discretization {
        Discretization::Spectral {
            basis_size,
            basis_frequency,
        } => laguerre::rho_squared(basis_size, sp.nu().abs(), basis_frequency),
        Discretization::FiniteDifference => {
            let step = sp.fd_step();
            let n = sp.grid.n_points;
            SymTridiag::new(
                (1..=n).map(|i| (i as f64 * step).powi(2)).collect(),
                vec![0.0; n - 1],
            )
        }
    };
    let rho2 = vectors
        .iter()
        .map(|v| v.iter().zip(r2.mul_vec(v)).map(|(a, b)| a * b).sum())
        .collect();
    Ok(SectorSolution {
        problem: *sp,
        energies: pairs.values,
        vectors,
        rho2,
        max_residual: pairs.max_residual,
    })
}

/// Largest-magnitude component positive, so eigenvectors are reproducible.
fn fix_sign(v: &mut [f64]) {
    let mut best = 0.0_f64;
    for &x in v.iter() {
        if x.abs() > best.abs() {
            best = x;
        }
    }
    if best < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Composite Simpson weights on `n + 1` equally spaced nodes; a trailing odd
/// interval is closed with the trapezoid rule.
pub fn simpson_weights(n_intervals: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n_intervals + 1];
    let even = n_intervals - n_intervals % 2;
    for i in (0..even).step_by(2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if even < n_intervals {
        w[even] += h / 2.0;
        w[even + 1] += h / 2.0;
    }
    w
}

impl SectorSolution {
    pub fn levels(&self) -> usize {
        self.energies.len()
    }

    /// Sampling nodes `rho_i`.
    pub fn sample_grid(&self) -> Vec<f64> {
        let g = &self.problem.grid;
        match self.problem.discretization {
            Discretization::Spectral { .. } => {
                let h = g.r_max / g.n_points as f64;
                (0..=g.n_points).map(|i| i as f64 * h).collect()
            }
            Discretization::FiniteDifference => {
                let h = self.problem.fd_step();
                (0..=g.n_points + 1).map(|i| i as f64 * h).collect()
            }
        }
    }

    /// Quadrature weights for `integral f(rho) rho d rho` on [`Self::sample_grid`].
    pub fn measure_weights(&self) -> Vec<f64> {
        let grid = self.sample_grid();
        let h = grid[1] - grid[0];
        simpson_weights(grid.len() - 1, h)
            .into_iter()
            .zip(&grid)
            .map(|(w, r)| w * r)
            .collect()
    }

    /// Radial function `R(rho)` of a level on the sampling grid.
    pub fn radial_samples(&self, level: usize) -> Vec<f64> {
        let v = &self.vectors[level];
        let grid = self.sample_grid();
        match self.problem.discretization {
            Discretization::Spectral {
                basis_size,
                basis_frequency,
            } => {
                let a = self.problem.nu().abs();
                grid.iter()
                    .map(|&r| {
                        laguerre::basis_values(basis_size, a, basis_frequency, r)
                            .iter()
                            .zip(v)
                            .map(|(p, c)| p * c)
                            .sum()
                    })
                    .collect()
            }
            Discretization::FiniteDifference => {
                let h = self.problem.fd_step();
                let n = v.len();
                grid.iter()
                    .enumerate()
                    .map(|(i, &r)| {
                        if i == 0 || i > n {
                            0.0
                        } else {
                            v[i - 1] / (h.sqrt() * r.sqrt())
                        }
                    })
                    .collect()
            }
        }
    }

    /// `<rho^2>` by direct quadrature of the sampled radial function.
    pub fn rho2_quadrature(&self, level: usize) -> f64 {
        let grid = self.sample_grid();
        let w = self.measure_weights();
        self.radial_samples(level)
            .iter()
            .zip(&grid)
            .zip(&w)
            .map(|((f, r), w)| w * f * f * r * r)
            .sum()
    }

    /// `<J_k> / hbar = ell + alpha + kappa <rho^2>`.
    pub fn kinetic_j(&self, level: usize) -> f64 {
        self.problem.nu() + self.problem.kappa() * self.rho2[level]
    }

    pub fn kinetic_j_quadrature(&self, level: usize) -> f64 {
        self.problem.nu() + self.problem.kappa() * self.rho2_quadrature(level)
    }
}

/// `<J_k>` in units of hbar for a solved level.
pub fn kinetic_j_expectation(sol: &SectorSolution, level: usize) -> f64 {
    sol.kinetic_j(level)
}
