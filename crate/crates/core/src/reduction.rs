//! Lowest-band projection of the trapped dipole and the small-mass limit.
//!
//! The limit is taken at fixed trap, dipole and sources by shrinking the mass:
//! `mu = omega_0 / |omega_c|` and `m = (mu g_vol)^2 / K`. In units of
//! `hbar Omega` only `kappa = omega_c / (2 Omega)` changes along a schedule.
//!
//! The band holds the `n = 0` states of the chirality whose energy
//! `1 + |nu| + kappa nu` collapses to 1 as `kappa -> sgn(omega_c)`, one per
//! sector, ordered outward from the sector closest to `nu = 0`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ParamField, SymbolicConfig};
use crate::error::{Error, Result};
use crate::params::{Config, FieldKind};
use crate::spectral::table::{solve_sectors, SolverOptions, SpectrumTable};
use crate::spectral::SectorSolution;

/// `J_rn / hbar = -sgn(g_vol) (n + 1/2) - alpha_eff`: `-(n + 1/2) - alpha` for a
/// magnetic config with `d rho_m > 0`, `(n + 1/2) + alpha` for an electric one
/// with `mu rho_e / eps0 > 0`.
pub fn reduced_j_analytic(n: u32, cfg: &Config) -> Result<f64> {
    let g = cfg.coupling()?;
    let alpha_eff = g.alpha(cfg.params.hbar);
    let half = n as f64 + 0.5;
    match cfg.field.kind {
        FieldKind::MagneticHMW if g.volume > 0.0 => Ok(-half - alpha_eff),
        FieldKind::MagneticHMW => Err(Error::ReductionUndefined(format!(
            "needs d*rho_m > 0, got d = {}, rho = {}",
            cfg.params.d, cfg.field.rho
        ))),
        FieldKind::ElectricAC if g.volume < 0.0 => Ok(half - alpha_eff),
        FieldKind::ElectricAC => Err(Error::ReductionUndefined(format!(
            "needs mu*rho_e/eps0 > 0, got mu = {}, rho = {}",
            cfg.params.d, cfg.field.rho
        ))),
    }
}

/// Exact form of [`reduced_j_analytic`], assuming the sign condition holds.
pub fn reduced_j_symbolic(n: u32, cfg: &SymbolicConfig) -> ParamField {
    let half = ParamField::ratio(2 * n as i64 + 1, 2);
    let alpha = cfg.alpha();
    match cfg.kind {
        FieldKind::MagneticHMW => half.add(&alpha).neg(),
        FieldKind::ElectricAC => half.add(&alpha),
    }
}

/// Copy of `cfg` with the mass set so that `omega_0 / |omega_c| = mu`.
pub fn cooled(cfg: &Config, mu: f64) -> Result<Config> {
    let g = cfg.coupling()?;
    if g.volume == 0.0 {
        return Err(Error::ReductionUndefined("the volume source vanishes".into()));
    }
    if cfg.params.k_trap <= 0.0 {
        return Err(Error::ReductionUndefined("the cooling schedule needs K > 0".into()));
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::config("schedule", format!("mass ratio must be positive, got {mu}")));
    }
    let mut out = *cfg;
    out.params.m = (mu * g.volume).powi(2) / cfg.params.k_trap;
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct BandProjection {
    /// `omega_0 / |omega_c|` of the projected config.
    pub mu: f64,
    /// Sector of each band state, in band order.
    pub ells: Vec<i64>,
    /// Band energies in units of `hbar Omega`.
    pub energies: Vec<f64>,
    /// Distance from the top of the band to the next state (`hbar Omega`).
    pub gap: f64,
    /// Projected `R = -(d/2c^2)(rho r^2 + lambda/pi)` in units of hbar;
    /// diagonal because each sector holds one band state.
    pub r: DMatrix<f64>,
    /// Projected coordinates in metres.
    pub x1: DMatrix<Complex64>,
    pub x2: DMatrix<Complex64>,
    /// Every solved state in the sector window.
    pub spectrum: SpectrumTable,
}

impl BandProjection {
    /// Eigenvalues of the projected `R`, descending.
    pub fn r_eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = (0..self.r.nrows()).map(|i| self.r[(i, i)]).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

/// First band sector and the direction (`-1` or `+1`) in which `ell` runs.
pub fn band_origin(alpha_eff: f64, omega_c: f64) -> (i64, i64) {
    if omega_c > 0.0 {
        ((-alpha_eff).floor() as i64, -1)
    } else {
        ((-alpha_eff).ceil() as i64, 1)
    }
}

/// Default sector window: the band plus two sectors on each side.
pub fn default_window(cfg: &Config, band_size: usize) -> Result<RangeInclusive<i64>> {
    let g = cfg.coupling()?;
    let (start, dir) = band_origin(g.alpha(cfg.params.hbar), g.volume);
    let end = start + dir * (band_size as i64 - 1);
    Ok(start.min(end) - 2..=start.max(end) + 2)
}

pub fn project_lowest_band(
    cfg: &Config,
    band_size: usize,
    sectors: Option<RangeInclusive<i64>>,
    opts: &SolverOptions,
) -> Result<BandProjection> {
    if band_size == 0 {
        return Err(Error::InsufficientBand("band size must be positive".into()));
    }
    let g = cfg.coupling()?;
    let f = cfg.frequencies()?;
    if g.volume == 0.0 {
        return Err(Error::ReductionUndefined("the volume source vanishes".into()));
    }
    let alpha_eff = g.alpha(cfg.params.hbar);
    let (start, dir) = band_origin(alpha_eff, f.omega_c);
    let band: Vec<i64> = (0..band_size as i64).map(|k| start + dir * k).collect();
    let window = match sectors {
        Some(w) => w,
        None => default_window(cfg, band_size)?,
    };
    if let Some(l) = band.iter().find(|l| !window.contains(l)) {
        return Err(Error::InsufficientBand(format!(
            "band sector {l} lies outside the window {}..{}",
            window.start(),
            window.end()
        )));
    }
    let sols = solve_sectors(cfg, window.clone(), 2, opts)?;
    let by_ell = |l: i64| -> &SectorSolution {
        &sols[(l - window.start()) as usize]
    };

    let energies: Vec<f64> = band.iter().map(|&l| by_ell(l).energies[0]).collect();
    let top = energies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut next = f64::INFINITY;
    for s in &sols {
        // n = 0 states of the band chirality outside the kept window belong
        // to the same band, not above it.
        let same_chirality = s.problem.nu() * f.omega_c <= 0.0;
        let first = if same_chirality { 1 } else { 0 };
        for e in &s.energies[first..] {
            next = next.min(*e);
        }
    }
    let gap = next - top;
    let mu = f.omega_0 / f.omega_c.abs();
    if !(gap > 0.0) {
        return Err(Error::BandGap { mu, gap });
    }

    let length = f.length(&cfg.params);
    let kappa = f.omega_c / (2.0 * f.omega);
    let n = band_size;
    let r = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            -(kappa * by_ell(band[i]).rho2[0] + alpha_eff)
        } else {
            0.0
        }
    });

    let samples: Vec<Vec<f64>> = band.iter().map(|&l| by_ell(l).radial_samples(0)).collect();
    let grid = sols[0].sample_grid();
    let weights = sols[0].measure_weights();
    let mut x1 = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    let mut x2 = x1.clone();
    for i in 0..n {
        for j in 0..n {
            if band[i] != band[j] + 1 {
                continue;
            }
            // <ell+1| r e^{+i phi} |ell> = integral R R rho^2 d rho.
            let overlap: f64 = samples[i]
                .iter()
                .zip(&samples[j])
                .zip(&grid)
                .zip(&weights)
                .map(|(((a, b), rho), w)| w * a * b * rho)
                .sum::<f64>()
                * length;
            x1[(i, j)] = Complex64::new(0.5 * overlap, 0.0);
            x1[(j, i)] = Complex64::new(0.5 * overlap, 0.0);
            x2[(i, j)] = Complex64::new(0.0, -0.5 * overlap);
            x2[(j, i)] = Complex64::new(0.0, 0.5 * overlap);
        }
    }

    Ok(BandProjection {
        mu,
        ells: band,
        energies,
        gap,
        r,
        x1,
        x2,
        spectrum: SpectrumTable::from_solutions(&sols),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorEstimate {
    /// Mean interior diagonal of `(X1 X2 - X2 X1) / i`.
    pub value: f64,
    /// Largest deviation of the discarded edge entries from `value`.
    pub edge_error: f64,
}

/// Interior average of `(X1 X2 - X2 X1) / i`; two states are dropped at each
/// end of the band (one for bands of four or five states).
pub fn projected_commutator(x1: &DMatrix<Complex64>, x2: &DMatrix<Complex64>) -> Result<CommutatorEstimate> {
    let n = x1.nrows();
    if n <= 3 {
        return Err(Error::InsufficientBand(format!(
            "commutator estimate needs more than 3 band states, got {n}"
        )));
    }
    let c = (x1 * x2 - x2 * x1) * Complex64::new(0.0, -1.0);
    let drop = if n >= 6 { 2 } else { 1 };
    let interior: Vec<f64> = (drop..n - drop).map(|k| c[(k, k)].re).collect();
    let value = interior.iter().sum::<f64>() / interior.len() as f64;
    let edge_error = (0..drop)
        .chain(n - drop..n)
        .map(|k| (c[(k, k)].re - value).abs())
        .fold(0.0, f64::max);
    Ok(CommutatorEstimate { value, edge_error })
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub alpha: f64,
    /// `hbar / |g_vol|` in square metres.
    pub theta: f64,
    pub band_size: usize,
    pub schedule: Vec<f64>,
    /// Projected `R` eigenvalues per schedule point, descending (hbar).
    pub projected_j: Vec<Vec<f64>>,
    /// Analytic `J_rn` for `n = 0..band_size` (hbar).
    pub target_j: Vec<f64>,
    /// Worst `|projected - target|` over `n <= band_size - 3`.
    pub j_error: Vec<f64>,
    pub commutator_estimate: Vec<f64>,
    /// `|estimate - theta|`.
    pub commutator_error: Vec<f64>,
    pub gaps: Vec<f64>,
    /// Fitted slopes of `ln(error)` against `ln(mu)`.
    pub j_slope: Option<f64>,
    pub commutator_slope: Option<f64>,
    #[serde(skip)]
    pub spectra: Vec<SpectrumTable>,
}

/// Least-squares slope of `ln y` against `ln x` over positive pairs.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

pub fn convergence_study(
    cfg: &Config,
    schedule: &[f64],
    band_size: usize,
    opts: &SolverOptions,
) -> Result<ReductionReport> {
    if schedule.len() < 3 {
        return Err(Error::config("schedule", "needs at least 3 points"));
    }
    if schedule.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::config("schedule", "must be strictly decreasing"));
    }
    let target_j: Vec<f64> = (0..band_size as u32)
        .map(|n| reduced_j_analytic(n, cfg))
        .collect::<Result<_>>()?;
    let theta = cfg.params.hbar / cfg.coupling()?.volume.abs();
    let alpha = cfg.dimensionless_groups()?.alpha;

    let projections: Vec<BandProjection> = schedule
        .par_iter()
        .map(|&mu| project_lowest_band(&cooled(cfg, mu)?, band_size, None, opts))
        .collect::<Result<_>>()?;

    let reliable = band_size.saturating_sub(2).max(1);
    let mut report = ReductionReport {
        alpha,
        theta,
        band_size,
        schedule: schedule.to_vec(),
        projected_j: Vec::new(),
        target_j,
        j_error: Vec::new(),
        commutator_estimate: Vec::new(),
        commutator_error: Vec::new(),
        gaps: Vec::new(),
        j_slope: None,
        commutator_slope: None,
        spectra: Vec::new(),
    };
    for p in projections {
        let ev = p.r_eigenvalues();
        let err = ev
            .iter()
            .zip(&report.target_j)
            .take(reliable)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let comm = projected_commutator(&p.x1, &p.x2)?;
        report.projected_j.push(ev);
        report.j_error.push(err);
        report.commutator_estimate.push(comm.value);
        report.commutator_error.push((comm.value - theta).abs());
        report.gaps.push(p.gap);
        report.spectra.push(p.spectrum);
    }
    report.j_slope = log_log_slope(&report.schedule, &report.j_error);
    report.commutator_slope = log_log_slope(&report.schedule, &report.commutator_error);
    Ok(report)
}

impl ReductionReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("mu,n,projected_J_hbar,target_J_hbar,abs_error_hbar\n");
        for (mu, row) in self.schedule.iter().zip(&self.projected_j) {
            for (n, (p, t)) in row.iter().zip(&self.target_j).enumerate() {
                writeln!(s, "{mu:.16e},{n},{p:.16e},{t:.16e},{:.16e}", (p - t).abs()).unwrap();
            }
        }
        s
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Two-column `(mu, error)` series for plotting: `(file stem, contents)`.
    pub fn plot_series(&self) -> Vec<(&'static str, String)> {
        let col = |ys: &[f64]| {
            let mut s = String::from("# mu error\n");
            for (x, y) in self.schedule.iter().zip(ys) {
                writeln!(s, "{x:.16e} {y:.16e}").unwrap();
            }
            s
        };
        vec![
            ("j_error", col(&self.j_error)),
            ("commutator_error", col(&self.commutator_error)),
        ]
    }

    /// Every solved state carries an integer canonical angular momentum.
    pub fn canonical_j_integer(&self) -> bool {
        self.spectra
            .iter()
            .flat_map(|t| &t.rows)
            .all(|r| r.j_canonical == r.ell)
    }
}
