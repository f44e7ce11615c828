//! Closed-form levels of the trapped dipole:
//! `E / (hbar Omega) = 2n + |ell + SIGMA alpha| + 1 + S kappa (ell + SIGMA alpha)`.

use crate::error::Result;
use crate::params::Config;

/// Sign in front of the flux analog in the sector index.
///
/// Fixed by the 2D lattice oracle ([`super::oracle2d::determine_signs`]) at
/// `omega_c = 2`, `omega_0 = 1`, `alpha = 0.3`: labelled by the measured
/// `<L_z>`, the six lowest lattice levels are closest to `(SIGMA, S) = (+1, +1)`
/// (max relative deviation 4.5e-2, against 0.33 to 0.76 for the other three
/// choices). The acceptance suite repeats the run.
pub const SIGMA: i32 = 1;

/// Sign of the linear cyclotron term. Fixed by the same oracle run as [`SIGMA`].
pub const S: i32 = 1;

/// Level `(n, ell)` for explicit sign choices, in units of `hbar Omega`.
pub fn energy_with_signs(n: u32, ell: i64, alpha: f64, kappa: f64, sigma: i32, s: i32) -> f64 {
    let nu = ell as f64 + sigma as f64 * alpha;
    2.0 * n as f64 + nu.abs() + 1.0 + s as f64 * kappa * nu
}

/// Level `(n, ell)` of a configuration, in units of `hbar Omega`.
pub fn closed_form_energy(n: u32, ell: i64, cfg: &Config) -> Result<f64> {
    let g = cfg.coupling()?;
    let f = cfg.frequencies()?;
    let alpha = g.alpha(cfg.params.hbar);
    Ok(energy_with_signs(n, ell, alpha, f.omega_c / (2.0 * f.omega), SIGMA, S))
}

/// Exact `<rho^2>` (oscillator lengths squared) of level `(n, ell)`.
pub fn closed_form_rho2(n: u32, ell: i64, alpha: f64) -> f64 {
    2.0 * n as f64 + (ell as f64 + SIGMA as f64 * alpha).abs() + 1.0
}
