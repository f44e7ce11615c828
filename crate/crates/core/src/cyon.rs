//! Cyon spin, the split of the canonical angular momentum into kinetic and
//! surface parts, and the spin rate under a time-dependent line density.

use std::f64::consts::PI;

use serde::Serialize;

use crate::algebra::{ParamField, SymbolicConfig};
use crate::error::Result;
use crate::params::{Config, FieldKind};

/// `s = lambda_m d / (2 pi hbar c^2)` (or `mu lambda_e / (2 pi hbar c^2 eps0)`).
pub fn cyon_spin(cfg: &Config) -> Result<f64> {
    Ok(cfg.dimensionless_groups()?.alpha)
}

/// Exact spin and `(kinetic shift, surface term)` for symbolic or rational
/// inputs.
pub fn exact_split(cfg: &SymbolicConfig) -> (ParamField, ParamField, ParamField) {
    let spin = cfg.alpha();
    let surface = spin.neg();
    (spin.clone(), spin, surface)
}

/// Which cyon realization a split refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CyonModel {
    /// Dipole around a charged filament (the active config).
    Atom,
    /// Charge `q` around a solenoid with `q Phi / (2 pi c)` given in units of hbar.
    Charged { flux_shift_hbar: f64 },
}

/// `(J_k - J_c, J_s)` in units of hbar. The two always sum to zero.
pub fn boundary_term_split(cfg: &Config, model: CyonModel) -> Result<(f64, f64)> {
    let shift = match model {
        CyonModel::Atom => cyon_spin(cfg)?,
        CyonModel::Charged { flux_shift_hbar } => flux_shift_hbar,
    };
    Ok((shift, -shift))
}

/// `ds/dt = d lambda_dot / (2 pi hbar c^2)`; for the electric family the
/// dipole and vacuum factors follow the spin formula.
pub fn spin_rate(cfg: &Config, lambda_dot: f64) -> Result<f64> {
    let p = &cfg.params;
    let base = p.d * lambda_dot / (2.0 * PI * p.hbar * p.c * p.c);
    match cfg.field.kind {
        FieldKind::MagneticHMW => Ok(base),
        FieldKind::ElectricAC => Ok(base / cfg.field.eps0()?),
    }
}

/// Rate of the canonical angular momentum, which is a Noether charge of
/// rotations whatever the time dependence of the line density.
pub fn canonical_j_rate(_cfg: &Config, _lambda_dot: f64) -> f64 {
    0.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyonReport {
    pub spin: f64,
    pub boundary_term_hbar: f64,
    pub kinetic_shift_hbar: f64,
    pub spin_rate_per_s: Option<f64>,
}

pub fn cyon_report(cfg: &Config, lambda_dot: Option<f64>) -> Result<CyonReport> {
    let spin = cyon_spin(cfg)?;
    let (kinetic_shift_hbar, boundary_term_hbar) = boundary_term_split(cfg, CyonModel::Atom)?;
    let spin_rate_per_s = lambda_dot.map(|ld| spin_rate(cfg, ld)).transpose()?;
    Ok(CyonReport {
        spin,
        boundary_term_hbar,
        kinetic_shift_hbar,
        spin_rate_per_s,
    })
}

impl CyonReport {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::natural_hmw;

    #[test]
    fn spin_examples() {
        let cfg = natural_hmw(0.3, 0.0, 1.0, 1.0);
        assert!((cyon_spin(&cfg).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(cyon_spin(&natural_hmw(0.0, 2.0, 1.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn split_is_complementary() {
        let cfg = natural_hmw(0.3, 2.0, 1.0, 1.0);
        let (k, s) = boundary_term_split(&cfg, CyonModel::Atom).unwrap();
        assert_eq!(k, -s);
        let charged = boundary_term_split(&cfg, CyonModel::Charged { flux_shift_hbar: 0.3 }).unwrap();
        assert!((charged.0 - k).abs() < 1e-15 && (charged.1 - s).abs() < 1e-15);
        let zero = natural_hmw(0.0, 0.0, 1.0, 1.0);
        assert_eq!(boundary_term_split(&zero, CyonModel::Atom).unwrap(), (0.0, -0.0));
    }

    #[test]
    fn exact_spin_from_symbolic_line_density() {
        let mut sym = SymbolicConfig::hmw();
        sym.lambda = ParamField::ratio(3, 5).mul(&ParamField::sym("pi"));
        sym.dipole = ParamField::one();
        sym.c = ParamField::one();
        sym.hbar = ParamField::one();
        let (spin, kinetic, surface) = exact_split(&sym);
        assert_eq!(spin, ParamField::ratio(3, 10));
        assert_eq!(kinetic, spin);
        assert_eq!(surface, ParamField::ratio(-3, 10));
    }

    #[test]
    fn rate_examples() {
        let cfg = natural_hmw(0.3, 0.0, 1.0, 1.0);
        assert_eq!(spin_rate(&cfg, 0.0).unwrap(), 0.0);
        assert!((spin_rate(&cfg, 2.0 * PI).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(canonical_j_rate(&cfg, 2.0 * PI), 0.0);
    }

    #[test]
    fn report_json_keys() {
        let r = cyon_report(&natural_hmw(0.3, 0.0, 1.0, 1.0), Some(0.0)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json_string()).unwrap();
        for key in ["spin", "boundary_term_hbar", "kinetic_shift_hbar", "spin_rate_per_s"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
