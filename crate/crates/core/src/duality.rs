//! Maps between the electric (AC) and magnetic (HMW) configurations.
//!
//! `dr1` takes an electric configuration to its magnetic dual and `dr2` goes
//! back with an extra minus sign, so either composition negates the sources
//! and the dipole. The flux analog `alpha`, `theta` and the cyclotron scale
//! are preserved; the effective coupling changes sign, which mirrors each
//! angular-momentum sector `ell -> -ell`.

use crate::algebra::SymbolicConfig;
use crate::error::Result;
use crate::params::{Config, FieldKind};

/// Electric to magnetic:
/// `lambda_m = sqrt(mu0/eps0) lambda_e`, `rho_m = sqrt(mu0/eps0) rho_e`,
/// `d = mu / sqrt(eps0 mu0)`.
pub fn dual_map_dr1(cfg: &Config) -> Result<Config> {
    cfg.field.expect_kind(FieldKind::ElectricAC)?;
    let eps0 = cfg.field.eps0()?;
    let mu0 = cfg.field.mu0()?;
    let k = (mu0 / eps0).sqrt();
    let mut out = *cfg;
    out.field.kind = FieldKind::MagneticHMW;
    out.field.lambda = k * cfg.field.lambda;
    out.field.rho = k * cfg.field.rho;
    out.params.d = cfg.params.d / (eps0 * mu0).sqrt();
    Ok(out)
}

/// Magnetic to electric:
/// `lambda_e = -sqrt(eps0/mu0) lambda_m`, `rho_e = -sqrt(eps0/mu0) rho_m`,
/// `mu = -sqrt(eps0 mu0) d`.
pub fn dual_map_dr2(cfg: &Config) -> Result<Config> {
    cfg.field.expect_kind(FieldKind::MagneticHMW)?;
    let eps0 = cfg.field.eps0()?;
    let mu0 = cfg.field.mu0()?;
    let k = (eps0 / mu0).sqrt();
    let mut out = *cfg;
    out.field.kind = FieldKind::ElectricAC;
    out.field.lambda = -k * cfg.field.lambda;
    out.field.rho = -k * cfg.field.rho;
    out.params.d = -(eps0 * mu0).sqrt() * cfg.params.d;
    Ok(out)
}

/// Applies whichever map matches the configuration's family.
pub fn dual_map(cfg: &Config) -> Result<Config> {
    match cfg.field.kind {
        FieldKind::ElectricAC => dual_map_dr1(cfg),
        FieldKind::MagneticHMW => dual_map_dr2(cfg),
    }
}

pub fn dual_map_dr1_symbolic(cfg: &SymbolicConfig) -> Result<SymbolicConfig> {
    cfg.expect_kind(FieldKind::ElectricAC)?;
    let k = cfg.sqrt_mu0.div(&cfg.sqrt_eps0)?;
    let s = cfg.sqrt_eps0.mul(&cfg.sqrt_mu0);
    Ok(SymbolicConfig {
        kind: FieldKind::MagneticHMW,
        lambda: k.mul(&cfg.lambda),
        rho: k.mul(&cfg.rho),
        dipole: cfg.dipole.div(&s)?,
        ..cfg.clone()
    })
}

pub fn dual_map_dr2_symbolic(cfg: &SymbolicConfig) -> Result<SymbolicConfig> {
    cfg.expect_kind(FieldKind::MagneticHMW)?;
    let k = cfg.sqrt_eps0.div(&cfg.sqrt_mu0)?;
    let s = cfg.sqrt_eps0.mul(&cfg.sqrt_mu0);
    Ok(SymbolicConfig {
        kind: FieldKind::ElectricAC,
        lambda: k.mul(&cfg.lambda).neg(),
        rho: k.mul(&cfg.rho).neg(),
        dipole: s.mul(&cfg.dipole).neg(),
        ..cfg.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{FieldConfig, SystemParams};

    fn ac() -> Config {
        Config {
            field: FieldConfig {
                kind: FieldKind::ElectricAC,
                lambda: 0.7,
                rho: -1.3,
                eps0: Some(2.5),
                mu0: Some(0.4),
            },
            params: SystemParams {
                m: 1.0,
                d: 0.9,
                k_trap: 1.0,
                c: 1.0,
                hbar: 1.0,
            },
            natural_units: true,
        }
    }

    #[test]
    fn composition_negates_sources() {
        let cfg = ac();
        let back = dual_map_dr2(&dual_map_dr1(&cfg).unwrap()).unwrap();
        assert_eq!(back.field.kind, FieldKind::ElectricAC);
        for (a, b) in [
            (back.field.lambda, -cfg.field.lambda),
            (back.field.rho, -cfg.field.rho),
            (back.params.d, -cfg.params.d),
        ] {
            assert!((a - b).abs() <= 4.0 * f64::EPSILON * b.abs());
        }
    }

    #[test]
    fn symbolic_composition_is_exact_negation() {
        let cfg = SymbolicConfig::ac();
        let back = dual_map_dr2_symbolic(&dual_map_dr1_symbolic(&cfg).unwrap()).unwrap();
        assert_eq!(back.lambda, cfg.lambda.neg());
        assert_eq!(back.rho, cfg.rho.neg());
        assert_eq!(back.dipole, cfg.dipole.neg());
        let hmw = SymbolicConfig::hmw();
        let back = dual_map_dr1_symbolic(&dual_map_dr2_symbolic(&hmw).unwrap()).unwrap();
        assert_eq!(back.lambda, hmw.lambda.neg());
    }

    #[test]
    fn alpha_is_invariant() {
        let cfg = SymbolicConfig::ac();
        let dual = dual_map_dr1_symbolic(&cfg).unwrap();
        assert_eq!(cfg.alpha(), dual.alpha());
        let g0 = ac().dimensionless_groups().unwrap();
        let g1 = dual_map_dr1(&ac()).unwrap().dimensionless_groups().unwrap();
        assert!((g0.alpha - g1.alpha).abs() < 1e-15);
        assert!((g0.theta.unwrap() - g1.theta.unwrap()).abs() < 1e-14);
    }

    #[test]
    fn wrong_family_is_rejected() {
        assert!(dual_map_dr2(&ac()).is_err());
        assert!(dual_map_dr1_symbolic(&SymbolicConfig::hmw()).is_err());
    }
}
