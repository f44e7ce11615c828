//! Configurations whose entries are exact parameter-field values.

use super::ratfun::ParamField;
use crate::error::{Error, Result};
use crate::params::{Config, FieldKind};

/// Exact counterpart of [`Config`]. Vacuum constants are stored through their
/// square roots so the duality maps stay polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicConfig {
    pub kind: FieldKind,
    pub lambda: ParamField,
    pub rho: ParamField,
    pub dipole: ParamField,
    pub m: ParamField,
    pub k_trap: ParamField,
    pub c: ParamField,
    pub hbar: ParamField,
    pub sqrt_eps0: ParamField,
    pub sqrt_mu0: ParamField,
}

impl SymbolicConfig {
    /// Fully symbolic magnetic configuration.
    pub fn hmw() -> Self {
        SymbolicConfig {
            kind: FieldKind::MagneticHMW,
            lambda: ParamField::sym("lambda_m"),
            rho: ParamField::sym("rho_m"),
            dipole: ParamField::sym("d"),
            m: ParamField::sym("m"),
            k_trap: ParamField::sym("K"),
            c: ParamField::sym("c"),
            hbar: ParamField::sym("hbar"),
            sqrt_eps0: ParamField::sym("sqrt_eps0"),
            sqrt_mu0: ParamField::sym("sqrt_mu0"),
        }
    }

    /// Fully symbolic electric configuration.
    pub fn ac() -> Self {
        SymbolicConfig {
            kind: FieldKind::ElectricAC,
            lambda: ParamField::sym("lambda_e"),
            rho: ParamField::sym("rho_e"),
            dipole: ParamField::sym("mu"),
            ..SymbolicConfig::hmw()
        }
    }

    /// Exact rational image of a numeric config. Vacuum constants default to 1
    /// and their square roots are rounded to the nearest double.
    pub fn from_config(cfg: &Config) -> Result<Self> {
        let p = &cfg.params;
        let f = ParamField::from_f64;
        Ok(SymbolicConfig {
            kind: cfg.field.kind,
            lambda: f(cfg.field.lambda)?,
            rho: f(cfg.field.rho)?,
            dipole: f(p.d)?,
            m: f(p.m)?,
            k_trap: f(p.k_trap)?,
            c: f(p.c)?,
            hbar: f(p.hbar)?,
            sqrt_eps0: f(cfg.field.eps0.unwrap_or(1.0).sqrt())?,
            sqrt_mu0: f(cfg.field.mu0.unwrap_or(1.0).sqrt())?,
        })
    }

    pub fn eps0(&self) -> ParamField {
        self.sqrt_eps0.mul(&self.sqrt_eps0)
    }

    /// Strength of the line part of the effective potential,
    /// `a_i = eps_ij x_j (line / (2 pi) u + volume / 2)`.
    pub fn line_coupling(&self) -> ParamField {
        self.family_factor().mul(&self.lambda)
    }

    pub fn volume_coupling(&self) -> ParamField {
        self.family_factor().mul(&self.rho)
    }

    /// `d / c^2` (magnetic) or `-mu / (eps0 c^2)` (electric).
    pub fn family_factor(&self) -> ParamField {
        let c2 = self.c.mul(&self.c);
        match self.kind {
            FieldKind::MagneticHMW => self.dipole.div(&c2).expect("c != 0"),
            FieldKind::ElectricAC => self
                .dipole
                .neg()
                .div(&self.eps0().mul(&c2))
                .expect("eps0 c^2 != 0"),
        }
    }

    /// Orientation-free flux analog (`lambda_m d / (2 pi hbar c^2)` or
    /// `mu lambda_e / (2 pi hbar c^2 eps0)`).
    pub fn alpha(&self) -> ParamField {
        let two_pi_hbar = ParamField::int(2).mul(&ParamField::sym("pi")).mul(&self.hbar);
        let signed = self.line_coupling().div(&two_pi_hbar).expect("hbar != 0");
        match self.kind {
            FieldKind::MagneticHMW => signed,
            FieldKind::ElectricAC => signed.neg(),
        }
    }

    pub fn expect_kind(&self, kind: FieldKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected: kind.name(),
                actual: self.kind.name(),
            })
        }
    }
}
