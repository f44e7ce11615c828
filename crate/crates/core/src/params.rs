//! Physical parameters, source configurations and the flat JSON config format.
//!
//! A [`Config`] bundles the particle/trap constants ([`SystemParams`]) with the
//! external sources ([`FieldConfig`]). Two source families exist:
//!
//! * [`FieldKind::MagneticHMW`]: an electric dipole `d` in the field of a
//!   magnetically charged filament (line density `lambda`) plus a uniform
//!   magnetic charge density `rho`.
//! * [`FieldKind::ElectricAC`]: a magnetic dipole `mu` (stored in the dipole
//!   slot) in the field of an electrically charged filament plus a uniform
//!   charge density, with the vacuum constants `eps0`, `mu0`.
//!
//! Every downstream computation sees the sources only through the
//! [`Coupling`], i.e. the effective gauge potential
//! `a_i = eps_ij x_j (g_line / (2 pi r^2) + g_vol / 2)` with `eps_12 = +1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    MagneticHMW,
    ElectricAC,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::MagneticHMW => "MagneticHMW",
            FieldKind::ElectricAC => "ElectricAC",
        }
    }
}

/// Particle and trap constants. `d` is the dipole magnitude in the slot role
/// of the active field family (electric `d` for HMW, magnetic `mu` for AC).
/// It is signed: the duality maps flip its sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub m: f64,
    pub d: f64,
    pub k_trap: f64,
    pub c: f64,
    pub hbar: f64,
}

impl SystemParams {
    pub fn omega_0(&self) -> f64 {
        (self.k_trap / self.m).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    pub kind: FieldKind,
    /// Line source strength (`lambda_m` or `lambda_e`).
    pub lambda: f64,
    /// Volume source strength (`rho_m` or `rho_e`).
    pub rho: f64,
    pub eps0: Option<f64>,
    pub mu0: Option<f64>,
}

impl FieldConfig {
    pub fn eps0(&self) -> Result<f64> {
        self.eps0
            .ok_or_else(|| Error::config("eps0", "required for ElectricAC configs and duality maps"))
    }

    pub fn mu0(&self) -> Result<f64> {
        self.mu0
            .ok_or_else(|| Error::config("mu0", "required for duality maps"))
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

/// Signed strengths of the effective gauge potential seen by the dipole.
///
/// `line` is `d lambda_m / c^2` (HMW) or `-mu lambda_e / (eps0 c^2)` (AC);
/// `volume` is the same with the volume densities. Both carry units of
/// momentum times length (`kg m^2 / s`) and momentum per length respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub line: f64,
    pub volume: f64,
}

impl Coupling {
    /// Signed flux-analog entering the sector index `ell + alpha`.
    pub fn alpha(&self, hbar: f64) -> f64 {
        self.line / (2.0 * PI * hbar)
    }

    /// Signed effective cyclotron frequency.
    pub fn omega_c(&self, m: f64) -> f64 {
        self.volume / m
    }
}

/// A complete, validated configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub field: FieldConfig,
    pub params: SystemParams,
    pub natural_units: bool,
}

/// `beta = omega_c / omega_0`; infinite when the trap is switched off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessGroups {
    pub alpha: f64,
    pub beta: f64,
    pub beta_infinite: bool,
    /// `hbar c^2 / (d rho)`; absent when the volume source vanishes.
    pub theta: Option<f64>,
}

/// Cyclotron, trap and combined frequencies of a configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequencies {
    pub omega_0: f64,
    /// Signed effective cyclotron frequency.
    pub omega_c: f64,
    pub omega: f64,
}

impl Frequencies {
    /// Oscillator length `sqrt(hbar / (m Omega))`.
    pub fn length(&self, params: &SystemParams) -> f64 {
        (params.hbar / (params.m * self.omega)).sqrt()
    }
}

impl Config {
    pub fn coupling(&self) -> Result<Coupling> {
        let p = &self.params;
        let c2 = p.c * p.c;
        match self.field.kind {
            FieldKind::MagneticHMW => Ok(Coupling {
                line: p.d * self.field.lambda / c2,
                volume: p.d * self.field.rho / c2,
            }),
            FieldKind::ElectricAC => {
                let eps0 = self.field.eps0()?;
                Ok(Coupling {
                    line: -p.d * self.field.lambda / (eps0 * c2),
                    volume: -p.d * self.field.rho / (eps0 * c2),
                })
            }
        }
    }

    pub fn frequencies(&self) -> Result<Frequencies> {
        let omega_0 = self.params.omega_0();
        let omega_c = self.coupling()?.omega_c(self.params.m);
        Ok(Frequencies {
            omega_0,
            omega_c,
            omega: (omega_0 * omega_0 + 0.25 * omega_c * omega_c).sqrt(),
        })
    }

    /// Orientation-free groups in the conventions of the two families:
    /// `alpha = lambda_m d / (2 pi hbar c^2)` or `mu lambda_e / (2 pi hbar c^2 eps0)`,
    /// `theta = hbar c^2 / (d rho_m)` or `hbar c^2 eps0 / (mu rho_e)`.
    /// These are the quantities the duality maps preserve.
    pub fn dimensionless_groups(&self) -> Result<DimensionlessGroups> {
        let coupling = self.coupling()?;
        let orientation = match self.field.kind {
            FieldKind::MagneticHMW => 1.0,
            FieldKind::ElectricAC => -1.0,
        };
        let hbar = self.params.hbar;
        let alpha = orientation * coupling.alpha(hbar);
        let omega_c = orientation * coupling.omega_c(self.params.m);
        let omega_0 = self.params.omega_0();
        let (beta, beta_infinite) = if omega_0 == 0.0 {
            (f64::INFINITY, true)
        } else {
            (omega_c / omega_0, false)
        };
        let theta = if coupling.volume == 0.0 {
            None
        } else {
            Some(orientation * hbar / coupling.volume)
        };
        Ok(DimensionlessGroups {
            alpha,
            beta,
            beta_infinite,
            theta,
        })
    }

    pub fn theta(&self) -> Result<f64> {
        self.dimensionless_groups()?.theta.ok_or_else(|| {
            Error::DegenerateConstraint("theta needs a non-zero volume source (d rho != 0)".into())
        })
    }

    /// Single validation path shared by the loader and every module.
    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        let finite = |key: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(key, format!("must be finite, got {v}")))
            }
        };
        finite("m", p.m)?;
        finite("d_or_mu", p.d)?;
        finite("K", p.k_trap)?;
        finite("c", p.c)?;
        finite("hbar", p.hbar)?;
        finite("lambda", self.field.lambda)?;
        finite("rho", self.field.rho)?;
        if p.m <= 0.0 {
            return Err(Error::config("m", "mass must be positive"));
        }
        if p.d == 0.0 {
            return Err(Error::config("d_or_mu", "dipole magnitude must be non-zero"));
        }
        if p.c <= 0.0 {
            return Err(Error::config("c", "speed of light must be positive"));
        }
        if p.hbar <= 0.0 {
            return Err(Error::config("hbar", "action quantum must be positive"));
        }
        if p.k_trap < 0.0 {
            return Err(Error::config("K", "trap stiffness must be non-negative"));
        }
        if self.natural_units && (p.c != 1.0 || p.hbar != 1.0) {
            return Err(Error::config(
                "natural_units",
                "natural units require hbar = c = 1",
            ));
        }
        for (key, v) in [("eps0", self.field.eps0), ("mu0", self.field.mu0)] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::config(key, "vacuum constants must be positive"));
                }
            }
        }
        if self.field.kind == FieldKind::ElectricAC && self.field.eps0.is_none() {
            return Err(Error::config("eps0", "required for ElectricAC configs"));
        }
        Ok(())
    }

    /// Parses and validates the flat JSON document.
    pub fn from_json_str(text: &str) -> Result<Config> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| {
            Error::config(
                "<json>",
                format!("line {} column {}: {e}", e.line(), e.column()),
            )
        })?;
        file.into_config()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ConfigFile::from(self)).expect("config serializes")
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&ConfigFile::from(self)).expect("config serializes");
        s.push('\n');
        s
    }

    /// Applies a `key=value` override. Besides the file keys, the derived key
    /// `alpha` sets the line source so that the flux-analog takes that value.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || -> Result<f64> {
            value
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::config(key, format!("expected a number, got `{value}`")))
        };
        match key {
            "kind" => {
                self.field.kind = match value.trim() {
                    "MagneticHMW" => FieldKind::MagneticHMW,
                    "ElectricAC" => FieldKind::ElectricAC,
                    other => return Err(Error::config(key, format!("unknown kind `{other}`"))),
                }
            }
            "lambda" => self.field.lambda = num()?,
            "rho" => self.field.rho = num()?,
            "m" => self.params.m = num()?,
            "d_or_mu" => self.params.d = num()?,
            "K" => self.params.k_trap = num()?,
            "c" => self.params.c = num()?,
            "hbar" => self.params.hbar = num()?,
            "eps0" => self.field.eps0 = Some(num()?),
            "mu0" => self.field.mu0 = Some(num()?),
            "natural_units" => {
                self.natural_units = value
                    .trim()
                    .parse::<bool>()
                    .map_err(|_| Error::config(key, "expected true or false"))?
            }
            "alpha" => {
                let alpha = num()?;
                let p = &self.params;
                let scale = 2.0 * PI * p.hbar * p.c * p.c / p.d;
                self.field.lambda = match self.field.kind {
                    FieldKind::MagneticHMW => alpha * scale,
                    FieldKind::ElectricAC => alpha * scale * self.field.eps0()?,
                };
            }
            other => return Err(Error::config(other, "unknown config key")),
        }
        self.validate()
    }

    pub const OVERRIDE_KEYS: [&'static str; 12] = [
        "kind",
        "lambda",
        "rho",
        "m",
        "d_or_mu",
        "K",
        "c",
        "hbar",
        "eps0",
        "mu0",
        "natural_units",
        "alpha",
    ];
}

#[allow(non_snake_case)]
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    kind: FieldKind,
    lambda: f64,
    rho: f64,
    m: f64,
    d_or_mu: f64,
    K: f64,
    #[serde(default)]
    c: Option<f64>,
    #[serde(default)]
    hbar: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu0: Option<f64>,
    #[serde(default)]
    natural_units: bool,
}

impl ConfigFile {
    fn into_config(self) -> Result<Config> {
        let unit = |key: &str, v: Option<f64>| match (v, self.natural_units) {
            (Some(v), _) => Ok(v),
            (None, true) => Ok(1.0),
            (None, false) => Err(Error::config(key, "required unless natural_units is true")),
        };
        let config = Config {
            field: FieldConfig {
                kind: self.kind,
                lambda: self.lambda,
                rho: self.rho,
                eps0: self.eps0,
                mu0: self.mu0,
            },
            params: SystemParams {
                m: self.m,
                d: self.d_or_mu,
                k_trap: self.K,
                c: unit("c", self.c)?,
                hbar: unit("hbar", self.hbar)?,
            },
            natural_units: self.natural_units,
        };
        config.validate()?;
        Ok(config)
    }
}

impl From<&Config> for ConfigFile {
    fn from(cfg: &Config) -> Self {
        ConfigFile {
            kind: cfg.field.kind,
            lambda: cfg.field.lambda,
            rho: cfg.field.rho,
            m: cfg.params.m,
            d_or_mu: cfg.params.d,
            K: cfg.params.k_trap,
            c: Some(cfg.params.c),
            hbar: Some(cfg.params.hbar),
            eps0: cfg.field.eps0,
            mu0: cfg.field.mu0,
            natural_units: cfg.natural_units,
        }
    }
}

/// Natural-units HMW config (`hbar = c = d = 1`) with the given flux-analog,
/// volume source and trap; handy for tests and examples.
pub fn natural_hmw(alpha: f64, rho: f64, m: f64, k_trap: f64) -> Config {
    Config {
        field: FieldConfig {
            kind: FieldKind::MagneticHMW,
            lambda: 2.0 * PI * alpha,
            rho,
            eps0: Some(1.0),
            mu0: Some(1.0),
        },
        params: SystemParams {
            m,
            d: 1.0,
            k_trap,
            c: 1.0,
            hbar: 1.0,
        },
        natural_units: true,
    }
}
