//! Source fields and the effective gauge potential at a point.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::{Config, FieldConfig, FieldKind};

pub type Vec2 = [f64; 2];

fn family_scale(cfg: &FieldConfig, kind: FieldKind) -> Result<f64> {
    cfg.expect_kind(kind)?;
    match kind {
        FieldKind::MagneticHMW => Ok(1.0),
        FieldKind::ElectricAC => Ok(1.0 / cfg.eps0()?),
    }
}

/// Field of the line source, `lambda x_i / (2 pi r^2)` (divided by `eps0` for
/// the electric family).
pub fn filament_field(cfg: &FieldConfig, kind: FieldKind, point: Vec2) -> Result<Vec2> {
    let s = family_scale(cfg, kind)?;
    let r2 = point[0] * point[0] + point[1] * point[1];
    if r2 == 0.0 {
        return Err(Error::SingularPoint);
    }
    let k = s * cfg.lambda / (2.0 * PI * r2);
    Ok([k * point[0], k * point[1]])
}

/// Field of the uniform volume source, `rho x_i / 2` (over `eps0` for the
/// electric family).
pub fn volume_field(cfg: &FieldConfig, kind: FieldKind, point: Vec2) -> Result<Vec2> {
    let s = family_scale(cfg, kind)?;
    let k = s * cfg.rho / 2.0;
    Ok([k * point[0], k * point[1]])
}

/// `a_i = eps_ij x_j (g_line / (2 pi r^2) + g_vol / 2)`, i.e.
/// `(d/c^2) eps_ij B_j` or `-(mu/c^2) eps_ij E_j`.
pub fn effective_gauge_potential(cfg: &Config, point: Vec2) -> Result<Vec2> {
    let g = cfg.coupling()?;
    let r2 = point[0] * point[0] + point[1] * point[1];
    let line = if g.line == 0.0 {
        0.0
    } else if r2 == 0.0 {
        return Err(Error::SingularPoint);
    } else {
        g.line / (2.0 * PI * r2)
    };
    let f = line + g.volume / 2.0;
    Ok([f * point[1], -f * point[0]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::natural_hmw;

    #[test]
    fn filament_field_examples() {
        let cfg = natural_hmw(1.0, 0.0, 1.0, 1.0);
        let b = filament_field(&cfg.field, FieldKind::MagneticHMW, [1.0, 0.0]).unwrap();
        assert!((b[0] - 1.0).abs() < 1e-15 && b[1] == 0.0);
        let b = filament_field(&cfg.field, FieldKind::MagneticHMW, [0.0, 2.0]).unwrap();
        assert_eq!(b[0], 0.0);
        assert!((b[1] - cfg.field.lambda / (4.0 * PI)).abs() < 1e-15);
        assert!(matches!(
            filament_field(&cfg.field, FieldKind::MagneticHMW, [0.0, 0.0]),
            Err(Error::SingularPoint)
        ));
        assert!(matches!(
            filament_field(&cfg.field, FieldKind::ElectricAC, [1.0, 0.0]),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn volume_field_examples() {
        let cfg = natural_hmw(0.0, 2.0, 1.0, 1.0);
        assert_eq!(volume_field(&cfg.field, FieldKind::MagneticHMW, [3.0, 4.0]).unwrap(), [3.0, 4.0]);
        assert_eq!(volume_field(&cfg.field, FieldKind::MagneticHMW, [0.0, 0.0]).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn gauge_potential_examples() {
        let cfg = natural_hmw(0.0, 2.0, 1.0, 1.0);
        assert_eq!(effective_gauge_potential(&cfg, [1.0, 0.0]).unwrap(), [0.0, -1.0]);
        let zero = natural_hmw(0.0, 0.0, 1.0, 1.0);
        assert_eq!(effective_gauge_potential(&zero, [0.0, 0.0]).unwrap(), [0.0, 0.0]);
        let line = natural_hmw(0.3, 0.0, 1.0, 1.0);
        assert!(matches!(effective_gauge_potential(&line, [0.0, 0.0]), Err(Error::SingularPoint)));
    }
}
