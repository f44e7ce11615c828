mod common;

use cyon_core::algebra::SymbolicConfig;
use cyon_core::reduction::{
    band_origin, convergence_study, cooled, project_lowest_band, projected_commutator,
    reduced_j_analytic, reduced_j_symbolic,
};
use cyon_core::spectral::SolverOptions;
use cyon_core::{Error, FieldKind};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Spectrum of `-(g_vol / 2)(x1^2 + x2^2) - alpha` when `[x1, x2] = i theta`,
/// from a truncated ladder-operator representation.
fn ladder_spectrum(theta: f64, g_vol: f64, alpha: f64, size: usize) -> Vec<f64> {
    let mut a = DMatrix::<Complex64>::zeros(size, size);
    for k in 1..size {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    let ad = a.adjoint();
    let s = (theta / 2.0).sqrt();
    let x1 = (&a + &ad) * Complex64::new(s, 0.0);
    let x2 = (&ad - &a) * Complex64::new(0.0, s);
    let r2 = &x1 * &x1 + &x2 * &x2;
    let op = r2.map(|z| z.re) * (-g_vol / 2.0) - DMatrix::identity(size, size) * alpha;
    let mut ev: Vec<f64> = op.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

#[test]
fn ladder_oracle_reproduces_analytic_values() {
    let cfg = common::standard();
    let g = cfg.coupling().unwrap();
    let theta = cfg.dimensionless_groups().unwrap().theta.unwrap();
    let ev = ladder_spectrum(theta, g.volume, g.alpha(1.0), 200);
    // Truncation spoils one level, near n = size / 2 after sorting.
    for n in 0..60 {
        let exact = reduced_j_analytic(n as u32, &cfg).unwrap();
        assert!((ev[n] - exact).abs() < 1e-9, "n={n}: {} vs {exact}", ev[n]);
    }
}

#[test]
fn symbolic_and_numeric_reduced_j_agree() {
    let sym = SymbolicConfig::hmw();
    assert_eq!(
        reduced_j_symbolic(0, &sym).to_string(),
        "(-d*lambda_m - c^2*hbar*pi)/(2*c^2*hbar*pi)"
    );
    let cfg = common::standard();
    for n in 0..5 {
        let v = reduced_j_analytic(n, &cfg).unwrap();
        assert!((v - (-(n as f64 + 0.5) - 0.3)).abs() < 1e-12);
    }
}

#[test]
fn reduction_needs_a_stabilizing_volume_source() {
    let mut cfg = common::standard();
    cfg.field.rho = -2.0;
    assert!(matches!(reduced_j_analytic(0, &cfg), Err(Error::ReductionUndefined(_))));
    cfg.field.rho = 0.0;
    assert!(cooled(&cfg, 0.01).is_err());
    assert_eq!(cfg.field.kind, FieldKind::MagneticHMW);
}

#[test]
fn band_starts_next_to_the_flux() {
    assert_eq!(band_origin(0.3, 2.0), (-1, -1));
    assert_eq!(band_origin(0.3, -2.0), (0, 1));
    assert_eq!(band_origin(-0.3, 2.0), (0, -1));
}

#[test]
fn commutator_approaches_theta_quadratically() {
    let cfg = common::standard();
    let opts = SolverOptions::default();
    let errs: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
        .iter()
        .map(|&mu| {
            let p = project_lowest_band(&cooled(&cfg, mu).unwrap(), 12, None, &opts).unwrap();
            (projected_commutator(&p.x1, &p.x2).unwrap().value - 0.5).abs()
        })
        .collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 4.0).abs() < 0.1, "{errs:?}");
    }
}

#[test]
fn projected_band_is_isolated_and_hermitian() {
    let cfg = common::standard();
    let p = project_lowest_band(&cooled(&cfg, 1e-2).unwrap(), 10, None, &SolverOptions::default()).unwrap();
    assert!(p.gap > 0.5);
    assert!((&p.x1 - p.x1.adjoint()).norm() < 1e-12);
    assert!((&p.x2 - p.x2.adjoint()).norm() < 1e-12);
    assert!(p.spectrum.rows.iter().all(|r| r.j_canonical == r.ell));
    let small = project_lowest_band(&cooled(&cfg, 1e-2).unwrap(), 3, None, &SolverOptions::default());
    assert!(small.is_ok());
    assert!(projected_commutator(&small.unwrap().x1, &DMatrix::zeros(3, 3)).is_err());
}

#[test]
fn study_reports_are_deterministic() {
    let cfg = common::standard();
    let opts = SolverOptions::default();
    let a = convergence_study(&cfg, &[1e-1, 1e-2, 1e-3], 8, &opts).unwrap();
    let b = convergence_study(&cfg, &[1e-1, 1e-2, 1e-3], 8, &opts).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_json_string(), b.to_json_string());
    assert!(a.canonical_j_integer());
    assert!(convergence_study(&cfg, &[1e-1, 1e-2], 8, &opts).is_err());
    assert!(convergence_study(&cfg, &[1e-2, 1e-1, 1e-3], 8, &opts).is_err());
}
