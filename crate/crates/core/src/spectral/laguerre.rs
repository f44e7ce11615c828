//! Generalized-Laguerre basis for one angular sector.
//!
//! With `x = w rho^2` the basis functions are
//! `phi_k(rho) = sqrt(2w) x^(a/2) e^(-x/2) L~_k^a(x)`, orthonormal under
//! `rho d rho`, where `L~` are the normalized Laguerre polynomials and
//! `a = |nu|` is the sector's centrifugal index. Every basis function has the
//! correct `rho^|nu|` behaviour at the origin for any real `nu`.

use statrs::function::gamma::ln_gamma;

use super::tridiag::SymTridiag;

/// Matrix of `-(1/2) Laplacian_nu + rho^2 / 2 + kappa nu` (energies in units of
/// hbar Omega, lengths in units of the oscillator length).
pub fn hamiltonian(size: usize, a: f64, w: f64, kappa_nu: f64) -> SymTridiag {
    let dscale = (1.0 + w * w) / (2.0 * w);
    let oscale = -(1.0 - w * w) / (2.0 * w);
    let diag = (0..size)
        .map(|k| (2.0 * k as f64 + a + 1.0) * dscale + kappa_nu)
        .collect();
    let off = (0..size.saturating_sub(1))
        .map(|k| oscale * (((k + 1) as f64) * (k as f64 + a + 1.0)).sqrt())
        .collect();
    SymTridiag::new(diag, off)
}

/// Matrix of `rho^2` in the same basis.
pub fn rho_squared(size: usize, a: f64, w: f64) -> SymTridiag {
    let diag = (0..size).map(|k| (2.0 * k as f64 + a + 1.0) / w).collect();
    let off = (0..size.saturating_sub(1))
        .map(|k| -(((k + 1) as f64) * (k as f64 + a + 1.0)).sqrt() / w)
        .collect();
    SymTridiag::new(diag, off)
}

/// Values `phi_k(rho)` for `k < size`.
pub fn basis_values(size: usize, a: f64, w: f64, rho: f64) -> Vec<f64> {
    let x = w * rho * rho;
    let mut out = Vec::with_capacity(size);
    if size == 0 {
        return out;
    }
    let envelope = if x == 0.0 {
        if a == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (0.5 * a * x.ln() - 0.5 * x).exp()
    };
    let pref = (2.0 * w).sqrt() * envelope;
    let mut prev = 0.0;
    let mut cur = (-0.5 * ln_gamma(a + 1.0)).exp();
    out.push(pref * cur);
    for k in 0..size - 1 {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - x) * cur - (kf * (kf + a)).sqrt() * prev)
            / ((kf + 1.0) * (kf + a + 1.0)).sqrt();
        prev = cur;
        cur = next;
        out.push(pref * cur);
    }
    out
}
