#![allow(dead_code)]

use cyon_core::algebra::{ParamField, PhasePoly};
use cyon_core::params::natural_hmw;
use cyon_core::Config;
use proptest::prelude::*;

/// Standard natural-units test config: alpha = 0.3, rho_m = 2, m = K = 1.
pub fn standard() -> Config {
    natural_hmw(0.3, 2.0, 1.0, 1.0)
}

/// Small rational, optionally times one parameter symbol.
pub fn coefficient() -> impl Strategy<Value = ParamField> {
    (
        -4i64..=4,
        1i64..=3,
        prop::sample::select(vec!["", "", "", "d", "rho_m", "c", "lambda_m"]),
    )
        .prop_filter_map("nonzero", |(p, q, s)| {
            if p == 0 {
                return None;
            }
            let r = ParamField::ratio(p, q);
            Some(if s.is_empty() { r } else { r.mul(&ParamField::sym(s)) })
        })
}

/// Polynomial in `(x1, x2, p1, p2, u)` with at most `max_terms` terms, each of
/// degree at most 2 per phase variable and at most 1 in `u`.
pub fn phase_poly(max_terms: usize) -> impl Strategy<Value = PhasePoly> {
    prop::collection::vec(
        (coefficient(), [0u16..=2, 0u16..=2, 0u16..=2, 0u16..=2, 0u16..=1]),
        1..=max_terms,
    )
    .prop_map(|terms| {
        terms
            .into_iter()
            .fold(PhasePoly::zero(), |acc, (c, e)| acc.add(&PhasePoly::term(c, e)))
    })
}

/// Point away from the origin, for numeric field checks.
pub fn plane_point() -> impl Strategy<Value = [f64; 2]> {
    (0.2f64..4.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| [r * t.cos(), r * t.sin()])
}
