//! Polynomial phase-space functions in `(x1, x2, p1, p2)` with parameter-valued
//! coefficients.
//!
//! The ring carries one extra generator `u = 1 / r^2`. Monomials are kept in
//! normal form with respect to `(x1^2 + x2^2) u = 1`: whenever `u` is present
//! the power of `x1` is at most one (`x1^2 u -> u^0 - x2^2 u`).

use std::collections::BTreeMap;
use std::fmt;

use super::mpoly::NSYM;
use super::ratfun::ParamField;

/// Exponents of `(x1, x2, p1, p2, u)`.
pub type PhaseExp = [u16; 5];

pub const PHASE_VARS: [&str; 5] = ["x1", "x2", "p1", "p2", "u"];
const X1: usize = 0;
const X2: usize = 1;
const P1: usize = 2;
const U: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PhasePoly {
    terms: BTreeMap<PhaseExp, ParamField>,
}

impl PhasePoly {
    pub fn zero() -> Self {
        PhasePoly::default()
    }

    pub fn one() -> Self {
        PhasePoly::constant(ParamField::one())
    }

    pub fn constant(c: ParamField) -> Self {
        PhasePoly::term(c, [0; 5])
    }

    pub fn term(c: ParamField, e: PhaseExp) -> Self {
        let mut p = PhasePoly::zero();
        p.add_term(e, c);
        p
    }

    fn gen(i: usize) -> Self {
        let mut e = [0; 5];
        e[i] = 1;
        PhasePoly::term(ParamField::one(), e)
    }

    /// Coordinate `x_i`, `i` in `{1, 2}`.
    pub fn x(i: usize) -> Self {
        assert!(i == 1 || i == 2, "coordinate index must be 1 or 2");
        PhasePoly::gen(X1 + i - 1)
    }

    /// Momentum `p_i`, `i` in `{1, 2}`.
    pub fn p(i: usize) -> Self {
        assert!(i == 1 || i == 2, "momentum index must be 1 or 2");
        PhasePoly::gen(P1 + i - 1)
    }

    /// `u = 1 / (x1^2 + x2^2)`.
    pub fn u() -> Self {
        PhasePoly::gen(U)
    }

    /// Generator by name (`x1`, `x2`, `p1`, `p2`, `u`).
    pub fn generator(name: &str) -> Option<Self> {
        PHASE_VARS.iter().position(|v| *v == name).map(PhasePoly::gen)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PhaseExp, &ParamField)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient if the polynomial has no phase-space dependence.
    pub fn as_constant(&self) -> Option<ParamField> {
        match self.terms.len() {
            0 => Some(ParamField::zero()),
            1 => self.terms.get(&[0; 5]).cloned(),
            _ => None,
        }
    }

    fn add_raw(&mut self, e: PhaseExp, c: ParamField) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Adds `c * monomial(e)`, rewriting into normal form.
    fn add_term(&mut self, e: PhaseExp, c: ParamField) {
        if c.is_zero() {
            return;
        }
        if e[U] == 0 || e[X1] < 2 {
            self.add_raw(e, c);
            return;
        }
        // x1^a u^k with a >= 2, k >= 1: x1^2 u = 1 - x2^2 u.
        let mut lower = e;
        lower[X1] -= 2;
        lower[U] -= 1;
        self.add_term(lower, c.clone());
        let mut other = e;
        other[X1] -= 2;
        other[X2] += 2;
        self.add_term(other, c.neg());
    }

    pub fn add(&self, o: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_raw(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &PhasePoly) -> PhasePoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PhasePoly {
        PhasePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn scale(&self, k: &ParamField) -> PhasePoly {
        if k.is_zero() {
            return PhasePoly::zero();
        }
        PhasePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.mul(k))).collect(),
        }
    }

    pub fn mul(&self, o: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for i in 0..5 {
                    e[i] += eb[i];
                }
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> PhasePoly {
        let mut out = PhasePoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to generator `var` (0..4 = x1, x2, p1, p2).
    /// `u` is not independent: `du/dx_i = -2 x_i u^2`.
    fn partial(&self, var: usize) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = *e;
                e2[var] -= 1;
                out.add_term(e2, c.scale_int(e[var] as i64));
            }
            if var <= X2 && e[U] > 0 {
                let mut e2 = *e;
                e2[U] += 1;
                e2[var] += 1;
                out.add_term(e2, c.scale_int(-2 * e[U] as i64));
            }
        }
        out
    }

    /// `d/dx_i`, `i` in `{1, 2}`.
    pub fn dx(&self, i: usize) -> PhasePoly {
        self.partial(X1 + i - 1)
    }

    /// `d/dp_i`, `i` in `{1, 2}`.
    pub fn dp(&self, i: usize) -> PhasePoly {
        self.partial(P1 + i - 1)
    }

    /// Replaces `p1`, `p2` by the given polynomials.
    pub fn substitute_momenta(&self, p1: &PhasePoly, p2: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (e, c) in &self.terms {
            let mut base = *e;
            base[2] = 0;
            base[3] = 0;
            let t = PhasePoly::term(c.clone(), base)
                .mul(&p1.pow(e[2] as u32))
                .mul(&p2.pow(e[3] as u32));
            out = out.add(&t);
        }
        out
    }

    /// Numeric value at a phase-space point `(x1, x2, p1, p2)`.
    pub fn eval(&self, params: &[f64; NSYM], point: [f64; 4]) -> f64 {
        let r2 = point[0] * point[0] + point[1] * point[1];
        let vals = [point[0], point[1], point[2], point[3], 1.0 / r2];
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.eval(params);
                for i in 0..5 {
                    if e[i] > 0 {
                        v *= vals[i].powi(e[i] as i32);
                    }
                }
                v
            })
            .sum()
    }

    /// Maximum total degree in the phase-space generators (u counts as -2).
    pub fn degree(&self) -> i32 {
        self.terms
            .keys()
            .map(|e| e[0] as i32 + e[1] as i32 + e[2] as i32 + e[3] as i32 - 2 * e[4] as i32)
            .max()
            .unwrap_or(0)
    }
}

fn fmt_phase_monomial(e: &PhaseExp) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(PHASE_VARS[i].to_string()),
            _ => parts.push(format!("{}^{}", PHASE_VARS[i], k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for PhasePoly {
    /// Canonical text: terms in descending monomial order joined by ` + `,
    /// each written `(coeff)*monomial`, or bare when the coefficient is 1 or
    /// the monomial is constant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let single = self.terms.len() == 1;
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = fmt_phase_monomial(e);
            if mono.is_empty() {
                if single || c.is_atomic() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhasePoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_times_u_is_one() {
        let r2 = PhasePoly::x(1).pow(2).add(&PhasePoly::x(2).pow(2));
        assert_eq!(r2.mul(&PhasePoly::u()), PhasePoly::one());
        assert_eq!(r2.mul(&PhasePoly::u().pow(2)), PhasePoly::u());
    }

    #[test]
    fn derivative_of_u() {
        // d/dx1 (x1 u) = u - 2 x1^2 u^2 = -u + 2 x2^2 u^2
        let f = PhasePoly::x(1).mul(&PhasePoly::u());
        let expect = PhasePoly::u()
            .neg()
            .add(&PhasePoly::x(2).pow(2).mul(&PhasePoly::u().pow(2)).scale(&ParamField::int(2)));
        assert_eq!(f.dx(1), expect);
    }

    #[test]
    fn numeric_value_respects_rewrite() {
        let f = PhasePoly::x(1).pow(3).mul(&PhasePoly::u());
        let params = [1.0; NSYM];
        let (x, y) = (0.7_f64, -1.3_f64);
        let direct = x.powi(3) / (x * x + y * y);
        assert!((f.eval(&params, [x, y, 0.0, 0.0]) - direct).abs() < 1e-14);
    }

    #[test]
    fn display_form() {
        let k = ParamField::sym("d")
            .mul(&ParamField::sym("rho_m"))
            .div(&ParamField::int(2).mul(&ParamField::sym("c").pow(2).unwrap()))
            .unwrap();
        let f = PhasePoly::x(1).pow(2).scale(&k);
        assert_eq!(f.to_string(), "(d*rho_m/(2*c^2))*x1^2");
    }
}
