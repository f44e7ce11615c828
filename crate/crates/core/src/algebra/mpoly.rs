//! Sparse multivariate polynomials with big-integer coefficients over a fixed
//! set of named parameter symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const NSYM: usize = 15;

/// Parameter symbols in storage order. The first symbol is the most
/// significant in the lexicographic monomial order.
pub const SYMBOLS: [&str; NSYM] = [
    "m",
    "d",
    "c",
    "K",
    "lambda_m",
    "rho_m",
    "hbar",
    "pi",
    "q",
    "Phi",
    "mu",
    "lambda_e",
    "rho_e",
    "sqrt_eps0",
    "sqrt_mu0",
];

pub type Exponents = [u16; NSYM];

pub fn symbol_index(name: &str) -> Option<usize> {
    SYMBOLS.iter().position(|s| *s == name)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    // Keyed by exponent vector; BTreeMap order on arrays is lex, so the last
    // entry is the leading term.
    terms: BTreeMap<Exponents, BigInt>,
}

const ZERO_EXP: Exponents = [0; NSYM];

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ZERO_EXP, c);
        }
        MPoly { terms }
    }

    pub fn var(index: usize) -> Self {
        let mut e = ZERO_EXP;
        e[index] = 1;
        MPoly::monomial(BigInt::one(), e)
    }

    pub fn symbol(name: &str) -> Option<Self> {
        symbol_index(name).map(MPoly::var)
    }

    pub fn monomial(c: BigInt, e: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&ZERO_EXP).is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&ZERO_EXP).cloned(),
            _ => None,
        }
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff_sign_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(mul_exp(ea, eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        if k.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Gcd of the integer coefficients (non-negative).
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Coefficient of `x_var^k`, as a polynomial in the remaining symbols.
    fn coeff_in(&self, var: usize, k: u16) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut e2 = *e;
                e2[var] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    fn shift(&self, var: usize, k: u16) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[var] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    fn min_exponents(&self) -> Exponents {
        let mut out = [u16::MAX; NSYM];
        for e in self.terms.keys() {
            for i in 0..NSYM {
                out[i] = out[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            ZERO_EXP
        } else {
            out
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (le, lc) = divisor.leading()?;
        if divisor.terms.len() == 1 {
            let mut out = BTreeMap::new();
            for (e, c) in &self.terms {
                let q = div_exp(e, le)?;
                let (qc, r) = c.div_rem(lc);
                if !r.is_zero() {
                    return None;
                }
                out.insert(q, qc);
            }
            return Some(MPoly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((re, rc)) = rem.leading() {
            let qe = div_exp(re, le)?;
            let (qc, r) = rc.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let t = MPoly::monomial(qc, qe);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Makes the leading coefficient positive.
    pub fn normalize_sign(self) -> MPoly {
        if self.leading_coeff_sign_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// Greatest common divisor, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        gcd(self, other).normalize_sign()
    }

    pub fn eval(&self, values: &[f64; NSYM]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        v *= values[i].powi(k as i32);
                    }
                }
                v
            })
            .sum()
    }

    /// Whether the polynomial is a single term with coefficient ±1 or an
    /// integer; used by the text printer to decide on parentheses.
    pub fn is_single_factor(&self) -> bool {
        match self.terms.len() {
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                let nvars = e.iter().filter(|k| **k > 0).count();
                (nvars == 0 && c.is_positive()) || (nvars == 1 && c.is_one())
            }
            _ => false,
        }
    }
}

fn mul_exp(a: &Exponents, b: &Exponents) -> Exponents {
    let mut e = *a;
    for i in 0..NSYM {
        e[i] += b[i];
    }
    e
}

fn div_exp(a: &Exponents, b: &Exponents) -> Option<Exponents> {
    let mut e = *a;
    for i in 0..NSYM {
        e[i] = a[i].checked_sub(b[i])?;
    }
    Some(e)
}

fn first_var(a: &MPoly, b: &MPoly) -> Option<usize> {
    (0..NSYM).find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

fn content_in(p: &MPoly, var: usize) -> MPoly {
    let mut g = MPoly::zero();
    for k in 0..=p.degree_in(var) {
        let c = p.coeff_in(var, k);
        if !c.is_zero() {
            g = gcd(&g, &c).normalize_sign();
            if g.is_one() {
                break;
            }
        }
    }
    g
}

fn primitive_in(p: &MPoly, var: usize) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides")
}

fn pseudo_rem(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let db = b.degree_in(var);
    let lb = b.coeff_in(var, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coeff_in(var, dr);
        r = r.mul(&lb).sub(&lr.mul(&b.shift(var, dr - db)));
    }
    r
}

fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if let Some(c) = a.as_constant() {
        return MPoly::constant(c.gcd(&b.integer_content()));
    }
    if let Some(c) = b.as_constant() {
        return MPoly::constant(c.gcd(&a.integer_content()));
    }
    if a.n_terms() == 1 || b.n_terms() == 1 {
        let ic = a.integer_content().gcd(&b.integer_content());
        let ma = a.min_exponents();
        let mb = b.min_exponents();
        let mut e = ZERO_EXP;
        for i in 0..NSYM {
            e[i] = ma[i].min(mb[i]);
        }
        return MPoly::monomial(ic, e);
    }
    let var = first_var(a, b).expect("non-constant");
    if a.degree_in(var) == 0 {
        return gcd(a, &content_in(b, var));
    }
    if b.degree_in(var) == 0 {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd(&ca, &cb);
    let (mut p, mut q) = (
        a.div_exact(&ca).expect("content divides"),
        b.div_exact(&cb).expect("content divides"),
    );
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            // Primitive inputs with a remainder free of `var` are coprime in `var`.
            q = MPoly::one();
            break;
        }
        p = q;
        q = primitive_in(&r, var);
    }
    let g = primitive_in(&q, var).normalize_sign();
    c.mul(&g)
}

fn fmt_monomial(e: &Exponents) -> Vec<String> {
    let mut out = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => out.push(SYMBOLS[i].to_string()),
            _ => out.push(format!("{}^{}", SYMBOLS[i], k)),
        }
    }
    out
}

impl fmt::Display for MPoly {
    /// Terms from the leading one down, e.g. `2*c^2`, `d*rho_m - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut factors = fmt_monomial(e);
            let mag = c.abs();
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            let body = factors.join("*");
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(name: &str) -> MPoly {
        MPoly::symbol(name).unwrap()
    }

    #[test]
    fn display_orders_leading_first() {
        let p = s("d").mul(&s("rho_m")).add(&MPoly::constant(-3));
        assert_eq!(p.to_string(), "d*rho_m - 3");
        assert_eq!(MPoly::constant(2).mul(&s("c").pow(2)).to_string(), "2*c^2");
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let x = s("d");
        let y = s("c");
        let common = x.add(&y);
        let a = common.mul(&x.sub(&MPoly::constant(2)));
        let b = common.mul(&y.add(&MPoly::constant(5))).scale(&BigInt::from(6));
        let g = a.gcd(&b);
        assert_eq!(g, common);
        assert!(a.div_exact(&g).is_some());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = s("m").add(&s("K"));
        let b = s("m").sub(&s("K"));
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn div_exact_detects_remainder() {
        let a = s("m").pow(2).add(&MPoly::one());
        assert!(a.div_exact(&s("m").add(&MPoly::one())).is_none());
        let b = s("m").pow(2).sub(&MPoly::one());
        let q = b.div_exact(&s("m").add(&MPoly::one())).unwrap();
        assert_eq!(q, s("m").sub(&MPoly::one()));
    }
}
