//! Rational functions in the parameter symbols, kept in lowest terms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::mpoly::{MPoly, NSYM};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and a positive leading coefficient in
/// the denominator. Structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamField {
    num: MPoly,
    den: MPoly,
}

impl ParamField {
    pub fn zero() -> Self {
        ParamField {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        ParamField::int(1)
    }

    pub fn int(k: i64) -> Self {
        ParamField {
            num: MPoly::constant(k),
            den: MPoly::one(),
        }
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ParamField::new(MPoly::constant(p), MPoly::constant(q)).expect("non-zero denominator")
    }

    /// A parameter symbol by name; `None` for unknown names.
    pub fn symbol(name: &str) -> Option<Self> {
        MPoly::symbol(name).map(ParamField::from_poly)
    }

    pub fn sym(name: &str) -> Self {
        ParamField::symbol(name).unwrap_or_else(|| panic!("unknown parameter symbol `{name}`"))
    }

    pub fn from_poly(p: MPoly) -> Self {
        ParamField {
            num: p,
            den: MPoly::one(),
        }
    }

    /// Exact rational value of a finite double.
    pub fn from_f64(x: f64) -> Result<Self> {
        let r = BigRational::from_f64(x)
            .ok_or_else(|| Error::Algebra(format!("cannot represent {x} exactly")))?;
        ParamField::new(MPoly::constant(r.numer().clone()), MPoly::constant(r.denom().clone()))
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Algebra("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(ParamField::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading_coeff_sign_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(ParamField { num, den })
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Rational constant value, if the function does not depend on any symbol.
    pub fn as_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(self.num.as_constant()?, self.den.as_constant()?))
    }

    pub fn add(&self, o: &ParamField) -> ParamField {
        if self.den == o.den {
            return ParamField::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        ParamField::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .unwrap()
    }

    pub fn sub(&self, o: &ParamField) -> ParamField {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ParamField {
        ParamField {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &ParamField) -> ParamField {
        if self.is_zero() || o.is_zero() {
            return ParamField::zero();
        }
        ParamField::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn inv(&self) -> Result<ParamField> {
        ParamField::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &ParamField) -> Result<ParamField> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<ParamField> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let n = k.unsigned_abs();
        Ok(ParamField {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }

    pub fn scale_int(&self, k: i64) -> ParamField {
        self.mul(&ParamField::int(k))
    }

    /// Numeric value under an assignment of every symbol.
    pub fn eval(&self, values: &[f64; NSYM]) -> f64 {
        self.num.eval(values) / self.den.eval(values)
    }

    /// Whether the printed form needs parentheses when used as a factor.
    pub fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.is_single_factor()
    }

    pub fn signum_if_constant(&self) -> Option<i32> {
        let r = self.as_rational()?;
        Some(if r.is_zero() {
            0
        } else if r.is_positive() {
            1
        } else {
            -1
        })
    }
}

impl From<i64> for ParamField {
    fn from(k: i64) -> Self {
        ParamField::int(k)
    }
}

impl From<BigInt> for ParamField {
    fn from(k: BigInt) -> Self {
        ParamField::from_poly(MPoly::constant(k))
    }
}

impl Default for ParamField {
    fn default() -> Self {
        ParamField::zero()
    }
}

impl fmt::Display for ParamField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.n_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.is_single_factor() {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for ParamField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamField({self})")
    }
}

impl One for ParamField {
    fn one() -> Self {
        ParamField::one()
    }
}

impl Zero for ParamField {
    fn zero() -> Self {
        ParamField::zero()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl std::ops::Add for ParamField {
    type Output = ParamField;
    fn add(self, o: ParamField) -> ParamField {
        ParamField::add(&self, &o)
    }
}

impl std::ops::Mul for ParamField {
    type Output = ParamField;
    fn mul(self, o: ParamField) -> ParamField {
        ParamField::mul(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let d = ParamField::sym("d");
        let c = ParamField::sym("c");
        let a = d.mul(&c).div(&c.pow(3).unwrap()).unwrap();
        assert_eq!(a.to_string(), "d/c^2");
        let half = ParamField::ratio(2, -4);
        assert_eq!(half.to_string(), "-1/2");
    }

    #[test]
    fn sum_cancels_exactly() {
        let m = ParamField::sym("m");
        let k = ParamField::sym("K");
        let x = m.div(&k.add(&m)).unwrap().add(&k.div(&k.add(&m)).unwrap());
        assert!(x.is_one());
    }

    #[test]
    fn prints_parenthesized_denominators() {
        let x = ParamField::sym("d")
            .mul(&ParamField::sym("rho_m"))
            .div(&ParamField::int(2).mul(&ParamField::sym("c").pow(2).unwrap()))
            .unwrap();
        assert_eq!(x.to_string(), "d*rho_m/(2*c^2)");
    }

    #[test]
    fn exact_double_conversion() {
        let x = ParamField::from_f64(0.1).unwrap();
        assert_eq!(x.eval(&[0.0; NSYM]), 0.1);
        assert!(ParamField::from_f64(f64::NAN).is_err());
    }
}
