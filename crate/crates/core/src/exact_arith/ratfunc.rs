use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{MultiLaurent, Rational};
use crate::error::{Error, Result};

/// A quotient of Laurent polynomials.
///
/// Kept as a normalized pair without gcd reduction beyond exact division:
/// common monomial content is cleared and the denominator's leading
/// coefficient is made 1. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiLaurent,
    den: MultiLaurent,
}

impl RationalFunction {
    pub fn new(num: MultiLaurent, den: MultiLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_laurent(p: MultiLaurent) -> Self {
        let one = MultiLaurent::one(&[]).with_vars(p.vars()).unwrap();
        Self { num: p, den: one }
    }

    pub fn zero(vars: &[&str]) -> Self {
        Self::from_laurent(MultiLaurent::zero(vars))
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::from_laurent(MultiLaurent::one(vars))
    }

    pub fn numerator(&self) -> &MultiLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &MultiLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this equals, if the denominator divides.
    pub fn as_laurent(&self) -> Option<MultiLaurent> {
        self.num.exact_div(&self.den)
    }

    fn normalized(num: MultiLaurent, den: MultiLaurent) -> Self {
        let vars = {
            let mut v = num.vars().to_vec();
            for w in den.vars() {
                if !v.contains(w) {
                    v.push(w.clone());
                }
            }
            v
        };
        let num = num.with_vars(&vars).unwrap();
        let den = den.with_vars(&vars).unwrap();
        if num.is_zero() {
            return Self { den: MultiLaurent::one(&[]).with_vars(&vars).unwrap(), num };
        }
        if let Some(q) = num.exact_div(&den) {
            return Self { den: MultiLaurent::one(&[]).with_vars(&vars).unwrap(), num: q };
        }
        // clear the monomial content of the denominator, and make it monic
        let dmin = den.min_exponents();
        let neg: Vec<i32> = dmin.iter().map(|x| -x).collect();
        let (num, den) = (num.shift(&neg), den.shift(&neg));
        let lead = den.leading_term().unwrap().1.clone();
        let inv = lead.recip();
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn mul_laurent(&self, p: &MultiLaurent) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn div_laurent(&self, p: &MultiLaurent) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.num.clone(), &self.den * p))
    }

    /// Evaluates at rational values; `DivisionByZero` at a pole.
    pub fn evaluate(&self, values: &[(&str, Rational)]) -> Result<Rational> {
        let d = self.den.evaluate(values)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.evaluate(values)? / d)
    }

    pub fn invert_var(&self, name: &str) -> Self {
        Self::normalized(self.num.invert_var(name), self.den.invert_var(name))
    }

    /// Substitutes variables in numerator and denominator.
    pub fn substitute(
        &self,
        assignments: &std::collections::HashMap<String, MultiLaurent>,
    ) -> Result<Self> {
        Self::new(self.num.substitute(assignments)?, self.den.substitute(assignments)?)
    }

    /// Denominator has positive leading coefficient.
    pub fn is_normalized(&self) -> bool {
        self.den.leading_term().map(|(_, c)| c.is_positive()).unwrap_or(false)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction::normalized(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RationalFunction::normalized(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() || rhs.num.is_zero() {
            let vars: Vec<&str> = self.num.vars().iter().map(String::as_str).collect();
            return RationalFunction::zero(&vars);
        }
        // cancel a denominator against the other numerator when it divides
        if let Some(a) = rhs.num.exact_div(&self.den) {
            if let Some(b) = self.num.exact_div(&rhs.den) {
                return RationalFunction::from_laurent(&a * &b);
            }
            return RationalFunction::normalized(&a * &self.num, rhs.den.clone());
        }
        if let Some(b) = self.num.exact_div(&rhs.den) {
            return RationalFunction::normalized(&b * &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl From<MultiLaurent> for RationalFunction {
    fn from(p: MultiLaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::from_laurent(MultiLaurent::zero(&[]))
    }
}
