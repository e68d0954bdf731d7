//! Specialization of `v` (or `q`) to a rational number.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::HeckeElement;
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::root_weyl::{ExtAffineElement, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// Value of `q`; fails on odd powers of `v`.
    Q(Rational),
    /// Value of `v` (a chosen square root of `q`).
    V(Rational),
}

/// An element of the specialized algebra, `Q`-linear in the `T_w`.
#[derive(Clone, Debug)]
pub struct SpecializedElement {
    pub datum: Arc<RootDatum>,
    pub terms: BTreeMap<ExtAffineElement, Rational>,
}

fn rat_pow(c: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

impl PartialEq for SpecializedElement {
    fn eq(&self, other: &Self) -> bool {
        self.datum.name() == other.datum.name() && self.terms == other.terms
    }
}

impl Eq for SpecializedElement {}

impl SpecializedElement {
    pub fn zero(datum: &Arc<RootDatum>) -> Self {
        Self { datum: Arc::clone(datum), terms: BTreeMap::new() }
    }

    pub fn basis(datum: &Arc<RootDatum>, x: &ExtAffineElement) -> Self {
        let mut e = Self::zero(datum);
        e.add_term(x.clone(), Rational::one());
        e
    }

    pub fn add_term(&mut self, x: ExtAffineElement, c: Rational) {
        let cur = self.terms.remove(&x).unwrap_or_else(Rational::zero) + c;
        if !cur.is_zero() {
            self.terms.insert(x, cur);
        }
    }
}

impl HeckeElement {
    pub fn specialize(&self, at: &Specialization) -> Result<SpecializedElement> {
        let (base, halve) = match at {
            Specialization::Q(c) => (c, true),
            Specialization::V(c) => (c, false),
        };
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = SpecializedElement::zero(self.datum());
        for (x, c) in self.terms() {
            let mut val = Rational::zero();
            for (e, a) in c.terms() {
                let k = if halve {
                    if e[0] % 2 != 0 {
                        return Err(Error::NeedsSquareRoot);
                    }
                    e[0] / 2
                } else {
                    e[0]
                };
                val += a * rat_pow(base, k);
            }
            out.add_term(x.clone(), val);
        }
        Ok(out)
    }
}

/// Product in the group algebra `Q[W_a]`, using only the group law.
pub fn group_algebra_product(a: &SpecializedElement, b: &SpecializedElement) -> Result<SpecializedElement> {
    let mut out = SpecializedElement::zero(&a.datum);
    for (x, c) in &a.terms {
        for (y, d) in &b.terms {
            out.add_term(a.datum.wa_multiply(x, y)?, c * d);
        }
    }
    Ok(out)
}
