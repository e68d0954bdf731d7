//! The affine Hecke algebra over `Z[v, v⁻¹]` (`q = v²`) in the `T_w` basis.
//!
//! Relations: `T_x T_y = T_{xy}` when lengths add, and
//! `(T_s − q)(T_s + 1) = 0` for affine simple reflections `s`. Length-zero
//! elements multiply as in the group.

mod bernstein;
mod json;
mod specialize;

pub use bernstein::{bernstein_quotient, bernstein_relation_holds, BernsteinElement, CenterReport};
pub use json::{HeckeJson, HeckeTermJson};
pub use specialize::{group_algebra_product, SpecializedElement, Specialization};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact_arith::MultiLaurent;
use crate::root_weyl::{ExtAffineElement, RootDatum};

pub const V: &str = "v";

/// `v^k` as a Laurent polynomial in `v`.
pub fn v_pow(k: i32) -> MultiLaurent {
    MultiLaurent::monomial(&[V], vec![k], crate::exact_arith::rat(1))
}

/// `q = v²`.
pub fn q() -> MultiLaurent {
    v_pow(2)
}

pub fn laurent_int(c: i64) -> MultiLaurent {
    MultiLaurent::from_int(&[V], c)
}

/// A finite linear combination of basis elements `T_x`.
#[derive(Clone, Debug)]
pub struct HeckeElement {
    datum: Arc<RootDatum>,
    terms: BTreeMap<ExtAffineElement, MultiLaurent>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.datum.name() == other.datum.name() && self.terms == other.terms
    }
}

impl Eq for HeckeElement {}

impl HeckeElement {
    pub fn zero(datum: &Arc<RootDatum>) -> Self {
        Self { datum: Arc::clone(datum), terms: BTreeMap::new() }
    }

    /// The unit `T_e`.
    pub fn one(datum: &Arc<RootDatum>) -> Self {
        Self::basis(datum, &datum.identity())
    }

    /// The basis element `T_x`.
    pub fn basis(datum: &Arc<RootDatum>, x: &ExtAffineElement) -> Self {
        Self::monomial(datum, x, laurent_int(1))
    }

    pub fn monomial(datum: &Arc<RootDatum>, x: &ExtAffineElement, c: MultiLaurent) -> Self {
        let mut h = Self::zero(datum);
        h.add_term(x.clone(), c);
        h
    }

    /// `T_s` for the affine simple reflection with this label.
    pub fn simple(datum: &Arc<RootDatum>, label: usize) -> Result<Self> {
        let s = datum
            .affine_reflection(label)
            .ok_or_else(|| Error::InvalidElement(format!("no affine reflection labelled {label}")))?;
        Ok(Self::basis(datum, s))
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtAffineElement, &MultiLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &ExtAffineElement) -> MultiLaurent {
        self.terms.get(x).cloned().unwrap_or_else(|| MultiLaurent::zero(&[V]))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal length of a basis element in the support.
    pub fn support_length(&self) -> usize {
        self.terms.keys().map(|x| self.datum.length(x)).max().unwrap_or(0)
    }

    fn add_term(&mut self, x: ExtAffineElement, c: MultiLaurent) {
        if c.is_zero() {
            return;
        }
        let c = c.with_vars(&[V.to_string()]).expect("Hecke coefficients live in Z[v, v^-1]");
        match self.terms.get_mut(&x) {
            Some(cur) => {
                let s = &*cur + &c;
                if s.is_zero() {
                    self.terms.remove(&x);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(x, c);
            }
        }
    }

    fn same_datum(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.datum, &other.datum) || self.datum.name() == other.datum.name() {
            Ok(())
        } else {
            Err(Error::RootDatumMismatch(self.datum.name().into(), other.datum.name().into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_datum(other)?;
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&laurent_int(-1)))
    }

    pub fn scale(&self, c: &MultiLaurent) -> Self {
        let mut out = Self::zero(&self.datum);
        for (x, a) in &self.terms {
            out.add_term(x.clone(), a * c);
        }
        out
    }

    /// Right multiplication by `T_s` for an affine simple reflection `s`.
    pub fn mul_simple(&self, s: &ExtAffineElement) -> Self {
        let q = q();
        let qm1 = &q - &laurent_int(1);
        let mut out = Self::zero(&self.datum);
        for (x, c) in &self.terms {
            let xs = self.datum.mul(x, s);
            if self.datum.length(&xs) > self.datum.length(x) {
                out.add_term(xs, c.clone());
            } else {
                out.add_term(x.clone(), c * &qm1);
                out.add_term(xs, c * &q);
            }
        }
        out
    }

    /// Right multiplication by `T_ω` for a length-zero `ω`.
    pub fn mul_omega(&self, omega: &ExtAffineElement) -> Self {
        let mut out = Self::zero(&self.datum);
        for (x, c) in &self.terms {
            out.add_term(self.datum.mul(x, omega), c.clone());
        }
        out
    }

    /// Right multiplication by a basis element, peeling a reduced word.
    pub fn mul_basis(&self, y: &ExtAffineElement) -> Self {
        let rw = self.datum.reduced_word(y);
        let mut acc = self.clone();
        for l in &rw.word {
            acc = acc.mul_simple(self.datum.affine_reflection(*l).unwrap());
        }
        acc.mul_omega(&rw.omega)
    }

    /// Product in the Hecke algebra.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_datum(other)?;
        let mut out = Self::zero(&self.datum);
        for (y, c) in &other.terms {
            let part = self.mul_basis(y).scale(c);
            for (x, a) in part.terms {
                out.add_term(x, a);
            }
        }
        Ok(out)
    }

    /// `T_s⁻¹ = q⁻¹ T_s + (q⁻¹ − 1) T_e`.
    pub fn simple_inverse(datum: &Arc<RootDatum>, s: &ExtAffineElement) -> Self {
        let qi = v_pow(-2);
        let mut h = Self::monomial(datum, s, qi.clone());
        h.add_term(datum.identity(), &qi - &laurent_int(1));
        h
    }

    /// `T_w⁻¹`, as `T_{ω⁻¹} T_{s_k}⁻¹ ⋯ T_{s_1}⁻¹` for `w = s_1 ⋯ s_k ω`.
    pub fn invert_basis(datum: &Arc<RootDatum>, w: &ExtAffineElement) -> Self {
        let rw = datum.reduced_word(w);
        let mut acc = Self::basis(datum, &datum.inverse(&rw.omega));
        for l in rw.word.iter().rev() {
            let s = datum.affine_reflection(*l).unwrap();
            acc = acc.mul(&Self::simple_inverse(datum, s)).unwrap();
        }
        acc
    }

    /// Commutator `ab − ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Whether some coefficient has an odd power of `v`.
    pub fn has_odd_v_powers(&self) -> bool {
        self.terms.values().any(|c| c.terms().any(|(e, _)| e[0] % 2 != 0))
    }
}

/// The generators `T_s` (affine simple `s`) and `T_ω` (Ω generators and
/// their inverses).
pub fn algebra_generators(datum: &Arc<RootDatum>) -> Vec<HeckeElement> {
    let mut gens: Vec<HeckeElement> =
        datum.affine_reflections().iter().map(|a| HeckeElement::basis(datum, &a.element)).collect();
    for om in datum.omega_generators() {
        gens.push(HeckeElement::basis(datum, om));
        gens.push(HeckeElement::basis(datum, &datum.inverse(om)));
    }
    gens
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(x, c)| {
                let w = &self.datum.weyl_element(x.w).word;
                format!("({c})*T[{:?},{:?}]", x.lambda, w)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests;
