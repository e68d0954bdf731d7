//! Bernstein elements `θ_λ` and the central elements `z_λ`.

use std::sync::Arc;

use serde::Serialize;

use super::{algebra_generators, laurent_int, q, v_pow, HeckeElement};
use crate::error::{Error, Result};
use crate::root_weyl::RootDatum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinElement {
    pub lambda: Vec<i64>,
    pub expansion: HeckeElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub lambda: Vec<i64>,
    pub orbit_size: usize,
    pub support_size: usize,
    pub central: bool,
}

fn check_lambda(datum: &RootDatum, lambda: &[i64]) -> Result<()> {
    if lambda.len() != datum.cochar_rank() {
        return Err(Error::InvalidElement(format!(
            "cocharacter {lambda:?} has length {}, {} needs {}",
            lambda.len(),
            datum.name(),
            datum.cochar_rank()
        )));
    }
    Ok(())
}

impl HeckeElement {
    /// `v^{ℓ(t_{λ₂}) − ℓ(t_{λ₁})} T_{t_{λ₁}} T_{t_{λ₂}}⁻¹` for dominant `λ₁`, `λ₂`.
    pub fn theta_with_split(datum: &Arc<RootDatum>, l1: &[i64], l2: &[i64]) -> Result<Self> {
        check_lambda(datum, l1)?;
        check_lambda(datum, l2)?;
        for l in [l1, l2] {
            if !datum.is_dominant(l) {
                return Err(Error::NotDominant(l.to_vec()));
            }
        }
        let t1 = datum.translation(l1);
        let t2 = datum.translation(l2);
        let e = datum.length(&t2) as i32 - datum.length(&t1) as i32;
        let h = Self::basis(datum, &t1).mul(&Self::invert_basis(datum, &t2))?;
        Ok(h.scale(&v_pow(e)))
    }

    /// `θ_λ` via the canonical dominant split.
    pub fn theta(datum: &Arc<RootDatum>, lambda: &[i64]) -> Result<BernsteinElement> {
        check_lambda(datum, lambda)?;
        let (l1, l2) = datum.dominant_split(lambda)?;
        Ok(BernsteinElement { lambda: lambda.to_vec(), expansion: Self::theta_with_split(datum, &l1, &l2)? })
    }

    /// `z_λ = Σ_{μ ∈ Wλ} θ_μ`.
    pub fn center_element(datum: &Arc<RootDatum>, lambda: &[i64]) -> Result<Self> {
        check_lambda(datum, lambda)?;
        if !datum.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        let mut z = Self::zero(datum);
        for mu in datum.weyl_orbit(lambda) {
            z = z.add(&Self::theta(datum, &mu)?.expansion)?;
        }
        Ok(z)
    }

    /// True when `self` commutes with every `T_s` and every `T_ω^{±1}`.
    pub fn is_central(&self) -> Result<bool> {
        for g in algebra_generators(self.datum()) {
            if !self.commutator(&g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn center_report(datum: &Arc<RootDatum>, lambda: &[i64]) -> Result<CenterReport> {
        let z = Self::center_element(datum, lambda)?;
        Ok(CenterReport {
            lambda: lambda.to_vec(),
            orbit_size: datum.weyl_orbit(lambda).len(),
            support_size: z.len(),
            central: z.is_central()?,
        })
    }
}

/// `(θ_λ − θ_{sλ}) / (1 − θ_{−α∨})` for the finite simple reflection `i`
/// (0-based), expanded as a finite sum of θ's.
pub fn bernstein_quotient(datum: &Arc<RootDatum>, i: usize, lambda: &[i64]) -> Result<HeckeElement> {
    let alpha = &datum.simple_roots()[i];
    let coroot = &datum.simple_coroots()[i];
    let k = RootDatum::pairing(alpha, lambda);
    let shifted = |j: i64| -> Vec<i64> { lambda.iter().zip(coroot).map(|(l, c)| l + j * c).collect() };
    let mut out = HeckeElement::zero(datum);
    if k > 0 {
        for j in 0..k {
            out = out.add(&HeckeElement::theta(datum, &shifted(-j))?.expansion)?;
        }
    } else {
        for j in 1..=-k {
            out = out.sub(&HeckeElement::theta(datum, &shifted(j))?.expansion)?;
        }
    }
    Ok(out)
}

/// Checks `T_s θ_λ − θ_{sλ} T_s = (q−1)(θ_λ − θ_{sλ})/(1 − θ_{−α∨})` for the
/// finite simple reflection `i` (0-based).
pub fn bernstein_relation_holds(datum: &Arc<RootDatum>, i: usize, lambda: &[i64]) -> Result<bool> {
    let s = datum.finite(datum.simple_reflection_index(i));
    let ts = HeckeElement::basis(datum, &s);
    let slam = datum.act(s.w, lambda);
    let th = HeckeElement::theta(datum, lambda)?.expansion;
    let ths = HeckeElement::theta(datum, &slam)?.expansion;
    let lhs = ts.mul(&th)?.sub(&ths.mul(&ts)?)?;
    let rhs = bernstein_quotient(datum, i, lambda)?.scale(&(&q() - &laurent_int(1)));
    Ok(lhs == rhs)
}
