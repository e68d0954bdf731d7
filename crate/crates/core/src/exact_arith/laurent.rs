//! Multivariate Laurent polynomials with rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

pub type Exponent = Vec<i32>;

/// A Laurent polynomial in named variables over Q.
///
/// Terms are keyed by exponent vectors whose length equals the number of
/// variables; zero coefficients are never stored. Operations between values
/// with different variable lists align them by name first.
#[derive(Clone, Debug, Default)]
pub struct MultiLaurent {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiLaurent {
    pub fn zero(vars: &[&str]) -> Self {
        Self { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut out = Self::zero(vars);
        if !c.is_zero() {
            out.terms.insert(vec![0; vars.len()], c);
        }
        out
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn from_int(vars: &[&str], c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(BigInt::from(c)))
    }

    /// The single variable `name`, in a ring whose only variable is `name`.
    pub fn var(name: &str) -> Self {
        Self::monomial(&[name], vec![1], Rational::one())
    }

    pub fn monomial(vars: &[&str], exp: Exponent, c: Rational) -> Self {
        assert_eq!(vars.len(), exp.len(), "exponent length must match variables");
        let mut out = Self::zero(vars);
        if !c.is_zero() {
            out.terms.insert(exp, c);
        }
        out
    }

    /// Builds from raw parts, dropping zero coefficients.
    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {:?} for variables {:?}",
                    e, vars
                )));
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if !seen.insert(v) {
                return Err(Error::Parse(format!("repeated variable {v}")));
            }
        }
        Ok(Self { vars, terms: map })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// Returns the scalar if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((exp, coeff))` when this is a single nonzero term, i.e. a unit.
    pub fn as_monomial(&self) -> Option<(&Exponent, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Coefficient of the given monomial (zero if absent).
    pub fn coeff(&self, exp: &[i32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `name^k` in a polynomial of one variable (or where the
    /// other exponents are zero).
    pub fn coeff_of(&self, name: &str, k: i32) -> Rational {
        match self.var_index(name) {
            Some(i) => {
                let mut e = vec![0; self.vars.len()];
                e[i] = k;
                self.coeff(&e)
            }
            None if k == 0 => self.as_constant().unwrap_or_else(Rational::zero),
            None => Rational::zero(),
        }
    }

    /// Re-expresses this polynomial over `vars`, which must contain every
    /// variable that actually occurs.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let map: Vec<Option<usize>> =
            self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut out = Self { vars: vars.to_vec(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => ne[j] = x,
                    None if x == 0 => {}
                    None => {
                        return Err(Error::DimensionMismatch(format!(
                            "variable {} missing from {:?}",
                            self.vars[i], vars
                        )))
                    }
                }
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = self.union_vars(other);
        (self.with_vars(&vars).unwrap(), other.with_vars(&vars).unwrap())
    }

    fn add_assign_scaled(&mut self, other: &Self, scale: &Rational) {
        debug_assert_eq!(self.vars, other.vars);
        for (e, c) in &other.terms {
            let v = c * scale;
            match self.terms.get_mut(e) {
                Some(x) => {
                    *x += v;
                    if x.is_zero() {
                        self.terms.remove(e);
                    }
                }
                None => {
                    self.terms.insert(e.clone(), v);
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial with exponent `shift` (same variables).
    pub fn shift(&self, shift: &[i32]) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&[]).with_vars(&self.vars).unwrap();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit (single nonzero term).
    pub fn inverse_monomial(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(
            &self.vars.iter().map(String::as_str).collect::<Vec<_>>(),
            e.iter().map(|x| -x).collect(),
            c.recip(),
        ))
    }

    /// Integer power, negative exponents allowed only for units.
    pub fn powi(&self, n: i32) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            let inv = self
                .inverse_monomial()
                .ok_or_else(|| Error::SubstitutionNotInvertible(self.to_string()))?;
            Ok(inv.pow((-n) as u32))
        }
    }

    /// Substitutes variables by Laurent polynomials. Variables not named in
    /// `assignments` are kept. Negative powers demand unit images.
    pub fn substitute(&self, assignments: &HashMap<String, MultiLaurent>) -> Result<Self> {
        let mut vars: Vec<String> =
            self.vars.iter().filter(|v| !assignments.contains_key(*v)).cloned().collect();
        for v in &self.vars {
            if let Some(img) = assignments.get(v) {
                for w in &img.vars {
                    if !vars.contains(w) {
                        vars.push(w.clone());
                    }
                }
            }
        }
        let images: Vec<Option<MultiLaurent>> = self
            .vars
            .iter()
            .map(|v| assignments.get(v).map(|img| img.with_vars(&vars).unwrap()))
            .collect();
        let kept: Vec<Option<usize>> =
            self.vars.iter().map(|v| if assignments.contains_key(v) { None } else { vars.iter().position(|w| w == v) }).collect();

        let mut out = Self { vars: vars.clone(), terms: BTreeMap::new() };
        // cache powers per variable
        let mut cache: HashMap<(usize, i32), MultiLaurent> = HashMap::new();
        for (e, c) in &self.terms {
            let mut mono_exp = vec![0; vars.len()];
            let mut factor = Self::constant(&[], c.clone()).with_vars(&vars).unwrap();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match (&images[i], kept[i]) {
                    (Some(img), _) => {
                        let p = match cache.get(&(i, x)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = img.powi(x).map_err(|_| {
                                    Error::SubstitutionNotInvertible(format!(
                                        "{} (image of {}^{})",
                                        img, self.vars[i], x
                                    ))
                                })?;
                                cache.insert((i, x), p.clone());
                                p
                            }
                        };
                        factor = &factor * &p;
                    }
                    (None, Some(j)) => mono_exp[j] += x,
                    (None, None) => unreachable!(),
                }
            }
            let term = factor.shift(&mono_exp);
            out.add_assign_scaled(&term, &Rational::one());
        }
        Ok(out)
    }

    /// Substitutes rational values for some variables.
    pub fn substitute_values(&self, values: &[(&str, Rational)]) -> Result<Self> {
        let map = values
            .iter()
            .map(|(n, c)| (n.to_string(), MultiLaurent::constant(&[], c.clone())))
            .collect();
        self.substitute(&map)
    }

    /// Evaluates at a full assignment of rational values.
    pub fn evaluate(&self, values: &[(&str, Rational)]) -> Result<Rational> {
        let r = self.substitute_values(values)?;
        r.as_constant().ok_or_else(|| {
            Error::DimensionMismatch(format!("variables {:?} left after evaluation", r.vars))
        })
    }

    /// Drops variables that never occur with a nonzero exponent.
    pub fn trim_vars(&self) -> Self {
        let used: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] != 0))
            .map(|(_, v)| v.clone())
            .collect();
        self.with_vars(&used).unwrap()
    }

    /// Componentwise minimum exponent over all terms (zero vector if empty).
    pub fn min_exponents(&self) -> Exponent {
        let mut it = self.terms.keys();
        match it.next() {
            None => vec![0; self.vars.len()],
            Some(first) => {
                let mut m = first.clone();
                for e in it {
                    for (a, b) in m.iter_mut().zip(e) {
                        *a = (*a).min(*b);
                    }
                }
                m
            }
        }
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` in the Laurent ring, if it exists.
    ///
    /// Both sides are shifted to polynomials with trivial monomial content and
    /// divided by the multivariate division algorithm in lex order; a single
    /// divisor is a Gröbner basis of its ideal, so a nonzero remainder means
    /// the division is not exact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (num, den) = self.aligned(divisor);
        if num.is_zero() {
            return Some(num);
        }
        let nshift: Exponent = num.min_exponents();
        let dshift: Exponent = den.min_exponents();
        let neg = |v: &Exponent| v.iter().map(|x| -x).collect::<Exponent>();
        let mut rem = num.shift(&neg(&nshift));
        let d = den.shift(&neg(&dshift));
        let (dlead_e, dlead_c) = {
            let (e, c) = d.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let mut quot = Self { vars: num.vars.clone(), terms: BTreeMap::new() };
        while let Some((e, c)) = rem.leading_term() {
            let diff: Exponent = e.iter().zip(&dlead_e).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x < 0) {
                return None;
            }
            let coeff = c / &dlead_c;
            let step = d.shift(&diff).scale(&coeff);
            quot.terms.insert(diff, coeff.clone());
            rem = &rem - &step;
        }
        let total: Exponent = nshift.iter().zip(&dshift).map(|(a, b)| a - b).collect();
        Some(quot.shift(&total))
    }

    /// Laurent ring automorphism `x ↦ x^{-1}` for the named variable.
    pub fn invert_var(&self, name: &str) -> Self {
        match self.var_index(name) {
            None => self.clone(),
            Some(i) => Self {
                vars: self.vars.clone(),
                terms: self
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let mut e = e.clone();
                        e[i] = -e[i];
                        (e, c.clone())
                    })
                    .collect(),
            },
        }
    }
}

impl PartialEq for MultiLaurent {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MultiLaurent {}

impl<'a> Add<&'a MultiLaurent> for &'a MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, rhs: &MultiLaurent) -> MultiLaurent {
        if self.vars == rhs.vars {
            let mut out = self.clone();
            out.add_assign_scaled(rhs, &Rational::one());
            return out;
        }
        let (mut a, b) = self.aligned(rhs);
        a.add_assign_scaled(&b, &Rational::one());
        a
    }
}

impl<'a> Sub<&'a MultiLaurent> for &'a MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, rhs: &MultiLaurent) -> MultiLaurent {
        let m1 = -Rational::one();
        if self.vars == rhs.vars {
            let mut out = self.clone();
            out.add_assign_scaled(rhs, &m1);
            return out;
        }
        let (mut a, b) = self.aligned(rhs);
        a.add_assign_scaled(&b, &m1);
        a
    }
}

impl<'a> Mul<&'a MultiLaurent> for &'a MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: &MultiLaurent) -> MultiLaurent {
        let (a, b);
        let (x, y) = if self.vars == rhs.vars {
            (self, rhs)
        } else {
            (a, b) = self.aligned(rhs);
            (&a, &b)
        };
        let mut terms: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e1, c1) in &x.terms {
            for (e2, c2) in &y.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(p, q)| p + q).collect();
                *terms.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiLaurent { vars: x.vars.clone(), terms }
    }
}

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiLaurent> for MultiLaurent {
            type Output = MultiLaurent;
            fn $m(self, rhs: MultiLaurent) -> MultiLaurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiLaurent> for MultiLaurent {
            type Output = MultiLaurent;
            fn $m(self, rhs: &MultiLaurent) -> MultiLaurent {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        -&self
    }
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(x, _)| **x != 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i32>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for MultiLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = LaurentJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            terms.push((t.exp, Rational::new(num, den)));
        }
        MultiLaurent::from_terms(raw.vars, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn q() -> MultiLaurent {
        MultiLaurent::var("q")
    }

    #[test]
    fn monomial_inverse() {
        let qi = q().inverse_monomial().unwrap();
        assert!((&q() * &qi).is_one());
    }

    #[test]
    fn difference_of_squares() {
        let t = MultiLaurent::var("t");
        let one = MultiLaurent::one(&["t"]);
        let lhs = &(&one - &t) * &(&one + &t);
        let rhs = &one - &t.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_after_product() {
        let one = MultiLaurent::one(&["q"]);
        let f = &(&q() - &one) * &(&q() + &one);
        assert_eq!(f.evaluate(&[("q", rat(3))]).unwrap(), rat(8));
    }

    #[test]
    fn substitution_examples() {
        let one = MultiLaurent::one(&["q"]);
        assert!((&q() - &one).substitute_values(&[("q", rat(1))]).unwrap().is_zero());
        let v2 = MultiLaurent::var("v").pow(2);
        assert_eq!(v2.evaluate(&[("v", rat(3))]).unwrap(), rat(9));

        let t = MultiLaurent::var("t");
        let f = &t * &q().inverse_monomial().unwrap();
        let mut m = HashMap::new();
        m.insert("q".to_string(), t.clone());
        assert!(f.substitute(&m).unwrap().is_one());
    }

    #[test]
    fn negative_power_of_non_unit_fails() {
        let f = q().inverse_monomial().unwrap();
        let mut m = HashMap::new();
        m.insert("q".to_string(), &MultiLaurent::var("t") + &MultiLaurent::one(&["t"]));
        assert!(matches!(f.substitute(&m), Err(Error::SubstitutionNotInvertible(_))));
        assert!(matches!(
            f.substitute_values(&[("q", rat(0))]),
            Err(Error::SubstitutionNotInvertible(_))
        ));
    }

    #[test]
    fn exact_division() {
        let t = MultiLaurent::var("t");
        let one = MultiLaurent::one(&["t"]);
        let f = &(&one - &t.pow(3)) * &t.inverse_monomial().unwrap();
        let d = &one - &t;
        let quo = f.exact_div(&d).unwrap();
        let expect = &(&(&one + &t) + &t.pow(2)) * &t.inverse_monomial().unwrap();
        assert_eq!(quo, expect);
        assert!((&one + &t.pow(2)).exact_div(&d).is_none());
    }

    #[test]
    fn json_round_trip() {
        let t = MultiLaurent::var("t");
        let f = &(&t.scale(&Rational::new(3.into(), 7.into())) * &q()) - &q().inverse_monomial().unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"vars\""));
        let g: MultiLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
