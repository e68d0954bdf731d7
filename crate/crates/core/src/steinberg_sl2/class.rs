use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{T, VARS};
use crate::error::{Error, Result};
use crate::exact_arith::{rat, MultiLaurent, RationalFunction};
use crate::hecke::HeckeElement;
use crate::root_weyl::{ExtAffineElement, RootDatum};

/// Sign of the `q`-scaling on cotangent fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QConvention {
    /// Fiber weight `q·t⁻²` at `e` (the frozen convention).
    A,
    /// Fiber weight `q⁻¹·t⁻²` at `e`.
    B,
}

impl QConvention {
    fn q_exponent(self) -> i32 {
        match self {
            QConvention::A => 1,
            QConvention::B => -1,
        }
    }
}

impl std::str::FromStr for QConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(QConvention::A),
            "b" | "B" => Ok(QConvention::B),
            _ => Err(Error::Parse(format!("unknown q-convention {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedPoint {
    E,
    S,
}

impl FixedPoint {
    pub const ALL: [FixedPoint; 2] = [FixedPoint::E, FixedPoint::S];

    fn idx(self) -> usize {
        match self {
            FixedPoint::E => 0,
            FixedPoint::S => 1,
        }
    }

    fn flip(self) -> Self {
        match self {
            FixedPoint::E => FixedPoint::S,
            FixedPoint::S => FixedPoint::E,
        }
    }
}

/// `t^i v^j`.
pub(crate) fn tv(i: i32, j: i32) -> MultiLaurent {
    MultiLaurent::monomial(&VARS, vec![i, j], rat(1))
}

fn one() -> MultiLaurent {
    tv(0, 0)
}

/// Tangent weights of `T*P¹` at its two fixed points.
#[derive(Clone, Debug)]
pub struct TangentData {
    pub convention: QConvention,
    base: [MultiLaurent; 2],
    fiber: [MultiLaurent; 2],
}

impl TangentData {
    pub fn new(convention: QConvention) -> Self {
        let qe = 2 * convention.q_exponent();
        Self {
            convention,
            base: [tv(2, 0), tv(-2, 0)],
            fiber: [tv(-2, qe), tv(2, qe)],
        }
    }

    /// `(base, fiber)` weights at the point.
    pub fn weights(&self, p: FixedPoint) -> [MultiLaurent; 2] {
        [self.base[p.idx()].clone(), self.fiber[p.idx()].clone()]
    }

    /// `Π (1 − χ⁻¹)` over the tangent weights.
    pub fn euler_class(&self, p: FixedPoint) -> MultiLaurent {
        self.weights(p)
            .iter()
            .map(|w| &one() - &w.inverse_monomial().expect("weights are monomials"))
            .fold(one(), |acc, f| &acc * &f)
    }

    /// `1 − f⁻¹` for the fiber weight `f`.
    fn fiber_factor(&self, p: FixedPoint) -> MultiLaurent {
        &one() - &self.fiber[p.idx()].inverse_monomial().unwrap()
    }
}

/// Localizations `(x, y) ↦ a_{(x,y)}` of a class on `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointClass {
    pub entries: [[RationalFunction; 2]; 2],
}

impl FixedPointClass {
    pub fn get(&self, x: FixedPoint, y: FixedPoint) -> &RationalFunction {
        &self.entries[x.idx()][y.idx()]
    }

    pub fn from_fn(f: impl Fn(FixedPoint, FixedPoint) -> RationalFunction) -> Self {
        use FixedPoint::{E, S};
        Self { entries: [[f(E, E), f(E, S)], [f(S, E), f(S, S)]] }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| RationalFunction::zero(&VARS))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|x, y| self.get(x, y) + other.get(x, y))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|x, y| self.get(x, y) - other.get(x, y))
    }

    pub fn scale(&self, c: &MultiLaurent) -> Self {
        let c = c.with_vars(&VARS.map(String::from)).expect("coefficients in t and v");
        Self::from_fn(|x, y| self.get(x, y).mul_laurent(&c))
    }

    /// True when every entry is a Laurent polynomial.
    pub fn is_integral(&self) -> bool {
        FixedPoint::ALL.iter().all(|&x| FixedPoint::ALL.iter().all(|&y| self.get(x, y).as_laurent().is_some()))
    }

    /// `t ↦ t⁻¹` on entries together with `e ↔ s` on indices.
    pub fn weyl_involution(&self) -> Self {
        Self::from_fn(|x, y| self.get(x.flip(), y.flip()).invert_var(T))
    }
}

impl fmt::Display for FixedPointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FixedPoint::{E, S};
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.get(E, E),
            self.get(E, S),
            self.get(S, E),
            self.get(S, S)
        )
    }
}

/// The localization model with a choice of `T_s` class.
///
/// `class_Ts = c·Y(a, b) + d·unit`, where `Y(a, b)` localizes the structure
/// sheaf of `P¹ × P¹ ⊂ Z` twisted by `O(a, b)`.
#[derive(Clone, Debug)]
pub struct SteinbergModel {
    pub tangent: TangentData,
    pub twist: (i32, i32),
    pub ts_coeffs: (MultiLaurent, MultiLaurent),
}

impl SteinbergModel {
    /// The frozen convention: fiber weight `q t⁻²`, twist `O(−1, −1)`,
    /// `class_Ts = q·Y + q·unit`.
    pub fn frozen() -> Self {
        Self::new(QConvention::A, (-1, -1), tv(0, 2), tv(0, 2))
    }

    pub fn with_convention(convention: QConvention) -> Self {
        Self { tangent: TangentData::new(convention), ..Self::frozen() }
    }

    pub fn new(convention: QConvention, twist: (i32, i32), c: MultiLaurent, d: MultiLaurent) -> Self {
        let vars = VARS.map(String::from);
        Self {
            tangent: TangentData::new(convention),
            twist,
            ts_coeffs: (c.with_vars(&vars).unwrap(), d.with_vars(&vars).unwrap()),
        }
    }

    pub fn euler_class(&self, p: FixedPoint) -> MultiLaurent {
        self.tangent.euler_class(p)
    }

    /// `(a*b)_{(x,z)} = Σ_y a_{(x,y)} b_{(y,z)} / euler(y)`.
    pub fn convolve(&self, a: &FixedPointClass, b: &FixedPointClass) -> FixedPointClass {
        FixedPointClass::from_fn(|x, z| {
            let mut acc = RationalFunction::zero(&VARS);
            for y in FixedPoint::ALL {
                let prod = a.get(x, y) * b.get(y, z);
                if prod.is_zero() {
                    continue;
                }
                acc = &acc + &prod.div_laurent(&self.euler_class(y)).expect("Euler classes are nonzero");
            }
            acc
        })
    }

    /// The relative diagonal.
    pub fn unit(&self) -> FixedPointClass {
        self.diagonal(0)
    }

    /// The diagonal twisted by `O(n)`: `t^n` at `e`, `t^{−n}` at `s`.
    pub fn class_theta(&self, n: i32) -> FixedPointClass {
        self.diagonal(n)
    }

    fn diagonal(&self, n: i32) -> FixedPointClass {
        FixedPointClass::from_fn(|x, y| {
            if x != y {
                return RationalFunction::zero(&VARS);
            }
            let m = match x {
                FixedPoint::E => tv(n, 0),
                FixedPoint::S => tv(-n, 0),
            };
            RationalFunction::from_laurent(&self.euler_class(x) * &m)
        })
    }

    /// `O(m)` on `P¹` restricted to a fixed point.
    fn line(m: i32, p: FixedPoint) -> MultiLaurent {
        match p {
            FixedPoint::E => tv(m, 0),
            FixedPoint::S => tv(-m, 0),
        }
    }

    pub fn y_class(&self, a: i32, b: i32) -> FixedPointClass {
        FixedPointClass::from_fn(|x, y| {
            let f = &(&self.tangent.fiber_factor(x) * &self.tangent.fiber_factor(y))
                * &(&Self::line(a, x) * &Self::line(b, y));
            RationalFunction::from_laurent(f)
        })
    }

    #[allow(non_snake_case)]
    pub fn class_Ts(&self) -> FixedPointClass {
        let (c, d) = &self.ts_coeffs;
        self.y_class(self.twist.0, self.twist.1).scale(c).add(&self.unit().scale(d))
    }

    /// `q⁻¹ T_s + (q⁻¹ − 1)`.
    #[allow(non_snake_case)]
    pub fn class_Ts_inverse(&self) -> FixedPointClass {
        self.class_Ts().scale(&tv(0, -2)).add(&self.unit().scale(&(&tv(0, -2) - &one())))
    }

    /// Image of `θ_λ` for a rank-one datum: the diagonal twisted by `⟨α, λ⟩`.
    pub fn theta_image(&self, datum: &RootDatum, lambda: &[i64]) -> FixedPointClass {
        let n = RootDatum::pairing(&datum.simple_roots()[0], lambda);
        self.class_theta(n as i32)
    }

    /// The algebra map from the affine Hecke algebra of a rank-one datum
    /// (SL2 or PGL2): `T_{s₁} ↦ class_Ts`, `θ_λ ↦ class_theta(⟨α, λ⟩)`.
    pub fn hecke_map(&self, datum: &Arc<RootDatum>) -> Result<HeckeMap> {
        if datum.rank() != 1 || datum.cochar_rank() != 1 {
            return Err(Error::ModelInconsistent(format!("{} is not semisimple of rank one", datum.name())));
        }
        let s1 = datum.affine_reflection(1).unwrap().clone();
        let mut gens = HashMap::new();
        gens.insert(s1.clone(), self.class_Ts());
        let mut others: Vec<ExtAffineElement> = vec![datum.affine_reflection(0).unwrap().clone()];
        for om in datum.omega_generators() {
            others.push(om.clone());
            others.push(datum.inverse(om));
        }
        for g in others {
            // g = t_λ s₁ with t_λ = g·s₁ length-additive and λ dominant
            let t = datum.mul(&g, &s1);
            if g.w != s1.w || t.w != 0 || !datum.is_dominant(&t.lambda) || datum.length(&t) != datum.length(&g) + 1 {
                return Err(Error::ModelInconsistent(format!("generator {g:?} is not of the form t_λ s")));
            }
            let l = datum.length(&t) as i32;
            let img = self.convolve(&self.theta_image(datum, &t.lambda), &self.class_Ts_inverse()).scale(&tv(0, l));
            gens.insert(g, img);
        }
        Ok(HeckeMap { model: self.clone(), datum: Arc::clone(datum), gens, cache: HashMap::new() })
    }
}

/// Images of Hecke algebra elements, memoized on basis elements.
pub struct HeckeMap {
    model: SteinbergModel,
    datum: Arc<RootDatum>,
    gens: HashMap<ExtAffineElement, FixedPointClass>,
    cache: HashMap<ExtAffineElement, FixedPointClass>,
}

impl HeckeMap {
    pub fn basis_image(&mut self, x: &ExtAffineElement) -> FixedPointClass {
        if let Some(c) = self.cache.get(x) {
            return c.clone();
        }
        let rw = self.datum.reduced_word(x);
        let mut acc = self.model.unit();
        for l in &rw.word {
            let s = self.datum.affine_reflection(*l).unwrap();
            acc = self.model.convolve(&acc, &self.gens[s]);
        }
        if rw.omega != self.datum.identity() {
            let om = self.omega_image(&rw.omega);
            acc = self.model.convolve(&acc, &om);
        }
        self.cache.insert(x.clone(), acc.clone());
        acc
    }

    fn omega_image(&self, om: &ExtAffineElement) -> FixedPointClass {
        // Ω is cyclic in rank one; walk powers of the generator
        for g in self.datum.omega_generators() {
            for step in [g.clone(), self.datum.inverse(g)] {
                let mut x = self.datum.identity();
                let mut img = self.model.unit();
                for _ in 0..8 {
                    if x == *om {
                        return img;
                    }
                    x = self.datum.mul(&x, &step);
                    img = self.model.convolve(&img, &self.gens[&step]);
                }
            }
        }
        panic!("{om:?} is not a short power of an Ω generator")
    }

    pub fn image(&mut self, h: &HeckeElement) -> FixedPointClass {
        let mut out = FixedPointClass::zero();
        for (x, c) in h.terms() {
            let img = self.basis_image(x);
            out = out.add(&img.scale(c));
        }
        out
    }
}
