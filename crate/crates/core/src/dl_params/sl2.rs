use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gln::QValue;
use crate::error::{Error, Result};
use crate::exact_arith::{parse_rational, rat, ratio, Rational, RationalMatrix};

/// `c·q^k`. With an exact q the power is folded into `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMonomial {
    pub c: Rational,
    pub k: i64,
}

impl QMonomial {
    pub fn constant(c: Rational) -> Self {
        QMonomial { c, k: 0 }
    }

    fn reduce(&self, q: &QValue) -> QMonomial {
        match q {
            QValue::Generic => self.clone(),
            QValue::Exact(qv) => {
                let p = num_traits::pow(qv.clone(), self.k.unsigned_abs() as usize);
                let p = if self.k < 0 { p.recip() } else { p };
                QMonomial { c: &self.c * p, k: 0 }
            }
        }
    }

    fn inverse(&self) -> QMonomial {
        QMonomial { c: self.c.recip(), k: -self.k }
    }

    /// Equality for the given q; a formal q is not a root of unity.
    pub fn equals(&self, other: &QMonomial, q: &QValue) -> bool {
        self.reduce(q) == other.reduce(q)
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.c.is_one()) {
            (0, _) => write!(f, "{}", self.c),
            (1, true) => write!(f, "q"),
            (k, true) => write!(f, "q^{k}"),
            (1, false) => write!(f, "{}*q", self.c),
            (k, false) => write!(f, "{}*q^{k}", self.c),
        }
    }
}

impl FromStr for QMonomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Rational::one();
        let mut k = 0;
        for part in s.split('*').map(str::trim) {
            let (neg, body) = match part.strip_prefix('-') {
                Some(b) if b.starts_with('q') => (true, b),
                _ => (false, part),
            };
            if body == "q" {
                k += 1;
            } else if let Some(e) = body.strip_prefix("q^") {
                k += e.parse::<i64>().map_err(|_| Error::Parse(format!("bad q-power {part}")))?;
            } else {
                c *= parse_rational(body)?;
            }
            if neg {
                c = -c;
            }
        }
        Ok(QMonomial { c, k })
    }
}

/// The eigenvalue λ of `s = diag(λ, λ⁻¹)`. Only `λ²` matters for every
/// question asked here, so λ is stored through its square.
///
/// Accepted forms: a rational or q-monomial (`2`, `-1/3`, `q`), `i`, `-i`,
/// and `sqrt(X)` or `-sqrt(X)` for a q-monomial `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Lambda {
    label: String,
    square: QMonomial,
}

impl Lambda {
    pub fn square(&self) -> &QMonomial {
        &self.square
    }

    pub fn from_square(label: &str, square: QMonomial) -> Result<Self> {
        if square.c.is_zero() {
            return Err(Error::InvalidElement("lambda = 0".into()));
        }
        Ok(Lambda { label: label.into(), square })
    }

    /// `λ⁻¹`, the Weyl conjugate.
    pub fn inverse(&self) -> Lambda {
        let square = self.square.inverse();
        Lambda { label: format!("sqrt({square})"), square }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

impl FromStr for Lambda {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t.strip_prefix('-').unwrap_or(t).trim();
        let square = if body == "i" {
            QMonomial::constant(rat(-1))
        } else if let Some(inner) = body.strip_prefix("sqrt(").and_then(|b| b.strip_suffix(')')) {
            inner.parse()?
        } else {
            let m: QMonomial = t.parse()?;
            QMonomial { c: &m.c * &m.c, k: 2 * m.k }
        };
        Lambda::from_square(t, square)
    }
}

impl From<Lambda> for String {
    fn from(l: Lambda) -> String {
        l.label
    }
}

impl TryFrom<String> for Lambda {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A nilpotent `[[a, x], [y, −a]]` in `sl_2` with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Nilpotent {
    #[serde(with = "rat_str")]
    pub a: Rational,
    #[serde(with = "rat_str")]
    pub x: Rational,
    #[serde(with = "rat_str")]
    pub y: Rational,
}

mod rat_str {
    use crate::exact_arith::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

impl Sl2Nilpotent {
    pub fn zero() -> Self {
        Sl2Nilpotent { a: rat(0), x: rat(0), y: rat(0) }
    }

    pub fn upper(x: Rational) -> Self {
        Sl2Nilpotent { a: rat(0), x, y: rat(0) }
    }

    pub fn lower(y: Rational) -> Self {
        Sl2Nilpotent { a: rat(0), x: rat(0), y }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.x.is_zero() && self.y.is_zero()
    }

    fn matrix(&self) -> [Rational; 4] {
        [self.a.clone(), self.x.clone(), self.y.clone(), -self.a.clone()]
    }

    /// `g n g⁻¹` for `g ∈ SL_2(Q)` given row-major.
    pub fn conjugate(&self, g: &[Rational; 4]) -> Self {
        let det = &g[0] * &g[3] - &g[1] * &g[2];
        let inv = [&g[3] / &det, -&g[1] / &det, -&g[2] / &det, &g[0] / &det];
        let m = mul(&mul(g, &self.matrix()), &inv);
        Sl2Nilpotent { a: m[0].clone(), x: m[1].clone(), y: m[2].clone() }
    }
}

fn mul(a: &[Rational; 4], b: &[Rational; 4]) -> [Rational; 4] {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentGroup {
    #[serde(rename = "1")]
    Trivial,
    #[serde(rename = "Z/2")]
    Z2,
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentGroup::Trivial => "1",
            ComponentGroup::Z2 => "Z/2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGroups {
    /// Inside `SL_2`.
    pub g: ComponentGroup,
    /// Inside `SL_2 × G_m`, where `G_m` rescales `n`.
    pub g_tilde: ComponentGroup,
}

fn require_q_commuting(lambda: &Lambda, q: &QValue, n: &Sl2Nilpotent) -> Result<()> {
    q.nonzero()?;
    let qm = QMonomial { c: rat(1), k: 1 };
    let one = QMonomial::constant(rat(1));
    if &n.a * &n.a + &n.x * &n.y != rat(0) {
        return Err(Error::NotQCommuting("n is not nilpotent".into()));
    }
    // Ad(s) scales the diagonal by 1, x by λ², y by λ⁻²
    let fails = (!n.a.is_zero() && !one.equals(&qm, q))
        || (!n.x.is_zero() && !lambda.square.equals(&qm, q))
        || (!n.y.is_zero() && !lambda.square.inverse().equals(&qm, q));
    if fails {
        return Err(Error::NotQCommuting(format!("s = diag({lambda}, 1/{lambda}), q = {q}")));
    }
    Ok(())
}

/// Rows of a 2×2 block of equations `g ↦ g·m − m·g` in the unknowns
/// `(p, r, u, w)` of `g = [[p, r], [u, w]]`.
fn commutator_rows(m: &[Rational; 4]) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![rat(0); 4]; 4];
    for c in 0..4 {
        let mut e: [Rational; 4] = std::array::from_fn(|_| rat(0));
        e[c] = rat(1);
        let (l, r) = (mul(&e, m), mul(m, &e));
        for i in 0..4 {
            rows[i][c] = &l[i] - &r[i];
        }
    }
    rows
}

/// `det` of the traceless part, a quadratic form on `M_2`.
fn traceless_det(g: &[Rational]) -> Rational {
    let h = (&g[0] - &g[3]) * ratio(1, 2);
    -(&h * &h) - &g[1] * &g[2]
}

/// Component groups of the stabilizer of `(s, n)` computed from the linear
/// span `L = {g ∈ M_2 : gs = sg, gn = ng}`.
///
/// `L` is a unital subalgebra and the stabilizer is `L ∩ SL_2`. It is
/// disconnected exactly when every element of `L` is scalar plus nilpotent:
/// then it is `{±1}·(1 + rad L)`. Otherwise `L` contains a split torus or
/// all of `M_2`, and the stabilizer is connected.
///
/// In `SL_2 × G_m` the element `−1` is joined to the identity along the
/// cocharacter `μ ↦ (μ^H, μ^{−2})` for any `H ∈ Lie(G^s)` with `[H, n] = 2n`;
/// such an `H` has eigenvalues `±1`, so `(−1)^H = −1`.
pub fn component_group_sl2(lambda: &Lambda, q: &QValue, n: &Sl2Nilpotent) -> Result<ComponentGroups> {
    require_q_commuting(lambda, q, n)?;
    let central = lambda.square.equals(&QMonomial::constant(rat(1)), q);
    let mut rows = commutator_rows(&n.matrix());
    if !central {
        // gs = sg forces the off-diagonal entries to vanish
        rows.push(vec![rat(0), rat(1), rat(0), rat(0)]);
        rows.push(vec![rat(0), rat(0), rat(1), rat(0)]);
    }
    let span = RationalMatrix::from_dense(rows)?.kernel_basis();
    let polar = |x: &[Rational], y: &[Rational]| {
        let s: Vec<Rational> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        traceless_det(&s)
    };
    let scalar_plus_nil = span.iter().all(|b| traceless_det(b).is_zero())
        && span.iter().all(|b| span.iter().all(|c| polar(b, c).is_zero()));
    let g = if scalar_plus_nil { ComponentGroup::Z2 } else { ComponentGroup::Trivial };
    let g_tilde = if g == ComponentGroup::Trivial || n.is_zero() {
        ComponentGroup::Trivial
    } else {
        grading_element(n, central)?;
        ComponentGroup::Trivial
    };
    Ok(ComponentGroups { g, g_tilde })
}

/// Some `H ∈ Lie(G^s)` with `[H, n] = 2n`, checked to have eigenvalues `±1`.
fn grading_element(n: &Sl2Nilpotent, central: bool) -> Result<[Rational; 3]> {
    let (a, x, y) = (&n.a, &n.x, &n.y);
    let two = rat(2);
    // unknowns (h1, h2, h3, t) with H = [[h1, h2], [h3, −h1]]; [H, n] = 2t·n
    let mut rows = vec![
        vec![rat(0), y.clone(), -x.clone(), -(&two * a)],
        vec![&two * x, -(&two * a), rat(0), -(&two * x)],
        vec![-(&two * y), rat(0), &two * a, -(&two * y)],
    ];
    if !central {
        rows.push(vec![rat(0), rat(1), rat(0), rat(0)]);
        rows.push(vec![rat(0), rat(0), rat(1), rat(0)]);
    }
    let kernel = RationalMatrix::from_dense(rows)?.kernel_basis();
    let v = kernel
        .iter()
        .find(|v| !v[3].is_zero())
        .ok_or_else(|| Error::ModelInconsistent(format!("no grading element for {n:?}")))?;
    let h: [Rational; 3] = std::array::from_fn(|i| &v[i] / &v[3]);
    let det = -(&h[0] * &h[0]) - &h[1] * &h[2];
    if det != rat(-1) {
        return Err(Error::ModelInconsistent(format!("grading element has det {det}")));
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `q = 1`, `λ = ±1`.
    CentralUnipotent,
    /// `q = −1`, `λ = ±i`.
    NodalMinusOne,
    /// `q ≠ 1`, `λ = ±1`.
    CentralRigid,
    /// `q ≠ ±1`, `λ^{±2} = q`.
    SqrtQ,
    /// Everything else.
    Regular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QDescriptor {
    One,
    MinusOne,
    Generic,
    LambdaMatched,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NStratum {
    Zero,
    Nonzero,
    NonzeroUpper,
    NonzeroLower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    #[serde(rename = "Ñ→𝒩")]
    SpringerResolution,
    #[serde(rename = "nodal-normalization")]
    NodalNormalization,
    #[serde(rename = "ℙ¹→pt")]
    ProjectiveLine,
    #[serde(rename = "𝔸¹∪pt→𝔸¹")]
    LinePlusPoint,
    #[serde(rename = "pt∪pt→pt")]
    TwoPoints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Centralizer {
    G,
    T,
}

/// One row of the fixed-point geometry table for `SL_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SL2ParameterRow {
    pub lambda: Lambda,
    pub q: QDescriptor,
    pub regime: Regime,
    pub n_stratum: NStratum,
    pub component_group: ComponentGroup,
    pub component_group_tilde: ComponentGroup,
    pub geometry_label: Geometry,
    pub centralizer: Centralizer,
}

/// Directions of `sl_2 = ⟨h, e, f⟩` on which `Ad(s)` acts by `q`.
fn q_eigenspace(lambda: &Lambda, q: &QValue) -> [bool; 3] {
    let qm = QMonomial { c: rat(1), k: 1 };
    [
        QMonomial::constant(rat(1)).equals(&qm, q),
        lambda.square.equals(&qm, q),
        lambda.square.inverse().equals(&qm, q),
    ]
}

/// Rows of the table for the given `(λ, q)`, one per nilpotent orbit of
/// `G^s` on `𝒩^z`, computed from the `q`-eigenspace of `Ad(s)`.
pub fn sl2_table(lambda: &Lambda, q: &QValue) -> Result<Vec<SL2ParameterRow>> {
    q.nonzero()?;
    let central = lambda.square.equals(&QMonomial::constant(rat(1)), q);
    let [h, e, f] = q_eigenspace(lambda, q);
    // nilpotent cone of the eigenspace, up to G^s
    let mut reps = vec![(NStratum::Zero, Sl2Nilpotent::zero())];
    match (central, e, f) {
        (true, true, _) => reps.push((NStratum::Nonzero, Sl2Nilpotent::upper(rat(1)))),
        (false, true, true) => {
            reps.push((NStratum::NonzeroUpper, Sl2Nilpotent::upper(rat(1))));
            reps.push((NStratum::NonzeroLower, Sl2Nilpotent::lower(rat(1))));
        }
        (false, true, false) => reps.push((NStratum::Nonzero, Sl2Nilpotent::upper(rat(1)))),
        (false, false, true) => reps.push((NStratum::Nonzero, Sl2Nilpotent::lower(rat(1)))),
        _ => {}
    }
    // Ñ^z over the s-fixed flags: all of ℙ¹ when s is central, else the two
    // Borels with fibers (eigenspace ∩ ke) and (eigenspace ∩ kf)
    let geometry = match (central, e, f) {
        (true, true, _) => Geometry::SpringerResolution,
        (true, false, _) => Geometry::ProjectiveLine,
        (false, true, true) => Geometry::NodalNormalization,
        (false, true, false) | (false, false, true) => Geometry::LinePlusPoint,
        (false, false, false) => Geometry::TwoPoints,
    };
    let regime = classify(central, h, e, f);
    let qdesc = match regime {
        Regime::CentralUnipotent => QDescriptor::One,
        Regime::NodalMinusOne => QDescriptor::MinusOne,
        Regime::SqrtQ => QDescriptor::LambdaMatched,
        Regime::CentralRigid | Regime::Regular => QDescriptor::Generic,
    };
    reps.into_iter()
        .map(|(stratum, n)| {
            let cg = component_group_sl2(lambda, q, &n)?;
            Ok(SL2ParameterRow {
                lambda: lambda.clone(),
                q: qdesc,
                regime,
                n_stratum: stratum,
                component_group: cg.g,
                component_group_tilde: cg.g_tilde,
                geometry_label: geometry,
                centralizer: if central { Centralizer::G } else { Centralizer::T },
            })
        })
        .collect()
}

fn classify(central: bool, h: bool, e: bool, f: bool) -> Regime {
    match (central, h, e || f) {
        (true, true, _) => Regime::CentralUnipotent,
        (true, false, _) => Regime::CentralRigid,
        (false, _, true) if e && f => Regime::NodalMinusOne,
        (false, _, true) => Regime::SqrtQ,
        (false, _, false) => Regime::Regular,
    }
}
