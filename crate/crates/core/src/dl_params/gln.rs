use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{parse_rational, RationalMatrix, Rational};

/// Exact q-powers tested against 1 before an exact q is accepted.
pub const ROOT_OF_UNITY_BOUND: u32 = 24;

/// The parameter q: formal (never a root of unity) or an exact nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum QValue {
    Generic,
    Exact(Rational),
}

impl QValue {
    /// Rejects `q = 0`.
    pub fn nonzero(&self) -> Result<()> {
        match self {
            QValue::Exact(c) if c.is_zero() => Err(Error::InvalidElement("q = 0".into())),
            _ => Ok(()),
        }
    }

    /// `RootOfUnityQ` when `q^k = 1` for some `1 ≤ k ≤ ROOT_OF_UNITY_BOUND`.
    pub fn require_not_root_of_unity(&self) -> Result<()> {
        self.nonzero()?;
        if let QValue::Exact(c) = self {
            let mut p = c.clone();
            for _ in 0..ROOT_OF_UNITY_BOUND {
                if p.is_one() {
                    return Err(Error::RootOfUnityQ(c.to_string()));
                }
                p *= c;
            }
        }
        Ok(())
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Generic => write!(f, "generic"),
            QValue::Exact(c) => write!(f, "{c}"),
        }
    }
}

impl FromStr for QValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "generic" | "q" => Ok(QValue::Generic),
            t => Ok(QValue::Exact(parse_rational(t)?)),
        }
    }
}

impl From<QValue> for String {
    fn from(q: QValue) -> String {
        q.to_string()
    }
}

impl TryFrom<String> for QValue {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EigenBase {
    Symbol(String),
    Exact(Rational),
}

impl fmt::Display for EigenBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenBase::Symbol(s) => write!(f, "{s}"),
            EigenBase::Exact(c) => write!(f, "{c}"),
        }
    }
}

/// An eigenvalue `base·q^k`. Written `a`, `a*q`, `a*q^-2` or `3/2*q^2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Eigenvalue {
    pub base: EigenBase,
    pub qpow: i64,
}

impl Eigenvalue {
    pub fn symbol(name: &str, qpow: i64) -> Self {
        Eigenvalue { base: EigenBase::Symbol(name.into()), qpow }
    }

    pub fn exact(c: Rational, qpow: i64) -> Self {
        Eigenvalue { base: EigenBase::Exact(c), qpow }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.qpow {
            0 => write!(f, "{}", self.base),
            1 => write!(f, "{}*q", self.base),
            k => write!(f, "{}*q^{k}", self.base),
        }
    }
}

impl FromStr for Eigenvalue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('*').map(str::trim);
        let head = parts.next().unwrap_or_default();
        let base = if head.starts_with(|c: char| c.is_ascii_alphabetic()) && head != "q" {
            if !head.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("bad eigenvalue symbol {head}")));
            }
            EigenBase::Symbol(head.into())
        } else {
            let c = parse_rational(head)?;
            if c.is_zero() {
                return Err(Error::InvalidElement("zero eigenvalue".into()));
            }
            EigenBase::Exact(c)
        };
        let mut qpow = 0;
        for p in parts {
            qpow += match p {
                "q" => 1,
                _ => p
                    .strip_prefix("q^")
                    .and_then(|e| e.parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad q-power {p}")))?,
            };
        }
        Ok(Eigenvalue { base, qpow })
    }
}

impl From<Eigenvalue> for String {
    fn from(e: Eigenvalue) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for Eigenvalue {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Eigenvalues `base·q^start, …, base·q^{start+length−1}`, with `N` acting as
/// a single Jordan block shifting each eigenspace to the next.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub orbit: String,
    pub start: i64,
    pub length: usize,
}

impl Segment {
    fn end(&self) -> i64 {
        self.start + self.length as i64 - 1
    }

    fn contains(&self, i: i64, j: i64) -> bool {
        self.start <= i && j <= self.end()
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = Eigenvalue::symbol(&self.orbit, self.start);
        write!(f, "[{e};{}]", self.length)
    }
}

/// Conjugacy class of a q-commuting pair `(s, N)` in `GL_n`, as a multiset of
/// segments sorted by orbit, start and length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DLParameterGLn {
    pub segments: Vec<Segment>,
}

/// Per-orbit multisegment with every support run shifted to start at 0.
pub type Shape = Vec<Vec<(i64, usize)>>;

impl DLParameterGLn {
    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort();
        DLParameterGLn { segments }
    }

    pub fn n(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    /// `N = 0`.
    pub fn is_semisimple(&self) -> bool {
        self.segments.iter().all(|s| s.length == 1)
    }

    /// Eigenvalue multiplicities `(orbit, exponent) → mult`.
    pub fn support(&self) -> BTreeMap<(String, i64), usize> {
        let mut out = BTreeMap::new();
        for s in &self.segments {
            for i in s.start..=s.end() {
                *out.entry((s.orbit.clone(), i)).or_insert(0) += 1;
            }
        }
        out
    }

    /// Rank of `N^{j−i}: V_{q^i} → V_{q^j}` for every pair of exponents
    /// `i ≤ j` of one orbit with all exponents in between present; these
    /// ranks determine the class.
    pub fn rank_data(&self) -> BTreeMap<(String, i64, i64), usize> {
        let support = self.support();
        let mut out = BTreeMap::new();
        for (o, i) in support.keys() {
            for (o2, j) in support.keys() {
                let linked = (*i..=*j).all(|k| support.contains_key(&(o.clone(), k)));
                if o == o2 && i <= j && linked {
                    let r = self.segments.iter().filter(|s| &s.orbit == o && s.contains(*i, *j)).count();
                    out.insert((o.clone(), *i, *j), r);
                }
            }
        }
        out
    }

    /// The class up to renaming orbits and shifting exponents: each maximal
    /// run of consecutive exponents becomes its own orbit starting at 0.
    pub fn shape(&self) -> Shape {
        let mut runs: BTreeMap<(String, i64), Vec<(i64, usize)>> = BTreeMap::new();
        let support = self.support();
        let run_start = |o: &str, mut i: i64| {
            while support.contains_key(&(o.to_string(), i - 1)) {
                i -= 1;
            }
            i
        };
        for s in &self.segments {
            let r = run_start(&s.orbit, s.start);
            runs.entry((s.orbit.clone(), r)).or_default().push((s.start - r, s.length));
        }
        let mut out: Shape = runs
            .into_values()
            .map(|mut v| {
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for DLParameterGLn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segments.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Which semisimple parts to enumerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EigenvalueData {
    /// A fixed characteristic polynomial, as a list of `n` eigenvalues.
    Multiset(Vec<Eigenvalue>),
    /// Every class whose eigenvalues meet at most this many q-strings, up to
    /// renaming and shifting (see [`DLParameterGLn::shape`]).
    Budget(usize),
}

/// Groups eigenvalues into q-orbits: `orbit label → exponent → multiplicity`,
/// exponents measured from the smallest one present.
pub fn orbit_support(q: &QValue, eigenvalues: &[Eigenvalue]) -> Result<BTreeMap<String, BTreeMap<i64, usize>>> {
    let mut symbolic: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    let mut exact: Vec<(Rational, i64)> = Vec::new();
    for e in eigenvalues {
        match (&e.base, q) {
            (EigenBase::Symbol(s), _) => symbolic.entry(s.clone()).or_default().push(e.qpow),
            (EigenBase::Exact(c), QValue::Generic) => symbolic.entry(c.to_string()).or_default().push(e.qpow),
            (EigenBase::Exact(c), QValue::Exact(qv)) => exact.push((c * pow(qv, e.qpow), 0)),
        }
    }
    if let QValue::Exact(qv) = q {
        // anchor each orbit at its first listed member, then rebase below
        let mut anchors: Vec<Rational> = Vec::new();
        for (x, k) in exact.iter_mut() {
            let hit = anchors.iter().find_map(|a| q_log(&(&*x / a), qv).map(|j| (a.clone(), j)));
            match hit {
                Some((a, j)) => {
                    *x = a;
                    *k = j;
                }
                None => anchors.push(x.clone()),
            }
        }
        for (x, k) in exact {
            symbolic.entry(format!("#{x}")).or_default().push(k);
        }
    }
    let mut out = BTreeMap::new();
    for (label, exps) in symbolic {
        // exact orbits are rebased at their smallest member
        let (label, lo) = match (label.strip_prefix('#'), q) {
            (Some(a), QValue::Exact(qv)) => {
                let lo = *exps.iter().min().expect("nonempty");
                ((parse_rational(a)? * pow(qv, lo)).to_string(), lo)
            }
            _ => (label, 0),
        };
        let mut m = BTreeMap::new();
        for k in &exps {
            *m.entry(k - lo).or_insert(0) += 1;
        }
        out.insert(label, m);
    }
    Ok(out)
}

fn pow(q: &Rational, k: i64) -> Rational {
    let p = num_traits::pow(q.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// `k` with `q^k = x`, for `q ≠ ±1`.
fn q_log(x: &Rational, q: &Rational) -> Option<i64> {
    if q.abs().is_one() {
        return x.is_one().then_some(0);
    }
    let height = |r: &Rational| r.numer().abs().max(r.denom().abs());
    let h = height(x);
    for (step, sign) in [(q.clone(), 1i64), (q.recip(), -1)] {
        let mut p = Rational::one();
        let mut k = 0i64;
        while height(&p) <= h {
            if &p == x {
                return Some(k);
            }
            p *= &step;
            k += sign;
        }
    }
    None
}

/// Multisegments on one orbit with the given multiplicity at each exponent.
pub fn multisegments(mult: &BTreeMap<i64, usize>) -> Vec<Vec<(i64, usize)>> {
    let mut m = mult.clone();
    let mut out = Vec::new();
    fill(&mut m, &mut Vec::new(), &mut out);
    out
}

// The smallest exponent still uncovered must start a segment; segments
// sharing a start are produced in non-increasing length order.
fn fill(m: &mut BTreeMap<i64, usize>, acc: &mut Vec<(i64, usize)>, out: &mut Vec<Vec<(i64, usize)>>) {
    let Some((&i, _)) = m.iter().find(|(_, &c)| c > 0) else {
        let mut v = acc.clone();
        v.sort();
        out.push(v);
        return;
    };
    let cap = match acc.last() {
        Some(&(s, l)) if s == i => l,
        _ => usize::MAX,
    };
    let mut len = 0;
    while len < cap && m.get(&(i + len as i64)).is_some_and(|&c| c > 0) {
        len += 1;
        for j in 0..len {
            *m.get_mut(&(i + j as i64)).unwrap() -= 1;
        }
        acc.push((i, len));
        fill(m, acc, out);
        acc.pop();
        for j in 0..len {
            *m.get_mut(&(i + j as i64)).unwrap() += 1;
        }
    }
}

/// All classes of q-commuting pairs `(s, N)` in `GL_n` for the given
/// eigenvalue data, without duplicates, in sorted order.
pub fn enumerate_gln(n: usize, q: &QValue, data: &EigenvalueData) -> Result<Vec<DLParameterGLn>> {
    q.require_not_root_of_unity()?;
    if n == 0 {
        return Err(Error::InvalidElement("n must be positive".into()));
    }
    let mut out = match data {
        EigenvalueData::Multiset(ev) => {
            if ev.len() != n {
                return Err(Error::DimensionMismatch(format!("{} eigenvalues for GL_{n}", ev.len())));
            }
            let mut acc = vec![Vec::new()];
            for (label, mult) in orbit_support(q, ev)? {
                let local = multisegments(&mult);
                let label = &label;
                acc = acc
                    .into_iter()
                    .flat_map(|prefix: Vec<Segment>| {
                        local.iter().map(move |ms| {
                            let mut p = prefix.clone();
                            p.extend(ms.iter().map(|&(start, length)| Segment { orbit: label.clone(), start, length }));
                            p
                        })
                    })
                    .collect();
            }
            acc.into_iter().map(DLParameterGLn::new).collect::<Vec<_>>()
        }
        EigenvalueData::Budget(k) => budget_classes(n, *k),
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// Orbit names used in budget mode: `a, b, …, z, a26, a27, …`.
pub fn orbit_name(i: usize) -> String {
    match u8::try_from(i).ok().filter(|&i| i < 26) {
        Some(c) => ((b'a' + c) as char).to_string(),
        None => format!("a{i}"),
    }
}

fn budget_classes(n: usize, k: usize) -> Vec<DLParameterGLn> {
    // every single-string multisegment of size ≤ n, contiguous support from 0
    let mut strings: Vec<(usize, Vec<(i64, usize)>)> = Vec::new();
    for size in 1..=n {
        for comp in compositions(size) {
            let mult: BTreeMap<i64, usize> = comp.iter().enumerate().map(|(i, &c)| (i as i64, c)).collect();
            strings.extend(multisegments(&mult).into_iter().map(|ms| (size, ms)));
        }
    }
    strings.sort();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    pick(&strings, 0, n, k, &mut chosen, &mut out);
    out
}

fn pick(
    strings: &[(usize, Vec<(i64, usize)>)],
    from: usize,
    left: usize,
    slots: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<DLParameterGLn>,
) {
    if left == 0 {
        let segs = chosen
            .iter()
            .enumerate()
            .flat_map(|(o, &idx)| {
                strings[idx].1.iter().map(move |&(start, length)| Segment { orbit: orbit_name(o), start, length })
            })
            .collect();
        out.push(DLParameterGLn::new(segs));
        return;
    }
    if slots == 0 {
        return;
    }
    for idx in from..strings.len() {
        if strings[idx].0 <= left {
            chosen.push(idx);
            pick(strings, idx, left - strings[idx].0, slots - 1, chosen, out);
            chosen.pop();
        }
    }
}

/// Ordered sequences of positive integers summing to `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Number of irreducible representations attached to the eigenvalue data.
///
/// Stabilizers of q-commuting pairs in `GL_n` are unit groups of linear
/// subspaces of `M_n`, hence connected, so each class carries only the
/// trivial local system; see [`gl2_pair_stabilizer`] for the `n = 2` check.
pub fn count_irreducibles_gln(n: usize, q: &QValue, data: &EigenvalueData) -> Result<usize> {
    Ok(enumerate_gln(n, q, data)?.len())
}

/// Stabilizer `{g ∈ GL_2 : gs = sg, gN = Ng}` of an exact pair.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    /// Linear span of the stabilizer inside `M_2`, entries row-major.
    #[serde(serialize_with = "ser_basis")]
    pub span: Vec<[Rational; 4]>,
    pub dimension: usize,
    /// The span is closed under multiplication and contains the identity.
    pub unital_subalgebra: bool,
    /// Its invertible part is the complement of the determinant hypersurface
    /// in an affine space, hence irreducible.
    pub connected: bool,
}

fn ser_basis<S: serde::Serializer>(b: &[[Rational; 4]], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(b.len()))?;
    for m in b {
        seq.serialize_element(&m.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

type M2 = [Rational; 4];

fn m2_mul(a: &M2, b: &M2) -> M2 {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

/// Linear map `g ↦ g·m − m·g` on `M_2` as a 4×4 matrix.
fn commutator_matrix(m: &M2) -> RationalMatrix {
    let mut rows = vec![vec![Rational::zero(); 4]; 4];
    for c in 0..4 {
        let mut e: M2 = std::array::from_fn(|_| Rational::zero());
        e[c] = Rational::one();
        let (l, r) = (m2_mul(&e, m), m2_mul(m, &e));
        for i in 0..4 {
            rows[i][c] = &l[i] - &r[i];
        }
    }
    RationalMatrix::from_dense(rows).expect("square")
}

/// Computes the stabilizer of `(s, N)` in `GL_2` from its defining linear
/// equations. Errors with `NotQCommuting` unless `sNs⁻¹ = qN` with `N`
/// nilpotent.
pub fn gl2_pair_stabilizer(s: &M2, n: &M2, q: &Rational) -> Result<StabilizerReport> {
    let det = &s[0] * &s[3] - &s[1] * &s[2];
    if det.is_zero() {
        return Err(Error::InvalidElement("s is singular".into()));
    }
    let sn = m2_mul(s, n);
    let qns = m2_mul(&n.clone().map(|x| x * q), s);
    let nn = m2_mul(n, n);
    if sn != qns || nn.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotQCommuting("s·N ≠ q·N·s or N not nilpotent".into()));
    }
    let (a, b) = (commutator_matrix(s), commutator_matrix(n));
    let mut rows = Vec::new();
    for m in [&a, &b] {
        for i in 0..4 {
            rows.push((0..4).map(|j| m.get(i, j)).collect());
        }
    }
    let span: Vec<M2> = RationalMatrix::from_dense(rows)?
        .kernel_basis()
        .into_iter()
        .map(|v| std::array::from_fn(|i| v[i].clone()))
        .collect();
    let in_span = |m: &M2| {
        let mut cols: Vec<Vec<Rational>> = span.iter().map(|b| b.to_vec()).collect();
        let r0 = RationalMatrix::from_columns(4, &cols).rank();
        cols.push(m.to_vec());
        RationalMatrix::from_columns(4, &cols).rank() == r0
    };
    let identity: M2 = [Rational::one(), Rational::zero(), Rational::zero(), Rational::one()];
    let closed = span.iter().all(|x| span.iter().all(|y| in_span(&m2_mul(x, y))));
    let unital_subalgebra = closed && in_span(&identity);
    Ok(StabilizerReport { dimension: span.len(), span, unital_subalgebra, connected: unital_subalgebra })
}

/// Distinct shapes among the given classes.
pub fn shapes(classes: &[DLParameterGLn]) -> BTreeSet<Shape> {
    classes.iter().map(|c| c.shape()).collect()
}
