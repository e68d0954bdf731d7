use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exact_arith::{Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BgMode {
    /// `(A^{⊗n+1} ⊗ k[z^±])^{G_m}`, one slice per power of `z`.
    Equivariant,
    /// The ordinary Hochschild complex, sliced by total weight.
    Plain,
    /// The last face twisted by `z ↦ q`, sliced by total weight.
    Twisted(Rational),
}

#[derive(Clone, Debug)]
pub struct BgParams {
    pub mode: BgMode,
    /// Largest simplicial degree built.
    pub n_max: usize,
    /// Largest total weight sliced (plain and twisted modes).
    pub max_weight: i64,
    /// z-powers `-z_window..=z_window` (equivariant mode).
    pub z_window: i64,
    /// Cyclic parameter kept up to `u^{u_bound}` (and down to `u^{-u_bound}`).
    pub u_bound: usize,
    /// Quotient by degenerate simplices.
    pub normalized: bool,
}

impl BgParams {
    pub fn new(mode: BgMode, n_max: usize, max_weight: i64) -> Self {
        Self { mode, n_max, max_weight, z_window: 2, u_bound: 3, normalized: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SliceLabel {
    Weight(i64),
    ZPower(i64),
}

impl fmt::Display for SliceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceLabel::Weight(w) => write!(f, "weight {w}"),
            SliceLabel::ZPower(m) => write!(f, "z^{m}"),
        }
    }
}

/// Basis tensors `(a_0, …, a_n)` of one chain block.
#[derive(Clone, Debug, Default)]
pub struct ChainSpace {
    pub basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ChainSpace {
    fn new(basis: Vec<Vec<usize>>) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Self { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// One slice of the mixed complex, split into blocks `(n, I)` by simplicial
/// degree `n` and internal degree `I`; the cohomological degree is `I − n`.
#[derive(Clone, Debug)]
pub struct BgSlice {
    pub label: SliceLabel,
    /// Total weight of the tensors in this slice.
    pub weight: i64,
    /// True when no chains exist above the simplicial bound.
    pub exhausted: bool,
    pub chains: Vec<BTreeMap<i64, ChainSpace>>,
    /// `b: C_{n,I} → C_{n−1,I}`, keyed by `(n, I)`.
    pub b: BTreeMap<(usize, i64), RationalMatrix>,
    /// `B: C_{n,I} → C_{n+1,I}`, keyed by `(n, I)`; absent when the slice is
    /// only paracyclic.
    pub connes: Option<BTreeMap<(usize, i64), RationalMatrix>>,
}

impl BgSlice {
    pub fn dim(&self, n: usize, i: i64) -> usize {
        self.chains.get(n).and_then(|c| c.get(&i)).map_or(0, ChainSpace::dim)
    }

    /// `b` out of block `(n, I)`, zero when a side is empty or unbuilt.
    pub fn b_matrix(&self, n: usize, i: i64) -> RationalMatrix {
        if n == 0 {
            return RationalMatrix::zeros(0, self.dim(0, i));
        }
        self.b.get(&(n, i)).cloned().unwrap_or_else(|| RationalMatrix::zeros(self.dim(n - 1, i), self.dim(n, i)))
    }

    pub fn connes_matrix(&self, n: usize, i: i64) -> Option<RationalMatrix> {
        let c = self.connes.as_ref()?;
        Some(c.get(&(n, i)).cloned().unwrap_or_else(|| RationalMatrix::zeros(self.dim(n + 1, i), self.dim(n, i))))
    }

    /// Internal degrees occurring in the slice.
    pub fn internal_degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.chains.iter().flat_map(|c| c.keys().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn n_max(&self) -> usize {
        self.chains.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct MixedComplexTruncation {
    pub mode: BgMode,
    pub n_max: usize,
    pub u_bound: usize,
    pub normalized: bool,
    pub slices: Vec<BgSlice>,
}

type Chain = Vec<(Vec<usize>, Rational)>;

struct Builder<'a> {
    alg: &'a GradedAlgebra,
    twist: Option<Rational>,
    normalized: bool,
}

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

impl Builder<'_> {
    fn twist_factor(&self, weight: i64) -> Rational {
        match &self.twist {
            None => Rational::one(),
            Some(q) if weight >= 0 => num_traits::pow(q.clone(), weight as usize),
            Some(q) => num_traits::pow(q.recip(), (-weight) as usize),
        }
    }

    fn degenerate(&self, t: &[usize]) -> bool {
        self.normalized && t[1..].iter().any(|&a| a == self.alg.unit())
    }

    fn enumerate(&self, n: usize, weight: i64) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n + 1);
        self.enumerate_rec(n, weight, &mut cur, &mut out);
        out
    }

    fn enumerate_rec(&self, n: usize, remaining: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n + 1 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..self.alg.dim() {
            if !cur.is_empty() && self.normalized && a == self.alg.unit() {
                continue;
            }
            let w = self.alg.weight(a);
            if w > remaining {
                continue;
            }
            cur.push(a);
            self.enumerate_rec(n, remaining - w, cur, out);
            cur.pop();
        }
    }

    fn face(&self, x: &[usize], i: usize) -> Chain {
        let n = x.len() - 1;
        let mut out = Vec::new();
        if i < n {
            for (k, c) in self.alg.mul(x[i], x[i + 1]) {
                let mut t = x[..i].to_vec();
                t.push(*k);
                t.extend_from_slice(&x[i + 2..]);
                if !self.degenerate(&t) {
                    out.push((t, c.clone()));
                }
            }
        } else {
            let an = x[n];
            let before: i64 = x[..n].iter().map(|&a| self.alg.degree(a)).sum();
            let mut coeff = self.twist_factor(self.alg.weight(an));
            if parity(self.alg.degree(an)) && parity(before) {
                coeff = -coeff;
            }
            for (k, c) in self.alg.mul(an, x[0]) {
                let mut t = vec![*k];
                t.extend_from_slice(&x[1..n]);
                if !self.degenerate(&t) {
                    out.push((t, c * &coeff));
                }
            }
        }
        out
    }

    fn hochschild(&self, x: &[usize]) -> Chain {
        let n = x.len() - 1;
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for i in 0..=n {
            for (t, c) in self.face(x, i) {
                out.push((t, if i % 2 == 0 { c } else { -c }));
            }
        }
        out
    }

    /// Cyclic operator `t(a_0, …, a_n) = ± (a_n, a_0, …, a_{n−1})`.
    fn cyclic(&self, x: &[usize]) -> Chain {
        let n = x.len() - 1;
        let an = x[n];
        let before: i64 = x[..n].iter().map(|&a| self.alg.degree(a)).sum();
        let mut coeff = self.twist_factor(self.alg.weight(an));
        if (n % 2 == 1) ^ (parity(self.alg.degree(an)) && parity(before)) {
            coeff = -coeff;
        }
        let mut t = vec![an];
        t.extend_from_slice(&x[..n]);
        if self.degenerate(&t) {
            vec![]
        } else {
            vec![(t, coeff)]
        }
    }

    /// `B = (1 − t) s N` with `s` inserting the unit in front.
    fn connes(&self, x: &[usize]) -> Chain {
        let n = x.len() - 1;
        let mut out = Vec::new();
        let mut orbit: Chain = vec![(x.to_vec(), Rational::one())];
        for _ in 0..=n {
            let mut next = Vec::new();
            for (y, c) in &orbit {
                let mut s = vec![self.alg.unit()];
                s.extend_from_slice(y);
                if !self.degenerate(&s) {
                    for (ts, d) in self.cyclic(&s) {
                        out.push((ts, -(c * d)));
                    }
                    out.push((s, c.clone()));
                }
                for (ty, d) in self.cyclic(y) {
                    next.push((ty, c * d));
                }
            }
            orbit = next;
        }
        out
    }
}

fn assemble(
    op: impl Fn(&[usize]) -> Chain,
    source: &ChainSpace,
    target: &ChainSpace,
) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(target.dim(), source.dim());
    for (j, x) in source.basis.iter().enumerate() {
        for (t, c) in op(x) {
            let i = *target.index.get(&t).unwrap_or_else(|| panic!("operator left the slice: {t:?}"));
            m.add_to(i, j, &c);
        }
    }
    m
}

/// Builds the truncated Block-Getzler mixed complex of `alg`.
pub fn build_bg_complex(alg: &GradedAlgebra, p: &BgParams) -> Result<MixedComplexTruncation> {
    if alg.basis().iter().any(|b| b.weight < 0) {
        return Err(Error::InvalidAlgebra("weights must be nonnegative so that slices are finite".into()));
    }
    let twist = match &p.mode {
        BgMode::Twisted(q) if q.is_zero() => {
            return Err(Error::InvalidAlgebra("twist parameter q must be nonzero".into()))
        }
        BgMode::Twisted(q) => Some(q.clone()),
        _ => None,
    };
    let weights: Vec<(SliceLabel, i64)> = match p.mode {
        BgMode::Equivariant => (-p.z_window..=p.z_window).map(|m| (SliceLabel::ZPower(m), 0)).collect(),
        _ => {
            if p.max_weight > alg.max_weight() {
                return Err(Error::TruncationTooSmall(format!(
                    "window weight {} exceeds stored weight {}",
                    p.max_weight,
                    alg.max_weight()
                )));
            }
            (0..=p.max_weight).map(|w| (SliceLabel::Weight(w), w)).collect()
        }
    };
    let builder = Builder { alg, twist, normalized: p.normalized };
    let positive = alg.basis().iter().enumerate().all(|(i, b)| i == alg.unit() || b.weight >= 1);
    let mut cache: HashMap<i64, BgSlice> = HashMap::new();
    let mut slices = Vec::new();
    for (label, w) in weights {
        let mut slice = match cache.get(&w) {
            Some(s) => s.clone(),
            None => {
                let s = build_slice(&builder, p, w, positive && p.normalized)?;
                cache.insert(w, s.clone());
                s
            }
        };
        slice.label = label;
        slices.push(slice);
    }
    Ok(MixedComplexTruncation { mode: p.mode.clone(), n_max: p.n_max, u_bound: p.u_bound, normalized: p.normalized, slices })
}

fn build_slice(builder: &Builder, p: &BgParams, w: i64, positive: bool) -> Result<BgSlice> {
    let alg = builder.alg;
    let mut chains: Vec<BTreeMap<i64, ChainSpace>> = Vec::new();
    for n in 0..=p.n_max {
        let mut by_deg: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
        for t in builder.enumerate(n, w) {
            let i: i64 = t.iter().map(|&a| alg.degree(a)).sum();
            by_deg.entry(i).or_default().push(t);
        }
        chains.push(by_deg.into_iter().map(|(i, b)| (i, ChainSpace::new(b))).collect());
    }
    let empty = ChainSpace::default();
    let get = |n: usize, i: i64| chains.get(n).and_then(|c| c.get(&i)).unwrap_or(&empty);
    let mut b = BTreeMap::new();
    for n in 1..=p.n_max {
        for (&i, space) in &chains[n] {
            b.insert((n, i), assemble(|x| builder.hochschild(x), space, get(n - 1, i)));
        }
    }
    let cyclic = match &builder.twist {
        None => true,
        Some(_) => builder.twist_factor(w).is_one(),
    };
    let connes = if cyclic {
        let mut m = BTreeMap::new();
        for n in 0..p.n_max {
            for (&i, space) in &chains[n] {
                m.insert((n, i), assemble(|x| builder.connes(x), space, get(n + 1, i)));
            }
        }
        Some(m)
    } else {
        None
    };
    let slice = BgSlice {
        label: SliceLabel::Weight(w),
        weight: w,
        exhausted: positive && p.n_max as i64 >= w,
        chains,
        b,
        connes,
    };
    check_axioms(&slice)?;
    Ok(slice)
}

/// `b² = 0`, `B² = 0` and `bB + Bb = 0` on every block where all spaces are built.
pub fn check_axioms(slice: &BgSlice) -> Result<()> {
    let nmax = slice.n_max();
    for i in slice.internal_degrees() {
        for n in 2..=nmax {
            if !slice.b_matrix(n - 1, i).mul(&slice.b_matrix(n, i))?.is_zero() {
                return Err(Error::NotAComplex(format!("b² ≠ 0 at n={n}, I={i} in {}", slice.label)));
            }
        }
        if slice.connes.is_none() {
            continue;
        }
        for n in 0..nmax.saturating_sub(1) {
            let bb = slice.connes_matrix(n + 1, i).unwrap().mul(&slice.connes_matrix(n, i).unwrap())?;
            if !bb.is_zero() {
                return Err(Error::NotAComplex(format!("B² ≠ 0 at n={n}, I={i} in {}", slice.label)));
            }
        }
        for n in 0..nmax {
            let left = slice.b_matrix(n + 1, i).mul(&slice.connes_matrix(n, i).unwrap())?;
            let right = if n == 0 {
                RationalMatrix::zeros(left.rows(), left.cols())
            } else {
                slice.connes_matrix(n - 1, i).unwrap().mul(&slice.b_matrix(n, i))?
            };
            if !left.add(&right)?.is_zero() {
                return Err(Error::NotAComplex(format!("bB + Bb ≠ 0 at n={n}, I={i} in {}", slice.label)));
            }
        }
    }
    Ok(())
}
