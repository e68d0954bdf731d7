use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;

/// A homogeneous basis element: cohomological degree and `G_m`-weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSymbol {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

type Product = Vec<(usize, Rational)>;

/// A graded algebra with a finite homogeneous basis, stored up to a weight
/// bound. Products of total weight above the bound are not stored.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    basis: Vec<BasisSymbol>,
    unit: usize,
    table: HashMap<(usize, usize), Product>,
    max_weight: i64,
}

impl GradedAlgebra {
    /// Validates unit laws, homogeneity and associativity within the bound.
    /// Pairs missing from `table` multiply to zero.
    pub fn new(
        basis: Vec<BasisSymbol>,
        unit: usize,
        table: HashMap<(usize, usize), Product>,
        max_weight: i64,
    ) -> Result<Self> {
        if unit >= basis.len() {
            return Err(Error::InvalidAlgebra(format!("unit index {unit} out of range")));
        }
        if basis[unit].degree != 0 || basis[unit].weight != 0 {
            return Err(Error::InvalidAlgebra("unit must have degree 0 and weight 0".into()));
        }
        let mut table: HashMap<(usize, usize), Product> =
            table.into_iter().filter(|(_, p)| p.iter().any(|(_, c)| !c.is_zero())).collect();
        for i in 0..basis.len() {
            for key in [(unit, i), (i, unit)] {
                let want = vec![(i, Rational::one())];
                match table.get(&key) {
                    Some(p) if *p != want => {
                        return Err(Error::InvalidAlgebra(format!("unit law fails for {}", basis[i].name)))
                    }
                    _ => {
                        table.insert(key, want);
                    }
                }
            }
        }
        for (&(i, j), p) in &table {
            if i >= basis.len() || j >= basis.len() {
                return Err(Error::InvalidAlgebra(format!("product ({i},{j}) out of range")));
            }
            for (k, _) in p {
                let bk = basis.get(*k).ok_or_else(|| Error::InvalidAlgebra(format!("basis index {k}")))?;
                if bk.degree != basis[i].degree + basis[j].degree || bk.weight != basis[i].weight + basis[j].weight
                {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}*{} has a term {} of the wrong degree or weight",
                        basis[i].name, basis[j].name, bk.name
                    )));
                }
            }
        }
        let alg = Self { basis, unit, table, max_weight };
        alg.check_associative()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.basis.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.basis[a].weight + self.basis[b].weight + self.basis[c].weight > self.max_weight {
                        continue;
                    }
                    let left = self.mul_vec(self.mul(a, b), c, true);
                    let right = self.mul_vec(self.mul(b, c), a, false);
                    if normalize(left) != normalize(right) {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[a].name, self.basis[b].name, self.basis[c].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(Σ p_k e_k)·e_c` when `right`, else `e_a·(Σ p_k e_k)`.
    fn mul_vec(&self, p: &[(usize, Rational)], other: usize, right: bool) -> Product {
        let mut out = Vec::new();
        for (k, x) in p {
            let prod = if right { self.mul(*k, other) } else { self.mul(other, *k) };
            out.extend(prod.iter().map(|(m, y)| (*m, x * y)));
        }
        out
    }

    /// The ground field `k`.
    pub fn ground() -> Self {
        let basis = vec![BasisSymbol { name: "1".into(), degree: 0, weight: 0 }];
        Self::new(basis, 0, HashMap::new(), i64::MAX / 4).expect("ground field")
    }

    /// `Sym(𝔥*[-2])` for `dim 𝔥 = rank`: generators of degree 2 and weight 1,
    /// stored up to total weight `max_weight`.
    pub fn sym(rank: usize, max_weight: i64) -> Result<Self> {
        Self::sym_with(rank, 2, 1, max_weight)
    }

    /// Polynomial algebra on `rank` generators of the given even degree and
    /// positive weight.
    pub fn sym_with(rank: usize, degree: i64, weight: i64, max_weight: i64) -> Result<Self> {
        if degree % 2 != 0 || weight <= 0 {
            return Err(Error::InvalidAlgebra("sym needs even degree and positive weight".into()));
        }
        let max_total = (max_weight / weight).max(0) as u32;
        let mut exps: Vec<Vec<u32>> = Vec::new();
        monomials(rank, max_total, &mut vec![], &mut exps);
        exps.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
        let index: HashMap<Vec<u32>, usize> = exps.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let basis = exps
            .iter()
            .map(|e| {
                let total = e.iter().sum::<u32>() as i64;
                BasisSymbol { name: monomial_name(e), degree: degree * total, weight: weight * total }
            })
            .collect();
        let mut table = HashMap::new();
        for (i, a) in exps.iter().enumerate() {
            for (j, b) in exps.iter().enumerate() {
                let c: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(&k) = index.get(&c) {
                    table.insert((i, j), vec![(k, Rational::one())]);
                }
            }
        }
        Self::new(basis, 0, table, max_weight)
    }

    /// Exterior algebra on one generator of the given odd degree and weight.
    pub fn exterior(degree: i64, weight: i64) -> Result<Self> {
        if degree % 2 == 0 {
            return Err(Error::InvalidAlgebra("exterior generator must have odd degree".into()));
        }
        let basis = vec![
            BasisSymbol { name: "1".into(), degree: 0, weight: 0 },
            BasisSymbol { name: "e".into(), degree, weight },
        ];
        Self::new(basis, 0, HashMap::new(), i64::MAX / 4)
    }

    /// Graded tensor product with the Koszul sign
    /// `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let max_weight = self.max_weight.min(other.max_weight);
        let mut pairs = Vec::new();
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                if self.basis[i].weight + other.basis[j].weight <= max_weight {
                    pairs.push((i, j));
                }
            }
        }
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let basis = pairs
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (&self.basis[i], &other.basis[j]);
                BasisSymbol {
                    name: format!("{}⊗{}", a.name, b.name),
                    degree: a.degree + b.degree,
                    weight: a.weight + b.weight,
                }
            })
            .collect();
        let mut table = HashMap::new();
        for (x, &(a, b)) in pairs.iter().enumerate() {
            for (y, &(a2, b2)) in pairs.iter().enumerate() {
                let sign = if (other.basis[b].degree * self.basis[a2].degree) % 2 != 0 { -1 } else { 1 };
                let mut prod = Vec::new();
                for (k, c) in self.mul(a, a2) {
                    for (l, d) in other.mul(b, b2) {
                        if let Some(&z) = index.get(&(*k, *l)) {
                            prod.push((z, c * d * Rational::from_integer(sign.into())));
                        }
                    }
                }
                if !prod.is_empty() {
                    table.insert((x, y), prod);
                }
            }
        }
        Self::new(basis, index[&(self.unit, other.unit)], table, max_weight)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisSymbol] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.basis[i].weight
    }

    /// Product of two basis elements; empty when zero or beyond the bound.
    pub fn mul(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        self.table.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn normalize(p: Product) -> Vec<(usize, Rational)> {
    let mut m: std::collections::BTreeMap<usize, Rational> = Default::default();
    for (k, c) in p {
        *m.entry(k).or_insert_with(Rational::zero) += c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn monomials(rank: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == rank {
        out.push(prefix.clone());
        return;
    }
    for e in 0..=budget {
        prefix.push(e);
        monomials(rank, budget - e, prefix, out);
        prefix.pop();
    }
}

fn monomial_name(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| if x == 1 { format!("h{}", i + 1) } else { format!("h{}^{}", i + 1, x) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
