//! Cohomology of free graded-commutative dg algebras, weight by weight.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{homology_ranks, parse_rational, Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgGenerator {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

/// `coeff · Π name^power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgTerm {
    pub coeff: String,
    #[serde(default)]
    pub monomial: BTreeMap<String, u32>,
}

/// Generators, relations and the differential on generators. Only free
/// algebras are supported, so `relations` must be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgAlgebraSpec {
    pub generators: Vec<DgGenerator>,
    #[serde(default)]
    pub relations: Vec<Vec<DgTerm>>,
    #[serde(default)]
    pub differential: BTreeMap<String, Vec<DgTerm>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgWindow {
    pub min_degree: i64,
    pub max_degree: i64,
    pub max_weight: i64,
}

type Poly = BTreeMap<Vec<u32>, Rational>;

struct FreeAlgebra {
    degrees: Vec<i64>,
    weights: Vec<i64>,
    d: Vec<Poly>,
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

fn add_into(p: &mut Poly, m: Vec<u32>, c: Rational) {
    let e = p.entry(m.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

impl FreeAlgebra {
    fn from_spec(spec: &DgAlgebraSpec) -> Result<Self> {
        if !spec.relations.is_empty() {
            return Err(Error::InvalidAlgebra("only free graded-commutative algebras are supported".into()));
        }
        let mut index = HashMap::new();
        for (i, g) in spec.generators.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::InvalidAlgebra(format!("duplicate generator {}", g.name)));
            }
            if g.weight < 1 {
                return Err(Error::InvalidAlgebra(format!("generator {} needs positive weight", g.name)));
            }
        }
        let n = spec.generators.len();
        let mut alg = Self {
            degrees: spec.generators.iter().map(|g| g.degree).collect(),
            weights: spec.generators.iter().map(|g| g.weight).collect(),
            d: vec![Poly::new(); n],
        };
        for (name, terms) in &spec.differential {
            let &g = index.get(name).ok_or_else(|| Error::InvalidAlgebra(format!("unknown generator {name}")))?;
            let mut p = Poly::new();
            for t in terms {
                let mut m = vec![0u32; n];
                for (v, &e) in &t.monomial {
                    let &k = index.get(v).ok_or_else(|| Error::InvalidAlgebra(format!("unknown generator {v}")))?;
                    m[k] += e;
                }
                if (0..n).any(|k| odd(alg.degrees[k]) && m[k] > 1) {
                    continue;
                }
                if alg.degree(&m) != alg.degrees[g] + 1 || alg.weight(&m) != alg.weights[g] {
                    return Err(Error::InvalidAlgebra(format!(
                        "d({name}) has a term of degree {} and weight {}",
                        alg.degree(&m),
                        alg.weight(&m)
                    )));
                }
                add_into(&mut p, m, parse_rational(&t.coeff)?);
            }
            alg.d[g] = p;
        }
        for g in 0..n {
            if !alg.d_poly(&alg.d[g].clone()).is_empty() {
                return Err(Error::DifferentialNotSquareZero(spec.generators[g].name.clone()));
            }
        }
        Ok(alg)
    }

    fn degree(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.degrees).map(|(&e, d)| e as i64 * d).sum()
    }

    fn weight(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.weights).map(|(&e, w)| e as i64 * w).sum()
    }

    /// Product of monomials in the canonical order, with the Koszul sign.
    fn mul_mono(&self, a: &[u32], b: &[u32]) -> Option<(Vec<u32>, bool)> {
        let mut negative = false;
        for j in 0..a.len() {
            if !odd(self.degrees[j]) || b[j] == 0 {
                continue;
            }
            if a[j] > 0 {
                return None;
            }
            let passed = (j + 1..a.len()).filter(|&i| odd(self.degrees[i]) && a[i] > 0).count();
            negative ^= passed % 2 == 1;
        }
        Some((a.iter().zip(b).map(|(x, y)| x + y).collect(), negative))
    }

    fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::new();
        for (a, x) in p {
            for (b, y) in q {
                if let Some((m, neg)) = self.mul_mono(a, b) {
                    let c = x * y;
                    add_into(&mut out, m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Leibniz rule over the generator factors of each monomial.
    fn d_mono(&self, m: &[u32]) -> Poly {
        let n = m.len();
        let factors: Vec<usize> = (0..n).flat_map(|g| std::iter::repeat_n(g, m[g] as usize)).collect();
        let mono = |fs: &[usize]| {
            let mut e = vec![0u32; n];
            for &g in fs {
                e[g] += 1;
            }
            Poly::from([(e, Rational::one())])
        };
        let mut out = Poly::new();
        let mut sign_deg = 0i64;
        for k in 0..factors.len() {
            let g = factors[k];
            let term = self.mul(&self.mul(&mono(&factors[..k]), &self.d[g]), &mono(&factors[k + 1..]));
            for (e, c) in term {
                add_into(&mut out, e, if odd(sign_deg) { -c } else { c });
            }
            sign_deg += self.degrees[g];
        }
        out
    }

    fn d_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (m, c) in p {
            for (e, x) in self.d_mono(m) {
                add_into(&mut out, e, c * x);
            }
        }
        out
    }

    /// Monomials of the given weight, grouped by degree.
    fn monomials(&self, weight: i64) -> BTreeMap<i64, Vec<Vec<u32>>> {
        let mut out: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
        let mut cur = Vec::new();
        self.monomials_rec(weight, &mut cur, &mut out);
        out
    }

    fn monomials_rec(&self, remaining: i64, cur: &mut Vec<u32>, out: &mut BTreeMap<i64, Vec<Vec<u32>>>) {
        let g = cur.len();
        if g == self.degrees.len() {
            if remaining == 0 {
                out.entry(self.degree(cur)).or_default().push(cur.clone());
            }
            return;
        }
        let cap = if odd(self.degrees[g]) { 1 } else { (remaining / self.weights[g]) as u32 };
        for e in 0..=cap {
            let w = e as i64 * self.weights[g];
            if w > remaining {
                break;
            }
            cur.push(e);
            self.monomials_rec(remaining - w, cur, out);
            cur.pop();
        }
    }
}

/// Cohomology ranks per `(degree, weight)` in the window, including zeros.
pub fn dg_cohomology(spec: &DgAlgebraSpec, window: DgWindow) -> Result<BTreeMap<(i64, i64), usize>> {
    let alg = FreeAlgebra::from_spec(spec)?;
    let mut out = BTreeMap::new();
    for w in 0..=window.max_weight {
        let spaces = alg.monomials(w);
        let matrix = |deg: i64| -> RationalMatrix {
            let empty = Vec::new();
            let src = spaces.get(&deg).unwrap_or(&empty);
            let dst = spaces.get(&(deg + 1)).unwrap_or(&empty);
            let idx: HashMap<&Vec<u32>, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut m = RationalMatrix::zeros(dst.len(), src.len());
            for (j, mono) in src.iter().enumerate() {
                for (e, c) in alg.d_mono(mono) {
                    m.add_to(idx[&e], j, &c);
                }
            }
            m
        };
        for deg in window.min_degree..=window.max_degree {
            out.insert((deg, w), homology_ranks(&matrix(deg - 1), &matrix(deg))?);
        }
    }
    Ok(out)
}

/// `k[t, εt]` with `|t| = 0`, `|εt| = −1`, both of weight 1, and `d(εt) = n·t`.
pub fn shifted_dual_numbers(n: i64) -> DgAlgebraSpec {
    DgAlgebraSpec {
        generators: vec![
            DgGenerator { name: "t".into(), degree: 0, weight: 1 },
            DgGenerator { name: "et".into(), degree: -1, weight: 1 },
        ],
        relations: vec![],
        differential: BTreeMap::from([(
            "et".to_string(),
            vec![DgTerm { coeff: n.to_string(), monomial: BTreeMap::from([("t".to_string(), 1)]) }],
        )]),
    }
}
