use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Cocharacter, ElementJson, ExtAffineElement, ReducedWord};
use crate::error::{Error, Result};
use crate::exact_arith::{rat, Rational, RationalMatrix};

type IMatrix = Vec<Vec<i64>>;

const MAX_WEYL_ORDER: usize = 50_000;

/// Serialized description of a root datum (the preset file format).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootDatumSpec {
    pub name: String,
    pub cochar_rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Simple roots in coordinates dual to the cocharacter basis.
    pub simple_roots: Vec<Vec<i64>>,
    /// Simple coroots in cocharacter coordinates.
    pub simple_coroots: Vec<Vec<i64>>,
    /// Dominant cocharacters `g_k` with `⟨α_i, g_k⟩ = c_k δ_ik`, `c_k > 0`.
    #[serde(default)]
    pub dominant_generators: Vec<Vec<i64>>,
    /// Cocharacters generating `X_*/Q^∨`; their length-zero reductions
    /// generate Ω.
    #[serde(default)]
    pub omega_translations: Vec<Vec<i64>>,
}

/// A finite Weyl group element: its action on cocharacters and its
/// lexicographically smallest reduced word in labels `1..=rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: IMatrix,
}

/// An affine simple reflection with its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReflection {
    pub label: usize,
    pub element: ExtAffineElement,
}

/// A root datum with its finite Weyl group enumerated and the affine
/// Coxeter structure of the extended affine Weyl group precomputed.
#[derive(Debug)]
pub struct RootDatum {
    spec: RootDatumSpec,
    rank: usize,
    weyl: Vec<WeylElement>,
    weyl_index: HashMap<IMatrix, usize>,
    weyl_mul: Vec<Vec<usize>>,
    weyl_inv: Vec<usize>,
    /// Positive roots (character coordinates) with matching coroots.
    positive_roots: Vec<(Vec<i64>, Vec<i64>)>,
    two_rho_check: Vec<i64>,
    affine: Vec<AffineReflection>,
    omega_generators: Vec<ExtAffineElement>,
    /// Simple-reflection index (0-based) of each Weyl word letter.
    simple_index_of_w: Vec<Option<usize>>,
}

fn pair(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(m: &IMatrix, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| pair(row, v)).collect()
}

fn mat_mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

fn identity(n: usize) -> IMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

impl RootDatum {
    pub fn new(spec: RootDatumSpec) -> Result<Self> {
        let r = spec.simple_roots.len();
        let n = spec.cochar_rank;
        if spec.simple_coroots.len() != r || spec.cartan_matrix.len() != r {
            return Err(Error::InvalidDatum(format!("{}: inconsistent rank", spec.name)));
        }
        for v in spec.simple_roots.iter().chain(&spec.simple_coroots) {
            if v.len() != n {
                return Err(Error::InvalidDatum(format!("{}: vector {:?} has wrong length", spec.name, v)));
            }
        }
        for i in 0..r {
            if spec.cartan_matrix[i].len() != r {
                return Err(Error::InvalidDatum("cartan matrix not square".into()));
            }
            for j in 0..r {
                let a = pair(&spec.simple_roots[i], &spec.simple_coroots[j]);
                if a != spec.cartan_matrix[i][j] {
                    return Err(Error::InvalidDatum(format!(
                        "{}: <alpha_{}, alpha_{}^v> = {} but cartan entry is {}",
                        spec.name,
                        i + 1,
                        j + 1,
                        a,
                        spec.cartan_matrix[i][j]
                    )));
                }
                if i == j && a != 2 {
                    return Err(Error::InvalidDatum("diagonal cartan entries must be 2".into()));
                }
                if i != j && (a > 0 || (a == 0) != (spec.cartan_matrix[j][i] == 0)) {
                    return Err(Error::InvalidDatum("not a generalized cartan matrix".into()));
                }
            }
        }
        // s_i(λ) = λ - <α_i, λ> α_i^∨ on cocharacters
        let simple_mats: Vec<IMatrix> = (0..r)
            .map(|i| {
                let mut m = identity(n);
                for row in 0..n {
                    for col in 0..n {
                        m[row][col] -= spec.simple_coroots[i][row] * spec.simple_roots[i][col];
                    }
                }
                m
            })
            .collect();

        // enumerate W by BFS, recording lex-smallest reduced words
        let mut weyl = vec![WeylElement { word: vec![], matrix: identity(n) }];
        let mut weyl_index: HashMap<IMatrix, usize> = HashMap::new();
        weyl_index.insert(identity(n), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            // words of the next length, ordered so the first hit is lex-smallest
            let mut candidates: Vec<(Vec<usize>, IMatrix)> = Vec::new();
            for &idx in &frontier {
                for (i, s) in simple_mats.iter().enumerate() {
                    let mut word = weyl[idx].word.clone();
                    word.push(i + 1);
                    candidates.push((word, mat_mul(&weyl[idx].matrix, s)));
                }
            }
            candidates.sort();
            for (word, m) in candidates {
                if !weyl_index.contains_key(&m) {
                    weyl_index.insert(m.clone(), weyl.len());
                    next.push(weyl.len());
                    weyl.push(WeylElement { word, matrix: m });
                    if weyl.len() > MAX_WEYL_ORDER {
                        return Err(Error::InvalidDatum(format!("{}: Weyl group is not finite", spec.name)));
                    }
                }
            }
            frontier = next;
        }
        let nw = weyl.len();
        let mut weyl_mul = vec![vec![0; nw]; nw];
        for a in 0..nw {
            for b in 0..nw {
                weyl_mul[a][b] = weyl_index[&mat_mul(&weyl[a].matrix, &weyl[b].matrix)];
            }
        }
        let weyl_inv: Vec<usize> = (0..nw).map(|a| (0..nw).find(|&b| weyl_mul[a][b] == 0).unwrap()).collect();

        // roots: W-orbits of (α_i, α_i^∨); w acts on characters by μ ∘ w^{-1}
        let mut roots: BTreeSet<(Vec<i64>, Vec<i64>)> = BTreeSet::new();
        for w in 0..nw {
            let winv = &weyl[weyl_inv[w]].matrix;
            for i in 0..r {
                // (wμ)_col = Σ_row μ_row (w^{-1})_{row,col}
                let mu: Vec<i64> = (0..n).map(|c| (0..n).map(|k| spec.simple_roots[i][k] * winv[k][c]).sum()).collect();
                let co = mat_vec(&weyl[w].matrix, &spec.simple_coroots[i]);
                roots.insert((mu, co));
            }
        }
        let coeffs = |mu: &[i64]| -> Option<Vec<Rational>> {
            // express μ in the basis of simple roots
            let cols: Vec<Vec<Rational>> =
                spec.simple_roots.iter().map(|a| a.iter().map(|&x| rat(x)).collect()).collect();
            solve_in_span(&cols, &mu.iter().map(|&x| rat(x)).collect::<Vec<_>>())
        };
        let mut positive_roots = Vec::new();
        for (mu, co) in &roots {
            let c = coeffs(mu).ok_or_else(|| Error::InvalidDatum("root outside root span".into()))?;
            if c.iter().all(|x| !x.is_negative()) {
                positive_roots.push((mu.clone(), co.clone()));
            } else if !c.iter().all(|x| !x.is_positive()) {
                return Err(Error::InvalidDatum("root with mixed-sign coefficients".into()));
            }
        }
        let mut two_rho_check = vec![0; n];
        for (_, co) in &positive_roots {
            for (a, b) in two_rho_check.iter_mut().zip(co) {
                *a += b;
            }
        }

        let simple_index_of_w = (0..nw)
            .map(|w| if weyl[w].word.len() == 1 { Some(weyl[w].word[0] - 1) } else { None })
            .collect();

        let mut datum = Self {
            spec,
            rank: r,
            weyl,
            weyl_index,
            weyl_mul,
            weyl_inv,
            positive_roots,
            two_rho_check,
            affine: Vec::new(),
            omega_generators: Vec::new(),
            simple_index_of_w,
        };
        datum.build_affine()?;
        Ok(datum)
    }

    fn build_affine(&mut self) -> Result<()> {
        let r = self.rank;
        let n = self.spec.cochar_rank;
        for i in 0..r {
            let w = self.weyl_index[&self.simple_matrix(i)];
            self.affine.push(AffineReflection {
                label: i + 1,
                element: ExtAffineElement { lambda: vec![0; n], w },
            });
        }
        // one affine node per irreducible component
        let comps = self.components();
        for (k, comp) in comps.iter().enumerate() {
            let height = |mu: &[i64]| -> Rational {
                let cols: Vec<Vec<Rational>> = self
                    .spec
                    .simple_roots
                    .iter()
                    .map(|a| a.iter().map(|&x| rat(x)).collect())
                    .collect();
                solve_in_span(&cols, &mu.iter().map(|&x| rat(x)).collect::<Vec<_>>())
                    .unwrap()
                    .into_iter()
                    .sum()
            };
            let support = |mu: &[i64]| -> Vec<usize> {
                let cols: Vec<Vec<Rational>> = self
                    .spec
                    .simple_roots
                    .iter()
                    .map(|a| a.iter().map(|&x| rat(x)).collect())
                    .collect();
                solve_in_span(&cols, &mu.iter().map(|&x| rat(x)).collect::<Vec<_>>())
                    .unwrap()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, _)| i)
                    .collect()
            };
            let (theta, theta_co) = self
                .positive_roots
                .iter()
                .filter(|(mu, _)| support(mu).iter().all(|i| comp.contains(i)))
                .max_by(|a, b| height(&a.0).cmp(&height(&b.0)).then(a.0.cmp(&b.0)))
                .cloned()
                .ok_or_else(|| Error::InvalidDatum("empty component".into()))?;
            let s_theta = self.reflection_index(&theta, &theta_co);
            let label = if k == 0 { 0 } else { r + k };
            self.affine.push(AffineReflection {
                label,
                element: ExtAffineElement { lambda: theta_co, w: s_theta },
            });
        }
        self.affine.sort_by_key(|a| a.label);
        let gens: Vec<ExtAffineElement> = self
            .spec
            .omega_translations
            .clone()
            .into_iter()
            .map(|g| {
                if g.len() != n {
                    return Err(Error::InvalidDatum("omega translation has wrong length".into()));
                }
                Ok(self.reduced_word(&self.translation(&g)).omega)
            })
            .collect::<Result<_>>()?;
        self.omega_generators = gens;
        for g in &self.spec.dominant_generators {
            if g.len() != n {
                return Err(Error::InvalidDatum("dominant generator has wrong length".into()));
            }
        }
        if !self.spec.dominant_generators.is_empty() && self.spec.dominant_generators.len() != r {
            return Err(Error::InvalidDatum("need one dominant generator per simple root".into()));
        }
        for (k, g) in self.spec.dominant_generators.iter().enumerate() {
            for i in 0..r {
                let p = pair(&self.spec.simple_roots[i], g);
                if (i == k && p <= 0) || (i != k && p != 0) {
                    return Err(Error::InvalidDatum(format!(
                        "dominant generator {:?} must pair only with simple root {}",
                        g,
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn simple_matrix(&self, i: usize) -> IMatrix {
        let n = self.spec.cochar_rank;
        let mut m = identity(n);
        for row in 0..n {
            for col in 0..n {
                m[row][col] -= self.spec.simple_coroots[i][row] * self.spec.simple_roots[i][col];
            }
        }
        m
    }

    fn reflection_index(&self, root: &[i64], coroot: &[i64]) -> usize {
        let n = self.spec.cochar_rank;
        let mut m = identity(n);
        for row in 0..n {
            for col in 0..n {
                m[row][col] -= coroot[row] * root[col];
            }
        }
        self.weyl_index[&m]
    }

    /// Connected components of the Dynkin diagram (0-based simple indices).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let r = self.rank;
        let mut seen = vec![false; r];
        let mut comps = Vec::new();
        for start in 0..r {
            if seen[start] {
                continue;
            }
            let mut comp = vec![];
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(i) = queue.pop_front() {
                comp.push(i);
                for j in 0..r {
                    if !seen[j] && self.spec.cartan_matrix[i][j] != 0 {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn spec(&self) -> &RootDatumSpec {
        &self.spec
    }

    /// Semisimple rank (number of simple roots).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cochar_rank(&self) -> usize {
        self.spec.cochar_rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.spec.cartan_matrix
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.spec.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.spec.simple_coroots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = (&[i64], &[i64])> {
        self.positive_roots.iter().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn weyl_element(&self, w: usize) -> &WeylElement {
        &self.weyl[w]
    }

    pub fn weyl_mul(&self, a: usize, b: usize) -> usize {
        self.weyl_mul[a][b]
    }

    pub fn weyl_inverse(&self, a: usize) -> usize {
        self.weyl_inv[a]
    }

    /// Index of the simple reflection `s_{i+1}` in the Weyl table.
    pub fn simple_reflection_index(&self, i: usize) -> usize {
        self.affine.iter().find(|a| a.label == i + 1).unwrap().element.w
    }

    /// 0-based simple index if `w` is a simple reflection.
    pub fn as_simple(&self, w: usize) -> Option<usize> {
        self.simple_index_of_w[w]
    }

    pub fn weyl_from_word(&self, word: &[usize]) -> Result<usize> {
        let mut w = 0;
        for &l in word {
            if l == 0 || l > self.rank {
                return Err(Error::InvalidElement(format!("finite reflection label {l} out of range 1..={}", self.rank)));
            }
            w = self.weyl_mul[w][self.simple_reflection_index(l - 1)];
        }
        Ok(w)
    }

    /// Action of `w` on a cocharacter.
    pub fn act(&self, w: usize, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.weyl[w].matrix, v)
    }

    /// `<α, λ>` for a character `α` and cocharacter `λ`.
    pub fn pairing(alpha: &[i64], lambda: &[i64]) -> i64 {
        pair(alpha, lambda)
    }

    pub fn affine_reflections(&self) -> &[AffineReflection] {
        &self.affine
    }

    pub fn affine_reflection(&self, label: usize) -> Option<&ExtAffineElement> {
        self.affine.iter().find(|a| a.label == label).map(|a| &a.element)
    }

    pub fn affine_labels(&self) -> Vec<usize> {
        self.affine.iter().map(|a| a.label).collect()
    }

    pub fn omega_generators(&self) -> &[ExtAffineElement] {
        &self.omega_generators
    }

    pub fn identity(&self) -> ExtAffineElement {
        ExtAffineElement { lambda: vec![0; self.spec.cochar_rank], w: 0 }
    }

    pub fn translation(&self, lambda: &[i64]) -> ExtAffineElement {
        ExtAffineElement { lambda: lambda.to_vec(), w: 0 }
    }

    pub fn finite(&self, w: usize) -> ExtAffineElement {
        ExtAffineElement { lambda: vec![0; self.spec.cochar_rank], w }
    }

    pub fn check_element(&self, x: &ExtAffineElement) -> Result<()> {
        if x.lambda.len() != self.spec.cochar_rank || x.w >= self.weyl.len() {
            return Err(Error::RootDatumMismatch(format!("{:?}", x), self.spec.name.clone()));
        }
        Ok(())
    }

    /// Group law `(λ₁,w₁)(λ₂,w₂) = (λ₁ + w₁λ₂, w₁w₂)`.
    pub fn mul(&self, a: &ExtAffineElement, b: &ExtAffineElement) -> ExtAffineElement {
        let wl = self.act(a.w, &b.lambda);
        ExtAffineElement {
            lambda: a.lambda.iter().zip(&wl).map(|(x, y)| x + y).collect(),
            w: self.weyl_mul[a.w][b.w],
        }
    }

    /// Checked multiplication (`RootDatumMismatch` on foreign elements).
    pub fn wa_multiply(&self, a: &ExtAffineElement, b: &ExtAffineElement) -> Result<ExtAffineElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: &ExtAffineElement) -> ExtAffineElement {
        let wi = self.weyl_inv[a.w];
        ExtAffineElement { lambda: self.act(wi, &a.lambda).into_iter().map(|x| -x).collect(), w: wi }
    }

    /// Length: the number of affine root hyperplanes separating the
    /// fundamental alcove from its image.
    pub fn length(&self, x: &ExtAffineElement) -> usize {
        let w_rho = self.act(x.w, &self.two_rho_check);
        let mut total = 0i64;
        for (alpha, _) in &self.positive_roots {
            let m = pair(alpha, &x.lambda);
            if pair(alpha, &w_rho) > 0 {
                total += m.abs();
            } else {
                total += (m - 1).abs();
            }
        }
        total as usize
    }

    /// Length of a finite Weyl element.
    pub fn weyl_length(&self, w: usize) -> usize {
        self.weyl[w].word.len()
    }

    /// Lexicographically smallest reduced word, as `(ω, [labels])` with
    /// `x = s_{i_1} ⋯ s_{i_k} · ω`.
    pub fn reduced_word(&self, x: &ExtAffineElement) -> ReducedWord {
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        let mut word = Vec::with_capacity(len);
        'outer: while len > 0 {
            for a in &self.affine {
                let y = self.mul(&a.element, &cur);
                let ly = self.length(&y);
                if ly < len {
                    word.push(a.label);
                    cur = y;
                    len = ly;
                    continue 'outer;
                }
            }
            unreachable!("element of positive length without a left descent");
        }
        ReducedWord { omega: cur, word }
    }

    /// Recomposes `s_{i_1} ⋯ s_{i_k} · ω`.
    pub fn compose_word(&self, word: &[usize], omega: &ExtAffineElement) -> Result<ExtAffineElement> {
        let mut x = self.identity();
        for &l in word {
            let s = self
                .affine_reflection(l)
                .ok_or_else(|| Error::InvalidElement(format!("no affine reflection labelled {l}")))?;
            x = self.mul(&x, s);
        }
        Ok(self.mul(&x, omega))
    }

    /// True for elements of the non-extended affine Weyl group (Ω-part trivial).
    pub fn in_affine_coxeter_group(&self, x: &ExtAffineElement) -> bool {
        self.reduced_word(x).omega == self.identity()
    }

    /// Permutation of affine labels induced by conjugation with `omega`.
    pub fn omega_permutation(&self, omega: &ExtAffineElement) -> Option<Vec<(usize, usize)>> {
        let inv = self.inverse(omega);
        self.affine
            .iter()
            .map(|a| {
                let c = self.mul(&self.mul(omega, &a.element), &inv);
                self.affine.iter().find(|b| b.element == c).map(|b| (a.label, b.label))
            })
            .collect()
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        self.spec.simple_roots.iter().all(|a| pair(a, lambda) >= 0)
    }

    /// Canonical split `λ = λ₁ − λ₂` with both parts dominant: `λ₂` is the
    /// smallest nonnegative combination of the dominant generators making
    /// `λ + λ₂` dominant.
    pub fn dominant_split(&self, lambda: &[i64]) -> Result<(Cocharacter, Cocharacter)> {
        let n = self.spec.cochar_rank;
        if lambda.len() != n {
            return Err(Error::InvalidElement(format!("cocharacter {:?} for {}", lambda, self.spec.name)));
        }
        let mut l2 = vec![0; n];
        if self.is_dominant(lambda) {
            return Ok((lambda.to_vec(), l2));
        }
        if self.spec.dominant_generators.len() != self.rank {
            return Err(Error::InvalidDatum(format!("{} has no dominant generators", self.spec.name)));
        }
        for (k, g) in self.spec.dominant_generators.iter().enumerate() {
            let need = -pair(&self.spec.simple_roots[k], lambda);
            if need > 0 {
                let c = pair(&self.spec.simple_roots[k], g);
                let mult = (need + c - 1) / c;
                for (a, b) in l2.iter_mut().zip(g) {
                    *a += mult * b;
                }
            }
        }
        let l1: Vec<i64> = lambda.iter().zip(&l2).map(|(a, b)| a + b).collect();
        debug_assert!(self.is_dominant(&l1) && self.is_dominant(&l2));
        Ok((l1, l2))
    }

    /// The W-orbit of a cocharacter, sorted.
    pub fn weyl_orbit(&self, lambda: &[i64]) -> Vec<Cocharacter> {
        let set: BTreeSet<Cocharacter> = (0..self.weyl.len()).map(|w| self.act(w, lambda)).collect();
        set.into_iter().collect()
    }

    pub fn parse_element(&self, e: &ElementJson) -> Result<ExtAffineElement> {
        if e.lambda.len() != self.spec.cochar_rank {
            return Err(Error::InvalidElement(format!(
                "lambda {:?} has length {}, {} needs {}",
                e.lambda,
                e.lambda.len(),
                self.spec.name,
                self.spec.cochar_rank
            )));
        }
        Ok(ExtAffineElement { lambda: e.lambda.clone(), w: self.weyl_from_word(&e.word)? })
    }

    pub fn element_json(&self, x: &ExtAffineElement) -> ElementJson {
        ElementJson { lambda: x.lambda.clone(), word: self.weyl[x.w].word.clone() }
    }

    /// Order of `s_a s_b` in the affine Weyl group, `None` if it exceeds 6.
    pub fn braid_order(&self, a: usize, b: usize) -> Option<usize> {
        let sa = self.affine_reflection(a)?;
        let sb = self.affine_reflection(b)?;
        let prod = self.mul(sa, sb);
        let mut x = prod.clone();
        for k in 1..=6 {
            if x == self.identity() {
                return Some(k);
            }
            x = self.mul(&x, &prod);
        }
        None
    }

    /// Matrix of `w` acting on cocharacters, as a rational matrix.
    pub fn weyl_matrix(&self, w: usize) -> RationalMatrix {
        let m = &self.weyl[w].matrix;
        let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        RationalMatrix::from_dense(rows).unwrap()
    }
}

/// Solves `Σ c_j cols[j] = target`; `None` if `target` is outside the span.
fn solve_in_span(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = cols.len();
    let n = target.len();
    // augmented n x (k+1)
    let mut m: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..k).map(|j| cols[j][i].clone()).chain([target[i].clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..n).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=k {
                    let d = &f * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if (row..n).any(|i| !m[i][k].is_zero()) {
        return None;
    }
    let mut out = vec![Rational::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = m[r][k].clone();
    }
    Some(out)
}
