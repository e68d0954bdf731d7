//! Inertial types for `GL_n`, the factorization of their block Hecke
//! algebras, and the parabolic-induction embeddings between Levi Hecke
//! algebras.
//!
//! A type is a multiset of inertial classes `η` with dimension `d_η`,
//! degree `r_η` of the field `E_η`, and multiplicity `n_η`. Its block Hecke
//! algebra is `⊗_η ℋ_{q^{r_η}}(n_η)`. Entries are ordered by label.

mod embedding;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::dl_params::orbit_name;

pub use embedding::{embedding_checks, hecke_embedding, levi_embedding, transitivity_holds, EmbeddingReport, LeviEmbedding};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeEntry {
    pub label: String,
    pub d: usize,
    pub r: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InertialTypeSpec {
    pub n: usize,
    pub entries: Vec<TypeEntry>,
}

impl InertialTypeSpec {
    /// The trivial type: one unramified character with multiplicity `n`.
    pub fn trivial(n: usize) -> Self {
        InertialTypeSpec { n, entries: vec![TypeEntry { label: "a".into(), d: 1, r: 1, multiplicity: n }] }
    }

    /// Entries sorted by label.
    pub fn sorted_entries(&self) -> Vec<TypeEntry> {
        let mut e = self.entries.clone();
        e.sort();
        e
    }
}

/// Checks `Σ n_η·r_η·d_η = n` with positive data and distinct labels.
pub fn validate_type(nu: &InertialTypeSpec) -> Result<()> {
    let mut seen = BTreeSet::new();
    for e in &nu.entries {
        if e.d == 0 || e.r == 0 || e.multiplicity == 0 {
            return Err(Error::InvalidElement(format!("entry {} has a zero field", e.label)));
        }
        if !seen.insert(&e.label) {
            return Err(Error::DuplicateLabel(e.label.clone()));
        }
    }
    let found = nu.entries.iter().map(|e| e.multiplicity * e.r * e.d).sum();
    if found != nu.n || nu.n == 0 {
        return Err(Error::TypeDimensionMismatch { expected: nu.n, found });
    }
    Ok(())
}

/// `ℋ_{q^r}(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeFactor {
    pub label: String,
    pub r: usize,
    pub rank: usize,
    pub name: String,
}

/// `X¹` of rank `n_η` over `E_η`; `E_η` is recorded by its degree `r_η`
/// over `F` and the tag `r_η·d_η`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliFactor {
    pub label: String,
    pub field: String,
    pub degree: usize,
    pub tag: usize,
    pub rank: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDescriptor {
    pub n: usize,
    pub levi_blocks: Vec<usize>,
    pub hecke_factors: Vec<HeckeFactor>,
    pub moduli_factors: Vec<ModuliFactor>,
    pub hecke_algebra: String,
    pub springer_sheaf_note: String,
}

fn hecke_name(q: &str, r: usize, m: usize) -> String {
    match r {
        1 => format!("H_{q}({m})"),
        _ => format!("H_{{{q}^{r}}}({m})"),
    }
}

/// The block of `ν`: Levi `L_ν` with `n_η` blocks of size `r_η·d_η` per `η`,
/// Hecke algebra `⊗ ℋ_{q^{r_η}}(n_η)` and parameter moduli `∏ X¹_{E_η}(n_η)`.
pub fn block_decompose(nu: &InertialTypeSpec, q: &str) -> Result<BlockDescriptor> {
    validate_type(nu)?;
    let entries = nu.sorted_entries();
    let mut levi_blocks = Vec::new();
    let mut hecke_factors = Vec::new();
    let mut moduli_factors = Vec::new();
    for e in &entries {
        levi_blocks.extend(std::iter::repeat_n(e.r * e.d, e.multiplicity));
        hecke_factors.push(HeckeFactor {
            label: e.label.clone(),
            r: e.r,
            rank: e.multiplicity,
            name: hecke_name(q, e.r, e.multiplicity),
        });
        let field = if e.r == 1 { "F".to_string() } else { format!("E_{}", e.label) };
        moduli_factors.push(ModuliFactor {
            label: e.label.clone(),
            name: format!("X^1_{field}({})", e.multiplicity),
            field,
            degree: e.r,
            tag: e.r * e.d,
            rank: e.multiplicity,
        });
    }
    let hecke_algebra = hecke_factors.iter().map(|h| h.name.as_str()).collect::<Vec<_>>().join(" ⊗ ");
    let levi = levi_blocks.iter().map(|b| format!("GL{b}")).collect::<Vec<_>>().join(" × ");
    let springer_sheaf_note = format!(
        "S_nu is the pushforward of the structure sheaf along the parabolic Springer map for L_nu = {levi}; \
         it is the exterior product over eta of coherent Springer sheaves for GL_(n_eta) over E_eta"
    );
    Ok(BlockDescriptor { n: nu.n, levi_blocks, hecke_factors, moduli_factors, hecke_algebra, springer_sheaf_note })
}

/// Every type of `GL_n` built from the catalog of `(d, r)` shapes, up to
/// renaming labels: labels of one shape form a multiset of multiplicities.
/// Labels are assigned `a, b, c, …` over the sorted shapes, multiplicities
/// non-increasing within a shape.
pub fn enumerate_types(n: usize, catalog: &[(usize, usize)]) -> Result<Vec<InertialTypeSpec>> {
    if n == 0 {
        return Err(Error::InvalidElement("n must be positive".into()));
    }
    let mut shapes: Vec<(usize, usize)> = catalog.to_vec();
    if shapes.iter().any(|&(d, r)| d == 0 || r == 0) {
        return Err(Error::InvalidElement("catalog shapes must be positive".into()));
    }
    shapes.sort();
    shapes.dedup();
    let mut out = Vec::new();
    extend_types(n, &shapes, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

fn extend_types(
    left: usize,
    shapes: &[(usize, usize)],
    idx: usize,
    acc: &mut Vec<(usize, usize, usize)>,
    out: &mut Vec<InertialTypeSpec>,
) {
    if idx == shapes.len() {
        if left == 0 {
            let n = acc.iter().map(|&(d, r, m)| d * r * m).sum();
            let entries = acc
                .iter()
                .enumerate()
                .map(|(i, &(d, r, m))| TypeEntry { label: orbit_name(i), d, r, multiplicity: m })
                .collect();
            out.push(InertialTypeSpec { n, entries });
        }
        return;
    }
    let (d, r) = shapes[idx];
    let w = d * r;
    for total in 0..=left / w {
        for parts in partitions(total, total) {
            let len = acc.len();
            acc.extend(parts.iter().map(|&m| (d, r, m)));
            extend_types(left - total * w, shapes, idx + 1, acc, out);
            acc.truncate(len);
        }
    }
}

/// Partitions of `n` into parts of size at most `max`, parts non-increasing.
pub fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
