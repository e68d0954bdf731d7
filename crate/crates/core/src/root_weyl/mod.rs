//! Root data, finite Weyl groups, and the extended affine Weyl group
//! `W ⋉ X_*(T)` acting on `X_*(T) ⊗ R` by `(λ, w)·v = λ + w v`.
//!
//! Affine simple reflections are labelled: finite simple reflections are
//! `1..=rank`; the affine node of the first irreducible component is `0` and
//! the affine nodes of further components are `rank+1, rank+2, …`.

mod datum;
pub mod oracle;
mod presets;

pub use datum::{AffineReflection, RootDatum, RootDatumSpec, WeylElement};
pub use presets::{gl_levi_spec, load_datum, preset_names, DATA_ENV_VAR};

use serde::{Deserialize, Serialize};

pub type Cocharacter = Vec<i64>;

/// An element `(λ, w)` of the extended affine Weyl group, i.e. `t_λ · w`.
///
/// `w` indexes the finite Weyl group table of the owning [`RootDatum`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineElement {
    pub lambda: Cocharacter,
    pub w: usize,
}

/// JSON form `{"lambda": [...], "word": [...]}` with a finite Weyl word in
/// labels `1..=rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub lambda: Vec<i64>,
    #[serde(default)]
    pub word: Vec<usize>,
}

/// Output of [`RootDatum::reduced_word`]: `x = s_{word[0]} ⋯ s_{word[k-1]} · omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub omega: ExtAffineElement,
    pub word: Vec<usize>,
}

#[cfg(test)]
mod tests;
