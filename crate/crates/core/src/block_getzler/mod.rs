//! Truncated Hochschild, negative cyclic and periodic cyclic homology of
//! small graded algebras with a `G_m`-coaction, through the Block-Getzler
//! complex, plus cohomology of free graded-commutative dg algebras.
//!
//! The complex is the normalized cyclic module of `A` with Koszul signs.
//! In equivariant mode `z` has weight zero under the conjugation action, so
//! the invariant chains are the weight-zero tensors times a power of `z`;
//! each power of `z` is its own slice. Plain and twisted modes are sliced by
//! total weight, which every operator preserves.

mod algebra;
mod complex;
mod cyclic;
mod dg;

pub use algebra::{BasisSymbol, GradedAlgebra};
pub use complex::{
    build_bg_complex, check_axioms, BgMode, BgParams, BgSlice, ChainSpace, MixedComplexTruncation, SliceLabel,
};
pub use cyclic::{connes_induced_rank, cyclic_ranks, hh_ranks, CyclicVariant, DegreeRank, SliceRanks};
pub use dg::{dg_cohomology, shifted_dual_numbers, DgAlgebraSpec, DgGenerator, DgTerm, DgWindow};

#[cfg(test)]
mod tests;
