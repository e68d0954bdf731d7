//! Deligne–Langlands parameters: conjugacy classes of pairs `(s, N)` with
//! `s` semisimple, `N` nilpotent and `sNs⁻¹ = qN`.
//!
//! For `GL_n` the classes are multisegments. Eigenvalues are formal symbols
//! (or exact rationals) tagged with integer powers of q, so only the
//! q-shift relations between them enter. For `SL_2` every question reduces
//! to the q-eigenspace of `Ad(s)` on `sl_2` and the stabilizer algebra of
//! `(s, n)` inside `M_2`.

mod gln;
pub mod oracle;
mod sl2;

pub use gln::{
    compositions, count_irreducibles_gln, enumerate_gln, gl2_pair_stabilizer, multisegments, orbit_name,
    orbit_support, shapes, DLParameterGLn, EigenBase, Eigenvalue, EigenvalueData, QValue, Segment, Shape,
    StabilizerReport, ROOT_OF_UNITY_BOUND,
};
pub use sl2::{
    component_group_sl2, sl2_table, Centralizer, ComponentGroup, ComponentGroups, Geometry, Lambda, NStratum,
    QDescriptor, QMonomial, Regime, SL2ParameterRow, Sl2Nilpotent,
};

#[cfg(test)]
mod tests;
