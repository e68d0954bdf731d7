//! Exact computations around affine Hecke algebras and coherent Springer
//! theory at the level of Grothendieck groups and Hochschild homology.
//!
//! * [`exact_arith`]: Laurent polynomials, rational functions, rank engine.
//! * [`root_weyl`]: root data and extended affine Weyl groups.
//! * [`hecke`]: the affine Hecke algebra in the `T_w` basis and its
//!   Bernstein elements.
//! * [`block_getzler`]: Hochschild, negative cyclic and periodic homology of
//!   small graded algebras with a `G_m`-coaction.
//! * [`steinberg_sl2`]: a fixed-point localization model of equivariant
//!   K-theory of the SL2 Steinberg variety.
//! * [`dl_params`]: q-commuting pairs for GL_n and SL2.
//! * [`gln_blocks`]: inertial types, block Hecke factorizations and Levi
//!   embeddings.
//! * [`verify`]: the reproducible checks run by `springer verify-all`.

pub mod block_getzler;
pub mod dl_params;
pub mod error;
pub mod exact_arith;
pub mod gln_blocks;
pub mod hecke;
pub mod root_weyl;
pub mod steinberg_sl2;
pub mod verify;

pub use error::{Error, Result};
