//! Fixed-point localization model of the equivariant K-theory convolution
//! algebra of the Steinberg variety of SL₂.
//!
//! `T*P¹` has two torus-fixed points `e` (the point 0) and `s` (the point ∞).
//! A class on `Z = Ñ ×_N Ñ` is recorded by its localizations at the four
//! fixed points of `Ñ × Ñ`; convolution divides by the Euler class of the
//! middle factor. Coefficients live in `Q(t, v)` with `q = v²`, and `t` is
//! the fundamental weight, so the root `α` is `t²`.

mod check;
mod class;

pub use check::{check_model, hecke_model_check, search_ts_twists, CheckResult, ModelReport, TwistCandidate};
pub use class::{FixedPoint, FixedPointClass, HeckeMap, QConvention, SteinbergModel, TangentData};

pub const T: &str = "t";
pub const VARS: [&str; 2] = ["t", "v"];

#[cfg(test)]
mod tests;
