//! Verification toolkit for the nearly parallel G₂-structure on the
//! homogeneous sphere `Spin(7)/G₂ = S⁷`.
//!
//! The crate is layered:
//!
//! * [`exterior`] and [`g2algebra`]: forms, endomorphisms, and the G₂ linear
//!   algebra of ℝ⁷, generic over an exact rational or `f64` scalar.
//! * [`clifford`]: spinors of ℝ⁷ in the `Λ⁰ ⊕ Λ¹` model.
//! * [`homogeneous`]: the reductive decomposition `spin(7) = g₂ ⊕ m` and the
//!   canonical and Levi-Civita curvature tensors.
//! * [`peterweyl`]: Spin(7) irreps with their G₂ branching, and invariant
//!   differential operators restricted to isotypic blocks.

pub mod clifford;
pub mod dense;
pub mod error;
pub mod exterior;
pub mod g2algebra;
pub mod homogeneous;
pub mod linalg;
pub mod peterweyl;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};

/// Chapters of the guide in `book/`, compiled here so their examples run as
/// doc-tests.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod chapter0 {}
    #[doc = include_str!("../../../book/src/forms.md")]
    pub mod chapter1 {}
    #[doc = include_str!("../../../book/src/g2-structure.md")]
    pub mod chapter2 {}
    #[doc = include_str!("../../../book/src/spinors.md")]
    pub mod chapter3 {}
    #[doc = include_str!("../../../book/src/homogeneous.md")]
    pub mod chapter4 {}
    #[doc = include_str!("../../../book/src/peter-weyl.md")]
    pub mod chapter5 {}
    #[doc = include_str!("../../../book/src/theorems.md")]
    pub mod chapter6 {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod chapter7 {}
}
pub use report::{Check, CheckReport, Status};
pub use scalar::{Rational, Scalar};
