//! Exact integer computations with the arc ring of crossingless matchings:
//! its center, presentations of the cohomology ring of the `(n,n)` Springer
//! variety, and the braid-group null-homotopy built from saddle maps.

pub mod arc_ring;
pub mod braid;
pub mod center;
pub mod cli;
pub mod cobordism;
pub mod combinatorics;
pub mod error;
pub mod frobenius;
pub mod linalg;
pub mod presentations;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matchings.md")]
    mod matchings {}
    #[doc = include_str!("../../../book/src/arc-ring.md")]
    mod arc_ring {}
    #[doc = include_str!("../../../book/src/center.md")]
    mod center {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/homotopy.md")]
    mod homotopy {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
