//! Exact computations for plane cusps: semimodules of differential values,
//! standard bases, Saito bases and Saito pairs.

pub mod curve_algebra;
pub mod error;
pub mod invariants;
pub mod semigroup;
pub mod semimodule;
pub mod standard_saito;

pub(crate) mod linalg;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/semimodules.md")]
    mod semimodules {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/standard-bases.md")]
    mod standard_bases {}
    #[doc = include_str!("../../../book/src/saito-bases.md")]
    mod saito_bases {}
    #[doc = include_str!("../../../book/src/saito-pairs.md")]
    mod saito_pairs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
