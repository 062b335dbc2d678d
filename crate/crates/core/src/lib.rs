//! Exact computation of Bernoulli-type numbers together with checkers for
//! the identities and prime congruences that connect them.
//!
//! All arithmetic is exact: values are [`Rat`]s with arbitrary-precision
//! numerators and denominators, and every comparison is an equality test.

pub mod classical;
pub mod congr;
pub mod fps;
pub mod identities;
pub mod polybern;
pub mod seqcore;

pub use seqcore::Rat;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/poly-bernoulli.md")]
    mod poly_bernoulli {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/congruences.md")]
    mod congruences {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
