//! Exact computation of signed Bernoulli convolutions scaled by multinacci
//! numbers.
//!
//! The signed Bernoulli convolution
//!
//! ```text
//! ν^(n) = ∗_{j=1..n} ( ½ δ_{β^-j} − ½ δ_{−β^-j} )
//! ```
//!
//! is a finite signed atomic measure. For the multinacci numbers `β`
//! (`β^m = β^{m-1} + ⋯ + β + 1`) its atoms live in `β^{-n} Z[β]`, so every
//! coincidence and cancellation can be decided exactly. This crate builds
//! those measures, the pruned tree of surviving sign sequences, the
//! recurrence and asymptotics of `a_n = 2^n ‖ν^(n)‖`, the sine-product bound
//! on the Fourier side, and the odd-`m` no-decay checks.
//!
//! ```
//! use signed_bernoulli::{algebraic::FieldSpec, measure::SignedMeasure};
//!
//! let spec = FieldSpec::new(2)?;
//! let nu = SignedMeasure::signed(&spec, 10)?;
//! assert_eq!(nu.total_variation().to_string(), "7/64"); // 112/1024
//! # Ok::<(), signed_bernoulli::Error>(())
//! ```

pub mod algebraic;
pub mod asymptotics;
pub mod cli;
mod error;

pub mod measure;
pub mod oddm;
pub mod sineprod;
pub mod tree;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/pruned-tree.md")]
    mod pruned_tree {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    mod asymptotics {}
    #[doc = include_str!("../../../book/src/sine-products.md")]
    mod sine_products {}
    #[doc = include_str!("../../../book/src/odd-m.md")]
    mod odd_m {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

/// Version tag carried by every JSON document and CSV table we emit.
pub const SCHEMA_VERSION: u32 = 1;
