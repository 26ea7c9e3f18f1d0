//! Large-sieve inequalities over imaginary quadratic fields of class number one.
//!
//! Exact arithmetic in `O_K` ([`qfield`], [`residue`]), exact additive
//! characters ([`character`]), sharp sieve constants by power iteration
//! ([`sieve`]), the right-hand sides of the known bounds ([`bounds`]),
//! Dirichlet approximation ([`approx`]) and numerical checks of the analytic
//! identities behind them ([`analytic`]). [`cli`] drives experiments.
//!
//! ```
//! use iqsieve::qfield::{make_field, OKElt};
//! use iqsieve::sieve::{build_fractions, lambda_max, FamilyKind};
//!
//! let k = make_field(-1)?;
//! assert_eq!(k.norm(&OKElt::new(2, 1)), 5.into());
//! let family = build_fractions(&k, FamilyKind::All, 1)?;
//! let est = lambda_max(&family, 4, 1e-12, 1, 1000)?;
//! assert!((est.value - 52.0).abs() < 1e-9);
//! # Ok::<(), iqsieve::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod approx;
pub mod bounds;
pub mod character;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod qfield;
pub mod residue;
pub mod sieve;
pub mod verify;

pub use error::{Error, Result};
