//! Counting, listing and statistical analysis of nontransitive ("sucker's bet")
//! deck and dice sets.
//!
//! A set of `k` decks whose cards carry the distinct denominations `1..=N`
//! is the same thing as a word over `{1..k}`: position `i` holding letter `j`
//! puts card `i` into deck `j`. Deck `j` beats deck `j+1` exactly when the
//! signed cross-pair statistic `s_j` of the word is positive, so the whole
//! problem reduces to tracking the joint distribution of `(s_1, .., s_k)`.
//!
//! * [`laurent`] holds the exact polynomial and truncated-series arithmetic.
//! * [`words`] defines the statistics, the word/deck bijection and brute-force oracles.
//! * [`engine`] computes the weight enumerator by dynamic programming and counts or lists sets.
//! * [`dice`] handles repeated denominations via axis-parallel lattice paths.
//! * [`moments`] extracts exact mixed moments, fits closed forms, and evaluates the Gaussian limit.
//! * [`verify`] and [`repro`] bundle the cross-checks used by the command-line tool.

pub mod dice;
pub mod engine;
pub mod error;
pub mod laurent;
pub mod moments;
pub mod repro;
pub mod scalar;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use scalar::{Coefficient, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational numbers.
pub type Rational = BigRational;

/// Weight enumerators with unbounded integer coefficients.
pub type Poly = laurent::LaurentPoly<BigInt>;

/// Weight enumerators with machine-word coefficients, used when the total count fits.
pub type CountPoly = laurent::LaurentPoly<u64>;

/// Truncated series in the shift variables with exact integer coefficients.
pub type Series = laurent::TruncatedSeries<BigInt>;

/// Truncated series with exact rational coefficients.
pub type RationalSeries = laurent::TruncatedSeries<BigRational>;
