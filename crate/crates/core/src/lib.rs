//! Aperiodic correlation analysis for complex-valued sequences.
//!
//! This crate computes aperiodic auto- and crosscorrelation spectra, the
//! associated demerit factors, and the Pursley-Sarwate Criterion
//!
//! ```text
//! PSC(f, g) = sqrt(ADF(f) * ADF(g)) + CDF(f, g)
//! ```
//!
//! which is at least 1 for every pair of nonzero sequences. The minimum is
//! attained exactly by the Golay complementary pairs (up to a positive
//! scaling of one sequence) and by pairs containing a monomial; the
//! [`criteria`] module classifies which case a given pair falls into.
//!
//! The [`golay`] module verifies the complementarity condition
//! `C_ff(s) + C_gg(s) = 0` for all nonzero shifts and constructs certified
//! binary Golay pairs for every length of the form `2^a * 10^b * 26^c`.
//! The [`explore`] module provides exhaustive enumeration over small binary
//! pair spaces, seeded Monte Carlo estimation of the random-pair baseline,
//! and a bit-flip local search for low-PSC pairs.
//!
//! Binary sequences are carried with exact integer coefficients internally,
//! so correlation values, Golay residuals, and demerit factors over binary
//! inputs are computed without floating-point rounding.

pub mod correlation;
pub mod criteria;
pub mod explore;
pub mod golay;
pub mod sequences;

pub use correlation::{CorrelationSpectrum, Engine};
pub use criteria::{DemeritReport, EqualityCase};
pub use explore::{McStats, SearchMode, SearchResult};
pub use golay::GolayCertificate;
pub use sequences::{Sequence, SequenceClass};

/// Errors produced by parsing and analysis operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A sequence must contain at least one coefficient.
    #[error("empty sequence")]
    EmptySequence,
    /// The all-zero sequence is rejected by analysis entry points.
    #[error("all-zero sequence is not a valid analysis input")]
    ZeroSequence,
    /// Text input did not match the `bin:`/`cplx:` sequence format.
    #[error("sequence parse error: {0}")]
    Parse(String),
    /// Monomials are classified separately and rejected by ratio-fitting
    /// operations that need at least one nonzero autocorrelation sidelobe.
    #[error("monomial sequence is not valid here")]
    MonomialInput,
    /// Lengths not of the form 2^a * 10^b * 26^c have no known binary
    /// Golay pair construction.
    #[error("inadmissible length {0}: not of the form 2^a * 10^b * 26^c")]
    InadmissibleLength(u64),
    /// Seed pairs exist only for the base lengths 1, 2, 10 and 26.
    #[error("no embedded seed pair for base length {0}")]
    UnsupportedSeedBase(u64),
    /// A constructor required a certified Golay pair as input.
    #[error("input pair is not a Golay pair (max residual {residual})")]
    NotGolay {
        /// Max absolute autocorrelation-sum residual over nonzero shifts.
        residual: f64,
    },
    /// A constructor required binary (+1/-1) sequences.
    #[error("sequences must be binary (+1/-1 coefficients)")]
    NotBinary,
    /// The two sequences of a pair must have equal lengths.
    #[error("sequence lengths must match: {0} vs {1}")]
    LengthMismatch(usize, usize),
    /// A search parameter fell outside its supported range.
    #[error("{what} = {value} out of supported range {min}..={max}")]
    OutOfRange {
        /// Parameter name.
        what: &'static str,
        /// Offending value.
        value: u64,
        /// Inclusive lower bound.
        min: u64,
        /// Inclusive upper bound.
        max: u64,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
