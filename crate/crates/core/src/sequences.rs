//! Sequence representation, parsing, classification, energy and
//! normalization.
//!
//! A [`Sequence`] is a finite vector of complex coefficients, identified
//! with the polynomial `f(z) = sum_j f_j z^j`; coefficients outside the
//! stored index range `0..len` are implicitly zero. Length is the stored
//! coefficient count, so leading and trailing zeros are honored as given.
//!
//! Two text formats are supported, one sequence per line, with lines
//! beginning `%` treated as comments:
//!
//! * `bin:` followed by a string over `{+, -}`, e.g. `bin:++-+`
//!   (`+` is 1, `-` is -1);
//! * `cplx:` followed by comma-separated tokens `a+bi` / `a-bi` / `a` /
//!   `bi` with decimal reals, e.g. `cplx:1+0i,0.5-2i`.
//!
//! Sequences whose coefficients are all small real integers (in particular
//! everything parsed from `bin:`) additionally carry an exact integer copy
//! of their coefficients, which downstream correlation code uses to avoid
//! floating point entirely.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest integer magnitude that the exact coefficient path will carry.
///
/// Correlation sums over exact coefficients use 64-bit accumulators for
/// values and 128-bit accumulators for sums of squares; this bound keeps
/// both far from overflow for any realistic sequence length.
const EXACT_LIMIT: f64 = 1_048_576.0;

/// How far the m-ary classifier searches for the smallest root order.
const MAX_M_ARY: u32 = 256;

/// A finite complex-valued sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    coeffs: Vec<Complex64>,
    /// Exact integer coefficients, present when every coefficient is a
    /// real integer of magnitude at most [`EXACT_LIMIT`].
    exact: Option<Vec<i64>>,
}

impl Sequence {
    /// Builds a sequence from complex coefficients.
    ///
    /// Rejects the empty vector. Coefficients that are all small real
    /// integers are detected and mirrored into the exact integer path.
    pub fn from_complex(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySequence);
        }
        let exact = detect_exact(&coeffs);
        Ok(Self { coeffs, exact })
    }

    /// Builds a sequence from real coefficients.
    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::from_complex(values.iter().map(|&re| Complex64::new(re, 0.0)).collect())
    }

    /// Builds a binary sequence from signs (`true` is +1, `false` is -1).
    pub fn from_signs(signs: &[bool]) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::EmptySequence);
        }
        let exact: Vec<i64> = signs.iter().map(|&s| if s { 1 } else { -1 }).collect();
        Ok(Self {
            coeffs: exact
                .iter()
                .map(|&v| Complex64::new(v as f64, 0.0))
                .collect(),
            exact: Some(exact),
        })
    }

    /// Builds a sequence directly from exact integer coefficients.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        debug_assert!(values.iter().all(|&v| (v as f64).abs() <= EXACT_LIMIT));
        Ok(Self {
            coeffs: values
                .iter()
                .map(|&v| Complex64::new(v as f64, 0.0))
                .collect(),
            exact: Some(values.to_vec()),
        })
    }

    /// Number of stored coefficients.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// The stored coefficients, index `0..len`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient at index `j`, zero outside the stored range.
    pub fn coeff(&self, j: i64) -> Complex64 {
        if j < 0 || j as usize >= self.coeffs.len() {
            Complex64::ZERO
        } else {
            self.coeffs[j as usize]
        }
    }

    /// Exact integer coefficients, when the sequence carries them.
    pub fn exact_ints(&self) -> Option<&[i64]> {
        self.exact.as_deref()
    }

    /// True when every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// True when every coefficient is exactly +1 or -1.
    pub fn is_binary_exact(&self) -> bool {
        match &self.exact {
            Some(ints) => ints.iter().all(|&v| v == 1 || v == -1),
            None => false,
        }
    }

    /// Sum of squared coefficient magnitudes; this is also the
    /// autocorrelation at shift zero, and equals the length for
    /// unimodular sequences.
    pub fn energy(&self) -> f64 {
        if let Some(ints) = &self.exact {
            let sum: i128 = ints.iter().map(|&v| (v as i128) * (v as i128)).sum();
            sum as f64
        } else {
            self.coeffs.iter().map(|c| c.norm_sqr()).sum()
        }
    }

    /// Scales the sequence to unit energy.
    ///
    /// Errors on the all-zero sequence.
    pub fn normalize(&self) -> Result<Sequence> {
        if self.is_zero() {
            return Err(Error::ZeroSequence);
        }
        let scale = 1.0 / self.energy().sqrt();
        Sequence::from_complex(self.coeffs.iter().map(|c| c * scale).collect())
    }

    /// True when exactly one coefficient is nonzero.
    ///
    /// Uses exact comparison against stored zeros so the classification is
    /// deterministic; parsed zeros are exact.
    pub fn is_monomial(&self) -> bool {
        self.coeffs
            .iter()
            .filter(|c| c.re != 0.0 || c.im != 0.0)
            .count()
            == 1
    }

    /// Returns the coefficients scaled by a complex factor.
    pub fn scaled(&self, factor: Complex64) -> Sequence {
        // from_complex re-detects exactness, e.g. negation of a binary
        // sequence stays on the exact path.
        Sequence::from_complex(self.coeffs.iter().map(|c| c * factor).collect())
            .expect("scaling preserves length")
    }

    /// Returns the reversed sequence.
    pub fn reversed(&self) -> Sequence {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Sequence::from_complex(coeffs).expect("reversal preserves length")
    }

    /// Classifies the sequence as binary, m-ary, unimodular or general.
    ///
    /// Returns the most specific tag that fits within `tol`: binary when
    /// every coefficient is within `tol` of -1 or 1, otherwise `MAry(m)`
    /// for the smallest `m` (up to 256) whose roots of unity cover all
    /// coefficients, otherwise unimodular when all magnitudes are within
    /// `tol` of 1.
    pub fn classify(&self, tol: f64) -> SequenceClass {
        let is_binary = self.coeffs.iter().all(|c| {
            (c - Complex64::new(1.0, 0.0)).norm() <= tol
                || (c - Complex64::new(-1.0, 0.0)).norm() <= tol
        });
        let tag = if is_binary {
            ClassTag::Binary
        } else if let Some(m) = (3..=MAX_M_ARY).find(|&m| self.matches_roots(m, tol)) {
            ClassTag::MAry(m)
        } else if self
            .coeffs
            .iter()
            .all(|c| (c.norm() - 1.0).abs() <= tol)
        {
            ClassTag::Unimodular
        } else {
            ClassTag::General
        };
        SequenceClass { tag, tol }
    }

    fn matches_roots(&self, m: u32, tol: f64) -> bool {
        use std::f64::consts::TAU;
        self.coeffs.iter().all(|c| {
            let k = (c.arg() * m as f64 / TAU).round();
            let root = Complex64::from_polar(1.0, TAU * k / m as f64);
            (c - root).norm() <= tol
        })
    }

    /// Renders the sequence in `bin:` text form, when it is binary.
    pub fn to_bin_text(&self) -> Option<String> {
        if !self.is_binary_exact() {
            return None;
        }
        let body: String = self
            .exact
            .as_ref()
            .unwrap()
            .iter()
            .map(|&v| if v == 1 { '+' } else { '-' })
            .collect();
        Some(format!("bin:{body}"))
    }

    /// Renders the sequence in `cplx:` text form.
    pub fn to_cplx_text(&self) -> String {
        let body: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| {
                if c.im < 0.0 || c.im.is_sign_negative() {
                    format!("{}-{}i", c.re, -c.im)
                } else {
                    format!("{}+{}i", c.re, c.im)
                }
            })
            .collect();
        format!("cplx:{}", body.join(","))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_bin_text() {
            Some(text) => f.write_str(&text),
            None => f.write_str(&self.to_cplx_text()),
        }
    }
}

fn detect_exact(coeffs: &[Complex64]) -> Option<Vec<i64>> {
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if c.im != 0.0 || c.re.fract() != 0.0 || c.re.abs() > EXACT_LIMIT {
            return None;
        }
        ints.push(c.re as i64);
    }
    Some(ints)
}

/// Classification outcome together with the tolerance it was computed at.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SequenceClass {
    /// The most specific class tag that fits.
    pub tag: ClassTag,
    /// Tolerance used for the classification.
    pub tol: f64,
}

/// Sequence class, from most to least specific.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassTag {
    /// All terms within tolerance of -1 or 1.
    Binary,
    /// All terms within tolerance of m-th roots of unity (smallest m).
    MAry(u32),
    /// All terms within tolerance of unit magnitude.
    Unimodular,
    /// Anything else.
    General,
}

/// Parses one sequence from a single line of text.
///
/// Accepts the `bin:` and `cplx:` formats described in the module docs.
/// The all-zero sequence parses successfully (callers decide whether to
/// warn); analysis operations reject it separately.
pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let text = text.trim();
    if let Some(body) = text.strip_prefix("bin:") {
        if body.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut signs = Vec::with_capacity(body.len());
        for ch in body.chars() {
            match ch {
                '+' => signs.push(true),
                '-' => signs.push(false),
                other => {
                    return Err(Error::Parse(format!(
                        "invalid character {other:?} in bin: sequence (expected '+' or '-')"
                    )))
                }
            }
        }
        Sequence::from_signs(&signs)
    } else if let Some(body) = text.strip_prefix("cplx:") {
        if body.trim().is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut coeffs = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            let value = Complex64::from_str(token)
                .map_err(|_| Error::Parse(format!("malformed complex token {token:?}")))?;
            coeffs.push(value);
        }
        Sequence::from_complex(coeffs)
    } else {
        Err(Error::Parse(format!(
            "line must start with 'bin:' or 'cplx:', got {text:?}"
        )))
    }
}

/// Parses every sequence in a text block, one per line.
///
/// Blank lines and lines starting with `%` are skipped.
pub fn parse_sequence_lines(text: &str) -> Result<Vec<Sequence>> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('%'))
        .map(parse_sequence)
        .collect()
}
