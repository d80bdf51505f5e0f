//! Aperiodic cross- and autocorrelation spectra.
//!
//! The aperiodic crosscorrelation of `f` with `g` at shift `s` is
//!
//! ```text
//! C_fg(s) = sum_j f_{j+s} * conj(g_j)
//! ```
//!
//! which is nonzero only for `s` in `-(len(g)-1) ..= len(f)-1`. The full
//! vector over that support is a [`CorrelationSpectrum`]. Two routes
//! compute it:
//!
//! * [`spectrum_naive`] evaluates the defining double sum in
//!   `O(len(f) * len(g))` operations and serves as the correctness oracle;
//!   pairs of exact integer sequences are accumulated in integer
//!   arithmetic, so binary inputs never touch floating point.
//! * [`spectrum_fast`] reads the spectrum off as the coefficient vector of
//!   the product `f(z) * conj(g)(z)` (where `conj(g)` has coefficient
//!   `conj(g_j)` at exponent `-j`) using FFT convolution, `O(n log n)`.
//!
//! [`energy_identity_residual`] checks the identity
//! `sum_s |C_fg(s)|^2 = sum_s C_ff(s) * conj(C_gg(s))`, a useful
//! floating-point health diagnostic: it is exact on the integer path and
//! should hold to about 1e-9 relative accuracy otherwise.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::sequences::Sequence;

/// Above this `len(f) * len(g)` product the automatic engine prefers the
/// FFT route for floating-point inputs.
const AUTO_FAST_CUTOFF: usize = 1 << 12;

/// Work bound up to which the automatic engine keeps exact integer pairs
/// on the naive route to preserve exactness (covers every Golay
/// construction length the crate certifies).
const AUTO_EXACT_CUTOFF: usize = 1 << 28;

/// Which implementation computes a spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    /// Exact integer pairs stay on the naive route (up to a work bound);
    /// floating-point pairs switch to the FFT route once the naive cost
    /// exceeds a small cutoff.
    #[default]
    Auto,
    /// Defining double sum; the oracle.
    Naive,
    /// FFT convolution.
    Fast,
}

/// Aperiodic correlation values over the full support range of shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationSpectrum {
    s_min: i64,
    values: Vec<Complex64>,
    /// Exact integer values, present when both inputs were exact and the
    /// spectrum was computed on the integer path.
    exact: Option<Vec<i64>>,
}

impl CorrelationSpectrum {
    /// Smallest shift in the support range, `-(len(g) - 1)`.
    pub fn s_min(&self) -> i64 {
        self.s_min
    }

    /// Largest shift in the support range, `len(f) - 1`.
    pub fn s_max(&self) -> i64 {
        self.s_min + self.values.len() as i64 - 1
    }

    /// Values in shift order, one per shift in `s_min ..= s_max`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Exact integer values when the spectrum was computed exactly.
    pub fn exact_values(&self) -> Option<&[i64]> {
        self.exact.as_deref()
    }

    /// Correlation value at shift `s`; zero outside the support range.
    pub fn value_at(&self, s: i64) -> Complex64 {
        let idx = s - self.s_min;
        if idx < 0 || idx as usize >= self.values.len() {
            Complex64::ZERO
        } else {
            self.values[idx as usize]
        }
    }

    /// Iterates `(shift, value)` pairs in shift order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.s_min + i as i64, v))
    }

    /// `sum_s |C(s)|^2` over the whole support.
    pub fn sum_sq_magnitudes(&self) -> f64 {
        if let Some(ints) = &self.exact {
            let sum: i128 = ints.iter().map(|&v| (v as i128) * (v as i128)).sum();
            sum as f64
        } else {
            self.values.iter().map(|v| v.norm_sqr()).sum()
        }
    }

    /// `sum_{s != 0} |C(s)|^2`.
    pub fn sum_sq_magnitudes_nonzero_shifts(&self) -> f64 {
        if let Some(ints) = &self.exact {
            let sum: i128 = ints
                .iter()
                .enumerate()
                .filter(|&(i, _)| self.s_min + i as i64 != 0)
                .map(|(_, &v)| (v as i128) * (v as i128))
                .sum();
            sum as f64
        } else {
            self.iter()
                .filter(|&(s, _)| s != 0)
                .map(|(_, v)| v.norm_sqr())
                .sum()
        }
    }

    /// Serializes the spectrum as one `shift<TAB>re<TAB>im` line per shift.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (s, v) in self.iter() {
            out.push_str(&format!("{}\t{:e}\t{:e}\n", s, v.re, v.im));
        }
        out
    }
}

/// Crosscorrelation of `f` with `g` at a single shift.
///
/// Exact integer arithmetic when both inputs carry exact coefficients.
pub fn crosscorrelation_at(f: &Sequence, g: &Sequence, s: i64) -> Complex64 {
    if let (Some(fi), Some(gi)) = (f.exact_ints(), g.exact_ints()) {
        return Complex64::new(exact_shift_sum(fi, gi, s) as f64, 0.0);
    }
    let (lo, hi) = overlap_range(f.len(), g.len(), s);
    let mut acc = Complex64::ZERO;
    for j in lo..hi {
        acc += f.coeffs()[(j + s) as usize] * g.coeffs()[j as usize].conj();
    }
    acc
}

/// Range of `j` for which both `f_{j+s}` and `g_j` are in stored range.
fn overlap_range(len_f: usize, len_g: usize, s: i64) -> (i64, i64) {
    let lo = 0.max(-s);
    let hi = (len_g as i64).min(len_f as i64 - s);
    (lo, hi.max(lo))
}

fn exact_shift_sum(f: &[i64], g: &[i64], s: i64) -> i64 {
    let (lo, hi) = overlap_range(f.len(), g.len(), s);
    let mut acc = 0i64;
    for j in lo..hi {
        acc += f[(j + s) as usize] * g[j as usize];
    }
    acc
}

/// Full crosscorrelation spectrum by the defining double sum.
///
/// This is the oracle implementation: `O(len(f) * len(g))`, exact on
/// integer inputs.
pub fn spectrum_naive(f: &Sequence, g: &Sequence) -> CorrelationSpectrum {
    let s_min = -(g.len() as i64 - 1);
    let s_max = f.len() as i64 - 1;
    if let (Some(fi), Some(gi)) = (f.exact_ints(), g.exact_ints()) {
        let ints: Vec<i64> = (s_min..=s_max)
            .map(|s| exact_shift_sum(fi, gi, s))
            .collect();
        let values = ints.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect();
        return CorrelationSpectrum {
            s_min,
            values,
            exact: Some(ints),
        };
    }
    let values = (s_min..=s_max)
        .map(|s| {
            let (lo, hi) = overlap_range(f.len(), g.len(), s);
            let mut acc = Complex64::ZERO;
            for j in lo..hi {
                acc += f.coeffs()[(j + s) as usize] * g.coeffs()[j as usize].conj();
            }
            acc
        })
        .collect();
    CorrelationSpectrum {
        s_min,
        values,
        exact: None,
    }
}

/// Full crosscorrelation spectrum via FFT convolution.
///
/// Computes the coefficients of `f(z) * conj(g)(z)` by convolving `f`
/// with the reversed conjugate of `g`, zero-padded to the next power of
/// two. Same support range as [`spectrum_naive`]; elementwise agreement
/// within `1e-8 * sqrt(energy(f) * energy(g))` for lengths up to `2^16`.
pub fn spectrum_fast(f: &Sequence, g: &Sequence) -> CorrelationSpectrum {
    let out_len = f.len() + g.len() - 1;
    let n = out_len.next_power_of_two();

    let mut a: Vec<Complex64> = Vec::with_capacity(n);
    a.extend_from_slice(f.coeffs());
    a.resize(n, Complex64::ZERO);

    // Reversed conjugate of g: coefficient conj(g_{len-1-k}) at index k,
    // so that plain convolution lands C(s) at index s + len(g) - 1.
    let mut b: Vec<Complex64> = Vec::with_capacity(n);
    b.extend(g.coeffs().iter().rev().map(|c| c.conj()));
    b.resize(n, Complex64::ZERO);

    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    fwd.process(&mut a);
    fwd.process(&mut b);
    let scale = 1.0 / n as f64;
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y * scale;
    }
    inv.process(&mut a);
    a.truncate(out_len);

    CorrelationSpectrum {
        s_min: -(g.len() as i64 - 1),
        values: a,
        exact: None,
    }
}

/// Crosscorrelation spectrum computed by the requested engine.
pub fn spectrum_with(f: &Sequence, g: &Sequence, engine: Engine) -> CorrelationSpectrum {
    match engine {
        Engine::Naive => spectrum_naive(f, g),
        Engine::Fast => spectrum_fast(f, g),
        Engine::Auto => {
            let work = f.len() * g.len();
            let exact = f.exact_ints().is_some() && g.exact_ints().is_some();
            if (exact && work <= AUTO_EXACT_CUTOFF) || work <= AUTO_FAST_CUTOFF {
                spectrum_naive(f, g)
            } else {
                spectrum_fast(f, g)
            }
        }
    }
}

/// Autocorrelation spectrum of `f`, i.e. the crosscorrelation of `f` with
/// itself. Satisfies `C(-s) = conj(C(s))` with `C(0) = energy(f)`.
pub fn autocorrelation_spectrum(f: &Sequence, fast: bool) -> CorrelationSpectrum {
    if fast {
        spectrum_fast(f, f)
    } else {
        spectrum_naive(f, f)
    }
}

/// Absolute defect in the energy identity
/// `sum_s |C_fg(s)|^2 = sum_s C_ff(s) * conj(C_gg(s))`.
///
/// Exactly zero on the integer path; expected below `1e-9` relative to the
/// left-hand side otherwise.
pub fn energy_identity_residual(f: &Sequence, g: &Sequence) -> f64 {
    let cross = spectrum_naive(f, g);
    let lhs = cross.sum_sq_magnitudes();
    let rhs = autocorrelation_product_sum(
        &autocorrelation_spectrum(f, false),
        &autocorrelation_spectrum(g, false),
    );
    (Complex64::new(lhs, 0.0) - rhs).norm()
}

/// `sum_s C_ff(s) * conj(C_gg(s))` over the common support.
pub fn autocorrelation_product_sum(
    auto_f: &CorrelationSpectrum,
    auto_g: &CorrelationSpectrum,
) -> Complex64 {
    if let (Some(a), Some(b)) = (auto_f.exact_values(), auto_g.exact_values()) {
        let mut acc = 0i128;
        for (s, &va) in a.iter().enumerate().map(|(i, v)| (auto_f.s_min + i as i64, v)) {
            let idx = s - auto_g.s_min;
            if idx >= 0 && (idx as usize) < b.len() {
                acc += (va as i128) * (b[idx as usize] as i128);
            }
        }
        return Complex64::new(acc as f64, 0.0);
    }
    auto_f
        .iter()
        .map(|(s, v)| v * auto_g.value_at(s).conj())
        .sum()
}

/// Same product sum restricted to nonzero shifts. The paper's proof
/// machinery shows this quantity is always real.
pub fn autocorrelation_product_sum_nonzero(
    auto_f: &CorrelationSpectrum,
    auto_g: &CorrelationSpectrum,
) -> Complex64 {
    autocorrelation_product_sum(auto_f, auto_g)
        - auto_f.value_at(0) * auto_g.value_at(0).conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::parse_sequence;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bin(text: &str) -> Sequence {
        parse_sequence(&format!("bin:{text}")).unwrap()
    }

    fn random_sequence(rng: &mut ChaCha8Rng, len: usize) -> Sequence {
        Sequence::from_complex(
            (0..len)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn crosscorrelation_at_examples() {
        let f = bin("++");
        let g = bin("+-");
        assert_eq!(crosscorrelation_at(&f, &g, 0), Complex64::new(0.0, 0.0));
        assert_eq!(crosscorrelation_at(&f, &g, 1), Complex64::new(1.0, 0.0));
        assert_eq!(crosscorrelation_at(&f, &g, 2), Complex64::ZERO);
        assert_eq!(crosscorrelation_at(&f, &g, -5), Complex64::ZERO);
    }

    #[test]
    fn naive_spectrum_examples() {
        let f = bin("++");
        let g = bin("+-");
        let sp = spectrum_naive(&f, &g);
        assert_eq!(sp.s_min(), -1);
        assert_eq!(sp.s_max(), 1);
        assert_eq!(sp.exact_values(), Some(&[-1, 0, 1][..]));

        let auto = spectrum_naive(&f, &f);
        assert_eq!(auto.exact_values(), Some(&[1, 2, 1][..]));
    }

    #[test]
    fn monomial_autocorrelation_is_impulse() {
        let c = Complex64::new(0.3, -1.2);
        let f = Sequence::from_complex(vec![Complex64::ZERO, Complex64::ZERO, c]).unwrap();
        let sp = autocorrelation_spectrum(&f, false);
        for (s, v) in sp.iter() {
            if s == 0 {
                assert!((v - Complex64::new(c.norm_sqr(), 0.0)).norm() < 1e-15);
            } else {
                assert_eq!(v, Complex64::ZERO);
            }
        }
    }

    #[test]
    fn monomial_cross_spectrum_is_scaled_reversed_conjugate() {
        let c = Complex64::new(2.0, 1.0);
        let f = Sequence::from_complex(vec![Complex64::ZERO, Complex64::ZERO, c]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_sequence(&mut rng, 5);
        let sp = spectrum_naive(&f, &g);
        // C(s) = c * conj(g_{2-s}) for the monomial c z^2.
        for (s, v) in sp.iter() {
            let expected = c * g.coeff(2 - s).conj();
            assert!((v - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn autocorrelation_example_and_symmetry() {
        let f = bin("+++-");
        let sp = autocorrelation_spectrum(&f, false);
        assert_eq!(sp.value_at(0), Complex64::new(4.0, 0.0));
        assert_eq!(sp.value_at(1), Complex64::new(1.0, 0.0));
        assert_eq!(sp.value_at(2), Complex64::new(0.0, 0.0));
        assert_eq!(sp.value_at(3), Complex64::new(-1.0, 0.0));
        for s in 0..=3 {
            assert_eq!(sp.value_at(-s), sp.value_at(s).conj());
        }
        assert_eq!(sp.value_at(0).re, f.energy());
    }

    #[test]
    fn fast_matches_naive_on_examples() {
        let f = bin("++");
        let g = bin("+-");
        let naive = spectrum_naive(&f, &g);
        let fast = spectrum_fast(&f, &g);
        assert_eq!(naive.s_min(), fast.s_min());
        for (a, b) in naive.values().iter().zip(fast.values()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn fast_matches_naive_unequal_lengths() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = random_sequence(&mut rng, 1000);
        let g = random_sequence(&mut rng, 700);
        let naive = spectrum_naive(&f, &g);
        let fast = spectrum_fast(&f, &g);
        let tol = 1e-8 * (f.energy() * g.energy()).sqrt();
        assert_eq!(naive.values().len(), fast.values().len());
        for (a, b) in naive.values().iter().zip(fast.values()) {
            assert!((a - b).norm() <= tol);
        }
    }

    #[test]
    fn single_element_sequences() {
        let f = Sequence::from_complex(vec![Complex64::new(0.0, 2.0)]).unwrap();
        let sp = spectrum_fast(&f, &f);
        assert_eq!(sp.s_min(), 0);
        assert_eq!(sp.s_max(), 0);
        assert!((sp.value_at(0) - Complex64::new(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn energy_identity_example() {
        let f = bin("++");
        let g = bin("+-");
        // LHS = 2; RHS = 1*(-1) + 2*2 + 1*(-1) = 2.
        assert_eq!(energy_identity_residual(&f, &g), 0.0);
    }

    #[test]
    fn energy_identity_exact_on_binary() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let len = rng.random_range(1..=32);
            let f = Sequence::from_signs(&(0..len).map(|_| rng.random()).collect::<Vec<bool>>())
                .unwrap();
            let len = rng.random_range(1..=32);
            let g = Sequence::from_signs(&(0..len).map(|_| rng.random()).collect::<Vec<bool>>())
                .unwrap();
            assert_eq!(energy_identity_residual(&f, &g), 0.0);
        }
    }

    #[test]
    fn energy_identity_small_on_random_complex() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let len_f = rng.random_range(1..=512);
            let len_g = rng.random_range(1..=512);
            let f = random_sequence(&mut rng, len_f);
            let g = random_sequence(&mut rng, len_g);
            let lhs = spectrum_naive(&f, &g).sum_sq_magnitudes();
            assert!(energy_identity_residual(&f, &g) <= 1e-9 * lhs.max(1e-300));
        }
    }

    #[test]
    fn product_sum_nonzero_shifts_is_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let len_f = rng.random_range(2..=64);
            let len_g = rng.random_range(2..=64);
            let f = random_sequence(&mut rng, len_f);
            let g = random_sequence(&mut rng, len_g);
            let sum = autocorrelation_product_sum_nonzero(
                &autocorrelation_spectrum(&f, false),
                &autocorrelation_spectrum(&g, false),
            );
            assert!(sum.im.abs() <= 1e-9 * f.energy() * g.energy());
        }
    }

    #[test]
    fn tsv_dump_is_shift_ordered() {
        let f = bin("++");
        let g = bin("+-");
        let tsv = spectrum_naive(&f, &g).to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("-1\t"));
        assert!(lines[2].starts_with("1\t"));
    }

    proptest! {
        #[test]
        fn conjugate_reversal_symmetry(
            fre in proptest::collection::vec(-1.0f64..1.0, 1..24),
            gre in proptest::collection::vec(-1.0f64..1.0, 1..24),
        ) {
            let f = Sequence::from_complex(
                fre.iter().map(|&x| Complex64::new(x, x * 0.5 - 0.1)).collect()).unwrap();
            let g = Sequence::from_complex(
                gre.iter().map(|&x| Complex64::new(-x, 0.3 * x)).collect()).unwrap();
            let fg = spectrum_naive(&f, &g);
            let gf = spectrum_naive(&g, &f);
            let scale = (f.energy() * g.energy()).sqrt().max(1e-300);
            for (s, v) in gf.iter() {
                prop_assert!((v - fg.value_at(-s).conj()).norm() <= 1e-12 * scale);
            }
        }

        #[test]
        fn fast_agrees_with_naive(
            fre in proptest::collection::vec(-1.0f64..1.0, 1..48),
            gre in proptest::collection::vec(-1.0f64..1.0, 1..48),
        ) {
            let f = Sequence::from_complex(
                fre.iter().map(|&x| Complex64::new(x, 1.0 - x)).collect()).unwrap();
            let g = Sequence::from_complex(
                gre.iter().map(|&x| Complex64::new(x * 2.0, x)).collect()).unwrap();
            let naive = spectrum_naive(&f, &g);
            let fast = spectrum_fast(&f, &g);
            let tol = 1e-10 * (f.energy() * g.energy()).sqrt().max(1e-300);
            for (a, b) in naive.values().iter().zip(fast.values()) {
                prop_assert!((a - b).norm() <= tol);
            }
        }
    }
}
