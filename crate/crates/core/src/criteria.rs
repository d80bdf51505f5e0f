//! Demerit factors, the Pursley-Sarwate Criterion, and the classification
//! of pairs that sit on the boundary of its bound.
//!
//! For nonzero sequences `f`, `g`:
//!
//! ```text
//! ADF(f)    = sum_{s != 0} |C_ff(s)|^2 / C_ff(0)^2
//! CDF(f, g) = sum_s |C_fg(s)|^2 / (C_ff(0) * C_gg(0))
//! PSC(f, g) = sqrt(ADF(f) * ADF(g)) + CDF(f, g)
//! ```
//!
//! and the two-sided bound
//!
//! ```text
//! -sqrt(ADF(f) ADF(g)) <= CDF(f, g) - 1 <= sqrt(ADF(f) ADF(g))
//! ```
//!
//! holds for every pair, hence `PSC >= 1`. A [`DemeritReport`] carries the
//! slack of each side. [`classify_equality`] decides which boundary case a
//! pair falls into: both slacks vanish exactly when one sequence is a
//! monomial; otherwise the lower bound is met precisely when `(f, lambda g)`
//! is a Golay complementary pair for some positive `lambda` (the witness),
//! and the upper bound precisely when the autocorrelation sidelobes are
//! proportional with a positive ratio `mu`.

use crate::correlation::{autocorrelation_spectrum, spectrum_with, CorrelationSpectrum, Engine};
use crate::sequences::Sequence;
use crate::{Error, Result};

/// Default dimensionless tolerance, scaled internally by the relevant
/// energy products.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Demerit factors, PSC, and the slack of each side of the bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DemeritReport {
    /// Autocorrelation demerit factor of `f`.
    pub adf_f: f64,
    /// Autocorrelation demerit factor of `g`.
    pub adf_g: f64,
    /// Crosscorrelation demerit factor of the pair.
    pub cdf: f64,
    /// `sqrt(adf_f * adf_g) + cdf`.
    pub psc: f64,
    /// `(cdf - 1) + sqrt(adf_f * adf_g)`; zero at the lower bound.
    pub lower_slack: f64,
    /// `sqrt(adf_f * adf_g) - (cdf - 1)`; zero at the upper bound.
    pub upper_slack: f64,
}

/// Which equality case of the bound a pair falls into.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EqualityTag {
    /// `f` or `g` is a monomial; both bounds are met simultaneously.
    MonomialCase,
    /// Lower bound met: `(f, lambda * g)` is a Golay pair.
    LowerBoundGolay {
        /// The positive scaling witness.
        lambda: f64,
    },
    /// Upper bound met: `C_ff(s) = mu * C_gg(s)` for all `s != 0`.
    UpperBound {
        /// The positive proportionality witness.
        mu: f64,
    },
    /// Strictly between the bounds.
    Interior,
}

/// Classifier outcome plus how far the detected case is from holding
/// exactly.
///
/// For the boundary cases the residual is the worst energy-normalized
/// misfit of the witness relation over all nonzero shifts; for
/// [`EqualityTag::Interior`] it is the smaller of the two bound slacks
/// (the distance to the nearest boundary).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EqualityCase {
    /// Detected case.
    pub tag: EqualityTag,
    /// Residual of the best-fitting case condition.
    pub residual: f64,
}

fn require_nonzero(f: &Sequence) -> Result<()> {
    if f.is_zero() {
        Err(Error::ZeroSequence)
    } else {
        Ok(())
    }
}

/// Autocorrelation demerit factor: mean squared sidelobe magnitude,
/// normalized by the squared energy. Zero exactly for monomials.
pub fn adf(f: &Sequence) -> Result<f64> {
    adf_with(f, Engine::Auto)
}

/// [`adf`] with an explicit spectrum engine.
pub fn adf_with(f: &Sequence, engine: Engine) -> Result<f64> {
    require_nonzero(f)?;
    let auto = spectrum_with(f, f, engine);
    let energy = f.energy();
    Ok(auto.sum_sq_magnitudes_nonzero_shifts() / (energy * energy))
}

/// Crosscorrelation demerit factor: mean squared crosscorrelation
/// magnitude over all shifts, normalized by the energy product.
pub fn cdf(f: &Sequence, g: &Sequence) -> Result<f64> {
    cdf_with(f, g, Engine::Auto)
}

/// [`cdf`] with an explicit spectrum engine.
pub fn cdf_with(f: &Sequence, g: &Sequence, engine: Engine) -> Result<f64> {
    require_nonzero(f)?;
    require_nonzero(g)?;
    let cross = spectrum_with(f, g, engine);
    Ok(cross.sum_sq_magnitudes() / (f.energy() * g.energy()))
}

/// The Pursley-Sarwate Criterion, `sqrt(ADF(f) ADF(g)) + CDF(f, g)`.
///
/// At least 1 for every pair of nonzero sequences.
pub fn psc(f: &Sequence, g: &Sequence) -> Result<f64> {
    psc_with(f, g, Engine::Auto)
}

/// [`psc`] with an explicit spectrum engine.
pub fn psc_with(f: &Sequence, g: &Sequence, engine: Engine) -> Result<f64> {
    let report = demerit_report_with(f, g, engine)?;
    Ok(report.psc)
}

/// Full demerit report with both bound slacks.
pub fn demerit_report(f: &Sequence, g: &Sequence) -> Result<DemeritReport> {
    demerit_report_with(f, g, Engine::Auto)
}

/// [`demerit_report`] with an explicit spectrum engine.
pub fn demerit_report_with(f: &Sequence, g: &Sequence, engine: Engine) -> Result<DemeritReport> {
    require_nonzero(f)?;
    require_nonzero(g)?;
    let adf_f = adf_with(f, engine)?;
    let adf_g = adf_with(g, engine)?;
    let cdf = cdf_with(f, g, engine)?;
    let geo = (adf_f * adf_g).sqrt();
    Ok(DemeritReport {
        adf_f,
        adf_g,
        cdf,
        psc: geo + cdf,
        lower_slack: (cdf - 1.0) + geo,
        upper_slack: geo - (cdf - 1.0),
    })
}

/// Result of fitting a single real ratio between the energy-normalized
/// autocorrelation sidelobes of two sequences.
struct SidelobeRatio {
    /// Real ratio `rho` with `C_ff(s)/E_f = rho * C_gg(s)/E_g` for all
    /// nonzero `s`.
    rho: f64,
    /// Worst normalized misfit over all nonzero shifts.
    residual: f64,
}

/// Fits `rho` from the anchor shift with the largest normalized `|С_gg|`
/// sidelobe, then verifies every other shift, treating shifts where one
/// sidelobe vanishes (within `tol`) as requiring the other to vanish too.
fn fit_sidelobe_ratio(
    auto_f: &CorrelationSpectrum,
    auto_g: &CorrelationSpectrum,
    energy_f: f64,
    energy_g: f64,
    tol: f64,
) -> Option<SidelobeRatio> {
    let s_lo = auto_f.s_min().min(auto_g.s_min());
    let s_hi = auto_f.s_max().max(auto_g.s_max());

    let mut anchor = None;
    let mut anchor_mag = tol;
    for s in s_lo..=s_hi {
        if s == 0 {
            continue;
        }
        let mag = auto_g.value_at(s).norm() / energy_g;
        if mag > anchor_mag {
            anchor_mag = mag;
            anchor = Some(s);
        }
    }
    let anchor = anchor?;

    let ratio = (auto_f.value_at(anchor) / energy_f) / (auto_g.value_at(anchor) / energy_g);
    if ratio.im.abs() > tol {
        return None;
    }
    let rho = ratio.re;

    let mut residual = 0.0f64;
    for s in s_lo..=s_hi {
        if s == 0 {
            continue;
        }
        let af = auto_f.value_at(s) / energy_f;
        let ag = auto_g.value_at(s) / energy_g;
        let misfit = (af - ag * rho).norm();
        if misfit > tol * (1.0 + rho.abs()) {
            return None;
        }
        residual = residual.max(misfit);
    }
    Some(SidelobeRatio { rho, residual })
}

/// Searches for a positive `lambda` making `(f, lambda * g)` a Golay pair,
/// i.e. `C_ff(s) + lambda^2 * C_gg(s) = 0` for every nonzero shift.
///
/// Returns `None` when no such scaling exists. Monomial inputs are an
/// error: they belong to the monomial equality case, not here.
pub fn find_golay_scaling(f: &Sequence, g: &Sequence, tol: f64) -> Result<Option<f64>> {
    require_nonzero(f)?;
    require_nonzero(g)?;
    if f.is_monomial() || g.is_monomial() {
        return Err(Error::MonomialInput);
    }
    let auto_f = autocorrelation_spectrum(f, false);
    let auto_g = autocorrelation_spectrum(g, false);
    let (energy_f, energy_g) = (f.energy(), g.energy());
    Ok(
        fit_sidelobe_ratio(&auto_f, &auto_g, energy_f, energy_g, tol)
            .filter(|fit| fit.rho < -tol)
            .map(|fit| {
                // mu = rho * E_f / E_g is the unnormalized ratio; the
                // Golay scaling is lambda = sqrt(-mu).
                (-fit.rho * energy_f / energy_g).sqrt()
            }),
    )
}

/// Classifies which equality case of the bound the pair falls into.
///
/// Monomial pairs meet both bounds at once. Otherwise a single real ratio
/// between the autocorrelation sidelobes decides: a negative ratio means
/// the lower bound (Golay case, witness `lambda`), a positive ratio the
/// upper bound (witness `mu`), no consistent ratio the interior.
pub fn classify_equality(f: &Sequence, g: &Sequence, tol: f64) -> Result<EqualityCase> {
    require_nonzero(f)?;
    require_nonzero(g)?;
    if f.is_monomial() || g.is_monomial() {
        return Ok(EqualityCase {
            tag: EqualityTag::MonomialCase,
            residual: 0.0,
        });
    }

    let auto_f = autocorrelation_spectrum(f, false);
    let auto_g = autocorrelation_spectrum(g, false);
    let (energy_f, energy_g) = (f.energy(), g.energy());
    match fit_sidelobe_ratio(&auto_f, &auto_g, energy_f, energy_g, tol) {
        Some(fit) if fit.rho < -tol => Ok(EqualityCase {
            tag: EqualityTag::LowerBoundGolay {
                lambda: (-fit.rho * energy_f / energy_g).sqrt(),
            },
            residual: fit.residual,
        }),
        Some(fit) if fit.rho > tol => Ok(EqualityCase {
            tag: EqualityTag::UpperBound {
                mu: fit.rho * energy_f / energy_g,
            },
            residual: fit.residual,
        }),
        _ => {
            let report = demerit_report(f, g)?;
            Ok(EqualityCase {
                tag: EqualityTag::Interior,
                residual: report.lower_slack.min(report.upper_slack),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::parse_sequence;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bin(text: &str) -> Sequence {
        parse_sequence(&format!("bin:{text}")).unwrap()
    }

    fn seq(values: &[f64]) -> Sequence {
        Sequence::from_reals(values).unwrap()
    }

    #[test]
    fn adf_examples() {
        assert_eq!(adf(&seq(&[0.0, 0.0, 5.0])).unwrap(), 0.0);
        assert_eq!(adf(&bin("++")).unwrap(), 0.5);
        assert_eq!(adf(&bin("+++-")).unwrap(), 0.25);
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(cdf(&bin("++"), &bin("+-")).unwrap(), 0.5);
        let mono = seq(&[0.0, 3.0, 0.0]);
        let g = bin("+-+-+");
        assert!((cdf(&mono, &g).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(cdf(&bin("++"), &bin("++")).unwrap(), 1.5);
    }

    #[test]
    fn cdf_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let f = Sequence::from_complex(
                (0..rng.random_range(1..20))
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            let g = Sequence::from_complex(
                (0..rng.random_range(1..20))
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let ab = cdf(&f, &g).unwrap();
            let ba = cdf(&g, &f).unwrap();
            assert!((ab - ba).abs() <= 1e-12 * ab.max(1.0));
        }
    }

    #[test]
    fn cdf_self_relation() {
        // ADF(f) = CDF(f, f) - 1.
        let f = bin("++-+-++");
        assert!((cdf(&f, &f).unwrap() - 1.0 - adf(&f).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn psc_examples() {
        assert_eq!(psc(&bin("++"), &bin("+-")).unwrap(), 1.0);
        assert_eq!(psc(&bin("++"), &bin("++")).unwrap(), 2.0);
    }

    #[test]
    fn demerit_report_golay_pair() {
        let r = demerit_report(&bin("+++-"), &bin("++-+")).unwrap();
        assert_eq!(r.adf_f, 0.25);
        assert_eq!(r.adf_g, 0.25);
        assert_eq!(r.cdf, 0.75);
        assert_eq!(r.psc, 1.0);
        assert_eq!(r.lower_slack, 0.0);
        assert_eq!(r.upper_slack, 0.5);
    }

    #[test]
    fn demerit_report_monomial() {
        let r = demerit_report(&seq(&[0.0, 2.0]), &bin("+-+")).unwrap();
        assert_eq!(r.adf_f, 0.0);
        assert!((r.cdf - 1.0).abs() < 1e-15);
        assert!(r.lower_slack.abs() < 1e-15);
        assert!(r.upper_slack.abs() < 1e-15);
        assert!((r.psc - 1.0).abs() < 1e-15);
    }

    #[test]
    fn demerit_report_upper_bound_pair() {
        let r = demerit_report(&bin("++"), &bin("++")).unwrap();
        assert_eq!(r.upper_slack, 0.0);
        assert_eq!(r.lower_slack, 1.0);
    }

    #[test]
    fn zero_sequence_is_rejected() {
        let z = parse_sequence("cplx:0,0").unwrap();
        assert_eq!(adf(&z), Err(Error::ZeroSequence));
        assert_eq!(cdf(&z, &bin("++")), Err(Error::ZeroSequence));
        assert_eq!(psc(&bin("++"), &z), Err(Error::ZeroSequence));
        assert_eq!(classify_equality(&z, &z, 1e-9), Err(Error::ZeroSequence));
    }

    #[test]
    fn golay_scaling_examples() {
        let lambda = find_golay_scaling(&bin("++"), &bin("+-"), 1e-9).unwrap();
        assert_eq!(lambda, Some(1.0));

        let g = seq(&[2.0, -2.0]);
        let lambda = find_golay_scaling(&bin("++"), &g, 1e-9).unwrap();
        assert!((lambda.unwrap() - 0.5).abs() < 1e-12);

        assert_eq!(find_golay_scaling(&bin("++"), &bin("++"), 1e-9), Ok(None));
    }

    #[test]
    fn golay_scaling_rejects_monomials() {
        let mono = seq(&[0.0, 1.0]);
        assert_eq!(
            find_golay_scaling(&mono, &bin("++"), 1e-9),
            Err(Error::MonomialInput)
        );
    }

    #[test]
    fn classify_examples() {
        let case = classify_equality(&bin("++"), &bin("+-"), 1e-9).unwrap();
        assert_eq!(
            case.tag,
            EqualityTag::LowerBoundGolay { lambda: 1.0 }
        );
        assert_eq!(case.residual, 0.0);

        let case = classify_equality(&bin("++"), &bin("++"), 1e-9).unwrap();
        assert_eq!(case.tag, EqualityTag::UpperBound { mu: 1.0 });

        let case = classify_equality(&bin("+++-"), &bin("++"), 1e-9).unwrap();
        assert_eq!(case.tag, EqualityTag::Interior);
        assert!(case.residual > 0.0);
    }

    #[test]
    fn classify_monomial_case() {
        let case = classify_equality(&seq(&[0.0, 0.0, 5.0]), &bin("++"), 1e-9).unwrap();
        assert_eq!(case.tag, EqualityTag::MonomialCase);
        assert_eq!(case.residual, 0.0);
    }

    #[test]
    fn classifier_agrees_with_slacks_on_small_binary_pairs() {
        // Exhaustively over ordered binary pairs of length 3 and 4: the
        // classifier verdict must match which slack vanishes.
        for len in [3usize, 4] {
            for fbits in 0..(1u32 << len) {
                for gbits in 0..(1u32 << len) {
                    let f = Sequence::from_signs(
                        &(0..len).map(|j| (fbits >> j) & 1 == 1).collect::<Vec<_>>(),
                    )
                    .unwrap();
                    let g = Sequence::from_signs(
                        &(0..len).map(|j| (gbits >> j) & 1 == 1).collect::<Vec<_>>(),
                    )
                    .unwrap();
                    let report = demerit_report(&f, &g).unwrap();
                    let case = classify_equality(&f, &g, 1e-9).unwrap();
                    let tol = 1e-9;
                    match case.tag {
                        EqualityTag::MonomialCase => {
                            assert!(report.lower_slack <= tol && report.upper_slack <= tol)
                        }
                        EqualityTag::LowerBoundGolay { .. } => {
                            assert!(report.lower_slack <= tol && report.upper_slack > tol)
                        }
                        EqualityTag::UpperBound { .. } => {
                            assert!(report.upper_slack <= tol && report.lower_slack > tol)
                        }
                        EqualityTag::Interior => {
                            assert!(report.lower_slack > tol && report.upper_slack > tol)
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn scale_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..20 {
            let f = Sequence::from_complex(
                (0..rng.random_range(2..24))
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            let g = Sequence::from_complex(
                (0..rng.random_range(2..24))
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let c = Complex64::new(rng.random_range(0.1..3.0), rng.random_range(-2.0..2.0));
            let d = Complex64::new(rng.random_range(-3.0..-0.1), rng.random_range(-1.0..1.0));
            assert!((adf(&f.scaled(c)).unwrap() - adf(&f).unwrap()).abs() < 1e-9);
            assert!(
                (cdf(&f.scaled(c), &g.scaled(d)).unwrap() - cdf(&f, &g).unwrap()).abs() < 1e-9
            );
        }
    }

    #[test]
    fn bound_holds_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..500 {
            let f = Sequence::from_complex(
                (0..rng.random_range(1..=32))
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            let g = Sequence::from_complex(
                (0..rng.random_range(1..=32))
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let r = demerit_report(&f, &g).unwrap();
            assert!(r.lower_slack >= -1e-9);
            assert!(r.upper_slack >= -1e-9);
            assert!(r.psc >= 1.0 - 1e-9);
        }
    }
}
