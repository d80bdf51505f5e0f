//! Exhaustive, Monte Carlo, and local search over binary sequence-pair
//! space.
//!
//! All three tools work on the integer fast path: binary sequences are
//! sign vectors, correlation values are integers, and PSC values are
//! derived from integer sums, so results are bit-for-bit reproducible.
//! Parallel runs partition work by index range and merge with min/sum, so
//! the outcome is identical regardless of worker count; Monte Carlo and
//! restart streams are keyed by sample index on a counter-based generator
//! (ChaCha with one stream per index) for the same reason.
//!
//! Binary sequences are encoded as bit patterns: bit `j` set means the
//! coefficient at index `j` is `+1`, clear means `-1`. Exhaustive argmin
//! dumps and local-search witnesses use this encoding via
//! [`Sequence::from_signs`].

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::golay::turyn_exponents;
use crate::sequences::Sequence;
use crate::{Error, Result};

/// Exhaustive enumeration caps at this length (4^len ordered pairs).
pub const MAX_EXHAUSTIVE_LEN: usize = 6;

/// How the search space was covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every ordered binary pair of the given length.
    Exhaustive,
    /// Restarted single-flip descent.
    Local,
}

/// Outcome of a search over binary pairs of one length.
#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Sequence length searched.
    pub length: usize,
    /// Smallest PSC observed.
    pub min_psc: f64,
    /// Exhaustive mode: ordered pairs attaining the minimum (within the
    /// search tolerance). Local mode: restarts attaining the best value.
    pub argmin_count: u64,
    /// Exhaustive mode: ordered pairs certified Golay. Local mode:
    /// restarts whose final pair is certified.
    pub golay_count: u64,
    /// Wall time of the search.
    pub elapsed: Duration,
    /// Which mode produced this result.
    pub mode: SearchMode,
    /// Witness pairs: every argmin pair in exhaustive mode (in enumeration
    /// order), the single best pair in local mode.
    pub argmin_pairs: Vec<(Sequence, Sequence)>,
}

/// Seeded Monte Carlo estimates of the demerit statistics of uniformly
/// random binary pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McStats {
    /// Sequence length sampled.
    pub length: usize,
    /// Number of independent pairs drawn.
    pub samples: u64,
    /// Generator seed.
    pub seed: u64,
    /// Sample mean of ADF (measured on the first member of each pair).
    pub mean_adf: f64,
    /// Standard error of `mean_adf`.
    pub se_adf: f64,
    /// Sample mean of CDF.
    pub mean_cdf: f64,
    /// Standard error of `mean_cdf`.
    pub se_cdf: f64,
    /// Sample mean of PSC.
    pub mean_psc: f64,
    /// Standard error of `mean_psc`.
    pub se_psc: f64,
}

/// Expands a bit pattern into a `+1/-1` sign vector.
fn signs_from_bits(bits: u64, len: usize) -> Vec<i64> {
    (0..len)
        .map(|j| if (bits >> j) & 1 == 1 { 1 } else { -1 })
        .collect()
}

fn sequence_from_bits(bits: u64, len: usize) -> Sequence {
    Sequence::from_signs(&(0..len).map(|j| (bits >> j) & 1 == 1).collect::<Vec<_>>())
        .expect("len >= 1")
}

/// Autocorrelation sidelobes `C(s)` for `s = 1..len`.
fn auto_sidelobes(seq: &[i64]) -> Vec<i64> {
    let n = seq.len();
    (1..n)
        .map(|s| (0..n - s).map(|j| seq[j] * seq[j + s]).sum())
        .collect()
}

fn sum_sq(values: &[i64]) -> i64 {
    values.iter().map(|&v| v * v).sum()
}

/// `sum_s C_fg(s)^2` over all shifts, both sequences of equal length.
fn cross_sum_sq(f: &[i64], g: &[i64]) -> i64 {
    let n = f.len() as i64;
    let mut total = 0i64;
    for s in -(n - 1)..n {
        let lo = 0.max(-s);
        let hi = n.min(n - s);
        let c: i64 = (lo..hi).map(|j| f[(j + s) as usize] * g[j as usize]).sum();
        total += c * c;
    }
    total
}

fn psc_from_sums(sumsq_auto_f: i64, sumsq_auto_g: i64, sumsq_cross: i64, len: usize) -> f64 {
    let e2 = (len * len) as f64;
    let adf_f = 2.0 * sumsq_auto_f as f64 / e2;
    let adf_g = 2.0 * sumsq_auto_g as f64 / e2;
    let cdf = sumsq_cross as f64 / e2;
    (adf_f * adf_g).sqrt() + cdf
}

/// Per-sequence data shared by the exhaustive passes.
struct SeqInfo {
    signs: Vec<i64>,
    sidelobes: Vec<i64>,
    sumsq_sidelobes: i64,
}

fn enumerate_seq_infos(len: usize) -> Vec<SeqInfo> {
    (0u64..1 << len)
        .map(|bits| {
            let signs = signs_from_bits(bits, len);
            let sidelobes = auto_sidelobes(&signs);
            let sumsq_sidelobes = sum_sq(&sidelobes);
            SeqInfo {
                signs,
                sidelobes,
                sumsq_sidelobes,
            }
        })
        .collect()
}

fn check_exhaustive_len(len: usize) -> Result<()> {
    if len < 1 || len > MAX_EXHAUSTIVE_LEN {
        return Err(Error::OutOfRange {
            what: "length",
            value: len as u64,
            min: 1,
            max: MAX_EXHAUSTIVE_LEN as u64,
        });
    }
    Ok(())
}

/// Scans every ordered binary pair of length `len` and records the
/// minimum PSC, the size of the argmin set (PSC within `tol` of the
/// minimum), and the number of Golay-certified pairs.
///
/// Work is partitioned over the outer sequence index and merged by
/// min/sum, so the result does not depend on the worker count.
pub fn exhaustive_min_psc(len: usize, tol: f64) -> Result<SearchResult> {
    check_exhaustive_len(len)?;
    let start = Instant::now();
    let infos = enumerate_seq_infos(len);

    let (min_psc, golay_count) = infos
        .par_iter()
        .map(|fi| {
            let mut local_min = f64::INFINITY;
            let mut local_golay = 0u64;
            for gi in &infos {
                let psc = psc_from_sums(
                    fi.sumsq_sidelobes,
                    gi.sumsq_sidelobes,
                    cross_sum_sq(&fi.signs, &gi.signs),
                    len,
                );
                local_min = local_min.min(psc);
                if fi
                    .sidelobes
                    .iter()
                    .zip(&gi.sidelobes)
                    .all(|(a, b)| a + b == 0)
                {
                    local_golay += 1;
                }
            }
            (local_min, local_golay)
        })
        .reduce(
            || (f64::INFINITY, 0),
            |(m1, c1), (m2, c2)| (m1.min(m2), c1 + c2),
        );

    let argmin_pairs: Vec<(Sequence, Sequence)> = infos
        .par_iter()
        .enumerate()
        .flat_map_iter(|(f_bits, fi)| {
            let infos = &infos;
            (0..infos.len()).filter_map(move |g_bits| {
                let gi = &infos[g_bits];
                let psc = psc_from_sums(
                    fi.sumsq_sidelobes,
                    gi.sumsq_sidelobes,
                    cross_sum_sq(&fi.signs, &gi.signs),
                    len,
                );
                (psc <= min_psc + tol).then(|| {
                    (
                        sequence_from_bits(f_bits as u64, len),
                        sequence_from_bits(g_bits as u64, len),
                    )
                })
            })
        })
        .collect();

    let result = SearchResult {
        length: len,
        min_psc,
        argmin_count: argmin_pairs.len() as u64,
        golay_count,
        elapsed: start.elapsed(),
        mode: SearchMode::Exhaustive,
        argmin_pairs,
    };
    assert!(result.min_psc >= 1.0 - 1e-9, "bound violated: {result:?}");
    if len >= 2 && turyn_exponents(len as u64).is_some() {
        // At Golay-admissible lengths the pairs attaining the bound are
        // exactly the certified ones (binary pairs of length >= 2 are
        // never monomials).
        let at_bound = count_psc_at_most(&infos, len, 1.0 + tol);
        assert_eq!(at_bound, golay_count, "equality classification mismatch");
    }
    Ok(result)
}

fn count_psc_at_most(infos: &[SeqInfo], len: usize, limit: f64) -> u64 {
    infos
        .par_iter()
        .map(|fi| {
            infos
                .iter()
                .filter(|gi| {
                    psc_from_sums(
                        fi.sumsq_sidelobes,
                        gi.sumsq_sidelobes,
                        cross_sum_sq(&fi.signs, &gi.signs),
                        len,
                    ) <= limit
                })
                .count() as u64
        })
        .sum()
}

/// Counts the ordered binary pairs of length `len` whose autocorrelations
/// cancel exactly at every nonzero shift.
pub fn enumerate_golay_pairs(len: usize) -> Result<u64> {
    check_exhaustive_len(len)?;
    let infos = enumerate_seq_infos(len);
    Ok(infos
        .par_iter()
        .map(|fi| {
            infos
                .iter()
                .filter(|gi| {
                    fi.sidelobes
                        .iter()
                        .zip(&gi.sidelobes)
                        .all(|(a, b)| a + b == 0)
                })
                .count() as u64
        })
        .sum())
}

/// Draws `samples` independent uniform binary pairs of length `len` and
/// returns sample means and standard errors of ADF, CDF and PSC.
///
/// Sample `i` is generated from stream `i` of a ChaCha generator seeded
/// with `seed`, so the output depends only on `(len, samples, seed)` and
/// not on how the work is split across workers.
pub fn monte_carlo(len: usize, samples: u64, seed: u64) -> Result<McStats> {
    if len < 1 {
        return Err(Error::OutOfRange {
            what: "length",
            value: len as u64,
            min: 1,
            max: u64::MAX,
        });
    }
    if samples < 1 {
        return Err(Error::OutOfRange {
            what: "samples",
            value: samples,
            min: 1,
            max: u64::MAX,
        });
    }

    let draws: Vec<(f64, f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let f: Vec<i64> = (0..len).map(|_| if rng.random() { 1 } else { -1 }).collect();
            let g: Vec<i64> = (0..len).map(|_| if rng.random() { 1 } else { -1 }).collect();
            let sumsq_f = sum_sq(&auto_sidelobes(&f));
            let sumsq_g = sum_sq(&auto_sidelobes(&g));
            let e2 = (len * len) as f64;
            let adf_f = 2.0 * sumsq_f as f64 / e2;
            let adf_g = 2.0 * sumsq_g as f64 / e2;
            let cdf = cross_sum_sq(&f, &g) as f64 / e2;
            ((adf_f, adf_g), cdf)
        })
        .map(|((adf_f, adf_g), cdf)| (adf_f, cdf, (adf_f * adf_g).sqrt() + cdf))
        .collect();

    let (mean_adf, se_adf) = mean_and_se(draws.iter().map(|d| d.0));
    let (mean_cdf, se_cdf) = mean_and_se(draws.iter().map(|d| d.1));
    let (mean_psc, se_psc) = mean_and_se(draws.iter().map(|d| d.2));
    Ok(McStats {
        length: len,
        samples,
        seed,
        mean_adf,
        se_adf,
        mean_cdf,
        se_cdf,
        mean_psc,
        se_psc,
    })
}

/// Mean and standard error, accumulated in index order so the result is
/// reproducible bit for bit.
fn mean_and_se(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    let mean = values.clone().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Binary pair with incrementally maintained correlation state.
///
/// Stores the autocorrelation sidelobes of both members, the full
/// crosscorrelation vector, and their sums of squares; a single sign flip
/// updates everything in `O(len)`. The from-scratch recomputation is the
/// oracle this is tested against.
struct PairState {
    f: Vec<i64>,
    g: Vec<i64>,
    auto_f: Vec<i64>,
    auto_g: Vec<i64>,
    /// `C_fg(s)` at index `s + len - 1`, shifts `-(len-1) ..= len-1`.
    cross: Vec<i64>,
    sumsq_auto_f: i64,
    sumsq_auto_g: i64,
    sumsq_cross: i64,
}

impl PairState {
    fn new(f: Vec<i64>, g: Vec<i64>) -> Self {
        let n = f.len() as i64;
        let auto_f = auto_sidelobes(&f);
        let auto_g = auto_sidelobes(&g);
        let cross: Vec<i64> = (-(n - 1)..n)
            .map(|s| {
                let lo = 0.max(-s);
                let hi = n.min(n - s);
                (lo..hi).map(|j| f[(j + s) as usize] * g[j as usize]).sum()
            })
            .collect();
        let sumsq_auto_f = sum_sq(&auto_f);
        let sumsq_auto_g = sum_sq(&auto_g);
        let sumsq_cross = sum_sq(&cross);
        Self {
            f,
            g,
            auto_f,
            auto_g,
            cross,
            sumsq_auto_f,
            sumsq_auto_g,
            sumsq_cross,
        }
    }

    fn len(&self) -> usize {
        self.f.len()
    }

    fn psc(&self) -> f64 {
        psc_from_sums(
            self.sumsq_auto_f,
            self.sumsq_auto_g,
            self.sumsq_cross,
            self.len(),
        )
    }

    /// Sums of squares after flipping coordinate `k` of `f` or `g`,
    /// without modifying the state.
    fn flipped_sums(&self, in_g: bool, k: usize) -> (i64, i64, i64) {
        let n = self.len();
        let (seq, auto, mut sumsq_auto) = if in_g {
            (&self.g, &self.auto_g, self.sumsq_auto_g)
        } else {
            (&self.f, &self.auto_f, self.sumsq_auto_f)
        };
        let old = seq[k];
        for s in 1..n {
            let mut neighbor = 0i64;
            if k + s < n {
                neighbor += seq[k + s];
            }
            if k >= s {
                neighbor += seq[k - s];
            }
            let d = -2 * old * neighbor;
            sumsq_auto += 2 * auto[s - 1] * d + d * d;
        }

        let mut sumsq_cross = self.sumsq_cross;
        if in_g {
            // C(s) terms with j = k: s ranges where f_{k+s} exists.
            for s in -(k as i64)..(n - k) as i64 {
                let d = -2 * old * self.f[(k as i64 + s) as usize];
                let c = self.cross[(s + n as i64 - 1) as usize];
                sumsq_cross += 2 * c * d + d * d;
            }
            (self.sumsq_auto_f, sumsq_auto, sumsq_cross)
        } else {
            // C(s) terms with j + s = k: j = k - s must exist in g.
            for s in (k as i64 - n as i64 + 1)..=(k as i64) {
                let d = -2 * old * self.g[(k as i64 - s) as usize];
                let c = self.cross[(s + n as i64 - 1) as usize];
                sumsq_cross += 2 * c * d + d * d;
            }
            (sumsq_auto, self.sumsq_auto_g, sumsq_cross)
        }
    }

    fn candidate_psc(&self, in_g: bool, k: usize) -> f64 {
        let (sa_f, sa_g, sc) = self.flipped_sums(in_g, k);
        psc_from_sums(sa_f, sa_g, sc, self.len())
    }

    fn apply_flip(&mut self, in_g: bool, k: usize) {
        let n = self.len();
        let (sa_f, sa_g, sc) = self.flipped_sums(in_g, k);
        {
            let (seq, auto) = if in_g {
                (&mut self.g, &mut self.auto_g)
            } else {
                (&mut self.f, &mut self.auto_f)
            };
            let old = seq[k];
            for s in 1..n {
                let mut neighbor = 0i64;
                if k + s < n {
                    neighbor += seq[k + s];
                }
                if k >= s {
                    neighbor += seq[k - s];
                }
                auto[s - 1] += -2 * old * neighbor;
            }
        }
        if in_g {
            let old = self.g[k];
            for s in -(k as i64)..(n - k) as i64 {
                self.cross[(s + n as i64 - 1) as usize] +=
                    -2 * old * self.f[(k as i64 + s) as usize];
            }
            self.g[k] = -old;
        } else {
            let old = self.f[k];
            for s in (k as i64 - n as i64 + 1)..=(k as i64) {
                self.cross[(s + n as i64 - 1) as usize] +=
                    -2 * old * self.g[(k as i64 - s) as usize];
            }
            self.f[k] = -old;
        }
        self.sumsq_auto_f = sa_f;
        self.sumsq_auto_g = sa_g;
        self.sumsq_cross = sc;
    }
}

/// Steepest-descent climb: repeatedly applies the single sign flip (over
/// all `2 * len` coordinates, lowest index on ties) that most reduces the
/// PSC, until no flip improves it or `max_moves` flips were taken.
fn climb(state: &mut PairState, max_moves: u64) -> f64 {
    let n = state.len();
    let mut current = state.psc();
    for _ in 0..max_moves {
        let mut best: Option<(f64, bool, usize)> = None;
        for in_g in [false, true] {
            for k in 0..n {
                let cand = state.candidate_psc(in_g, k);
                if best.map_or(true, |(b, _, _)| cand < b) {
                    best = Some((cand, in_g, k));
                }
            }
        }
        match best {
            Some((cand, in_g, k)) if cand < current => {
                state.apply_flip(in_g, k);
                current = cand;
            }
            _ => break,
        }
    }
    current
}

/// Restarted single-flip descent on PSC over binary pairs of length `len`.
///
/// Each restart starts from a fresh uniform pair drawn from its own
/// generator stream and takes at most `iterations` accepted flips; the
/// best pair over all restarts is returned. Deterministic for a given
/// `(len, iterations, restarts, seed)` regardless of worker count.
pub fn local_search_min_psc(
    len: usize,
    iterations: u64,
    restarts: u64,
    seed: u64,
) -> Result<SearchResult> {
    if len < 2 {
        return Err(Error::OutOfRange {
            what: "length",
            value: len as u64,
            min: 2,
            max: u64::MAX,
        });
    }
    if restarts < 1 {
        return Err(Error::OutOfRange {
            what: "restarts",
            value: restarts,
            min: 1,
            max: u64::MAX,
        });
    }
    let start = Instant::now();

    let outcomes: Vec<(f64, Vec<i64>, Vec<i64>, bool)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r);
            let f: Vec<i64> = (0..len).map(|_| if rng.random() { 1 } else { -1 }).collect();
            let g: Vec<i64> = (0..len).map(|_| if rng.random() { 1 } else { -1 }).collect();
            let mut state = PairState::new(f, g);
            let best = climb(&mut state, iterations);
            let golay = state
                .auto_f
                .iter()
                .zip(&state.auto_g)
                .all(|(a, b)| a + b == 0);
            (best, state.f, state.g, golay)
        })
        .collect();

    let min_psc = outcomes.iter().map(|o| o.0).fold(f64::INFINITY, f64::min);
    let argmin_count = outcomes.iter().filter(|o| o.0 <= min_psc + 1e-12).count() as u64;
    let golay_count = outcomes.iter().filter(|o| o.3).count() as u64;
    let best = outcomes
        .iter()
        .find(|o| o.0 == min_psc)
        .expect("restarts >= 1");
    let to_seq = |signs: &[i64]| {
        Sequence::from_signs(&signs.iter().map(|&v| v == 1).collect::<Vec<_>>()).expect("len >= 2")
    };

    let result = SearchResult {
        length: len,
        min_psc,
        argmin_count,
        golay_count,
        elapsed: start.elapsed(),
        mode: SearchMode::Local,
        argmin_pairs: vec![(to_seq(&best.1), to_seq(&best.2))],
    };
    assert!(result.min_psc >= 1.0 - 1e-9, "bound violated: {result:?}");
    Ok(result)
}
