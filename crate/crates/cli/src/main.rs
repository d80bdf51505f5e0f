//! `corrkit` command line: analyze sequence pairs, verify and construct
//! Golay complementary pairs, search binary pair space, estimate
//! random-pair baselines, and benchmark the two spectrum routes.
//!
//! Exit codes: 0 success, 1 domain errors (inadmissible lengths,
//! non-Golay constructor inputs, failed verification), 2 usage, parse and
//! file errors. Diagnostics go to stderr; results go to stdout.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use corrkit::correlation::{spectrum_fast, spectrum_naive, spectrum_with, Engine};
use corrkit::criteria::{classify_equality, demerit_report_with, psc};
use corrkit::explore::{exhaustive_min_psc, local_search_min_psc, monte_carlo, SearchMode};
use corrkit::golay::{construct_for_length, is_golay_pair};
use corrkit::sequences::{parse_sequence_lines, Sequence};
use corrkit::{Error, SearchResult};

use report::{fmt_f64, human_report, json_report, JsonRecord};

#[derive(Parser)]
#[command(name = "corrkit", version, about = "Aperiodic correlation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Local,
}

#[derive(Subcommand)]
enum Command {
    /// Demerit factors, PSC, and equality-case classification of a pair.
    Analyze {
        /// File with one sequence (the first member of the pair).
        f: PathBuf,
        /// File with one sequence (the second member of the pair).
        g: PathBuf,
        /// Dimensionless tolerance, scaled internally by energies.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Emit one machine-readable JSON record instead of a table.
        #[arg(long)]
        json: bool,
        /// Force the FFT spectrum route.
        #[arg(long, conflicts_with = "naive")]
        fast: bool,
        /// Force the direct-sum spectrum route.
        #[arg(long)]
        naive: bool,
        /// Write the crosscorrelation spectrum as TSV to this path.
        #[arg(long, value_name = "PATH")]
        dump_spectrum: Option<PathBuf>,
    },
    /// Check the complementarity condition for a pair.
    VerifyGolay {
        /// Either one file with two sequences or two files with one each.
        #[arg(num_args = 1..=2, required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Construct a certified binary Golay pair of an admissible length.
    Construct {
        /// Target length, must be of the form 2^a * 10^b * 26^c.
        #[arg(long)]
        length: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search binary pair space for the minimum PSC.
    Search {
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Accepted flips per restart (local mode).
        #[arg(long, default_value_t = 1000)]
        iterations: u64,
        /// Number of random restarts (local mode).
        #[arg(long, default_value_t = 32)]
        restarts: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; the result does not depend on this.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Write the argmin pairs in bin: format (two lines per pair).
        #[arg(long, value_name = "PATH")]
        dump_argmin: Option<PathBuf>,
    },
    /// Estimate mean ADF/CDF/PSC of uniformly random binary pairs.
    Montecarlo {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; the result does not depend on this.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Time the naive vs fast spectrum routes on random complex pairs.
    Bench {
        /// Comma-separated sequence lengths.
        #[arg(long, value_delimiter = ',', default_value = "256,1024,4096")]
        lengths: Vec<usize>,
        /// Repetitions per length; the median time is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// CLI failure carrying its exit code class.
struct CliError {
    message: String,
    /// 1 for domain errors, 2 for usage/parse/file errors.
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::Parse(_) | Error::EmptySequence => CliError::usage(err.to_string()),
            _ => CliError::domain(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Analyze {
            f,
            g,
            tol,
            json,
            fast,
            naive,
            dump_spectrum,
        } => {
            let engine = if fast {
                Engine::Fast
            } else if naive {
                Engine::Naive
            } else {
                Engine::Auto
            };
            cmd_analyze(&f, &g, tol, json, engine, dump_spectrum.as_deref())
        }
        Command::VerifyGolay { inputs, tol, json } => cmd_verify(&inputs, tol, json),
        Command::Construct { length, json } => cmd_construct(length, json),
        Command::Search {
            length,
            mode,
            tol,
            iterations,
            restarts,
            seed,
            workers,
            json,
            dump_argmin,
        } => in_pool(workers, || {
            cmd_search(
                length,
                mode,
                tol,
                iterations,
                restarts,
                seed,
                json,
                dump_argmin.as_deref(),
            )
        }),
        Command::Montecarlo {
            length,
            samples,
            seed,
            workers,
            json,
        } => in_pool(workers, || cmd_montecarlo(length, samples, seed, json)),
        Command::Bench {
            lengths,
            reps,
            seed,
            json,
        } => cmd_bench(&lengths, reps, seed, json),
    }
}

/// Runs the closure inside a rayon pool of the requested size, if any.
/// Results are identical regardless of worker count; the pool only
/// changes how the work is spread.
fn in_pool<T>(workers: Option<usize>, body: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    match workers {
        None => body(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(body),
    }
}

fn read_sequences(path: &Path) -> Result<Vec<Sequence>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let seqs = parse_sequence_lines(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    for (index, seq) in seqs.iter().enumerate() {
        if seq.is_zero() {
            eprintln!(
                "warning: {}: sequence {} is all-zero",
                path.display(),
                index + 1
            );
        }
    }
    Ok(seqs)
}

fn read_single(path: &Path) -> Result<Sequence, CliError> {
    let mut seqs = read_sequences(path)?;
    if seqs.len() != 1 {
        return Err(CliError::usage(format!(
            "{}: expected exactly one sequence, found {}",
            path.display(),
            seqs.len()
        )));
    }
    Ok(seqs.remove(0))
}

fn cmd_analyze(
    f_path: &Path,
    g_path: &Path,
    tol: f64,
    json: bool,
    engine: Engine,
    dump_spectrum: Option<&Path>,
) -> Result<u8, CliError> {
    let f = read_single(f_path)?;
    let g = read_single(g_path)?;

    let report = demerit_report_with(&f, &g, engine)?;
    let case = classify_equality(&f, &g, tol)?;
    let cert = is_golay_pair(&f, &g, tol)?;

    if let Some(path) = dump_spectrum {
        let spectrum = spectrum_with(&f, &g, engine);
        fs::write(path, spectrum.to_tsv())
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    }

    if json {
        println!("{}", json_report(&report, &case, Some(&cert), tol));
    } else {
        print!("{}", human_report(&report, &case, Some(&cert), tol));
    }
    Ok(0)
}

fn cmd_verify(inputs: &[PathBuf], tol: f64, json: bool) -> Result<u8, CliError> {
    let (f, g) = match inputs {
        [pair_file] => {
            let mut seqs = read_sequences(pair_file)?;
            if seqs.len() != 2 {
                return Err(CliError::usage(format!(
                    "{}: expected exactly two sequences, found {}",
                    pair_file.display(),
                    seqs.len()
                )));
            }
            let g = seqs.pop().unwrap();
            (seqs.pop().unwrap(), g)
        }
        [f_file, g_file] => (read_single(f_file)?, read_single(g_file)?),
        _ => unreachable!("clap enforces 1..=2 inputs"),
    };

    let cert = is_golay_pair(&f, &g, tol)?;
    if json {
        let mut rec = JsonRecord::new("verify_golay");
        rec.push_int("len_f", cert.lengths.0 as u64);
        rec.push_int("len_g", cert.lengths.1 as u64);
        rec.push_num("tol", tol);
        rec.push_bool("verdict", cert.verdict);
        rec.push_num("max_residual", cert.max_residual);
        println!("{}", rec.finish());
    } else {
        println!("length(f)       {}", cert.lengths.0);
        println!("length(g)       {}", cert.lengths.1);
        println!("max residual    {}", cert.max_residual);
        println!("verdict         {}", cert.verdict);
    }
    Ok(if cert.verdict { 0 } else { 1 })
}

fn cmd_construct(length: u64, json: bool) -> Result<u8, CliError> {
    let (f, g) = construct_for_length(length)?;
    if json {
        let cert = is_golay_pair(&f, &g, 1e-9)?;
        let mut rec = JsonRecord::new("construct");
        rec.push_int("length", length);
        rec.push_str("f", &f.to_bin_text().expect("constructed pairs are binary"));
        rec.push_str("g", &g.to_bin_text().expect("constructed pairs are binary"));
        rec.push_num("max_residual", cert.max_residual);
        rec.push_num("psc", psc(&f, &g)?);
        println!("{}", rec.finish());
    } else {
        println!("{}", f.to_bin_text().expect("constructed pairs are binary"));
        println!("{}", g.to_bin_text().expect("constructed pairs are binary"));
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    length: usize,
    mode: ModeArg,
    tol: f64,
    iterations: u64,
    restarts: u64,
    seed: u64,
    json: bool,
    dump_argmin: Option<&Path>,
) -> Result<u8, CliError> {
    let result = match mode {
        ModeArg::Exhaustive => exhaustive_min_psc(length, tol)?,
        ModeArg::Local => local_search_min_psc(length, iterations, restarts, seed)?,
    };

    if let Some(path) = dump_argmin {
        let mut text = String::new();
        for (f, g) in &result.argmin_pairs {
            text.push_str(&f.to_bin_text().expect("search pairs are binary"));
            text.push('\n');
            text.push_str(&g.to_bin_text().expect("search pairs are binary"));
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    }

    if json {
        // Machine output must be byte-identical for identical command
        // lines, so the wall time is reported only in human mode.
        let mut rec = JsonRecord::new("search");
        rec.push_str(
            "mode",
            match result.mode {
                SearchMode::Exhaustive => "exhaustive",
                SearchMode::Local => "local",
            },
        );
        rec.push_int("length", result.length as u64);
        if result.mode == SearchMode::Local {
            rec.push_int("iterations", iterations);
            rec.push_int("restarts", restarts);
            rec.push_int("seed", seed);
        } else {
            rec.push_num("tol", tol);
        }
        rec.push_num("min_psc", result.min_psc);
        rec.push_int("argmin_count", result.argmin_count);
        rec.push_int("golay_count", result.golay_count);
        if let Some((f, g)) = best_pair(&result) {
            rec.push_str("best_f", &f);
            rec.push_str("best_g", &g);
        }
        println!("{}", rec.finish());
    } else {
        println!("mode            {:?}", result.mode);
        println!("length          {}", result.length);
        println!("min PSC         {}", result.min_psc);
        println!("argmin count    {}", result.argmin_count);
        println!("golay count     {}", result.golay_count);
        if let Some((f, g)) = best_pair(&result) {
            println!("best pair       {f} {g}");
        }
        println!("elapsed         {:.3}s", result.elapsed.as_secs_f64());
    }
    Ok(0)
}

fn best_pair(result: &SearchResult) -> Option<(String, String)> {
    result.argmin_pairs.first().map(|(f, g)| {
        (
            f.to_bin_text().expect("search pairs are binary"),
            g.to_bin_text().expect("search pairs are binary"),
        )
    })
}

fn cmd_montecarlo(length: usize, samples: u64, seed: u64, json: bool) -> Result<u8, CliError> {
    let stats = monte_carlo(length, samples, seed)?;
    if json {
        let mut rec = JsonRecord::new("montecarlo");
        rec.push_int("length", stats.length as u64);
        rec.push_int("samples", stats.samples);
        rec.push_int("seed", stats.seed);
        rec.push_num("mean_adf", stats.mean_adf);
        rec.push_num("se_adf", stats.se_adf);
        rec.push_num("mean_cdf", stats.mean_cdf);
        rec.push_num("se_cdf", stats.se_cdf);
        rec.push_num("mean_psc", stats.mean_psc);
        rec.push_num("se_psc", stats.se_psc);
        println!("{}", rec.finish());
    } else {
        println!("length          {}", stats.length);
        println!("samples         {}", stats.samples);
        println!("seed            {}", stats.seed);
        println!("mean ADF        {} (se {})", stats.mean_adf, stats.se_adf);
        println!("mean CDF        {} (se {})", stats.mean_cdf, stats.se_cdf);
        println!("mean PSC        {} (se {})", stats.mean_psc, stats.se_psc);
    }
    Ok(0)
}

fn random_pair(len: usize, seed: u64, stream: u64) -> (Sequence, Sequence) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut draw = |n: usize| {
        Sequence::from_complex(
            (0..n)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
        .expect("n >= 1")
    };
    let f = draw(len);
    let g = draw(len);
    (f, g)
}

fn median(mut times: Vec<f64>) -> f64 {
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

fn cmd_bench(lengths: &[usize], reps: usize, seed: u64, json: bool) -> Result<u8, CliError> {
    if reps == 0 {
        return Err(CliError::usage("--reps must be at least 1"));
    }
    if lengths.iter().any(|&l| l == 0) {
        return Err(CliError::usage("--lengths entries must be at least 1"));
    }
    if !json {
        println!(
            "{:>8} {:>6} {:>14} {:>14} {:>9} {:>12} {:>12} {:>4}",
            "length", "reps", "naive_med_s", "fast_med_s", "speedup", "max_dev", "dev_bound", "ok"
        );
    }
    for (li, &len) in lengths.iter().enumerate() {
        let mut naive_times = Vec::with_capacity(reps);
        let mut fast_times = Vec::with_capacity(reps);
        let mut max_dev = 0.0f64;
        let mut dev_bound = 0.0f64;
        for rep in 0..reps {
            let (f, g) = random_pair(len, seed, (li as u64) << 32 | rep as u64);

            let t = Instant::now();
            let naive = spectrum_naive(&f, &g);
            naive_times.push(t.elapsed().as_secs_f64());

            let t = Instant::now();
            let fast = spectrum_fast(&f, &g);
            fast_times.push(t.elapsed().as_secs_f64());

            let bound = 1e-8 * (f.energy() * g.energy()).sqrt();
            dev_bound = dev_bound.max(bound);
            for (a, b) in naive.values().iter().zip(fast.values()) {
                max_dev = max_dev.max((a - b).norm());
            }
        }
        let naive_med = median(naive_times);
        let fast_med = median(fast_times);
        let speedup = naive_med / fast_med.max(1e-12);
        let ok = max_dev <= dev_bound;
        if json {
            let mut rec = JsonRecord::new("bench");
            rec.push_int("length", len as u64);
            rec.push_int("reps", reps as u64);
            rec.push_num("naive_median_s", naive_med);
            rec.push_num("fast_median_s", fast_med);
            rec.push_num("speedup", speedup);
            rec.push_num("max_dev", max_dev);
            rec.push_num("dev_bound", dev_bound);
            rec.push_bool("ok", ok);
            println!("{}", rec.finish());
        } else {
            println!(
                "{:>8} {:>6} {:>14} {:>14} {:>9.2} {:>12} {:>12} {:>4}",
                len,
                reps,
                format!("{naive_med:.3e}"),
                format!("{fast_med:.3e}"),
                speedup,
                format!("{max_dev:.3e}"),
                format!("{dev_bound:.3e}"),
                ok
            );
        }
        if !ok {
            return Err(CliError::domain(format!(
                "fast spectrum deviated from the oracle at length {len}: {max_dev:e} > {dev_bound:e}"
            )));
        }
    }
    Ok(0)
}
