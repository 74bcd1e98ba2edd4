//! Command-line definitions and dispatch.
//!
//! Exit codes: 0 success, 1 computation error (reported as a machine-
//! readable record with an `error` category field), 2 usage error.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use easywg_core::{
    asymptotic_cumulant_count, asymptotic_moment_count, asymptotic_moment_count_words, build_table,
    caps, closed_form_cumulant, empirical_cycle_statistics, empirical_trace_moments,
    empirical_unitary_word_moments, enumerate_partitions, exhaustive_trace_moment, hs_cumulant_count,
    rat_string, trace_moment_exact, word_moment_exact, Category, Color, ColorString, Error,
    MomentSpec, SampleBatch, SampleGroup,
};

use crate::output::{error_record, Format, Payload, Record};
use crate::verify::{run_suite, SuiteParams};

#[derive(Parser)]
#[command(
    name = "easywg",
    version,
    about = "Exact Weingarten calculus for easy quantum groups",
    after_help = "Environment: WG_MAX_K overrides the partition enumeration caps."
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate set partitions of {1..k} in canonical order
    Partitions {
        #[arg(long)]
        k: usize,
        /// Keep only the noncrossing ones
        #[arg(long)]
        noncrossing: bool,
    },
    /// Enumerate the partition category D_k of a group
    Categories {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        /// Color string for U-pairs / Hs(s), e.g. "1*1*"
        #[arg(long)]
        eps: Option<String>,
    },
    /// Exact Gram matrix n^|p∨q| over the category basis
    Gram {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Exact Weingarten matrix (the inverse Gram)
    Weingarten {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Exact Haar integral of u_{i1 j1} … u_{ik jk}
    Integrate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u64,
        /// Row indices, comma-separated, 1-based
        #[arg(long)]
        i: String,
        /// Column indices, comma-separated, 1-based
        #[arg(long)]
        j: String,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Exact finite-n moment of a product of traces of powers
    Moment {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u64,
        /// Cycle lengths, comma-separated (uncolored groups)
        #[arg(long)]
        k: Option<String>,
        /// Star pattern, comma-separated 1/* entries
        #[arg(long)]
        stars: Option<String>,
        /// Per-cycle color words for U-pairs / Hs(s), comma-separated
        #[arg(long)]
        eps: Option<String>,
    },
    /// Asymptotic moment count #{p in D_k : p = γ(p)}
    MomentAsym {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        stars: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Asymptotic cumulant count (block-deletion-closed kinds, or Hs words)
    CumulantAsym {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        stars: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Expected limit-law cumulant tables (closed forms)
    Laws {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
    },
    /// Monte Carlo estimates (or exhaustive exact averages) of trace moments
    Sample {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        stars: Option<String>,
        /// Per-cycle color words (U only): estimates word-trace products
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Enumerate the whole finite group instead of sampling
        #[arg(long)]
        exhaustive: bool,
        /// Report cycle statistics C_l / Z_l^± instead of trace moments
        #[arg(long)]
        cycles: bool,
        /// Largest cycle length for --cycles
        #[arg(long, default_value_t = 3)]
        lmax: usize,
    },
    /// Run a named verification suite
    Verify {
        /// One of: classical-exactness, brute-force, cumulant-identity,
        /// laws, free-convergence, montecarlo, z-formula, section8
        #[arg(long)]
        suite: String,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

pub fn run_from_env() -> i32 {
    apply_env_caps();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let format = cli.format;
    let out = cli.out.clone();
    let command = command_name(&cli.cmd);
    match dispatch(cli) {
        Ok((record, exit)) => {
            if record.emit(format, out.as_deref()).is_err() {
                return 1;
            }
            exit
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(AppError::Computation(e)) => {
            print!("{}", error_record(&command, e.category(), &e.to_string(), format));
            1
        }
    }
}

fn apply_env_caps() {
    if let Ok(raw) = std::env::var("WG_MAX_K") {
        if let Ok(v) = raw.trim().parse::<usize>() {
            caps::set(v, v.max(caps::DEFAULT_PAIRING));
        }
    }
}

fn command_name(cmd: &Cmd) -> String {
    match cmd {
        Cmd::Partitions { .. } => "partitions",
        Cmd::Categories { .. } => "categories",
        Cmd::Gram { .. } => "gram",
        Cmd::Weingarten { .. } => "weingarten",
        Cmd::Integrate { .. } => "integrate",
        Cmd::Moment { .. } => "moment",
        Cmd::MomentAsym { .. } => "moment-asym",
        Cmd::CumulantAsym { .. } => "cumulant-asym",
        Cmd::Laws { .. } => "laws",
        Cmd::Sample { .. } => "sample",
        Cmd::Verify { .. } => "verify",
    }
    .to_string()
}

enum AppError {
    Usage(String),
    Computation(Error),
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        match e {
            // flag-combination problems are usage errors, not computation
            // failures
            Error::Parse(msg) => AppError::Usage(msg),
            e @ (Error::MissingColorString { .. } | Error::UnexpectedColorString { .. }) => {
                AppError::Usage(e.to_string())
            }
            other => AppError::Computation(other),
        }
    }
}

fn parse_group(raw: &str) -> Result<Category, AppError> {
    raw.parse::<Category>().map_err(|e| AppError::Usage(e.to_string()))
}

fn parse_k_list(raw: &Option<String>) -> Result<Vec<usize>, AppError> {
    let raw = raw
        .as_ref()
        .ok_or_else(|| AppError::Usage("--k is required for this group".into()))?;
    raw.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| AppError::Usage(format!("bad cycle length {t:?}")))
        })
        .collect()
}

fn parse_stars(raw: &Option<String>, r: usize) -> Result<Vec<Color>, AppError> {
    match raw {
        None => Ok(vec![Color::One; r]),
        Some(s) => {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != r {
                return Err(AppError::Usage(format!(
                    "--stars needs {r} comma-separated entries, got {}",
                    parts.len()
                )));
            }
            parts
                .iter()
                .map(|p| match p.trim() {
                    "1" => Ok(Color::One),
                    "*" => Ok(Color::Star),
                    other => Err(AppError::Usage(format!("bad star entry {other:?}"))),
                })
                .collect()
        }
    }
}

fn parse_eps_words(raw: &Option<String>) -> Result<Option<Vec<ColorString>>, AppError> {
    match raw {
        None => Ok(None),
        Some(s) => {
            let words: Result<Vec<ColorString>, _> =
                s.split(',').map(|w| w.trim().parse::<ColorString>()).collect();
            Ok(Some(words.map_err(|e| AppError::Usage(e.to_string()))?))
        }
    }
}

fn parse_single_eps(raw: &Option<String>) -> Result<Option<ColorString>, AppError> {
    match raw {
        None => Ok(None),
        Some(s) => Ok(Some(s.parse::<ColorString>().map_err(|e| AppError::Usage(e.to_string()))?)),
    }
}

fn reject_plain_flags(
    group: &str,
    k: &Option<String>,
    stars: &Option<String>,
) -> Result<(), AppError> {
    if k.is_some() || stars.is_some() {
        return Err(AppError::Usage(format!(
            "{group} takes per-cycle --eps words; --k and --stars do not apply"
        )));
    }
    Ok(())
}

fn parse_indices(raw: &str) -> Result<Vec<u64>, AppError> {
    raw.split(',')
        .map(|t| {
            t.trim().parse::<u64>().map_err(|_| AppError::Usage(format!("bad index {t:?}")))
        })
        .collect()
}

fn batch_payload(batch: &SampleBatch) -> Payload {
    let rows = batch
        .estimates
        .iter()
        .map(|(name, e)| vec![name.clone(), format!("{}", e.mean), format!("{}", e.stderr)])
        .collect();
    Payload::Table { columns: vec!["statistic", "mean", "stderr"], rows }
}

fn dispatch(cli: Cli) -> Result<(Record, i32), AppError> {
    match cli.cmd {
        Cmd::Partitions { k, noncrossing } => {
            let all = enumerate_partitions(k)?;
            let items: Vec<String> = all
                .iter()
                .filter(|p| !noncrossing || p.is_noncrossing())
                .map(|p| p.to_string())
                .collect();
            let record = Record::new("partitions", "count", Payload::List { header: "partition", items })
                .input("k", k)
                .input("noncrossing", noncrossing);
            Ok((record, 0))
        }
        Cmd::Categories { group, k, eps } => {
            let cat = parse_group(&group)?;
            let eps = parse_single_eps(&eps)?;
            let members = cat.enumerate(k, eps.as_ref())?;
            let items: Vec<String> = members.iter().map(|p| p.to_string()).collect();
            let record = Record::new("categories", "count", Payload::List { header: "partition", items })
                .input("group", group)
                .input("k", k)
                .input("eps", eps.map(|e| e.to_string()));
            Ok((record, 0))
        }
        Cmd::Gram { group, k, n, eps } => matrix_record(false, group, k, n, eps),
        Cmd::Weingarten { group, k, n, eps } => matrix_record(true, group, k, n, eps),
        Cmd::Integrate { group, n, i, j, eps } => {
            let cat = parse_group(&group)?;
            let eps = parse_single_eps(&eps)?;
            let iv = parse_indices(&i)?;
            let jv = parse_indices(&j)?;
            let table = build_table(cat, iv.len(), n, eps.as_ref())?;
            let value = table.haar_integral(&iv, &jv)?;
            let record = Record::new("integrate", "exact", Payload::Value(rat_string(&value)))
                .input("group", group)
                .input("n", n)
                .input("i", i)
                .input("j", j);
            Ok((record, 0))
        }
        Cmd::Moment { group, n, k, stars, eps } => {
            let cat = parse_group(&group)?;
            let record = if cat.needs_colors() {
                reject_plain_flags(&group, &k, &stars)?;
                let words = parse_eps_words(&eps)?
                    .ok_or_else(|| AppError::Usage(format!("--eps is required for {group}")))?;
                let value = word_moment_exact(cat, n, &words)?;
                Record::new("moment", "exact", Payload::Value(rat_string(&value)))
                    .input("group", group)
                    .input("n", n)
                    .input("eps", words.iter().map(|w| w.to_string()).collect::<Vec<_>>())
            } else {
                let ks = parse_k_list(&k)?;
                let stars = parse_stars(&stars, ks.len())?;
                let spec = MomentSpec::with_stars(&ks, &stars)?;
                let value = trace_moment_exact(cat, n, &spec)?;
                Record::new("moment", "exact", Payload::Value(rat_string(&value)))
                    .input("group", group)
                    .input("n", n)
                    .input("k", ks.iter().map(|v| *v as u64).collect::<Vec<u64>>())
                    .input("stars", stars.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            };
            Ok((record, 0))
        }
        Cmd::MomentAsym { group, k, stars, eps } => {
            let cat = parse_group(&group)?;
            let record = if cat.needs_colors() {
                reject_plain_flags(&group, &k, &stars)?;
                let words = parse_eps_words(&eps)?
                    .ok_or_else(|| AppError::Usage(format!("--eps is required for {group}")))?;
                let count = asymptotic_moment_count_words(cat, &words)?;
                Record::new("moment-asym", "count", Payload::Value(count.to_string()))
                    .input("group", group)
                    .input("eps", words.iter().map(|w| w.to_string()).collect::<Vec<_>>())
            } else {
                let ks = parse_k_list(&k)?;
                let stars = parse_stars(&stars, ks.len())?;
                let spec = MomentSpec::with_stars(&ks, &stars)?;
                let count = asymptotic_moment_count(cat, &spec)?;
                Record::new("moment-asym", "count", Payload::Value(count.to_string()))
                    .input("group", group)
                    .input("k", ks.iter().map(|v| *v as u64).collect::<Vec<u64>>())
            };
            Ok((record, 0))
        }
        Cmd::CumulantAsym { group, k, stars, eps } => {
            let cat = parse_group(&group)?;
            if matches!(cat, Category::UPairs) {
                return Err(AppError::Computation(Error::UnsupportedCategory {
                    cat: cat.to_string(),
                }));
            }
            let record = if matches!(cat, Category::HsComplex(_)) {
                reject_plain_flags(&group, &k, &stars)?;
                let words = parse_eps_words(&eps)?
                    .ok_or_else(|| AppError::Usage(format!("--eps is required for {group}")))?;
                let s = match cat {
                    Category::HsComplex(s) => s,
                    _ => unreachable!(),
                };
                let count = hs_cumulant_count(s, &words)?;
                Record::new("cumulant-asym", "count", Payload::Value(count.to_string()))
                    .input("group", group)
                    .input("eps", words.iter().map(|w| w.to_string()).collect::<Vec<_>>())
            } else {
                let ks = parse_k_list(&k)?;
                let stars = parse_stars(&stars, ks.len())?;
                let spec = MomentSpec::with_stars(&ks, &stars)?;
                let count = asymptotic_cumulant_count(cat, &spec)?;
                Record::new("cumulant-asym", "count", Payload::Value(count.to_string()))
                    .input("group", group)
                    .input("k", ks.iter().map(|v| *v as u64).collect::<Vec<u64>>())
            };
            Ok((record, 0))
        }
        Cmd::Laws { group, kmax, rmax } => {
            let cat = parse_group(&group)?;
            let mut rows = Vec::new();
            for r in 1..=rmax {
                for k in 1..=kmax {
                    let spec = MomentSpec::new(&vec![k; r]).map_err(AppError::from)?;
                    let value = closed_form_cumulant(cat, &spec)?;
                    rows.push(vec![r.to_string(), k.to_string(), value.to_string()]);
                }
            }
            let record = Record::new(
                "laws",
                "count",
                Payload::Table { columns: vec!["r", "k", "cumulant"], rows },
            )
            .input("group", group)
            .input("kmax", kmax)
            .input("rmax", rmax);
            Ok((record, 0))
        }
        Cmd::Sample { group, n, k, stars, eps, trials, seed, exhaustive, cycles, lmax } => {
            let g: SampleGroup = group.parse().map_err(|e: Error| AppError::Usage(e.to_string()))?;
            if cycles {
                let batch = empirical_cycle_statistics(g, n, lmax, trials, seed)?;
                let record = Record::new("sample", "montecarlo", batch_payload(&batch))
                    .input("group", group)
                    .input("n", n as u64)
                    .input("lmax", lmax as u64)
                    .input("trials", trials)
                    .input("seed", seed);
                return Ok((record, 0));
            }
            if let Some(words) = parse_eps_words(&eps)? {
                if !matches!(g, SampleGroup::U) {
                    return Err(AppError::Usage("--eps word sampling is for group U".into()));
                }
                let batch = empirical_unitary_word_moments(n, &words, trials, seed)?;
                let record = Record::new("sample", "montecarlo", batch_payload(&batch))
                    .input("group", group)
                    .input("n", n as u64)
                    .input("eps", words.iter().map(|w| w.to_string()).collect::<Vec<_>>())
                    .input("trials", trials)
                    .input("seed", seed);
                return Ok((record, 0));
            }
            let ks = parse_k_list(&k)?;
            let star_list = parse_stars(&stars, ks.len())?;
            let spec = MomentSpec::with_stars(&ks, &star_list)?;
            if exhaustive {
                let value = exhaustive_trace_moment(g, n, &spec)?;
                let record = Record::new("sample", "exact", Payload::Value(rat_string(&value)))
                    .input("group", group)
                    .input("n", n as u64)
                    .input("k", ks.iter().map(|v| *v as u64).collect::<Vec<u64>>())
                    .input("exhaustive", true);
                return Ok((record, 0));
            }
            let batch = empirical_trace_moments(g, n, &spec, trials, seed)?;
            let record = Record::new("sample", "montecarlo", batch_payload(&batch))
                .input("group", group)
                .input("n", n as u64)
                .input("k", ks.iter().map(|v| *v as u64).collect::<Vec<u64>>())
                .input("trials", trials)
                .input("seed", seed);
            Ok((record, 0))
        }
        Cmd::Verify { suite, kmax, trials, seed } => {
            let report = run_suite(&suite, SuiteParams { kmax, trials, seed })
                .map_err(AppError::from)?;
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.expected.clone(),
                        c.actual.clone(),
                        if c.pass { "pass".into() } else { "FAIL".into() },
                    ]
                })
                .collect();
            let all_pass = report.all_pass();
            let record = Record::new(
                "verify",
                "count",
                Payload::Table { columns: vec!["check", "expected", "actual", "status"], rows },
            )
            .input("suite", suite)
            .input("passed", report.passed() as u64)
            .input("total", report.checks.len() as u64);
            Ok((record, if all_pass { 0 } else { 1 }))
        }
    }
}

fn matrix_record(
    inverse: bool,
    group: String,
    k: usize,
    n: u64,
    eps: Option<String>,
) -> Result<(Record, i32), AppError> {
    let cat = parse_group(&group)?;
    let eps = parse_single_eps(&eps)?;
    let table = build_table(cat, k, n, eps.as_ref())?;
    let m = table.size();
    let mut rows = Vec::with_capacity(m);
    for a in 0..m {
        let mut row = Vec::with_capacity(m);
        for b in 0..m {
            if inverse {
                row.push(rat_string(&table.wg_entry(a, b)));
            } else {
                row.push(table.gram_entry(a, b).to_string());
            }
        }
        rows.push(row);
    }
    let command = if inverse { "weingarten" } else { "gram" };
    let record = Record::new(command, "exact", Payload::Matrix(rows))
        .input("group", group)
        .input("k", k)
        .input("n", n)
        .input("basis", table.basis().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    Ok((record, 0))
}
