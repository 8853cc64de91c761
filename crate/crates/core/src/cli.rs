// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `rank`, `compare` and `verify`.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 numerical failure
//! (divergence, non-convergence, or a verification check out of tolerance).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::dense::{oracle_cap, DenseMatrix};
use crate::error::{Error, Result};
use crate::io::{
    kendall_tau, parse_edge_list, parse_matrix_market, parse_preferences, parse_ranking,
    parse_weights, write_ranking, LabeledGraph,
};
use crate::matrix::{
    l1_distance, DampingParams, NormalizeMode, ScoreVector, SparseMatrix, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
use crate::oracle::{
    cesaro_defect, dense_cesaro, dense_resolvent_limit, dense_spectrum, matched_distance,
    sort_by_modulus, ResolventOutcome, DEFAULT_MAX_DOUBLINGS,
};
use crate::rankers::{
    ahp_right_ranking, brauer_perturb, damped_spectral_ranking, eigenfactor, geometric_weights,
    hits, hoede_index, hubbell_index, katz_index, lambda0_for, left_dominant_ranking,
    markovian_spectral_ranking, pagerank, pinski_narin, ranking_from_scores, surfer_prediction,
    wei_ranking, KatzMethod, KatzVariant, PinskiNarinConvention, RankerReport, Ranking, WeiOptions,
    DEFAULT_TIE_TOL,
};
use crate::spectral::dominant_left;

const DEFAULT_ALPHA: f64 = 0.85;
/// Truncation of geometric surfer weights when no weight file is given.
const SURFER_TAIL: f64 = 1e-12;
const CESARO_PASS: f64 = 1e-7;
const RESOLVENT_PASS: f64 = 1e-8;
const BRAUER_PASS: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "spectrank", version, about = "Spectral ranking of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank the nodes of a graph and write a ranking TSV.
    Rank(RankArgs),
    /// Print Kendall's tau-b between two ranking files.
    Compare { first: PathBuf, second: PathBuf },
    /// Run a dense consistency check on a small matrix.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Seeley,
    Wei,
    Katz,
    KatzClassic,
    Hubbell,
    Damped,
    Pagerank,
    Markovian,
    Hits,
    Eigenfactor,
    PinskiNarin,
    Geller,
    Hoede,
    Ahp,
    Surfer,
}

impl Method {
    fn is_markovian(self) -> bool {
        matches!(
            self,
            Method::Pagerank | Method::Markovian | Method::Eigenfactor | Method::Surfer
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Mm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Normalize {
    Strict,
    DanglingUniform,
    DanglingZero,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// Katz: `𝟙 Σ (αM)^k`.
    PathSum,
    /// Katz: `𝟙 M Σ (αM)^k`.
    Classic,
    /// Pinski–Narin: divide entry (i, j) by the sum of row j.
    TargetRowSum,
    /// Pinski–Narin: divide entry (i, j) by the sum of row i.
    SourceRowSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Solver {
    Solve,
    Neumann,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
    /// Row normalization applied before ranking.
    #[arg(long, value_enum)]
    normalize: Option<Normalize>,
    /// Preference file, `label<TAB>weight` per line.
    #[arg(long)]
    pref: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    lambda0: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long, default_value_t = DEFAULT_TIE_TOL)]
    tie_tol: f64,
    /// Surfer survival weights, one per line.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, value_enum)]
    variant: Option<Variant>,
    #[arg(long, value_enum, default_value = "solve")]
    solver: Solver,
    /// Output file; HITS writes `<output>.auth.tsv` and `<output>.hub.tsv`.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Brauer,
    Cesaro,
    Resolvent,
    LimitSweep,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Rank(args) => cmd_rank(&args).map(|()| true),
        Command::Compare { first, second } => cmd_compare(&first, &second).map(|()| true),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {}: {e}", e.kind());
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_graph(input: &InputArgs) -> Result<LabeledGraph> {
    let reader = open(&input.input)?;
    match input.format {
        Format::Edgelist => parse_edge_list(reader, true),
        Format::Mm => {
            let matrix = parse_matrix_market(reader)?;
            let labels = (1..=matrix.n_rows()).map(|i| i.to_string()).collect();
            Ok(LabeledGraph { matrix, labels })
        }
    }
}

fn normalized(m: &SparseMatrix, mode: Normalize) -> Result<SparseMatrix> {
    match mode {
        Normalize::None => Ok(m.clone()),
        Normalize::Strict => m.row_normalize(NormalizeMode::Strict),
        Normalize::DanglingUniform => m.row_normalize(NormalizeMode::DanglingUniform),
        Normalize::DanglingZero => m.row_normalize(NormalizeMode::DanglingZero),
    }
}

/// Preference vector from `--pref`, or `fallback` entries when absent.
/// With `distribution` set the vector is rescaled to sum to one.
fn preference(
    input: &InputArgs,
    labels: &[String],
    distribution: bool,
    fallback: f64,
) -> Result<Vec<f64>> {
    let n = labels.len();
    let raw = match &input.pref {
        Some(path) => parse_preferences(open(path)?, labels)?,
        None if distribution => return Ok(vec![1.0 / n as f64; n]),
        None => return Ok(vec![fallback; n]),
    };
    if !distribution {
        return Ok(raw);
    }
    if let Some(i) = raw.iter().position(|&w| w < 0.0) {
        return Err(Error::InvalidPreference(format!(
            "negative weight for {:?}",
            labels[i]
        )));
    }
    let sum: f64 = raw.iter().sum();
    if sum.is_nan() || sum <= 0.0 {
        return Err(Error::InvalidPreference("weights sum to zero".into()));
    }
    Ok(raw.into_iter().map(|w| w / sum).collect())
}

/// `DEFAULT_ALPHA / λ̂₀`, or `DEFAULT_ALPHA` when λ̂₀ is zero or unknown.
fn default_relative_alpha(m: &SparseMatrix, params: &DampingParams) -> Result<f64> {
    Ok(match lambda0_for(m, params)? {
        Some(l) if l > 0.0 => DEFAULT_ALPHA / l,
        _ => DEFAULT_ALPHA,
    })
}

fn report_line(method: Method, report: Option<&RankerReport>) {
    let name = method.to_possible_value().map(|v| v.get_name().to_string());
    let name = name.unwrap_or_default();
    match report {
        Some(r) => {
            let lambda = r
                .lambda0
                .map_or_else(|| "-".to_string(), |l| format!("{l:.12e}"));
            eprintln!(
                "method={name} iterations={} residual={:.3e} lambda0={lambda}",
                r.iterations, r.residual
            );
        }
        None => eprintln!("method={name} iterations=- residual=- lambda0=-"),
    }
}

fn emit(
    scores: &ScoreVector,
    ranking: &Ranking,
    labels: &[String],
    output: Option<&Path>,
) -> Result<()> {
    match output {
        Some(path) => {
            let mut out = create(path)?;
            write_ranking(scores, ranking, labels, &mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            write_ranking(scores, ranking, labels, &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut name = base.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn cmd_rank(args: &RankArgs) -> Result<()> {
    let method = args.method;
    let graph = load_graph(&args.input)?;
    let default_mode = if method.is_markovian() {
        Normalize::DanglingUniform
    } else {
        Normalize::None
    };
    let m = normalized(&graph.matrix, args.input.normalize.unwrap_or(default_mode))?;
    let labels = &graph.labels;
    let (tol, max_iter) = (args.tol, args.max_iter);

    let mut base = DampingParams::new(DEFAULT_ALPHA)
        .with_tol(tol)
        .with_max_iter(max_iter);
    if let Some(l) = args.lambda0 {
        base = base.with_lambda0(l);
    }
    let check_variant = |allowed: &[Variant]| -> Result<()> {
        match args.variant {
            Some(v) if !allowed.contains(&v) => Err(Error::InvalidParameter(format!(
                "variant {v:?} does not apply to this method"
            ))),
            _ => Ok(()),
        }
    };

    let report = match method {
        Method::Seeley => left_dominant_ranking(&m, tol, max_iter)?,
        Method::Wei => {
            let options = WeiOptions {
                tie_tol: args.tie_tol,
                max_iter,
                ..WeiOptions::default()
            };
            let (ranking, report) = wei_ranking(&m, &options)?;
            report_line(method, Some(&report));
            return emit(&report.scores, &ranking, labels, args.output.as_deref());
        }
        Method::Katz | Method::KatzClassic => {
            check_variant(&[Variant::PathSum, Variant::Classic])?;
            let variant = match (method, args.variant) {
                (Method::KatzClassic, _) | (_, Some(Variant::Classic)) => KatzVariant::Classic,
                _ => KatzVariant::PathSum,
            };
            let alpha = match args.alpha {
                Some(a) => a,
                None => default_relative_alpha(&m, &base)?,
            };
            let params = DampingParams { alpha, ..base };
            let solver = match args.solver {
                Solver::Solve => KatzMethod::Solve,
                Solver::Neumann => KatzMethod::Neumann,
            };
            katz_index(&m, &params, variant, solver)?
        }
        Method::Hubbell => {
            let v = preference(&args.input, labels, false, 1.0)?;
            let scaled = match args.alpha {
                Some(a) => m.scale(a),
                None => m,
            };
            hubbell_index(&scaled, &v, tol, max_iter)?
        }
        Method::Damped => {
            let v = preference(&args.input, labels, true, 0.0)?;
            let alpha = match args.alpha {
                Some(a) => a,
                None => default_relative_alpha(&m, &base)?,
            };
            damped_spectral_ranking(&m, &v, &DampingParams { alpha, ..base })?
        }
        Method::Pagerank => {
            let v = preference(&args.input, labels, true, 0.0)?;
            pagerank(&m, &v, args.alpha.unwrap_or(DEFAULT_ALPHA), tol, max_iter)?
        }
        Method::Eigenfactor => {
            let v = preference(&args.input, labels, true, 0.0)?;
            eigenfactor(&m, &v, args.alpha.unwrap_or(DEFAULT_ALPHA), tol, max_iter)?
        }
        Method::Markovian => {
            let v = preference(&args.input, labels, true, 0.0)?;
            let scores = markovian_spectral_ranking(&m, &v, oracle_cap())?;
            report_line(method, None);
            let ranking = ranking_from_scores(&scores, args.tie_tol);
            return emit(&scores, &ranking, labels, args.output.as_deref());
        }
        Method::Surfer => {
            let v = preference(&args.input, labels, true, 0.0)?;
            let weights = match &args.weights {
                Some(path) => parse_weights(open(path)?)?,
                None => geometric_weights(args.alpha.unwrap_or(DEFAULT_ALPHA), SURFER_TAIL)?,
            };
            let scores = surfer_prediction(&m, &v, &weights)?;
            report_line(method, None);
            let ranking = ranking_from_scores(&scores, args.tie_tol);
            return emit(&scores, &ranking, labels, args.output.as_deref());
        }
        Method::Hits => {
            let base_path = args.output.as_deref().ok_or_else(|| {
                Error::InvalidParameter("hits needs --output for its two files".into())
            })?;
            let (auth, hub) = hits(&m, tol, max_iter)?;
            report_line(method, Some(&auth));
            for (report, suffix) in [(&auth, ".auth.tsv"), (&hub, ".hub.tsv")] {
                let ranking = ranking_from_scores(&report.scores, args.tie_tol);
                let path = with_suffix(base_path, suffix);
                emit(&report.scores, &ranking, labels, Some(&path))?;
            }
            return Ok(());
        }
        Method::PinskiNarin => {
            check_variant(&[Variant::TargetRowSum, Variant::SourceRowSum])?;
            let convention = match args.variant {
                Some(Variant::SourceRowSum) => PinskiNarinConvention::SourceRowSum,
                _ => PinskiNarinConvention::TargetRowSum,
            };
            pinski_narin(&m, convention, tol, max_iter)?
        }
        Method::Geller => pinski_narin(&m, PinskiNarinConvention::SourceRowSum, tol, max_iter)?,
        Method::Hoede => hoede_index(&m, tol, max_iter)?,
        Method::Ahp => ahp_right_ranking(&m, tol, max_iter)?,
    };
    report_line(method, Some(&report));
    let ranking = ranking_from_scores(&report.scores, args.tie_tol);
    emit(&report.scores, &ranking, labels, args.output.as_deref())
}

fn cmd_compare(first: &Path, second: &Path) -> Result<()> {
    let a = parse_ranking(open(first)?)?;
    let b = parse_ranking(open(second)?)?;
    let tau = kendall_tau(&a.ranking(), &b.aligned_to(&a.labels)?)?;
    println!("{tau:.6}");
    Ok(())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.9}", z.re)
    } else {
        format!("{:.9}{:+.9}i", z.re, z.im)
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let graph = load_graph(&args.input)?;
    let cap = oracle_cap();
    match args.check {
        Check::Brauer => verify_brauer(args, &graph, cap),
        Check::Cesaro => {
            let s = normalized(
                &graph.matrix,
                args.input.normalize.unwrap_or(Normalize::None),
            )?;
            let dense = DenseMatrix::from_sparse(&s, cap)?;
            let star = dense_cesaro(&dense, args.tol, DEFAULT_MAX_DOUBLINGS)?;
            if dense.n() <= 10 {
                println!("limit:");
                for row in star.to_rows() {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:.9}")).collect();
                    println!("  {}", cells.join(" "));
                }
            }
            let defect = cesaro_defect(&dense, &star);
            let pass = defect <= CESARO_PASS;
            println!(
                "cesaro defect {defect:.3e} (limit {CESARO_PASS:e}): {}",
                verdict(pass)
            );
            Ok(pass)
        }
        Check::Resolvent => {
            let s = normalized(
                &graph.matrix,
                args.input.normalize.unwrap_or(Normalize::None),
            )?;
            let dense = DenseMatrix::from_sparse(&s, cap)?;
            let alphas = args.alphas.clone().unwrap_or_else(|| vec![0.9, 0.99]);
            let report = dense_resolvent_limit(&dense, &alphas, args.tol)?;
            let mut all = true;
            for check in &report.checks {
                match check.outcome {
                    ResolventOutcome::Agreement { discrepancy, terms } => {
                        let pass = discrepancy <= RESOLVENT_PASS;
                        all &= pass;
                        println!(
                            "alpha {}: discrepancy {discrepancy:.3e} after {terms} terms: {}",
                            check.alpha,
                            verdict(pass)
                        );
                    }
                    ResolventOutcome::SeriesDiverged { terms, last_term } => {
                        all = false;
                        println!(
                            "alpha {}: series diverged after {terms} terms (term {last_term:.3e}): FAIL",
                            check.alpha
                        );
                    }
                }
            }
            Ok(all)
        }
        Check::LimitSweep => {
            let mode = args.input.normalize.unwrap_or(Normalize::DanglingUniform);
            let p = normalized(&graph.matrix, mode)?;
            let v = preference(&args.input, &graph.labels, true, 0.0)?;
            let limit = markovian_spectral_ranking(&p, &v, cap)?;
            let alphas = args
                .alphas
                .clone()
                .unwrap_or_else(|| vec![0.9, 0.99, 0.999]);
            let mut pass = alphas.windows(2).all(|w| w[0] < w[1]);
            let mut prev = f64::INFINITY;
            for &alpha in &alphas {
                let r = pagerank(&p, &v, alpha, args.tol, args.max_iter)?;
                let gap = l1_distance(&r.scores, &limit);
                pass &= gap < prev;
                prev = gap;
                println!("alpha {alpha}: l1 gap {gap:.6e}");
            }
            println!("gaps strictly decreasing: {}", verdict(pass));
            Ok(pass)
        }
    }
}

/// Compares the spectrum of `αM + (1−α)xᵀv` with `{λ₀} ∪ {αλᵢ}`, taking
/// `x` as the right Perron vector of `M` and `v` (uniform or `--pref`)
/// rescaled so that `v · x = λ₀`.
fn verify_brauer(args: &VerifyArgs, graph: &LabeledGraph, cap: usize) -> Result<bool> {
    let m = normalized(
        &graph.matrix,
        args.input.normalize.unwrap_or(Normalize::None),
    )?;
    let dense = DenseMatrix::from_sparse(&m, cap)?;
    let right = dominant_left(&m.transpose(), args.tol, args.max_iter, false)?;
    let (x, lambda0) = (right.vector, right.lambda0);
    let mut v = preference(&args.input, &graph.labels, false, 1.0)?;
    let dot: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
    if dot == 0.0 {
        return Err(Error::InvalidPreference(
            "orthogonal to the eigenvector".into(),
        ));
    }
    v.iter_mut().for_each(|t| *t *= lambda0 / dot);

    let op = brauer_perturb(&m, &x, &v, args.alpha)?;
    let perturbed = dense_spectrum(&op.to_dense(cap)?, 1e-6)?.eigenvalues;

    let mut base = dense_spectrum(&dense, 1e-6)?.eigenvalues;
    let target = Complex64::new(lambda0, 0.0);
    let nearest = (0..base.len()).min_by(|&a, &b| {
        (base[a] - target)
            .norm()
            .total_cmp(&(base[b] - target).norm())
    });
    let mut expected: Vec<Complex64> = Vec::with_capacity(base.len());
    if let Some(k) = nearest {
        base.remove(k);
        expected.push(target);
    }
    expected.extend(base.iter().map(|z| z * args.alpha));
    sort_by_modulus(&mut expected);

    let distance = matched_distance(&perturbed, &expected)?;
    let pass = distance <= BRAUER_PASS;
    let show = |zs: &[Complex64]| {
        zs.iter()
            .map(|z| fmt_complex(*z))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("lambda0 {lambda0:.12}");
    println!("perturbed eigenvalues: {{{}}}", show(&perturbed));
    println!("expected eigenvalues:  {{{}}}", show(&expected));
    println!(
        "matched distance {distance:.3e} (limit {BRAUER_PASS:e}): {}",
        verdict(pass)
    );
    Ok(pass)
}
