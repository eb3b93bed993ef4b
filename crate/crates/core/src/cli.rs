//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::alist::{parse_alist, write_alist};
use crate::catalog::Catalog;
use crate::code::{
    bch_run_from_roots, build_code, is_orthogonal, min_distance_exact_with, parity_check_matrix, DEFAULT_DMIN_BUDGET,
};
use crate::cyclotomic::{cosets, factorize};
use crate::error::{Error, Result};
use crate::field::build_field;
use crate::matrix::{BitMatrix, SparseMatrix};
use crate::par::Execution;
use crate::poly::{is_idempotent, BinaryPoly};
use crate::search::{CodeRecord, SearchConfig};
use crate::sim::{simulate_fer_matrix, Algorithm, ChannelConfig, DecoderConfig, SimOptions, SimResult, StopRule};

/// Exit status when a search was cut short by its node budget.
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cyclic-ldpc", version, about = "Search, analyse and simulate cyclic LDPC codes")]
pub struct Cli {
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the cyclotomic cosets of 2 modulo n.
    Cosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Factorise z^n + 1: index, coset leader, degree, factor.
    Factor {
        #[arg(long)]
        n: usize,
        /// Also print each factor's primitive idempotent.
        #[arg(long)]
        json: bool,
    },
    /// Search for low-weight idempotents; prints one JSON record per line.
    Search(SearchArgs),
    /// Report the parameters of the code defined by u(x).
    Analyze {
        /// Polynomial text such as "1+x+x^3".
        #[arg(long)]
        u: String,
        #[arg(long)]
        n: usize,
        /// Largest number of messages to enumerate for dmin.
        #[arg(long, default_value_t = DEFAULT_DMIN_BUDGET)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
    /// Write the circulant parity-check matrix in alist format.
    ExportAlist {
        #[command(flatten)]
        source: CodeSource,
        /// Keep only the first n - k (independent) rows.
        #[arg(long)]
        reduced: bool,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo FER/BER over BPSK/AWGN; prints CSV.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    /// Minimum rate of interest.
    #[arg(long, default_value_t = 0.0)]
    pub rmin: f64,
    /// Lowest expected minimum distance.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Slack on the weight bound sqrt(n).
    #[arg(long, default_value_t = 0)]
    pub delta: usize,
    #[arg(long)]
    pub max_results: Option<usize>,
    /// Maximum number of search-tree nodes.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Append novel records to this JSON-lines catalog.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

/// Where a parity-check matrix comes from.
#[derive(Args, Debug)]
pub struct CodeSource {
    #[arg(long, requires = "n", conflicts_with_all = ["record", "alist"])]
    pub u: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// File whose first line is a search or catalog record.
    #[arg(long, conflicts_with = "alist")]
    pub record: Option<PathBuf>,
    /// Existing alist file (simulate only).
    #[arg(long)]
    pub alist: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DecoderArg {
    Spa,
    Minsum,
}

impl From<DecoderArg> for Algorithm {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Spa => Algorithm::SumProduct,
            DecoderArg::Minsum => Algorithm::MinSum,
        }
    }
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: CodeSource,
    /// Eb/N0 points in dB, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub snr: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub iters: usize,
    #[arg(long, value_enum, default_value_t = DecoderArg::Spa)]
    pub decoder: DecoderArg,
    /// Use the first n - k rows instead of the full circulant.
    #[arg(long)]
    pub reduced: bool,
    #[arg(long, default_value_t = 100)]
    pub min_errors: u64,
    #[arg(long, default_value_t = 100_000)]
    pub max_frames: u64,
    /// Transmit random codewords instead of the all-zero word.
    #[arg(long)]
    pub random_codeword: bool,
    /// Keep iterating after the syndrome is zero.
    #[arg(long)]
    pub no_early_stop: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn out_err(e: std::io::Error) -> Error {
    Error::io(Path::new("<stdout>"), e)
}

fn read_record(path: &Path) -> Result<CodeRecord> {
    let text = read(path)?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Catalog {
            line: 1,
            reason: "no record found".into(),
        })?;
    serde_json::from_str(line).map_err(|e| Error::Catalog {
        line: 1,
        reason: e.to_string(),
    })
}

fn parse_u(text: &str, n: usize) -> Result<BinaryPoly> {
    let u: BinaryPoly = text.parse()?;
    if !u.is_reduced(n) {
        return Err(Error::LengthMismatch(u.degree().unwrap_or(0) + 1, n));
    }
    Ok(u)
}

/// `(u, n)` named by `--u/--n` or `--record`.
fn resolve_poly(src: &CodeSource) -> Result<Option<(BinaryPoly, usize)>> {
    if let Some(path) = &src.record {
        let rec = read_record(path)?;
        return Ok(Some((rec.u, rec.n)));
    }
    match (&src.u, src.n) {
        (Some(u), Some(n)) => Ok(Some((parse_u(u, n)?, n))),
        (None, None) => Ok(None),
        _ => Err(Error::InvalidConfig("--u and --n go together".into())),
    }
}

/// Parity-check matrix, code dimension and (if known) a generator matrix.
fn resolve_matrix(src: &CodeSource, reduced: bool) -> Result<(SparseMatrix, usize, Option<BitMatrix>)> {
    if let Some(path) = &src.alist {
        let h = parse_alist(&read(path)?)?;
        let dense = h.to_dense();
        let k = h.cols() - dense.rank();
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        return Ok((h, k, Some(dense.nullspace())));
    }
    let (u, n) = resolve_poly(src)?
        .ok_or_else(|| Error::InvalidConfig("give --u and --n, --record or --alist".into()))?;
    let code = build_code(&u, n)?;
    let circ = parity_check_matrix(&u, n)?;
    let h = if reduced { circ.reduced(&code) } else { circ.to_sparse() };
    Ok((h, code.k, Some(code.generator_matrix())))
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    k: usize,
    weight: usize,
    u: String,
    g: String,
    h: String,
    /// Longest run of consecutive roots of g.
    bch_run: usize,
    bch_bound: usize,
    orthogonal: bool,
    idempotent: bool,
    dmin: Option<usize>,
}

fn analyze(u: &str, n: usize, budget: u128, exec: Execution) -> Result<Analysis> {
    let u = parse_u(u, n)?;
    let code = build_code(&u, n)?;
    let ctx = build_field(n)?;
    let run = bch_run_from_roots(&u, &ctx);
    let dmin = match min_distance_exact_with(&code, budget, exec) {
        Ok(d) => Some(d),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Analysis {
        n,
        k: code.k,
        weight: u.weight(),
        idempotent: is_idempotent(&u, n),
        orthogonal: is_orthogonal(&u, n),
        u: u.to_string(),
        g: code.g.to_string(),
        h: code.h.to_string(),
        bch_run: run,
        bch_bound: run + 1,
        dmin,
    })
}

fn write_analysis(a: &Analysis, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "u: {}", a.u)?;
    writeln!(out, "weight: {}", a.weight)?;
    writeln!(out, "(n,k): ({},{})", a.n, a.k)?;
    writeln!(out, "rate: {:.4}", a.k as f64 / a.n as f64)?;
    writeln!(out, "g: {}", a.g)?;
    writeln!(out, "h: {}", a.h)?;
    writeln!(out, "bch_run: {}", a.bch_run)?;
    writeln!(out, "bch_bound: {}", a.bch_bound)?;
    writeln!(out, "orthogonal: {}", a.orthogonal)?;
    writeln!(out, "idempotent: {}", a.idempotent)?;
    match a.dmin {
        Some(d) => writeln!(out, "dmin: {d}"),
        None => writeln!(out, "dmin: >= {} (2^{} messages exceed the budget)", a.bch_bound, a.k),
    }
}

fn cmd_search(args: &SearchArgs, exec: Execution, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = SearchConfig {
        n: args.n,
        r_min: args.rmin,
        d: args.d,
        delta: args.delta,
        max_results: args.max_results,
        budget: args.budget,
    };
    cfg.validate()?;
    let ctx = build_field(args.n)?;
    let fs = factorize(&ctx)?;
    let outcome = crate::search::code_search_with(&cfg, &fs, &ctx, exec)?;
    for rec in &outcome.records {
        let line = serde_json::to_string(rec).expect("records serialise");
        writeln!(out, "{line}").map_err(out_err)?;
    }
    let mut summary = format!(
        "nodes={} candidates={} degenerate={} records={} partial={}",
        outcome.nodes,
        outcome.candidates,
        outcome.degenerate,
        outcome.records.len(),
        outcome.truncated
    );
    if let Some(path) = &args.catalog {
        let s = Catalog::new(path).append_novel(&outcome.records, &cfg)?;
        summary.push_str(&format!(" catalog_added={} catalog_skipped={}", s.added, s.skipped));
    }
    writeln!(err, "{summary}").map_err(out_err)?;
    if outcome.truncated {
        let e = Error::BudgetExceeded {
            needed: outcome.nodes as u128 + 1,
            budget: outcome.nodes as u128,
        };
        writeln!(err, "warning: {e}; results are partial").map_err(out_err)?;
        return Ok(EXIT_PARTIAL);
    }
    Ok(0)
}

fn cmd_simulate(args: &SimulateArgs, exec: Execution, out: &mut dyn Write) -> Result<i32> {
    let (h, k, generator) = resolve_matrix(&args.source, args.reduced)?;
    let rate = k as f64 / h.cols() as f64;
    let points: Vec<ChannelConfig> = args
        .snr
        .iter()
        .map(|&e| ChannelConfig::new(e, rate, args.seed))
        .collect();
    let dec = DecoderConfig {
        max_iterations: args.iters,
        algorithm: args.decoder.into(),
        early_stop: !args.no_early_stop,
    };
    let opts = SimOptions {
        stop: StopRule {
            min_frame_errors: args.min_errors,
            max_frames: args.max_frames,
        },
        random_codeword: args.random_codeword,
        ..Default::default()
    };
    let results = simulate_fer_matrix(&h, generator.as_ref(), &points, &dec, &opts, exec)?;
    writeln!(out, "{}", SimResult::CSV_HEADER).map_err(out_err)?;
    for r in results {
        writeln!(out, "{}", r.csv_row()).map_err(out_err)?;
    }
    Ok(0)
}

/// Executes a parsed command line; returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Cosets { n, json } => {
            let cs = cosets(*n)?;
            if *json {
                let line = serde_json::to_string(&cs).expect("cosets serialise");
                writeln!(out, "{line}").map_err(out_err)?;
            } else {
                for c in &cs {
                    let m: Vec<String> = c.members().iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{{{}}}", m.join(",")).map_err(out_err)?;
                }
            }
        }
        Command::Factor { n, json } => {
            let fs = factorize(&build_field(*n)?)?;
            if *json {
                #[derive(Serialize)]
                struct Row<'a> {
                    index: usize,
                    leader: usize,
                    degree: usize,
                    factor: String,
                    theta: String,
                    coset: &'a [usize],
                }
                for (i, f) in fs.factors().iter().enumerate() {
                    let row = Row {
                        index: i,
                        leader: f.coset.leader(),
                        degree: f.degree(),
                        factor: f.poly.to_text('z'),
                        theta: f.theta.to_text('z'),
                        coset: f.coset.members(),
                    };
                    writeln!(out, "{}", serde_json::to_string(&row).expect("rows serialise")).map_err(out_err)?;
                }
            } else {
                write!(out, "{}", fs.dump()).map_err(out_err)?;
            }
        }
        Command::Search(args) => return cmd_search(args, exec, out, err),
        Command::Analyze { u, n, budget, json } => {
            let a = analyze(u, *n, *budget, exec)?;
            if *json {
                writeln!(out, "{}", serde_json::to_string(&a).expect("analysis serialises")).map_err(out_err)?;
            } else {
                write_analysis(&a, out).map_err(out_err)?;
            }
        }
        Command::ExportAlist { source, reduced, out: path } => {
            if source.alist.is_some() {
                return Err(Error::InvalidConfig("export-alist takes --u/--n or --record".into()));
            }
            let h = if *reduced {
                resolve_matrix(source, true)?.0
            } else {
                // the full circulant exists even when the code is trivial
                let (u, n) = resolve_poly(source)?
                    .ok_or_else(|| Error::InvalidConfig("give --u and --n or --record".into()))?;
                parity_check_matrix(&u, n)?.to_sparse()
            };
            let text = write_alist(&h);
            match path {
                Some(p) => fs::write(p, text).map_err(|e| Error::io(p, e))?,
                None => out.write_all(text.as_bytes()).map_err(out_err)?,
            }
        }
        Command::Simulate(args) => return cmd_simulate(args, exec, out),
    }
    Ok(0)
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match run(&cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
