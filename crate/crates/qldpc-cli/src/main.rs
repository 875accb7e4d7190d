//! Command-line toolkit for dual-containing sparse-graph quantum codes:
//! build them, validate their algebra, decode under three channel models,
//! and tabulate the benchmark rate curves.
//!
//! Exit codes: 0 on success, 1 when a requested operation fails validation
//! (bad file, infeasible construction, non-orthogonal matrix), 2 for
//! command-line usage errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qldpc::alist::{read_alist, write_alist};
use qldpc::analysis::{curve_root, sample_curve, RateCurve};
use qldpc::channels::ChannelModel;
use qldpc::constructions::{
    audit_low_weight, bicycle, construction_m, construction_n, mc_search_regular, unicycle,
    CssCode,
};
use qldpc::decoder::DEFAULT_MAX_ITER;
use qldpc::designsets::{matched_sets_mod_500, perfect_subset, DifferenceSet, SetKind};
use qldpc::gf2::SparseBinMat;
use qldpc::pauli::{demo_code, pauli_syndrome, PauliOperator};
use qldpc::sim::{
    find_noise_at_target, parse_channel, run_trials_capped, split_channel, sweep, ChannelFamily,
    DecoderConfig, DecoderKind, SweepResult, RNG_NAME,
};

/// Build, inspect, and stress-test dual-containing sparse-graph quantum codes.
#[derive(Parser)]
#[command(name = "qldpc", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it as an alist file plus a `.meta` sidecar.
    #[command(subcommand)]
    Construct(ConstructFamily),
    /// Validate an alist file: self-orthogonality, rank, rates, weight audit.
    Check(CheckArgs),
    /// Run decoding trials at one channel setting and print a CSV summary.
    Simulate(SimulateArgs),
    /// Run decoding trials across a grid of channel parameters.
    Sweep(SweepArgs),
    /// Search for the noise level where the failure rate hits a target.
    Threshold(ThresholdArgs),
    /// Tabulate benchmark rate curves, optionally with their zero crossings.
    Curves(CurvesArgs),
    /// Print the stabilizers and single-error syndromes of a textbook code.
    Demo(DemoArgs),
}

#[derive(Subcommand)]
enum ConstructFamily {
    /// Two mirrored circulants built from a random sparse difference set.
    Bicycle {
        /// Code length (number of qubits); must be even.
        #[arg(long)]
        n: usize,
        /// Rows kept after balanced row deletion.
        #[arg(long)]
        m: usize,
        /// Row weight of the full matrix before deletion.
        #[arg(long)]
        k: usize,
        /// Seed for the difference-set draw and the row-deletion shuffle.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output alist path; `<path>.meta` is written beside it.
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Difference-set cyclic code plus one extra column shared by every row.
    Unicycle {
        /// Prime power; the code has q^2 + q + 2 columns.
        #[arg(long)]
        q: usize,
        /// Output alist path; `<path>.meta` is written beside it.
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Sum of circulants whose pooled difference counts are all 0 or 2.
    Nsets {
        /// Circulant size, which is also the code length.
        #[arg(long)]
        modulus: usize,
        /// Use the built-in matched pair of weight-10 sets modulo 500.
        #[arg(long, conflicts_with = "set")]
        matched_500: bool,
        /// Residues of one set, comma-separated; repeat the flag per set.
        #[arg(long = "set", value_name = "A,B,C")]
        set: Vec<String>,
        /// Output alist path; `<path>.meta` is written beside it.
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Cyclic code from a 14-element difference set, with the set's own
    /// columns deleted.
    #[command(group(clap::ArgGroup::new("msource").required(true)))]
    Mdesign {
        /// Take the parent as 14 elements of the perfect difference set of
        /// this prime power (modulus q^2 + q + 1).
        #[arg(long, group = "msource")]
        singer_q: Option<usize>,
        /// Residues of an explicit 14-element parent set, comma-separated.
        #[arg(long, group = "msource", requires = "modulus")]
        parent: Option<String>,
        /// Modulus for an explicit parent set.
        #[arg(long)]
        modulus: Option<usize>,
        /// Difference property claimed for an explicit parent: every nonzero
        /// residue exactly once (perfect) or at most once (unique).
        #[arg(long, value_enum, default_value_t = ParentKind::Unique)]
        kind: ParentKind,
        /// Output alist path; `<path>.meta` is written beside it.
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Monte-Carlo search for a self-orthogonal matrix with regular weights.
    Regular {
        /// Column weight.
        #[arg(long)]
        j: usize,
        /// Row weight.
        #[arg(long)]
        k: usize,
        /// Code length.
        #[arg(long)]
        n: usize,
        /// Number of rows.
        #[arg(long)]
        m: usize,
        /// Seed for the candidate search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate matrices to try before giving up.
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        /// Output alist path; `<path>.meta` is written beside it.
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Alist file to inspect.
    code: PathBuf,
    /// Largest word weight the audit searches for (default: max row weight).
    #[arg(long)]
    audit_weight: Option<usize>,
    /// Decoder-impulse probes per column (0 = structural candidates only).
    #[arg(long, default_value_t = 0)]
    audit_effort: usize,
}

#[derive(Args)]
struct SimulateArgs {
    /// Alist file holding the code.
    #[arg(long)]
    code: PathBuf,
    /// Channel spec: `bscpair:fm=0.02`, `4ary:f=0.03`, or `gauss:sigma=1.0`.
    #[arg(long, value_parser = channel_arg)]
    channel: ChannelModel,
    /// Decoding algorithm.
    #[arg(long, value_enum, default_value_t = DecoderArg::Binary)]
    decoder: DecoderArg,
    /// Message-passing iteration cap per decode.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Number of decoding trials.
    #[arg(long)]
    trials: usize,
    /// Base seed; trial i draws from substream i of this seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop early once this many decoding failures have accumulated.
    #[arg(long)]
    failure_cap: Option<usize>,
    /// Also write the CSV to this file.
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Alist file holding the code.
    #[arg(long)]
    code: PathBuf,
    /// Channel family to sweep.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Comma-separated, strictly increasing channel parameters.
    #[arg(long, value_parser = grid_arg)]
    grid: GridSpec,
    /// Decoding algorithm.
    #[arg(long, value_enum, default_value_t = DecoderArg::Binary)]
    decoder: DecoderArg,
    /// Message-passing iteration cap per decode.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Trials per grid point (each point stops early at 100 failures).
    #[arg(long)]
    trials: usize,
    /// Base seed; grid point i derives its own stream from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the CSV to this file.
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Alist file holding the code.
    #[arg(long)]
    code: PathBuf,
    /// Channel family to search along.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Decoding algorithm.
    #[arg(long, value_enum, default_value_t = DecoderArg::Binary)]
    decoder: DecoderArg,
    /// Message-passing iteration cap per decode.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Block failure rate to hit.
    #[arg(long)]
    target: f64,
    /// Relative bracket width at which the search counts as converged.
    #[arg(long, default_value_t = 0.1)]
    rel_tol: f64,
    /// Total decoding trials the search may spend.
    #[arg(long, default_value_t = 200_000)]
    budget: usize,
    /// Base seed for the search's probe streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CurvesArgs {
    /// Curve name (c_bsc, r_gv, c4, c4b, cq_bsc, rq_gv, c4q, rq_gv4) or
    /// `all`.
    #[arg(long, default_value = "all")]
    curve: String,
    /// Lower end of the flip-probability range.
    #[arg(long, default_value_t = 0.001)]
    from: f64,
    /// Upper end of the flip-probability range.
    #[arg(long, default_value_t = 0.11)]
    to: f64,
    /// Number of sample points per curve.
    #[arg(long, default_value_t = 40)]
    steps: usize,
    /// After the table, print where each curve crosses zero.
    #[arg(long)]
    root: bool,
    /// Also write the CSV to this file.
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    /// Which textbook code to print.
    #[arg(value_enum)]
    code: DemoCode,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderArg {
    /// Two independent binary message-passing decoders (bit and phase).
    Binary,
    /// One four-state decoder tracking bit/phase correlations.
    Quaternary,
    /// Two-hypothesis decoder for codes with a column shared by every row.
    Unicycle,
}

impl DecoderArg {
    fn kind(self) -> DecoderKind {
        match self {
            DecoderArg::Binary => DecoderKind::Binary,
            DecoderArg::Quaternary => DecoderKind::Quaternary,
            DecoderArg::Unicycle => DecoderKind::Unicycle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Independent bit-flip and phase-flip channels with equal rates.
    Bscpair,
    /// One four-state flip; the three error outcomes are equally likely.
    #[value(name = "4ary")]
    FourAry,
    /// Bit flips whose decoder evidence wobbles with Gaussian noise.
    Gauss,
}

impl FamilyArg {
    fn family(self) -> ChannelFamily {
        match self {
            FamilyArg::Bscpair => ChannelFamily::BscPair,
            FamilyArg::FourAry => ChannelFamily::FourAry,
            FamilyArg::Gauss => ChannelFamily::Gaussian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParentKind {
    /// Every nonzero residue appears exactly once as a difference.
    Perfect,
    /// Every nonzero residue appears at most once as a difference.
    Unique,
}

impl ParentKind {
    fn set_kind(self) -> SetKind {
        match self {
            ParentKind::Perfect => SetKind::Perfect,
            ParentKind::Unique => SetKind::UniqueDifference,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoCode {
    /// Nine-qubit bit/phase repetition code.
    Shor,
    /// Seven-qubit code built from the Hamming matrix.
    Steane,
    /// Five-qubit code correcting any single error.
    #[value(name = "five_qubit", alias = "five-qubit")]
    FiveQubit,
}

impl DemoCode {
    fn name(self) -> &'static str {
        match self {
            DemoCode::Shor => "shor",
            DemoCode::Steane => "steane",
            DemoCode::FiveQubit => "five_qubit",
        }
    }
}

/// Channel-spec argument parser; keeps malformed specs as usage errors.
fn channel_arg(s: &str) -> Result<ChannelModel, String> {
    parse_channel(s).map_err(|e| e.to_string())
}

#[derive(Clone)]
struct GridSpec(Vec<f64>);

/// Grid argument parser: comma-separated floats.
fn grid_arg(s: &str) -> Result<GridSpec, String> {
    let mut grid = Vec::new();
    for part in s.split(',') {
        let t = part.trim();
        if t.is_empty() {
            return Err("grid has an empty entry".into());
        }
        grid.push(
            t.parse::<f64>()
                .map_err(|e| format!("bad grid entry {t:?}: {e}"))?,
        );
    }
    Ok(GridSpec(grid))
}

/// Restore default SIGPIPE handling so piping into `head` ends the process
/// quietly instead of panicking on a closed stdout.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Construct(family) => run_construct(family),
        Command::Check(args) => run_check(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Curves(args) => run_curves(args),
        Command::Demo(args) => run_demo(args),
    }
}

/// Parse a comma-separated residue list and sort it for set construction.
fn parse_residues(text: &str) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let t = part.trim();
        if t.is_empty() {
            bail!("residue list has an empty entry");
        }
        out.push(
            t.parse::<usize>()
                .with_context(|| format!("bad residue {t:?}"))?,
        );
    }
    out.sort_unstable();
    Ok(out)
}

fn meta_path(alist: &Path) -> PathBuf {
    PathBuf::from(format!("{}.meta", alist.display()))
}

/// Write the alist file plus a `key = value` sidecar, then print a summary.
fn write_code(code: &CssCode, family: &str, out: &Path) -> anyhow::Result<()> {
    write_alist(code.h(), out).with_context(|| format!("writing {}", out.display()))?;
    let meta = format!(
        "provenance = {}\nfamily = {}\ncolumns = {}\nrows = {}\nrank = {}\n\
         quantum_rate = {}\nclassical_rate = {}\nrng = {}\n",
        code.provenance(),
        family,
        code.n(),
        code.m(),
        code.rank_h(),
        code.quantum_rate(),
        code.classical_rate(),
        RNG_NAME,
    );
    let meta_file = meta_path(out);
    fs::write(&meta_file, meta).with_context(|| format!("writing {}", meta_file.display()))?;
    println!("wrote {} and {}", out.display(), meta_file.display());
    println!(
        "{}: {} columns, {} rows, rank {}, quantum rate {:.4}, classical rate {:.4}",
        code.provenance(),
        code.n(),
        code.m(),
        code.rank_h(),
        code.quantum_rate(),
        code.classical_rate(),
    );
    Ok(())
}

fn run_construct(family: ConstructFamily) -> anyhow::Result<()> {
    match family {
        ConstructFamily::Bicycle { n, m, k, seed, out } => {
            let code = bicycle(n, m, k, seed)?;
            write_code(&code, "bicycle", &out)
        }
        ConstructFamily::Unicycle { q, out } => {
            let code = unicycle(q)?;
            write_code(&code, "unicycle", &out)
        }
        ConstructFamily::Nsets {
            modulus,
            matched_500,
            set,
            out,
        } => {
            let sets: Vec<DifferenceSet> = if matched_500 {
                if modulus != 500 {
                    bail!("--matched-500 is a modulus-500 collection; pass --modulus 500");
                }
                matched_sets_mod_500()
            } else {
                if set.is_empty() {
                    bail!("give at least one --set, or --matched-500");
                }
                set.iter()
                    .map(|s| {
                        let residues = parse_residues(s)?;
                        Ok(DifferenceSet::new(
                            modulus,
                            residues,
                            SetKind::MatchedMember,
                        )?)
                    })
                    .collect::<anyhow::Result<_>>()?
            };
            let code = construction_n(modulus, &sets)?;
            write_code(&code, "nsets", &out)
        }
        ConstructFamily::Mdesign {
            singer_q,
            parent,
            modulus,
            kind,
            out,
        } => {
            let parent_set = match (singer_q, parent) {
                (Some(q), None) => perfect_subset(q, 14)?,
                (None, Some(text)) => {
                    let modulus =
                        modulus.ok_or_else(|| anyhow!("--parent needs --modulus"))?;
                    let residues = parse_residues(&text)?;
                    DifferenceSet::new(modulus, residues, kind.set_kind())?
                }
                _ => bail!("give exactly one of --singer-q or --parent"),
            };
            let code = construction_m(&parent_set)?;
            write_code(&code, "mdesign", &out)
        }
        ConstructFamily::Regular {
            j,
            k,
            n,
            m,
            seed,
            budget,
            out,
        } => {
            let h = mc_search_regular(j, k, n, m, seed, budget)?.ok_or_else(|| {
                anyhow!(
                    "no self-orthogonal ({j},{k})-regular matrix found within {budget} \
                     candidates; raise --budget or change the shape"
                )
            })?;
            let code = CssCode::from_matrix(
                h,
                format!("regular j={j} k={k} n={n} m={m} seed={seed}"),
            )?;
            write_code(&code, "regular", &out)
        }
    }
}

/// Min/max/mean of a weight list.
fn profile(weights: &[usize]) -> String {
    if weights.is_empty() {
        return "none".into();
    }
    let min = weights.iter().min().unwrap();
    let max = weights.iter().max().unwrap();
    let mean = weights.iter().sum::<usize>() as f64 / weights.len() as f64;
    format!("min {min}, max {max}, mean {mean:.2}")
}

fn column_weights(h: &SparseBinMat) -> Vec<usize> {
    let mut weights = vec![0usize; h.n_cols()];
    for row in h.rows() {
        for &c in row {
            weights[c] += 1;
        }
    }
    weights
}

/// Provenance string for a code loaded from disk: the sidecar's value when
/// present, the file stem otherwise.
fn stored_provenance(alist: &Path) -> Option<String> {
    let text = fs::read_to_string(meta_path(alist)).ok()?;
    text.lines()
        .find_map(|line| line.strip_prefix("provenance = "))
        .map(str::to_string)
}

fn load_code(alist: &Path) -> anyhow::Result<CssCode> {
    let h = read_alist(alist).with_context(|| format!("reading {}", alist.display()))?;
    let provenance = stored_provenance(alist).unwrap_or_else(|| {
        alist
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "code".into())
    });
    Ok(CssCode::from_matrix(h, provenance)?)
}

fn run_check(args: CheckArgs) -> anyhow::Result<()> {
    let h = read_alist(&args.code).with_context(|| format!("reading {}", args.code.display()))?;
    println!("file: {}", args.code.display());
    println!("columns (qubits): {}", h.n_cols());
    println!("rows (checks): {}", h.n_rows());
    let row_weights = h.row_weights();
    println!("row weights: {}", profile(&row_weights));
    println!("column weights: {}", profile(&column_weights(&h)));
    let provenance = stored_provenance(&args.code).unwrap_or_else(|| {
        args.code
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "code".into())
    });
    let code = match CssCode::from_matrix(h, provenance) {
        Ok(code) => {
            println!("self-orthogonal: yes");
            code
        }
        Err(err) => {
            println!("self-orthogonal: no");
            return Err(err.into());
        }
    };
    println!("rank: {}", code.rank_h());
    println!(
        "quantum rate: {} ({} logical qubits of {})",
        code.quantum_rate(),
        code.n() - 2 * code.rank_h(),
        code.n(),
    );
    println!("classical rate: {}", code.classical_rate());

    let max_weight = args
        .audit_weight
        .unwrap_or_else(|| row_weights.iter().copied().max().unwrap_or(0));
    let report = audit_low_weight(&code, max_weight, args.audit_effort)?;
    println!(
        "audit (weight <= {max_weight}, effort {}):",
        args.audit_effort
    );
    if report.codewords.is_empty() {
        println!("  codewords outside the row space: none found");
    } else {
        println!(
            "  codewords outside the row space: {} (smallest weight {})",
            report.codewords.len(),
            report.codewords[0].weight(),
        );
        for word in report.codewords.iter().take(5) {
            println!(
                "    weight {} on columns {:?}",
                word.weight(),
                word.to_indices()
            );
        }
        if report.codewords.len() > 5 {
            println!("    ... and {} more", report.codewords.len() - 5);
        }
    }
    if report.near_codewords.is_empty() {
        println!("  near-codewords: none found");
    } else {
        let nearest = &report.near_codewords[0];
        println!(
            "  near-codewords: {} (closest violates {} checks at weight {})",
            report.near_codewords.len(),
            nearest.syndrome_weight,
            nearest.word.weight(),
        );
    }
    Ok(())
}

fn run_simulate(args: SimulateArgs) -> anyhow::Result<()> {
    let code = load_code(&args.code)?;
    let config = DecoderConfig::new(args.decoder.kind(), args.max_iter);
    let summary = run_trials_capped(
        &code,
        &args.channel,
        &config,
        args.trials,
        args.seed,
        args.failure_cap,
    )?;
    let (_, param) = split_channel(&args.channel);
    let result = SweepResult::new(vec![(param, summary)], args.failure_cap)?;
    let csv = result.to_csv();
    print!("{csv}");
    if let Some(path) = &args.out {
        fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> anyhow::Result<()> {
    let code = load_code(&args.code)?;
    let config = DecoderConfig::new(args.decoder.kind(), args.max_iter);
    let result = sweep(
        &code,
        args.family.family(),
        &args.grid.0,
        &config,
        args.trials,
        args.seed,
    )?;
    let csv = result.to_csv();
    print!("{csv}");
    if let Some(path) = &args.out {
        fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run_threshold(args: ThresholdArgs) -> anyhow::Result<()> {
    let code = load_code(&args.code)?;
    let config = DecoderConfig::new(args.decoder.kind(), args.max_iter);
    let family = args.family.family();
    let estimate = find_noise_at_target(
        &code,
        family,
        &config,
        args.target,
        args.rel_tol,
        args.budget,
        args.seed,
    )?;
    println!("code: {}", code.provenance());
    println!("family: {}", family.name());
    println!("target failure rate: {}", estimate.target_bler);
    if estimate.per_constituent {
        println!(
            "decoder runs two binary constituents; each is searched at {}",
            estimate.effective_target,
        );
    }
    println!(
        "estimate: {} = {}",
        family.param_name(),
        estimate.param
    );
    println!("bracket: [{}, {}]", estimate.ci_low, estimate.ci_high);
    println!(
        "probes: {} ({} trials of the {}-trial budget)",
        estimate.probes, estimate.trials_used, args.budget,
    );
    println!(
        "conclusive: {}",
        if estimate.conclusive {
            "yes"
        } else {
            "no (budget exhausted before the bracket converged)"
        }
    );
    Ok(())
}

fn run_curves(args: CurvesArgs) -> anyhow::Result<()> {
    let curves: Vec<RateCurve> = if args.curve == "all" {
        RateCurve::ALL.to_vec()
    } else {
        let curve = RateCurve::from_str(&args.curve).map_err(|_| {
            anyhow!(
                "unknown curve {:?}; expected one of c_bsc, r_gv, c4, c4b, cq_bsc, rq_gv, \
                 c4q, rq_gv4, or all",
                args.curve
            )
        })?;
        vec![curve]
    };
    let mut csv = String::from("curve,f_m,value\n");
    for curve in &curves {
        for point in sample_curve::<f64>(*curve, args.from, args.to, args.steps)? {
            writeln!(csv, "{},{},{}", curve.name(), point.f_m, point.value)?;
        }
    }
    print!("{csv}");
    if let Some(path) = &args.out {
        fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }
    if args.root {
        for curve in &curves {
            match curve_root::<f64>(*curve) {
                Ok(root) => println!("# root {} = {}", curve.name(), root),
                Err(_) => println!("# root {} = none in its domain", curve.name()),
            }
        }
    }
    Ok(())
}

fn run_demo(args: DemoArgs) -> anyhow::Result<()> {
    let name = args.code.name();
    let stabilizers = demo_code(name)?;
    let n = stabilizers.n();
    println!(
        "{name}: {} stabilizer rows on {} qubits",
        stabilizers.n_rows(),
        n,
    );
    println!("stabilizers:");
    for r in 0..stabilizers.n_rows() {
        let op = stabilizers.row_operator(r);
        let letters: String = (0..n).map(|j| op.letter(j)).collect();
        println!("  {letters}");
    }
    println!("syndromes (+ commutes with the row, - anticommutes):");
    let identity = PauliOperator::identity(n);
    let id_syndrome = pauli_syndrome(&stabilizers, &identity)?;
    println!("  {:<4} {}", "I", signs(&id_syndrome, stabilizers.n_rows()));
    let mut distinct = BTreeSet::new();
    let mut nonzero = 0usize;
    for letter in ['X', 'Y', 'Z'] {
        for qubit in 0..n {
            let error = PauliOperator::single(n, qubit, letter)?;
            let syndrome = pauli_syndrome(&stabilizers, &error)?;
            if !syndrome.is_zero() {
                nonzero += 1;
            }
            distinct.insert(syndrome.to_indices());
            println!(
                "  {:<4} {}",
                format!("{letter}{}", qubit + 1),
                signs(&syndrome, stabilizers.n_rows()),
            );
        }
    }
    println!(
        "{} single-qubit errors: {} distinct syndromes, {} nonzero",
        3 * n,
        distinct.len(),
        nonzero,
    );
    Ok(())
}

/// Render a syndrome as one +/- character per stabilizer row.
fn signs(syndrome: &qldpc::gf2::BitVec, rows: usize) -> String {
    (0..rows)
        .map(|r| if syndrome.get(r) { '-' } else { '+' })
        .collect()
}
