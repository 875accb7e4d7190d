//! Reproducible Monte Carlo harness: decoding trials, noise sweeps,
//! threshold search, and a plain-text CSV interchange format.
//!
//! Every trial draws its randomness from a dedicated ChaCha12 substream
//! keyed by `(base_seed, trial_index)`, so results are independent of
//! thread count and identical across reruns. Trials fan out across the
//! rayon pool in fixed-size chunks and reduce in trial-index order, which
//! keeps early stopping deterministic as well.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::channels::{self, ChannelModel};
use crate::constructions::CssCode;
use crate::decoder::{
    classify, BinarySumProduct, CssDecoder, QuaternarySumProduct, TrialClass, UnicycleDecoder,
    DEFAULT_MAX_ITER,
};
use crate::gf2::{BitVec, SparseBinMat};
use crate::{Error, Result, Scalar};

/// Name of the per-trial stream generator, recorded in emitted files so a
/// result can be tied to the exact randomness scheme that produced it.
pub const RNG_NAME: &str = "chacha12";

/// A sweep point may stop once it has seen this many failures; the
/// relative error of the estimate is then roughly 10% at two sigma.
pub const EARLY_STOP_FAILURES: usize = 100;

/// Trials dispatched per parallel batch. Batches run concurrently but are
/// consumed in trial order, so the value affects speed, never results.
const TRIAL_CHUNK: usize = 256;

/// Threshold-search probe sizing: aim for about this many failures per
/// probe when the probed point sits near the target rate.
const PROBE_TARGET_FAILURES: f64 = 24.0;
/// Per-probe trial count bounds.
const PROBE_MIN_TRIALS: usize = 200;
const PROBE_MAX_TRIALS: usize = 50_000;
/// A probe may stop once it has seen this many failures.
const PROBE_FAILURE_CAP: usize = 120;
/// Budgets too small to see even this many failures at the target rate are
/// rejected up front as uninformative.
const MIN_TARGET_FAILURES: f64 = 4.0;

/// Exact header of the results table; comment lines start with `#`.
pub const CSV_HEADER: &str =
    "code_id,channel,param,trials,exact,degenerate,detected,undetected,bler,two_sigma,seed";

/// splitmix64-style mixer deriving independent seeds from a base seed and
/// a salt (sweep point index, probe index, ...).
fn mix_seed(base: u64, salt: u64) -> u64 {
    let mut z = base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A one-parameter channel family, the thing a sweep or threshold search
/// walks along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelFamily {
    /// Independent X/Z flips; parameter is the per-component probability.
    BscPair,
    /// Uniform X/Y/Z errors; parameter is the total error probability.
    FourAry,
    /// Per-qubit Gaussian reliabilities; parameter is the noise sigma.
    Gaussian,
}

impl ChannelFamily {
    /// Instantiate the channel at one parameter value (unvalidated; call
    /// [`ChannelModel::validate`] before sampling).
    pub fn at(self, param: f64) -> ChannelModel {
        match self {
            ChannelFamily::BscPair => ChannelModel::BscPair { f_m: param },
            ChannelFamily::FourAry => ChannelModel::FourArySymmetric { f: param },
            ChannelFamily::Gaussian => ChannelModel::GaussianDiversity { sigma: param },
        }
    }

    /// Stable lowercase name used in files and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            ChannelFamily::BscPair => "bscpair",
            ChannelFamily::FourAry => "4ary",
            ChannelFamily::Gaussian => "gauss",
        }
    }

    /// Name of the single parameter, used in descriptor strings.
    pub fn param_name(self) -> &'static str {
        match self {
            ChannelFamily::BscPair => "fm",
            ChannelFamily::FourAry => "f",
            ChannelFamily::Gaussian => "sigma",
        }
    }

    /// Inverse of [`ChannelFamily::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "bscpair" => Some(ChannelFamily::BscPair),
            "4ary" => Some(ChannelFamily::FourAry),
            "gauss" => Some(ChannelFamily::Gaussian),
            _ => None,
        }
    }

    /// Parameter value known to produce an error rate of essentially zero
    /// (the lower end of a threshold-search bracket).
    fn bracket_low(self) -> f64 {
        match self {
            ChannelFamily::BscPair | ChannelFamily::FourAry => 0.0,
            ChannelFamily::Gaussian => 1e-3,
        }
    }

    /// Highest parameter value probed when bracketing a target error rate.
    fn bracket_high(self) -> f64 {
        match self {
            ChannelFamily::BscPair => 0.49,
            ChannelFamily::FourAry => 0.74,
            ChannelFamily::Gaussian => 6.0,
        }
    }
}

/// Decompose a channel into its family and parameter value.
pub fn split_channel(model: &ChannelModel) -> (ChannelFamily, f64) {
    match *model {
        ChannelModel::BscPair { f_m } => (ChannelFamily::BscPair, f_m),
        ChannelModel::FourArySymmetric { f } => (ChannelFamily::FourAry, f),
        ChannelModel::GaussianDiversity { sigma } => (ChannelFamily::Gaussian, sigma),
    }
}

/// Compact descriptor like `bscpair:fm=0.02`, parseable by
/// [`parse_channel`].
pub fn describe_channel(model: &ChannelModel) -> String {
    let (family, value) = split_channel(model);
    format!("{}:{}={}", family.name(), family.param_name(), value)
}

/// Parse a channel descriptor of the form `bscpair:fm=0.02`,
/// `4ary:f=0.03`, or `gauss:sigma=1.0`, validating the parameter range.
pub fn parse_channel(text: &str) -> Result<ChannelModel> {
    let usage = || {
        Error::InvalidArgument(format!(
            "channel `{text}` must look like bscpair:fm=0.02, 4ary:f=0.03, or gauss:sigma=1.0"
        ))
    };
    let (name, rest) = text.split_once(':').ok_or_else(usage)?;
    let family = ChannelFamily::from_name(name).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown channel family `{name}` (expected bscpair, 4ary, or gauss)"
        ))
    })?;
    let (key, value) = rest.split_once('=').ok_or_else(usage)?;
    if key != family.param_name() {
        return Err(Error::InvalidArgument(format!(
            "channel `{name}` takes parameter `{}`, got `{key}`",
            family.param_name()
        )));
    }
    let value: f64 = value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("channel parameter `{value}` is not a number")))?;
    let model = family.at(value);
    model.validate()?;
    Ok(model)
}

/// Which decoder a simulation drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    /// Two independent single-component decoders.
    Binary,
    /// One joint decoder over both components.
    Quaternary,
    /// Two-hypothesis decoder for codes with a designated all-ones column.
    Unicycle,
}

impl DecoderKind {
    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::Binary => "binary",
            DecoderKind::Quaternary => "quaternary",
            DecoderKind::Unicycle => "unicycle",
        }
    }
}

/// Decoder selection plus its iteration limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecoderConfig {
    pub kind: DecoderKind,
    pub max_iter: usize,
}

impl DecoderConfig {
    pub fn new(kind: DecoderKind, max_iter: usize) -> Self {
        DecoderConfig { kind, max_iter }
    }

    pub fn binary() -> Self {
        DecoderConfig::new(DecoderKind::Binary, DEFAULT_MAX_ITER)
    }

    pub fn quaternary() -> Self {
        DecoderConfig::new(DecoderKind::Quaternary, DEFAULT_MAX_ITER)
    }

    pub fn unicycle() -> Self {
        DecoderConfig::new(DecoderKind::Unicycle, DEFAULT_MAX_ITER)
    }

    /// Descriptor recorded in summaries and emitted files.
    pub fn descriptor(&self) -> String {
        format!("{}:iters={}", self.kind.name(), self.max_iter)
    }

    /// Instantiate the decoder for one code.
    pub fn build(&self, code: &CssCode) -> Result<CssDecoder<Scalar>> {
        Ok(match self.kind {
            DecoderKind::Binary => {
                CssDecoder::Binary(BinarySumProduct::new(code.h(), self.max_iter))
            }
            DecoderKind::Quaternary => {
                CssDecoder::Quaternary(QuaternarySumProduct::new(code.h(), self.max_iter))
            }
            DecoderKind::Unicycle => {
                let sub = code.subcode_structure().ok_or_else(|| {
                    Error::InvalidArgument(
                        "the two-hypothesis decoder needs a code with a designated all-ones column"
                            .into(),
                    )
                })?;
                CssDecoder::Unicycle(UnicycleDecoder::new(
                    &sub.subcode_matrix,
                    sub.all_ones_column,
                    self.max_iter,
                )?)
            }
        })
    }
}

/// Aggregate outcome of a batch of decoding trials at one noise level.
///
/// The four counts partition the trials. `bler` counts detected and
/// undetected errors as failures; a converged estimate that differs from
/// the truth by stabilizer words only is a degenerate success and does not
/// count against the code. `two_sigma` is the half-width
/// `2 * sqrt(bler * (1 - bler) / trials)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSummary {
    pub code_id: String,
    pub channel: ChannelModel,
    pub decoder: String,
    pub trials: usize,
    pub exact: usize,
    pub degenerate: usize,
    pub detected: usize,
    pub undetected: usize,
    pub bler: f64,
    pub two_sigma: f64,
    pub base_seed: u64,
}

impl TrialSummary {
    fn from_counts(
        code_id: String,
        channel: ChannelModel,
        decoder: String,
        base_seed: u64,
        counts: [usize; 4],
        trials: usize,
    ) -> Self {
        debug_assert_eq!(counts.iter().sum::<usize>(), trials);
        let failures = counts[2] + counts[3];
        let bler = if trials == 0 {
            0.0
        } else {
            failures as f64 / trials as f64
        };
        let two_sigma = if trials == 0 {
            0.0
        } else {
            2.0 * (bler * (1.0 - bler) / trials as f64).sqrt()
        };
        TrialSummary {
            code_id,
            channel,
            decoder,
            trials,
            exact: counts[0],
            degenerate: counts[1],
            detected: counts[2],
            undetected: counts[3],
            bler,
            two_sigma,
            base_seed,
        }
    }

    /// Trials counted against the code: detected plus undetected errors.
    pub fn failures(&self) -> usize {
        self.detected + self.undetected
    }
}

/// Compact identifier derived from a code's provenance string: the leading
/// `key=value` tokens, joined with `-`, cut before any bracketed payload.
fn code_slug(provenance: &str) -> String {
    let mut slug = String::new();
    for token in provenance.split_whitespace() {
        if token.contains('[') || token.contains('{') {
            break;
        }
        if !slug.is_empty() {
            slug.push('-');
        }
        slug.push_str(token);
        if slug.len() >= 64 {
            break;
        }
    }
    let cleaned: String = slug
        .chars()
        .map(|c| if c == ',' { ';' } else { c })
        .collect();
    if cleaned.is_empty() {
        "anonymous".to_string()
    } else {
        cleaned
    }
}

fn class_index(class: TrialClass) -> usize {
    match class {
        TrialClass::ExactSuccess => 0,
        TrialClass::DegenerateSuccess => 1,
        TrialClass::DetectedError => 2,
        TrialClass::UndetectedError => 3,
    }
}

/// Run `trial_fn` for trials `0..trials`, each on its own substream of
/// `base_seed`. Batches execute in parallel; `consume` sees results in
/// trial order and returns `false` to stop (the stopping trial is still
/// counted). Returns the number of trials consumed.
fn chunked_trials<T, F, C>(trials: usize, base_seed: u64, trial_fn: F, mut consume: C) -> Result<usize>
where
    T: Send,
    F: Fn(u64, &mut ChaCha12Rng) -> Result<T> + Sync,
    C: FnMut(T) -> bool,
{
    let mut done = 0usize;
    let mut start = 0usize;
    while start < trials {
        let end = (start + TRIAL_CHUNK).min(trials);
        let batch: Vec<T> = (start..end)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha12Rng::seed_from_u64(base_seed);
                rng.set_stream(i as u64);
                trial_fn(i as u64, &mut rng)
            })
            .collect::<Result<Vec<T>>>()?;
        for value in batch {
            done += 1;
            if !consume(value) {
                return Ok(done);
            }
        }
        start = end;
    }
    Ok(done)
}

/// Tally trial classes, optionally stopping once `failure_cap` failures
/// have been seen. Returns `([exact, degenerate, detected, undetected],
/// trials_run)`.
fn tally_classes<F>(
    trials: usize,
    base_seed: u64,
    failure_cap: Option<usize>,
    trial_fn: F,
) -> Result<([usize; 4], usize)>
where
    F: Fn(u64, &mut ChaCha12Rng) -> Result<TrialClass> + Sync,
{
    let mut counts = [0usize; 4];
    let done = chunked_trials(trials, base_seed, trial_fn, |class| {
        counts[class_index(class)] += 1;
        match failure_cap {
            Some(cap) => counts[2] + counts[3] < cap,
            None => true,
        }
    })?;
    Ok((counts, done))
}

/// One code + decoder pair wired up for repeated trials.
struct TrialEngine<'a> {
    h: &'a SparseBinMat,
    n: usize,
    code_id: String,
    decoder: CssDecoder<Scalar>,
}

impl<'a> TrialEngine<'a> {
    fn new(code: &'a CssCode, config: &DecoderConfig) -> Result<Self> {
        Ok(TrialEngine {
            h: code.h(),
            n: code.n(),
            code_id: code_slug(code.provenance()),
            decoder: config.build(code)?,
        })
    }

    /// Sample one error, decode it, and classify the outcome.
    fn joint_class(&self, channel: &ChannelModel, rng: &mut ChaCha12Rng) -> Result<TrialClass> {
        let pattern = channels::sample(channel, self.n, rng)?;
        let s_ez = self.h.syndrome(&pattern.e_z)?;
        let s_ex = self.h.syndrome(&pattern.e_x)?;
        let outcome = self.decoder.decode(&s_ez, &s_ex, &pattern.priors)?;
        classify(self.h, &pattern.e_x, &pattern.e_z, &outcome)
    }

    /// Sample one error and decode each component with its own
    /// single-component decoder, returning how many of the two failed
    /// (0..=2). Only meaningful for [`DecoderKind::Binary`].
    fn component_failures(&self, channel: &ChannelModel, rng: &mut ChaCha12Rng) -> Result<usize> {
        let CssDecoder::Binary(decoder) = &self.decoder else {
            return Err(Error::InvalidArgument(
                "per-component accounting needs the two-decoder configuration".into(),
            ));
        };
        let pattern = channels::sample(channel, self.n, rng)?;
        let priors: Vec<f64> = (0..self.n)
            .map(|q| pattern.priors.component_prior(q))
            .collect();
        let mut failures = 0usize;
        for (truth, syndrome) in [
            (&pattern.e_z, self.h.syndrome(&pattern.e_z)?),
            (&pattern.e_x, self.h.syndrome(&pattern.e_x)?),
        ] {
            let out = decoder.decode(&syndrome, &priors)?;
            if !out.converged || !self.component_matches(&out.estimate, truth)? {
                failures += 1;
            }
        }
        Ok(failures)
    }

    /// True when an estimate equals the truth up to stabilizer words.
    fn component_matches(&self, estimate: &BitVec, truth: &BitVec) -> Result<bool> {
        let mut diff = estimate.clone();
        diff.xor_assign(truth);
        Ok(diff.is_zero() || self.h.in_row_space(&diff)?)
    }
}

/// Run `trials` decoding trials at one noise level.
///
/// Trial `i` draws from the substream `(base_seed, i)`, so identical
/// inputs always produce the identical summary, independent of thread
/// count.
pub fn run_trials(
    code: &CssCode,
    channel: &ChannelModel,
    config: &DecoderConfig,
    trials: usize,
    base_seed: u64,
) -> Result<TrialSummary> {
    run_trials_capped(code, channel, config, trials, base_seed, None)
}

/// [`run_trials`] with an optional failure cap: once `failure_cap`
/// failures have been seen the run stops, and `trials` in the summary
/// records how many trials actually ran. Stopping is by trial order, so
/// capped runs stay deterministic too; rerunning with `trials` set to the
/// recorded count and no cap reproduces the summary.
pub fn run_trials_capped(
    code: &CssCode,
    channel: &ChannelModel,
    config: &DecoderConfig,
    trials: usize,
    base_seed: u64,
    failure_cap: Option<usize>,
) -> Result<TrialSummary> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    if failure_cap == Some(0) {
        return Err(Error::InvalidArgument(
            "failure cap must allow at least one failure".into(),
        ));
    }
    channel.validate()?;
    let engine = TrialEngine::new(code, config)?;
    let (counts, done) = tally_classes(trials, base_seed, failure_cap, |_, rng| {
        engine.joint_class(channel, rng)
    })?;
    Ok(TrialSummary::from_counts(
        engine.code_id.clone(),
        *channel,
        config.descriptor(),
        base_seed,
        counts,
        done,
    ))
}

/// An ordered scan of noise levels with one [`TrialSummary`] per level.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// `(noise parameter, summary)` pairs, parameters strictly increasing.
    pub points: Vec<(f64, TrialSummary)>,
    /// Failure cap that was in force at each point, if any.
    pub early_stop_cap: Option<usize>,
}

impl SweepResult {
    /// Validates ordering, channel/parameter consistency, and that all
    /// points used the same decoder.
    pub fn new(points: Vec<(f64, TrialSummary)>, early_stop_cap: Option<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument(
                "a sweep needs at least one noise level".into(),
            ));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument(
                "noise levels must be strictly increasing".into(),
            ));
        }
        for (param, summary) in &points {
            let (_, value) = split_channel(&summary.channel);
            if value != *param {
                return Err(Error::InvalidArgument(format!(
                    "point at {param} carries a channel at {value}"
                )));
            }
        }
        let first = &points[0].1.decoder;
        if points.iter().any(|(_, s)| &s.decoder != first) {
            return Err(Error::InvalidArgument(
                "all points of one sweep must share a decoder".into(),
            ));
        }
        Ok(SweepResult {
            points,
            early_stop_cap,
        })
    }

    /// Render as CSV: metadata comments, the header, one row per point.
    /// Output is fully determined by the data — no timestamps.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# rng: {RNG_NAME}");
        let _ = writeln!(out, "# decoder: {}", self.points[0].1.decoder);
        if let Some(cap) = self.early_stop_cap {
            let _ = writeln!(out, "# early-stop-cap: {cap}");
        }
        out.push_str(CSV_HEADER);
        out.push('\n');
        for (param, s) in &self.points {
            let (family, _) = split_channel(&s.channel);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                s.code_id,
                family.name(),
                param,
                s.trials,
                s.exact,
                s.degenerate,
                s.detected,
                s.undetected,
                s.bler,
                s.two_sigma,
                s.base_seed
            );
        }
        out
    }

    /// Parse the format emitted by [`SweepResult::to_csv`]. `origin` names
    /// the source in errors (a path, or a label for in-memory text).
    pub fn from_csv(text: &str, origin: &str) -> Result<Self> {
        let mut decoder: Option<String> = None;
        let mut cap: Option<usize> = None;
        let mut header_seen = false;
        let mut rows: Vec<(f64, TrialSummary)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("decoder:") {
                    decoder = Some(v.trim().to_string());
                } else if let Some(v) = comment.strip_prefix("early-stop-cap:") {
                    cap = Some(parse_field(origin, line_no, "early-stop cap", v.trim())?);
                } else if let Some(v) = comment.strip_prefix("rng:") {
                    if v.trim() != RNG_NAME {
                        return Err(parse_err(
                            origin,
                            line_no,
                            format!("unsupported rng `{}` (expected {RNG_NAME})", v.trim()),
                        ));
                    }
                }
                continue;
            }
            if !header_seen {
                if line != CSV_HEADER {
                    return Err(parse_err(origin, line_no, "unexpected header"));
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 11 {
                return Err(parse_err(
                    origin,
                    line_no,
                    format!("expected 11 fields, got {}", fields.len()),
                ));
            }
            let family = ChannelFamily::from_name(fields[1]).ok_or_else(|| {
                parse_err(origin, line_no, format!("unknown channel family `{}`", fields[1]))
            })?;
            let param: f64 = parse_field(origin, line_no, "noise parameter", fields[2])?;
            let trials: usize = parse_field(origin, line_no, "trial count", fields[3])?;
            let exact: usize = parse_field(origin, line_no, "exact count", fields[4])?;
            let degenerate: usize = parse_field(origin, line_no, "degenerate count", fields[5])?;
            let detected: usize = parse_field(origin, line_no, "detected count", fields[6])?;
            let undetected: usize = parse_field(origin, line_no, "undetected count", fields[7])?;
            let bler: f64 = parse_field(origin, line_no, "error rate", fields[8])?;
            let two_sigma: f64 = parse_field(origin, line_no, "interval width", fields[9])?;
            let base_seed: u64 = parse_field(origin, line_no, "seed", fields[10])?;
            if exact + degenerate + detected + undetected != trials {
                return Err(parse_err(origin, line_no, "counts do not sum to trials"));
            }
            let channel = family.at(param);
            channel
                .validate()
                .map_err(|e| parse_err(origin, line_no, e.to_string()))?;
            rows.push((
                param,
                TrialSummary {
                    code_id: fields[0].to_string(),
                    channel,
                    decoder: String::new(),
                    trials,
                    exact,
                    degenerate,
                    detected,
                    undetected,
                    bler,
                    two_sigma,
                    base_seed,
                },
            ));
        }
        if !header_seen {
            return Err(parse_err(origin, 1, "missing header"));
        }
        let descriptor = decoder.unwrap_or_default();
        for (_, summary) in &mut rows {
            summary.decoder = descriptor.clone();
        }
        SweepResult::new(rows, cap)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        SweepResult::from_csv(&text, &path.display().to_string())
    }
}

fn parse_err(origin: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: origin.to_string(),
        line,
        msg: msg.into(),
    }
}

fn parse_field<T: FromStr>(origin: &str, line: usize, name: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| parse_err(origin, line, format!("invalid {name} `{raw}`")))
}

/// Scan a strictly increasing noise grid, running up to
/// `trials_per_point` trials at each level with the standard failure cap
/// ([`EARLY_STOP_FAILURES`]). Point `i` uses a seed derived from
/// `(base_seed, i)`, recorded in its summary.
pub fn sweep(
    code: &CssCode,
    family: ChannelFamily,
    grid: &[f64],
    config: &DecoderConfig,
    trials_per_point: usize,
    base_seed: u64,
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("noise grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "noise grid must be strictly increasing".into(),
        ));
    }
    let mut points = Vec::with_capacity(grid.len());
    for (i, &param) in grid.iter().enumerate() {
        let channel = family.at(param);
        let summary = run_trials_capped(
            code,
            &channel,
            config,
            trials_per_point,
            mix_seed(base_seed, i as u64),
            Some(EARLY_STOP_FAILURES),
        )?;
        points.push((param, summary));
    }
    SweepResult::new(points, Some(EARLY_STOP_FAILURES))
}

/// Result of a stochastic bisection for the noise level at which a code's
/// failure rate crosses a target.
///
/// With the two-decoder configuration the measured statistic is the
/// per-component failure rate and the crossing is sought at half the
/// requested target, so that the pair as a whole fails at roughly the
/// requested rate; `effective_target` and `per_constituent` record this.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseTargetEstimate {
    pub family: ChannelFamily,
    pub target_bler: f64,
    pub effective_target: f64,
    pub per_constituent: bool,
    /// Midpoint of the final bracket.
    pub param: f64,
    /// Final bracket: the crossing lies inside `[ci_low, ci_high]`.
    pub ci_low: f64,
    pub ci_high: f64,
    /// False when the budget ran out (or the target was unreachable)
    /// before the bracket shrank to the requested relative width.
    pub conclusive: bool,
    pub trials_used: usize,
    pub probes: usize,
}

/// Estimate the noise parameter at which the failure rate equals
/// `target_bler`, by bisection on Monte Carlo probes.
///
/// Stops when the bracket is narrower than `rel_tol` times its midpoint,
/// or when `trial_budget` total trials have been spent — whichever comes
/// first; the latter leaves `conclusive` false. Budgets too small to
/// observe failures at the target rate return immediately, flagged
/// inconclusive with zero trials used.
pub fn find_noise_at_target(
    code: &CssCode,
    family: ChannelFamily,
    config: &DecoderConfig,
    target_bler: f64,
    rel_tol: f64,
    trial_budget: usize,
    base_seed: u64,
) -> Result<NoiseTargetEstimate> {
    if !(target_bler > 0.0 && target_bler < 1.0) {
        return Err(Error::InvalidArgument(
            "target failure rate must lie strictly between 0 and 1".into(),
        ));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidArgument(
            "relative tolerance must be positive".into(),
        ));
    }
    if trial_budget == 0 {
        return Err(Error::InvalidArgument("need a positive trial budget".into()));
    }
    let per_constituent = config.kind == DecoderKind::Binary;
    let effective_target = if per_constituent {
        target_bler / 2.0
    } else {
        target_bler
    };
    let engine = TrialEngine::new(code, config)?;
    let lo0 = family.bracket_low();
    let hi0 = family.bracket_high();
    let mut est = NoiseTargetEstimate {
        family,
        target_bler,
        effective_target,
        per_constituent,
        param: hi0,
        ci_low: lo0,
        ci_high: hi0,
        conclusive: false,
        trials_used: 0,
        probes: 0,
    };
    let min_informative = (MIN_TARGET_FAILURES / effective_target).ceil() as usize;
    if trial_budget < min_informative {
        return Ok(est);
    }
    let probe_trials = ((PROBE_TARGET_FAILURES / effective_target).ceil() as usize)
        .clamp(PROBE_MIN_TRIALS, PROBE_MAX_TRIALS);

    // The bracket's upper end must already fail above the target.
    let (p_high, used) = probe(
        &engine,
        &family.at(hi0),
        per_constituent,
        probe_trials.min(trial_budget),
        mix_seed(base_seed, 0),
    )?;
    est.trials_used += used;
    est.probes += 1;
    if p_high < effective_target {
        return Ok(est);
    }

    let (mut lo, mut hi) = (lo0, hi0);
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= rel_tol * mid {
            est.conclusive = true;
            break;
        }
        if est.trials_used >= trial_budget {
            break;
        }
        let left = trial_budget - est.trials_used;
        let (p, used) = probe(
            &engine,
            &family.at(mid),
            per_constituent,
            probe_trials.min(left),
            mix_seed(base_seed, est.probes as u64),
        )?;
        est.trials_used += used;
        est.probes += 1;
        if p < effective_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    est.param = 0.5 * (lo + hi);
    est.ci_low = lo;
    est.ci_high = hi;
    Ok(est)
}

/// One bisection probe: estimated failure rate and trials spent. Stops
/// early after [`PROBE_FAILURE_CAP`] failures.
fn probe(
    engine: &TrialEngine,
    channel: &ChannelModel,
    per_constituent: bool,
    trials: usize,
    seed: u64,
) -> Result<(f64, usize)> {
    debug_assert!(trials >= 1);
    channel.validate()?;
    if per_constituent {
        let mut failures = 0usize;
        let done = chunked_trials(
            trials,
            seed,
            |_, rng| engine.component_failures(channel, rng),
            |k| {
                failures += k;
                failures < PROBE_FAILURE_CAP
            },
        )?;
        Ok((failures as f64 / (2.0 * done as f64), done))
    } else {
        let (counts, done) = tally_classes(trials, seed, Some(PROBE_FAILURE_CAP), |_, rng| {
            engine.joint_class(channel, rng)
        })?;
        Ok(((counts[2] + counts[3]) as f64 / done as f64, done))
    }
}
