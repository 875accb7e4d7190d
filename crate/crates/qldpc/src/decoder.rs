//! Sum-product syndrome decoders.
//!
//! Three variants share one Tanner-graph core:
//! - [`BinarySumProduct`]: one error component at a time, log-likelihood
//!   ratio messages, tanh-rule check updates.
//! - [`QuaternarySumProduct`]: both components jointly; each qubit is a
//!   four-state variable carrying a joint prior P(e_x, e_z), each check
//!   still constrains a single component. With product-form priors this
//!   reduces exactly to two independent binary decodes.
//! - [`UnicycleDecoder`]: for codes whose last column is shared by every
//!   check; decodes the cyclic remainder under both hypotheses for that
//!   bit and keeps the likelier converged estimate.
//!
//! All decoders stop at the first iteration whose hard decision
//! reproduces the observed syndrome, and verify that property rather than
//! assume it. Message magnitudes are clipped at [`LLR_CLIP`]; priors are
//! floored away from 0 and 1 before taking logarithms.

use num_traits::Float;

use crate::channels::{JointTable, Priors};
use crate::gf2::{BitVec, SparseBinMat};
use crate::{Error, Result};

/// Hard clip applied to every message magnitude.
pub const LLR_CLIP: f64 = 30.0;

/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 100;

/// Floor keeping priors strictly inside (0, 1).
const PROB_FLOOR: f64 = 1e-30;

/// Sparse bipartite check/variable graph in edge-list form with CSR
/// indexes from both sides.
#[derive(Debug, Clone)]
pub struct TannerGraph {
    n_vars: usize,
    check_off: Vec<usize>,
    edge_var: Vec<usize>,
    var_off: Vec<usize>,
    var_edge: Vec<usize>,
}

impl TannerGraph {
    pub fn new(h: &SparseBinMat) -> Self {
        let n_vars = h.n_cols();
        let n_checks = h.n_rows();
        let mut check_off = Vec::with_capacity(n_checks + 1);
        let mut edge_var = Vec::new();
        check_off.push(0);
        for row in h.rows() {
            edge_var.extend_from_slice(row);
            check_off.push(edge_var.len());
        }
        let mut var_counts = vec![0usize; n_vars];
        for &v in &edge_var {
            var_counts[v] += 1;
        }
        let mut var_off = Vec::with_capacity(n_vars + 1);
        var_off.push(0);
        for c in &var_counts {
            var_off.push(var_off.last().unwrap() + c);
        }
        let mut cursor = var_off.clone();
        let mut var_edge = vec![0usize; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edge[cursor[v]] = e;
            cursor[v] += 1;
        }
        TannerGraph {
            n_vars,
            check_off,
            edge_var,
            var_off,
            var_edge,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_checks(&self) -> usize {
        self.check_off.len() - 1
    }

    pub fn n_edges(&self) -> usize {
        self.edge_var.len()
    }
}

/// Result of decoding one error component.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentOutcome {
    pub converged: bool,
    /// Final hard decision (syndrome-consistent iff `converged`).
    pub estimate: BitVec,
    /// Message-passing rounds used; 0 means priors alone settled it.
    pub iterations_used: usize,
}

/// Joint result of decoding both components of a CSS error.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    pub converged: bool,
    /// Present only when every decoded component satisfied its syndrome.
    pub estimate: Option<CssEstimate>,
    pub iterations_used: usize,
    /// Unicycle only: word log-likelihood of each special-bit hypothesis
    /// (index = bit value), per component [z-component, x-component].
    /// Failed hypotheses carry -inf.
    pub hypothesis_log_likelihoods: Option<[[f64; 2]; 2]>,
    /// Unicycle only: both hypotheses converged with equal likelihood and
    /// the special bit was forced to 0.
    pub tie_broken: bool,
}

/// Both components of an estimated error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssEstimate {
    pub e_x: BitVec,
    pub e_z: BitVec,
}

fn clip<F: Float>(v: F) -> F {
    let c = F::from(LLR_CLIP).unwrap();
    if v > c {
        c
    } else if v < -c {
        -c
    } else {
        v
    }
}

/// Prior log-likelihood ratio ln((1-f)/f) from a flip probability.
fn prior_llr<F: Float>(f: f64) -> F {
    let f = f.clamp(PROB_FLOOR, 1.0 - PROB_FLOOR);
    F::from(((1.0 - f) / f).ln()).unwrap()
}

/// Per-qubit flip probabilities of the X component under the given priors.
pub fn x_component_priors(priors: &Priors, n: usize) -> Result<Vec<f64>> {
    component_priors(priors, n, true)
}

/// Per-qubit flip probabilities of the Z component under the given priors.
pub fn z_component_priors(priors: &Priors, n: usize) -> Result<Vec<f64>> {
    component_priors(priors, n, false)
}

fn component_priors(priors: &Priors, n: usize, x_side: bool) -> Result<Vec<f64>> {
    match priors {
        Priors::Marginal { f } => Ok(vec![*f; n]),
        Priors::Joint(t) => Ok(vec![
            if x_side {
                t.marginal_x()
            } else {
                t.marginal_z()
            };
            n
        ]),
        Priors::Diversity { f } => {
            if f.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: f.len(),
                });
            }
            Ok(f.clone())
        }
    }
}

/// Per-qubit joint tables under the given priors (product form for the
/// component-independent kinds).
fn joint_tables(priors: &Priors, n: usize) -> Result<Vec<JointTable>> {
    let product = |f: f64| JointTable {
        p00: (1.0 - f) * (1.0 - f),
        p10: f * (1.0 - f),
        p01: (1.0 - f) * f,
        p11: f * f,
    };
    match priors {
        Priors::Marginal { f } => Ok(vec![product(*f); n]),
        Priors::Joint(t) => Ok(vec![*t; n]),
        Priors::Diversity { f } => {
            if f.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: f.len(),
                });
            }
            Ok(f.iter().map(|&fj| product(fj)).collect())
        }
    }
}

/// Check-node tanh-rule pass: for every check, combine incoming messages
/// into outgoing ones via prefix/suffix products (no division), flipping
/// sign where the syndrome bit is set.
fn check_pass<F: Float>(
    graph: &TannerGraph,
    syndrome: &BitVec,
    v_msgs: &[F],
    c_msgs: &mut [F],
    tanh_buf: &mut Vec<F>,
    suffix_buf: &mut Vec<F>,
) {
    let one = F::one();
    let two = one + one;
    let tmax = one - F::from(1e-12).unwrap();
    for m in 0..graph.n_checks() {
        let lo = graph.check_off[m];
        let hi = graph.check_off[m + 1];
        let deg = hi - lo;
        tanh_buf.clear();
        tanh_buf.extend((lo..hi).map(|e| (v_msgs[e] / two).tanh()));
        // suffix products
        suffix_buf.clear();
        suffix_buf.resize(deg + 1, one);
        for i in (0..deg).rev() {
            suffix_buf[i] = suffix_buf[i + 1] * tanh_buf[i];
        }
        let sign = if syndrome.get(m) { -one } else { one };
        let mut prefix = one;
        for i in 0..deg {
            let t = prefix * suffix_buf[i + 1];
            let msg = if t >= tmax {
                F::from(LLR_CLIP).unwrap()
            } else if t <= -tmax {
                -F::from(LLR_CLIP).unwrap()
            } else {
                clip(((one + t) / (one - t)).ln())
            };
            c_msgs[lo + i] = sign * msg;
            prefix = prefix * tanh_buf[i];
        }
    }
}

/// Flooding-schedule sum-product for one binary error component in
/// syndrome form: variables are error bits, check `m` enforces parity
/// `syndrome[m]` over its row.
#[derive(Debug, Clone)]
pub struct BinarySumProduct<F> {
    graph: TannerGraph,
    max_iter: usize,
    _marker: std::marker::PhantomData<F>,
}

impl<F: Float> BinarySumProduct<F> {
    pub fn new(h: &SparseBinMat, max_iter: usize) -> Self {
        BinarySumProduct {
            graph: TannerGraph::new(h),
            max_iter,
            _marker: std::marker::PhantomData,
        }
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    /// Decode a syndrome under per-bit flip probabilities.
    pub fn decode(&self, syndrome: &BitVec, priors: &[f64]) -> Result<ComponentOutcome> {
        let g = &self.graph;
        if syndrome.len() != g.n_checks() {
            return Err(Error::DimensionMismatch {
                expected: g.n_checks(),
                got: syndrome.len(),
            });
        }
        if priors.len() != g.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: g.n_vars(),
                got: priors.len(),
            });
        }
        let lambda: Vec<F> = priors.iter().map(|&f| prior_llr(f)).collect();

        // iteration 0: priors alone
        let mut estimate = BitVec::zeros(g.n_vars());
        for (j, l) in lambda.iter().enumerate() {
            if *l < F::zero() {
                estimate.set(j, true);
            }
        }
        if satisfies(g, &estimate, syndrome) {
            return Ok(ComponentOutcome {
                converged: true,
                estimate,
                iterations_used: 0,
            });
        }

        let e = g.n_edges();
        let mut v_msgs: Vec<F> = vec![F::zero(); e];
        let mut c_msgs: Vec<F> = vec![F::zero(); e];
        let mut tanh_buf = Vec::new();
        let mut suffix_buf = Vec::new();
        // first variable pass has no check messages yet
        for (idx, &var) in g.edge_var.iter().enumerate() {
            v_msgs[idx] = lambda[var];
        }
        for it in 1..=self.max_iter {
            check_pass(g, syndrome, &v_msgs, &mut c_msgs, &mut tanh_buf, &mut suffix_buf);
            // variable pass: totals, then per-edge exclusion
            for j in 0..g.n_vars() {
                let mut total = lambda[j];
                for &edge in &g.var_edge[g.var_off[j]..g.var_off[j + 1]] {
                    total = total + c_msgs[edge];
                }
                estimate.set(j, total < F::zero());
                for &edge in &g.var_edge[g.var_off[j]..g.var_off[j + 1]] {
                    v_msgs[edge] = clip(total - c_msgs[edge]);
                }
            }
            if satisfies(g, &estimate, syndrome) {
                return Ok(ComponentOutcome {
                    converged: true,
                    estimate,
                    iterations_used: it,
                });
            }
        }
        Ok(ComponentOutcome {
            converged: false,
            estimate,
            iterations_used: self.max_iter,
        })
    }

    /// Decode both components independently with component-appropriate
    /// marginal priors.
    pub fn decode_css(
        &self,
        syndrome_for_ez: &BitVec,
        syndrome_for_ex: &BitVec,
        priors: &Priors,
    ) -> Result<DecodeOutcome> {
        let n = self.graph.n_vars();
        let ez = self.decode(syndrome_for_ez, &z_component_priors(priors, n)?)?;
        let ex = self.decode(syndrome_for_ex, &x_component_priors(priors, n)?)?;
        let converged = ez.converged && ex.converged;
        Ok(DecodeOutcome {
            converged,
            estimate: converged.then(|| CssEstimate {
                e_x: ex.estimate,
                e_z: ez.estimate,
            }),
            iterations_used: ez.iterations_used.max(ex.iterations_used),
            hypothesis_log_likelihoods: None,
            tie_broken: false,
        })
    }
}

fn satisfies(g: &TannerGraph, estimate: &BitVec, syndrome: &BitVec) -> bool {
    for m in 0..g.n_checks() {
        let mut parity = false;
        for e in g.check_off[m]..g.check_off[m + 1] {
            if estimate.get(g.edge_var[e]) {
                parity = !parity;
            }
        }
        if parity != syndrome.get(m) {
            return false;
        }
    }
    true
}

/// Stable log(exp(a) + exp(b)).
fn lse<F: Float>(a: F, b: F) -> F {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo.is_infinite() && lo < F::zero() {
        return hi;
    }
    hi + (F::one() + (lo - hi).exp()).ln()
}

/// Joint-prior sum-product: each qubit is one four-state variable over
/// (e_x, e_z); each check row acts on a single component. Messages on the
/// check side are ordinary binary LLRs; the coupling happens at the
/// variable, where the excluded-message LLR is read out of the joint
/// belief by marginalizing over the other component.
///
/// Component-independent priors carry no correlation, so those decodes
/// are delegated to the binary decoder — the factorization contract made
/// literal. In the four-state path each component latches its first
/// syndrome-satisfying hard decision (matching the binary decoder's
/// independent stopping) while messages keep flowing for the other.
#[derive(Debug, Clone)]
pub struct QuaternarySumProduct<F> {
    graph: TannerGraph,
    binary: BinarySumProduct<F>,
    max_iter: usize,
}

impl<F: Float> QuaternarySumProduct<F> {
    pub fn new(h: &SparseBinMat, max_iter: usize) -> Self {
        QuaternarySumProduct {
            graph: TannerGraph::new(h),
            binary: BinarySumProduct::new(h, max_iter),
            max_iter,
        }
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    /// Decode both syndromes jointly under per-qubit joint priors.
    pub fn decode_css(
        &self,
        syndrome_for_ez: &BitVec,
        syndrome_for_ex: &BitVec,
        priors: &Priors,
    ) -> Result<DecodeOutcome> {
        if !matches!(priors, Priors::Joint(_)) {
            return self.binary.decode_css(syndrome_for_ez, syndrome_for_ex, priors);
        }
        let g = &self.graph;
        let n = g.n_vars();
        if syndrome_for_ez.len() != g.n_checks() || syndrome_for_ex.len() != g.n_checks() {
            return Err(Error::DimensionMismatch {
                expected: g.n_checks(),
                got: syndrome_for_ez.len().max(syndrome_for_ex.len()),
            });
        }
        let tables = joint_tables(priors, n)?;
        // log priors per state, floored
        let lp = |p: f64| F::from(p.max(PROB_FLOOR).ln()).unwrap();
        let l00: Vec<F> = tables.iter().map(|t| lp(t.p00)).collect();
        let l10: Vec<F> = tables.iter().map(|t| lp(t.p10)).collect();
        let l01: Vec<F> = tables.iter().map(|t| lp(t.p01)).collect();
        let l11: Vec<F> = tables.iter().map(|t| lp(t.p11)).collect();

        let mut e_x = BitVec::zeros(n);
        let mut e_z = BitVec::zeros(n);
        let zero = F::zero();
        let decide = |tx: &[F], tz: &[F], e_x: &mut BitVec, e_z: &mut BitVec| {
            for j in 0..n {
                // scores of (e_x, e_z) states; ties prefer fewer flips,
                // x before z
                let s00 = l00[j];
                let s01 = l01[j] - tz[j];
                let s10 = l10[j] - tx[j];
                let s11 = l11[j] - tx[j] - tz[j];
                let mut best = (false, false);
                let mut score = s00;
                for (state, s) in [((true, false), s10), ((false, true), s01), ((true, true), s11)]
                {
                    if s > score {
                        best = state;
                        score = s;
                    }
                }
                e_x.set(j, best.0);
                e_z.set(j, best.1);
            }
        };

        // each component latches its first satisfying hard decision
        let mut latched_x: Option<BitVec> = None;
        let mut latched_z: Option<BitVec> = None;
        let latch = |e_x: &BitVec,
                         e_z: &BitVec,
                         latched_x: &mut Option<BitVec>,
                         latched_z: &mut Option<BitVec>| {
            if latched_x.is_none() && satisfies(g, e_x, syndrome_for_ex) {
                *latched_x = Some(e_x.clone());
            }
            if latched_z.is_none() && satisfies(g, e_z, syndrome_for_ez) {
                *latched_z = Some(e_z.clone());
            }
            latched_x.is_some() && latched_z.is_some()
        };

        // iteration 0: joint priors alone
        let t0 = vec![zero; n];
        decide(&t0, &t0, &mut e_x, &mut e_z);
        if latch(&e_x, &e_z, &mut latched_x, &mut latched_z) {
            return Ok(DecodeOutcome {
                converged: true,
                estimate: Some(CssEstimate {
                    e_x: latched_x.unwrap(),
                    e_z: latched_z.unwrap(),
                }),
                iterations_used: 0,
                hypothesis_log_likelihoods: None,
                tie_broken: false,
            });
        }

        let ecount = g.n_edges();
        let mut vx: Vec<F> = vec![zero; ecount];
        let mut vz: Vec<F> = vec![zero; ecount];
        let mut cx: Vec<F> = vec![zero; ecount];
        let mut cz: Vec<F> = vec![zero; ecount];
        let mut tanh_buf = Vec::new();
        let mut suffix_buf = Vec::new();
        // first pass: prior-only LLRs (marginal of the joint table)
        for (idx, &j) in g.edge_var.iter().enumerate() {
            vx[idx] = clip(lse(l00[j], l01[j]) - lse(l10[j], l11[j]));
            vz[idx] = clip(lse(l00[j], l10[j]) - lse(l01[j], l11[j]));
        }
        let mut tx = vec![zero; n];
        let mut tz = vec![zero; n];
        for it in 1..=self.max_iter {
            check_pass(g, syndrome_for_ex, &vx, &mut cx, &mut tanh_buf, &mut suffix_buf);
            check_pass(g, syndrome_for_ez, &vz, &mut cz, &mut tanh_buf, &mut suffix_buf);
            for j in 0..n {
                let edges = &g.var_edge[g.var_off[j]..g.var_off[j + 1]];
                let mut sx = zero;
                let mut sz = zero;
                for &e in edges {
                    sx = sx + cx[e];
                    sz = sz + cz[e];
                }
                tx[j] = sx;
                tz[j] = sz;
                // marginal beliefs with the other component summed out
                let bx = lse(l00[j], l01[j] - sz) - lse(l10[j], l11[j] - sz);
                let bz = lse(l00[j], l10[j] - sx) - lse(l01[j], l11[j] - sx);
                for &e in edges {
                    vx[e] = clip(bx + sx - cx[e]);
                    vz[e] = clip(bz + sz - cz[e]);
                }
            }
            decide(&tx, &tz, &mut e_x, &mut e_z);
            if latch(&e_x, &e_z, &mut latched_x, &mut latched_z) {
                return Ok(DecodeOutcome {
                    converged: true,
                    estimate: Some(CssEstimate {
                        e_x: latched_x.unwrap(),
                        e_z: latched_z.unwrap(),
                    }),
                    iterations_used: it,
                    hypothesis_log_likelihoods: None,
                    tie_broken: false,
                });
            }
        }
        Ok(DecodeOutcome {
            converged: false,
            estimate: None,
            iterations_used: self.max_iter,
            hypothesis_log_likelihoods: None,
            tie_broken: false,
        })
    }
}

/// Two-hypothesis decoder for codes where one special column appears in
/// every check row. For each value b of that bit the remaining graph is
/// the cyclic subcode, decoded against the syndrome with b folded in;
/// the likelier converged word wins, ties preferring b = 0.
#[derive(Debug, Clone)]
pub struct UnicycleDecoder<F> {
    sub: BinarySumProduct<F>,
    special_col: usize,
    n: usize,
}

impl<F: Float> UnicycleDecoder<F> {
    /// `subcode`: the cyclic matrix without the special column;
    /// `special_col`: index of that column in the full code (must equal
    /// the subcode width, i.e. the column is last).
    pub fn new(subcode: &SparseBinMat, special_col: usize, max_iter: usize) -> Result<Self> {
        if special_col != subcode.n_cols() {
            return Err(Error::InvalidArgument(format!(
                "special column {special_col} must follow the {} subcode columns",
                subcode.n_cols()
            )));
        }
        Ok(UnicycleDecoder {
            sub: BinarySumProduct::new(subcode, max_iter),
            special_col,
            n: subcode.n_cols() + 1,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Decode one component; returns (outcome, [ll_b0, ll_b1], tie).
    fn decode_component(
        &self,
        syndrome: &BitVec,
        priors: &[f64],
    ) -> Result<(ComponentOutcome, [f64; 2], bool)> {
        if priors.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: priors.len(),
            });
        }
        let sub_priors = &priors[..self.special_col];
        let f_special = priors[self.special_col].clamp(PROB_FLOOR, 1.0 - PROB_FLOOR);
        let mut lls = [f64::NEG_INFINITY; 2];
        let mut outcomes: [Option<ComponentOutcome>; 2] = [None, None];
        for b in 0..2usize {
            let adjusted = if b == 0 {
                syndrome.clone()
            } else {
                let mut s = syndrome.clone();
                for m in 0..s.len() {
                    s.toggle(m);
                }
                s
            };
            let out = self.sub.decode(&adjusted, sub_priors)?;
            if out.converged {
                let mut ll = if b == 1 {
                    f_special.ln()
                } else {
                    (1.0 - f_special).ln()
                };
                for (j, &f) in sub_priors.iter().enumerate() {
                    let f = f.clamp(PROB_FLOOR, 1.0 - PROB_FLOOR);
                    ll += if out.estimate.get(j) {
                        f.ln()
                    } else {
                        (1.0 - f).ln()
                    };
                }
                lls[b] = ll;
                outcomes[b] = Some(out);
            }
        }
        let tie = outcomes[0].is_some() && outcomes[1].is_some() && lls[0] == lls[1];
        let pick = match (&outcomes[0], &outcomes[1]) {
            (Some(_), Some(_)) => {
                if lls[1] > lls[0] {
                    1
                } else {
                    0
                }
            }
            (Some(_), None) => 0,
            (None, Some(_)) => 1,
            (None, None) => {
                return Ok((
                    ComponentOutcome {
                        converged: false,
                        estimate: BitVec::zeros(self.n),
                        iterations_used: self.sub.max_iter(),
                    },
                    lls,
                    false,
                ));
            }
        };
        let sub_out = outcomes[pick].clone().unwrap();
        let mut estimate = BitVec::zeros(self.n);
        for j in sub_out.estimate.iter_ones() {
            estimate.set(j, true);
        }
        if pick == 1 {
            estimate.set(self.special_col, true);
        }
        Ok((
            ComponentOutcome {
                converged: true,
                estimate,
                iterations_used: sub_out.iterations_used,
            },
            lls,
            tie,
        ))
    }

    pub fn decode_css(
        &self,
        syndrome_for_ez: &BitVec,
        syndrome_for_ex: &BitVec,
        priors: &Priors,
    ) -> Result<DecodeOutcome> {
        let (ez, ll_z, tie_z) =
            self.decode_component(syndrome_for_ez, &z_component_priors(priors, self.n)?)?;
        let (ex, ll_x, tie_x) =
            self.decode_component(syndrome_for_ex, &x_component_priors(priors, self.n)?)?;
        let converged = ez.converged && ex.converged;
        Ok(DecodeOutcome {
            converged,
            estimate: converged.then(|| CssEstimate {
                e_x: ex.estimate,
                e_z: ez.estimate,
            }),
            iterations_used: ez.iterations_used.max(ex.iterations_used),
            hypothesis_log_likelihoods: Some([ll_z, ll_x]),
            tie_broken: tie_z || tie_x,
        })
    }
}

/// Any of the three decoders behind one decode call.
#[derive(Debug, Clone)]
pub enum CssDecoder<F> {
    Binary(BinarySumProduct<F>),
    Quaternary(QuaternarySumProduct<F>),
    Unicycle(UnicycleDecoder<F>),
}

impl<F: Float> CssDecoder<F> {
    pub fn decode(
        &self,
        syndrome_for_ez: &BitVec,
        syndrome_for_ex: &BitVec,
        priors: &Priors,
    ) -> Result<DecodeOutcome> {
        match self {
            CssDecoder::Binary(d) => d.decode_css(syndrome_for_ez, syndrome_for_ex, priors),
            CssDecoder::Quaternary(d) => d.decode_css(syndrome_for_ez, syndrome_for_ex, priors),
            CssDecoder::Unicycle(d) => d.decode_css(syndrome_for_ez, syndrome_for_ex, priors),
        }
    }
}

/// How one decoding trial ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrialClass {
    ExactSuccess,
    DegenerateSuccess,
    DetectedError,
    UndetectedError,
}

/// Compare an outcome against the true error. A failed decode is a
/// detected error. A converged estimate matching the truth exactly is an
/// exact success; differing from it by dual words (row-space elements of
/// H) in both components is a degenerate success — the residual acts
/// trivially; anything else silently corrupts the state.
pub fn classify(
    h: &SparseBinMat,
    truth_x: &BitVec,
    truth_z: &BitVec,
    outcome: &DecodeOutcome,
) -> Result<TrialClass> {
    let Some(est) = &outcome.estimate else {
        return Ok(TrialClass::DetectedError);
    };
    let mut dx = est.e_x.clone();
    dx.xor_assign(truth_x);
    let mut dz = est.e_z.clone();
    dz.xor_assign(truth_z);
    if dx.is_zero() && dz.is_zero() {
        return Ok(TrialClass::ExactSuccess);
    }
    if h.in_row_space(&dx)? && h.in_row_space(&dz)? {
        return Ok(TrialClass::DegenerateSuccess);
    }
    Ok(TrialClass::UndetectedError)
}
