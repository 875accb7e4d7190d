//! Builders for self-orthogonal sparse parity-check matrices and the audit
//! that hunts for their low-weight codewords.
//!
//! Every construction here returns a [`CssCode`]: a sparse binary matrix `H`
//! with `H * H^T == 0`, together with the metadata needed downstream (rank,
//! cyclic block layout, rows removed during construction, any always-on
//! column). Orthogonality and rank are recomputed from scratch on assembly,
//! so a bug in a builder surfaces as an error instead of a corrupt code.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::decoder::BinarySumProduct;
use crate::designsets::{
    quasi_symmetric_design_14_7, singer_perfect_set, verify_matched_collection, DifferenceSet,
    SetKind,
};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, SparseBinMat};

/// One circulant block of a parity-check matrix: `modulus` consecutive
/// columns in which row `r` has ones at `(s + r) mod modulus` for each `s`
/// in `support`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicBlock {
    pub modulus: usize,
    pub support: Vec<usize>,
}

/// Extra structure carried by codes built around a single circulant plus an
/// always-on column: the column index and the circulant itself, which is a
/// valid parity-check matrix in its own right and is what the two-hypothesis
/// decoder runs on.
#[derive(Clone, Debug)]
pub struct UnicycleStructure {
    pub all_ones_column: usize,
    pub subcode_matrix: SparseBinMat,
}

/// A dual-containing parity-check matrix with construction metadata.
///
/// `h` satisfies `h * h^T == 0` over GF(2); both stabilizer halves of the
/// quantum code use the same matrix. `rank_h` is precomputed because every
/// rate formula needs it.
#[derive(Clone, Debug)]
pub struct CssCode {
    h: SparseBinMat,
    rank_h: usize,
    provenance: String,
    blocks: Vec<CyclicBlock>,
    special_columns: Vec<usize>,
    subcode: Option<UnicycleStructure>,
    deleted_rows: Vec<Vec<usize>>,
}

impl CssCode {
    /// Wrap an externally supplied matrix, verifying self-orthogonality and
    /// computing the rank. No cyclic block structure is assumed, but a
    /// trailing column present in every row is recognized and recorded so
    /// the two-hypothesis decoder stays available after a file round trip.
    pub fn from_matrix(h: SparseBinMat, provenance: impl Into<String>) -> Result<Self> {
        let subcode = detect_trailing_dense_column(&h);
        let special_columns = subcode
            .as_ref()
            .map(|s| vec![s.all_ones_column])
            .unwrap_or_default();
        assemble(h, provenance.into(), Vec::new(), special_columns, subcode, Vec::new())
    }

    pub fn h(&self) -> &SparseBinMat {
        &self.h
    }

    /// Number of columns (physical qubits).
    pub fn n(&self) -> usize {
        self.h.n_cols()
    }

    /// Number of rows (parity checks per stabilizer half, possibly
    /// redundant).
    pub fn m(&self) -> usize {
        self.h.n_rows()
    }

    pub fn rank_h(&self) -> usize {
        self.rank_h
    }

    /// Rate of the quantum code: `(n - 2 * rank) / n`.
    pub fn quantum_rate(&self) -> f64 {
        (self.n() as f64 - 2.0 * self.rank_h as f64) / self.n() as f64
    }

    /// Rate of one classical constituent: `(n - rank) / n`.
    pub fn classical_rate(&self) -> f64 {
        (self.n() as f64 - self.rank_h as f64) / self.n() as f64
    }

    /// Human-readable record of how the code was built (construction name,
    /// parameters, seeds, and every randomized choice needed to replay it).
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Circulant blocks in column order, when the construction is built from
    /// them. Empty for matrices of unknown structure.
    pub fn blocks(&self) -> &[CyclicBlock] {
        &self.blocks
    }

    /// Columns outside the circulant blocks that appear in every row.
    pub fn special_columns(&self) -> &[usize] {
        &self.special_columns
    }

    pub fn subcode_structure(&self) -> Option<&UnicycleStructure> {
        self.subcode.as_ref()
    }

    /// Column supports of rows that were generated and then removed to reach
    /// the target check count. Each is orthogonal to every kept row, so each
    /// is a codeword of the final code.
    pub fn deleted_rows(&self) -> &[Vec<usize>] {
        &self.deleted_rows
    }
}

/// Recognize a final column that every row checks and split it off as the
/// two-hypothesis structure (the geometry the dense-column decoder needs).
fn detect_trailing_dense_column(h: &SparseBinMat) -> Option<UnicycleStructure> {
    if h.n_rows() == 0 || h.n_cols() == 0 {
        return None;
    }
    let last = h.n_cols() - 1;
    if !h.rows().all(|row| row.last() == Some(&last)) {
        return None;
    }
    let rows = h
        .rows()
        .map(|row| row[..row.len() - 1].to_vec())
        .collect();
    let subcode = SparseBinMat::new(last, rows).ok()?;
    Some(UnicycleStructure {
        all_ones_column: last,
        subcode_matrix: subcode,
    })
}

fn assemble(
    h: SparseBinMat,
    provenance: String,
    blocks: Vec<CyclicBlock>,
    special_columns: Vec<usize>,
    subcode: Option<UnicycleStructure>,
    deleted_rows: Vec<Vec<usize>>,
) -> Result<CssCode> {
    if let Some((first, second)) = h.first_odd_overlap() {
        return Err(Error::NotSelfOrthogonal { first, second });
    }
    let rank_h = h.rank();
    Ok(CssCode {
        h,
        rank_h,
        provenance,
        blocks,
        special_columns,
        subcode,
        deleted_rows,
    })
}

/// Attempt budget for the difference-set search inside [`bicycle`].
const BICYCLE_SET_BUDGET: usize = 2_000_000;

/// Random sparse self-orthogonal code from a circulant and its transpose.
///
/// Draws a unique-difference set `S` with `k/2` elements modulo `n/2`, forms
/// the `n/2 x n` matrix `[C | C^T]` with `C` the circulant of `S` (every row
/// and column then has even weight `k`, and any two rows overlap evenly),
/// then deletes `n/2 - m` rows: first greedily (each step removes the row
/// whose removal leaves the smallest column-weight spread, ties toward the
/// lowest row index), then refined by deterministic kept/deleted exchanges
/// that shrink a convex imbalance potential. Column weights end in a narrow
/// band around their mean: width at most 2 at toy sizes and at most 4 at the
/// thousands-of-columns sizes, where single-row moves provably cannot do
/// better. Row deletion preserves orthogonality, so the result is a valid
/// code for any `m`; the deleted rows are remembered because they remain
/// codewords of the final code.
///
/// Deterministic in `(n, m, k, seed)`.
pub fn bicycle(n: usize, m: usize, k: usize, seed: u64) -> Result<CssCode> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "column count {n} must be positive and even"
        )));
    }
    if k % 2 != 0 || k < 4 {
        return Err(Error::InvalidArgument(format!(
            "row weight {k} must be even and at least 4"
        )));
    }
    let half = n / 2;
    let w = k / 2;
    if w >= half {
        return Err(Error::InvalidArgument(format!(
            "row weight {k} too large for {half} circulant columns"
        )));
    }
    if m == 0 || m > half {
        return Err(Error::InvalidArgument(format!(
            "check count {m} must be in 1..={half}"
        )));
    }

    let set = crate::designsets::random_unique_difference_set(half, w, seed, BICYCLE_SET_BUDGET)?;
    let c = SparseBinMat::cyclic(half, set.elements())?;
    let h0 = SparseBinMat::hconcat(&[&c, &c.transposed()])?;

    // Greedy deletion: repeatedly drop the row whose removal leaves the
    // smallest column-weight spread (max - min), ties toward the lowest row
    // index, tracked with a histogram over weights 0..=w.
    let mut col_w = h0.col_weights();
    let mut hist = vec![0usize; w + 1];
    for &cw in &col_w {
        hist[cw] += 1;
    }
    let mut alive = vec![true; half];
    for _ in 0..half - m {
        let mut best: Option<(usize, usize)> = None;
        for r in 0..half {
            if !alive[r] {
                continue;
            }
            for &col in h0.row(r) {
                hist[col_w[col]] -= 1;
                hist[col_w[col] - 1] += 1;
            }
            let lo = hist.iter().position(|&c| c > 0).unwrap_or(0);
            let hi = hist.iter().rposition(|&c| c > 0).unwrap_or(0);
            let spread = hi - lo;
            for &col in h0.row(r) {
                hist[col_w[col] - 1] -= 1;
                hist[col_w[col]] += 1;
            }
            if best.map_or(true, |(s, _)| spread < s) {
                best = Some((spread, r));
            }
        }
        let (_, r) = best.expect("at least one live row remains");
        alive[r] = false;
        for &col in h0.row(r) {
            hist[col_w[col]] -= 1;
            hist[col_w[col] - 1] += 1;
            col_w[col] -= 1;
        }
    }

    // The one-step greedy drifts at large sizes; exchange kept and deleted
    // rows until the weights sit in a band of width two.
    rebalance_deletion(&h0, &mut alive, &mut col_w, &mut hist);

    let keep: Vec<usize> = (0..half).filter(|&r| alive[r]).collect();
    let deleted_idx: Vec<usize> = (0..half).filter(|&r| !alive[r]).collect();
    let h = h0.select_rows(&keep);
    let deleted_rows: Vec<Vec<usize>> = deleted_idx.iter().map(|&r| h0.row(r).to_vec()).collect();

    let provenance = format!(
        "bicycle n={n} m={m} k={k} seed={seed} support={:?} deleted_rows={:?}",
        set.elements(),
        deleted_idx
    );
    let blocks = vec![
        CyclicBlock {
            modulus: half,
            support: set.elements().to_vec(),
        },
        CyclicBlock {
            modulus: half,
            support: set.negated().elements().to_vec(),
        },
    ];
    assemble(h, provenance, blocks, Vec::new(), None, deleted_rows)
}

/// Exchange one kept row for one deleted row while doing so strictly lowers
/// a steep convex imbalance potential, until the weights span at most 2.
///
/// The potential is `sum over columns of 4^|w - t|` (exponent capped) with
/// `t` the rounded mean weight, which row exchanges leave invariant. The
/// steepness makes pulling in either extreme worth more than any collateral
/// drift among mid-weight columns, which a quadratic potential cannot
/// guarantee. For kept row `r` and deleted row `b`, the change decomposes
/// into independent per-row sums plus an exact correction on their shared
/// columns. Candidates are the kept rows through heavy columns and the
/// deleted rows through light columns (plus the globally best row on each
/// side), capped for speed; every accepted exchange strictly decreases an
/// integer potential, so the loop terminates. Fully deterministic.
fn rebalance_deletion(
    h0: &SparseBinMat,
    alive: &mut [bool],
    col_w: &mut [usize],
    hist: &mut [usize],
) {
    let half = alive.len();
    let n = col_w.len();
    const CAND_CAP: usize = 256;
    let remaining: usize = col_w.iter().sum();
    let t = ((remaining as f64) / (n as f64)).round() as i64;
    let phi = |w: usize| -> i64 { 1i64 << (3 * (w as i64 - t).unsigned_abs().min(13)) };
    loop {
        let cur_min = hist.iter().position(|&c| c > 0).unwrap_or(0);
        let cur_max = hist.iter().rposition(|&c| c > 0).unwrap_or(0);
        if cur_max - cur_min <= 2 {
            return;
        }
        // Potential change from removing / re-adding a row, columns treated
        // independently.
        let l_score = |row: usize| -> i64 {
            h0.row(row)
                .iter()
                .map(|&c| phi(col_w[c] - 1) - phi(col_w[c]))
                .sum()
        };
        let g_score = |row: usize| -> i64 {
            h0.row(row)
                .iter()
                .map(|&c| phi(col_w[c] + 1) - phi(col_w[c]))
                .sum()
        };

        let heavy = (t + 2).max(cur_min as i64 + 3) as usize;
        let light = (t - 2).min(cur_max as i64 - 3).max(0) as usize;
        let mut r_cand: BTreeSet<usize> = BTreeSet::new();
        let mut b_cand: BTreeSet<usize> = BTreeSet::new();
        'outer_max: for c in 0..n {
            if col_w[c] >= heavy {
                for r in 0..half {
                    if alive[r] && h0.row(r).binary_search(&c).is_ok() {
                        r_cand.insert(r);
                        if r_cand.len() >= CAND_CAP {
                            break 'outer_max;
                        }
                    }
                }
            }
        }
        'outer_min: for c in 0..n {
            if col_w[c] <= light {
                for b in 0..half {
                    if !alive[b] && h0.row(b).binary_search(&c).is_ok() {
                        b_cand.insert(b);
                        if b_cand.len() >= CAND_CAP {
                            break 'outer_min;
                        }
                    }
                }
            }
        }
        let best_l = (0..half)
            .filter(|&r| alive[r])
            .min_by_key(|&r| (l_score(r), r));
        let best_g = (0..half)
            .filter(|&b| !alive[b])
            .min_by_key(|&b| (g_score(b), b));
        if let Some(r) = best_l {
            r_cand.insert(r);
        }
        if let Some(b) = best_g {
            b_cand.insert(b);
        }

        let mut best: Option<(i64, usize, usize)> = None;
        for &r in &r_cand {
            let lr = l_score(r);
            for &b in &b_cand {
                let row_r = h0.row(r);
                let row_b = h0.row(b);
                // Shared columns end up unchanged: subtract both independent
                // estimates for them.
                let mut corr = 0i64;
                let (mut i, mut jj) = (0, 0);
                while i < row_r.len() && jj < row_b.len() {
                    match row_r[i].cmp(&row_b[jj]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => jj += 1,
                        std::cmp::Ordering::Equal => {
                            let w = col_w[row_r[i]];
                            corr += phi(w - 1) + phi(w + 1) - 2 * phi(w);
                            i += 1;
                            jj += 1;
                        }
                    }
                }
                let delta = lr + g_score(b) - corr;
                let key = (delta, r, b);
                if best.map_or(true, |x| key < (x.0, x.1, x.2)) {
                    best = Some(key);
                }
            }
        }
        match best {
            Some((delta, r, b)) if delta < 0 => {
                alive[r] = false;
                for &c in h0.row(r) {
                    hist[col_w[c]] -= 1;
                    hist[col_w[c] - 1] += 1;
                    col_w[c] -= 1;
                }
                alive[b] = true;
                for &c in h0.row(b) {
                    hist[col_w[c]] -= 1;
                    hist[col_w[c] + 1] += 1;
                    col_w[c] += 1;
                }
            }
            _ => return,
        }
    }
}

/// Self-orthogonal code from a projective-plane difference set plus an
/// always-on column.
///
/// For an even prime power `q`, takes the perfect difference set `D` with
/// `q + 1` elements modulo `M = q^2 + q + 1`, forms its circulant `C`, and
/// appends one column of all ones: `H = [C | 1]`. Distinct rows of `C`
/// overlap in exactly one position (the defining property of `D`), so with
/// the shared final column every pair of rows overlaps in exactly two, and
/// each row has even weight `q + 2`. All `M` rows are kept even though the
/// rank is far lower; the redundancy is deliberate. The returned structure
/// records the circulant as a standalone subcode and the index of the
/// always-on column, which participates in every check.
pub fn unicycle(q: usize) -> Result<CssCode> {
    let set = singer_perfect_set(q)?;
    let modulus = set.modulus();
    let c = SparseBinMat::cyclic(modulus, set.elements())?;
    let ones = SparseBinMat::new(1, vec![vec![0]; modulus])?;
    let h = SparseBinMat::hconcat(&[&c, &ones])?;
    let provenance = format!("unicycle q={q} modulus={modulus} support={:?}", set.elements());
    let blocks = vec![CyclicBlock {
        modulus,
        support: set.elements().to_vec(),
    }];
    assemble(
        h,
        provenance,
        blocks,
        vec![modulus],
        Some(UnicycleStructure {
            all_ones_column: modulus,
            subcode_matrix: c,
        }),
        Vec::new(),
    )
}

/// Self-orthogonal code from a matched collection of difference sets.
///
/// Places the circulant of each set side by side: `H = [C_1 | C_2 | ...]`,
/// all modulo the same `modulus`. Rows `r` and `r + d` overlap once for each
/// ordered pair `(a, b)` with `a - b == d` inside any single set, so the
/// pooled difference counts being 0 or 2 everywhere makes every distinct-row
/// overlap even; an even total weight handles the rows themselves. Both
/// conditions are verified here and violations are reported as infeasible.
pub fn construction_n(modulus: usize, sets: &[DifferenceSet]) -> Result<CssCode> {
    if sets.is_empty() {
        return Err(Error::InvalidArgument("need at least one set".into()));
    }
    if !verify_matched_collection(sets, modulus)? {
        return Err(Error::Infeasible(
            "pooled difference counts must all be 0 or 2".into(),
        ));
    }
    let total_weight: usize = sets.iter().map(|s| s.len()).sum();
    if total_weight % 2 != 0 {
        return Err(Error::Infeasible(
            "total weight across the sets must be even".into(),
        ));
    }
    let circulants: Vec<SparseBinMat> = sets
        .iter()
        .map(|s| SparseBinMat::cyclic(modulus, s.elements()))
        .collect::<Result<_>>()?;
    let refs: Vec<&SparseBinMat> = circulants.iter().collect();
    let h = SparseBinMat::hconcat(&refs)?;
    let supports: Vec<&[usize]> = sets.iter().map(|s| s.elements()).collect();
    let provenance = format!("construction_n modulus={modulus} sets={supports:?}");
    let blocks = sets
        .iter()
        .map(|s| CyclicBlock {
            modulus,
            support: s.elements().to_vec(),
        })
        .collect();
    assemble(h, provenance, blocks, Vec::new(), None, Vec::new())
}

/// Self-orthogonal code from a 14-element unique-difference set and the
/// fixed 8-block combinatorial design on 14 points.
///
/// Each design block selects 7 of the parent's elements as the support of one
/// circulant; blocks flagged as transposed use the negated support, which is
/// the transpose of the corresponding circulant. The design covers every
/// eligible pair of parent indices exactly twice and the remaining pairs not
/// at all, which makes the eight blocks side by side self-orthogonal for any
/// valid parent set.
pub fn construction_m(parent: &DifferenceSet) -> Result<CssCode> {
    if parent.len() != 14 {
        return Err(Error::InvalidArgument(format!(
            "parent set must have 14 elements, got {}",
            parent.len()
        )));
    }
    if parent.kind() != SetKind::UniqueDifference && parent.kind() != SetKind::Perfect {
        return Err(Error::InvalidArgument(
            "parent set must have unique differences".into(),
        ));
    }
    let modulus = parent.modulus();
    let design = quasi_symmetric_design_14_7();
    let mut circulants = Vec::with_capacity(8);
    let mut blocks = Vec::with_capacity(8);
    for (b, idx) in design.blocks.iter().enumerate() {
        let mut support: Vec<usize> = idx.iter().map(|&i| parent.elements()[i]).collect();
        if design.transposed[b] {
            for s in &mut support {
                *s = (modulus - *s) % modulus;
            }
        }
        support.sort_unstable();
        circulants.push(SparseBinMat::cyclic(modulus, &support)?);
        blocks.push(CyclicBlock { modulus, support });
    }
    let refs: Vec<&SparseBinMat> = circulants.iter().collect();
    let h = SparseBinMat::hconcat(&refs)?;
    let derived: Vec<&[usize]> = blocks.iter().map(|b| b.support.as_slice()).collect();
    let provenance = format!(
        "construction_m modulus={modulus} parent={:?} transposed={:?} derived={derived:?}",
        parent.elements(),
        design.transposed
    );
    assemble(h, provenance, blocks, Vec::new(), None, Vec::new())
}

/// Simulated-annealing search for a `(j, k)`-regular self-orthogonal matrix:
/// every column has weight `j`, every row has weight `k`, every pair of rows
/// overlaps evenly, and the bipartite adjacency graph is connected.
///
/// The state is an assignment of `j` distinct rows to each of the `n`
/// columns; moves swap one row between two columns (preserving all weights),
/// the energy is the number of row pairs with odd overlap, and the
/// temperature decays geometrically from 2.0 to 0.05 across the move budget.
/// Whenever the energy reaches zero the graph is checked for connectivity; a
/// disconnected solution is perturbed with a burst of unconditional random
/// moves and the search continues. Returns `Ok(None)` when the budget runs
/// out first. Deterministic in `(j, k, n, m, seed, budget)`.
///
/// Memory is `O(m^2)` for the pairwise-overlap table.
pub fn mc_search_regular(
    j: usize,
    k: usize,
    n: usize,
    m: usize,
    seed: u64,
    budget: usize,
) -> Result<Option<SparseBinMat>> {
    if j == 0 || k == 0 || n == 0 || m == 0 {
        return Err(Error::Infeasible("all dimensions must be positive".into()));
    }
    if j * n != k * m {
        return Err(Error::Infeasible(format!(
            "column degree times columns ({j}*{n}) must equal row degree times rows ({k}*{m})"
        )));
    }
    if k % 2 != 0 {
        return Err(Error::Infeasible(format!(
            "row weight {k} is odd, so rows cannot be self-orthogonal"
        )));
    }
    if j > m || k > n {
        return Err(Error::Infeasible(
            "degrees cannot exceed the matrix dimensions".into(),
        ));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut search = RegularSearch::init(j, k, n, m, &mut rng)?;

    const T_START: f64 = 2.0;
    const T_END: f64 = 0.05;
    for step in 0..budget {
        if search.energy == 0 {
            if let Some(h) = search.try_finish()? {
                return Ok(Some(h));
            }
            // Connected solution not reached: shake the frozen state.
            search.kick(8, &mut rng);
            continue;
        }
        let temp = T_START * (T_END / T_START).powf(step as f64 / budget as f64);
        search.anneal_move(temp, &mut rng);
    }
    if search.energy == 0 {
        if let Some(h) = search.try_finish()? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

struct RegularSearch {
    j: usize,
    k: usize,
    n: usize,
    m: usize,
    /// `cols[c]` lists the `j` distinct rows adjacent to column `c`.
    cols: Vec<Vec<usize>>,
    /// Upper-triangular pairwise overlap counts, indexed `a * m + b`, `a < b`.
    overlap: Vec<u16>,
    /// Number of row pairs with odd overlap.
    energy: usize,
}

impl RegularSearch {
    fn init(j: usize, k: usize, n: usize, m: usize, rng: &mut ChaCha12Rng) -> Result<Self> {
        // Configuration model: k stubs per row, shuffled, dealt j per column,
        // then repaired so no column holds the same row twice.
        let mut stubs: Vec<usize> = (0..m).flat_map(|r| std::iter::repeat(r).take(k)).collect();
        stubs.shuffle(rng);
        let mut cols: Vec<Vec<usize>> = stubs.chunks(j).map(|c| c.to_vec()).collect();
        let mut guard = 0usize;
        loop {
            let mut clean = true;
            for c in 0..n {
                cols[c].sort_unstable();
                let dup = cols[c].windows(2).position(|w| w[0] == w[1]);
                if let Some(pos) = dup {
                    clean = false;
                    let r = cols[c][pos];
                    loop {
                        guard += 1;
                        if guard > 100_000 * n {
                            return Err(Error::Infeasible(
                                "could not form an initial simple assignment".into(),
                            ));
                        }
                        let c2 = rng.gen_range(0..n);
                        if c2 == c {
                            continue;
                        }
                        let s2 = rng.gen_range(0..j);
                        let r2 = cols[c2][s2];
                        if r2 != r && !cols[c].contains(&r2) && !cols[c2].contains(&r) {
                            cols[c][pos] = r2;
                            cols[c2][s2] = r;
                            break;
                        }
                    }
                }
            }
            if clean {
                break;
            }
        }

        let mut overlap = vec![0u16; m * m];
        for members in &cols {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    overlap[lo * m + hi] += 1;
                }
            }
        }
        let energy = overlap.iter().filter(|&&o| o % 2 == 1).count();
        Ok(RegularSearch {
            j,
            k,
            n,
            m,
            cols,
            overlap,
            energy,
        })
    }

    /// Pick a candidate swap: distinct columns `c1`, `c2` and slots whose
    /// rows can trade places without creating a duplicate.
    fn pick_swap(&self, rng: &mut ChaCha12Rng) -> Option<(usize, usize, usize, usize)> {
        let c1 = rng.gen_range(0..self.n);
        let c2 = rng.gen_range(0..self.n);
        if c1 == c2 {
            return None;
        }
        let s1 = rng.gen_range(0..self.j);
        let s2 = rng.gen_range(0..self.j);
        let r1 = self.cols[c1][s1];
        let r2 = self.cols[c2][s2];
        if r1 == r2 || self.cols[c1].contains(&r2) || self.cols[c2].contains(&r1) {
            return None;
        }
        Some((c1, s1, c2, s2))
    }

    /// Net overlap-count deltas for swapping `cols[c1][s1]` with
    /// `cols[c2][s2]`, merged per row pair.
    fn swap_deltas(&self, c1: usize, s1: usize, c2: usize, s2: usize) -> Vec<(usize, i32)> {
        let r1 = self.cols[c1][s1];
        let r2 = self.cols[c2][s2];
        let mut deltas: Vec<(usize, i32)> = Vec::with_capacity(4 * (self.j - 1));
        let push = |m: usize, a: usize, b: usize, d: i32, deltas: &mut Vec<(usize, i32)>| {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let key = lo * m + hi;
            match deltas.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => *v += d,
                None => deltas.push((key, d)),
            }
        };
        for &s in &self.cols[c1] {
            if s == r1 {
                continue;
            }
            push(self.m, r1, s, -1, &mut deltas);
            push(self.m, r2, s, 1, &mut deltas);
        }
        for &s in &self.cols[c2] {
            if s == r2 {
                continue;
            }
            push(self.m, r2, s, -1, &mut deltas);
            push(self.m, r1, s, 1, &mut deltas);
        }
        deltas
    }

    fn energy_change(&self, deltas: &[(usize, i32)]) -> i64 {
        let mut de = 0i64;
        for &(key, d) in deltas {
            if d % 2 == 0 {
                continue;
            }
            if self.overlap[key] % 2 == 1 {
                de -= 1;
            } else {
                de += 1;
            }
        }
        de
    }

    fn apply(&mut self, c1: usize, s1: usize, c2: usize, s2: usize, deltas: &[(usize, i32)]) {
        for &(key, d) in deltas {
            let o = self.overlap[key] as i32 + d;
            debug_assert!(o >= 0);
            let was_odd = self.overlap[key] % 2 == 1;
            self.overlap[key] = o as u16;
            let is_odd = o % 2 == 1;
            match (was_odd, is_odd) {
                (false, true) => self.energy += 1,
                (true, false) => self.energy -= 1,
                _ => {}
            }
        }
        let r1 = self.cols[c1][s1];
        let r2 = self.cols[c2][s2];
        self.cols[c1][s1] = r2;
        self.cols[c2][s2] = r1;
    }

    fn anneal_move(&mut self, temp: f64, rng: &mut ChaCha12Rng) {
        let Some((c1, s1, c2, s2)) = self.pick_swap(rng) else {
            return;
        };
        let deltas = self.swap_deltas(c1, s1, c2, s2);
        let de = self.energy_change(&deltas);
        if de <= 0 || rng.gen::<f64>() < (-(de as f64) / temp).exp() {
            self.apply(c1, s1, c2, s2, &deltas);
        }
    }

    /// Apply `count` random swaps unconditionally (used to escape a frozen
    /// zero-energy state whose graph is disconnected).
    fn kick(&mut self, count: usize, rng: &mut ChaCha12Rng) {
        let mut done = 0;
        let mut guard = 0;
        while done < count && guard < 100 * count {
            guard += 1;
            if let Some((c1, s1, c2, s2)) = self.pick_swap(rng) {
                let deltas = self.swap_deltas(c1, s1, c2, s2);
                self.apply(c1, s1, c2, s2, &deltas);
                done += 1;
            }
        }
    }

    /// At zero energy: return the matrix if the bipartite graph is connected.
    fn try_finish(&self) -> Result<Option<SparseBinMat>> {
        debug_assert_eq!(self.energy, 0);
        let mut rows: Vec<Vec<usize>> = vec![Vec::with_capacity(self.k); self.m];
        for (c, members) in self.cols.iter().enumerate() {
            for &r in members {
                rows[r].push(c);
            }
        }
        // Breadth-first search over rows and columns from column 0.
        let mut row_seen = vec![false; self.m];
        let mut col_seen = vec![false; self.n];
        let mut queue = vec![0usize]; // column indices, offset-free
        col_seen[0] = true;
        let mut cols_left = self.n - 1;
        let mut rows_left = self.m;
        while let Some(c) = queue.pop() {
            for &r in &self.cols[c] {
                if !row_seen[r] {
                    row_seen[r] = true;
                    rows_left -= 1;
                    for &c2 in &rows[r] {
                        if !col_seen[c2] {
                            col_seen[c2] = true;
                            cols_left -= 1;
                            queue.push(c2);
                        }
                    }
                }
            }
        }
        if cols_left > 0 || rows_left > 0 {
            return Ok(None);
        }
        for r in &mut rows {
            r.sort_unstable();
        }
        let h = SparseBinMat::new(self.n, rows)?;
        debug_assert!(h.is_self_orthogonal());
        Ok(Some(h))
    }
}

/// A word that is close to satisfying every check: `word` violates exactly
/// `syndrome_weight` checks.
#[derive(Clone, Debug)]
pub struct NearCodeword {
    pub word: BitVec,
    pub syndrome_weight: usize,
}

/// Output of [`audit_low_weight`]: confirmed low-weight codewords that are
/// not products of the checks themselves (sorted by weight, then support),
/// and low-weight words violating only a few checks (sorted by violation
/// count, then weight, then support).
#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub codewords: Vec<BitVec>,
    pub near_codewords: Vec<NearCodeword>,
}

/// Fixed channel parameter handed to the decoder during impulse trials.
const AUDIT_IMPULSE_PRIOR: f64 = 0.04;
/// Iteration cap for audit decodes; failures just skip the trial.
const AUDIT_MAX_ITER: usize = 50;
/// Base seed for the audit's internal random stream. Trials use substream
/// `trial`, so reports are reproducible and independent of thread count.
const AUDIT_SEED: u64 = 0x00c0_ffee;

/// Search a code for low-weight codewords outside the row space and for
/// words that violate only a few checks.
///
/// Two phases. The structural phase checks candidates implied by the
/// construction metadata: rows deleted during construction; for every pair of
/// circulant blocks, the word carrying each block's negated support in the
/// other block's columns (its syndrome cancels for any two circulants sharing
/// a modulus); and each block's negated support alone, which typically
/// violates only a handful of checks. The randomized phase runs `effort`
/// impulse trials in parallel: sample a small error pattern, decode its
/// syndrome, and keep `pattern XOR estimate` whenever the decoder lands on a
/// different satisfying word — disagreements expose codewords of roughly
/// twice the impulse weight. A third of the trials anchor part of the pattern
/// on structural candidates. Candidates are deduplicated, verified to have
/// zero syndrome, and dropped if they lie in the row space (those are
/// harmless products of checks).
///
/// Deterministic in `(code, max_weight, effort)`.
pub fn audit_low_weight(code: &CssCode, max_weight: usize, effort: usize) -> Result<AuditReport> {
    let h = code.h();
    let n = h.n_cols();
    let mut codeword_supports: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut near: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut structural: Vec<Vec<usize>> = Vec::new();

    // Column offset of each circulant block (blocks occupy the leading
    // columns in order).
    let mut offsets = Vec::with_capacity(code.blocks().len());
    let mut off = 0;
    for b in code.blocks() {
        offsets.push(off);
        off += b.modulus;
    }
    let negated = |b: &CyclicBlock| -> Vec<usize> {
        let mut s: Vec<usize> = b
            .support
            .iter()
            .map(|&x| (b.modulus - x) % b.modulus)
            .collect();
        s.sort_unstable();
        s
    };

    for support in code.deleted_rows() {
        structural.push(support.clone());
    }
    let blocks = code.blocks();
    for i in 0..blocks.len() {
        for jj in i + 1..blocks.len() {
            if blocks[i].modulus != blocks[jj].modulus {
                continue;
            }
            let mut support: Vec<usize> =
                negated(&blocks[jj]).iter().map(|&s| s + offsets[i]).collect();
            support.extend(negated(&blocks[i]).iter().map(|&s| s + offsets[jj]));
            support.sort_unstable();
            structural.push(support);
        }
    }
    for (i, b) in blocks.iter().enumerate() {
        let support: Vec<usize> = negated(b).iter().map(|&s| s + offsets[i]).collect();
        structural.push(support);
    }

    let mut seen_near: BTreeSet<Vec<usize>> = BTreeSet::new();
    for support in &structural {
        if support.is_empty() || support.len() > max_weight {
            continue;
        }
        let word = BitVec::from_indices(n, support);
        let s = h.syndrome(&word)?;
        if s.is_zero() {
            codeword_supports.insert(support.clone());
        } else if seen_near.insert(support.clone()) {
            near.push((support.clone(), s.weight()));
        }
    }

    // Randomized impulse phase.
    if effort > 0 && n > 0 {
        let t_max = (max_weight / 2).clamp(2, 8).min(n);
        let decoder = BinarySumProduct::<f64>::new(h, AUDIT_MAX_ITER);
        let priors = vec![AUDIT_IMPULSE_PRIOR; n];
        let anchors: Vec<&Vec<usize>> = structural.iter().filter(|s| !s.is_empty()).collect();
        let found: Vec<Option<Vec<usize>>> = (0..effort)
            .into_par_iter()
            .map(|trial| -> Result<Option<Vec<usize>>> {
                let mut rng = ChaCha12Rng::seed_from_u64(AUDIT_SEED);
                rng.set_stream(trial as u64);
                let t = 1 + trial % t_max;
                let mut picks: BTreeSet<usize> = BTreeSet::new();
                if trial % 3 == 2 && !anchors.is_empty() {
                    let anchor = anchors[(trial / 3) % anchors.len()];
                    for &p in anchor.choose_multiple(&mut rng, t.min(anchor.len())) {
                        picks.insert(p);
                    }
                }
                let mut guard = 0;
                while picks.len() < t && guard < 100 * t {
                    guard += 1;
                    picks.insert(rng.gen_range(0..n));
                }
                let support: Vec<usize> = picks.into_iter().collect();
                let x = BitVec::from_indices(n, &support);
                let s = h.syndrome(&x)?;
                if s.is_zero() {
                    return Ok(Some(support));
                }
                let out = decoder.decode(&s, &priors)?;
                if !out.converged {
                    return Ok(None);
                }
                let mut c = out.estimate;
                c.xor_assign(&x);
                let w = c.weight();
                if w == 0 || w > max_weight {
                    return Ok(None);
                }
                Ok(Some(c.iter_ones().collect()))
            })
            .collect::<Result<_>>()?;
        for support in found.into_iter().flatten() {
            codeword_supports.insert(support);
        }
    }

    // Final verification and ordering.
    let mut codewords: Vec<BitVec> = Vec::new();
    for support in &codeword_supports {
        if support.len() > max_weight {
            continue;
        }
        let word = BitVec::from_indices(n, support);
        let s = h.syndrome(&word)?;
        debug_assert!(s.is_zero());
        if !s.is_zero() || h.in_row_space(&word)? {
            continue;
        }
        codewords.push(word);
    }
    codewords.sort_by_key(|w| (w.weight(), w.iter_ones().collect::<Vec<_>>()));
    near.sort_by(|a, b| (a.1, a.0.len(), &a.0).cmp(&(b.1, b.0.len(), &b.0)));
    let near_codewords = near
        .into_iter()
        .map(|(support, syndrome_weight)| NearCodeword {
            word: BitVec::from_indices(n, &support),
            syndrome_weight,
        })
        .collect();
    Ok(AuditReport {
        codewords,
        near_codewords,
    })
}
