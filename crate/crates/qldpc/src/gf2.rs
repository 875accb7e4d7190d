//! Dense bit vectors and sparse GF(2) matrices.
//!
//! Rows of a [`SparseBinMat`] are strictly increasing column-index lists;
//! dense [`BitVec`]s back syndrome accumulation and Gaussian elimination.
//! Rank and row-space membership share a lazily built echelon basis that is
//! cached on the matrix, so repeated membership queries cost one reduction.

use std::fmt;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Dense GF(2) vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Vector with ones exactly at `indices`.
    ///
    /// # Panics
    /// Panics if an index is out of range.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    /// Parse a `01` string, most significant position first.
    pub fn from_bit_str(s: &str) -> Self {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            v.set(i, c == '1');
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the AND with `other`: the GF(2) dot product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot of unequal lengths");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    /// Parity of this vector restricted to a sparse index set.
    pub fn sparse_dot(&self, indices: &[usize]) -> bool {
        let mut acc = false;
        for &i in indices {
            acc ^= self.get(i);
        }
        acc
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Echelon row basis: rows with distinct leading (pivot) columns.
#[derive(Debug)]
struct RowBasis {
    /// (pivot column, reduced row) sorted by insertion; pivots are distinct.
    rows: Vec<(usize, BitVec)>,
}

impl RowBasis {
    fn build(mat: &SparseBinMat) -> Self {
        let mut basis = RowBasis { rows: Vec::new() };
        for row in &mat.rows {
            let dense = BitVec::from_indices(mat.n_cols, row);
            basis.insert(dense);
        }
        basis
    }

    /// Reduce `v` in place against the basis; returns the final leading one.
    fn reduce(&self, v: &mut BitVec) {
        'outer: while let Some(lead) = v.first_one() {
            for (piv, row) in &self.rows {
                if *piv == lead {
                    v.xor_assign(row);
                    continue 'outer;
                }
            }
            return;
        }
    }

    fn insert(&mut self, mut v: BitVec) -> bool {
        self.reduce(&mut v);
        match v.first_one() {
            Some(lead) => {
                self.rows.push((lead, v));
                self.rows.sort_by_key(|(p, _)| *p);
                true
            }
            None => false,
        }
    }

    fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Sparse GF(2) matrix stored row-major as sorted column indices.
///
/// # Example
/// ```
/// use qldpc::gf2::SparseBinMat;
///
/// let h = SparseBinMat::cyclic(13, &[0, 3, 5, 12]).unwrap();
/// assert_eq!(h.row(1), &[0, 1, 4, 6]);
/// assert_eq!(h.rank(), 13 - h.null_space_dim());
/// ```
pub struct SparseBinMat {
    n_cols: usize,
    rows: Vec<Vec<usize>>,
    basis: OnceLock<RowBasis>,
}

impl Clone for SparseBinMat {
    fn clone(&self) -> Self {
        SparseBinMat {
            n_cols: self.n_cols,
            rows: self.rows.clone(),
            basis: OnceLock::new(),
        }
    }
}

impl PartialEq for SparseBinMat {
    fn eq(&self, other: &Self) -> bool {
        self.n_cols == other.n_cols && self.rows == other.rows
    }
}

impl Eq for SparseBinMat {}

impl fmt::Debug for SparseBinMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseBinMat {}x{}", self.rows.len(), self.n_cols)?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl SparseBinMat {
    /// Build from per-row sorted column indices.
    pub fn new(n_cols: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            for w in row.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidRow {
                        row: r,
                        reason: format!("indices not strictly increasing at {} >= {}", w[0], w[1]),
                    });
                }
            }
            if let Some(&last) = row.last() {
                if last >= n_cols {
                    return Err(Error::ColumnOutOfRange {
                        col: last,
                        n_cols,
                    });
                }
            }
        }
        Ok(SparseBinMat {
            n_cols,
            rows,
            basis: OnceLock::new(),
        })
    }

    pub fn identity(n: usize) -> Self {
        SparseBinMat {
            n_cols: n,
            rows: (0..n).map(|i| vec![i]).collect(),
            basis: OnceLock::new(),
        }
    }

    /// Square cyclic matrix: row `r` has ones at `(s + r) mod modulus`.
    pub fn cyclic(modulus: usize, support: &[usize]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("cyclic modulus must be positive".into()));
        }
        let mut seen = vec![false; modulus];
        for &s in support {
            if s >= modulus {
                return Err(Error::ColumnOutOfRange {
                    col: s,
                    n_cols: modulus,
                });
            }
            if seen[s] {
                return Err(Error::InvalidArgument(format!(
                    "duplicate support element {s}"
                )));
            }
            seen[s] = true;
        }
        let rows = (0..modulus)
            .map(|r| {
                let mut row: Vec<usize> = support.iter().map(|&s| (s + r) % modulus).collect();
                row.sort_unstable();
                row
            })
            .collect();
        Ok(SparseBinMat {
            n_cols: modulus,
            rows,
            basis: OnceLock::new(),
        })
    }

    /// Place blocks with equal row counts side by side.
    pub fn hconcat(blocks: &[&SparseBinMat]) -> Result<Self> {
        let n_rows = blocks.first().map_or(0, |b| b.n_rows());
        let mut rows = vec![Vec::new(); n_rows];
        let mut offset = 0;
        for b in blocks {
            if b.n_rows() != n_rows {
                return Err(Error::DimensionMismatch {
                    expected: n_rows,
                    got: b.n_rows(),
                });
            }
            for (r, row) in b.rows.iter().enumerate() {
                rows[r].extend(row.iter().map(|&c| c + offset));
            }
            offset += b.n_cols;
        }
        Ok(SparseBinMat {
            n_cols: offset,
            rows,
            basis: OnceLock::new(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.n_cols];
        for row in &self.rows {
            for &c in row {
                w[c] += 1;
            }
        }
        w
    }

    pub fn dense_row(&self, r: usize) -> BitVec {
        BitVec::from_indices(self.n_cols, &self.rows[r])
    }

    /// Keep only the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> Self {
        SparseBinMat {
            n_cols: self.n_cols,
            rows: keep.iter().map(|&r| self.rows[r].clone()).collect(),
            basis: OnceLock::new(),
        }
    }

    pub fn transposed(&self) -> Self {
        let mut cols = vec![Vec::new(); self.n_cols];
        for (r, row) in self.rows.iter().enumerate() {
            for &c in row {
                cols[c].push(r);
            }
        }
        SparseBinMat {
            n_cols: self.rows.len(),
            rows: cols,
            basis: OnceLock::new(),
        }
    }

    /// GF(2) matrix product `self * other`.
    pub fn mul(&self, other: &SparseBinMat) -> Result<SparseBinMat> {
        if self.n_cols != other.n_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                got: other.n_rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.n_cols);
                for &j in row {
                    for &c in &other.rows[j] {
                        acc.toggle(c);
                    }
                }
                acc.to_indices()
            })
            .collect();
        Ok(SparseBinMat {
            n_cols: other.n_cols,
            rows,
            basis: OnceLock::new(),
        })
    }

    /// Matrix-vector product over GF(2): one parity bit per row.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                got: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if v.sparse_dot(row) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Syndrome of an error vector: alias for [`Self::mul_vec`].
    pub fn syndrome(&self, e: &BitVec) -> Result<BitVec> {
        self.mul_vec(e)
    }

    /// First row pair (i <= j) with odd overlap, if any. `i == j` flags an
    /// odd-weight row.
    pub fn first_odd_overlap(&self) -> Option<(usize, usize)> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() % 2 == 1 {
                return Some((i, i));
            }
        }
        for i in 0..self.rows.len() {
            for j in (i + 1)..self.rows.len() {
                if sorted_overlap_parity(&self.rows[i], &self.rows[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `H * H^T == 0`: every row weight even and every row-pair overlap even.
    pub fn is_self_orthogonal(&self) -> bool {
        self.first_odd_overlap().is_none()
    }

    pub fn rank(&self) -> usize {
        self.row_basis().rank()
    }

    pub fn null_space_dim(&self) -> usize {
        self.n_cols - self.rank()
    }

    /// Is `v` a GF(2) combination of the rows?
    pub fn in_row_space(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                got: v.len(),
            });
        }
        Ok(self.row_basis().contains(v))
    }

    fn row_basis(&self) -> &RowBasis {
        self.basis.get_or_init(|| RowBasis::build(self))
    }
}

/// Parity of |a ∩ b| for sorted index slices.
fn sorted_overlap_parity(a: &[usize], b: &[usize]) -> bool {
    let mut i = 0;
    let mut j = 0;
    let mut parity = false;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                parity = !parity;
                i += 1;
                j += 1;
            }
        }
    }
    parity
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::{prop_assert, prop_assert_eq, proptest};
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn steane() -> SparseBinMat {
        SparseBinMat::new(
            7,
            vec![vec![3, 4, 5, 6], vec![1, 2, 5, 6], vec![0, 2, 4, 6]],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_rows_shift_the_support() {
        let c = SparseBinMat::cyclic(13, &[0, 3, 5, 12]).unwrap();
        assert_eq!(c.n_rows(), 13);
        assert_eq!(c.row(0), &[0, 3, 5, 12]);
        assert_eq!(c.row(1), &[0, 1, 4, 6]);
        assert!(c.row_weights().iter().all(|&w| w == 4));
        assert!(c.col_weights().iter().all(|&w| w == 4));
    }

    #[test]
    fn cyclic_of_zero_support_is_identity() {
        let c = SparseBinMat::cyclic(3, &[0]).unwrap();
        assert_eq!(c, SparseBinMat::identity(3));
    }

    #[test]
    fn cyclic_commutes_with_the_shift() {
        let c = SparseBinMat::cyclic(13, &[0, 3, 5, 12]).unwrap();
        let p = SparseBinMat::cyclic(13, &[1]).unwrap();
        assert_eq!(c.mul(&p).unwrap(), p.mul(&c).unwrap());
    }

    #[test]
    fn cyclic_rejects_bad_support() {
        assert!(SparseBinMat::cyclic(13, &[0, 13]).is_err());
        assert!(SparseBinMat::cyclic(13, &[2, 2]).is_err());
    }

    #[test]
    fn new_rejects_unsorted_and_out_of_range() {
        assert!(SparseBinMat::new(4, vec![vec![2, 1]]).is_err());
        assert!(SparseBinMat::new(4, vec![vec![1, 1]]).is_err());
        assert!(SparseBinMat::new(4, vec![vec![4]]).is_err());
        assert!(SparseBinMat::new(4, vec![vec![0, 3], vec![]]).is_ok());
    }

    #[test]
    fn transpose_golden_cases() {
        let id = SparseBinMat::identity(5);
        assert_eq!(id.transposed(), id);

        let c = SparseBinMat::cyclic(13, &[0, 3, 5, 12]).unwrap();
        // transposing a cyclic matrix negates its support
        let neg = SparseBinMat::cyclic(13, &[0, 1, 8, 10]).unwrap();
        assert_eq!(c.transposed(), neg);

        let wide = SparseBinMat::new(3, vec![vec![0, 2]]).unwrap();
        let tall = wide.transposed();
        assert_eq!(tall.n_rows(), 3);
        assert_eq!(tall.n_cols(), 1);
        assert_eq!(tall.row(0), &[0]);
        assert_eq!(tall.row(1), &[] as &[usize]);
        assert_eq!(tall.row(2), &[0]);
    }

    #[test]
    fn mul_vec_golden_cases() {
        let h = steane();
        let zero = BitVec::zeros(7);
        assert!(h.mul_vec(&zero).unwrap().is_zero());

        // single error in the last column touches every row
        let e = BitVec::from_indices(7, &[6]);
        assert_eq!(h.mul_vec(&e).unwrap().to_indices(), vec![0, 1, 2]);

        // each single-bit error reads out its column index + 1 in binary
        for j in 0..7 {
            let e = BitVec::from_indices(7, &[j]);
            let s = h.mul_vec(&e).unwrap();
            let val = (u8::from(s.get(0)) << 2) | (u8::from(s.get(1)) << 1) | u8::from(s.get(2));
            assert_eq!(val as usize, j + 1);
        }
    }

    #[test]
    fn mul_dimension_mismatch_is_an_error() {
        let a = SparseBinMat::identity(3);
        let b = SparseBinMat::identity(4);
        assert!(a.mul(&b).is_err());
        assert!(a.mul_vec(&BitVec::zeros(4)).is_err());
        assert!(a.in_row_space(&BitVec::zeros(4)).is_err());
    }

    #[test]
    fn circulants_commute() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..5 {
            let m = rng.gen_range(2..50usize);
            let w = rng.gen_range(1..=m.min(6));
            let mut support: Vec<usize> = (0..m).collect();
            support.shuffle(&mut rng);
            support.truncate(w);
            support.sort_unstable();
            let c = SparseBinMat::cyclic(m, &support).unwrap();
            let ct = c.transposed();
            assert_eq!(c.mul(&ct).unwrap(), ct.mul(&c).unwrap());
        }
    }

    #[test]
    fn self_orthogonality_golden_cases() {
        assert!(steane().is_self_orthogonal());
        assert!(SparseBinMat::new(2, vec![vec![0, 1]])
            .unwrap()
            .is_self_orthogonal());
        let odd = SparseBinMat::new(1, vec![vec![0]]).unwrap();
        assert!(!odd.is_self_orthogonal());
        assert_eq!(odd.first_odd_overlap(), Some((0, 0)));

        // even weights but odd pairwise overlap
        let bad = SparseBinMat::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(bad.first_odd_overlap(), Some((0, 1)));
    }

    #[test]
    fn rank_golden_cases() {
        assert_eq!(SparseBinMat::identity(9).rank(), 9);
        assert_eq!(SparseBinMat::new(5, vec![vec![], vec![]]).unwrap().rank(), 0);
        // published perfect difference set modulo 73: projective-plane rank
        let c = SparseBinMat::cyclic(73, &[2, 8, 15, 19, 20, 34, 42, 44, 72]).unwrap();
        assert_eq!(c.rank(), 28);
    }

    #[test]
    fn rank_is_invariant_under_row_moves() {
        let h = steane();
        assert_eq!(h.rank(), 3);
        let swapped = h.select_rows(&[2, 0, 1]);
        assert_eq!(swapped.rank(), 3);
        // append a dependent row: rank unchanged
        let mut rows: Vec<Vec<usize>> = h.rows().map(|r| r.to_vec()).collect();
        let mut sum = h.dense_row(0);
        sum.xor_assign(&h.dense_row(1));
        rows.push(sum.to_indices());
        let grown = SparseBinMat::new(7, rows).unwrap();
        assert_eq!(grown.rank(), 3);
    }

    #[test]
    fn row_space_membership_matches_exhaustive_combination_oracle() {
        let h = steane();
        // oracle: enumerate all 2^3 row combinations
        let mut combos = Vec::new();
        for mask in 0..8u32 {
            let mut v = BitVec::zeros(7);
            for r in 0..3 {
                if mask >> r & 1 == 1 {
                    v.xor_assign(&h.dense_row(r));
                }
            }
            combos.push(v);
        }
        for val in 0..128u32 {
            let mut v = BitVec::zeros(7);
            for b in 0..7 {
                if val >> b & 1 == 1 {
                    v.set(b, true);
                }
            }
            let brute = combos.contains(&v);
            assert_eq!(h.in_row_space(&v).unwrap(), brute, "vector {v}");
        }
    }

    #[test]
    fn row_space_contains_rows_and_zero() {
        let c = SparseBinMat::cyclic(21, &[0, 2, 7, 8, 11]).unwrap();
        for r in 0..c.n_rows() {
            assert!(c.in_row_space(&c.dense_row(r)).unwrap());
        }
        assert!(c.in_row_space(&BitVec::zeros(21)).unwrap());
    }

    #[test]
    fn hconcat_offsets_columns() {
        let a = SparseBinMat::identity(2);
        let b = SparseBinMat::new(3, vec![vec![0, 2], vec![1]]).unwrap();
        let c = SparseBinMat::hconcat(&[&a, &b]).unwrap();
        assert_eq!(c.n_cols(), 5);
        assert_eq!(c.row(0), &[0, 2, 4]);
        assert_eq!(c.row(1), &[1, 3]);
        let short = SparseBinMat::identity(3);
        assert!(SparseBinMat::hconcat(&[&a, &short]).is_err());
    }

    #[test]
    fn bitvec_basics() {
        let mut v = BitVec::zeros(70);
        v.set(0, true);
        v.set(69, true);
        assert_eq!(v.weight(), 2);
        assert_eq!(v.to_indices(), vec![0, 69]);
        assert_eq!(v.first_one(), Some(0));
        v.toggle(0);
        assert_eq!(v.first_one(), Some(69));
        let w = BitVec::from_bit_str("0101");
        assert_eq!(w.to_indices(), vec![1, 3]);
        assert_eq!(format!("{w}"), "0101");
        assert!(BitVec::from_indices(4, &[1]).dot(&w));
        assert!(!BitVec::from_indices(4, &[0, 1, 3]).dot(&w));
    }

    proptest! {
        #[test]
        fn any_cyclic_pair_with_its_transpose_is_self_orthogonal(
            m in 2usize..200,
            seed in 0u64..500,
        ) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let w = rng.gen_range(1..=m.min(8));
            let mut support: Vec<usize> = (0..m).collect();
            support.shuffle(&mut rng);
            support.truncate(w);
            support.sort_unstable();
            let c = SparseBinMat::cyclic(m, &support).unwrap();
            let h0 = SparseBinMat::hconcat(&[&c, &c.transposed()]).unwrap();
            prop_assert!(h0.is_self_orthogonal());
        }

        #[test]
        fn syndrome_is_linear(seed in 0u64..200) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..40usize);
            let m = rng.gen_range(1..10usize);
            let rows: Vec<Vec<usize>> = (0..m)
                .map(|_| {
                    let mut r: Vec<usize> =
                        (0..n).filter(|_| rng.gen_bool(0.3)).collect();
                    r.dedup();
                    r
                })
                .collect();
            let h = SparseBinMat::new(n, rows).unwrap();
            let mut a = BitVec::zeros(n);
            let mut b = BitVec::zeros(n);
            for i in 0..n {
                a.set(i, rng.gen_bool(0.5));
                b.set(i, rng.gen_bool(0.5));
            }
            let mut ab = a.clone();
            ab.xor_assign(&b);
            let mut sum = h.mul_vec(&a).unwrap();
            sum.xor_assign(&h.mul_vec(&b).unwrap());
            prop_assert_eq!(h.mul_vec(&ab).unwrap(), sum);
        }

        #[test]
        fn membership_matches_brute_force_on_small_matrices(seed in 0u64..150) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..16usize);
            let m = rng.gen_range(1..=10usize);
            let rows: Vec<Vec<usize>> = (0..m)
                .map(|_| (0..n).filter(|_| rng.gen_bool(0.4)).collect())
                .collect();
            let h = SparseBinMat::new(n, rows).unwrap();
            let mut v = BitVec::zeros(n);
            for i in 0..n {
                v.set(i, rng.gen_bool(0.5));
            }
            let mut brute = false;
            for mask in 0..(1u32 << m) {
                let mut acc = BitVec::zeros(n);
                for r in 0..m {
                    if mask >> r & 1 == 1 {
                        acc.xor_assign(&h.dense_row(r));
                    }
                }
                if acc == v {
                    brute = true;
                    break;
                }
            }
            prop_assert_eq!(h.in_row_space(&v).unwrap(), brute);
        }

        #[test]
        fn double_transpose_is_identity(seed in 0u64..100) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..30usize);
            let m = rng.gen_range(1..30usize);
            let rows: Vec<Vec<usize>> = (0..m)
                .map(|_| (0..n).filter(|_| rng.gen_bool(0.2)).collect())
                .collect();
            let h = SparseBinMat::new(n, rows).unwrap();
            prop_assert_eq!(h.transposed().transposed(), h);
        }
    }
}
