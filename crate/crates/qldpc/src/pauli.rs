//! Pauli and stabilizer algebra in the binary symplectic representation.
//!
//! An n-qubit Pauli operator is stored as a scalar phase times X^x Z^z for
//! bit strings x, z of length n. Stabilizer groups become binary matrices
//! with 2n columns, the (x | z) halves side by side; commutation becomes a
//! twisted inner product, and syndrome extraction becomes sparse
//! matrix-vector multiplication over GF(2).

use std::fmt;

use crate::gf2::{BitVec, SparseBinMat};
use crate::{Error, Result};

/// Scalar prefactor of a Pauli operator: a power of the imaginary unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    fn from_exponent(e: u8) -> Phase {
        match e % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    fn exponent(self) -> u8 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + other.exponent())
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Phase::One => "+1",
            Phase::I => "+i",
            Phase::MinusOne => "-1",
            Phase::MinusI => "-i",
        };
        write!(f, "{s}")
    }
}

/// A Pauli operator `phase * X^x * Z^z` on `n` qubits.
///
/// Position j carries X iff x_j=1,z_j=0; Z iff x_j=0,z_j=1; Y iff both;
/// I otherwise. The letter Y contributes a factor i to the stored phase
/// (Y = i X Z), which [`fmt::Display`] folds back out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliOperator {
    n: usize,
    x: BitVec,
    z: BitVec,
    phase: Phase,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            n,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: Phase::One,
        }
    }

    /// Build from x/z strings with unit phase.
    pub fn from_xz(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: z.len(),
            });
        }
        Ok(PauliOperator {
            n: x.len(),
            x,
            z,
            phase: Phase::One,
        })
    }

    /// Parse a letter string like "XZZXI". Y positions multiply the stored
    /// phase by i.
    pub fn from_letters(letters: &str) -> Result<Self> {
        let n = letters.chars().count();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        let mut phase = Phase::One;
        for (j, c) in letters.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x.set(j, true),
                'Z' => z.set(j, true),
                'Y' => {
                    x.set(j, true);
                    z.set(j, true);
                    phase = phase.mul(Phase::I);
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown Pauli letter '{other}'"
                    )))
                }
            }
        }
        Ok(PauliOperator { n, x, z, phase })
    }

    /// Single-letter operator at one position.
    pub fn single(n: usize, position: usize, letter: char) -> Result<Self> {
        if position >= n {
            return Err(Error::ColumnOutOfRange {
                col: position,
                n_cols: n,
            });
        }
        let mut op = PauliOperator::identity(n);
        match letter {
            'I' => {}
            'X' => op.x.set(position, true),
            'Z' => op.z.set(position, true),
            'Y' => {
                op.x.set(position, true);
                op.z.set(position, true);
                op.phase = Phase::I;
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown Pauli letter '{other}'"
                )))
            }
        }
        Ok(op)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// The letter at position j, ignoring phase.
    pub fn letter(&self, j: usize) -> char {
        match (self.x.get(j), self.z.get(j)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    /// Concatenated (x | z) string of length 2n.
    pub fn symplectic_string(&self) -> BitVec {
        let mut s = BitVec::zeros(2 * self.n);
        for j in self.x.iter_ones() {
            s.set(j, true);
        }
        for j in self.z.iter_ones() {
            s.set(self.n + j, true);
        }
        s
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        (0..self.n)
            .filter(|&j| self.x.get(j) || self.z.get(j))
            .count()
    }

    /// Operator product: strings XOR, phase picks up (-1)^(z1 . x2) from
    /// commuting Z factors of self past X factors of other.
    pub fn compose(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let mut phase = self.phase.mul(other.phase);
        if self.z.dot(&other.x) {
            phase = phase.mul(Phase::MinusOne);
        }
        Ok(PauliOperator {
            n: self.n,
            x,
            z,
            phase,
        })
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // stored = phase * X^x Z^z; letters absorb i per Y position
        let mut y_count = 0u8;
        let mut letters = String::with_capacity(self.n);
        for j in 0..self.n {
            let c = self.letter(j);
            if c == 'Y' {
                y_count += 1;
            }
            letters.push(c);
        }
        let shown = Phase::from_exponent(self.phase.exponent() + 3 * (y_count % 4));
        match shown {
            Phase::One => write!(f, "{letters}"),
            Phase::I => write!(f, "i{letters}"),
            Phase::MinusOne => write!(f, "-{letters}"),
            Phase::MinusI => write!(f, "-i{letters}"),
        }
    }
}

/// Twisted (symplectic) product of two (x | z) strings of equal even
/// length: x . z' + x' . z mod 2. Zero iff the operators commute.
pub fn twisted_product(r: &BitVec, s: &BitVec) -> Result<u8> {
    if r.len() != s.len() {
        return Err(Error::DimensionMismatch {
            expected: r.len(),
            got: s.len(),
        });
    }
    if r.len() % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "symplectic strings have even length, got {}",
            r.len()
        )));
    }
    let n = r.len() / 2;
    let mut acc = false;
    for j in r.iter_ones() {
        if j < n {
            // x bit of r against z bit of s
            if s.get(n + j) {
                acc = !acc;
            }
        } else if s.get(j - n) {
            // z bit of r against x bit of s
            acc = !acc;
        }
    }
    Ok(acc as u8)
}

/// A set of mutually commuting Pauli operators as a binary matrix with
/// columns split (x-half | z-half).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerMatrix {
    n: usize,
    matrix: SparseBinMat,
    phases_discarded: bool,
    redundant_rows: Vec<PauliOperator>,
}

impl StabilizerMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.n_rows()
    }

    /// The underlying matrix with 2n columns.
    pub fn matrix(&self) -> &SparseBinMat {
        &self.matrix
    }

    /// True when validation dropped nontrivial input phases.
    pub fn phases_discarded(&self) -> bool {
        self.phases_discarded
    }

    /// Dependent generator rows recorded for reference but excluded from
    /// the matrix.
    pub fn redundant_rows(&self) -> &[PauliOperator] {
        &self.redundant_rows
    }

    /// Row as a PauliOperator with unit phase.
    pub fn row_operator(&self, r: usize) -> PauliOperator {
        let dense = self.matrix.dense_row(r);
        let mut x = BitVec::zeros(self.n);
        let mut z = BitVec::zeros(self.n);
        for j in dense.iter_ones() {
            if j < self.n {
                x.set(j, true);
            } else {
                z.set(j - self.n, true);
            }
        }
        PauliOperator {
            n: self.n,
            x,
            z,
            phase: Phase::One,
        }
    }
}

/// Check that every pair of operators commutes and assemble the (x | z)
/// matrix. Nontrivial phases are dropped and flagged.
pub fn validate_stabilizers(rows: &[PauliOperator]) -> Result<StabilizerMatrix> {
    let Some(first) = rows.first() else {
        return Err(Error::InvalidArgument("no stabilizer rows given".into()));
    };
    let n = first.n;
    for (i, op) in rows.iter().enumerate() {
        if op.n != n {
            return Err(Error::MixedStabilizerLength {
                expected: n,
                row: i,
                got: op.n,
            });
        }
    }
    let strings: Vec<BitVec> = rows.iter().map(|op| op.symplectic_string()).collect();
    for i in 0..strings.len() {
        for j in (i + 1)..strings.len() {
            if twisted_product(&strings[i], &strings[j])? == 1 {
                return Err(Error::NonCommutingStabilizers { first: i, second: j });
            }
        }
    }
    let sparse_rows: Vec<Vec<usize>> = strings.iter().map(|s| s.to_indices()).collect();
    Ok(StabilizerMatrix {
        n,
        matrix: SparseBinMat::new(2 * n, sparse_rows)?,
        phases_discarded: rows.iter().any(|op| op.phase != Phase::One),
        redundant_rows: Vec::new(),
    })
}

/// Embed a self-orthogonal binary matrix H (M x N) as the 2M x 2N
/// block-diagonal stabilizer matrix diag(H, H): X-type rows first, then
/// Z-type rows.
pub fn css_embed(h: &SparseBinMat) -> Result<StabilizerMatrix> {
    if let Some((first, second)) = h.first_odd_overlap() {
        return Err(Error::NotSelfOrthogonal { first, second });
    }
    let n = h.n_cols();
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(2 * h.n_rows());
    for r in h.rows() {
        rows.push(r.to_vec());
    }
    for r in h.rows() {
        rows.push(r.iter().map(|&c| n + c).collect());
    }
    Ok(StabilizerMatrix {
        n,
        matrix: SparseBinMat::new(2 * n, rows)?,
        phases_discarded: false,
        redundant_rows: Vec::new(),
    })
}

/// Syndrome of an error operator: bit m indicates anticommutation with
/// stabilizer row m. Computed as the twisted product of each row with the
/// error's (x | z) string, which equals multiplying the matrix by the
/// error string with halves swapped.
pub fn pauli_syndrome(s: &StabilizerMatrix, e: &PauliOperator) -> Result<BitVec> {
    if e.n != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            got: e.n,
        });
    }
    // swapped string (z | x): row . swapped = x_row . z_e + z_row . x_e
    let mut swapped = BitVec::zeros(2 * s.n);
    for j in e.z.iter_ones() {
        swapped.set(j, true);
    }
    for j in e.x.iter_ones() {
        swapped.set(s.n + j, true);
    }
    s.matrix.mul_vec(&swapped)
}

/// Two errors are degenerate when their combined (x | z) string lies in
/// the stabilizer row space: they then act identically on the code space.
/// Phases are ignored.
pub fn is_degenerate_pair(
    s: &StabilizerMatrix,
    e1: &PauliOperator,
    e2: &PauliOperator,
) -> Result<bool> {
    if e1.n != s.n || e2.n != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            got: if e1.n != s.n { e1.n } else { e2.n },
        });
    }
    let mut diff = e1.symplectic_string();
    diff.xor_assign(&e2.symplectic_string());
    s.matrix.in_row_space(&diff)
}

/// Compiled-in demonstration codes: "shor", "steane", "five_qubit".
pub fn demo_code(name: &str) -> Result<StabilizerMatrix> {
    match name {
        "shor" => {
            // Z-pair rows in syndrome-table order, then the two X rows.
            let letters = [
                "ZZIIIIIII",
                "IZZIIIIII",
                "IIIZZIIII",
                "IIIIZZIII",
                "IIIIIIZZI",
                "IIIIIIIZZ",
                "XXXXXXIII",
                "IIIXXXXXX",
            ];
            let rows: Vec<PauliOperator> = letters
                .iter()
                .map(|l| PauliOperator::from_letters(l))
                .collect::<Result<_>>()?;
            validate_stabilizers(&rows)
        }
        "steane" => {
            let h = SparseBinMat::new(
                7,
                vec![vec![3, 4, 5, 6], vec![1, 2, 5, 6], vec![0, 2, 4, 6]],
            )?;
            css_embed(&h)
        }
        "five_qubit" => {
            let letters = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];
            let rows: Vec<PauliOperator> = letters
                .iter()
                .map(|l| PauliOperator::from_letters(l))
                .collect::<Result<_>>()?;
            let mut s = validate_stabilizers(&rows)?;
            // the fifth cyclic shift is the product of the other four
            s.redundant_rows = vec![PauliOperator::from_letters("ZZXIX")?];
            Ok(s)
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown demo code '{other}' (expected shor, steane, or five_qubit)"
        ))),
    }
}

/// One abstract encoder gate; data only, never executed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Hadamard { qubit: usize },
    ControlledNot { control: usize, target: usize },
}

/// Classical structure of the encoding circuit for a full-rank
/// self-orthogonal H.
#[derive(Debug, Clone)]
pub struct EncoderStructure {
    /// `column_permutation[j]` = original column index at reduced position j.
    pub column_permutation: Vec<usize>,
    /// M x (N-M) remainder after the first reduction, columns in final
    /// order (first M columns carry the second-stage pivots).
    pub p: SparseBinMat,
    /// M x K remainder after the second reduction, K = N - 2M.
    pub q: SparseBinMat,
    /// Gate sequence: CNOT fan-out of Q, Hadamards, CNOT fan-out of P.
    pub gates: Vec<Gate>,
}

impl EncoderStructure {
    pub fn message_bits(&self) -> usize {
        self.q.n_cols()
    }

    /// Representative word of the coset labelled by the K-bit message f:
    /// (0, Qf, f) in reduced column order, mapped back through the column
    /// permutation. Always has zero syndrome; distinct messages give words
    /// in distinct cosets of the stabilizer row space.
    pub fn coset_word(&self, f: &BitVec) -> Result<BitVec> {
        let m = self.p.n_rows();
        let k = self.q.n_cols();
        let n = self.column_permutation.len();
        if f.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: f.len(),
            });
        }
        let qf = self.q.mul_vec(f)?;
        let mut word = BitVec::zeros(n);
        for j in qf.iter_ones() {
            word.set(self.column_permutation[m + j], true);
        }
        for j in f.iter_ones() {
            word.set(self.column_permutation[2 * m + j], true);
        }
        Ok(word)
    }
}

/// Dense row-reduction to [I | R] with explicit column swaps; returns the
/// permutation (position -> original column) and the remainder block R.
fn reduce_to_identity(
    rows: &mut Vec<BitVec>,
    n_cols: usize,
) -> Option<(Vec<usize>, Vec<BitVec>)> {
    let m = rows.len();
    let mut perm: Vec<usize> = (0..n_cols).collect();
    // work on permuted positions: bit at position j means column perm[j]
    for pivot in 0..m {
        let mut found = None;
        'scan: for pos in pivot..n_cols {
            for r in pivot..m {
                if rows[r].get(perm[pos]) {
                    found = Some((pos, r));
                    break 'scan;
                }
            }
        }
        let (pos, r) = found?;
        perm.swap(pivot, pos);
        rows.swap(pivot, r);
        let pivot_row = rows[pivot].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != pivot && row.get(perm[pivot]) {
                row.xor_assign(&pivot_row);
            }
        }
    }
    let remainder = rows
        .iter()
        .map(|row| {
            let mut out = BitVec::zeros(n_cols - m);
            for (t, &col) in perm[m..].iter().enumerate() {
                if row.get(col) {
                    out.set(t, true);
                }
            }
            out
        })
        .collect();
    Some((perm, remainder))
}

/// Two-stage reduction of a full-rank self-orthogonal M x N matrix
/// (N > 2M) into encoder form: H ~ [I | P] under a column permutation,
/// then P ~ [I | Q] under a further permutation of its own columns.
pub fn encoder_structure(h: &SparseBinMat) -> Result<EncoderStructure> {
    if let Some((first, second)) = h.first_odd_overlap() {
        return Err(Error::NotSelfOrthogonal { first, second });
    }
    let m = h.n_rows();
    let n = h.n_cols();
    if n <= 2 * m {
        return Err(Error::InvalidArgument(format!(
            "need more than twice as many columns as rows, got {m} x {n}"
        )));
    }
    let rank = h.rank();
    if rank != m {
        return Err(Error::RankDeficient { rank, rows: m });
    }

    let mut dense: Vec<BitVec> = (0..m).map(|r| h.dense_row(r)).collect();
    let (perm1, p_rows) = reduce_to_identity(&mut dense, n)
        .expect("full-rank matrix always reduces");

    // second stage: P itself has full row rank (I + P P^T = 0 from
    // self-orthogonality), so it reduces to [I | Q]
    let mut p_work = p_rows.clone();
    let (perm2, q_rows) = reduce_to_identity(&mut p_work, n - m)
        .expect("remainder block of a self-orthogonal matrix has full row rank");

    let column_permutation: Vec<usize> = (0..m)
        .map(|j| perm1[j])
        .chain(perm2.iter().map(|&t| perm1[m + t]))
        .collect();

    // P with columns in second-stage order, matching column_permutation
    let p_sparse: Vec<Vec<usize>> = p_rows
        .iter()
        .map(|row| {
            (0..n - m)
                .filter(|&t| row.get(perm2[t]))
                .collect::<Vec<usize>>()
        })
        .collect();
    let p = SparseBinMat::new(n - m, p_sparse)?;
    let q_sparse: Vec<Vec<usize>> = q_rows.iter().map(|row| row.to_indices()).collect();
    let q = SparseBinMat::new(n - 2 * m, q_sparse)?;

    // gate list: fan Q out of the message register, split phases, fan P
    // out of the pivot register; qubit indices follow reduced positions.
    let mut gates = Vec::new();
    for k in 0..q.n_cols() {
        for (row, cols) in q.rows().enumerate() {
            if cols.binary_search(&k).is_ok() {
                gates.push(Gate::ControlledNot {
                    control: 2 * m + k,
                    target: m + row,
                });
            }
        }
    }
    for qubit in 0..m {
        gates.push(Gate::Hadamard { qubit });
    }
    for (row, cols) in p.rows().enumerate() {
        for &t in cols {
            gates.push(Gate::ControlledNot {
                control: row,
                target: m + t,
            });
        }
    }

    Ok(EncoderStructure {
        column_permutation,
        p,
        q,
        gates,
    })
}
