//! Dense GF(2) vectors and matrices: rank, reduced row-echelon form, and
//! exhaustive enumeration of the ν-dimensional subspaces of F₂ᴷ.
//!
//! Subspace enumeration walks pivot-column sets in lexicographic order and,
//! within a pivot set, the free entries of the reduced row-echelon form as a
//! binary counter. Every subspace is visited exactly once, as its unique RREF
//! basis, in a deterministic order that can be partitioned by pivot set.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use std::fmt;

/// A vector over GF(2), packed into 64-bit words. Bit `i` lives in
/// `words[i / 64]` at position `i % 64`; bits at or beyond `len` are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Builds a vector from the indices of its set bits.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    /// Interprets the low `len` bits of `mask` as a vector (`len` ≤ 64).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "from_mask supports at most 64 bits");
        assert!(len == 64 || mask < (1u64 << len), "mask has bits beyond len");
        Self {
            len,
            words: vec![mask],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        if value {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    /// GF(2) addition.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Coordinate-wise union, used when accumulating supports.
    pub fn or_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn lowest_set_bit(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// The low 64 bits as a word (valid only when `len` ≤ 64).
    pub fn as_mask(&self) -> u64 {
        assert!(self.len <= 64, "as_mask requires len <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    /// Lexicographic comparison with coordinate 0 most significant.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter().zip(&other.words) {
            // Reversing makes bit 0 the most significant within the word.
            let ord = a.reverse_bits().cmp(&b.reverse_bits());
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A matrix over GF(2), stored as a list of equal-length rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: (0..rows).map(|_| BitVector::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// # Panics
    /// Panics if the rows do not all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        for row in &rows {
            assert_eq!(row.len(), cols, "row length does not match column count");
        }
        Self { cols, rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Stacks the rows of `self` on top of `other`.
    ///
    /// # Panics
    /// Panics if the column counts differ.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self { cols: self.cols, rows }
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        self.rref().n_rows()
    }

    /// The unique reduced row-echelon form with zero rows dropped. The row
    /// space is preserved.
    pub fn rref(&self) -> Self {
        let mut rows = self.rows.clone();
        let n_rows = rows.len();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(src) = (pivot_row..n_rows).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(pivot_row, src);
            let pivot = rows[pivot_row].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != pivot_row && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_row += 1;
            if pivot_row == n_rows {
                break;
            }
        }
        rows.truncate(pivot_row);
        Self { cols: self.cols, rows }
    }

    /// Union of the supports of all rows, as a vector.
    pub fn row_support(&self) -> BitVector {
        let mut support = BitVector::zeros(self.cols);
        for row in &self.rows {
            support.or_assign(row);
        }
        support
    }

    /// Rows compared lexicographically, top row most significant.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.rows.iter().zip(&other.rows) {
            let ord = a.lex_cmp(b);
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        self.rows.len().cmp(&other.rows.len())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}:", self.n_rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Number of ν-dimensional subspaces of F₂ᴷ, computed exactly in unbounded
/// integers as ∏(2ᴷ − 2ⁱ) / ∏(2^ν − 2ⁱ) over i < ν.
pub fn gaussian_binomial(k: usize, nu: usize) -> BigUint {
    if nu > k {
        return BigUint::from(0u32);
    }
    let one = BigUint::from(1u32);
    let mut numerator = one.clone();
    let mut denominator = one;
    for i in 0..nu {
        numerator *= (BigUint::from(1u32) << k) - (BigUint::from(1u32) << i);
        denominator *= (BigUint::from(1u32) << nu) - (BigUint::from(1u32) << i);
    }
    numerator / denominator
}

/// One reduced row-echelon profile: a set of pivot columns together with a
/// binary-counter assignment of the free entries. Profiles are in one-to-one
/// correspondence with the ν-dimensional subspaces of F₂ᴷ; a fixed pivot set
/// carries 2^(number of free positions) profiles.
#[derive(Clone, Debug)]
pub struct RrefProfile {
    ambient_dim: usize,
    pivot_columns: Vec<usize>,
    free_values: u64,
}

impl RrefProfile {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_columns
    }

    /// Free positions in canonical order: row-major, columns ascending.
    /// Entry (i, c) is free when c lies right of row i's pivot and is not
    /// itself a pivot column.
    pub fn free_positions(&self) -> Vec<(usize, usize)> {
        free_positions(self.ambient_dim, &self.pivot_columns)
    }

    /// Counter bit b holds the value of `free_positions()[b]`.
    pub fn free_values(&self) -> u64 {
        self.free_values
    }

    /// Expands the profile into its RREF basis matrix (ν × K).
    pub fn materialize(&self) -> BitMatrix {
        let nu = self.pivot_columns.len();
        let mut m = BitMatrix::zeros(nu, self.ambient_dim);
        for (i, &p) in self.pivot_columns.iter().enumerate() {
            m.set(i, p, true);
        }
        for (b, (i, c)) in self.free_positions().into_iter().enumerate() {
            if (self.free_values >> b) & 1 == 1 {
                m.set(i, c, true);
            }
        }
        m
    }

    /// Basis rows as masks (bit j = column j). Requires K ≤ 64.
    pub fn row_masks(&self) -> Vec<u64> {
        let mut rows: Vec<u64> = self
            .pivot_columns
            .iter()
            .map(|&p| {
                assert!(p < 64, "row_masks requires ambient dimension <= 64");
                1u64 << p
            })
            .collect();
        for (b, (i, c)) in self.free_positions().into_iter().enumerate() {
            if (self.free_values >> b) & 1 == 1 {
                rows[i] |= 1u64 << c;
            }
        }
        rows
    }
}

fn free_positions(ambient_dim: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut positions = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for c in (p + 1)..ambient_dim {
            if !pivots.contains(&c) {
                positions.push((i, c));
            }
        }
    }
    positions
}

/// All ν-subsets of {0, .., k−1} in lexicographic order.
pub(crate) fn pivot_sets(k: usize, nu: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if nu > k {
        return out;
    }
    let mut current: Vec<usize> = (0..nu).collect();
    loop {
        out.push(current.clone());
        // Advance to the next combination in lexicographic order.
        let mut i = nu;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] + (nu - i) < k {
                current[i] += 1;
                for j in i + 1..nu {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Streams every ν-dimensional subspace of F₂ᴷ exactly once, as an
/// [`RrefProfile`]. See [`enumerate_subspaces`].
#[derive(Debug)]
pub struct SubspaceIter {
    ambient_dim: usize,
    pivot_sets: Vec<Vec<usize>>,
    current_set: usize,
    counter: u64,
    counter_end: u64,
}

impl SubspaceIter {
    fn new(ambient_dim: usize, nu: usize) -> Self {
        let pivot_sets = pivot_sets(ambient_dim, nu);
        let counter_end = pivot_sets
            .first()
            .map(|p| 1u64 << free_positions(ambient_dim, p).len())
            .unwrap_or(0);
        Self {
            ambient_dim,
            pivot_sets,
            current_set: 0,
            counter: 0,
            counter_end,
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = RrefProfile;

    fn next(&mut self) -> Option<RrefProfile> {
        while self.current_set < self.pivot_sets.len() {
            if self.counter < self.counter_end {
                let profile = RrefProfile {
                    ambient_dim: self.ambient_dim,
                    pivot_columns: self.pivot_sets[self.current_set].clone(),
                    free_values: self.counter,
                };
                self.counter += 1;
                return Some(profile);
            }
            self.current_set += 1;
            if let Some(p) = self.pivot_sets.get(self.current_set) {
                self.counter = 0;
                self.counter_end = 1u64 << free_positions(self.ambient_dim, p).len();
            }
        }
        None
    }
}

/// Enumerates the ν-dimensional subspaces of F₂ᴷ, each exactly once as its
/// unique RREF basis. The total count is the Gaussian binomial [K choose ν]₂;
/// if that exceeds `budget` the call refuses up front.
pub fn enumerate_subspaces(k: usize, nu: usize, budget: u64) -> Result<SubspaceIter> {
    if nu > k {
        return Err(Error::InvalidParameter(format!(
            "subspace dimension {nu} exceeds ambient dimension {k}"
        )));
    }
    let count = gaussian_binomial(k, nu);
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            required: count,
            budget,
            unit: "subspaces",
        });
    }
    Ok(SubspaceIter::new(k, nu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix_from_strs(rows: &[&str]) -> BitMatrix {
        let cols = rows[0].len();
        BitMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| {
                    let indices: Vec<usize> = r
                        .bytes()
                        .enumerate()
                        .filter(|&(_, b)| b == b'1')
                        .map(|(i, _)| i)
                        .collect();
                    BitVector::from_indices(cols, &indices)
                })
                .collect(),
        )
    }

    #[test]
    fn rank_identity() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
    }

    #[test]
    fn rref_identity_is_identity() {
        let id = BitMatrix::identity(4);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_collapses_duplicate_rows() {
        let m = matrix_from_strs(&["101", "101"]);
        let r = m.rref();
        assert_eq!(r.n_rows(), 1);
        assert_eq!(r, matrix_from_strs(&["101"]));
    }

    #[test]
    fn rref_clears_above_pivots() {
        // Hand Gaussian elimination: {110, 011} -> {101, 011}.
        let m = matrix_from_strs(&["110", "011"]);
        assert_eq!(m.rref(), matrix_from_strs(&["101", "011"]));
    }

    #[test]
    fn rref_is_idempotent_and_rank_preserving() {
        let m = matrix_from_strs(&["1101", "0111", "1010", "0001"]);
        let r = m.rref();
        assert_eq!(r.rref(), r);
        assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn gaussian_binomial_small_values() {
        assert_eq!(gaussian_binomial(2, 1), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(3, 2), BigUint::from(7u32));
        assert_eq!(gaussian_binomial(4, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(10, 2), BigUint::from(174_251u32));
        assert_eq!(gaussian_binomial(5, 0), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(3, 5), BigUint::from(0u32));
    }

    #[test]
    fn enumerate_counts_match_gaussian_binomials() {
        for k in 0..=6 {
            for nu in 0..=k {
                let count = enumerate_subspaces(k, nu, 1 << 30).unwrap().count();
                assert_eq!(
                    BigUint::from(count),
                    gaussian_binomial(k, nu),
                    "count mismatch at K={k}, nu={nu}"
                );
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_subspaces(2, 1, 100).unwrap().count(), 3);
        assert_eq!(enumerate_subspaces(3, 2, 100).unwrap().count(), 7);
        assert_eq!(enumerate_subspaces(4, 2, 100).unwrap().count(), 35);
    }

    #[test]
    fn enumerate_budget_exceeded_reports_count() {
        let err = enumerate_subspaces(4, 2, 10).unwrap_err();
        match err {
            Error::BudgetExceeded { required, budget, .. } => {
                assert_eq!(required, BigUint::from(35u32));
                assert_eq!(budget, 10);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn yielded_bases_are_rref_and_distinct() {
        // Distinctness checked pairwise by the rank of the stacked matrix.
        for k in 1..=6usize {
            for nu in 0..=k {
                let bases: Vec<BitMatrix> = enumerate_subspaces(k, nu, 1 << 30)
                    .unwrap()
                    .map(|p| p.materialize())
                    .collect();
                for b in &bases {
                    assert_eq!(&b.rref(), b, "basis not in RREF (K={k}, nu={nu})");
                }
                for i in 0..bases.len() {
                    for j in i + 1..bases.len() {
                        let stacked_rank = bases[i].stack(&bases[j]).rank();
                        assert!(
                            stacked_rank > nu,
                            "bases {i} and {j} span the same subspace (K={k}, nu={nu})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn profile_row_masks_match_materialized_rows() {
        for profile in enumerate_subspaces(5, 3, 1 << 20).unwrap() {
            let matrix = profile.materialize();
            let masks = profile.row_masks();
            for (row, &mask) in matrix.rows().iter().zip(&masks) {
                assert_eq!(row.as_mask(), mask);
            }
        }
    }

    #[test]
    fn pivot_sets_are_lexicographic() {
        let sets = pivot_sets(4, 2);
        assert_eq!(
            sets,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
