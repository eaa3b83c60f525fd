//! GF(2) linear algebra kernel.
//!
//! Dense matrices are stored as bit-packed rows of `u64` words, which makes
//! row XOR (the only operation Gaussian elimination needs) a word loop.
//! Sparse matrices keep both row and column adjacency so that peeling style
//! algorithms can ask "which rows touch this column" in constant time.
//!
//! Everything is 0-indexed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinVector {
    len: usize,
    words: Vec<u64>,
}

impl BinVector {
    pub fn zeros(len: usize) -> Self {
        BinVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from 0/1 values; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Vector with ones at the given positions.
    pub fn from_support(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            v.flip(i);
        }
        v
    }

    pub fn unit(len: usize, index: usize) -> Self {
        Self::from_support(len, &[index])
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = rng.gen();
        }
        v.clear_tail();
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// `self ^= other`. Panics on a length mismatch.
    pub fn xor_assign(&mut self, other: &BinVector) {
        assert_eq!(self.len, other.len, "BinVector XOR length mismatch");
        xor_words(&mut self.words, &other.words);
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BinVector) -> bool {
        assert_eq!(self.len, other.len, "BinVector dot length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Selects the listed positions, in list order.
    pub fn select(&self, indices: &[usize]) -> BinVector {
        let mut out = BinVector::zeros(indices.len());
        for (j, &i) in indices.iter().enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinVector(")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, ")")
    }
}

/// Row-major bit-packed dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseBinMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

/// Result of [`dense_gauss_solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// One solution vector (length `cols`) per right-hand side.
    Unique(Vec<BinVector>),
    /// The coefficient matrix has rank below its column count.
    RankDeficient {
        rank: usize,
        free_columns: Vec<usize>,
    },
    /// Full column rank, but some right-hand side is not in the column span.
    Inconsistent { rank: usize },
}

impl DenseBinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        DenseBinMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. All rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(r, c, true);
                }
            }
        }
        Ok(m)
    }

    pub fn from_row_vectors(cols: usize, rows: &[BinVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has length {}, expected {cols}",
                    v.len()
                )));
            }
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        Ok(m)
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            let v = BinVector::random(cols, rng);
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of `u64` words backing each row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        (self.words[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        let w = &mut self.words[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        self.words[r * self.stride + c / WORD_BITS] ^= 1u64 << (c % WORD_BITS);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.words[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BinVector {
        BinVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> BinVector {
        BinVector::from_bools((0..self.rows).map(|r| self.get(r, c)))
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    /// Row `dst` ^= row `src`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert!(src < self.rows && dst < self.rows);
        if src == dst {
            self.row_words_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.words.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.words.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        xor_words(b, a);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (x, y) = self.words.split_at_mut(hi * s);
        x[lo * s..(lo + 1) * s].swap_with_slice(&mut y[..s]);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> DenseBinMatrix {
        let mut t = DenseBinMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Gauss-Jordan reduction in place, visiting candidate pivot columns in
    /// `column_order`. For each column the first remaining row with a one
    /// becomes the pivot row. Pivot `i` ends up in row `i`; the returned
    /// vector lists the pivot column of each of those rows, so its length
    /// is the rank of the visited columns.
    pub fn row_reduce(&mut self, column_order: &[usize]) -> Vec<usize> {
        let mut pivots = Vec::new();
        for &c in column_order {
            if pivots.len() == self.rows {
                break;
            }
            let top = pivots.len();
            let word = c / WORD_BITS;
            let mask = 1u64 << (c % WORD_BITS);
            let Some(p) = (top..self.rows).find(|&r| self.words[r * self.stride + word] & mask != 0)
            else {
                continue;
            };
            self.swap_rows(top, p);
            for r in 0..self.rows {
                if r != top && self.words[r * self.stride + word] & mask != 0 {
                    self.xor_row_into(top, r);
                }
            }
            pivots.push(c);
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let order: Vec<usize> = (0..self.cols).collect();
        m.row_reduce(&order).len()
    }

    /// Inverse of a square matrix.
    pub fn invert(&self) -> Result<DenseBinMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = DenseBinMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in self.row(r).iter_ones() {
                aug.set(r, c, true);
            }
            aug.set(r, n + r, true);
        }
        let order: Vec<usize> = (0..n).collect();
        let rank = aug.row_reduce(&order).len();
        if rank < n {
            return Err(Error::Singular { rank, dim: n });
        }
        Ok(DenseBinMatrix::from_fn(n, n, |r, c| aug.get(r, n + c)))
    }

    pub fn mul(&self, other: &DenseBinMatrix) -> Result<DenseBinMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DenseBinMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let ones: Vec<usize> = BinVectorRef::new(self.cols, self.row_words(r))
                .iter_ones()
                .collect();
            let s = out.stride;
            for k in ones {
                let src = other.row_words(k);
                xor_words(&mut out.words[r * s..(r + 1) * s], src);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BinVector) -> Result<BinVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = BinVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Rows in `indices` order.
    pub fn submatrix_rows(&self, indices: &[usize]) -> Result<DenseBinMatrix> {
        let mut out = DenseBinMatrix::zeros(indices.len(), self.cols);
        for (j, &i) in indices.iter().enumerate() {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.rows,
                });
            }
            out.row_words_mut(j).copy_from_slice(self.row_words(i));
        }
        Ok(out)
    }

    /// Columns in `indices` order.
    pub fn submatrix_cols(&self, indices: &[usize]) -> Result<DenseBinMatrix> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.cols,
            });
        }
        let mut out = DenseBinMatrix::zeros(self.rows, indices.len());
        for r in 0..self.rows {
            for (j, &c) in indices.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn to_sparse(&self) -> SparseBinMatrix {
        let row_lists = (0..self.rows)
            .map(|r| BinVectorRef::new(self.cols, self.row_words(r)).iter_ones().collect())
            .collect();
        SparseBinMatrix::from_sorted_rows(self.rows, self.cols, row_lists)
    }
}

impl fmt::Debug for DenseBinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseBinMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Text form: a `rows cols` header followed by one line of `0`/`1` per row.
impl fmt::Display for DenseBinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        let mut line = String::with_capacity(self.cols);
        for r in 0..self.rows {
            line.clear();
            for c in 0..self.cols {
                line.push(if self.get(r, c) { '1' } else { '0' });
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for DenseBinMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_matrix_lines(&mut s.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }
}

/// Parses the matrix text format from an iterator of `(line_number, line)`.
pub(crate) fn parse_matrix_lines<'a, I>(lines: &mut I) -> Result<DenseBinMatrix>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `rows cols` header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            line: hline,
            msg: format!("bad dimension: {e}"),
        })?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: "expected `rows cols`".into(),
        });
    };
    let mut m = DenseBinMatrix::zeros(rows, cols);
    for r in 0..rows {
        let (ln, line) = lines.next().ok_or(Error::Parse {
            line: hline + r + 1,
            msg: format!("expected {rows} rows, found {r}"),
        })?;
        let line = line.trim_end();
        if line.len() != cols {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected {cols} columns, found {}", line.len()),
            });
        }
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(r, c, true),
                other => {
                    return Err(Error::Parse {
                        line: ln,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
    }
    Ok(m)
}

/// Borrowed view used to iterate set bits of a packed row.
struct BinVectorRef<'a> {
    len: usize,
    words: &'a [u64],
}

impl<'a> BinVectorRef<'a> {
    fn new(len: usize, words: &'a [u64]) -> Self {
        BinVectorRef { len, words }
    }

    fn iter_ones(&self) -> impl Iterator<Item = usize> + 'a {
        let len = self.len;
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| {
                let mut w = w;
                std::iter::from_fn(move || {
                    if w == 0 {
                        None
                    } else {
                        let tz = w.trailing_zeros() as usize;
                        w &= w - 1;
                        Some(wi * WORD_BITS + tz)
                    }
                })
            })
            .take_while(move |&i| i < len)
    }
}

/// Solves `m · x = b` for every right-hand side `b` in `rhs` by dense
/// Gauss-Jordan elimination. The input matrix is left untouched.
pub fn dense_gauss_solve(m: &DenseBinMatrix, rhs: &[BinVector]) -> Result<SolveOutcome> {
    if let Some(bad) = rhs.iter().find(|b| b.len() != m.rows) {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a matrix with {} rows",
            bad.len(),
            m.rows
        )));
    }
    let cols = m.cols;
    let width = cols + rhs.len();
    let mut aug = DenseBinMatrix::zeros(m.rows, width);
    for r in 0..m.rows {
        aug.row_words_mut(r)[..m.stride].copy_from_slice(m.row_words(r));
        for (j, b) in rhs.iter().enumerate() {
            if b.get(r) {
                aug.set(r, cols + j, true);
            }
        }
    }
    let order: Vec<usize> = (0..cols).collect();
    let pivots = aug.row_reduce(&order);
    let rank = pivots.len();
    if rank < cols {
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free_columns = (0..cols).filter(|&c| !is_pivot[c]).collect();
        return Ok(SolveOutcome::RankDeficient { rank, free_columns });
    }
    for r in rank..m.rows {
        if (0..rhs.len()).any(|j| aug.get(r, cols + j)) {
            return Ok(SolveOutcome::Inconsistent { rank });
        }
    }
    let solutions = (0..rhs.len())
        .map(|j| BinVector::from_bools((0..cols).map(|c| aug.get(c, cols + j))))
        .collect();
    Ok(SolveOutcome::Unique(solutions))
}

/// Sparse GF(2) matrix with row and column adjacency kept in sync.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseBinMatrix {
    rows: usize,
    cols: usize,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
}

impl SparseBinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseBinMatrix {
            rows,
            cols,
            row_adj: vec![Vec::new(); rows],
            col_adj: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from per-row column lists. Lists may be unsorted;
    /// duplicates and out-of-range columns are rejected.
    pub fn from_row_lists(rows: usize, cols: usize, mut lists: Vec<Vec<usize>>) -> Result<Self> {
        if lists.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "{} row lists for {rows} rows",
                lists.len()
            )));
        }
        for (r, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(&bad) = list.iter().find(|&&c| c >= cols) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    len: cols,
                });
            }
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate entry in row {r}"
                )));
            }
        }
        Ok(Self::from_sorted_rows(rows, cols, lists))
    }

    pub(crate) fn from_sorted_rows(rows: usize, cols: usize, row_adj: Vec<Vec<usize>>) -> Self {
        let mut col_adj = vec![Vec::new(); cols];
        for (r, list) in row_adj.iter().enumerate() {
            for &c in list {
                col_adj[c].push(r);
            }
        }
        SparseBinMatrix {
            rows,
            cols,
            row_adj,
            col_adj,
        }
    }

    pub fn from_dense(m: &DenseBinMatrix) -> Self {
        m.to_sparse()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column indices of row `r`, ascending.
    #[inline]
    pub fn row(&self, r: usize) -> &[usize] {
        &self.row_adj[r]
    }

    /// Row indices of column `c`, ascending.
    #[inline]
    pub fn col(&self, c: usize) -> &[usize] {
        &self.col_adj[c]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row_adj[r].binary_search(&c).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> DenseBinMatrix {
        let mut m = DenseBinMatrix::zeros(self.rows, self.cols);
        for (r, list) in self.row_adj.iter().enumerate() {
            for &c in list {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &BinVector) -> Result<BinVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(BinVector::from_bools(
            self.row_adj
                .iter()
                .map(|list| list.iter().filter(|&&c| v.get(c)).count() % 2 == 1),
        ))
    }

    /// Columns in `indices` order.
    pub fn submatrix_cols(&self, indices: &[usize]) -> Result<SparseBinMatrix> {
        let mut new_index = vec![usize::MAX; self.cols];
        for (j, &c) in indices.iter().enumerate() {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: self.cols,
                });
            }
            new_index[c] = j;
        }
        let mut rows = vec![Vec::new(); self.rows];
        for (j, &c) in indices.iter().enumerate() {
            for &r in &self.col_adj[c] {
                rows[r].push(j);
            }
        }
        for list in rows.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_rows(self.rows, indices.len(), rows))
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.row_adj.iter().map(Vec::len).collect()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        self.col_adj.iter().map(Vec::len).collect()
    }
}

impl fmt::Debug for SparseBinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SparseBinMatrix {}x{} ({} ones): {:?}",
            self.rows,
            self.cols,
            self.nnz(),
            self.row_adj
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&str]) -> DenseBinMatrix {
        let rows: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| (b == b'1') as u8).collect())
            .collect();
        DenseBinMatrix::from_rows(&rows).unwrap()
    }

    fn v(bits: &str) -> BinVector {
        BinVector::from_bits(&bits.bytes().map(|b| (b == b'1') as u8).collect::<Vec<_>>())
    }

    #[test]
    fn identity_solve() {
        let out = dense_gauss_solve(&DenseBinMatrix::identity(3), &[v("101")]).unwrap();
        assert_eq!(out, SolveOutcome::Unique(vec![v("101")]));
    }

    #[test]
    fn duplicate_rows_are_rank_deficient() {
        let out = dense_gauss_solve(&m(&["11", "11"]), &[v("00")]).unwrap();
        assert_eq!(
            out,
            SolveOutcome::RankDeficient {
                rank: 1,
                free_columns: vec![1]
            }
        );
    }

    #[test]
    fn hamming_unit_columns_zero_syndrome() {
        // columns 1, 2 and 4 of the Hamming(7,4) check matrix are e1, e2, e3
        let h = m(&["1010101", "0110011", "0001111"]);
        let sub = h.submatrix_cols(&[0, 1, 3]).unwrap();
        assert_eq!(sub, DenseBinMatrix::identity(3));
        let out = dense_gauss_solve(&sub, &[v("000")]).unwrap();
        assert_eq!(out, SolveOutcome::Unique(vec![v("000")]));
    }

    #[test]
    fn inconsistent_overdetermined_system() {
        let out = dense_gauss_solve(&m(&["1", "1"]), &[v("10")]).unwrap();
        assert_eq!(out, SolveOutcome::Inconsistent { rank: 1 });
    }

    #[test]
    fn solve_rejects_bad_rhs() {
        assert!(matches!(
            dense_gauss_solve(&DenseBinMatrix::identity(3), &[v("10")]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_does_not_mutate_input() {
        let a = m(&["110", "011", "111"]);
        let before = a.clone();
        dense_gauss_solve(&a, &[v("101")]).unwrap();
        assert_eq!(a, before);
    }

    #[test]
    fn ranks() {
        assert_eq!(DenseBinMatrix::zeros(4, 4).rank(), 0);
        assert_eq!(DenseBinMatrix::identity(5).rank(), 5);
        assert_eq!(m(&["101", "011", "110"]).rank(), 2);
    }

    #[test]
    fn inverses() {
        let i = DenseBinMatrix::identity(6);
        assert_eq!(i.invert().unwrap(), i);
        let a = m(&["11", "01"]);
        assert_eq!(a.invert().unwrap(), a);
        assert_eq!(
            m(&["101", "011", "110"]).invert(),
            Err(Error::Singular { rank: 2, dim: 3 })
        );
        assert!(matches!(
            DenseBinMatrix::zeros(2, 3).invert(),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn random_full_rank_8x8_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = loop {
            let a = DenseBinMatrix::random(8, 8, &mut rng);
            if a.rank() == 8 {
                break a;
            }
        };
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), DenseBinMatrix::identity(8));
        assert_eq!(inv.mul(&a).unwrap(), DenseBinMatrix::identity(8));
    }

    #[test]
    fn products_and_selection() {
        let a = m(&["110", "011"]);
        assert_eq!(a.mul(&DenseBinMatrix::identity(3)).unwrap(), a);
        assert_eq!(a.mul_vec(&v("111")).unwrap(), v("00"));
        assert_eq!(a.to_sparse().mul_vec(&v("111")).unwrap(), v("00"));
        let i4 = DenseBinMatrix::identity(4);
        assert_eq!(i4.submatrix_rows(&[1, 3]).unwrap(), m(&["0100", "0001"]));
        assert_eq!(i4.submatrix_cols(&[3, 0]).unwrap(), m(&["01", "00", "00", "10"]));
        assert!(matches!(
            i4.submatrix_rows(&[4]),
            Err(Error::IndexOutOfRange { index: 4, len: 4 })
        ));
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn text_format_round_trip() {
        let a = m(&["1010", "0111", "0000"]);
        let text = a.to_string();
        assert_eq!(text, "3 4\n1010\n0111\n0000\n");
        assert_eq!(text.parse::<DenseBinMatrix>().unwrap(), a);
        assert!(matches!(
            "2 2\n10\n1".parse::<DenseBinMatrix>(),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            "1 2\n1x".parse::<DenseBinMatrix>(),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!("".parse::<DenseBinMatrix>().is_err());
    }

    #[test]
    fn sparse_rejects_duplicates() {
        assert!(SparseBinMatrix::from_row_lists(1, 3, vec![vec![1, 1]]).is_err());
        assert!(SparseBinMatrix::from_row_lists(1, 3, vec![vec![3]]).is_err());
        let s = SparseBinMatrix::from_row_lists(2, 3, vec![vec![2, 0], vec![1]]).unwrap();
        assert_eq!(s.row(0), &[0, 2]);
        assert_eq!(s.col(2), &[0]);
        assert_eq!(s.nnz(), 3);
    }

    #[test]
    fn vector_ops() {
        let mut a = v("1100101");
        assert_eq!(a.weight(), 4);
        assert_eq!(a.iter_ones().collect::<Vec<_>>(), vec![0, 1, 4, 6]);
        assert!(a.dot(&v("1000001")) == false);
        a.xor_assign(&v("1111111"));
        assert_eq!(a, v("0011010"));
        assert_eq!(a.select(&[4, 2]), v("01"));
    }

    #[test]
    #[should_panic]
    fn vector_xor_is_length_checked() {
        let mut a = v("10");
        a.xor_assign(&v("101"));
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = DenseBinMatrix> {
        (1..=max, 1..=max, any::<u64>()).prop_map(|(r, c, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            DenseBinMatrix::random(r, c, &mut rng)
        })
    }

    proptest! {
        #[test]
        fn invert_iff_full_rank(dim in 1usize..=64, seed in any::<u64>(), sparse in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Sparse draws make singular matrices common enough to exercise both arms.
            let a = if sparse {
                DenseBinMatrix::from_fn(dim, dim, |_, _| rng.gen_bool((2.0 / dim as f64).min(1.0)))
            } else {
                DenseBinMatrix::random(dim, dim, &mut rng)
            };
            match a.invert() {
                Ok(inv) => {
                    prop_assert_eq!(a.rank(), dim);
                    prop_assert_eq!(a.mul(&inv).unwrap(), DenseBinMatrix::identity(dim));
                }
                Err(Error::Singular { rank, .. }) => {
                    prop_assert!(rank < dim);
                    prop_assert_eq!(a.rank(), rank);
                }
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn solve_agrees_with_inverse(dim in 1usize..=40, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = DenseBinMatrix::random(dim, dim, &mut rng);
            let b = BinVector::random(dim, &mut rng);
            let out = dense_gauss_solve(&a, std::slice::from_ref(&b)).unwrap();
            match a.invert() {
                Ok(inv) => {
                    let x = inv.mul_vec(&b).unwrap();
                    prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
                    prop_assert_eq!(out, SolveOutcome::Unique(vec![x]));
                }
                Err(_) => {
                    let is_deficient = matches!(out, SolveOutcome::RankDeficient { .. });
                    prop_assert!(is_deficient);
                }
            }
        }

        #[test]
        fn sparse_dense_round_trip(a in arb_matrix(70)) {
            let s = a.to_sparse();
            for c in 0..s.cols() {
                for &r in s.col(c) {
                    prop_assert!(s.row(r).contains(&c));
                }
            }
            prop_assert_eq!(s.to_dense(), a);
        }

        #[test]
        fn row_xor_is_involutive(a in arb_matrix(20), i in 0usize..20, j in 0usize..20) {
            let (i, j) = (i % a.rows(), j % a.rows());
            prop_assume!(i != j);
            let mut b = a.clone();
            b.xor_row_into(i, j);
            prop_assert_eq!((b.rows(), b.cols()), (a.rows(), a.cols()));
            b.xor_row_into(i, j);
            prop_assert_eq!(b, a);
        }

        #[test]
        fn rank_is_bounded_and_transpose_invariant(a in arb_matrix(70)) {
            let r = a.rank();
            prop_assert!(r <= a.rows().min(a.cols()));
            prop_assert_eq!(a.transpose().rank(), r);
        }
    }
}
