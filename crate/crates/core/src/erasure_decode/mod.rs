//! Decoders for LDPC codes on the binary erasure channel.
//!
//! Erasure decoding amounts to solving `H_E · x_E = H_K · x_K` for the
//! erased bits `x_E`, where `H_E` and `H_K` are the columns of `H` at the
//! erased and known positions. Four decoders are provided:
//!
//! * [`peel_decode`]: iterative (message passing) decoding, which stalls on
//!   stopping sets;
//! * [`ml_decode`]: maximum likelihood decoding through structured Gaussian
//!   elimination (see [`structured`]);
//! * [`hybrid_decode`]: peeling first, then ML on the residual stopping set;
//! * [`oracle_decode`]: plain dense elimination on `H_E`, used as ground
//!   truth in tests.
//!
//! Punctured positions are always treated as erased.

pub mod structured;

use std::fmt;

use crate::binmat::{dense_gauss_solve, BinVector, SolveOutcome, SparseBinMatrix};
use crate::error::{Error, Result};
use crate::ldpc::LdpcCode;

pub use structured::{
    back_substitute, reduce_to_a_prime, solve_pivots, solve_structured, triangularize,
    FirstCandidate, MaxResidualDegree, PivotExpr, PivotSelector, PivotSolution, PivotView,
    Reduction, SolverStats, StructuredOutcome, Triangularization,
};

/// Channel output: the values at known positions plus the erased set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    n: usize,
    known: BinVector,
    erased: Vec<usize>,
}

impl ReceivedWord {
    /// `known` lists the values of the non-erased positions in ascending
    /// position order.
    pub fn new(n: usize, known: BinVector, mut erased: Vec<usize>) -> Result<Self> {
        erased.sort_unstable();
        erased.dedup();
        if let Some(&bad) = erased.iter().find(|&&p| p >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        if known.len() + erased.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} known values and {} erasures for length {n}",
                known.len(),
                erased.len()
            )));
        }
        Ok(ReceivedWord { n, known, erased })
    }

    /// Erases `erased` from a full word.
    pub fn from_word(word: &BinVector, erased: &[usize]) -> Result<Self> {
        let n = word.len();
        let mut mask = vec![false; n];
        for &p in erased {
            if p >= n {
                return Err(Error::IndexOutOfRange { index: p, len: n });
            }
            mask[p] = true;
        }
        Ok(Self::from_mask(word, &mask))
    }

    /// Erases every position where `mask` is set.
    pub fn from_mask(word: &BinVector, mask: &[bool]) -> Self {
        assert_eq!(word.len(), mask.len());
        let erased: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        let known = BinVector::from_bools((0..mask.len()).filter(|&i| !mask[i]).map(|i| word.get(i)));
        ReceivedWord {
            n: word.len(),
            known,
            erased,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Erased positions, ascending.
    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    pub fn known_values(&self) -> &BinVector {
        &self.known
    }

    /// Full-length word with erased positions set to zero, and the erasure mask.
    pub fn expand(&self) -> (BinVector, Vec<bool>) {
        let mut mask = vec![false; self.n];
        for &p in &self.erased {
            mask[p] = true;
        }
        let mut word = BinVector::zeros(self.n);
        let mut next = 0;
        for (i, &erased) in mask.iter().enumerate() {
            if !erased {
                word.set(i, self.known.get(next));
                next += 1;
            }
        }
        (word, mask)
    }

    /// The same word with `positions` erased as well.
    pub fn with_erased(&self, positions: &[usize]) -> Result<Self> {
        if positions.iter().all(|p| self.erased.binary_search(p).is_ok()) {
            return Ok(self.clone());
        }
        let (word, mut mask) = self.expand();
        for &p in positions {
            if p >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    len: self.n,
                });
            }
            mask[p] = true;
        }
        Ok(Self::from_mask(&word, &mask))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    Success,
    /// Peeling stopped on a non-empty stopping set.
    ItStall,
    /// The erased columns of `H` are linearly dependent.
    RankDeficient,
}

impl DecodeStatus {
    pub fn is_success(self) -> bool {
        self == DecodeStatus::Success
    }
}

impl fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecodeStatus::Success => "success",
            DecodeStatus::ItStall => "it-stall",
            DecodeStatus::RankDeficient => "rank-deficient",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeStats {
    pub erasures: usize,
    /// Unknowns resolved without inactivation (peeling or diagonal extension).
    pub peeled: usize,
    /// Columns of `A'`.
    pub pivots: usize,
    /// Rows of `A'`, i.e. equations handed to dense elimination.
    pub ge_dim: usize,
    /// Dimensions of the system given to the structured solver.
    pub system_rows: usize,
    pub system_cols: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Full codeword on success.
    pub recovered: Option<BinVector>,
    /// Unresolved positions when peeling stalls.
    pub residual: Vec<usize>,
    /// Rank of `H_E` when it is deficient.
    pub rank: Option<usize>,
    pub stats: DecodeStats,
}

impl DecodeResult {
    fn success(word: BinVector, stats: DecodeStats) -> Self {
        DecodeResult {
            status: DecodeStatus::Success,
            recovered: Some(word),
            residual: Vec::new(),
            rank: None,
            stats,
        }
    }

    fn rank_deficient(rank: usize, stats: DecodeStats) -> Self {
        DecodeResult {
            status: DecodeStatus::RankDeficient,
            recovered: None,
            residual: Vec::new(),
            rank: Some(rank),
            stats,
        }
    }

    pub fn is_success(&self) -> bool {
        self.status.is_success()
    }

    /// `trial,status,erasures,peeled,pivots,ge_dim`
    pub fn csv_line(&self, trial: u64) -> String {
        format!(
            "{trial},{},{},{},{},{}",
            self.status,
            self.stats.erasures,
            self.stats.peeled,
            self.stats.pivots,
            self.stats.ge_dim
        )
    }
}

pub const STATS_CSV_HEADER: &str = "trial,status,erasures,peeled,pivots,ge_dim";

fn effective_word(code: &LdpcCode, word: &ReceivedWord) -> Result<ReceivedWord> {
    if word.n() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "received word of length {} for a code of length {}",
            word.n(),
            code.n()
        )));
    }
    word.with_erased(code.punctured())
}

/// Splits `H` into the erased columns and the syndrome of the known part.
pub fn split_by_erasure(code: &LdpcCode, word: &ReceivedWord) -> Result<(SparseBinMatrix, BinVector)> {
    let word = effective_word(code, word)?;
    let (values, _) = word.expand();
    let syndrome = code.h().mul_vec(&values)?;
    let h_erased = code.h().submatrix_cols(word.erased())?;
    Ok((h_erased, syndrome))
}

fn no_erasures(code: &LdpcCode, word: &ReceivedWord) -> Result<DecodeResult> {
    let (values, _) = word.expand();
    if !code.is_codeword(&values) {
        return Err(Error::Inconsistent(
            "fully received word is not a codeword".into(),
        ));
    }
    Ok(DecodeResult::success(values, DecodeStats::default()))
}

struct PeelState {
    values: BinVector,
    unresolved: Vec<bool>,
    /// Per-row XOR of all values assigned so far.
    acc: BinVector,
    peeled: usize,
}

fn peel(h: &SparseBinMatrix, values: BinVector, erased: &[bool]) -> Result<PeelState> {
    let mut values = values;
    let mut unresolved = erased.to_vec();
    let mut count = vec![0usize; h.rows()];
    let mut acc = BinVector::zeros(h.rows());
    let mut queue = Vec::new();
    for r in 0..h.rows() {
        let mut bit = false;
        for &c in h.row(r) {
            if unresolved[c] {
                count[r] += 1;
            } else {
                bit ^= values.get(c);
            }
        }
        acc.set(r, bit);
        match count[r] {
            0 if bit => {
                return Err(Error::Inconsistent(format!("check {r} fails on known bits")))
            }
            1 => queue.push(r),
            _ => {}
        }
    }
    let mut peeled = 0;
    while let Some(r) = queue.pop() {
        if count[r] != 1 {
            continue;
        }
        let c = *h
            .row(r)
            .iter()
            .find(|&&c| unresolved[c])
            .expect("count tracks unresolved columns");
        let v = acc.get(r);
        values.set(c, v);
        unresolved[c] = false;
        peeled += 1;
        for &r2 in h.col(c) {
            if v {
                acc.flip(r2);
            }
            count[r2] -= 1;
            match count[r2] {
                0 if acc.get(r2) => {
                    return Err(Error::Inconsistent(format!(
                        "check {r2} forces bit {c} to both values"
                    )))
                }
                1 => queue.push(r2),
                _ => {}
            }
        }
    }
    Ok(PeelState {
        values,
        unresolved,
        acc,
        peeled,
    })
}

/// Iterative erasure decoding. On a stall the residual positions form a
/// stopping set of `H`.
pub fn peel_decode(code: &LdpcCode, word: &ReceivedWord) -> Result<DecodeResult> {
    let word = effective_word(code, word)?;
    if word.erased().is_empty() {
        return no_erasures(code, &word);
    }
    let (values, mask) = word.expand();
    let state = peel(code.h(), values, &mask)?;
    let residual: Vec<usize> = (0..code.n()).filter(|&i| state.unresolved[i]).collect();
    let stats = DecodeStats {
        erasures: word.erased().len(),
        peeled: state.peeled,
        ..DecodeStats::default()
    };
    if residual.is_empty() {
        return Ok(DecodeResult::success(state.values, stats));
    }
    Ok(DecodeResult {
        status: DecodeStatus::ItStall,
        recovered: None,
        residual,
        rank: None,
        stats,
    })
}

/// True when every row of `h` meeting `set` meets it at least twice.
pub fn is_stopping_set(h: &SparseBinMatrix, set: &[usize]) -> bool {
    let mut member = vec![false; h.cols()];
    for &c in set {
        member[c] = true;
    }
    (0..h.rows()).all(|r| {
        let hits = h.row(r).iter().filter(|&&c| member[c]).count();
        hits != 1
    })
}

fn fill(values: &mut BinVector, positions: &[usize], solution: &BinVector) {
    for (i, &p) in positions.iter().enumerate() {
        values.set(p, solution.get(i));
    }
}

/// Maximum likelihood decoding with the default pivot selector.
pub fn ml_decode(code: &LdpcCode, word: &ReceivedWord) -> Result<DecodeResult> {
    ml_decode_with(code, word, &MaxResidualDegree)
}

pub fn ml_decode_with(
    code: &LdpcCode,
    word: &ReceivedWord,
    selector: &dyn PivotSelector,
) -> Result<DecodeResult> {
    let word = effective_word(code, word)?;
    if word.erased().is_empty() {
        return no_erasures(code, &word);
    }
    let (values, _) = word.expand();
    let syndrome = code.h().mul_vec(&values)?;
    let h_erased = code.h().submatrix_cols(word.erased())?;
    let (outcome, s) = solve_structured(&h_erased, &syndrome, selector)?;
    let stats = DecodeStats {
        erasures: word.erased().len(),
        peeled: s.resolved,
        pivots: s.pivots,
        ge_dim: s.a_prime_rows,
        system_rows: s.system_rows,
        system_cols: s.system_cols,
    };
    Ok(match outcome {
        StructuredOutcome::Solved(x) => {
            let mut values = values;
            fill(&mut values, word.erased(), &x);
            DecodeResult::success(values, stats)
        }
        StructuredOutcome::RankDeficient { rank } => DecodeResult::rank_deficient(rank, stats),
    })
}

/// Peeling first; on a stall, ML decoding of the residual stopping set
/// against the syndrome left by peeling.
pub fn hybrid_decode(code: &LdpcCode, word: &ReceivedWord) -> Result<DecodeResult> {
    let word = effective_word(code, word)?;
    if word.erased().is_empty() {
        return no_erasures(code, &word);
    }
    let (values, mask) = word.expand();
    let state = peel(code.h(), values, &mask)?;
    let residual: Vec<usize> = (0..code.n()).filter(|&i| state.unresolved[i]).collect();
    let mut stats = DecodeStats {
        erasures: word.erased().len(),
        peeled: state.peeled,
        ..DecodeStats::default()
    };
    if residual.is_empty() {
        return Ok(DecodeResult::success(state.values, stats));
    }
    let sub = code.h().submatrix_cols(&residual)?;
    let (outcome, s) = solve_structured(&sub, &state.acc, &MaxResidualDegree)?;
    stats.peeled += s.resolved;
    stats.pivots = s.pivots;
    stats.ge_dim = s.a_prime_rows;
    stats.system_rows = s.system_rows;
    stats.system_cols = s.system_cols;
    Ok(match outcome {
        StructuredOutcome::Solved(x) => {
            let mut values = state.values;
            fill(&mut values, &residual, &x);
            DecodeResult::success(values, stats)
        }
        StructuredOutcome::RankDeficient { rank } => {
            DecodeResult::rank_deficient(state.peeled + rank, stats)
        }
    })
}

/// Dense Gaussian elimination over all erased columns.
pub fn oracle_decode(code: &LdpcCode, word: &ReceivedWord) -> Result<DecodeResult> {
    let word = effective_word(code, word)?;
    if word.erased().is_empty() {
        return no_erasures(code, &word);
    }
    let (mut values, _) = word.expand();
    let syndrome = code.h().mul_vec(&values)?;
    let h_erased = code.h().submatrix_cols(word.erased())?.to_dense();
    let stats = DecodeStats {
        erasures: word.erased().len(),
        pivots: h_erased.cols(),
        ge_dim: h_erased.rows(),
        system_rows: h_erased.rows(),
        system_cols: h_erased.cols(),
        ..DecodeStats::default()
    };
    match dense_gauss_solve(&h_erased, std::slice::from_ref(&syndrome))? {
        SolveOutcome::Unique(x) => {
            fill(&mut values, word.erased(), &x[0]);
            Ok(DecodeResult::success(values, stats))
        }
        SolveOutcome::RankDeficient { rank, .. } => Ok(DecodeResult::rank_deficient(rank, stats)),
        SolveOutcome::Inconsistent { .. } => Err(Error::Inconsistent(
            "erased columns cannot reproduce the syndrome".into(),
        )),
    }
}
