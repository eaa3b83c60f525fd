//! Structured Gaussian elimination for sparse GF(2) systems `A·x = b`.
//!
//! The solver runs in three stages:
//!
//! 1. [`triangularize`]: diagonal extension. While some unused row has a
//!    single unresolved unknown, that unknown is resolved by the row (the
//!    row becomes its *anchor*). When no such row exists one unknown is
//!    inactivated as a *pivot* and extension resumes. Anchors form a lower
//!    triangular block over the resolved unknowns.
//! 2. [`reduce_to_a_prime`]: forward substitution through the anchors
//!    writes every resolved unknown as an XOR of pivots plus a constant.
//!    Substituting into the non-anchor rows leaves a small dense system
//!    `A'·p = b'` over the pivots alone.
//! 3. [`solve_pivots`] runs dense elimination on `A'` and
//!    [`back_substitute`] expands the pivot values to every unknown.
//!
//! `rank(A) = resolved + rank(A')`, so the system has a unique solution
//! exactly when `A'` has full column rank.

use std::collections::VecDeque;

use crate::binmat::{dense_gauss_solve, BinVector, DenseBinMatrix, SolveOutcome, SparseBinMatrix};
use crate::error::{Error, Result};

/// What a [`PivotSelector`] may inspect when extension stalls.
pub struct PivotView<'a> {
    active: &'a [bool],
    residual_degree: &'a [usize],
}

impl PivotView<'_> {
    /// Unknowns that are neither resolved nor already pivots.
    pub fn candidates(&self) -> impl Iterator<Item = usize> + '_ {
        self.active
            .iter()
            .enumerate()
            .filter_map(|(c, &a)| a.then_some(c))
    }

    /// Number of non-anchor rows containing column `c`.
    pub fn residual_degree(&self, c: usize) -> usize {
        self.residual_degree[c]
    }
}

/// Inactivation strategy. Must return one of `view.candidates()`.
pub trait PivotSelector: Sync {
    fn select(&self, view: &PivotView<'_>) -> usize;
}

/// Picks the candidate of largest residual degree, lowest index on ties.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxResidualDegree;

impl PivotSelector for MaxResidualDegree {
    fn select(&self, view: &PivotView<'_>) -> usize {
        let mut best = None;
        for c in view.candidates() {
            let d = view.residual_degree(c);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((c, d));
            }
        }
        best.expect("select called with no candidates").0
    }
}

/// Picks the lowest-index candidate. Useful as a baseline in experiments.
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstCandidate;

impl PivotSelector for FirstCandidate {
    fn select(&self, view: &PivotView<'_>) -> usize {
        view.candidates().next().expect("select called with no candidates")
    }
}

/// Block decomposition produced by diagonal extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangularization {
    /// `(column, anchor row)` in resolution order.
    pub resolved: Vec<(usize, usize)>,
    /// Inactivated columns in selection order.
    pub pivots: Vec<usize>,
    /// Rows that anchor no unknown; they become the rows of `A'`.
    pub remaining_rows: Vec<usize>,
}

impl Triangularization {
    /// Resolved columns followed by pivots.
    pub fn column_permutation(&self) -> Vec<usize> {
        self.resolved
            .iter()
            .map(|&(c, _)| c)
            .chain(self.pivots.iter().copied())
            .collect()
    }
}

pub fn triangularize(a: &SparseBinMatrix, selector: &dyn PivotSelector) -> Triangularization {
    let (rows, cols) = (a.rows(), a.cols());
    let mut row_count: Vec<usize> = a.row_weights();
    let mut residual_degree: Vec<usize> = a.column_weights();
    let mut active = vec![true; cols];
    let mut used = vec![false; rows];
    let mut remaining = cols;
    let mut queue: VecDeque<usize> = (0..rows).filter(|&r| row_count[r] == 1).collect();
    let mut resolved = Vec::with_capacity(cols);
    let mut pivots = Vec::new();

    while remaining > 0 {
        while let Some(r) = queue.pop_front() {
            if used[r] || row_count[r] != 1 {
                continue;
            }
            let c = *a
                .row(r)
                .iter()
                .find(|&&c| active[c])
                .expect("row count tracks active columns");
            active[c] = false;
            remaining -= 1;
            used[r] = true;
            resolved.push((c, r));
            for &c2 in a.row(r) {
                residual_degree[c2] -= 1;
            }
            for &r2 in a.col(c) {
                row_count[r2] -= 1;
                if !used[r2] && row_count[r2] == 1 {
                    queue.push_back(r2);
                }
            }
        }
        if remaining == 0 {
            break;
        }
        let p = selector.select(&PivotView {
            active: &active,
            residual_degree: &residual_degree,
        });
        assert!(active[p], "pivot selector returned an inactive column");
        active[p] = false;
        remaining -= 1;
        pivots.push(p);
        for &r in a.col(p) {
            row_count[r] -= 1;
            if !used[r] && row_count[r] == 1 {
                queue.push_back(r);
            }
        }
    }
    let remaining_rows = (0..rows).filter(|&r| !used[r]).collect();
    Triangularization {
        resolved,
        pivots,
        remaining_rows,
    }
}

/// Affine expression over the pivots: `pivots · mask + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotExpr {
    pub mask: BinVector,
    pub constant: bool,
}

/// The dense pivot system together with the substitution ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Expression of each resolved unknown, aligned with
    /// [`Triangularization::resolved`].
    pub ledger: Vec<PivotExpr>,
    pub a_prime: DenseBinMatrix,
    pub rhs: BinVector,
}

pub fn reduce_to_a_prime(a: &SparseBinMatrix, b: &BinVector, tri: &Triangularization) -> Reduction {
    let np = tri.pivots.len();
    let mut expr: Vec<Option<PivotExpr>> = vec![None; a.cols()];
    for (i, &p) in tri.pivots.iter().enumerate() {
        expr[p] = Some(PivotExpr {
            mask: BinVector::unit(np, i),
            constant: false,
        });
    }
    let combine = |row: &[usize], skip: Option<usize>, expr: &[Option<PivotExpr>], start: bool| {
        let mut mask = BinVector::zeros(np);
        let mut constant = start;
        for &c in row {
            if Some(c) == skip {
                continue;
            }
            let e = expr[c]
                .as_ref()
                .expect("anchor rows only reference earlier unknowns");
            mask.xor_assign(&e.mask);
            constant ^= e.constant;
        }
        PivotExpr { mask, constant }
    };
    let mut ledger = Vec::with_capacity(tri.resolved.len());
    for &(c, r) in &tri.resolved {
        let e = combine(a.row(r), Some(c), &expr, b.get(r));
        expr[c] = Some(e.clone());
        ledger.push(e);
    }
    let mut a_prime = DenseBinMatrix::zeros(tri.remaining_rows.len(), np);
    let mut rhs = BinVector::zeros(tri.remaining_rows.len());
    for (i, &r) in tri.remaining_rows.iter().enumerate() {
        let e = combine(a.row(r), None, &expr, b.get(r));
        a_prime.row_words_mut(i).copy_from_slice(e.mask.words());
        rhs.set(i, e.constant);
    }
    Reduction {
        ledger,
        a_prime,
        rhs,
    }
}

/// Outcome of the dense stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PivotSolution {
    Solved(BinVector),
    RankDeficient { rank: usize },
}

pub fn solve_pivots(a_prime: &DenseBinMatrix, rhs: &BinVector) -> Result<PivotSolution> {
    if a_prime.cols() == 0 {
        if !rhs.is_zero() {
            return Err(Error::Inconsistent("residual equation 0 = 1".into()));
        }
        return Ok(PivotSolution::Solved(BinVector::zeros(0)));
    }
    match dense_gauss_solve(a_prime, std::slice::from_ref(rhs))? {
        SolveOutcome::Unique(mut x) => Ok(PivotSolution::Solved(x.remove(0))),
        SolveOutcome::RankDeficient { rank, .. } => Ok(PivotSolution::RankDeficient { rank }),
        SolveOutcome::Inconsistent { .. } => Err(Error::Inconsistent(
            "pivot system has no solution".into(),
        )),
    }
}

/// Expands pivot values into a full assignment and re-checks `A·x = b`.
pub fn back_substitute(
    a: &SparseBinMatrix,
    b: &BinVector,
    tri: &Triangularization,
    reduction: &Reduction,
    pivot_values: &BinVector,
) -> Result<BinVector> {
    let mut x = BinVector::zeros(a.cols());
    for (i, &p) in tri.pivots.iter().enumerate() {
        x.set(p, pivot_values.get(i));
    }
    for (&(c, _), e) in tri.resolved.iter().zip(&reduction.ledger) {
        x.set(c, e.constant ^ e.mask.dot(pivot_values));
    }
    if a.mul_vec(&x)? != *b {
        return Err(Error::Internal(
            "back-substituted solution violates the system".into(),
        ));
    }
    Ok(x)
}

/// Sizes recorded by one structured solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub system_rows: usize,
    pub system_cols: usize,
    pub resolved: usize,
    pub pivots: usize,
    pub a_prime_rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuredOutcome {
    Solved(BinVector),
    RankDeficient { rank: usize },
}

/// Runs all stages on `A·x = b`.
pub fn solve_structured(
    a: &SparseBinMatrix,
    b: &BinVector,
    selector: &dyn PivotSelector,
) -> Result<(StructuredOutcome, SolverStats)> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let tri = triangularize(a, selector);
    let reduction = reduce_to_a_prime(a, b, &tri);
    let stats = SolverStats {
        system_rows: a.rows(),
        system_cols: a.cols(),
        resolved: tri.resolved.len(),
        pivots: tri.pivots.len(),
        a_prime_rows: reduction.a_prime.rows(),
    };
    let outcome = match solve_pivots(&reduction.a_prime, &reduction.rhs)? {
        PivotSolution::Solved(p) => {
            StructuredOutcome::Solved(back_substitute(a, b, &tri, &reduction, &p)?)
        }
        PivotSolution::RankDeficient { rank } => StructuredOutcome::RankDeficient {
            rank: tri.resolved.len() + rank,
        },
    };
    Ok((outcome, stats))
}
