//! LDPC code constructions and encoders.
//!
//! Four families are provided: regular ensembles sampled with the
//! configuration model, generalized irregular repeat-accumulate (GeIRA)
//! codes whose parity part is an accumulator with feedback taps, lifted
//! protographs with punctured base columns, and codes read from an arbitrary
//! parity-check matrix. Rate-compatible families are derived by puncturing
//! parity positions of a mother code.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binmat::{parse_matrix_lines, BinVector, DenseBinMatrix, SparseBinMatrix};
use crate::error::{Error, Result};

/// How codewords are produced from information bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Encoder {
    /// `H = [H_u | H_p]` with `H_p` the accumulator defined by `taps`.
    /// Information occupies positions `0..k`, parity `k..n`.
    RepeatAccumulate { taps: Vec<usize> },
    /// Reduced row echelon form of `H`. Row `i` of `coeffs` gives parity bit
    /// `parity[i]` as a combination of the information bits. Free positions
    /// beyond the first `k` (rank-deficient `H`) are held at zero.
    Generic {
        info: Vec<usize>,
        parity: Vec<usize>,
        coeffs: DenseBinMatrix,
    },
}

/// A binary LDPC code with an optional puncturing pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdpcCode {
    n: usize,
    k: usize,
    h: SparseBinMatrix,
    punctured: Vec<usize>,
    encoder: Encoder,
}

impl LdpcCode {
    /// Wraps a parity-check matrix with the design dimension `k = n - rows`.
    pub fn from_parity_check(h: SparseBinMatrix) -> Result<Self> {
        let k = h.cols().checked_sub(h.rows()).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "parity-check matrix has more rows ({}) than columns ({})",
                h.rows(),
                h.cols()
            ))
        })?;
        Self::with_dimension(h, k, Vec::new())
    }

    /// Wraps a parity-check matrix with an explicit dimension and puncturing
    /// pattern, deriving a generic encoder. Punctured columns are preferred
    /// as parity positions.
    pub fn with_dimension(h: SparseBinMatrix, k: usize, punctured: Vec<usize>) -> Result<Self> {
        let n = h.cols();
        let punctured = normalize_positions(n, punctured)?;
        if let Some(c) = (0..n).find(|&c| h.col(c).is_empty()) {
            return Err(Error::InvalidParameter(format!("column {c} of H is empty")));
        }
        let encoder = generic_encoder(&h, k, &punctured)?;
        let code = LdpcCode {
            n,
            k,
            h,
            punctured,
            encoder,
        };
        code.check_transmitted()?;
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> &SparseBinMatrix {
        &self.h
    }

    pub fn encoder(&self) -> &Encoder {
        &self.encoder
    }

    /// Punctured positions, ascending.
    pub fn punctured(&self) -> &[usize] {
        &self.punctured
    }

    pub fn is_punctured(&self, pos: usize) -> bool {
        self.punctured.binary_search(&pos).is_ok()
    }

    /// Positions sent over the channel, ascending.
    pub fn transmitted_positions(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.is_punctured(i)).collect()
    }

    pub fn transmitted_count(&self) -> usize {
        self.n - self.punctured.len()
    }

    /// `k / transmitted`.
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.transmitted_count() as f64
    }

    /// Positions carrying the information bits, in input order.
    pub fn systematic_positions(&self) -> Vec<usize> {
        match &self.encoder {
            Encoder::RepeatAccumulate { .. } => (0..self.k).collect(),
            Encoder::Generic { info, .. } => info.clone(),
        }
    }

    /// Positions that are neither systematic nor punctured, ascending.
    pub fn transmitted_parity_positions(&self) -> Vec<usize> {
        let mut systematic = vec![false; self.n];
        for p in self.systematic_positions() {
            systematic[p] = true;
        }
        (0..self.n)
            .filter(|&i| !systematic[i] && !self.is_punctured(i))
            .collect()
    }

    pub fn mean_row_weight(&self) -> f64 {
        self.h.nnz() as f64 / self.h.rows() as f64
    }

    pub fn syndrome(&self, c: &BinVector) -> Result<BinVector> {
        self.h.mul_vec(c)
    }

    pub fn is_codeword(&self, c: &BinVector) -> bool {
        self.syndrome(c).map(|s| s.is_zero()).unwrap_or(false)
    }

    /// Systematic encoding of `u` (length `k`) into a length-`n` codeword.
    pub fn encode(&self, u: &BinVector) -> Result<BinVector> {
        if u.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for k = {}",
                u.len(),
                self.k
            )));
        }
        let mut c = BinVector::zeros(self.n);
        match &self.encoder {
            Encoder::RepeatAccumulate { taps } => {
                for i in u.iter_ones() {
                    c.set(i, true);
                }
                let m = self.n - self.k;
                for r in 0..m {
                    let mut bit = self.h.row(r).iter().take_while(|&&j| j < self.k).fold(
                        false,
                        |acc, &j| acc ^ u.get(j),
                    );
                    for &t in taps.iter().filter(|&&t| t > 0 && t <= r) {
                        bit ^= c.get(self.k + r - t);
                    }
                    c.set(self.k + r, bit);
                }
            }
            Encoder::Generic {
                info,
                parity,
                coeffs,
            } => {
                for (t, &pos) in info.iter().enumerate() {
                    c.set(pos, u.get(t));
                }
                let p = coeffs.mul_vec(u)?;
                for (i, &pos) in parity.iter().enumerate() {
                    c.set(pos, p.get(i));
                }
            }
        }
        Ok(c)
    }

    /// Adds `positions` to the punctured set. Systematic positions are
    /// rejected, as is any pattern leaving fewer than `k` transmitted bits.
    pub fn puncture(&self, positions: &[usize]) -> Result<LdpcCode> {
        let systematic: BTreeSet<usize> = self.systematic_positions().into_iter().collect();
        if let Some(p) = positions.iter().find(|p| systematic.contains(p)) {
            return Err(Error::InvalidParameter(format!(
                "position {p} carries an information bit"
            )));
        }
        let mut all = self.punctured.clone();
        all.extend_from_slice(positions);
        let punctured = normalize_positions(self.n, all)?;
        let code = LdpcCode {
            punctured,
            ..self.clone()
        };
        code.check_transmitted()?;
        Ok(code)
    }

    fn check_transmitted(&self) -> Result<()> {
        if self.transmitted_count() < self.k {
            return Err(Error::InvalidParameter(format!(
                "only {} transmitted positions for k = {}",
                self.transmitted_count(),
                self.k
            )));
        }
        Ok(())
    }
}

fn normalize_positions(n: usize, mut positions: Vec<usize>) -> Result<Vec<usize>> {
    if let Some(&bad) = positions.iter().find(|&&p| p >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    positions.sort_unstable();
    positions.dedup();
    Ok(positions)
}

fn generic_encoder(h: &SparseBinMatrix, k: usize, punctured: &[usize]) -> Result<Encoder> {
    let n = h.cols();
    let mut dense = h.to_dense();
    let mut preferred = vec![false; n];
    let mut order: Vec<usize> = punctured.to_vec();
    for &p in punctured {
        preferred[p] = true;
    }
    order.extend((0..n).rev().filter(|&c| !preferred[c]));
    let parity = dense.row_reduce(&order);
    let mut is_parity = vec![false; n];
    for &p in &parity {
        is_parity[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_parity[c]).collect();
    if free.len() < k {
        return Err(Error::InvalidParameter(format!(
            "H has rank {} so the code dimension {} is below k = {k}",
            parity.len(),
            free.len()
        )));
    }
    let info = free[..k].to_vec();
    let coeffs = DenseBinMatrix::from_fn(parity.len(), k, |i, t| dense.get(i, info[t]));
    Ok(Encoder::Generic {
        info,
        parity,
        coeffs,
    })
}

/// Samples a `(dv, dc)`-regular code of length `n`.
///
/// Sockets are matched uniformly at random, parallel edges are then removed
/// with degree-preserving edge swaps, and a bounded number of further swaps
/// tries to break length-4 cycles.
pub fn sample_regular(dv: usize, dc: usize, n: usize, seed: u64) -> Result<LdpcCode> {
    if dv < 1 || dc < 2 || n == 0 || (n * dv) % dc != 0 {
        return Err(Error::InvalidParameter(format!(
            "no ({dv},{dc})-regular graph with {n} variable nodes"
        )));
    }
    let m = n * dv / dc;
    if dc > n || dv > m || m >= n {
        return Err(Error::InvalidParameter(format!(
            "degree pair ({dv},{dc}) is infeasible for n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sockets: Vec<usize> = (0..m).flat_map(|c| std::iter::repeat_n(c, dc)).collect();
    sockets.shuffle(&mut rng);
    let mut graph = Bipartite::new(n, m);
    for (e, &c) in sockets.iter().enumerate() {
        graph.var[e / dv].push(c);
        graph.chk[c].push(e / dv);
    }
    graph.remove_parallel_edges(&mut rng)?;
    graph.break_four_cycles(&mut rng, 4);
    let rows = graph.chk.into_iter().map(|mut r| {
        r.sort_unstable();
        r
    });
    let h = SparseBinMatrix::from_sorted_rows(m, n, rows.collect());
    LdpcCode::from_parity_check(h)
}

struct Bipartite {
    var: Vec<Vec<usize>>,
    chk: Vec<Vec<usize>>,
}

impl Bipartite {
    fn new(n: usize, m: usize) -> Self {
        Bipartite {
            var: vec![Vec::new(); n],
            chk: vec![Vec::new(); m],
        }
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.var
            .iter()
            .enumerate()
            .flat_map(|(v, cs)| cs.iter().map(move |&c| (v, c)))
            .collect()
    }

    /// Rewires edges (v1,c1),(v2,c2) into (v1,c2),(v2,c1).
    fn swap(&mut self, (v1, c1): (usize, usize), (v2, c2): (usize, usize)) {
        let replace = |list: &mut Vec<usize>, old: usize, new: usize| {
            let i = list.iter().position(|&x| x == old).expect("edge present");
            list[i] = new;
        };
        replace(&mut self.var[v1], c1, c2);
        replace(&mut self.var[v2], c2, c1);
        replace(&mut self.chk[c1], v1, v2);
        replace(&mut self.chk[c2], v2, v1);
    }

    fn multiplicity(&self, v: usize, c: usize) -> usize {
        self.var[v].iter().filter(|&&x| x == c).count()
    }

    fn remove_parallel_edges(&mut self, rng: &mut impl Rng) -> Result<()> {
        let budget = 200 * self.edges().len() + 1000;
        let mut attempts = 0;
        loop {
            let dup = self.edges().into_iter().find(|&(v, c)| self.multiplicity(v, c) > 1);
            let Some((v, c)) = dup else {
                return Ok(());
            };
            loop {
                attempts += 1;
                if attempts > budget {
                    return Err(Error::InvalidParameter(
                        "could not remove parallel edges".into(),
                    ));
                }
                let v2 = rng.gen_range(0..self.var.len());
                let c2 = self.var[v2][rng.gen_range(0..self.var[v2].len())];
                if v2 != v && c2 != c && !self.var[v].contains(&c2) && !self.var[v2].contains(&c)
                {
                    self.swap((v, c), (v2, c2));
                    break;
                }
            }
        }
    }

    fn in_four_cycle(&self, v: usize, c: usize) -> bool {
        self.chk[c].iter().filter(|&&w| w != v).any(|&w| {
            self.var[v]
                .iter()
                .filter(|&&d| d != c)
                .any(|d| self.var[w].contains(d))
        })
    }

    /// Swaps never create a 4-cycle, so the cycle count is non-increasing.
    fn break_four_cycles(&mut self, rng: &mut impl Rng, passes: usize) {
        const TRIES_PER_EDGE: usize = 20;
        for _ in 0..passes {
            let cyclic: Vec<(usize, usize)> = self
                .edges()
                .into_iter()
                .filter(|&(v, c)| self.in_four_cycle(v, c))
                .collect();
            if cyclic.is_empty() {
                return;
            }
            for (v, c) in cyclic {
                if !self.var[v].contains(&c) || !self.in_four_cycle(v, c) {
                    continue;
                }
                for _ in 0..TRIES_PER_EDGE {
                    let v2 = rng.gen_range(0..self.var.len());
                    let c2 = self.var[v2][rng.gen_range(0..self.var[v2].len())];
                    if v2 == v
                        || c2 == c
                        || self.var[v].contains(&c2)
                        || self.var[v2].contains(&c)
                    {
                        continue;
                    }
                    self.swap((v, c), (v2, c2));
                    if self.in_four_cycle(v, c2) || self.in_four_cycle(v2, c) {
                        self.swap((v, c2), (v2, c));
                    } else {
                        break;
                    }
                }
            }
        }
    }
}

/// Parameters of a generalized irregular repeat-accumulate code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeiraSpec {
    pub k: usize,
    pub n: usize,
    /// Exponents of the accumulator feedback polynomial; must contain 0.
    pub taps: Vec<usize>,
    /// Weight of every information column of `H`.
    pub column_weight: usize,
    pub seed: u64,
}

impl GeiraSpec {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n <= self.k {
            return Err(Error::InvalidParameter(format!(
                "need 0 < k < n, got k = {}, n = {}",
                self.k, self.n
            )));
        }
        let m = self.n - self.k;
        if !self.taps.contains(&0) {
            return Err(Error::InvalidParameter(
                "feedback taps must include 0".into(),
            ));
        }
        if let Some(&t) = self.taps.iter().find(|&&t| t >= m) {
            return Err(Error::InvalidParameter(format!(
                "tap {t} exceeds n - k - 1 = {}",
                m - 1
            )));
        }
        if self.column_weight < 2 || self.column_weight > m {
            return Err(Error::InvalidParameter(format!(
                "column weight {} outside [2, {m}]",
                self.column_weight
            )));
        }
        Ok(())
    }

    /// Number of ones the accumulator contributes to `H`.
    fn accumulator_weight(&self) -> usize {
        let m = self.n - self.k;
        let mut taps = self.taps.clone();
        taps.sort_unstable();
        taps.dedup();
        taps.iter().map(|&t| m.saturating_sub(t)).sum()
    }

    /// Mean row weight of the resulting `H`.
    pub fn mean_check_degree(&self) -> f64 {
        (self.k * self.column_weight + self.accumulator_weight()) as f64 / (self.n - self.k) as f64
    }
}

/// Smallest information column weight for which a GeIRA code with these
/// dimensions and taps reaches a mean check degree of at least `target`.
pub fn column_weight_for_check_degree(k: usize, n: usize, taps: &[usize], target: f64) -> usize {
    let mut spec = GeiraSpec {
        k,
        n,
        taps: taps.to_vec(),
        column_weight: 2,
        seed: 0,
    };
    while spec.mean_check_degree() < target {
        spec.column_weight += 1;
    }
    spec.column_weight
}

/// Builds `H = [H_u | H_p]`. Row `r` of `H_p` has ones at parity columns
/// `r - t` for every tap `t <= r`; each information column gets
/// `column_weight` distinct rows chosen among the currently least loaded.
pub fn build_geira(spec: &GeiraSpec) -> Result<LdpcCode> {
    spec.validate()?;
    let (k, n) = (spec.k, spec.n);
    let m = n - k;
    let mut taps = spec.taps.clone();
    taps.sort_unstable();
    taps.dedup();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut load = vec![0usize; m];
    let mut order: Vec<usize> = (0..m).collect();
    for j in 0..k {
        order.shuffle(&mut rng);
        order.sort_by_key(|&r| load[r]);
        for &r in &order[..spec.column_weight] {
            rows[r].push(j);
            load[r] += 1;
        }
    }
    for (r, row) in rows.iter_mut().enumerate() {
        for &t in &taps {
            if t <= r {
                row.push(k + r - t);
            }
        }
        row.sort_unstable();
    }
    let h = SparseBinMatrix::from_sorted_rows(m, n, rows);
    Ok(LdpcCode {
        n,
        k,
        h,
        punctured: Vec::new(),
        encoder: Encoder::RepeatAccumulate { taps },
    })
}

/// Base matrix of a protograph ensemble. Entries are edge multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Protograph {
    base: Vec<Vec<u32>>,
    punctured: Vec<usize>,
    lift: usize,
}

impl Protograph {
    pub fn new(base: Vec<Vec<u32>>, punctured: Vec<usize>, lift: usize) -> Result<Self> {
        let rows = base.len();
        let cols = base.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 || base.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter(
                "base matrix must be a non-empty rectangle".into(),
            ));
        }
        let punctured = normalize_positions(cols, punctured)?;
        let p = Protograph {
            base,
            punctured,
            lift,
        };
        let rate = p.design_rate();
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "design rate {rate} outside (0, 1)"
            )));
        }
        Ok(p)
    }

    /// The rate-1/2 accumulate-repeat-accumulate protograph; base column 0
    /// is punctured.
    pub fn ara(lift: usize) -> Self {
        Protograph::new(
            vec![
                vec![2, 1, 1, 1, 0],
                vec![1, 2, 1, 1, 0],
                vec![2, 0, 0, 0, 1],
            ],
            vec![0],
            lift,
        )
        .expect("ARA base matrix is valid")
    }

    pub fn base(&self) -> &[Vec<u32>] {
        &self.base
    }

    pub fn base_rows(&self) -> usize {
        self.base.len()
    }

    pub fn base_cols(&self) -> usize {
        self.base[0].len()
    }

    pub fn punctured_cols(&self) -> &[usize] {
        &self.punctured
    }

    pub fn is_punctured(&self, col: usize) -> bool {
        self.punctured.contains(&col)
    }

    pub fn lift(&self) -> usize {
        self.lift
    }

    /// `(cols - rows) / transmitted cols`.
    pub fn design_rate(&self) -> f64 {
        let transmitted = self.base_cols() - self.punctured.len();
        (self.base_cols() as f64 - self.base_rows() as f64) / transmitted as f64
    }
}

/// Expands each base entry `m` into the sum of `m` circulant permutation
/// matrices with distinct seed-driven shifts.
pub fn lift_protograph(p: &Protograph, seed: u64) -> Result<LdpcCode> {
    let z = p.lift;
    let max_entry = p.base.iter().flatten().copied().max().unwrap_or(0) as usize;
    if z == 0 || max_entry > z {
        return Err(Error::InvalidParameter(format!(
            "lift factor {z} is smaller than multiplicity {max_entry}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (br, bc) = (p.base_rows(), p.base_cols());
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); br * z];
    for (i, base_row) in p.base.iter().enumerate() {
        for (j, &mult) in base_row.iter().enumerate() {
            if mult == 0 {
                continue;
            }
            let shifts = rand::seq::index::sample(&mut rng, z, mult as usize);
            for s in shifts.iter() {
                for a in 0..z {
                    rows[i * z + a].push(j * z + (a + s) % z);
                }
            }
        }
    }
    for r in rows.iter_mut() {
        r.sort_unstable();
    }
    let h = SparseBinMatrix::from_sorted_rows(br * z, bc * z, rows);
    let punctured = p
        .punctured
        .iter()
        .flat_map(|&j| j * z..(j + 1) * z)
        .collect();
    LdpcCode::with_dimension(h, (bc - br) * z, punctured)
}

/// A code rate `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rate {
    pub num: usize,
    pub den: usize,
}

impl Rate {
    pub const fn new(num: usize, den: usize) -> Self {
        Rate { num, den }
    }

    /// `k / rate` rounded to the nearest integer, halves rounding up.
    pub fn transmitted_for(&self, k: usize) -> usize {
        (2 * k * self.den + self.num) / (2 * self.num)
    }
}

/// Derives a nested family of punctured codes from `mother`, one per rate.
///
/// Parity positions are punctured following a single priority order (the
/// bit-reversal permutation of the parity index), so every member is a
/// prefix-extension of the next: lower rates transmit a superset of the
/// positions of higher rates, and each prefix is spread evenly across the
/// parity block.
pub fn rate_family(mother: &LdpcCode, rates: &[Rate]) -> Result<Vec<LdpcCode>> {
    let parity = mother.transmitted_parity_positions();
    let order = bit_reversal_order(parity.len());
    rates
        .iter()
        .map(|rate| {
            if rate.num == 0 || rate.num > rate.den {
                return Err(Error::InvalidParameter(format!(
                    "rate {}/{} outside (0, 1]",
                    rate.num, rate.den
                )));
            }
            let target = rate.transmitted_for(mother.k());
            let available = mother.transmitted_count();
            if target > available {
                return Err(Error::InvalidParameter(format!(
                    "rate {}/{} needs {target} transmitted bits, mother sends {available}",
                    rate.num, rate.den
                )));
            }
            let drop: Vec<usize> = order[..available - target]
                .iter()
                .map(|&i| parity[i])
                .collect();
            mother.puncture(&drop)
        })
        .collect()
}

/// Indices `0..len` ordered by their bit-reversed value.
fn bit_reversal_order(len: usize) -> Vec<usize> {
    if len <= 1 {
        return (0..len).collect();
    }
    let bits = usize::BITS - (len - 1).leading_zeros();
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by_key(|&i| i.reverse_bits() >> (usize::BITS - bits));
    order
}

/// Code file: `ldpc n k`, an optional `punctured: i,j,...` line, then `H`
/// in the matrix text format.
impl fmt::Display for LdpcCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ldpc {} {}", self.n, self.k)?;
        if !self.punctured.is_empty() {
            let list: Vec<String> = self.punctured.iter().map(usize::to_string).collect();
            writeln!(f, "punctured: {}", list.join(","))?;
        }
        write!(f, "{}", self.h.to_dense())
    }
}

impl FromStr for LdpcCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty())
            .peekable();
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty code file".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_err = |msg: &str| Error::Parse {
            line: hl,
            msg: msg.to_string(),
        };
        if fields.len() != 3 || fields[0] != "ldpc" {
            return Err(parse_err("expected `ldpc n k`"));
        }
        let n: usize = fields[1].parse().map_err(|_| parse_err("bad n"))?;
        let k: usize = fields[2].parse().map_err(|_| parse_err("bad k"))?;
        let mut punctured = Vec::new();
        if let Some(&(pl, line)) = lines.peek() {
            if let Some(rest) = line.trim().strip_prefix("punctured:") {
                lines.next();
                for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    punctured.push(tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: pl,
                        msg: format!("bad punctured position {tok:?}"),
                    })?);
                }
            }
        }
        let h = parse_matrix_lines(&mut lines)?;
        if h.cols() != n {
            return Err(parse_err("matrix width differs from n"));
        }
        LdpcCode::with_dimension(h.to_sparse(), k, punctured)
    }
}
