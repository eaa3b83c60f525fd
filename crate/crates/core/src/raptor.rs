//! Fixed-rate systematic Raptor codes.
//!
//! The intermediate block `F = [D; D_s; D_h]` of `L = k + s + h` symbols is
//! constrained by an LDPC pre-code (`D_s = G_LDPC·D`) and a half-symbol
//! pre-code (`D_h = G_H·[D; D_s]`). Encoded symbol `i` is the XOR of the
//! intermediate symbols listed in its LT tuple. Encoding and decoding both
//! solve `A·F = [0; E]` where `A` stacks the pre-code constraints on top of
//! the LT rows of the selected ESIs.
//!
//! Symbols are single bits; wider payloads would repeat the same linear
//! algebra per bit plane.

use std::borrow::Cow;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_xoshiro::SplitMix64;

use crate::binmat::{dense_gauss_solve, BinVector, DenseBinMatrix, SolveOutcome, SparseBinMatrix};
use crate::erasure_decode::{solve_structured, MaxResidualDegree, SolverStats, StructuredOutcome};
use crate::error::{Error, Result};

/// Cap on the systematic seed search.
pub const SYSTEMATIC_SEARCH_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RaptorParams {
    pub k: usize,
    /// LDPC symbols.
    pub s: usize,
    /// Half symbols.
    pub h: usize,
    /// Weight of every half-symbol column, `ceil(h / 2)`.
    pub h_prime: usize,
    pub l: usize,
    pub n: usize,
    /// Seeds the LDPC pre-code.
    pub seed: u64,
    /// Seeds the LT tuple generator.
    pub systematic_seed: u64,
}

fn binomial(n: usize, r: usize) -> u128 {
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn is_prime(x: usize) -> bool {
    x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0)
}

impl RaptorParams {
    /// `X` is the smallest integer with `X(X-1) >= 2k`, `s` the smallest
    /// prime `>= ceil(0.01k) + X` and `h` the smallest integer with
    /// `C(h, ceil(h/2)) >= k + s`.
    pub fn derive(k: usize, n: usize, seed: u64) -> Result<Self> {
        if k < 4 {
            return Err(Error::InvalidParameter(format!("k = {k}, need k >= 4")));
        }
        if n < k {
            return Err(Error::InvalidParameter(format!("n = {n} is below k = {k}")));
        }
        let x = (1..).find(|&x: &usize| x * (x - 1) >= 2 * k).unwrap();
        let s = (k.div_ceil(100) + x..).find(|&p| is_prime(p)).unwrap();
        let h = (1..)
            .find(|&h: &usize| binomial(h, h.div_ceil(2)) >= (k + s) as u128)
            .unwrap();
        Ok(RaptorParams {
            k,
            s,
            h,
            h_prime: h.div_ceil(2),
            l: k + s + h,
            n,
            seed,
            systematic_seed: 0,
        })
    }
}

/// First `count` entries of weight `ceil(h/2)` in the reflected Gray
/// sequence `b ^ (b >> 1)`, `b = 0, 1, ...`. Bit `i` of a column is row `i`.
pub fn gray_half_columns(h: usize, count: usize) -> Result<Vec<u64>> {
    if h == 0 || h > 63 {
        return Err(Error::InvalidParameter(format!("h = {h} out of range")));
    }
    let weight = h.div_ceil(2) as u32;
    let available = binomial(h, weight as usize);
    if count as u128 > available {
        return Err(Error::InvalidParameter(format!(
            "{count} columns requested, only {available} Gray codes of weight {weight} on {h} bits"
        )));
    }
    Ok((0u64..1 << h)
        .map(|b| b ^ (b >> 1))
        .filter(|g| g.count_ones() == weight)
        .take(count)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtTuple {
    pub esi: u32,
    /// Sorted, distinct intermediate symbol indices.
    pub indices: Vec<usize>,
}

impl LtTuple {
    pub fn degree(&self) -> usize {
        self.indices.len()
    }
}

/// Maps an ESI to the intermediate symbols it combines.
pub trait TupleGenerator: Send + Sync + fmt::Debug {
    /// Number of intermediate symbols the generator draws from.
    fn symbols(&self) -> usize;
    fn tuple(&self, esi: u32, systematic_seed: u64) -> LtTuple;
}

/// Degree distribution as a cumulative table; entry `d - 1` is `P(degree <= d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    cdf: Vec<f64>,
}

impl DegreeProfile {
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidParameter("degree weights must be finite and non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidParameter("degree weights sum to zero".into()));
        }
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = weights
            .iter()
            .map(|w| {
                acc += w / total;
                acc
            })
            .collect();
        *cdf.last_mut().unwrap() = 1.0;
        Ok(DegreeProfile { cdf })
    }

    /// Robust soliton distribution on `1..=max`.
    pub fn robust_soliton(max: usize, c: f64, delta: f64) -> Result<Self> {
        if max == 0 {
            return Err(Error::InvalidParameter("empty degree range".into()));
        }
        let kf = max as f64;
        let r = c * (kf / delta).ln() * kf.sqrt();
        let spike = (kf / r).floor() as usize;
        let weights: Vec<f64> = (1..=max)
            .map(|d| {
                let ideal = if d == 1 { 1.0 / kf } else { 1.0 / (d * (d - 1)) as f64 };
                let tau = if d < spike {
                    r / (d as f64 * kf)
                } else if d == spike {
                    r * (r / delta).ln() / kf
                } else {
                    0.0
                };
                ideal + tau.max(0.0)
            })
            .collect();
        Self::from_weights(&weights)
    }

    pub fn max_degree(&self) -> usize {
        self.cdf.len()
    }

    pub fn probability(&self, d: usize) -> f64 {
        match d {
            0 => 0.0,
            1 => self.cdf[0],
            d if d <= self.cdf.len() => self.cdf[d - 1] - self.cdf[d - 2],
            _ => 0.0,
        }
    }

    /// Inverts the CDF at `u` in `[0, 1)`.
    pub fn sample(&self, u: f64) -> usize {
        self.cdf.partition_point(|&p| p <= u).min(self.cdf.len() - 1) + 1
    }
}

/// Default tuple generator: a SplitMix64 stream keyed on `(systematic seed,
/// ESI)` drives degree inversion and Floyd sampling of distinct indices.
#[derive(Debug, Clone)]
pub struct SplitMixTuples {
    l: usize,
    profile: DegreeProfile,
}

impl SplitMixTuples {
    pub fn new(l: usize, profile: DegreeProfile) -> Result<Self> {
        if profile.max_degree() > l {
            return Err(Error::InvalidParameter(format!(
                "maximum degree {} exceeds L = {l}",
                profile.max_degree()
            )));
        }
        Ok(SplitMixTuples { l, profile })
    }

    /// Robust soliton on `[1, L]` with `c = 0.1`, `delta = 0.5`.
    pub fn robust_soliton(l: usize) -> Self {
        let profile = DegreeProfile::robust_soliton(l, 0.1, 0.5).expect("L >= 1");
        SplitMixTuples { l, profile }
    }

    pub fn profile(&self) -> &DegreeProfile {
        &self.profile
    }
}

impl TupleGenerator for SplitMixTuples {
    fn symbols(&self) -> usize {
        self.l
    }

    fn tuple(&self, esi: u32, systematic_seed: u64) -> LtTuple {
        let key = systematic_seed ^ (esi as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
        let mut rng = SplitMix64::seed_from_u64(key);
        let d = self.profile.sample(rng.gen::<f64>());
        // Floyd's algorithm: uniform d-subset of 0..l
        let mut chosen = HashSet::with_capacity(d);
        for j in self.l - d..self.l {
            let t = rng.gen_range(0..=j);
            if !chosen.insert(t) {
                chosen.insert(j);
            }
        }
        let mut indices: Vec<usize> = chosen.into_iter().collect();
        indices.sort_unstable();
        LtTuple { esi, indices }
    }
}

/// A fixed-rate Raptor code with its pre-code and tuple generator.
#[derive(Debug, Clone)]
pub struct RaptorCode {
    params: RaptorParams,
    /// Rows of `G_LDPC` hit by each source column.
    ldpc_columns: Vec<[usize; 3]>,
    /// `G_H` columns over the first `k + s` intermediate symbols.
    half_columns: Vec<u64>,
    generator: Arc<dyn TupleGenerator>,
    /// Inverse of `A(1..k)` once the code is known to be systematic.
    systematic_inverse: Option<Arc<DenseBinMatrix>>,
    /// Tuple indices for ESIs `1..=n` under the installed systematic seed.
    tuple_cache: Option<Arc<Vec<Vec<usize>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RaptorOutcome {
    Recovered(BinVector),
    /// Fewer than `k` symbols arrived, so decoding cannot succeed.
    TooFewSymbols { received: usize, needed: usize },
    RankDeficient { rank: usize },
}

impl RaptorOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, RaptorOutcome::Recovered(_))
    }

    pub fn recovered(&self) -> Option<&BinVector> {
        match self {
            RaptorOutcome::Recovered(c) => Some(c),
            _ => None,
        }
    }
}

fn ldpc_columns(k: usize, s: usize, seed: u64) -> Vec<[usize; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(k);
    let mut cols = Vec::with_capacity(k);
    let distinct_possible = binomial(s, 3) >= k as u128;
    while cols.len() < k {
        let mut rows = rand::seq::index::sample(&mut rng, s, 3).into_vec();
        rows.sort_unstable();
        let col = [rows[0], rows[1], rows[2]];
        if seen.insert(col) || !distinct_possible {
            cols.push(col);
        }
    }
    cols
}

impl RaptorCode {
    /// Code with the default tuple generator. The code is not systematic
    /// until a valid systematic seed is installed.
    pub fn new(params: RaptorParams) -> Result<Self> {
        let generator = Arc::new(SplitMixTuples::robust_soliton(params.l));
        Self::with_generator(params, generator)
    }

    pub fn with_generator(params: RaptorParams, generator: Arc<dyn TupleGenerator>) -> Result<Self> {
        if params.k < 4
            || params.n < params.k
            || params.s < 3
            || params.l != params.k + params.s + params.h
            || params.h_prime != params.h.div_ceil(2)
        {
            return Err(Error::InvalidParameter(format!("inconsistent Raptor parameters {params:?}")));
        }
        if binomial(params.h, params.h_prime) < (params.k + params.s) as u128 {
            return Err(Error::InvalidParameter(format!(
                "h = {} leaves too few Gray columns for k + s = {}",
                params.h,
                params.k + params.s
            )));
        }
        if generator.symbols() != params.l {
            return Err(Error::InvalidParameter(format!(
                "tuple generator draws from {} symbols, L = {}",
                generator.symbols(),
                params.l
            )));
        }
        Ok(RaptorCode {
            params,
            ldpc_columns: ldpc_columns(params.k, params.s, params.seed),
            half_columns: gray_half_columns(params.h, params.k + params.s)?,
            generator,
            systematic_inverse: None,
            tuple_cache: None,
        })
    }

    /// Derives parameters, searches for a systematic seed and returns the
    /// ready-to-use code.
    pub fn systematic(k: usize, n: usize, seed: u64) -> Result<Self> {
        let code = Self::new(RaptorParams::derive(k, n, seed)?)?;
        code.into_systematic()
    }

    /// Searches systematic seeds upwards from 0 until `A(1..k)` is invertible.
    pub fn into_systematic(mut self) -> Result<Self> {
        for candidate in 0..SYSTEMATIC_SEARCH_CAP {
            self.params.systematic_seed = candidate;
            if let Ok(inv) = self.build_a(&self.systematic_esis())?.invert() {
                self.install(inv);
                return Ok(self);
            }
        }
        Err(Error::SeedSearchExhausted {
            attempts: SYSTEMATIC_SEARCH_CAP,
        })
    }

    /// Installs a known systematic seed, failing if `A(1..k)` is singular.
    pub fn with_systematic_seed(mut self, systematic_seed: u64) -> Result<Self> {
        self.params.systematic_seed = systematic_seed;
        self.systematic_inverse = None;
        self.tuple_cache = None;
        let a = self.build_a(&self.systematic_esis())?;
        match a.invert() {
            Ok(inv) => {
                self.install(inv);
                Ok(self)
            }
            Err(Error::Singular { rank, dim }) => Err(Error::InvalidParameter(format!(
                "systematic seed {systematic_seed} gives A(1..k) of rank {rank} < {dim}"
            ))),
            Err(e) => Err(e),
        }
    }

    pub fn params(&self) -> &RaptorParams {
        &self.params
    }

    pub fn is_systematic(&self) -> bool {
        self.systematic_inverse.is_some()
    }

    fn systematic_esis(&self) -> Vec<u32> {
        (1..=self.params.k as u32).collect()
    }

    fn install(&mut self, inverse: DenseBinMatrix) {
        self.systematic_inverse = Some(Arc::new(inverse));
        let seed = self.params.systematic_seed;
        let cache = (1..=self.params.n as u32)
            .map(|e| self.generator.tuple(e, seed).indices)
            .collect();
        self.tuple_cache = Some(Arc::new(cache));
    }

    pub fn lt_tuple(&self, esi: u32) -> LtTuple {
        match &self.tuple_cache {
            Some(cache) if esi >= 1 && esi as usize <= cache.len() => LtTuple {
                esi,
                indices: cache[esi as usize - 1].clone(),
            },
            _ => self.generator.tuple(esi, self.params.systematic_seed),
        }
    }

    fn tuple_indices(&self, esi: u32) -> Cow<'_, [usize]> {
        match &self.tuple_cache {
            Some(cache) => Cow::Borrowed(&cache[esi as usize - 1]),
            None => Cow::Owned(self.generator.tuple(esi, self.params.systematic_seed).indices),
        }
    }

    fn check_esis(&self, esis: &[u32]) -> Result<()> {
        let mut seen = HashSet::with_capacity(esis.len());
        for &e in esis {
            if e == 0 || e as usize > self.params.n {
                return Err(Error::IndexOutOfRange {
                    index: e as usize,
                    len: self.params.n,
                });
            }
            if !seen.insert(e) {
                return Err(Error::InvalidParameter(format!("ESI {e} repeated")));
            }
        }
        Ok(())
    }

    fn precode_rows(&self) -> Vec<Vec<usize>> {
        let RaptorParams { k, s, h, .. } = self.params;
        let mut rows: Vec<Vec<usize>> = (0..s + h).map(|_| Vec::new()).collect();
        for (c, col) in self.ldpc_columns.iter().enumerate() {
            for &r in col {
                rows[r].push(c);
            }
        }
        for (c, &g) in self.half_columns.iter().enumerate() {
            for r in 0..h {
                if g >> r & 1 == 1 {
                    rows[s + r].push(c);
                }
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            // identity blocks: I_s under the LDPC symbols, I_h under the half symbols
            row.push(k + i);
        }
        rows
    }

    fn a_rows(&self, esis: &[u32]) -> Result<Vec<Vec<usize>>> {
        self.check_esis(esis)?;
        let mut rows = self.precode_rows();
        rows.extend(esis.iter().map(|&e| self.tuple_indices(e).into_owned()));
        Ok(rows)
    }

    /// Encoding matrix for the given ESIs: `(s + h + r) x L`.
    pub fn build_a(&self, esis: &[u32]) -> Result<DenseBinMatrix> {
        let rows = self.a_rows(esis)?;
        let mut a = DenseBinMatrix::zeros(rows.len(), self.params.l);
        for (r, row) in rows.iter().enumerate() {
            for &c in row {
                a.set(r, c, true);
            }
        }
        Ok(a)
    }

    pub fn build_a_sparse(&self, esis: &[u32]) -> Result<SparseBinMatrix> {
        let rows = self.a_rows(esis)?;
        SparseBinMatrix::from_row_lists(rows.len(), self.params.l, rows)
    }

    /// `G_LDPC` as an `s x k` matrix.
    pub fn g_ldpc(&self) -> DenseBinMatrix {
        let mut g = DenseBinMatrix::zeros(self.params.s, self.params.k);
        for (c, col) in self.ldpc_columns.iter().enumerate() {
            for &r in col {
                g.set(r, c, true);
            }
        }
        g
    }

    /// `G_H` as an `h x (k + s)` matrix.
    pub fn g_half(&self) -> DenseBinMatrix {
        DenseBinMatrix::from_fn(self.params.h, self.params.k + self.params.s, |r, c| {
            self.half_columns[c] >> r & 1 == 1
        })
    }

    /// `G_LT` restricted to the given ESIs.
    pub fn g_lt(&self, esis: &[u32]) -> Result<DenseBinMatrix> {
        self.check_esis(esis)?;
        let mut g = DenseBinMatrix::zeros(esis.len(), self.params.l);
        for (r, &e) in esis.iter().enumerate() {
            for &c in self.tuple_indices(e).iter() {
                g.set(r, c, true);
            }
        }
        Ok(g)
    }

    /// `F = [D; G_LDPC·D; G_H·[D; D_s]]`.
    pub fn precode(&self, d: &BinVector) -> Result<BinVector> {
        let RaptorParams { k, s, h, l, .. } = self.params;
        if d.len() != k {
            return Err(Error::DimensionMismatch(format!("{} source symbols, k = {k}", d.len())));
        }
        let mut f = BinVector::zeros(l);
        for i in d.iter_ones() {
            f.set(i, true);
            for &r in &self.ldpc_columns[i] {
                f.flip(k + r);
            }
        }
        for c in 0..k + s {
            if f.get(c) {
                for r in 0..h {
                    if self.half_columns[c] >> r & 1 == 1 {
                        f.flip(k + s + r);
                    }
                }
            }
        }
        Ok(f)
    }

    fn lt_symbol(&self, f: &BinVector, esi: u32) -> bool {
        self.tuple_indices(esi).iter().fold(false, |acc, &i| acc ^ f.get(i))
    }

    fn inverse(&self) -> Result<&DenseBinMatrix> {
        self.systematic_inverse
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("code has no systematic seed".into()))
    }

    /// Intermediate symbols whose first `k` encoded symbols equal `c`.
    pub fn systematic_transform(&self, c: &BinVector) -> Result<BinVector> {
        let RaptorParams { k, s, h, .. } = self.params;
        if c.len() != k {
            return Err(Error::DimensionMismatch(format!("{} information symbols, k = {k}", c.len())));
        }
        let mut rhs = BinVector::zeros(s + h + k);
        for i in c.iter_ones() {
            rhs.set(s + h + i, true);
        }
        self.inverse()?.mul_vec(&rhs)
    }

    /// Encoded symbols with ESIs `1..=n`.
    pub fn encode(&self, c: &BinVector) -> Result<BinVector> {
        let f = self.systematic_transform(c)?;
        Ok(self.encode_intermediate(&f))
    }

    pub fn encode_intermediate(&self, f: &BinVector) -> BinVector {
        BinVector::from_bools((1..=self.params.n as u32).map(|e| self.lt_symbol(f, e)))
    }

    /// `G_LT^I + G_LT^II·G_LDPC + G_LT^III·(G_H^I + G_H^II·G_LDPC)`, so that
    /// `E = G·D` for the non-systematic code.
    pub fn assemble_nonsystematic_generator(&self) -> Result<DenseBinMatrix> {
        let RaptorParams { k, s, h, l, n, .. } = self.params;
        let esis: Vec<u32> = (1..=n as u32).collect();
        let g_lt = self.g_lt(&esis)?;
        let g_ldpc = self.g_ldpc();
        let g_half = self.g_half();
        let lt1 = g_lt.submatrix_cols(&(0..k).collect::<Vec<_>>())?;
        let lt2 = g_lt.submatrix_cols(&(k..k + s).collect::<Vec<_>>())?;
        let lt3 = g_lt.submatrix_cols(&(k + s..l).collect::<Vec<_>>())?;
        let h1 = g_half.submatrix_cols(&(0..k).collect::<Vec<_>>())?;
        let h2 = g_half.submatrix_cols(&(k..k + s).collect::<Vec<_>>())?;
        let inner = add(&h1, &h2.mul(&g_ldpc)?);
        debug_assert_eq!(inner.rows(), h);
        Ok(add(&add(&lt1, &lt2.mul(&g_ldpc)?), &lt3.mul(&inner)?))
    }

    fn collect_received(&self, received: &[(u32, bool)]) -> Result<(Vec<u32>, BinVector)> {
        let esis: Vec<u32> = received.iter().map(|&(e, _)| e).collect();
        self.check_esis(&esis)?;
        let RaptorParams { s, h, .. } = self.params;
        let mut rhs = BinVector::zeros(s + h + received.len());
        for (i, &(_, v)) in received.iter().enumerate() {
            rhs.set(s + h + i, v);
        }
        Ok((esis, rhs))
    }

    fn source_from_intermediate(&self, f: &BinVector) -> BinVector {
        BinVector::from_bools((1..=self.params.k as u32).map(|e| self.lt_symbol(f, e)))
    }

    /// ML decoding by dense elimination of `A(esis)·F = [0; E]`.
    pub fn decode(&self, received: &[(u32, bool)]) -> Result<RaptorOutcome> {
        let (esis, rhs) = self.collect_received(received)?;
        if esis.len() < self.params.k {
            return Ok(RaptorOutcome::TooFewSymbols {
                received: esis.len(),
                needed: self.params.k,
            });
        }
        let a = self.build_a(&esis)?;
        match dense_gauss_solve(&a, std::slice::from_ref(&rhs))? {
            SolveOutcome::Unique(f) => Ok(RaptorOutcome::Recovered(self.source_from_intermediate(&f[0]))),
            SolveOutcome::RankDeficient { rank, .. } => Ok(RaptorOutcome::RankDeficient { rank }),
            SolveOutcome::Inconsistent { .. } => Err(Error::Inconsistent(
                "received symbols do not belong to a codeword".into(),
            )),
        }
    }

    /// ML decoding through structured Gaussian elimination on the sparse `A`.
    /// Statistics are absent only when decoding is skipped for `r < k`.
    pub fn decode_via_structured_ge(
        &self,
        received: &[(u32, bool)],
    ) -> Result<(RaptorOutcome, Option<SolverStats>)> {
        let (esis, rhs) = self.collect_received(received)?;
        if esis.len() < self.params.k {
            let outcome = RaptorOutcome::TooFewSymbols {
                received: esis.len(),
                needed: self.params.k,
            };
            return Ok((outcome, None));
        }
        let a = self.build_a_sparse(&esis)?;
        let (outcome, stats) = solve_structured(&a, &rhs, &MaxResidualDegree)?;
        let outcome = match outcome {
            StructuredOutcome::Solved(f) => RaptorOutcome::Recovered(self.source_from_intermediate(&f)),
            StructuredOutcome::RankDeficient { rank } => RaptorOutcome::RankDeficient { rank },
        };
        Ok((outcome, Some(stats)))
    }
}

fn add(a: &DenseBinMatrix, b: &DenseBinMatrix) -> DenseBinMatrix {
    DenseBinMatrix::from_fn(a.rows(), a.cols(), |r, c| a.get(r, c) ^ b.get(r, c))
}

/// Writes received symbols as `esi hexvalue` lines.
pub fn format_symbols(symbols: &[(u32, bool)]) -> String {
    symbols
        .iter()
        .map(|&(e, v)| format!("{e} {:x}\n", v as u8))
        .collect()
}

/// Parses `esi hexvalue` lines; blank lines and `#` comments are skipped.
pub fn parse_symbols(text: &str) -> Result<Vec<(u32, bool)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: i + 1,
            msg: msg.to_string(),
        };
        let mut parts = line.split_whitespace();
        let (Some(esi), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err("expected `esi hexvalue`"));
        };
        let esi: u32 = esi.parse().map_err(|_| err("bad ESI"))?;
        let value = value.trim_start_matches("0x");
        let value = u8::from_str_radix(value, 16).map_err(|_| err("bad hex value"))?;
        if value > 1 {
            return Err(err("symbols are single bits"));
        }
        out.push((esi, value == 1));
    }
    Ok(out)
}
