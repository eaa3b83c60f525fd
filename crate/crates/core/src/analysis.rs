//! Asymptotic ensemble analysis and finite-length bounds for the BEC.

use statrs::function::factorial::ln_binomial;

use crate::binmat::BinVector;
use crate::error::{Error, Result};
use crate::ldpc::{LdpcCode, Protograph};

/// DE convergence cutoff on the erasure probability.
pub const DE_CUTOFF: f64 = 1e-9;
pub const DE_MAX_ITERATIONS: usize = 2000;
/// Uniform `x` samples used for the area integral.
pub const AREA_GRID: usize = 100_000;

/// Edge-perspective degree distribution pair. Index `i` of each vector holds
/// the coefficient of degree `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    lambda: Vec<f64>,
    rho: Vec<f64>,
    /// Node-perspective variable distribution.
    big_lambda: Vec<f64>,
    rate: f64,
}

fn check_coefficients(name: &str, c: &[f64]) -> Result<()> {
    if c.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} has a negative or non-finite coefficient")));
    }
    if c.first().is_some_and(|&v| v != 0.0) {
        return Err(Error::InvalidParameter(format!("{name} puts weight on degree 0")));
    }
    let total: f64 = c.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!("{name} sums to {total}")));
    }
    Ok(())
}

fn poly_edge(c: &[f64], x: f64) -> f64 {
    // sum_i c_i x^(i-1), Horner from the top degree
    c.iter().skip(1).rev().fold(0.0, |acc, &v| acc * x + v)
}

impl DegreeDistribution {
    pub fn new(lambda: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        check_coefficients("lambda", &lambda)?;
        check_coefficients("rho", &rho)?;
        let int_lambda: f64 = lambda.iter().enumerate().skip(1).map(|(i, v)| v / i as f64).sum();
        let int_rho: f64 = rho.iter().enumerate().skip(1).map(|(j, v)| v / j as f64).sum();
        let big_lambda = lambda
            .iter()
            .enumerate()
            .map(|(i, v)| if i == 0 { 0.0 } else { v / i as f64 / int_lambda })
            .collect();
        Ok(DegreeDistribution {
            lambda,
            rho,
            big_lambda,
            rate: 1.0 - int_rho / int_lambda,
        })
    }

    pub fn regular(dv: usize, dc: usize) -> Result<Self> {
        if dv < 1 || dc < 2 {
            return Err(Error::InvalidParameter(format!("regular ({dv},{dc}) ensemble")));
        }
        let mut lambda = vec![0.0; dv + 1];
        lambda[dv] = 1.0;
        let mut rho = vec![0.0; dc + 1];
        rho[dc] = 1.0;
        Self::new(lambda, rho)
    }

    pub fn lambda_coefficients(&self) -> &[f64] {
        &self.lambda
    }

    pub fn rho_coefficients(&self) -> &[f64] {
        &self.rho
    }

    pub fn node_lambda_coefficients(&self) -> &[f64] {
        &self.big_lambda
    }

    pub fn design_rate(&self) -> f64 {
        self.rate
    }

    pub fn lambda(&self, x: f64) -> f64 {
        poly_edge(&self.lambda, x)
    }

    pub fn rho(&self, x: f64) -> f64 {
        poly_edge(&self.rho, x)
    }

    /// `sum_i Lambda_i x^i`.
    pub fn node_lambda(&self, x: f64) -> f64 {
        x * poly_edge(&self.big_lambda, x)
    }

    /// One DE step `x -> eps * lambda(1 - rho(1 - x))`.
    pub fn de_step(&self, eps: f64, x: f64) -> f64 {
        eps * self.lambda(1.0 - self.rho(1.0 - x))
    }

    pub fn de_converges(&self, eps: f64) -> bool {
        let mut x = eps;
        for _ in 0..DE_MAX_ITERATIONS {
            if x < DE_CUTOFF {
                return true;
            }
            x = self.de_step(eps, x);
        }
        x < DE_CUTOFF
    }

    /// `p_A(x) = x / lambda(1 - rho(1 - x))`.
    pub fn exit_pa(&self, x: f64) -> f64 {
        let denom = self.lambda(1.0 - self.rho(1.0 - x));
        if denom <= 0.0 {
            f64::INFINITY
        } else {
            x / denom
        }
    }

    /// `p_E(x) = Lambda(1 - rho(1 - x))`.
    pub fn exit_pe(&self, x: f64) -> f64 {
        self.node_lambda(1.0 - self.rho(1.0 - x))
    }
}

/// Supremum of the erasure probabilities for which DE reaches zero,
/// by bisection to `1e-5`.
pub fn it_threshold(dist: &DegreeDistribution) -> f64 {
    bisect_threshold(|eps| dist.de_converges(eps), 1e-5)
}

fn bisect_threshold(converges: impl Fn(f64) -> bool, tol: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    if converges(hi) {
        return hi;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if converges(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExitCurve {
    /// `(p_A, p_E)` for `x` uniform on `[x_BP, 1]`.
    pub points: Vec<(f64, f64)>,
    pub x_bp: f64,
    pub eps_bp: f64,
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Locates `x_BP = argmin p_A(x)` by a coarse scan refined with golden
/// section search.
pub fn bp_point(dist: &DegreeDistribution) -> (f64, f64) {
    const SCAN: usize = 2000;
    let best = (1..=SCAN)
        .map(|i| i as f64 / SCAN as f64)
        .min_by(|&a, &b| dist.exit_pa(a).total_cmp(&dist.exit_pa(b)))
        .unwrap();
    let lo = (best - 1.0 / SCAN as f64).max(1e-12);
    let hi = (best + 1.0 / SCAN as f64).min(1.0);
    let x = golden_min(|x| dist.exit_pa(x), lo, hi, 1e-12);
    let (x, pa) = if dist.exit_pa(1.0) < dist.exit_pa(x) {
        (1.0, dist.exit_pa(1.0))
    } else {
        (x, dist.exit_pa(x))
    };
    (x, pa)
}

pub fn exit_curve(dist: &DegreeDistribution, grid: usize) -> ExitCurve {
    let (x_bp, eps_bp) = bp_point(dist);
    let grid = grid.max(2);
    let points = (0..grid)
        .map(|i| {
            let x = x_bp + (1.0 - x_bp) * i as f64 / (grid - 1) as f64;
            (dist.exit_pa(x).min(1.0), dist.exit_pe(x))
        })
        .collect();
    ExitCurve { points, x_bp, eps_bp }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaBound {
    pub p_a_star: f64,
    /// Set when the whole area under the curve is below the rate; the bound
    /// then collapses to the leftmost abscissa.
    pub degenerate: bool,
    /// `|integral - R|` at the returned point.
    pub residual: f64,
}

/// Solves `integral_{p*}^{1} p_E dp_A = rate` on a sampled curve with
/// abscissae in increasing order. `p_E` is zero left of the first sample.
pub fn area_bound(points: &[(f64, f64)], rate: f64) -> AreaBound {
    let mut area = 0.0;
    for w in points.windows(2).rev() {
        let ((a0, e0), (a1, e1)) = (w[0], w[1]);
        let cell = 0.5 * (e0 + e1) * (a1 - a0);
        if area + cell >= rate {
            // area of [p, a1] under the linear interpolant, increasing as p drops
            let partial = |p: f64| {
                let t = if a1 > a0 { (p - a0) / (a1 - a0) } else { 0.0 };
                let ep = e0 + t * (e1 - e0);
                0.5 * (ep + e1) * (a1 - p)
            };
            let (mut lo, mut hi) = (a0, a1);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if area + partial(mid) >= rate {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let p = 0.5 * (lo + hi);
            return AreaBound {
                p_a_star: p,
                degenerate: false,
                residual: (area + partial(p) - rate).abs(),
            };
        }
        area += cell;
    }
    AreaBound {
        p_a_star: points.first().map_or(0.0, |p| p.0),
        degenerate: true,
        residual: (area - rate).abs(),
    }
}

/// Upper bound on the ML threshold from the IT EXIT curve.
pub fn ml_threshold_bound(curve: &ExitCurve, rate: f64) -> AreaBound {
    area_bound(&curve.points, rate)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub eps_it: f64,
    pub eps_ml_bound: f64,
    pub eps_sh: f64,
    pub degenerate: bool,
    pub grid: usize,
    pub residual: f64,
}

pub fn threshold_report(dist: &DegreeDistribution) -> ThresholdReport {
    let curve = exit_curve(dist, AREA_GRID);
    let bound = ml_threshold_bound(&curve, dist.design_rate());
    ThresholdReport {
        eps_it: it_threshold(dist),
        eps_ml_bound: bound.p_a_star,
        eps_sh: 1.0 - dist.design_rate(),
        degenerate: bound.degenerate,
        grid: AREA_GRID,
        residual: bound.residual,
    }
}

struct ProtoEdges {
    /// `(check, variable)` per edge copy.
    edges: Vec<(usize, usize)>,
    check_edges: Vec<Vec<usize>>,
    var_edges: Vec<Vec<usize>>,
}

impl ProtoEdges {
    fn new(p: &Protograph) -> Self {
        let mut edges = Vec::new();
        let mut check_edges = vec![Vec::new(); p.base_rows()];
        let mut var_edges = vec![Vec::new(); p.base_cols()];
        for (i, row) in p.base().iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                for _ in 0..m {
                    check_edges[i].push(edges.len());
                    var_edges[j].push(edges.len());
                    edges.push((i, j));
                }
            }
        }
        ProtoEdges {
            edges,
            check_edges,
            var_edges,
        }
    }
}

/// Erasure DE on the protograph. Punctured columns see a channel erasure
/// probability of one. Returns the check-to-variable erasure probabilities
/// after the final iteration.
struct ProtoDe<'a> {
    p: &'a Protograph,
    g: ProtoEdges,
}

impl<'a> ProtoDe<'a> {
    fn new(p: &'a Protograph) -> Self {
        ProtoDe {
            p,
            g: ProtoEdges::new(p),
        }
    }

    fn channel(&self, j: usize, eps: f64) -> f64 {
        if self.p.is_punctured(j) {
            1.0
        } else {
            eps
        }
    }

    fn step(&self, eps: f64, c2v: &[f64]) -> Vec<f64> {
        let g = &self.g;
        let v2c: Vec<f64> = (0..g.edges.len())
            .map(|e| {
                let j = g.edges[e].1;
                g.var_edges[j]
                    .iter()
                    .filter(|&&o| o != e)
                    .fold(self.channel(j, eps), |acc, &o| acc * c2v[o])
            })
            .collect();
        (0..g.edges.len())
            .map(|e| {
                let i = g.edges[e].0;
                1.0 - g.check_edges[i]
                    .iter()
                    .filter(|&&o| o != e)
                    .fold(1.0, |acc, &o| acc * (1.0 - v2c[o]))
            })
            .collect()
    }

    /// Extrinsic erasure probability of each variable column.
    fn extrinsic(&self, c2v: &[f64]) -> Vec<f64> {
        self.g
            .var_edges
            .iter()
            .map(|es| es.iter().fold(1.0, |acc, &e| acc * c2v[e]))
            .collect()
    }

    fn converges(&self, eps: f64) -> bool {
        let mut c2v = vec![1.0; self.g.edges.len()];
        for _ in 0..DE_MAX_ITERATIONS {
            c2v = self.step(eps, &c2v);
            let worst = self
                .extrinsic(&c2v)
                .iter()
                .enumerate()
                .map(|(j, e)| e * self.channel(j, eps))
                .fold(0.0, f64::max);
            if worst < DE_CUTOFF {
                return true;
            }
        }
        false
    }

    fn fixed_point(&self, eps: f64) -> Vec<f64> {
        let mut c2v = vec![1.0; self.g.edges.len()];
        for _ in 0..20 * DE_MAX_ITERATIONS {
            let next = self.step(eps, &c2v);
            let delta = next
                .iter()
                .zip(&c2v)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            c2v = next;
            if delta < 1e-13 || c2v.iter().all(|&v| v < DE_CUTOFF) {
                break;
            }
        }
        c2v
    }
}

pub fn protograph_de_converges(p: &Protograph, eps: f64) -> bool {
    ProtoDe::new(p).converges(eps)
}

/// IT threshold of a protograph ensemble, by bisection to `1e-4`.
pub fn protograph_it_threshold(p: &Protograph) -> f64 {
    let de = ProtoDe::new(p);
    bisect_threshold(|eps| de.converges(eps), 1e-4)
}

/// IT EXIT curve of a protograph ensemble: the a-priori erasure probability
/// on transmitted columns against the extrinsic erasure probability averaged
/// over transmitted columns, at the DE fixed point.
pub fn protograph_exit_curve(p: &Protograph, grid: usize) -> Vec<(f64, f64)> {
    let de = ProtoDe::new(p);
    let transmitted: Vec<usize> = (0..p.base_cols()).filter(|&j| !p.is_punctured(j)).collect();
    let grid = grid.max(2);
    (0..grid)
        .map(|i| {
            let pa = i as f64 / (grid - 1) as f64;
            let ext = de.extrinsic(&de.fixed_point(pa));
            let pe = transmitted.iter().map(|&j| ext[j]).sum::<f64>() / transmitted.len() as f64;
            (pa, pe)
        })
        .collect()
}

/// Rate used for the protograph area bound: `(cols - rows) / transmitted cols`.
pub fn protograph_transmitted_rate(p: &Protograph) -> f64 {
    let transmitted = p.base_cols() - p.punctured_cols().len();
    (p.base_cols() - p.base_rows()) as f64 / transmitted as f64
}

pub const PROTOGRAPH_GRID: usize = 10_001;

pub fn protograph_ml_bound(p: &Protograph) -> AreaBound {
    area_bound(&protograph_exit_curve(p, PROTOGRAPH_GRID), protograph_transmitted_rate(p))
}

fn ln_pmf(n: u64, i: u64, eps: f64) -> f64 {
    let term = |count: u64, p: f64| if count == 0 { 0.0 } else { count as f64 * p.ln() };
    ln_binomial(n, i) + term(i, eps) + term(n - i, 1.0 - eps)
}

fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.filter(|t| *t > f64::NEG_INFINITY).collect();
    let Some(max) = terms.iter().copied().reduce(f64::max) else {
        return 0.0;
    };
    (max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()).exp()
}

fn check_bound_args(n: usize, k: usize, eps: f64) -> Result<()> {
    if k > n || !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!("bound at n = {n}, k = {k}, eps = {eps}")));
    }
    Ok(())
}

/// CER lower bound of an MDS code: `P(more than n - k erasures)`.
pub fn singleton_bound(n: usize, k: usize, eps: f64) -> Result<f64> {
    check_bound_args(n, k, eps)?;
    let (n, r) = (n as u64, (n - k) as u64);
    Ok(log_sum_exp((r + 1..=n).map(|i| ln_pmf(n, i, eps))).min(1.0))
}

/// Average CER of the random binary `(n, k)` code ensemble.
pub fn berlekamp_bound(n: usize, k: usize, eps: f64) -> Result<f64> {
    check_bound_args(n, k, eps)?;
    let (n64, r) = (n as u64, (n - k) as u64);
    let ln2 = std::f64::consts::LN_2;
    let head = (0..=r).map(|i| ln_pmf(n64, i, eps) - (r - i) as f64 * ln2);
    let tail = (r + 1..=n64).map(|i| ln_pmf(n64, i, eps));
    Ok(log_sum_exp(head.chain(tail)).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightSpectrumTail {
    pub d_min: usize,
    /// Number of codewords of weight `d_min`.
    pub a_min: u64,
}

/// Truncated union bound `A_min * eps^d_min`.
pub fn error_floor_estimate(tail: WeightSpectrumTail, eps: f64) -> f64 {
    tail.a_min as f64 * eps.powi(tail.d_min as i32)
}

pub const DEFAULT_MINDIST_CAP: usize = 24;

/// Exact minimum distance and its multiplicity by enumerating all nonzero
/// messages in Gray order. Weights count every position, punctured or not.
pub fn exhaustive_min_distance(code: &LdpcCode, cap_k: usize) -> Result<WeightSpectrumTail> {
    let k = code.k();
    if k == 0 {
        return Err(Error::InvalidParameter("code has no nonzero codewords".into()));
    }
    if k > cap_k {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds the enumeration cap {cap_k}"
        )));
    }
    let rows: Vec<BinVector> = (0..k)
        .map(|i| code.encode(&BinVector::unit(k, i)))
        .collect::<Result<_>>()?;
    let mut word = BinVector::zeros(code.n());
    let mut best = WeightSpectrumTail {
        d_min: usize::MAX,
        a_min: 0,
    };
    for b in 1u64..1 << k {
        word.xor_assign(&rows[b.trailing_zeros() as usize]);
        let w = word.weight();
        if w < best.d_min {
            best = WeightSpectrumTail { d_min: w, a_min: 1 };
        } else if w == best.d_min {
            best.a_min += 1;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binmat::DenseBinMatrix;
    use proptest::prelude::*;

    #[test]
    fn regular_rates_and_node_perspective() {
        let d = DegreeDistribution::regular(3, 6).unwrap();
        assert!((d.design_rate() - 0.5).abs() < 1e-12);
        assert_eq!(d.node_lambda_coefficients()[3], 1.0);
        let irr = DegreeDistribution::new(vec![0.0, 0.0, 0.5, 0.5], vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        // Lambda_i proportional to lambda_i / i
        let big = irr.node_lambda_coefficients();
        assert!((big[2] - 0.6).abs() < 1e-12 && (big[3] - 0.4).abs() < 1e-12);
        assert!(DegreeDistribution::new(vec![0.0, 0.5], vec![0.0, 0.0, 1.0]).is_err());
        assert!(DegreeDistribution::new(vec![1.0], vec![0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn de_bracketing() {
        let d = DegreeDistribution::regular(3, 6).unwrap();
        assert!(d.de_converges(0.0));
        assert!(!d.de_converges(1.0));
    }

    #[test]
    fn it_thresholds_match_table() {
        for (dv, dc, want) in [(3, 6, 0.4294), (5, 15, 0.2303)] {
            let got = it_threshold(&DegreeDistribution::regular(dv, dc).unwrap());
            assert!((got - want).abs() <= 5e-4, "({dv},{dc}): {got}");
        }
    }

    #[test]
    fn exit_curve_shape() {
        let d = DegreeDistribution::regular(3, 6).unwrap();
        let curve = exit_curve(&d, 1000);
        let last = *curve.points.last().unwrap();
        assert!((last.0 - 1.0).abs() < 1e-12 && (last.1 - 1.0).abs() < 1e-12);
        assert!((curve.eps_bp - 0.4294).abs() < 5e-4);
        assert!(curve.points.windows(2).all(|w| w[0].1 <= w[1].1));
        assert!(curve.points.iter().all(|&(a, e)| (0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&e)));
    }

    #[test]
    fn ml_bounds_match_table() {
        for (dv, dc, want) in [(3, 6, 0.4881), (6, 12, 0.4999), (4, 12, 0.3302)] {
            let r = threshold_report(&DegreeDistribution::regular(dv, dc).unwrap());
            assert!((r.eps_ml_bound - want).abs() <= 5e-4, "({dv},{dc}): {}", r.eps_ml_bound);
            assert!(!r.degenerate && r.residual < 1e-6);
            assert!(r.eps_it <= r.eps_ml_bound && r.eps_ml_bound <= r.eps_sh + 1e-4);
        }
    }

    #[test]
    fn area_bound_degenerates_on_small_area() {
        let b = area_bound(&[(0.5, 0.1), (1.0, 0.1)], 0.5);
        assert!(b.degenerate);
        assert_eq!(b.p_a_star, 0.5);
        // a flat curve at height one gives exactly 1 - R
        let flat: Vec<(f64, f64)> = (0..=100).map(|i| (i as f64 / 100.0, 1.0)).collect();
        assert!((area_bound(&flat, 0.3).p_a_star - 0.7).abs() < 1e-9);
    }

    #[test]
    fn protograph_collapses_to_regular() {
        let p = Protograph::new(vec![vec![3, 3]], vec![], 1).unwrap();
        assert!((protograph_it_threshold(&p) - 0.4294).abs() <= 1e-3);
        assert!((protograph_ml_bound(&p).p_a_star - 0.4881).abs() <= 1e-3);
        assert!(protograph_de_converges(&p, 0.0));
    }

    #[test]
    fn ara_thresholds() {
        let p = Protograph::ara(1);
        assert!((protograph_transmitted_rate(&p) - 0.5).abs() < 1e-12);
        let it = protograph_it_threshold(&p);
        assert!((it - 0.477).abs() <= 2e-3, "{it}");
        let ml = protograph_ml_bound(&p);
        assert!((ml.p_a_star - 0.496).abs() <= 2e-3, "{}", ml.p_a_star);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(singleton_bound(10, 5, 0.0).unwrap(), 0.0);
        assert!((singleton_bound(10, 5, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((singleton_bound(3, 1, 0.5).unwrap() - 0.125).abs() < 1e-12);
        assert!((berlekamp_bound(10, 5, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((berlekamp_bound(10, 4, 0.0).unwrap() - 2f64.powi(-6)).abs() < 1e-15);
        assert!(singleton_bound(4, 5, 0.1).is_err());
        assert!(berlekamp_bound(4, 2, 1.5).is_err());
        // large n stays finite
        let s = singleton_bound(10_000, 5_000, 0.45).unwrap();
        assert!(s > 0.0 && s < 1e-10);
    }

    #[test]
    fn bounds_agree_with_direct_sum() {
        // linear-domain oracle for small n
        let choose = |n: u64, r: u64| (0..r).fold(1.0f64, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
        for (n, k) in [(12usize, 6usize), (20, 15), (30, 10)] {
            for eps in [0.05f64, 0.3, 0.5, 0.8] {
                let pmf = |i: usize| choose(n as u64, i as u64) * eps.powi(i as i32) * (1.0 - eps).powi((n - i) as i32);
                let single: f64 = (n - k + 1..=n).map(pmf).sum();
                let berl: f64 = single + (0..=n - k).map(|i| pmf(i) * 2f64.powi(-((n - k - i) as i32))).sum::<f64>();
                assert!((singleton_bound(n, k, eps).unwrap() - single).abs() < 1e-12);
                assert!((berlekamp_bound(n, k, eps).unwrap() - berl).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn error_floor_examples() {
        let t = WeightSpectrumTail { d_min: 11, a_min: 4 };
        assert!((error_floor_estimate(t, 0.1) - 4e-11).abs() < 1e-24);
        let ara = WeightSpectrumTail { d_min: 10, a_min: 16 };
        assert!((error_floor_estimate(ara, 0.2) - 16.0 * 0.2f64.powi(10)).abs() < 1e-20);
        assert_eq!(error_floor_estimate(t, 0.0), 0.0);
    }

    fn code(rows: &[&[u8]], k: usize) -> LdpcCode {
        LdpcCode::with_dimension(DenseBinMatrix::from_rows(rows).unwrap().to_sparse(), k, vec![]).unwrap()
    }

    #[test]
    fn min_distance_examples() {
        let hamming = code(&[&[1, 0, 1, 0, 1, 0, 1], &[0, 1, 1, 0, 0, 1, 1], &[0, 0, 0, 1, 1, 1, 1]], 4);
        assert_eq!(
            exhaustive_min_distance(&hamming, 24).unwrap(),
            WeightSpectrumTail { d_min: 3, a_min: 7 }
        );
        let rep = code(&[&[1, 1, 0], &[0, 1, 1]], 1);
        assert_eq!(exhaustive_min_distance(&rep, 24).unwrap(), WeightSpectrumTail { d_min: 3, a_min: 1 });
        let spc = code(&[&[1, 1, 1]], 2);
        assert_eq!(exhaustive_min_distance(&spc, 24).unwrap(), WeightSpectrumTail { d_min: 2, a_min: 3 });
        assert!(exhaustive_min_distance(&hamming, 3).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn singleton_below_berlekamp(n in 1usize..200, kf in 0.0f64..1.0, eps in 0.0f64..=1.0) {
            let k = ((n as f64) * kf) as usize;
            let s = singleton_bound(n, k, eps).unwrap();
            let b = berlekamp_bound(n, k, eps).unwrap();
            prop_assert!(s <= b + 1e-12);
            prop_assert!((0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&b));
        }

        #[test]
        fn bounds_nondecreasing_in_eps(n in 1usize..300, kf in 0.0f64..1.0, e1 in 0.0f64..=1.0, e2 in 0.0f64..=1.0) {
            let k = ((n as f64) * kf) as usize;
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            prop_assert!(singleton_bound(n, k, lo).unwrap() <= singleton_bound(n, k, hi).unwrap() + 1e-12);
            prop_assert!(berlekamp_bound(n, k, lo).unwrap() <= berlekamp_bound(n, k, hi).unwrap() + 1e-12);
        }

        #[test]
        fn de_monotone_in_eps(dv in 2usize..7, extra in 1usize..8, e1 in 0.0f64..1.0, e2 in 0.0f64..1.0) {
            let d = DegreeDistribution::regular(dv, dv + extra).unwrap();
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            if d.de_converges(hi) {
                prop_assert!(d.de_converges(lo));
            }
        }

        #[test]
        fn ml_bound_between_it_and_shannon(dv in 3usize..6, mult in 2usize..4) {
            let r = threshold_report(&DegreeDistribution::regular(dv, dv * mult).unwrap());
            prop_assert!(r.eps_it <= r.eps_ml_bound + 1e-5);
            prop_assert!(r.eps_ml_bound <= r.eps_sh + 1e-4);
        }
    }
}
