//! Monte Carlo estimation of codeword error rates.
//!
//! Trial `t` of a run draws from a ChaCha stream keyed on `(seed, t)` only,
//! so every sweep point sees the same random numbers for the same trial
//! index. Channel realizations are built monotonically from those numbers:
//! raising the erasure probability only adds erasures and raising the
//! overhead only adds symbols. Combined with the stopping rule this keeps
//! estimated CER curves monotone and lets decoders be compared trial by
//! trial.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::binmat::BinVector;
use crate::erasure_decode::{hybrid_decode, ml_decode, peel_decode, ReceivedWord};
use crate::error::{Error, Result};
use crate::ldpc::LdpcCode;
use crate::raptor::{RaptorCode, RaptorOutcome};

pub const CSV_HEADER: &str = "sweep_value,trials,errors,cer,ci95,mean_pivots,mean_ge_dim";
/// Two-sided 95% standard normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    It,
    Ml,
    Hybrid,
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::It => "it",
            DecoderKind::Ml => "ml",
            DecoderKind::Hybrid => "hybrid",
        })
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "it" => Ok(DecoderKind::It),
            "ml" => Ok(DecoderKind::Ml),
            "hybrid" => Ok(DecoderKind::Hybrid),
            _ => Err(Error::InvalidParameter(format!("unknown decoder `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Sweep values are erasure probabilities.
    Bec,
    /// Sweep values are overheads `delta`: exactly `k + delta` symbols arrive.
    FixedOverhead,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    Bec { eps: f64 },
    FixedOverhead { delta: i64 },
}

impl ChannelKind {
    pub fn at(self, value: f64) -> Result<ChannelModel> {
        match self {
            ChannelKind::Bec if (0.0..=1.0).contains(&value) => Ok(ChannelModel::Bec { eps: value }),
            ChannelKind::Bec => Err(Error::InvalidParameter(format!("erasure probability {value}"))),
            ChannelKind::FixedOverhead if value.fract() == 0.0 => Ok(ChannelModel::FixedOverhead {
                delta: value as i64,
            }),
            ChannelKind::FixedOverhead => Err(Error::InvalidParameter(format!("overhead {value} is not an integer"))),
        }
    }
}

impl ChannelModel {
    /// Indices into `0..count` that arrive. `uniforms` and `order` must come
    /// from the same trial stream for every point so that receptions nest.
    fn received(&self, k: usize, uniforms: &[f64], order: &[usize]) -> Vec<usize> {
        match *self {
            ChannelModel::Bec { eps } => (0..uniforms.len()).filter(|&i| uniforms[i] >= eps).collect(),
            ChannelModel::FixedOverhead { delta } => {
                let take = (k as i64 + delta).clamp(0, order.len() as i64) as usize;
                let mut got = order[..take].to_vec();
                got.sort_unstable();
                got
            }
        }
    }
}

/// Random draws shared by all channel models for one trial.
struct ChannelDraw {
    uniforms: Vec<f64>,
    order: Vec<usize>,
}

impl ChannelDraw {
    fn new(count: usize, rng: &mut ChaCha8Rng) -> Self {
        let uniforms = (0..count).map(|_| rng.gen::<f64>()).collect();
        let mut order: Vec<usize> = (0..count).collect();
        order.shuffle(rng);
        ChannelDraw { uniforms, order }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrialOutcome {
    pub success: bool,
    pub pivots: usize,
    pub ge_dim: usize,
}

pub trait TrialRunner: Sync {
    fn run_trial(&self, channel: ChannelModel, rng: &mut ChaCha8Rng) -> Result<TrialOutcome>;
}

/// LDPC code over either channel.
#[derive(Debug, Clone)]
pub struct LdpcTrials<'a> {
    pub code: &'a LdpcCode,
    pub decoder: DecoderKind,
    /// Send the all-zero codeword instead of encoding random information.
    /// Erasure decoding success does not depend on the codeword.
    pub all_zero: bool,
}

impl TrialRunner for LdpcTrials<'_> {
    fn run_trial(&self, channel: ChannelModel, rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
        let code = self.code;
        let transmitted = code.transmitted_positions();
        let draw = ChannelDraw::new(transmitted.len(), rng);
        let codeword = if self.all_zero {
            BinVector::zeros(code.n())
        } else {
            code.encode(&BinVector::random(code.k(), rng))?
        };
        let mut erased = vec![true; code.n()];
        for i in channel.received(code.k(), &draw.uniforms, &draw.order) {
            erased[transmitted[i]] = false;
        }
        let word = ReceivedWord::from_mask(&codeword, &erased);
        let result = match self.decoder {
            DecoderKind::It => peel_decode(code, &word)?,
            DecoderKind::Ml => ml_decode(code, &word)?,
            DecoderKind::Hybrid => hybrid_decode(code, &word)?,
        };
        Ok(TrialOutcome {
            success: result.recovered.as_ref() == Some(&codeword),
            pivots: result.stats.pivots,
            ge_dim: result.stats.ge_dim,
        })
    }
}

/// Fixed-rate Raptor code; information symbols are random in every trial.
#[derive(Debug, Clone)]
pub struct RaptorTrials<'a> {
    pub code: &'a RaptorCode,
    /// Decode through structured elimination rather than dense elimination.
    pub structured: bool,
}

impl TrialRunner for RaptorTrials<'_> {
    fn run_trial(&self, channel: ChannelModel, rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
        let p = self.code.params();
        let draw = ChannelDraw::new(p.n, rng);
        let c = BinVector::random(p.k, rng);
        let e = self.code.encode(&c)?;
        let received: Vec<(u32, bool)> = channel
            .received(p.k, &draw.uniforms, &draw.order)
            .into_iter()
            .map(|i| (i as u32 + 1, e.get(i)))
            .collect();
        let (outcome, stats) = if self.structured {
            self.code.decode_via_structured_ge(&received)?
        } else {
            (self.code.decode(&received)?, None)
        };
        Ok(TrialOutcome {
            success: matches!(&outcome, RaptorOutcome::Recovered(got) if *got == c),
            pivots: stats.map_or(0, |s| s.pivots),
            ge_dim: stats.map_or(0, |s| s.a_prime_rows),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    /// Stop a point once this many failures are seen.
    pub target_errors: u64,
    pub max_trials: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            target_errors: 100,
            max_trials: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimPlan {
    pub channel: ChannelKind,
    /// Ascending sweep values.
    pub points: Vec<f64>,
    pub stop: StopRule,
    pub seed: u64,
}

impl SimPlan {
    pub fn validate(&self) -> Result<()> {
        if self.stop.target_errors == 0 || self.stop.max_trials == 0 {
            return Err(Error::InvalidParameter("stop rule needs at least one error and one trial".into()));
        }
        if self.points.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("sweep points must be sorted".into()));
        }
        for &v in &self.points {
            self.channel.at(v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord {
    pub sweep_value: f64,
    pub trials: u64,
    pub errors: u64,
    pub cer: f64,
    pub ci95: f64,
    pub mean_pivots: f64,
    pub mean_ge_dim: f64,
}

impl SimRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.6e},{:.6e},{:.3},{:.3}",
            format_value(self.sweep_value),
            self.trials,
            self.errors,
            self.cer,
            self.ci95,
            self.mean_pivots,
            self.mean_ge_dim
        )
    }
}

/// Shortest decimal form after rounding away accumulated step error.
pub fn format_value(v: f64) -> String {
    let rounded = (v * 1e9).round() / 1e9;
    format!("{}", if rounded == 0.0 { 0.0 } else { rounded })
}

/// Half-width of the Wilson score interval at 95%.
pub fn wilson_half_width(errors: u64, trials: u64) -> f64 {
    if trials == 0 {
        return 0.5;
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = Z95 * Z95;
    Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n)
}

/// RNG for one trial, independent of the sweep point.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

const BATCH: u64 = 256;

/// Runs trials in parallel batches and cuts the sequence at the first trial
/// index satisfying the stop rule, so results do not depend on scheduling.
pub fn run_point(runner: &dyn TrialRunner, channel: ChannelModel, stop: StopRule, seed: u64) -> Result<SimRecord> {
    let mut trials = 0u64;
    let mut errors = 0u64;
    let mut pivots = 0u64;
    let mut ge_dim = 0u64;
    'outer: while trials < stop.max_trials && errors < stop.target_errors {
        let end = (trials + BATCH).min(stop.max_trials);
        let batch: Vec<TrialOutcome> = (trials..end)
            .into_par_iter()
            .map(|t| runner.run_trial(channel, &mut trial_rng(seed, t)))
            .collect::<Result<_>>()?;
        for o in batch {
            trials += 1;
            errors += u64::from(!o.success);
            pivots += o.pivots as u64;
            ge_dim += o.ge_dim as u64;
            if errors >= stop.target_errors {
                break 'outer;
            }
        }
    }
    let value = match channel {
        ChannelModel::Bec { eps } => eps,
        ChannelModel::FixedOverhead { delta } => delta as f64,
    };
    let n = trials.max(1) as f64;
    Ok(SimRecord {
        sweep_value: value,
        trials,
        errors,
        cer: errors as f64 / n,
        ci95: wilson_half_width(errors, trials),
        mean_pivots: pivots as f64 / n,
        mean_ge_dim: ge_dim as f64 / n,
    })
}

pub fn run_sweep(plan: &SimPlan, runner: &dyn TrialRunner) -> Result<Vec<SimRecord>> {
    plan.validate()?;
    plan.points
        .iter()
        .map(|&v| run_point(runner, plan.channel.at(v)?, plan.stop, plan.seed))
        .collect()
}

/// CSV text: `#`-prefixed comment lines, the column header, one row per record.
pub fn to_csv(comments: &[String], records: &[SimRecord]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldpc::sample_regular;

    fn plan(channel: ChannelKind, points: Vec<f64>, target: u64, max: u64) -> SimPlan {
        SimPlan {
            channel,
            points,
            stop: StopRule {
                target_errors: target,
                max_trials: max,
            },
            seed: 11,
        }
    }

    #[test]
    fn wilson_reference_values() {
        // closed form evaluated by hand: p = 0.1, n = 100
        let w = wilson_half_width(10, 100);
        assert!((w - 0.05957).abs() < 1e-4, "{w}");
        assert!(wilson_half_width(0, 10) > 0.0);
        assert!(wilson_half_width(5, 10) < 0.5);
    }

    #[test]
    fn degenerate_plans() {
        let code = sample_regular(3, 6, 96, 1).unwrap();
        let runner = LdpcTrials {
            code: &code,
            decoder: DecoderKind::Ml,
            all_zero: true,
        };
        let r = run_sweep(&plan(ChannelKind::Bec, vec![0.0], 100, 10), &runner).unwrap();
        assert_eq!((r[0].trials, r[0].errors, r[0].cer), (10, 0, 0.0));
        let r = run_sweep(&plan(ChannelKind::Bec, vec![1.0], 5, 100), &runner).unwrap();
        assert_eq!((r[0].trials, r[0].errors), (5, 5));
        assert!(run_sweep(&plan(ChannelKind::Bec, vec![0.2, 0.1], 5, 10), &runner).is_err());
        assert!(run_sweep(&plan(ChannelKind::Bec, vec![1.2], 5, 10), &runner).is_err());
        assert!(run_sweep(&plan(ChannelKind::Bec, vec![0.2], 0, 10), &runner).is_err());
    }

    #[test]
    fn full_overhead_equals_clean_reception() {
        let code = sample_regular(3, 6, 96, 1).unwrap();
        for decoder in [DecoderKind::It, DecoderKind::Ml] {
            let runner = LdpcTrials {
                code: &code,
                decoder,
                all_zero: false,
            };
            let delta = (code.n() - code.k()) as f64;
            let r = run_sweep(&plan(ChannelKind::FixedOverhead, vec![delta], 1, 50), &runner).unwrap();
            assert_eq!(r[0].errors, 0);
        }
    }

    #[test]
    fn replay_is_identical() {
        let code = sample_regular(3, 6, 120, 4).unwrap();
        let runner = LdpcTrials {
            code: &code,
            decoder: DecoderKind::Hybrid,
            all_zero: true,
        };
        let p = plan(ChannelKind::Bec, vec![0.35, 0.4, 0.45], 20, 600);
        let a = to_csv(&[], &run_sweep(&p, &runner).unwrap());
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| to_csv(&[], &run_sweep(&p, &runner).unwrap()));
        assert_eq!(a, b);
    }

    #[test]
    fn paired_trials_respect_dominance() {
        let code = sample_regular(3, 6, 200, 9).unwrap();
        let ch = ChannelModel::Bec { eps: 0.42 };
        for t in 0..300 {
            let run = |decoder| {
                LdpcTrials {
                    code: &code,
                    decoder,
                    all_zero: true,
                }
                .run_trial(ch, &mut trial_rng(5, t))
                .unwrap()
                .success
            };
            let (it, ml, hy) = (run(DecoderKind::It), run(DecoderKind::Ml), run(DecoderKind::Hybrid));
            assert_eq!(ml, hy);
            assert!(!it || ml);
        }
    }

    #[test]
    fn raptor_overhead_sweep_is_monotone() {
        let code = RaptorCode::systematic(16, 40, 3).unwrap();
        let runner = RaptorTrials {
            code: &code,
            structured: true,
        };
        let points: Vec<f64> = (-1..=8).map(f64::from).collect();
        let r = run_sweep(&plan(ChannelKind::FixedOverhead, points, 30, 400), &runner).unwrap();
        assert_eq!(r[0].cer, 1.0);
        assert!(r.windows(2).all(|w| w[1].cer <= w[0].cer));
    }

    #[test]
    fn csv_layout() {
        let rec = SimRecord {
            sweep_value: 0.1 + 0.2,
            trials: 10,
            errors: 1,
            cer: 0.1,
            ci95: 0.2,
            mean_pivots: 1.5,
            mean_ge_dim: 2.0,
        };
        let text = to_csv(&["seed=1".to_string()], &[rec]);
        assert_eq!(
            text,
            "# seed=1\nsweep_value,trials,errors,cer,ci95,mean_pivots,mean_ge_dim\n0.3,10,1,1.000000e-1,2.000000e-1,1.500,2.000\n"
        );
        assert_eq!("hybrid".parse::<DecoderKind>().unwrap(), DecoderKind::Hybrid);
        assert!("bp".parse::<DecoderKind>().is_err());
    }
}
