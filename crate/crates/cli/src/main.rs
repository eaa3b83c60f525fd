mod config;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use becml_core::analysis::{
    berlekamp_bound, error_floor_estimate, exhaustive_min_distance, protograph_it_threshold, protograph_ml_bound,
    protograph_transmitted_rate, singleton_bound, threshold_report, WeightSpectrumTail,
};
use becml_core::ldpc::{build_geira, column_weight_for_check_degree, lift_protograph, rate_family, sample_regular};
use becml_core::raptor::{format_symbols, parse_symbols, RaptorCode, RaptorOutcome};
use becml_core::sim::{format_value, run_sweep, to_csv, ChannelKind, DecoderKind, LdpcTrials, RaptorTrials, StopRule};
use becml_core::{BinVector, DegreeDistribution, GeiraSpec, LdpcCode, Protograph, Rate, SimPlan};

#[derive(Parser, Debug)]
#[command(name = "becml", version, about = "LDPC and Raptor codes on the binary erasure channel")]
#[command(args_override_self = true)]
struct Cli {
    /// Flat key=value file; its settings apply before command-line flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a parity-check code and write it as a code file.
    Construct(ConstructArgs),
    /// Monte Carlo CER of an LDPC code.
    Simulate(SimulateArgs),
    /// Singleton and Berlekamp bounds over an erasure probability range.
    Bounds(BoundsArgs),
    /// IT thresholds and ML threshold upper bounds of ensembles.
    Thresholds(ThresholdsArgs),
    /// CER of a fixed-rate Raptor code against overhead.
    RaptorSim(RaptorSimArgs),
    /// Exact minimum distance by enumeration.
    Mindist(MindistArgs),
    /// Encode information bits into a symbol file.
    RaptorEncode(RaptorEncodeArgs),
    /// Recover information bits from a symbol file.
    RaptorDecode(RaptorDecodeArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Regular,
    Geira,
    Ara,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    dv: usize,
    #[arg(long, default_value_t = 6)]
    dc: usize,
    /// Accumulator feedback taps, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    taps: Vec<usize>,
    /// Information column weight; derived from --check-degree when absent.
    #[arg(long)]
    column_weight: Option<usize>,
    #[arg(long, default_value_t = 9.0)]
    check_degree: f64,
    /// Circulant size for protograph families.
    #[arg(long, default_value_t = 128)]
    lift: usize,
    /// Puncture parity bits down to this rate, e.g. 4/5.
    #[arg(long)]
    rate: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Stop a point after this many codeword errors.
    #[arg(long, default_value_t = 100)]
    errors: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value = "ml")]
    decoder: String,
    /// Erasure probabilities, start:stop:step.
    #[arg(long, conflicts_with = "delta")]
    eps: Option<String>,
    /// Fixed overheads over k, start:stop[:step].
    #[arg(long)]
    delta: Option<String>,
    /// Encode random information instead of sending the all-zero codeword.
    #[arg(long)]
    random_codeword: bool,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    eps: String,
    /// Adds an error floor column A_min * eps^d_min.
    #[arg(long, requires = "amin")]
    dmin: Option<usize>,
    #[arg(long, requires = "dmin")]
    amin: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ThresholdsArgs {
    /// Regular ensemble dv,dc; repeatable. Defaults to the standard table.
    #[arg(long, value_name = "DV,DC")]
    regular: Vec<String>,
    /// Include the ARA protograph ensemble.
    #[arg(long)]
    ara: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RaptorCodeArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Seed of the LDPC pre-code.
    #[arg(long, default_value_t = 0)]
    code_seed: u64,
}

#[derive(Args, Debug)]
struct RaptorSimArgs {
    #[command(flatten)]
    code: RaptorCodeArgs,
    #[arg(long, default_value = "0:30")]
    delta: String,
    /// Decode by dense elimination instead of structured elimination.
    #[arg(long)]
    dense: bool,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Args, Debug)]
struct MindistArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value_t = 24)]
    cap: usize,
}

#[derive(Args, Debug)]
struct RaptorEncodeArgs {
    #[command(flatten)]
    code: RaptorCodeArgs,
    /// Information bits as a 0/1 string of length k.
    #[arg(long)]
    info: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RaptorDecodeArgs {
    #[command(flatten)]
    code: RaptorCodeArgs,
    #[arg(long)]
    symbols: PathBuf,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_code(path: &PathBuf) -> Result<LdpcCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse().with_context(|| format!("parsing {}", path.display()))
}

fn parse_rate(s: &str) -> Result<Rate> {
    let (a, b) = s.split_once('/').context("rate must look like num/den")?;
    Ok(Rate::new(a.trim().parse()?, b.trim().parse()?))
}

fn construct(a: &ConstructArgs) -> Result<()> {
    let code = match a.family {
        Family::Regular => sample_regular(a.dv, a.dc, a.n.context("--n is required")?, a.seed)?,
        Family::Geira => {
            let (n, k) = (a.n.context("--n is required")?, a.k.context("--k is required")?);
            let column_weight = a
                .column_weight
                .unwrap_or_else(|| column_weight_for_check_degree(k, n, &a.taps, a.check_degree));
            build_geira(&GeiraSpec {
                k,
                n,
                taps: a.taps.clone(),
                column_weight,
                seed: a.seed,
            })?
        }
        Family::Ara => lift_protograph(&Protograph::ara(a.lift), a.seed)?,
    };
    let code = match &a.rate {
        Some(r) => rate_family(&code, &[parse_rate(r)?])?.remove(0),
        None => code,
    };
    emit(&a.out, &code.to_string())
}

fn sweep_comments(command: &str, sweep: &SweepArgs) -> Vec<String> {
    vec![
        format!("command={command}"),
        format!("seed={}", sweep.seed),
        format!("errors={}", sweep.errors),
        format!("max-trials={}", sweep.max_trials),
    ]
}

fn stop_rule(sweep: &SweepArgs) -> StopRule {
    StopRule {
        target_errors: sweep.errors,
        max_trials: sweep.max_trials,
    }
}

fn simulate(a: &SimulateArgs) -> Result<()> {
    let code = read_code(&a.code)?;
    let decoder: DecoderKind = a.decoder.parse()?;
    let (channel, points, range) = match (&a.eps, &a.delta) {
        (Some(eps), None) => (ChannelKind::Bec, config::parse_float_range(eps)?, eps.clone()),
        (None, Some(delta)) => (
            ChannelKind::FixedOverhead,
            config::parse_int_range(delta)?.into_iter().map(|d| d as f64).collect(),
            delta.clone(),
        ),
        _ => bail!("give exactly one of --eps or --delta"),
    };
    let plan = SimPlan {
        channel,
        points,
        stop: stop_rule(&a.sweep),
        seed: a.sweep.seed,
    };
    let runner = LdpcTrials {
        code: &code,
        decoder,
        all_zero: !a.random_codeword,
    };
    let records = run_sweep(&plan, &runner)?;
    let mut comments = sweep_comments("simulate", &a.sweep);
    comments.extend([
        format!("code={}", a.code.display()),
        format!("n={} k={} transmitted={}", code.n(), code.k(), code.transmitted_count()),
        format!("decoder={decoder}"),
        format!("channel={}", if channel == ChannelKind::Bec { "bec" } else { "overhead" }),
        format!("sweep={range}"),
        format!("random-codeword={}", a.random_codeword),
    ]);
    emit(&a.sweep.out, &to_csv(&comments, &records))
}

fn bounds(a: &BoundsArgs) -> Result<()> {
    let points = config::parse_float_range(&a.eps)?;
    let floor = a.dmin.zip(a.amin).map(|(d_min, a_min)| WeightSpectrumTail { d_min, a_min });
    let mut text = format!("# command=bounds\n# n={} k={}\n# eps={}\n", a.n, a.k, a.eps);
    if let Some(t) = floor {
        text.push_str(&format!("# dmin={} amin={}\n", t.d_min, t.a_min));
    }
    text.push_str(if floor.is_some() {
        "epsilon,singleton,berlekamp,floor\n"
    } else {
        "epsilon,singleton,berlekamp\n"
    });
    for eps in points {
        text.push_str(&format!(
            "{},{:.6e},{:.6e}",
            format_value(eps),
            singleton_bound(a.n, a.k, eps)?,
            berlekamp_bound(a.n, a.k, eps)?
        ));
        if let Some(t) = floor {
            text.push_str(&format!(",{:.6e}", error_floor_estimate(t, eps)));
        }
        text.push('\n');
    }
    emit(&a.out, &text)
}

const STANDARD_ENSEMBLES: [(usize, usize); 7] = [(3, 6), (4, 8), (5, 10), (6, 12), (3, 9), (4, 12), (5, 15)];

fn thresholds(a: &ThresholdsArgs) -> Result<()> {
    let mut regular = Vec::new();
    for spec in &a.regular {
        let (dv, dc) = spec.split_once(',').context("--regular takes dv,dc")?;
        regular.push((dv.trim().parse::<usize>()?, dc.trim().parse::<usize>()?));
    }
    let with_ara = a.ara || a.regular.is_empty();
    if a.regular.is_empty() {
        regular.extend(STANDARD_ENSEMBLES);
    }
    let mut text = String::from("# command=thresholds\n");
    let listed: Vec<String> = regular.iter().map(|(v, c)| format!("{v},{c}")).collect();
    text.push_str(&format!("# regular={}\n# ara={with_ara}\n", listed.join(" ")));
    text.push_str("ensemble,eps_it,eps_ml_bound,eps_sh\n");
    for (dv, dc) in regular {
        let r = threshold_report(&DegreeDistribution::regular(dv, dc)?);
        text.push_str(&format!(
            "regular-{dv}-{dc},{:.4},{:.4},{:.4}\n",
            r.eps_it, r.eps_ml_bound, r.eps_sh
        ));
    }
    if with_ara {
        let p = Protograph::ara(1);
        let bound = protograph_ml_bound(&p);
        text.push_str(&format!(
            "ara,{:.4},{:.4},{:.4}\n",
            protograph_it_threshold(&p),
            bound.p_a_star,
            1.0 - protograph_transmitted_rate(&p)
        ));
    }
    emit(&a.out, &text)
}

fn raptor_code(a: &RaptorCodeArgs) -> Result<RaptorCode> {
    Ok(RaptorCode::systematic(a.k, a.n, a.code_seed)?)
}

fn raptor_sim(a: &RaptorSimArgs) -> Result<()> {
    let code = raptor_code(&a.code)?;
    let plan = SimPlan {
        channel: ChannelKind::FixedOverhead,
        points: config::parse_int_range(&a.delta)?.into_iter().map(|d| d as f64).collect(),
        stop: stop_rule(&a.sweep),
        seed: a.sweep.seed,
    };
    let runner = RaptorTrials {
        code: &code,
        structured: !a.dense,
    };
    let records = run_sweep(&plan, &runner)?;
    let p = code.params();
    let mut comments = sweep_comments("raptor-sim", &a.sweep);
    comments.extend([
        format!("k={} n={} s={} h={} L={}", p.k, p.n, p.s, p.h, p.l),
        format!("code-seed={} systematic-seed={}", p.seed, p.systematic_seed),
        format!("delta={}", a.delta),
        format!("decoder={}", if a.dense { "dense" } else { "structured" }),
    ]);
    emit(&a.sweep.out, &to_csv(&comments, &records))
}

fn mindist(a: &MindistArgs) -> Result<()> {
    let code = read_code(&a.code)?;
    let t = exhaustive_min_distance(&code, a.cap)?;
    println!("d_min,a_min\n{},{}", t.d_min, t.a_min);
    Ok(())
}

fn raptor_encode(a: &RaptorEncodeArgs) -> Result<()> {
    let code = raptor_code(&a.code)?;
    let bits: Vec<u8> = a
        .info
        .trim()
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => bail!("--info must contain only 0 and 1"),
        })
        .collect::<Result<_>>()?;
    if bits.len() != a.code.k {
        bail!("--info has {} bits, k = {}", bits.len(), a.code.k);
    }
    let e = code.encode(&BinVector::from_bits(&bits))?;
    let symbols: Vec<(u32, bool)> = (0..e.len()).map(|i| (i as u32 + 1, e.get(i))).collect();
    let p = code.params();
    let header = format!("# k={} n={} code-seed={} systematic-seed={}\n", p.k, p.n, p.seed, p.systematic_seed);
    emit(&a.out, &(header + &format_symbols(&symbols)))
}

fn raptor_decode(a: &RaptorDecodeArgs) -> Result<()> {
    let code = raptor_code(&a.code)?;
    let text = fs::read_to_string(&a.symbols).with_context(|| format!("reading {}", a.symbols.display()))?;
    let received = parse_symbols(&text)?;
    match code.decode_via_structured_ge(&received)?.0 {
        RaptorOutcome::Recovered(c) => {
            let bits: String = c.to_bits().iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
            println!("{bits}");
            Ok(())
        }
        RaptorOutcome::TooFewSymbols { received, needed } => {
            bail!("decoding failed: {received} symbols received, at least {needed} needed")
        }
        RaptorOutcome::RankDeficient { rank } => {
            bail!("decoding failed: system rank {rank} < {}", code.params().l)
        }
    }
}

fn main() -> Result<()> {
    let args = config::expand_config(std::env::args().collect())?;
    let cli = Cli::parse_from(args);
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Simulate(a) => simulate(a),
        Command::Bounds(a) => bounds(a),
        Command::Thresholds(a) => thresholds(a),
        Command::RaptorSim(a) => raptor_sim(a),
        Command::Mindist(a) => mindist(a),
        Command::RaptorEncode(a) => raptor_encode(a),
        Command::RaptorDecode(a) => raptor_decode(a),
    }
}
