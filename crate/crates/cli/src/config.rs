//! Flat `key=value` config files and sweep range syntax.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// Parses `key=value` lines. Blank lines and `#` comments are ignored.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key=value", i + 1);
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            bail!("config line {}: empty key", i + 1);
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

/// Rewrites `argv` so that settings from `--config FILE` appear right after
/// the subcommand. Later flags win, so anything given on the command line
/// overrides the file.
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let (path, consumed) = match args[pos].strip_prefix("--config=") {
        Some(p) => (p.to_string(), 1),
        None => match args.get(pos + 1) {
            Some(p) => (p.clone(), 2),
            None => bail!("--config needs a file"),
        },
    };
    let text = fs::read_to_string(Path::new(&path)).with_context(|| format!("reading config {path}"))?;
    let mut injected = Vec::new();
    for (key, value) in parse_config(&text)? {
        match value.as_str() {
            "true" => injected.push(format!("--{key}")),
            "false" => {}
            _ => injected.push(format!("--{key}={value}")),
        }
    }
    let mut rest = args;
    rest.drain(pos..pos + consumed);
    // argv[0], then the subcommand, then config settings, then user flags
    let split = rest.len().min(2);
    let mut out: Vec<String> = rest[..split].to_vec();
    out.extend(injected);
    out.extend_from_slice(&rest[split..]);
    Ok(out)
}

/// Inclusive `start:stop:step` range, or a single value.
pub fn parse_float_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.trim().parse::<f64>().with_context(|| format!("bad number {s:?} in range {spec:?}"));
    match parts.as_slice() {
        [v] => Ok(vec![num(v)?]),
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                bail!("range {spec:?} needs start <= stop and a positive step");
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        _ => bail!("range {spec:?} is not start:stop:step"),
    }
}

/// Inclusive `start:stop[:step]` integer range, or a single value.
pub fn parse_int_range(spec: &str) -> Result<Vec<i64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.trim().parse::<i64>().with_context(|| format!("bad integer {s:?} in range {spec:?}"));
    let (start, stop, step) = match parts.as_slice() {
        [v] => return Ok(vec![num(v)?]),
        [a, b] => (num(a)?, num(b)?, 1),
        [a, b, c] => (num(a)?, num(b)?, num(c)?),
        _ => bail!("range {spec:?} is not start:stop[:step]"),
    };
    if step <= 0 || stop < start {
        bail!("range {spec:?} needs start <= stop and a positive step");
    }
    Ok((start..=stop).step_by(step as usize).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_float_range("0.40:0.50:0.005").unwrap().len(), 21);
        assert_eq!(parse_float_range("0.3").unwrap(), vec![0.3]);
        assert_eq!(parse_float_range("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(parse_float_range("0.5:0.4:0.1").is_err());
        assert!(parse_float_range("0:1:0").is_err());
        assert!(parse_float_range("a:b:c").is_err());
        assert_eq!(parse_int_range("0:30").unwrap().len(), 31);
        assert_eq!(parse_int_range("-2:4:3").unwrap(), vec![-2, 1, 4]);
        assert_eq!(parse_int_range("7").unwrap(), vec![7]);
    }

    #[test]
    fn config_lines() {
        let c = parse_config("# comment\nseed = 4\nmax_trials=10\n\n").unwrap();
        assert_eq!(c, vec![("seed".into(), "4".into()), ("max-trials".into(), "10".into())]);
        assert!(parse_config("novalue\n").is_err());
    }
}
