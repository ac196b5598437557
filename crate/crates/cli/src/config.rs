//! Experiment configuration: line-oriented `key = value` pairs in sections.
//!
//! ```text
//! [curve1]
//! A = -1
//! B = 1
//!
//! [curve2]
//! A = 2
//! B = 3
//!
//! [experiment]
//! x_max = 1000000
//! checkpoints = 10000, 100000, 1000000
//! z_policy = grh          # grh | uncond | fixed:<z>
//! ```
//!
//! `#` starts a comment. Unknown sections or keys, duplicates, and keys
//! outside a section are errors.

use std::collections::HashMap;
use std::path::PathBuf;

use frobsieve_core::CurveQ;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZPolicy {
    Grh,
    Uncond,
    Fixed(f64),
}

impl ZPolicy {
    /// Raw `z` for sieving up to `x`, before the `z_min` floor is applied.
    pub fn raw_z(self, x: f64, c3: f64) -> frobsieve_core::Result<f64> {
        use frobsieve_core::sieve::{choose_z_grh, choose_z_uncond};
        match self {
            ZPolicy::Grh => choose_z_grh(x),
            ZPolicy::Uncond => choose_z_uncond(x, c3),
            ZPolicy::Fixed(z) => Ok(z),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub curve1: CurveQ,
    pub curve2: CurveQ,
    pub x_max: u64,
    pub checkpoints: Vec<u64>,
    pub z_policy: ZPolicy,
    /// Floor on the sieving parameter. The asymptotic choices give `z < 4`
    /// (an empty window) at every computationally reachable `x`.
    pub z_min: f64,
    pub c3: f64,
    pub moduli: Option<(u64, u64)>,
    pub cache_dir: PathBuf,
    pub threads: usize,
}

impl ExperimentConfig {
    /// Effective sieving parameter at `x`.
    pub fn sieve_z(&self, x: u64) -> frobsieve_core::Result<f64> {
        Ok(self.z_policy.raw_z(x as f64, self.c3)?.max(self.z_min))
    }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("curve1", &["A", "B"]),
    ("curve2", &["A", "B"]),
    (
        "experiment",
        &["x_max", "checkpoints", "z_policy", "z_min", "c3", "q1", "q2", "cache_dir", "threads"],
    ),
];

struct Entry {
    value: String,
    line: usize,
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut entries: HashMap<(String, String), Entry> = HashMap::new();
    let mut section: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| HarnessError::ConfigLine { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            if !SECTIONS.iter().any(|(s, _)| *s == name) {
                return Err(err(format!("unknown section [{name}]")));
            }
            section = Some(name.to_string());
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, got {content:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let sec = section.as_deref().ok_or_else(|| err(format!("key {key:?} outside any section")))?;
        let allowed = SECTIONS.iter().find(|(s, _)| *s == sec).map(|(_, k)| *k).unwrap_or(&[]);
        if !allowed.contains(&key) {
            return Err(err(format!("unknown key {key:?} in [{sec}]")));
        }
        let slot = (sec.to_string(), key.to_string());
        if let Some(prev) = entries.get(&slot) {
            return Err(err(format!("duplicate key {key:?} in [{sec}] (first set on line {})", prev.line)));
        }
        entries.insert(slot, Entry { value: value.to_string(), line });
    }

    let get = |sec: &str, key: &str| entries.get(&(sec.to_string(), key.to_string()));
    let required = |sec: &str, key: &str| {
        get(sec, key).ok_or_else(|| HarnessError::Config(format!("missing required key {key:?} in [{sec}]")))
    };
    fn parse<T: std::str::FromStr>(e: &Entry, what: &str) -> Result<T> {
        e.value.parse().map_err(|_| HarnessError::ConfigLine {
            line: e.line,
            msg: format!("malformed {what}: {:?}", e.value),
        })
    }

    let curve = |sec: &str| -> Result<CurveQ> {
        let a_entry = required(sec, "A")?;
        let a: i64 = parse(a_entry, "integer")?;
        let b: i64 = parse(required(sec, "B")?, "integer")?;
        CurveQ::new(a, b).map_err(|e| HarnessError::ConfigLine { line: a_entry.line, msg: e.to_string() })
    };
    let curve1 = curve("curve1")?;
    let curve2 = curve("curve2")?;

    let x_entry = required("experiment", "x_max")?;
    let x_max: u64 = parse(x_entry, "integer")?;
    if x_max < 100 {
        return Err(HarnessError::ConfigLine { line: x_entry.line, msg: "x_max must be at least 100".into() });
    }

    let checkpoints = match get("experiment", "checkpoints") {
        None => vec![x_max],
        Some(e) => {
            let list = e
                .value
                .split(',')
                .map(|s| {
                    s.trim().parse::<u64>().map_err(|_| HarnessError::ConfigLine {
                        line: e.line,
                        msg: format!("malformed checkpoint {:?}", s.trim()),
                    })
                })
                .collect::<Result<Vec<u64>>>()?;
            let ascending = list.windows(2).all(|w| w[0] < w[1]);
            if list.is_empty() || !ascending || list[0] < 100 || *list.last().unwrap() > x_max {
                return Err(HarnessError::ConfigLine {
                    line: e.line,
                    msg: "checkpoints must be strictly ascending, >= 100 and <= x_max".into(),
                });
            }
            list
        }
    };

    let z_policy = match get("experiment", "z_policy") {
        None => ZPolicy::Grh,
        Some(e) => match e.value.as_str() {
            "grh" => ZPolicy::Grh,
            "uncond" => ZPolicy::Uncond,
            other => {
                let z = other
                    .strip_prefix("fixed:")
                    .and_then(|z| z.trim().parse::<f64>().ok())
                    .filter(|z| *z >= 4.0)
                    .ok_or_else(|| HarnessError::ConfigLine {
                        line: e.line,
                        msg: format!("z_policy must be grh, uncond or fixed:<z >= 4>, got {other:?}"),
                    })?;
                ZPolicy::Fixed(z)
            }
        },
    };
    let z_min = match get("experiment", "z_min") {
        None => 30.0,
        Some(e) => {
            let z: f64 = parse(e, "number")?;
            if !(z >= 4.0) {
                return Err(HarnessError::ConfigLine { line: e.line, msg: "z_min must be >= 4".into() });
            }
            z
        }
    };
    let c3 = match get("experiment", "c3") {
        None => 1.0,
        Some(e) => {
            let c: f64 = parse(e, "number")?;
            if !(c > 0.0) {
                return Err(HarnessError::ConfigLine { line: e.line, msg: "c3 must be positive".into() });
            }
            c
        }
    };
    let moduli = match (get("experiment", "q1"), get("experiment", "q2")) {
        (None, None) => None,
        (Some(e1), Some(e2)) => {
            let (q1, q2): (u64, u64) = (parse(e1, "integer")?, parse(e2, "integer")?);
            frobsieve_core::frobenius::ChebotarevTable::from_records(&[], 0, q1, q2)
                .map_err(|e| HarnessError::ConfigLine { line: e1.line, msg: e.to_string() })?;
            Some((q1, q2))
        }
        (Some(e), None) | (None, Some(e)) => {
            return Err(HarnessError::ConfigLine { line: e.line, msg: "q1 and q2 must be given together".into() })
        }
    };
    let cache_dir = get("experiment", "cache_dir")
        .map(|e| PathBuf::from(&e.value))
        .unwrap_or_else(|| PathBuf::from(".frobsieve-cache"));
    let threads = match get("experiment", "threads") {
        None => default_threads(),
        Some(e) => {
            let t: usize = parse(e, "integer")?;
            if t == 0 {
                return Err(HarnessError::ConfigLine { line: e.line, msg: "threads must be positive".into() });
            }
            t
        }
    };

    Ok(ExperimentConfig {
        curve1,
        curve2,
        x_max,
        checkpoints,
        z_policy,
        z_min,
        c3,
        moduli,
        cache_dir,
        threads,
    })
}

pub fn load_config(path: &std::path::Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[curve1]\nA = -1\nB = 1\n[curve2]\nA = 2\nB = 3\n[experiment]\nx_max = 1000\n";

    #[test]
    fn minimal_file_gets_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.curve1, CurveQ::new(-1, 1).unwrap());
        assert_eq!(c.checkpoints, vec![1000]);
        assert_eq!(c.z_policy, ZPolicy::Grh);
        assert_eq!(c.threads, default_threads());
        assert_eq!(c.moduli, None);
        assert_eq!(c.sieve_z(1000).unwrap(), 30.0);
    }

    #[test]
    fn full_file() {
        let text = format!(
            "# demo\n{MINIMAL}checkpoints = 100, 500,1000\nz_policy = fixed:50 # comment\nq1 = 3\nq2 = 5\nthreads = 3\ncache_dir = /tmp/x\nc3 = 0.5\nz_min = 10\n"
        );
        let c = parse_config(&text).unwrap();
        assert_eq!(c.checkpoints, vec![100, 500, 1000]);
        assert_eq!(c.z_policy, ZPolicy::Fixed(50.0));
        assert_eq!(c.moduli, Some((3, 5)));
        assert_eq!(c.threads, 3);
        assert_eq!(c.cache_dir, PathBuf::from("/tmp/x"));
        assert_eq!(c.sieve_z(1000).unwrap(), 50.0);
    }

    #[test]
    fn singular_curve_rejected() {
        let text = MINIMAL.replace("A = 2\nB = 3", "A = 0\nB = 0");
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, HarnessError::ConfigLine { line: 5, .. }), "{err}");
        assert!(err.to_string().contains("discriminant 0"));
    }

    #[test]
    fn duplicate_key_names_line() {
        let text = format!("{MINIMAL}x_max = 2000\n");
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, HarnessError::ConfigLine { line: 9, .. }), "{err}");
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn rejections() {
        let cases = [
            MINIMAL.replace("x_max = 1000", "x_max = 1e3"),
            MINIMAL.replace("x_max = 1000\n", ""),
            format!("{MINIMAL}speed = 3\n"),
            format!("A = 1\n{MINIMAL}"),
            format!("{MINIMAL}[extra]\n"),
            format!("{MINIMAL}checkpoints = 500, 200\n"),
            format!("{MINIMAL}checkpoints = 500, 2000\n"),
            format!("{MINIMAL}z_policy = sometimes\n"),
            format!("{MINIMAL}q1 = 3\n"),
            format!("{MINIMAL}q1 = 3\nq2 = 3\n"),
            format!("{MINIMAL}threads = 0\n"),
            format!("{MINIMAL}garbage line\n"),
        ];
        for text in &cases {
            assert!(parse_config(text).is_err(), "accepted:\n{text}");
        }
    }
}
