//! Trace files on disk, one per curve, extended on demand.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use frobsieve_core::elliptic::{read_trace_cache, trace_table, write_trace_cache, TraceMethod, TraceTable};
use frobsieve_core::CurveQ;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheState {
    /// No usable cache file; everything was computed.
    Cold,
    /// The cache covered part of the range and was extended.
    Extended,
    /// The cache covered the whole range.
    Warm,
    /// A cache file existed but was rejected and rebuilt.
    Rebuilt,
}

pub fn cache_path(dir: &Path, curve: &CurveQ) -> PathBuf {
    dir.join(format!("curve_A{}_B{}.tsv", curve.a(), curve.b()))
}

/// Traces of `curve` at all good primes `<= x`, reading and updating the
/// cache in `dir` when one is given. A cache that fails validation is
/// recomputed, never reused.
pub fn load_traces(curve: &CurveQ, x: u64, dir: Option<&Path>, method: TraceMethod) -> Result<(TraceTable, CacheState)> {
    let excluded: Vec<u64> = curve.bad_primes().iter().copied().filter(|&p| p <= x).collect();
    let Some(dir) = dir else {
        return Ok((trace_table(curve, 0, x, method), CacheState::Cold));
    };
    let path = cache_path(dir, curve);
    let (mut records, mut state) = match File::open(&path) {
        Err(_) => (Vec::new(), CacheState::Cold),
        Ok(f) => match read_trace_cache(BufReader::new(f), curve) {
            Ok(r) => (r, CacheState::Warm),
            Err(e) => {
                eprintln!("warning: ignoring {}: {e}", path.display());
                (Vec::new(), CacheState::Rebuilt)
            }
        },
    };
    let covered = records.last().map_or(0, |r| r.p);
    if covered < x {
        let fresh = trace_table(curve, covered, x, method);
        if !fresh.records.is_empty() || records.is_empty() {
            records.extend(fresh.records);
            if state == CacheState::Warm {
                state = CacheState::Extended;
            }
            write_atomic(&path, curve, &records)?;
        }
    }
    let cut = records.partition_point(|r| r.p <= x);
    records.truncate(cut);
    Ok((TraceTable { records, excluded }, state))
}

fn write_atomic(path: &Path, curve: &CurveQ, records: &[frobsieve_core::TraceRecord]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let tmp = path.with_extension("tsv.tmp");
    let f = File::create(&tmp).map_err(|e| HarnessError::io(&tmp, e))?;
    write_trace_cache(BufWriter::new(f), curve, records).map_err(|e| HarnessError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| HarnessError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cold_warm_extend_and_rebuild() {
        let dir = tempfile::tempdir().unwrap();
        let curve = CurveQ::new(-1, 1).unwrap();
        let reference = trace_table(&curve, 0, 5000, TraceMethod::Bsgs);

        let (t, s) = load_traces(&curve, 2000, Some(dir.path()), TraceMethod::Bsgs).unwrap();
        assert_eq!(s, CacheState::Cold);
        let (t2, s2) = load_traces(&curve, 1000, Some(dir.path()), TraceMethod::Bsgs).unwrap();
        assert_eq!(s2, CacheState::Warm);
        assert_eq!(t2.records, t.records[..t.records.partition_point(|r| r.p <= 1000)]);

        let (t3, s3) = load_traces(&curve, 5000, Some(dir.path()), TraceMethod::Bsgs).unwrap();
        assert_eq!(s3, CacheState::Extended);
        assert_eq!(t3, reference);

        std::fs::write(cache_path(dir.path(), &curve), "#curve A=-1 B=1\n5\tx\n").unwrap();
        let (t4, s4) = load_traces(&curve, 5000, Some(dir.path()), TraceMethod::Bsgs).unwrap();
        assert_eq!(s4, CacheState::Rebuilt);
        assert_eq!(t4, reference);

        // a cache for another curve under this curve's name is rejected
        std::fs::write(cache_path(dir.path(), &curve), "#curve A=1 B=1\n5\t-3\n").unwrap();
        let (t5, s5) = load_traces(&curve, 5000, Some(dir.path()), TraceMethod::Bsgs).unwrap();
        assert_eq!(s5, CacheState::Rebuilt);
        assert_eq!(t5, reference);
    }
}
