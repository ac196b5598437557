//! Plain-text trace cache.
//!
//! ```text
//! #curve A=<A> B=<B>
//! <p>\t<a_p>
//! ```
//!
//! One line per good prime, ascending. A reader only accepts a file whose
//! header names the requested curve.

use std::io::{BufRead, Write};

use super::{CurveQ, TraceRecord};
use crate::error::{Error, Result};

fn header(curve: &CurveQ) -> String {
    format!("#curve A={} B={}", curve.a(), curve.b())
}

pub fn write_trace_cache<W: Write>(mut w: W, curve: &CurveQ, records: &[TraceRecord]) -> std::io::Result<()> {
    writeln!(w, "{}", header(curve))?;
    for r in records {
        writeln!(w, "{}\t{}", r.p, r.a_p)?;
    }
    w.flush()
}

/// Parses and validates a cache. Rejects a mismatched header, unsorted or
/// duplicate primes, bad primes, and traces outside the Hasse bound.
pub fn read_trace_cache<R: BufRead>(r: R, curve: &CurveQ) -> Result<Vec<TraceRecord>> {
    let mut lines = r.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Cache("empty file".into()))?
        .map_err(|e| Error::Cache(e.to_string()))?;
    if first.trim_end() != header(curve) {
        return Err(Error::Cache(format!("header {first:?} does not match {:?}", header(curve))));
    }
    let mut out: Vec<TraceRecord> = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::Cache(e.to_string()))?;
        let lineno = i + 2;
        let bad = || Error::Cache(format!("line {lineno}: malformed record {line:?}"));
        let (p, a) = line.split_once('\t').ok_or_else(bad)?;
        let rec = TraceRecord {
            p: p.parse().map_err(|_| bad())?,
            a_p: a.parse().map_err(|_| bad())?,
        };
        if out.last().is_some_and(|prev| prev.p >= rec.p) {
            return Err(Error::Cache(format!("line {lineno}: primes not ascending")));
        }
        if curve.is_bad(rec.p) || !rec.satisfies_hasse() {
            return Err(Error::Cache(format!("line {lineno}: invalid record for this curve")));
        }
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{trace_table, TraceMethod};

    #[test]
    fn round_trip() {
        let c = CurveQ::new(-1, 1).unwrap();
        let t = trace_table(&c, 0, 2000, TraceMethod::Bsgs);
        let mut buf = Vec::new();
        write_trace_cache(&mut buf, &c, &t.records).unwrap();
        assert!(buf.starts_with(b"#curve A=-1 B=1\n5\t"));
        assert_eq!(read_trace_cache(&buf[..], &c).unwrap(), t.records);
    }

    #[test]
    fn rejects_other_curve_and_corruption() {
        let c = CurveQ::new(-1, 1).unwrap();
        let other = CurveQ::new(1, 1).unwrap();
        let text = "#curve A=-1 B=1\n5\t-2\n7\t3\n";
        assert!(read_trace_cache(text.as_bytes(), &c).is_ok());
        assert!(read_trace_cache(text.as_bytes(), &other).is_err());
        assert!(read_trace_cache("".as_bytes(), &c).is_err());
        assert!(read_trace_cache("#curve A=-1 B=1\n7\t3\n5\t-2\n".as_bytes(), &c).is_err());
        assert!(read_trace_cache("#curve A=-1 B=1\n5\t9\n".as_bytes(), &c).is_err());
        assert!(read_trace_cache("#curve A=-1 B=1\n5 -2\n".as_bytes(), &c).is_err());
        assert!(read_trace_cache("#curve A=-1 B=1\n23\t1\n".as_bytes(), &c).is_err());
    }
}
