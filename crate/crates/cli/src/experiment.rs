//! The end-to-end growth experiment for one curve pair.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use frobsieve_core::elliptic::TraceMethod;
use frobsieve_core::frobenius::{ChebotarevTable, MatchSummary};
use frobsieve_core::sieve::{
    build_prime_window, prime_char_sum_by_classes, prime_char_sum_direct, sieve_bound_v1, sieve_bound_v2,
    theorem_bound_curves, BoundShape, Multiset, SieveReport,
};
use frobsieve_core::MatchRecord;

use crate::cache::{load_traces, CacheState};
use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::svg;

/// One checkpoint of the growth table.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub x: u64,
    /// `S(E1, E2; x)`.
    pub s_equal_fields: usize,
    /// Common supersingular primes, `a_p = b_p = 0`.
    pub s_joint_00: usize,
    /// Primes `<= x` good for both curves.
    pub pi_good: usize,
    pub grh_shape: f64,
    pub uncond_shape: f64,
    pub loglog_shape: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GrowthSeries {
    pub rows: Vec<GrowthRow>,
}

impl GrowthSeries {
    pub const CSV_HEADER: &'static str = "x,S_equal_fields,S_joint_00,pi_good,grh_shape,uncond_shape,loglog_shape";

    pub fn from_records(records: &[MatchRecord], checkpoints: &[u64]) -> frobsieve_core::Result<Self> {
        let mut rows = Vec::with_capacity(checkpoints.len());
        for &x in checkpoints {
            let upto = &records[..records.partition_point(|r| r.p <= x)];
            let xf = x as f64;
            rows.push(GrowthRow {
                x,
                s_equal_fields: upto.iter().filter(|r| r.matched).count(),
                s_joint_00: upto.iter().filter(|r| r.a_p == 0 && r.b_p == 0).count(),
                pi_good: upto.len(),
                grh_shape: theorem_bound_curves(xf, BoundShape::Grh)?,
                uncond_shape: theorem_bound_curves(xf, BoundShape::Uncond)?,
                loglog_shape: xf.ln().ln(),
            });
        }
        Ok(GrowthSeries { rows })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.x, r.s_equal_fields, r.s_joint_00, r.pi_good, r.grh_shape, r.uncond_shape, r.loglog_shape
            ));
        }
        out
    }

    /// `S / pi_good` at each checkpoint.
    pub fn match_density(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.s_equal_fields as f64 / r.pi_good.max(1) as f64).collect()
    }
}

pub const MATCH_CSV_HEADER: &str = "p,a_p,b_p,D1,D2,matched";

pub fn matches_csv(records: &[MatchRecord]) -> String {
    let mut out = String::with_capacity(32 * (records.len() + 1));
    out.push_str(MATCH_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!("{},{},{},{},{},{}\n", r.p, r.a_p, r.b_p, r.d1, r.d2, r.matched));
    }
    out
}

pub fn sieve_csv(reports: &[SieveReport]) -> String {
    let mut out = String::from(SieveReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Sieve evaluations on the curve-pair multiset for `p <= x`: always
/// version 2, plus version 1 when `max A <= e^P` holds.
pub fn sieve_reports(records: &[MatchRecord], x: u64, z: f64) -> frobsieve_core::Result<Vec<SieveReport>> {
    let upto = &records[..records.partition_point(|r| r.p <= x)];
    let a = Multiset::from_records(upto);
    let window = build_prime_window(z)?;
    let mut out = Vec::new();
    match sieve_bound_v1(&a, &window) {
        Ok(r) => out.push(r),
        Err(frobsieve_core::Error::SieveCondition { .. }) => {}
        Err(e) => return Err(e),
    }
    out.push(sieve_bound_v2(&a, &window)?);
    Ok(out)
}

/// Everything an experiment run produced.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub growth: GrowthSeries,
    pub summary: MatchSummary,
    pub sieve: Vec<(u64, Vec<SieveReport>)>,
    pub cache_states: [CacheState; 2],
    pub files: Vec<PathBuf>,
}

/// Computes and merges both trace streams with `threads` workers.
pub fn match_summary(
    config: &ExperimentConfig,
    cache: Option<&Path>,
) -> Result<(MatchSummary, [CacheState; 2])> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    pool.install(|| {
        let (t1, s1) = load_traces(&config.curve1, config.x_max, cache, TraceMethod::Bsgs)?;
        let (t2, s2) = load_traces(&config.curve2, config.x_max, cache, TraceMethod::Bsgs)?;
        Ok((MatchSummary::from_tables(&t1, &t2), [s1, s2]))
    })
}

fn write(path: PathBuf, contents: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    let mut f = fs::File::create(&path).map_err(|e| HarnessError::io(&path, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| HarnessError::io(&path, e))?;
    files.push(path);
    Ok(())
}

/// Runs the experiment and writes `matches.csv`, `growth.csv`,
/// `sieve_x<x>.csv` per checkpoint, `growth.svg`, and, when moduli are
/// configured, `chebotarev.csv` and `prime_char_sum.csv` into `out`.
pub fn run_experiment(config: &ExperimentConfig, out: &Path) -> Result<ExperimentOutcome> {
    fs::create_dir_all(out).map_err(|e| HarnessError::io(out, e))?;
    let (summary, cache_states) = match_summary(config, Some(&config.cache_dir))?;
    let growth = GrowthSeries::from_records(&summary.records, &config.checkpoints)?;
    let mut files = Vec::new();
    write(out.join("matches.csv"), &matches_csv(&summary.records), &mut files)?;
    write(out.join("growth.csv"), &growth.to_csv(), &mut files)?;

    let mut sieve = Vec::new();
    for &x in &config.checkpoints {
        let reports = sieve_reports(&summary.records, x, config.sieve_z(x)?)?;
        if let Some(v2) = reports.iter().find(|r| r.version.number() == 2) {
            if !v2.holds() {
                return Err(HarnessError::Verification(format!("square sieve v2 violated at x = {x}")));
            }
        }
        write(out.join(format!("sieve_x{x}.csv")), &sieve_csv(&reports), &mut files)?;
        sieve.push((x, reports));
    }

    if let Some((q1, q2)) = config.moduli {
        let table = ChebotarevTable::from_records(&summary.records, config.x_max, q1, q2)?;
        let mut csv = String::from("d,s,t,empirical,predicted\n");
        for (d, s, t, e, p) in table.against_prediction()? {
            csv.push_str(&format!("{d},{s},{t},{e},{p}\n"));
        }
        write(out.join("chebotarev.csv"), &csv, &mut files)?;
        let mut csv = String::from("x,q1,q2,direct,by_classes\n");
        for &x in &config.checkpoints {
            let upto = &summary.records[..summary.records.partition_point(|r| r.p <= x)];
            let direct = prime_char_sum_direct(upto, q1, q2)?;
            let classes = prime_char_sum_by_classes(&ChebotarevTable::from_records(upto, x, q1, q2)?);
            csv.push_str(&format!("{x},{q1},{q2},{direct},{classes}\n"));
        }
        write(out.join("prime_char_sum.csv"), &csv, &mut files)?;
    }

    write(out.join("growth.svg"), &svg::growth_plot(&growth), &mut files)?;
    Ok(ExperimentOutcome { growth, summary, sieve, cache_states, files })
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobsieve_core::CurveQ;

    #[test]
    fn growth_rows_from_stream() {
        let recs = vec![
            MatchRecord::new(5, 0, 0).unwrap(),
            MatchRecord::new(7, -4, 2).unwrap(),
            MatchRecord::new(11, 2, -2).unwrap(),
            MatchRecord::new(101, 0, 0).unwrap(),
        ];
        let g = GrowthSeries::from_records(&recs, &[100, 200]).unwrap();
        assert_eq!(g.rows[0].s_equal_fields, 2);
        assert_eq!(g.rows[0].s_joint_00, 1);
        assert_eq!(g.rows[0].pi_good, 3);
        assert_eq!(g.rows[1].s_equal_fields, 3);
        assert!(g.to_csv().starts_with("x,S_equal_fields,S_joint_00,pi_good,grh_shape,uncond_shape,loglog_shape\n100,2,1,3,"));
    }

    #[test]
    fn match_csv_layout() {
        let e = CurveQ::new(0, 1).unwrap();
        let s = frobsieve_core::frobenius::count_equal_fields(&e, &e, 12);
        assert_eq!(matches_csv(&s.records), "p,a_p,b_p,D1,D2,matched\n5,0,0,5,5,true\n7,-4,-4,3,3,true\n11,0,0,11,11,true\n");
    }
}
