//! Oracle suites: every closed formula against an independent computation.

use std::fmt;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use frobsieve_core::arith::primes_in;
use frobsieve_core::charsum::{
    intermediate_discrepancies, jacobi_sum, jacobi_sum_closed, triple_sum, CharSumTable,
};
use frobsieve_core::elliptic::{ap_bsgs, ap_naive, TraceRecord};
use frobsieve_core::frobenius::{count_equal_fields, product_is_square_check, ChebotarevTable};
use frobsieve_core::gl2count::{
    class_count, count_det_trace_formula, count_det_trace_prime, order_h_formula, order_h_histogram,
    verify_class_counts, DetTraceTable,
};
use frobsieve_core::sieve::{
    build_prime_window, prime_char_sum_by_classes, prime_char_sum_direct, sieve_bound_v2, Multiset,
};
use frobsieve_core::CurveQ;

use crate::error::{HarnessError, Result};

/// Count formula for `#{M mod q1q2 : det M = d, tr M = t}`.
pub type PairFormula = dyn Fn(u64, u64, u64, u64) -> frobsieve_core::Result<u64> + Sync;

#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {} ({:.2?})",
            if self.passed { "ok  " } else { "FAIL" },
            self.suite,
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    /// Observations that are recorded but not pass/fail.
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    /// `Ok` if every check passed, otherwise a verification error listing the failures.
    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            return Ok(self);
        }
        let names: Vec<String> = self.failures().map(|c| format!("{}/{}", c.suite, c.name)).collect();
        Err(HarnessError::Verification(names.join(", ")))
    }

    fn run(&mut self, suite: &'static str, name: &str, f: impl FnOnce() -> frobsieve_core::Result<(bool, String)>) {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check { suite, name: name.to_string(), passed, detail, elapsed: start.elapsed() });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

pub const GL2_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];
pub const GL2_PAIRS: [(u64, u64); 3] = [(3, 5), (3, 7), (5, 7)];

/// The determinant/trace count at a single prime and at prime pairs against
/// direct enumeration, and `#H` two ways at `(3, 5)`.
pub fn verify_gl2_with(formula: &PairFormula) -> VerifyReport {
    let mut report = VerifyReport::default();
    report.run("gl2", "single_prime_counts", || {
        let mut compared = 0;
        for q in GL2_PRIMES {
            let table = DetTraceTable::enumerate(q)?;
            for d in 1..q {
                for t in 0..q {
                    let f = count_det_trace_prime(q, d, t)?;
                    if f != table.get(d, t) {
                        return Ok((false, format!("q={q} d={d} t={t}: formula {f}, enumeration {}", table.get(d, t))));
                    }
                    compared += 1;
                }
            }
        }
        Ok((true, format!("{compared} (q,d,t) cells equal")))
    });
    report.run("gl2", "pair_class_counts", || {
        let mut compared = 0;
        for (q1, q2) in GL2_PAIRS {
            for row in verify_class_counts(q1, q2, formula)? {
                if !row.equal() {
                    return Ok((false, format!("mismatch: {}", row.to_csv())));
                }
                compared += 1;
            }
        }
        Ok((true, format!("{compared} (q1,q2,d,s,t) rows equal")))
    });
    report.run("gl2", "order_h", || {
        let (f, h) = (order_h_formula(3, 5)?, order_h_histogram(3, 5)?);
        Ok((f == h, format!("formula {f}, histogram {h}")))
    });
    report.run("gl2", "class_partition", || {
        let n = 15;
        let mut total = 0u128;
        for d in (1..n).filter(|d: &u64| d.gcd(&n) == 1) {
            for s in 0..n {
                for t in 0..n {
                    total += class_count(3, 5, d, s, t)?;
                }
            }
        }
        let h = order_h_formula(3, 5)?;
        Ok((total == h, format!("sum of #C = {total}, #H = {h}")))
    });
    report
}

pub fn verify_gl2() -> VerifyReport {
    verify_gl2_with(&count_det_trace_formula)
}

pub const CHARSUM_MAX_Q: u64 = 97;
pub const TRIPLE_MAX_Q: u64 = 31;

pub fn verify_charsum() -> VerifyReport {
    let mut report = VerifyReport::default();
    let primes: Vec<u64> = primes_in(2, CHARSUM_MAX_Q);
    report.run("charsum", "weil_sum", || {
        let mut cells = 0;
        for &q in &primes {
            let table = CharSumTable::build(q)?;
            if !table.agrees() || !table.in_unit_range() {
                return Ok((false, format!("disagreement at q={q}")));
            }
            cells += table.values.len();
        }
        Ok((true, format!("{cells} (q,d) cells equal -(-1/q)")))
    });
    report.run("charsum", "jacobi_sum", || {
        for &q in &primes {
            let (j, c) = (jacobi_sum(q)?, jacobi_sum_closed(q)?);
            if j != c {
                return Ok((false, format!("q={q}: J = {j}, closed {c}")));
            }
        }
        Ok((true, format!("J(chi,chi^-1) = -chi(-1) for {} primes", primes.len())))
    });
    report.run("charsum", "triple_sum", || {
        let small = primes_in(2, TRIPLE_MAX_Q);
        let mut pairs = 0;
        for (i, &q1) in small.iter().enumerate() {
            for &q2 in &small[i + 1..] {
                let v = triple_sum(q1, q2)?;
                let bound = ((q1 - 1) * (q2 - 1)) as i64;
                if v != bound {
                    return Ok((false, format!("({q1},{q2}): {v} vs (q1-1)(q2-1) = {bound}")));
                }
                pairs += 1;
            }
        }
        Ok((true, format!("equality (q1-1)(q2-1) at {pairs} pairs")))
    });
    match intermediate_discrepancies(CHARSUM_MAX_Q) {
        Ok(d) => {
            if let Some((q, dd, b, i)) = d.iter().find(|r| r.0 == 5 && r.1 == 1) {
                report.notes.push(format!(
                    "intermediate form 1/2(-(-1/q)+(d/q)) differs from brute force at (q,d)=({q},{dd}): brute force {b}, intermediate {i}"
                ));
            }
            report.notes.push(format!(
                "intermediate form differs at {} (q,d) cells with q <= {CHARSUM_MAX_Q}",
                d.len()
            ));
        }
        Err(e) => report.notes.push(format!("intermediate form comparison failed: {e}")),
    }
    report
}

/// Fixed curves for the trace suite.
pub const TRACE_CURVES: [(i64, i64); 5] = [(2, 3), (-1, 1), (1, 1), (-7, 10), (3, -5)];

/// `p + 1 - #{(x, y) : y^2 = x^3 + Ax + B}` with `#E` counted by a double loop.
pub fn ap_enumerate(curve: &CurveQ, p: u64) -> i64 {
    let m = |v: i64| v.rem_euclid(p as i64) as u64;
    let (a, b) = (m(curve.a()), m(curve.b()));
    let mut count = 1u64;
    for x in 0..p {
        let rhs = (x * x % p * x + a * x + b) % p;
        for y in 0..p {
            if y * y % p == rhs {
                count += 1;
            }
        }
    }
    p as i64 + 1 - count as i64
}

pub fn verify_elliptic() -> VerifyReport {
    let mut report = VerifyReport::default();
    let curves: Vec<CurveQ> = TRACE_CURVES.iter().map(|&(a, b)| CurveQ::new(a, b).expect("nonsingular")).collect();
    report.run("elliptic", "naive_vs_enumeration", || {
        let mut n = 0;
        for e in &curves {
            for p in primes_in(2, 999).into_iter().filter(|&p| !e.is_bad(p)) {
                let (a, b) = (ap_naive(e, p)?, ap_enumerate(e, p));
                if a != b {
                    return Ok((false, format!("{e} p={p}: naive {a}, enumeration {b}")));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} (curve,p) pairs with p < 1000")))
    });
    report.run("elliptic", "bsgs_vs_naive", || {
        let mut n = 0;
        for e in &curves {
            for p in primes_in(2, 9_999).into_iter().filter(|&p| !e.is_bad(p)) {
                let (a, b) = (ap_bsgs(e, p)?, ap_naive(e, p)?);
                let rec = TraceRecord { p, a_p: a };
                if a != b || !rec.satisfies_hasse() {
                    return Ok((false, format!("{e} p={p}: bsgs {a}, naive {b}")));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} (curve,p) pairs with p < 10^4, Hasse bound on all")))
    });
    report
}

pub const SIEVE_RANDOM_SETS: u64 = 100;
pub const SIEVE_RANDOM_SIZE: usize = 1000;
pub const SIEVE_RANDOM_MAX: u64 = 1_000_000_000;
pub const SIEVE_RANDOM_Z: f64 = 50.0;
pub const SIEVE_CURVE_X: u64 = 10_000;
pub const SIEVE_CURVE_Z: f64 = 30.0;

/// Seeded random multiset: elements uniform in `[1, 10^9]`, a fifth of them
/// replaced by squares so the exact count is nonzero.
pub fn random_multiset(seed: u64) -> Multiset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let root_max = SIEVE_RANDOM_MAX.isqrt();
    let elements = (0..SIEVE_RANDOM_SIZE)
        .map(|_| {
            if rng.gen_ratio(1, 5) {
                rng.gen_range(1..=root_max).pow(2)
            } else {
                rng.gen_range(1..=SIEVE_RANDOM_MAX)
            }
        })
        .collect();
    Multiset::new(elements).expect("elements are positive")
}

/// Sieve inequality and the curve-pair identities for the given pair.
pub fn verify_sieve(e1: &CurveQ, e2: &CurveQ) -> VerifyReport {
    let mut report = VerifyReport::default();
    report.run("sieve", "v2_random_multisets", || {
        let window = build_prime_window(SIEVE_RANDOM_Z)?;
        let mut squares = 0;
        for seed in 0..SIEVE_RANDOM_SETS {
            let r = sieve_bound_v2(&random_multiset(seed), &window)?;
            if !r.holds() {
                return Ok((false, format!("seed {seed}: S = {} > {}", r.exact_square_count, r.bound_total)));
            }
            squares += r.exact_square_count;
        }
        Ok((true, format!("{SIEVE_RANDOM_SETS} multisets, {squares} squares in total, no violation")))
    });
    let summary = count_equal_fields(e1, e2, SIEVE_CURVE_X);
    report.run("sieve", "v2_curve_multiset", || {
        let window = build_prime_window(SIEVE_CURVE_Z)?;
        let r = sieve_bound_v2(&Multiset::from_records(&summary.records), &window)?;
        Ok((r.holds(), format!("S = {} <= {:.3} (#A = {})", r.exact_square_count, r.bound_total, r.size)))
    });
    report.run("sieve", "prime_char_sum_routes", || {
        let direct = prime_char_sum_direct(&summary.records, 3, 5)?;
        let table = ChebotarevTable::from_records(&summary.records, SIEVE_CURVE_X, 3, 5)?;
        let classes = prime_char_sum_by_classes(&table);
        Ok((direct == classes, format!("direct {direct}, by classes {classes}")))
    });
    report.run("sieve", "square_detection", || {
        let mut matched = 0;
        for r in &summary.records {
            let check = product_is_square_check(r.p, r.a_p, r.b_p)?;
            if r.matched != check || check != (r.d1 == r.d2) {
                return Ok((false, format!("p={}: matched {}, product check {check}, D1={} D2={}", r.p, r.matched, r.d1, r.d2)));
            }
            matched += r.matched as usize;
        }
        Ok((true, format!("{} good primes, {matched} matches", summary.records.len())))
    });
    report
}

/// All suites, with the demo pair for the curve-dependent checks.
pub fn verify_all_with(formula: &PairFormula, e1: &CurveQ, e2: &CurveQ) -> VerifyReport {
    let mut report = verify_gl2_with(formula);
    report.extend(verify_charsum());
    report.extend(verify_elliptic());
    report.extend(verify_sieve(e1, e2));
    report
}

pub fn verify_all() -> VerifyReport {
    let demo = crate::demo_config();
    verify_all_with(&count_det_trace_formula, &demo.curve1, &demo.curve2)
}
