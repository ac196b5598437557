//! Counters against independent recounts, and stream invariants.

use frobsieve_core::arith::{primes_in, squarefree_decompose};
use frobsieve_core::elliptic::{ap_naive, trace_table};
use frobsieve_core::frobenius::{
    count_equal_fields, count_fixed_field, count_fixed_trace, count_joint_traces, ChebotarevTable,
    MatchRecord,
};
use frobsieve_core::gl2count::class_ratio;
use frobsieve_core::{is_perfect_square, jacobi, CurveQ, TraceMethod};
use num_integer::Integer;
use num_rational::Ratio;
use proptest::prelude::*;

const X: u64 = 5_000;

fn pair() -> (CurveQ, CurveQ) {
    (CurveQ::new(-1, 1).unwrap(), CurveQ::new(2, 3).unwrap())
}

/// `(p, a_p, b_p)` over primes good for both, traces by direct counting.
fn recount(e1: &CurveQ, e2: &CurveQ, x: u64) -> Vec<(u64, i64, i64)> {
    primes_in(0, x)
        .into_iter()
        .filter(|&p| !e1.is_bad(p) && !e2.is_bad(p))
        .map(|p| (p, ap_naive(e1, p).unwrap(), ap_naive(e2, p).unwrap()))
        .collect()
}

fn field(p: u64, a: i64) -> u64 {
    squarefree_decompose((4 * p as i64 - a * a) as u64).unwrap().squarefree
}

#[test]
fn equal_fields_recount() {
    let (e1, e2) = pair();
    let summary = count_equal_fields(&e1, &e2, X);
    let rows = recount(&e1, &e2, X);
    let expected = rows.iter().filter(|&&(p, a, b)| field(p, a) == field(p, b)).count();
    assert_eq!(summary.count, expected);
    assert_eq!(summary.records.len(), rows.len());
    for (r, &(p, a, b)) in summary.records.iter().zip(&rows) {
        assert_eq!((r.p, r.a_p, r.b_p), (p, a, b));
    }
    let bad: Vec<u64> = primes_in(0, X).into_iter().filter(|&p| e1.is_bad(p) || e2.is_bad(p)).collect();
    assert_eq!(summary.excluded, bad);
}

#[test]
fn fixed_trace_and_field_recount() {
    let (e1, e2) = pair();
    let rows = recount(&e1, &e1, X);
    for t in [-3, 0, 1, 2, 10] {
        let expected = rows.iter().filter(|r| r.1 == t).count();
        assert_eq!(count_fixed_trace(&e1, t, X), expected, "t = {t}");
    }
    assert_eq!(count_fixed_trace(&e1, 1000, X), 0);
    for d in [1, 2, 3, 7, 11] {
        let expected = rows.iter().filter(|r| field(r.0, r.1) == d).count();
        assert_eq!(count_fixed_field(&e1, d, X).unwrap(), expected, "D = {d}");
    }
    assert!(count_fixed_field(&e1, 12, X).is_err());
    let rows = recount(&e1, &e2, X);
    for (t1, t2) in [(0, 0), (1, -1), (2, 2), (-4, 3)] {
        let expected = rows.iter().filter(|r| r.1 == t1 && r.2 == t2).count();
        assert_eq!(count_joint_traces(&e1, &e2, t1, t2, X), expected);
    }
}

#[test]
fn twists_match_everywhere() {
    let e = CurveQ::new(-1, 1).unwrap();
    let tw = e.twist(-1).unwrap();
    let summary = count_equal_fields(&e, &tw, X);
    assert_eq!(summary.count, summary.records.len());
    assert!(summary.records.iter().all(|r| r.b_p == jacobi(-1, r.p as i64).unwrap() as i64 * r.a_p));
    let same = count_equal_fields(&e, &e, X);
    assert_eq!(same.count, same.records.len());
}

#[test]
fn prefixes_agree_with_capped_runs() {
    let (e1, e2) = pair();
    let full = count_equal_fields(&e1, &e2, X);
    for x in [100, 1000, 2500] {
        assert_eq!(full.truncated(x), count_equal_fields(&e1, &e2, x));
    }
}

#[test]
fn tables_independent_of_pool_size() {
    let e = CurveQ::new(-7, 10).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| trace_table(&e, 0, 200_000, TraceMethod::Bsgs))
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn chebotarev_cells_partition_the_stream() {
    let (e1, e2) = pair();
    let summary = count_equal_fields(&e1, &e2, X);
    let table = ChebotarevTable::from_records(&summary.records, X, 3, 5).unwrap();
    let coprime = summary.records.iter().filter(|r| r.p.gcd(&15) == 1).count() as u64;
    assert_eq!(table.total(), coprime);
    let r = summary.records.iter().find(|r| r.p > 15).unwrap();
    let m = |v: i64| v.rem_euclid(15) as u64;
    assert!(table.get(r.p % 15, m(r.a_p), m(r.b_p)) >= 1);
}

#[test]
fn class_ratios_sum_to_one() {
    for (q1, q2) in [(3, 5), (3, 7)] {
        let n = q1 * q2;
        let mut total = Ratio::from_integer(0i128);
        for d in (1..n).filter(|d: &u64| d.gcd(&n) == 1) {
            for s in 0..n {
                for t in 0..n {
                    total += class_ratio(q1, q2, d, s, t).unwrap();
                }
            }
        }
        assert_eq!(total, Ratio::from_integer(1));
    }
}

proptest! {
    #[test]
    fn match_iff_product_square(idx in 0usize..1000, a in -200i64..=200, b in -200i64..=200) {
        let primes = primes_in(10_000, 1_000_000);
        let p = primes[idx * 37 % primes.len()];
        let r = MatchRecord::new(p, a, b).unwrap();
        prop_assert_eq!(r.matched, is_perfect_square(r.product()));
        prop_assert_eq!(r.matched, field(p, a) == field(p, b));
    }
}
