//! Frobenius fields `Q(sqrt(a_p^2 - 4p)) = Q(sqrt(-D))` and the prime-counting
//! functions built from traces of one or two curves.
//!
//! All counters range over primes `5 <= p <= x` that are good for every curve
//! involved; skipped primes are returned alongside the counts.

use crate::arith::{is_perfect_square, squarefree_decompose, squarefree_part};
use crate::elliptic::{ap_bsgs, trace_table, CurveQ, TraceMethod, TraceTable};
use crate::error::{Error, Result};

/// The imaginary quadratic field `Q(sqrt(-D))`, `D` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrobeniusFieldTag(u64);

impl FrobeniusFieldTag {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Zero("D"));
        }
        if squarefree_decompose(d)?.root != 1 {
            return Err(Error::NotSquarefree(d));
        }
        Ok(FrobeniusFieldTag(d))
    }

    pub fn d(self) -> u64 {
        self.0
    }
}

/// Field tag for trace `a` at `p`: `D` is the squarefree part of `4p - a^2`.
pub fn field_of_trace(p: u64, a: i64) -> Result<FrobeniusFieldTag> {
    let disc = 4 * p as i128 - (a as i128).pow(2);
    if disc <= 0 {
        return Err(Error::Domain(format!("trace {a} violates a^2 < 4p at p = {p}")));
    }
    Ok(FrobeniusFieldTag(squarefree_part(disc as u64)?))
}

pub fn frobenius_field(curve: &CurveQ, p: u64) -> Result<FrobeniusFieldTag> {
    field_of_trace(p, ap_bsgs(curve, p)?)
}

/// Whether `(4p - a^2)(4p - b^2)` is a perfect square, which holds exactly
/// when both factors have the same squarefree part.
pub fn product_is_square_check(p: u64, a: i64, b: i64) -> Result<bool> {
    let four_p = 4 * p as i128;
    let (da, db) = (four_p - (a as i128).pow(2), four_p - (b as i128).pow(2));
    if da <= 0 || db <= 0 {
        return Err(Error::Domain(format!("traces ({a}, {b}) violate the Hasse bound at p = {p}")));
    }
    let prod = u64::try_from(da * db)
        .map_err(|_| Error::Domain(format!("(4p-a^2)(4p-b^2) overflows u64 at p = {p}")))?;
    Ok(is_perfect_square(prod))
}

/// One row of the joint trace stream for a pair of curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchRecord {
    pub p: u64,
    pub a_p: i64,
    pub b_p: i64,
    pub d1: u64,
    pub d2: u64,
    pub matched: bool,
}

impl MatchRecord {
    pub fn new(p: u64, a_p: i64, b_p: i64) -> Result<Self> {
        let d1 = field_of_trace(p, a_p)?.d();
        let d2 = field_of_trace(p, b_p)?.d();
        Ok(MatchRecord { p, a_p, b_p, d1, d2, matched: d1 == d2 })
    }

    /// `(4p - a_p^2)(4p - b_p^2)`.
    pub fn product(&self) -> u64 {
        let four_p = 4 * self.p as i128;
        ((four_p - (self.a_p as i128).pow(2)) * (four_p - (self.b_p as i128).pow(2))) as u64
    }
}

/// Result of a pair count: the matching primes, the full stream and the
/// primes skipped as bad for either curve (or `p <= 3`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchSummary {
    pub count: usize,
    pub records: Vec<MatchRecord>,
    pub excluded: Vec<u64>,
}

impl MatchSummary {
    /// Merges two trace tables over the same prime range into the joint stream.
    pub fn from_tables(t1: &TraceTable, t2: &TraceTable) -> MatchSummary {
        let mut records = Vec::with_capacity(t1.records.len().min(t2.records.len()));
        let mut excluded: Vec<u64> = t1.excluded.iter().chain(&t2.excluded).copied().collect();
        let (mut i, mut j) = (0, 0);
        while i < t1.records.len() && j < t2.records.len() {
            let (r1, r2) = (t1.records[i], t2.records[j]);
            match r1.p.cmp(&r2.p) {
                std::cmp::Ordering::Equal => {
                    records.push(MatchRecord::new(r1.p, r1.a_p, r2.a_p).expect("Hasse-bounded traces"));
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Less => {
                    excluded.push(r1.p);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    excluded.push(r2.p);
                    j += 1;
                }
            }
        }
        excluded.extend(t1.records[i..].iter().map(|r| r.p));
        excluded.extend(t2.records[j..].iter().map(|r| r.p));
        excluded.sort_unstable();
        excluded.dedup();
        let count = records.iter().filter(|r| r.matched).count();
        MatchSummary { count, records, excluded }
    }

    /// Restriction to `p <= x`.
    pub fn truncated(&self, x: u64) -> MatchSummary {
        let cut = self.records.partition_point(|r| r.p <= x);
        let records = self.records[..cut].to_vec();
        MatchSummary {
            count: records.iter().filter(|r| r.matched).count(),
            records,
            excluded: self.excluded.iter().copied().filter(|&p| p <= x).collect(),
        }
    }
}

/// `S(E1, E2; x)`: good primes `p <= x` with equal Frobenius fields.
pub fn count_equal_fields(e1: &CurveQ, e2: &CurveQ, x: u64) -> MatchSummary {
    let t1 = trace_table(e1, 0, x, TraceMethod::Bsgs);
    let t2 = trace_table(e2, 0, x, TraceMethod::Bsgs);
    MatchSummary::from_tables(&t1, &t2)
}

/// `#{p <= x good : a_p = t}`.
pub fn count_fixed_trace(e: &CurveQ, t: i64, x: u64) -> usize {
    if (t as i128).pow(2) > 4 * x as i128 {
        return 0;
    }
    trace_table(e, 0, x, TraceMethod::Bsgs)
        .records
        .iter()
        .filter(|r| r.a_p == t)
        .count()
}

/// `#{p <= x good : F(E, p) = Q(sqrt(-D))}`.
pub fn count_fixed_field(e: &CurveQ, d: u64, x: u64) -> Result<usize> {
    let tag = FrobeniusFieldTag::new(d)?;
    Ok(trace_table(e, 0, x, TraceMethod::Bsgs)
        .records
        .iter()
        .filter(|r| field_of_trace(r.p, r.a_p).expect("Hasse") == tag)
        .count())
}

/// `#{p <= x good for both : a_p(E1) = t1, a_p(E2) = t2}`.
pub fn count_joint_traces(e1: &CurveQ, e2: &CurveQ, t1: i64, t2: i64, x: u64) -> usize {
    if (t1 as i128).pow(2) > 4 * x as i128 || (t2 as i128).pow(2) > 4 * x as i128 {
        return 0;
    }
    count_equal_fields(e1, e2, x)
        .records
        .iter()
        .filter(|r| r.a_p == t1 && r.b_p == t2)
        .count()
}

/// Empirical counts `pi(x; d, s, t)` over residues modulo `n = q1 q2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebotarevTable {
    pub q1: u64,
    pub q2: u64,
    pub x: u64,
    cells: Vec<u64>,
}

/// Largest `q1 q2` for which the `(q1 q2)^3` table is built.
pub const CHEBOTAREV_MAX_MODULUS: u64 = 35;

impl ChebotarevTable {
    pub fn modulus(&self) -> u64 {
        self.q1 * self.q2
    }

    fn index(&self, d: u64, s: u64, t: u64) -> usize {
        let n = self.modulus();
        ((d % n * n + s % n) * n + t % n) as usize
    }

    /// `#{p <= x good : p ≡ d, a_p ≡ s, b_p ≡ t (mod q1 q2)}`.
    pub fn get(&self, d: u64, s: u64, t: u64) -> u64 {
        self.cells[self.index(d, s, t)]
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }

    /// Iterates `(d, s, t, count)` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64, u64, u64)> + '_ {
        let n = self.modulus();
        (0..n).flat_map(move |d| {
            (0..n).flat_map(move |s| (0..n).map(move |t| (d, s, t, self.get(d, s, t))))
        })
    }

    /// Builds the table from an existing joint stream, using records with `p <= x`.
    pub fn from_records(records: &[MatchRecord], x: u64, q1: u64, q2: u64) -> Result<Self> {
        check_pair(q1, q2)?;
        let n = q1 * q2;
        if n > CHEBOTAREV_MAX_MODULUS {
            return Err(Error::TooLarge { modulus: n, limit: CHEBOTAREV_MAX_MODULUS });
        }
        let mut table = ChebotarevTable { q1, q2, x, cells: vec![0; (n * n * n) as usize] };
        for r in records.iter().take_while(|r| r.p <= x) {
            let s = r.a_p.rem_euclid(n as i64) as u64;
            let t = r.b_p.rem_euclid(n as i64) as u64;
            let idx = table.index(r.p, s, t);
            table.cells[idx] += 1;
        }
        Ok(table)
    }

    /// Per-cell comparison with the class-frequency prediction `#C/#H * li(x)`
    /// for unit `d`: returns `(d, s, t, empirical, predicted)` rows.
    pub fn against_prediction(&self) -> Result<Vec<(u64, u64, u64, u64, f64)>> {
        let li = crate::arith::log_integral(self.x as f64)?;
        let n = self.modulus();
        let mut rows = Vec::new();
        for d in (1..n).filter(|&d| num_integer::gcd(d, n) == 1) {
            for s in 0..n {
                for t in 0..n {
                    let ratio = crate::gl2count::class_ratio(self.q1, self.q2, d, s, t)?;
                    let pred = *ratio.numer() as f64 / *ratio.denom() as f64 * li;
                    rows.push((d, s, t, self.get(d, s, t), pred));
                }
            }
        }
        Ok(rows)
    }

    /// Largest `|empirical - predicted|` over unit-`d` cells.
    pub fn max_deviation(&self) -> Result<f64> {
        Ok(self
            .against_prediction()?
            .into_iter()
            .map(|(_, _, _, e, p)| (e as f64 - p).abs())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn check_pair(q1: u64, q2: u64) -> Result<()> {
    let odd_prime = |q: u64| q % 2 == 1 && crate::arith::is_prime(q);
    if q1 == q2 || !odd_prime(q1) || !odd_prime(q2) {
        return Err(Error::BadPrimePair(q1, q2));
    }
    Ok(())
}

/// Empirical Frobenius class frequencies for `p <= x` modulo `q1 q2`.
pub fn chebotarev_empirical(e1: &CurveQ, e2: &CurveQ, x: u64, q1: u64, q2: u64) -> Result<ChebotarevTable> {
    check_pair(q1, q2)?;
    let summary = count_equal_fields(e1, e2, x);
    ChebotarevTable::from_records(&summary.records, x, q1, q2)
}
