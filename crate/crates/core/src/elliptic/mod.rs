//! Integral short-Weierstrass curves `y^2 = x^3 + Ax + B` and their traces of
//! Frobenius at good primes.
//!
//! The bad-prime set is `{p : p | 6*disc}`, which contains every prime of bad
//! reduction but may contain a few primes of good reduction for a
//! non-minimal model. Computing the true conductor needs Tate's algorithm and
//! is out of scope.

mod bsgs;
mod cache;
mod fp;
mod naive;

use rayon::prelude::*;

use crate::arith::{is_prime, primes_in};
use crate::error::{Error, Result};

pub use bsgs::{ap_bsgs, BSGS_THRESHOLD};
pub use cache::{read_trace_cache, write_trace_cache};
pub use naive::{ap_naive, count_points};

/// Largest supported `|A|`, `|B|`. Keeps `4A^3 + 27B^2` inside `u64` and its
/// factorization by trial division fast.
pub const MAX_COEFF: i64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveQ {
    a: i64,
    b: i64,
    discriminant: i128,
    bad_primes: Vec<u64>,
}

impl CurveQ {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        for c in [a, b] {
            if c.abs() > MAX_COEFF {
                return Err(Error::CoefficientTooLarge(c));
            }
        }
        let core = 4 * (a as i128).pow(3) + 27 * (b as i128).pow(2);
        if core == 0 {
            return Err(Error::Singular { a, b });
        }
        let mut bad_primes = vec![2, 3];
        let mut rest = core.unsigned_abs() as u64;
        for p in [2, 3] {
            while rest % p == 0 {
                rest /= p;
            }
        }
        let mut p = 5;
        while p * p <= rest {
            if rest % p == 0 {
                bad_primes.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 2;
        }
        if rest > 1 {
            bad_primes.push(rest);
        }
        Ok(CurveQ { a, b, discriminant: -16 * core, bad_primes })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `-16(4A^3 + 27B^2)`.
    pub fn discriminant(&self) -> i128 {
        self.discriminant
    }

    /// Primes dividing `6*disc`, ascending.
    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.bad_primes.binary_search(&p).is_ok()
    }

    /// Quadratic twist `y^2 = x^3 + A d^2 x + B d^3`.
    pub fn twist(&self, d: i64) -> Result<CurveQ> {
        if d == 0 {
            return Err(Error::Zero("twist parameter"));
        }
        let a = (self.a as i128) * (d as i128).pow(2);
        let b = (self.b as i128) * (d as i128).pow(3);
        let fit = |c: i128| i64::try_from(c).map_err(|_| Error::CoefficientTooLarge(i64::MAX));
        CurveQ::new(fit(a)?, fit(b)?)
    }

    /// Rejects bad or composite `p`.
    pub(crate) fn check_good(&self, p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.is_bad(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(())
    }
}

impl std::fmt::Display for CurveQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^2 = x^3 + {}x + {}", self.a, self.b)
    }
}

/// Trace of Frobenius at a good prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceRecord {
    pub p: u64,
    pub a_p: i64,
}

impl TraceRecord {
    /// `a_p^2 <= 4p`.
    pub fn satisfies_hasse(&self) -> bool {
        (self.a_p as i128).pow(2) <= 4 * self.p as i128
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMethod {
    /// Legendre-symbol sum, `O(p)` per prime.
    Naive,
    /// Baby-step giant-step with the naive sum below [`BSGS_THRESHOLD`].
    #[default]
    Bsgs,
}

impl TraceMethod {
    pub fn trace(self, curve: &CurveQ, p: u64) -> Result<i64> {
        match self {
            TraceMethod::Naive => ap_naive(curve, p),
            TraceMethod::Bsgs => ap_bsgs(curve, p),
        }
    }
}

/// Traces at every good prime in `(lo, hi]`, plus the skipped bad primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceTable {
    pub records: Vec<TraceRecord>,
    pub excluded: Vec<u64>,
}

/// Primes per parallel work unit.
pub const CHUNK_PRIMES: usize = 10_000;

/// Computes traces for all primes in `(lo, hi]`, in parallel over fixed-size
/// chunks of primes on the current rayon pool. Output is ascending in `p`
/// and independent of the pool size.
pub fn trace_table(curve: &CurveQ, lo: u64, hi: u64, method: TraceMethod) -> TraceTable {
    let primes = primes_in(lo, hi);
    let (good, excluded): (Vec<u64>, Vec<u64>) = primes.into_iter().partition(|&p| !curve.is_bad(p));
    let records = good
        .par_chunks(CHUNK_PRIMES)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&p| TraceRecord {
                    p,
                    a_p: method.trace(curve, p).expect("good prime"),
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .concat();
    TraceTable { records, excluded }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let c = CurveQ::new(0, 1).unwrap();
        assert_eq!(c.discriminant(), -432);
        assert_eq!(c.bad_primes(), &[2, 3]);
        let c = CurveQ::new(1, 1).unwrap();
        assert_eq!(c.discriminant(), -16 * 31);
        assert_eq!(c.bad_primes(), &[2, 3, 31]);
        assert!(c.is_bad(31) && !c.is_bad(5));
        assert_eq!(CurveQ::new(0, 0), Err(Error::Singular { a: 0, b: 0 }));
        assert_eq!(CurveQ::new(-3, 2), Err(Error::Singular { a: -3, b: 2 }));
        assert!(matches!(CurveQ::new(MAX_COEFF + 1, 1), Err(Error::CoefficientTooLarge(_))));
    }

    #[test]
    fn bad_primes_divide_discriminant() {
        for (a, b) in [(2, 3), (-7, 10), (17, -91), (99_991, 99_989), (-1, 0)] {
            let c = CurveQ::new(a, b).unwrap();
            let disc = c.discriminant();
            for &p in c.bad_primes() {
                assert!(is_prime(p));
                assert_eq!((6 * disc) % p as i128, 0);
            }
            for p in primes_in(3, 2000) {
                assert_eq!(c.is_bad(p), disc % p as i128 == 0, "p = {p}");
            }
        }
    }

    #[test]
    fn table_is_ascending_and_skips_bad_primes() {
        let c = CurveQ::new(1, 1).unwrap();
        let t = trace_table(&c, 0, 200, TraceMethod::Naive);
        assert_eq!(t.excluded, vec![2, 3, 31]);
        assert!(t.records.windows(2).all(|w| w[0].p < w[1].p));
        assert_eq!(t.records.len() + 3, primes_in(0, 200).len());
        assert!(t.records.iter().all(TraceRecord::satisfies_hasse));
    }
}
