//! Counting matrices in `GL2(Z/nZ)` by determinant and trace, for `n` an odd
//! prime or a product of two distinct odd primes.
//!
//! Every count is available from its closed form and from exhaustive
//! enumeration. Enumeration is done modulo each prime separately and
//! combined by CRT; direct enumeration modulo `q1 q2` is kept as a second
//! route for cross-checking small moduli.

use num_integer::Integer;
use num_rational::Ratio;

use crate::arith::jacobi_u64;
use crate::error::{Error, Result};
use crate::frobenius::check_pair;

/// Largest modulus accepted by the enumeration routines.
pub const ENUMERATION_LIMIT: u64 = 35;

/// Legendre symbol `((t^2 - 4d)/q)`.
fn disc_symbol(q: u64, d: u64, t: u64) -> i64 {
    let (d, t) = (d % q, t % q);
    let disc = (t * t + 4 * (q - d)) % q;
    jacobi_u64(disc, q) as i64
}

fn check_unit(d: u64, n: u64) -> Result<()> {
    if d.gcd(&n) != 1 {
        return Err(Error::NotUnit { d, modulus: n });
    }
    Ok(())
}

/// `#{g in GL2(F_q) : det g = d, tr g = t} = q(q + ((t^2 - 4d)/q))`.
pub fn count_det_trace_prime(q: u64, d: u64, t: u64) -> Result<u64> {
    if q % 2 == 0 || !crate::arith::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    check_unit(d, q)?;
    Ok((q as i64 * (q as i64 + disc_symbol(q, d, t))) as u64)
}

/// `#{g in GL2(Z/q1q2Z) : det g = d, tr g = t}` by the closed form
/// `q1 q2 (q1 + ((t^2-4d)/q1)) (q2 + ((t^2-4d)/q2))`.
pub fn count_det_trace_formula(q1: u64, q2: u64, d: u64, t: u64) -> Result<u64> {
    check_pair(q1, q2)?;
    check_unit(d, q1 * q2)?;
    let f1 = q1 as i64 + disc_symbol(q1, d, t);
    let f2 = q2 as i64 + disc_symbol(q2, d, t);
    Ok((q1 * q2) as u64 * (f1 * f2) as u64)
}

/// Histogram of `(det, trace)` over all 2x2 matrices modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetTraceTable {
    n: u64,
    counts: Vec<u64>,
}

fn check_modulus(n: u64) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { modulus: n, limit: ENUMERATION_LIMIT });
    }
    let factors: Vec<u64> = (3..=n).filter(|&q| n % q == 0 && crate::arith::is_prime(q)).collect();
    let ok = n % 2 == 1
        && match factors.as_slice() {
            [q] => *q == n,
            [q1, q2] => q1 * q2 == n,
            _ => false,
        };
    if !ok {
        return Err(Error::Domain(format!(
            "modulus {n} must be an odd prime or a product of two distinct odd primes"
        )));
    }
    Ok(())
}

impl DetTraceTable {
    /// Enumerates all `n^4` matrices directly.
    pub fn enumerate(n: u64) -> Result<Self> {
        check_modulus(n)?;
        let mut counts = vec![0u64; (n * n) as usize];
        for a in 0..n {
            for dd in 0..n {
                let tr = (a + dd) % n;
                let ad = a * dd % n;
                for b in 0..n {
                    for c in 0..n {
                        let det = (ad + n * n - b * c % n) % n;
                        counts[(det * n + tr) as usize] += 1;
                    }
                }
            }
        }
        Ok(DetTraceTable { n, counts })
    }

    /// Combines per-prime enumerations through `Z/q1q2 = Z/q1 x Z/q2`.
    pub fn via_crt(q1: u64, q2: u64) -> Result<Self> {
        check_pair(q1, q2)?;
        let n = q1 * q2;
        check_modulus(n)?;
        let t1 = DetTraceTable::enumerate(q1)?;
        let t2 = DetTraceTable::enumerate(q2)?;
        let mut counts = vec![0u64; (n * n) as usize];
        for det in 0..n {
            for tr in 0..n {
                counts[(det * n + tr) as usize] = t1.get(det % q1, tr % q1) * t2.get(det % q2, tr % q2);
            }
        }
        Ok(DetTraceTable { n, counts })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Number of matrices with determinant `det` and trace `tr`.
    pub fn get(&self, det: u64, tr: u64) -> u64 {
        self.counts[((det % self.n) * self.n + tr % self.n) as usize]
    }

    /// Matrices with determinant `det`, any trace.
    pub fn det_count(&self, det: u64) -> u64 {
        (0..self.n).map(|t| self.get(det, t)).sum()
    }

    /// `#GL2(Z/nZ)`.
    pub fn group_order(&self) -> u64 {
        (1..self.n).filter(|d| d.gcd(&self.n) == 1).map(|d| self.det_count(d)).sum()
    }
}

/// Brute-force count of matrices modulo `n` with unit determinant `d` and trace `t`.
pub fn count_det_trace_bruteforce(n: u64, d: u64, t: u64) -> Result<u64> {
    let table = DetTraceTable::enumerate(n)?;
    check_unit(d, n)?;
    Ok(table.get(d, t))
}

/// `#H = #{(A1, A2) in GL2(Z/q1q2Z)^2 : det A1 = det A2}`
/// `= q1^2 (q1-1)(q1^2-1)^2 q2^2 (q2-1)(q2^2-1)^2`.
pub fn order_h_formula(q1: u64, q2: u64) -> Result<u128> {
    check_pair(q1, q2)?;
    let part = |q: u128| q * q * (q - 1) * (q * q - 1).pow(2);
    Ok(part(q1 as u128) * part(q2 as u128))
}

/// `#H` as `Σ_d N(d)^2` from the determinant histogram of a direct enumeration of `GL2(Z/q1q2Z)`.
pub fn order_h_histogram(q1: u64, q2: u64) -> Result<u128> {
    check_pair(q1, q2)?;
    let n = q1 * q2;
    let table = DetTraceTable::enumerate(n)?;
    Ok((1..n)
        .filter(|d| d.gcd(&n) == 1)
        .map(|d| (table.det_count(d) as u128).pow(2))
        .sum())
}

/// `#C(s, t, d)`: pairs with common determinant `d` and traces `s`, `t`.
pub fn class_count(q1: u64, q2: u64, d: u64, s: u64, t: u64) -> Result<u128> {
    Ok(count_det_trace_formula(q1, q2, d, s)? as u128 * count_det_trace_formula(q1, q2, d, t)? as u128)
}

/// `(q - 1)(q^2 - 1)^2`.
fn tail(q: u64) -> i128 {
    let q = q as i128;
    (q - 1) * (q * q - 1).pow(2)
}

/// `#C(s, t, d) / #H` as an exact reduced fraction:
/// the product of the four `(q_i + symbol)` factors over `(q1-1)(q1^2-1)^2 (q2-1)(q2^2-1)^2`.
pub fn class_ratio(q1: u64, q2: u64, d: u64, s: u64, t: u64) -> Result<Ratio<i128>> {
    check_pair(q1, q2)?;
    check_unit(d, q1 * q2)?;
    let factor = |q: u64, u: u64| q as i128 + disc_symbol(q, d, u) as i128;
    let numer = factor(q1, s) * factor(q2, s) * factor(q1, t) * factor(q2, t);
    Ok(Ratio::new(numer, tail(q1) * tail(q2)))
}

/// Leading term `q1^2 q2^2 / ((q1-1)(q1^2-1)^2 (q2-1)(q2^2-1)^2)` of every class ratio.
pub fn class_ratio_main_term(q1: u64, q2: u64) -> Result<Ratio<i128>> {
    check_pair(q1, q2)?;
    let (a, b) = (q1 as i128, q2 as i128);
    Ok(Ratio::new(a * a * b * b, tail(q1) * tail(q2)))
}

/// Largest `|class_ratio - main term|` over all `(d, s, t)`, together with
/// that deviation scaled by `z^7` for `z = 2 max(q1, q2)`.
pub fn main_term_deviation(q1: u64, q2: u64) -> Result<(Ratio<i128>, f64)> {
    let main = class_ratio_main_term(q1, q2)?;
    let n = q1 * q2;
    let mut worst = Ratio::from_integer(0);
    for d in (1..n).filter(|d| d.gcd(&n) == 1) {
        for s in 0..n {
            for t in 0..n {
                let diff = class_ratio(q1, q2, d, s, t)? - main;
                let dev = if diff < Ratio::from_integer(0) { -diff } else { diff };
                if dev > worst {
                    worst = dev;
                }
            }
        }
    }
    let z = 2.0 * q1.max(q2) as f64;
    let scaled = *worst.numer() as f64 / *worst.denom() as f64 * z.powi(7);
    Ok((worst, scaled))
}

/// The degree bound `#H <= z^14` for primes in the window `(z/2, z]`.
pub fn degree_bound_check(q1: u64, q2: u64, z: f64) -> Result<bool> {
    for q in [q1, q2] {
        if !(q as f64 > z / 2.0 && q as f64 <= z) {
            return Err(Error::OutsideWindow { q, z });
        }
    }
    Ok(order_h_formula(q1, q2)? as f64 <= z.powi(14))
}

/// Exact class count, group order and their ratio for one `(d, s, t)` cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GL2CountResult {
    pub q1: u64,
    pub q2: u64,
    pub d: u64,
    pub s: u64,
    pub t: u64,
    pub count_c: u128,
    pub count_h: u128,
    pub ratio: Ratio<i128>,
}

impl GL2CountResult {
    pub fn compute(q1: u64, q2: u64, d: u64, s: u64, t: u64) -> Result<Self> {
        Ok(GL2CountResult {
            q1,
            q2,
            d,
            s,
            t,
            count_c: class_count(q1, q2, d, s, t)?,
            count_h: order_h_formula(q1, q2)?,
            ratio: class_ratio(q1, q2, d, s, t)?,
        })
    }
}

/// One line of the formula-versus-enumeration report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationRow {
    pub q1: u64,
    pub q2: u64,
    pub d: u64,
    pub s: u64,
    pub t: u64,
    pub formula: u128,
    pub bruteforce: u128,
}

impl VerificationRow {
    pub fn equal(&self) -> bool {
        self.formula == self.bruteforce
    }

    pub const CSV_HEADER: &'static str = "q1,q2,d,s,t,formula,bruteforce,equal";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.q1,
            self.q2,
            self.d,
            self.s,
            self.t,
            self.formula,
            self.bruteforce,
            self.equal()
        )
    }
}

/// Checks a determinant/trace count formula against direct enumeration
/// modulo `q1 q2` at every unit `d` and every `s, t`. The class count
/// `#C(s, t, d)` is the product of the counts at `(d, s)` and `(d, t)`.
pub fn verify_class_counts<F>(q1: u64, q2: u64, formula: F) -> Result<Vec<VerificationRow>>
where
    F: Fn(u64, u64, u64, u64) -> Result<u64>,
{
    check_pair(q1, q2)?;
    let n = q1 * q2;
    let table = DetTraceTable::enumerate(n)?;
    let mut rows = Vec::new();
    for d in (1..n).filter(|d| d.gcd(&n) == 1) {
        for s in 0..n {
            let fs = formula(q1, q2, d, s)? as u128;
            for t in 0..n {
                let ft = formula(q1, q2, d, t)? as u128;
                rows.push(VerificationRow {
                    q1,
                    q2,
                    d,
                    s,
                    t,
                    formula: fs * ft,
                    bruteforce: table.get(d, s) as u128 * table.get(d, t) as u128,
                });
            }
        }
    }
    Ok(rows)
}
