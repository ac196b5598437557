//! Heath-Brown's square sieve in two forms, applied to the multiset
//! `{(4p - a_p^2)(4p - b_p^2)}` of a curve pair.
//!
//! Version 1 needs `max A <= e^P` and hides an absolute constant, so its
//! report is descriptive only. Version 2 drops that condition at the cost of
//! two divisor-counting terms and is a genuine inequality `S(A) <= bound`.

use num_rational::Ratio;

use crate::arith::{is_perfect_square, jacobi_u64, log_integral, primes_in};
use crate::charsum::triple_sum;
use crate::elliptic::CurveQ;
use crate::error::{Error, Result};
use crate::frobenius::{check_pair, count_equal_fields, ChebotarevTable, MatchRecord};
use crate::gl2count::class_ratio_main_term;

/// The sieving primes `(z/2, z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SievePrimeSet {
    pub z: f64,
    pub primes: Vec<u64>,
}

impl SievePrimeSet {
    /// `P`, the number of sieving primes.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Primes in `(z/2, z]`. Needs `z >= 4`: below that the window is empty or
/// contains 2, where the Jacobi symbol is undefined.
pub fn build_prime_window(z: f64) -> Result<SievePrimeSet> {
    if !(z >= 4.0) || !z.is_finite() {
        return Err(Error::EmptyWindow(z));
    }
    let primes = primes_in((z / 2.0).floor() as u64, z.floor() as u64);
    Ok(SievePrimeSet { z, primes })
}

/// A multiset of positive integers, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multiset {
    elements: Vec<u64>,
}

impl Multiset {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if elements.contains(&0) {
            return Err(Error::Zero("multiset element"));
        }
        Ok(Multiset { elements })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// One element `(4p - a_p^2)(4p - b_p^2)` per record, in record order.
    pub fn from_records(records: &[MatchRecord]) -> Self {
        Multiset { elements: records.iter().map(MatchRecord::product).collect() }
    }
}

/// `{(4p - a_p^2)(4p - b_p^2) : p <= x good for both}`, ascending in `p`.
pub fn curve_pair_multiset(e1: &CurveQ, e2: &CurveQ, x: u64) -> Multiset {
    Multiset::from_records(&count_equal_fields(e1, e2, x).records)
}

/// `S(A)`: elements that are perfect squares, with multiplicity.
pub fn square_count_exact(a: &Multiset) -> usize {
    a.elements.iter().filter(|&&n| is_perfect_square(n)).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveVersion {
    V1,
    V2,
}

impl SieveVersion {
    pub fn number(self) -> u8 {
        match self {
            SieveVersion::V1 => 1,
            SieveVersion::V2 => 2,
        }
    }
}

/// All terms of one square-sieve evaluation, next to the exact square count.
#[derive(Debug, Clone, PartialEq)]
pub struct SieveReport {
    pub version: SieveVersion,
    pub z: f64,
    pub primes: usize,
    pub size: usize,
    pub exact_square_count: usize,
    /// `#A / P`.
    pub term_main: f64,
    /// v1: `P^-2 Σ_{q1≠q2} |Σ_α (α/q1q2)|`; v2: `max_{q1≠q2} |Σ_α (α/q1q2)|`.
    pub term_char: f64,
    /// `(2/P) Σ_α ω(α)`, v2 only.
    pub term_linear: f64,
    /// `P^-2 Σ_α ω(α)^2`, v2 only.
    pub term_quadratic: f64,
    pub bound_total: f64,
}

impl SieveReport {
    pub const CSV_HEADER: &'static str =
        "version,z,P,size,exact,term_main,term_char,term_linear,term_quadratic,bound_total";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.version.number(),
            self.z,
            self.primes,
            self.size,
            self.exact_square_count,
            self.term_main,
            self.term_char,
            self.term_linear,
            self.term_quadratic,
            self.bound_total
        )
    }

    /// `S(A) <= bound_total`. Only meaningful for version 2.
    pub fn holds(&self) -> bool {
        self.exact_square_count as f64 <= self.bound_total
    }
}

/// `Σ_α (α / q1 q2)` for every ordered pair `q1 ≠ q2` of window primes,
/// using `(α/q1q2) = (α/q1)(α/q2)`.
pub fn pair_character_sums(a: &Multiset, window: &SievePrimeSet) -> Vec<((u64, u64), i64)> {
    let rows: Vec<Vec<i8>> = window
        .primes
        .iter()
        .map(|&q| a.elements.iter().map(|&n| jacobi_u64(n % q, q)).collect())
        .collect();
    let mut out = Vec::new();
    for (i, &q1) in window.primes.iter().enumerate() {
        for (j, &q2) in window.primes.iter().enumerate() {
            if i != j {
                let s: i64 = rows[i].iter().zip(&rows[j]).map(|(&x, &y)| (x * y) as i64).sum();
                out.push(((q1, q2), s));
            }
        }
    }
    out
}

fn check_window(window: &SievePrimeSet) -> Result<()> {
    if window.is_empty() || window.primes.iter().any(|&q| q % 2 == 0) {
        return Err(Error::EmptyWindow(window.z));
    }
    Ok(())
}

/// Version 1: `#A/P + P^-2 Σ_{q1≠q2} |Σ_α (α/q1q2)|`. Requires `max A <= e^P`.
pub fn sieve_bound_v1(a: &Multiset, window: &SievePrimeSet) -> Result<SieveReport> {
    check_window(window)?;
    let p = window.len() as f64;
    if let Some(&max) = a.elements.iter().max() {
        let log_max = (max as f64).ln();
        if log_max > p {
            return Err(Error::SieveCondition { log_max, primes: window.len() });
        }
    }
    let term_main = a.len() as f64 / p;
    let abs_total: i64 = pair_character_sums(a, window).iter().map(|(_, s)| s.abs()).sum();
    let term_char = abs_total as f64 / (p * p);
    Ok(SieveReport {
        version: SieveVersion::V1,
        z: window.z,
        primes: window.len(),
        size: a.len(),
        exact_square_count: square_count_exact(a),
        term_main,
        term_char,
        term_linear: 0.0,
        term_quadratic: 0.0,
        bound_total: term_main + term_char,
    })
}

/// Version 2: `#A/P + max_{q1≠q2} |Σ_α (α/q1q2)| + (2/P) Σ_α ω(α) + P^-2 Σ_α ω(α)^2`,
/// where `ω(α)` counts window primes dividing `α`.
pub fn sieve_bound_v2(a: &Multiset, window: &SievePrimeSet) -> Result<SieveReport> {
    check_window(window)?;
    let p = window.len() as f64;
    let term_main = a.len() as f64 / p;
    let term_char = pair_character_sums(a, window)
        .iter()
        .map(|(_, s)| s.unsigned_abs())
        .max()
        .unwrap_or(0) as f64;
    let (mut omega_sum, mut omega_sq) = (0u64, 0u64);
    for &n in &a.elements {
        let w = window.primes.iter().filter(|&&q| n % q == 0).count() as u64;
        omega_sum += w;
        omega_sq += w * w;
    }
    let term_linear = 2.0 * omega_sum as f64 / p;
    let term_quadratic = omega_sq as f64 / (p * p);
    Ok(SieveReport {
        version: SieveVersion::V2,
        z: window.z,
        primes: window.len(),
        size: a.len(),
        exact_square_count: square_count_exact(a),
        term_main,
        term_char,
        term_linear,
        term_quadratic,
        bound_total: term_main + term_char + term_linear + term_quadratic,
    })
}

/// `Σ (((4p - a_p^2)(4p - b_p^2)) / q1q2)` over records with `p ∤ q1q2`, summed directly.
pub fn prime_char_sum_direct(records: &[MatchRecord], q1: u64, q2: u64) -> Result<i64> {
    check_pair(q1, q2)?;
    let n = q1 * q2;
    Ok(records
        .iter()
        .filter(|r| n % r.p != 0)
        .map(|r| jacobi_u64(r.product() % n, n) as i64)
        .sum())
}

/// The same sum regrouped by residue classes:
/// `Σ_{d unit, s, t} ((4d - s^2)(4d - t^2)/q1q2) · π(x; d, s, t)`.
pub fn prime_char_sum_by_classes(table: &ChebotarevTable) -> i64 {
    let n = table.modulus();
    let mut total = 0i64;
    for (d, s, t, count) in table.iter() {
        if count == 0 || num_integer::gcd(d, n) != 1 {
            continue;
        }
        let f = |u: u64| (4 * d + n * n - u * u % n) % n;
        total += jacobi_u64(f(s) * f(t) % n, n) as i64 * count as i64;
    }
    total
}

/// Character sum over good primes `p <= x`, `p ∤ q1q2`, computed directly and
/// through residue classes; errors if the two routes disagree.
pub fn prime_char_sum(e1: &CurveQ, e2: &CurveQ, x: u64, q1: u64, q2: u64) -> Result<i64> {
    check_pair(q1, q2)?;
    let summary = count_equal_fields(e1, e2, x);
    let direct = prime_char_sum_direct(&summary.records, q1, q2)?;
    let table = ChebotarevTable::from_records(&summary.records, x, q1, q2)?;
    let by_classes = prime_char_sum_by_classes(&table);
    if direct != by_classes {
        return Err(Error::Domain(format!(
            "character sum routes disagree: direct {direct}, by classes {by_classes}"
        )));
    }
    Ok(direct)
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 100.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be >= 100, got {x}")));
    }
    Ok(())
}

/// `z = x^(1/30) (log x)^(-1/15)`, the choice under GRH.
pub fn choose_z_grh(x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(x.powf(1.0 / 30.0) * x.ln().powf(-1.0 / 15.0))
}

/// `z = c3 (log x)^(1/42) (log log x)^(-1/21)`, the unconditional choice.
pub fn choose_z_uncond(x: f64, c3: f64) -> Result<f64> {
    check_x(x)?;
    if !(c3 > 0.0) {
        return Err(Error::Domain(format!("c3 must be positive, got {c3}")));
    }
    let l = x.ln();
    Ok(c3 * l.powf(1.0 / 42.0) * l.ln().powf(-1.0 / 21.0))
}

/// `log x >= c2 z^42 (log z)^2`. Takes `log x` so astronomically large `x`
/// can be checked.
pub fn cond2_holds(log_x: f64, z: f64, c2: f64) -> bool {
    let lz = z.ln();
    c2 * z.powi(42) * lz * lz <= log_x
}

/// `z > (log x)^(1 + eps)`.
pub fn zcond_holds(x: f64, z: f64, eps: f64) -> bool {
    z > x.ln().powf(1.0 + eps)
}

/// `q1^2 q2^2 / ((q1-1)(q1^2-1)^2 (q2-1)(q2^2-1)^2) · Σ_{d,s,t} (...)` as an exact rational.
pub fn main_term_coefficient(q1: u64, q2: u64) -> Result<Ratio<i128>> {
    Ok(class_ratio_main_term(q1, q2)? * Ratio::from_integer(triple_sum(q1, q2)? as i128))
}

/// `li(x)` times [`main_term_coefficient`].
pub fn main_term_assembly(q1: u64, q2: u64, x: f64) -> Result<f64> {
    let c = main_term_coefficient(q1, q2)?;
    Ok(log_integral(x)? * (*c.numer() as f64 / *c.denom() as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundShape {
    /// `x^(29/30) (log x)^(1/15)`.
    Grh,
    /// `x (log log x)^(22/21) / (log x)^(43/42)`.
    Uncond,
}

/// The upper-bound shape with unit constant.
pub fn theorem_bound_curves(x: f64, which: BoundShape) -> Result<f64> {
    check_x(x)?;
    let l = x.ln();
    Ok(match which {
        BoundShape::Grh => x.powf(29.0 / 30.0) * l.powf(1.0 / 15.0),
        BoundShape::Uncond => x * l.ln().powf(22.0 / 21.0) / l.powf(43.0 / 42.0),
    })
}
