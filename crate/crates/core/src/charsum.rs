//! Quadratic character sums: the complete sum `Σ_x ((4d - x^2)/q)`, the
//! Jacobi sum `J(χ, χ)` of the Legendre symbol, and the triple sum over
//! residues modulo `q1 q2` that multiplies the main term.
//!
//! The complete sum is `-((-1)/q)` for every unit `d` (a quadratic polynomial
//! with nonzero discriminant). A ½-weighted reduction to Jacobi sums that
//! ends in `½(-((-1)/q) + (d/q))` does not agree with direct evaluation, e.g.
//! at `q = 5, d = 1` it gives 0 while the sum is -1. Both values are exposed
//! here and [`intermediate_discrepancies`] lists where they differ.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::{is_prime, jacobi_u64};
use crate::error::{Error, Result};
use crate::frobenius::check_pair;

fn check_odd_prime(q: u64) -> Result<()> {
    if q % 2 == 0 || !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok(())
}

fn check_unit(q: u64, d: u64) -> Result<()> {
    if d % q == 0 {
        return Err(Error::NotUnit { d, modulus: q });
    }
    Ok(())
}

/// `((4d - x^2)/q)` with arguments reduced mod `q`.
fn term(q: u64, d: u64, x: u64) -> i64 {
    let v = (4 * (d % q) + q * q - x * x % q) % q;
    jacobi_u64(v, q) as i64
}

/// Literal `Σ_{x=0}^{q-1} ((4d - x^2)/q)`.
pub fn weil_sum_bruteforce(q: u64, d: u64) -> Result<i64> {
    check_odd_prime(q)?;
    check_unit(q, d)?;
    Ok((0..q).map(|x| term(q, d, x)).sum())
}

/// `-((-1)/q)`: -1 for `q ≡ 1 (mod 4)`, +1 for `q ≡ 3 (mod 4)`.
pub fn weil_sum_closed(q: u64, d: u64) -> Result<i64> {
    check_odd_prime(q)?;
    check_unit(q, d)?;
    Ok(if q % 4 == 1 { -1 } else { 1 })
}

/// `½(-((-1)/q) + (d/q))`, the value reached by the ½-weighted reduction.
pub fn weil_sum_intermediate(q: u64, d: u64) -> Result<i64> {
    check_odd_prime(q)?;
    check_unit(q, d)?;
    let minus_one = if q % 4 == 1 { 1 } else { -1 };
    Ok((-minus_one + jacobi_u64(d % q, q) as i64) / 2)
}

/// `J(χ, χ) = Σ_a χ(a) χ(1 - a)` for the Legendre symbol `χ` mod `q`.
/// Since `χ = χ^{-1}` this equals `-χ(-1)`.
pub fn jacobi_sum(q: u64) -> Result<i64> {
    check_odd_prime(q)?;
    Ok((0..q)
        .map(|a| jacobi_u64(a, q) as i64 * jacobi_u64((1 + q - a) % q, q) as i64)
        .sum())
}

/// `-χ(-1)`.
pub fn jacobi_sum_closed(q: u64) -> Result<i64> {
    check_odd_prime(q)?;
    Ok(if q % 4 == 1 { -1 } else { 1 })
}

/// Brute-force and closed-form complete sums for every unit `d` mod `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSumTable {
    pub q: u64,
    pub values: BTreeMap<u64, i64>,
    pub closed: BTreeMap<u64, i64>,
}

impl CharSumTable {
    pub fn build(q: u64) -> Result<Self> {
        check_odd_prime(q)?;
        let mut values = BTreeMap::new();
        let mut closed = BTreeMap::new();
        for d in 1..q {
            values.insert(d, weil_sum_bruteforce(q, d)?);
            closed.insert(d, weil_sum_closed(q, d)?);
        }
        Ok(CharSumTable { q, values, closed })
    }

    pub fn agrees(&self) -> bool {
        self.values == self.closed
    }

    /// Every brute-force value lies in `{-1, 0, 1}`.
    pub fn in_unit_range(&self) -> bool {
        self.values.values().all(|v| (-1..=1).contains(v))
    }

    pub const CSV_HEADER: &'static str = "q,d,bruteforce,closed,agree";

    pub fn csv_rows(&self) -> impl Iterator<Item = String> + '_ {
        self.values.iter().map(move |(d, v)| {
            let c = self.closed[d];
            format!("{},{},{},{},{}", self.q, d, v, c, v == &c)
        })
    }
}

/// `(q, d, brute force, ½-weighted intermediate)` for every unit `d` modulo
/// each odd prime `q <= max_q` where the intermediate value is wrong.
pub fn intermediate_discrepancies(max_q: u64) -> Result<Vec<(u64, u64, i64, i64)>> {
    let mut out = Vec::new();
    for q in crate::arith::primes_in(2, max_q) {
        for d in 1..q {
            let (b, i) = (weil_sum_bruteforce(q, d)?, weil_sum_intermediate(q, d)?);
            if b != i {
                out.push((q, d, b, i));
            }
        }
    }
    Ok(out)
}

/// Largest `q1 q2` for the direct triple loop.
pub const TRIPLE_SUM_DIRECT_LIMIT: u64 = 10_000;

/// `Σ_{d unit} Σ_s Σ_t ((4d - s^2)(4d - t^2) / q1q2)` by the direct triple
/// loop, reading each Jacobi symbol modulo `q1 q2` from a table.
pub fn triple_sum_direct(q1: u64, q2: u64) -> Result<i64> {
    check_pair(q1, q2)?;
    let n = q1 * q2;
    if n > TRIPLE_SUM_DIRECT_LIMIT {
        return Err(Error::TooLarge { modulus: n, limit: TRIPLE_SUM_DIRECT_LIMIT });
    }
    let symbol: Vec<i32> = (0..n).map(|v| jacobi_u64(v, n) as i32).collect();
    let units: Vec<u64> = (1..n).filter(|&d| num_integer::gcd(d, n) == 1).collect();
    Ok(units
        .par_iter()
        .map(|&d| {
            let row: Vec<i32> = (0..n).map(|u| symbol[((4 * d + n * n - u * u % n) % n) as usize]).collect();
            row.iter()
                .map(|&js| row.iter().map(|&jt| js * jt).sum::<i32>() as i64)
                .sum::<i64>()
        })
        .sum())
}

/// Same sum as [`triple_sum_direct`], factored as `Σ_d (Σ_u ((4d - u^2)/q1q2))^2`
/// and split by CRT into per-prime complete sums.
pub fn triple_sum_factored(q1: u64, q2: u64) -> Result<i64> {
    check_pair(q1, q2)?;
    let per_prime = |q: u64| -> Result<i64> {
        (1..q).map(|d| weil_sum_bruteforce(q, d).map(|w| w * w)).sum()
    };
    Ok(per_prime(q1)? * per_prime(q2)?)
}

/// The triple sum, computed both ways; errors if the routes disagree.
pub fn triple_sum(q1: u64, q2: u64) -> Result<i64> {
    let direct = triple_sum_direct(q1, q2)?;
    let factored = triple_sum_factored(q1, q2)?;
    if direct != factored {
        return Err(Error::Domain(format!(
            "triple sum routes disagree at ({q1}, {q2}): {direct} vs {factored}"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weil_examples() {
        assert_eq!(weil_sum_bruteforce(5, 1), Ok(-1));
        assert_eq!(weil_sum_bruteforce(7, 1), Ok(1));
        assert_eq!(weil_sum_closed(5, 1), Ok(-1));
        assert_eq!(weil_sum_closed(7, 1), Ok(1));
        assert_eq!(weil_sum_closed(13, 1), Ok(-1));
        assert_eq!(weil_sum_bruteforce(13, 1), Ok(-1));
        assert_eq!(weil_sum_bruteforce(5, 10), Err(Error::NotUnit { d: 10, modulus: 5 }));
        assert_eq!(weil_sum_bruteforce(9, 1), Err(Error::NotPrime(9)));
    }

    #[test]
    fn intermediate_form_is_off_at_5_1() {
        assert_eq!(weil_sum_intermediate(5, 1), Ok(0));
        let disc = intermediate_discrepancies(7).unwrap();
        assert!(disc.contains(&(5, 1, -1, 0)));
    }

    #[test]
    fn jacobi_sum_examples() {
        assert_eq!(jacobi_sum(5), Ok(-1));
        assert_eq!(jacobi_sum(7), Ok(1));
        assert_eq!(jacobi_sum(97), Ok(-1));
    }

    #[test]
    fn exhaustive_up_to_97() {
        for q in crate::arith::primes_in(2, 97) {
            let t = CharSumTable::build(q).unwrap();
            assert!(t.agrees(), "q = {q}");
            assert!(t.in_unit_range());
            assert!(t.values.values().all(|&v| v == t.values[&1]));
            assert_eq!(jacobi_sum(q), jacobi_sum_closed(q));
        }
    }

    #[test]
    fn triple_sum_examples() {
        assert_eq!(triple_sum(3, 5), Ok(8));
        assert_eq!(triple_sum(5, 7), Ok(24));
        assert!(triple_sum(3, 3).is_err());
        assert!(triple_sum(2, 3).is_err());
        assert!(matches!(triple_sum_direct(101, 103), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn routes_agree_below_1000() {
        let primes = crate::arith::primes_in(2, 500);
        for (i, &q1) in primes.iter().enumerate() {
            for &q2 in &primes[i + 1..] {
                if q1 * q2 > 1000 {
                    break;
                }
                let direct = triple_sum_direct(q1, q2).unwrap();
                assert_eq!(direct, triple_sum_factored(q1, q2).unwrap());
                assert_eq!(direct, ((q1 - 1) * (q2 - 1)) as i64);
            }
        }
    }

    #[test]
    fn literal_product_symbol_for_small_pairs() {
        for (q1, q2) in [(3u64, 5u64), (3, 7), (5, 7), (3, 11), (7, 11)] {
            let n = q1 * q2;
            let mut total = 0i64;
            for d in (1..n).filter(|&d| num_integer::gcd(d, n) == 1) {
                for s in 0..n {
                    for t in 0..n {
                        let a = (4 * d + n * n - s * s) % n;
                        let b = (4 * d + n * n - t * t) % n;
                        total += jacobi_u64(a * b % n, n) as i64;
                    }
                }
            }
            assert_eq!(Ok(total), triple_sum_direct(q1, q2));
        }
    }

    #[test]
    fn csv() {
        let t = CharSumTable::build(5).unwrap();
        let rows: Vec<String> = t.csv_rows().collect();
        assert_eq!(rows[0], "5,1,-1,-1,true");
        assert_eq!(rows.len(), 4);
    }
}
