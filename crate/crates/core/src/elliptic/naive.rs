use super::CurveQ;
use crate::arith::rem_euclid_u64;
use crate::error::{Error, Result};

/// `f(x) = x^3 + Ax + B mod p` for `x = 0..p`, by finite differences.
fn rhs_values(curve: &CurveQ, p: u64) -> impl Iterator<Item = u64> {
    let a = rem_euclid_u64(curve.a(), p);
    let b = rem_euclid_u64(curve.b(), p);
    (0..p).map(move |x| (x * x % p * x + a * x + b) % p)
}

/// Largest prime the `O(p)`-memory routines accept.
pub const NAIVE_LIMIT: u64 = 1 << 31;

fn check_size(p: u64) -> Result<()> {
    if p >= NAIVE_LIMIT {
        return Err(Error::Domain(format!("naive point count needs p < 2^31, got {p}")));
    }
    Ok(())
}

/// `a_p = -Σ_x ((x^3 + Ax + B)/p)`, with the symbol read from a table of squares.
pub fn ap_naive(curve: &CurveQ, p: u64) -> Result<i64> {
    curve.check_good(p)?;
    check_size(p)?;
    let mut is_square = vec![false; p as usize];
    for y in 0..p.div_ceil(2) {
        is_square[(y * y % p) as usize] = true;
    }
    let sum: i64 = rhs_values(curve, p)
        .map(|v| match v {
            0 => 0,
            v if is_square[v as usize] => 1,
            _ => -1,
        })
        .sum();
    Ok(-sum)
}

/// `#E(F_p)`, counting affine solutions through the multiplicity of each
/// square class plus the point at infinity.
pub fn count_points(curve: &CurveQ, p: u64) -> Result<u64> {
    curve.check_good(p)?;
    check_size(p)?;
    let mut roots = vec![0u64; p as usize];
    for y in 0..p {
        roots[(y * y % p) as usize] += 1;
    }
    Ok(1 + rhs_values(curve, p).map(|v| roots[v as usize]).sum::<u64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;

    /// Literal enumeration of all (x, y) in F_p^2.
    fn enumerate(a: i64, b: i64, p: u64) -> u64 {
        let (a, b) = (a.rem_euclid(p as i64) as u64, b.rem_euclid(p as i64) as u64);
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if (y * y) % p == (x * x % p * x + a * x + b) % p {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn examples() {
        let c = CurveQ::new(0, 1).unwrap();
        assert_eq!(enumerate(0, 1, 5), 6);
        assert_eq!(enumerate(0, 1, 7), 12);
        assert_eq!(ap_naive(&c, 5), Ok(0));
        assert_eq!(ap_naive(&c, 7), Ok(-4));
        assert_eq!(count_points(&c, 5), Ok(6));
        assert_eq!(count_points(&c, 7), Ok(12));
    }

    #[test]
    fn rejects_bad_and_composite() {
        let c = CurveQ::new(1, 1).unwrap();
        assert_eq!(ap_naive(&c, 31), Err(Error::BadPrime(31)));
        assert_eq!(ap_naive(&c, 3), Err(Error::BadPrime(3)));
        assert_eq!(ap_naive(&c, 2), Err(Error::BadPrime(2)));
        assert_eq!(count_points(&c, 31), Err(Error::BadPrime(31)));
        assert_eq!(ap_naive(&c, 25), Err(Error::NotPrime(25)));
    }

    #[test]
    fn consistency_with_enumeration() {
        for (a, b) in [(0, 1), (2, 3), (1, 1)] {
            let c = CurveQ::new(a, b).unwrap();
            for p in primes_in(3, 1000).into_iter().filter(|&p| !c.is_bad(p)) {
                let ap = ap_naive(&c, p).unwrap();
                let n = count_points(&c, p).unwrap();
                assert_eq!(n as i64 + ap - p as i64 - 1, 0, "p = {p}");
                assert!(ap * ap <= 4 * p as i64);
                if p < 300 {
                    assert_eq!(n, enumerate(a, b, p), "p = {p}");
                }
            }
        }
    }

    #[test]
    fn j1728_supersingular_at_3_mod_4() {
        let c = CurveQ::new(1, 0).unwrap();
        for p in [7, 11, 19, 23, 31, 43] {
            assert_eq!(ap_naive(&c, p), Ok(0), "p = {p}");
        }
    }

    #[test]
    fn twist_negates_trace() {
        let c = CurveQ::new(2, 3).unwrap();
        for p in primes_in(3, 500).into_iter().filter(|&p| !c.is_bad(p)) {
            let d = (2..p as i64).find(|&d| crate::arith::jacobi(d, p as i64) == Ok(-1)).unwrap();
            let (ta, tb) = (2 * d * d, 3 * d * d * d);
            let n = enumerate(2, 3, p) as i64;
            let nt = enumerate(ta, tb, p) as i64;
            assert_eq!(nt - p as i64 - 1, -(n - p as i64 - 1), "p = {p}");
        }
    }
}
