use crate::error::{Error, Result};

/// `n = D * m^2` with `D` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquarefreeDecomposition {
    pub n: u64,
    pub squarefree: u64,
    pub root: u64,
}

/// Splits `n` into squarefree part and square root of the square part, by
/// trial division up to `sqrt(n)`.
pub fn squarefree_decompose(n: u64) -> Result<SquarefreeDecomposition> {
    if n == 0 {
        return Err(Error::Zero("n"));
    }
    let mut rest = n;
    let mut squarefree = 1u64;
    let mut root = 1u64;
    let mut step = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            squarefree *= p;
        }
    };
    step(2, &mut rest);
    let mut p = 3u64;
    while p * p <= rest {
        if rest % p == 0 {
            step(p, &mut rest);
        }
        p += 2;
    }
    if rest > 1 {
        squarefree *= rest;
    }
    Ok(SquarefreeDecomposition { n, squarefree, root })
}

/// Squarefree part `D` of `n >= 1`.
pub fn squarefree_part(n: u64) -> Result<u64> {
    squarefree_decompose(n).map(|s| s.squarefree)
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_squarefree(n: u64) -> bool {
        (2..).take_while(|d| d * d <= n).all(|d| n % (d * d) != 0)
    }

    #[test]
    fn examples() {
        let d = squarefree_decompose(12).unwrap();
        assert_eq!((d.squarefree, d.root), (3, 2));
        let d = squarefree_decompose(1).unwrap();
        assert_eq!((d.squarefree, d.root), (1, 1));
        let d = squarefree_decompose(360).unwrap();
        assert_eq!((d.squarefree, d.root), (10, 6));
        assert_eq!(squarefree_decompose(0), Err(Error::Zero("n")));
    }

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(0));
        assert!(is_perfect_square(400));
        assert!(is_perfect_square(20 * 45));
        assert!(!is_perfect_square(320));
        assert!(is_perfect_square(u32::MAX as u64 * u32::MAX as u64));
        assert!(!is_perfect_square(u64::MAX));
    }

    #[test]
    fn exhaustive_round_trip() {
        for n in 1..=100_000u64 {
            let d = squarefree_decompose(n).unwrap();
            assert_eq!(d.squarefree * d.root * d.root, n);
            assert!(is_squarefree(d.squarefree), "n = {n}");
            assert_eq!(is_perfect_square(n), d.squarefree == 1, "n = {n}");
        }
    }
}
