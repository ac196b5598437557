use crate::error::{Error, Result};

/// Jacobi symbol `(a/n)` for odd `n >= 1`.
///
/// `a` may be any integer; it is reduced modulo `n` first.
pub fn jacobi(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadModulus(n));
    }
    let n = n as u64;
    Ok(jacobi_u64(super::rem_euclid_u64(a, n), n))
}

/// Unchecked Jacobi symbol on unsigned inputs. `n` must be odd.
pub fn jacobi_u64(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1, "Jacobi modulus must be odd");
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 iff n = 3, 5 mod 8
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}
