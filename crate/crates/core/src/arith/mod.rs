//! Integer and modular arithmetic shared by every other module.

mod li;
mod modp;
mod primes;
mod squarefree;
mod symbol;

pub use li::log_integral;
pub use modp::{inv_mod, is_prime, mul_mod, pow_mod, sqrt_mod};
pub use primes::{primes_in, PrimeTable};
pub use squarefree::{is_perfect_square, squarefree_decompose, squarefree_part, SquarefreeDecomposition};
pub use symbol::{jacobi, jacobi_u64};

/// Euler's totient for a product of distinct odd primes, or any `n` by trial division.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Non-negative residue of a signed value.
#[inline]
pub fn rem_euclid_u64(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}
