use thiserror::Error;

/// Errors raised by the arithmetic, curve and counting routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus {0} must be odd and positive")]
    BadModulus(i64),
    #[error("{0} must be nonzero")]
    Zero(&'static str),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("singular curve y^2 = x^3 + {a}x + {b} (discriminant 0)")]
    Singular { a: i64, b: i64 },
    #[error("coefficient {0} exceeds the supported bound |A|,|B| <= {bound}", bound = crate::elliptic::MAX_COEFF)]
    CoefficientTooLarge(i64),
    #[error("p = {0} is a bad prime for this curve")]
    BadPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("residue {d} is not a unit modulo {modulus}")]
    NotUnit { d: u64, modulus: u64 },
    #[error("moduli {0} and {1} must be distinct odd primes")]
    BadPrimePair(u64, u64),
    #[error("modulus {modulus} exceeds enumeration limit {limit}")]
    TooLarge { modulus: u64, limit: u64 },
    #[error("prime window for z = {0} is unusable (need z >= 4 so the window is nonempty and odd)")]
    EmptyWindow(f64),
    #[error("prime {q} lies outside the window (z/2, z] for z = {z}")]
    OutsideWindow { q: u64, z: f64 },
    #[error("largest element exceeds e^P (log max = {log_max:.3}, P = {primes}); choose a larger z")]
    SieveCondition { log_max: f64, primes: usize },
    #[error("trace cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
