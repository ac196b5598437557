//! Segmented sieve of Eratosthenes.

/// Sieve segment length in flags (one byte each).
const SEGMENT: usize = 1 << 18;

/// All primes up to a fixed limit, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        PrimeTable { limit, primes: primes_in(0, limit) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `q` with `lo < q <= hi`, restricted to the table's limit.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let start = self.primes.partition_point(|&q| q <= lo);
        let end = self.primes.partition_point(|&q| q <= hi);
        &self.primes[start..end.max(start)]
    }

    /// `pi(x)` for `x <= limit`.
    pub fn count_up_to(&self, x: u64) -> usize {
        self.primes.partition_point(|&q| q <= x)
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes `q` with `lo < q <= hi`, ascending.
///
/// Memory is bounded by the segment size plus the base primes up to `sqrt(hi)`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi <= lo || hi < 2 {
        return Vec::new();
    }
    let base = small_primes(hi.isqrt());
    let start = (lo + 1).max(2);
    let mut out = Vec::new();
    let mut seg_lo = start;
    let mut flags = vec![true; SEGMENT];
    while seg_lo <= hi {
        let seg_hi = (seg_lo + SEGMENT as u64 - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        flags[..len].fill(true);
        for &p in &base {
            if p * p > seg_hi {
                break;
            }
            let first = (p * p).max(seg_lo.div_ceil(p) * p);
            let mut m = first;
            while m <= seg_hi {
                flags[(m - seg_lo) as usize] = false;
                m += p;
            }
        }
        out.extend(
            flags[..len]
                .iter()
                .enumerate()
                .filter(|(_, &f)| f)
                .map(|(i, _)| seg_lo + i as u64),
        );
        seg_lo = seg_hi + 1;
    }
    out
}
