//! Group-order computation by baby-step giant-step in the Hasse interval.
//!
//! For `p > 457` either `E(F_p)` or its quadratic twist has a point whose
//! order has a unique multiple in `[p+1-2√p, p+1+2√p]`. Random points on `E`
//! are tried first, then points on the twist, whose order `2p+2-N` pins `N`
//! from the other side. Anything still ambiguous falls back to the naive sum.

use std::collections::HashMap;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::{CurveFp, Point};
use super::{ap_naive, CurveQ};
use crate::arith::{jacobi_u64, sqrt_mod};
use crate::error::{Error, Result};

/// At or below this prime the naive sum is used directly.
pub const BSGS_THRESHOLD: u64 = 457;

/// Extra points sampled on each of the curve and its twist.
const EXTRA_POINTS: usize = 8;

/// Trace of Frobenius via baby-step giant-step order finding.
///
/// Agrees with [`ap_naive`] at every good prime. Point sampling is seeded by
/// `p`, so the result path is deterministic.
pub fn ap_bsgs(curve: &CurveQ, p: u64) -> Result<i64> {
    if p <= BSGS_THRESHOLD {
        return ap_naive(curve, p);
    }
    curve.check_good(p)?;
    if p >= 1 << 32 {
        return Err(Error::Domain(format!("ap_bsgs supports p < 2^32, got {p}")));
    }
    match group_order(curve, p) {
        Some(n) => Ok(p as i64 + 1 - n as i64),
        None => ap_naive(curve, p),
    }
}

fn group_order(curve: &CurveQ, p: u64) -> Option<u64> {
    let width = (4 * p).isqrt();
    let (lo, hi) = (p + 1 - width, p + 1 + width);
    let mut rng = ChaCha8Rng::seed_from_u64(p);

    let e = CurveFp::new(p, curve.a(), curve.b());
    let mut exp_e = 1u64;
    for _ in 0..=EXTRA_POINTS {
        let pt = random_point(&e, &mut rng);
        exp_e = exp_e.lcm(&point_order(&e, pt, lo, hi)?);
        if let Some(n) = unique_candidate(lo, hi, exp_e, 1, p) {
            return Some(n);
        }
    }

    // Twist by a non-residue d: y^2 = x^3 + a d^2 x + b d^3, order 2p + 2 - N.
    let d = (2..p).find(|&d| jacobi_u64(d, p) == -1)?;
    let t = CurveFp {
        p,
        a: e.mul(e.a, e.mul(d, d)),
        b: e.mul(e.b, e.mul(d, e.mul(d, d))),
    };
    let (tlo, thi) = (2 * p + 2 - hi, 2 * p + 2 - lo);
    let mut exp_t = 1u64;
    for _ in 0..=EXTRA_POINTS {
        let pt = random_point(&t, &mut rng);
        exp_t = exp_t.lcm(&point_order(&t, pt, tlo, thi)?);
        if let Some(n) = unique_candidate(lo, hi, exp_e, exp_t, p) {
            return Some(n);
        }
    }
    None
}

/// The only `N` in `[lo, hi]` with `exp_e | N` and `exp_t | 2p + 2 - N`, if unique.
fn unique_candidate(lo: u64, hi: u64, exp_e: u64, exp_t: u64, p: u64) -> Option<u64> {
    let mut found = None;
    let mut n = lo.div_ceil(exp_e) * exp_e;
    while n <= hi {
        if (2 * p + 2 - n) % exp_t == 0 {
            if found.is_some() {
                return None;
            }
            found = Some(n);
        }
        n += exp_e;
    }
    found
}

fn random_point(c: &CurveFp, rng: &mut ChaCha8Rng) -> Point {
    loop {
        let x = rng.gen_range(0..c.p);
        if let Some(y) = sqrt_mod(c.rhs(x), c.p) {
            let y = if rng.gen::<bool>() { y } else { (c.p - y) % c.p };
            let pt = Point::Affine(x, y);
            debug_assert!(c.contains(pt));
            return pt;
        }
    }
}

/// Exact order of `pt`, given that the group order lies in `[lo, hi]`.
fn point_order(c: &CurveFp, pt: Point, lo: u64, hi: u64) -> Option<u64> {
    let multiple = find_multiple(c, pt, lo, hi)?;
    let mut order = multiple;
    for (q, _) in factor(multiple) {
        while order % q == 0 && c.scalar(order / q, pt) == Point::Infinity {
            order /= q;
        }
    }
    Some(order)
}

/// Some positive `k` with `k * pt = O`: either a small multiple found while
/// building the baby-step table, or one inside `[lo, hi]`.
fn find_multiple(c: &CurveFp, pt: Point, lo: u64, hi: u64) -> Option<u64> {
    let m = (hi - lo).isqrt() + 1;
    let mut baby: HashMap<u64, u64> = HashMap::with_capacity(m as usize);
    let mut cur = Point::Infinity;
    for j in 1..=m {
        cur = c.add(cur, pt);
        match cur {
            Point::Infinity => return Some(j),
            Point::Affine(x, _) => {
                if let Some(&i) = baby.get(&x) {
                    // j*pt = ±i*pt
                    return Some(if c.scalar(i, pt) == cur { j - i } else { j + i });
                }
                baby.insert(x, j);
            }
        }
    }
    // Giant steps centred at c_k = lo + m + k(2m + 1); each covers [c_k - m, c_k + m].
    let step = c.scalar(2 * m + 1, pt);
    let mut center = lo + m;
    let mut g = c.scalar(center, pt);
    while center <= hi + m {
        match g {
            Point::Infinity => return Some(center),
            Point::Affine(x, _) => {
                if let Some(&j) = baby.get(&x) {
                    let jp = c.scalar(j, pt);
                    return Some(if jp == g { center - j } else { center + j });
                }
            }
        }
        g = c.add(g, step);
        center += 2 * m + 1;
    }
    None
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
