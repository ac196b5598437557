use crate::error::{Error, Result};

const REL_TOL: f64 = 1e-9;
const MAX_DEPTH: u32 = 60;

/// Offset logarithmic integral `∫_2^x dt / log t` by adaptive Simpson quadrature.
///
/// Relative error is below `1e-9`. `x = 2` returns 0; smaller `x` is rejected.
pub fn log_integral(x: f64) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_integral needs x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    // Integrate in u = log t, where the integrand e^u / u is smooth on [log 2, log x].
    let f = |u: f64| u.exp() / u;
    let (a, b) = (2f64.ln(), x.ln());
    // x / log x is within a small factor of the result, so it sets the absolute scale.
    let eps = REL_TOL * 0.1 * (x / x.ln()).max(1.0);
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    let mut total = 0.0;
    for i in 0..pieces {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == pieces { b } else { lo + h };
        let (flo, fhi, fmid) = (f(lo), f(hi), f(0.5 * (lo + hi)));
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += simpson(&f, lo, hi, flo, fmid, fhi, whole, eps / pieces as f64, MAX_DEPTH);
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// li(x) from the Ramanujan-Soldner series `γ + ln ln x + Σ (ln x)^k / (k·k!)`.
    fn li_series(x: f64) -> f64 {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        let l = x.ln();
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..400 {
            term *= l / k as f64;
            sum += term / k as f64;
        }
        EULER_GAMMA + l.ln() + sum
    }

    /// Composite midpoint rule in t with a fine uniform step.
    fn midpoint(x: f64, steps: usize) -> f64 {
        let h = (x - 2.0) / steps as f64;
        (0..steps).map(|i| h / (2.0 + (i as f64 + 0.5) * h).ln()).sum()
    }

    #[test]
    fn lower_limit() {
        assert_eq!(log_integral(2.0), Ok(0.0));
        assert!(log_integral(1.5).is_err());
        assert!(log_integral(f64::NAN).is_err());
    }

    #[test]
    fn matches_fine_midpoint_rule() {
        let v = log_integral(10.0).unwrap();
        let oracle = midpoint(10.0, 2_000_000);
        assert!((v - oracle).abs() < 1e-8, "{v} vs {oracle}");
        assert!((v - 5.1204).abs() < 1e-3);
    }

    #[test]
    fn matches_series_to_relative_1e9() {
        let li2 = li_series(2.0);
        for x in [3.0, 10.0, 1e3, 1e4, 1e6, 1e8, 1e10] {
            let oracle = li_series(x) - li2;
            let v = log_integral(x).unwrap();
            assert!(((v - oracle) / oracle).abs() < 1e-9, "x={x}: {v} vs {oracle}");
        }
        // ∫_2^{10^6} dt/log t; li(10^6) itself is about 78627.55.
        let v = log_integral(1e6).unwrap();
        assert!((v - 78626.504).abs() < 1e-2, "{v}");
    }
}
