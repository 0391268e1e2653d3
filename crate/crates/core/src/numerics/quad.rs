//! Adaptive Simpson quadrature and bisection root finding.

use crate::error::{Error, Result};

/// Result of an adaptive quadrature run.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Conservative error estimate (sum of unscaled panel defects).
    pub estimate: f64,
    pub evaluations: usize,
}

struct Panel {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_mid: f64,
    f_hi: f64,
    coarse: f64,
}

/// Integrate `f` over [lo, hi] to absolute tolerance `tol` by adaptive
/// Simpson bisection. The reported estimate is the raw |fine - coarse|
/// panel defect without the usual 1/15 reduction, so it errs on the
/// conservative side.
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Quadrature> {
    if !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::OutOfRange {
            field: "quadrature",
            message: format!("bad bounds or tolerance: [{lo}, {hi}], tol {tol}"),
        });
    }
    if lo == hi {
        return Ok(Quadrature {
            value: 0.0,
            estimate: 0.0,
            evaluations: 0,
        });
    }

    let mut evals = 3usize;
    let f_lo = f(lo);
    let f_hi = f(hi);
    let mid = 0.5 * (lo + hi);
    let f_mid = f(mid);
    let whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);

    let span = (hi - lo).abs();
    let min_width = span * 1e-14;
    let max_depth = 52usize;
    // hard cap so an unreachable tolerance degrades into an error report
    // instead of exponential subdivision
    let max_evals = 4_000_000usize;

    let mut stack = vec![(
        Panel {
            lo,
            hi,
            f_lo,
            f_mid,
            f_hi,
            coarse: whole,
        },
        tol,
        0usize,
    )];
    let mut value = 0.0f64;
    let mut comp = 0.0f64;
    let mut estimate = 0.0f64;
    let add = |acc: &mut f64, c: &mut f64, term: f64| {
        let y = term - *c;
        let t = *acc + y;
        *c = (t - *acc) - y;
        *acc = t;
    };
    let mut failed = false;

    while let Some((p, ptol, depth)) = stack.pop() {
        let m = 0.5 * (p.lo + p.hi);
        let lm = 0.5 * (p.lo + m);
        let rm = 0.5 * (m + p.hi);
        let f_lm = f(lm);
        let f_rm = f(rm);
        evals += 2;
        let left = (m - p.lo) / 6.0 * (p.f_lo + 4.0 * f_lm + p.f_mid);
        let right = (p.hi - m) / 6.0 * (p.f_mid + 4.0 * f_rm + p.f_hi);
        let fine = left + right;
        let defect = (fine - p.coarse).abs();
        let width = p.hi - p.lo;

        if !fine.is_finite() {
            failed = true;
            estimate += defect.abs().min(f64::MAX);
            continue;
        }

        if defect <= ptol || depth >= max_depth || width.abs() <= min_width || evals > max_evals {
            if defect > ptol {
                failed = true;
            }
            add(&mut value, &mut comp, fine);
            estimate += defect;
        } else {
            let half_tol = 0.5 * ptol;
            stack.push((
                Panel {
                    lo: p.lo,
                    hi: m,
                    f_lo: p.f_lo,
                    f_mid: f_lm,
                    f_hi: p.f_mid,
                    coarse: left,
                },
                half_tol,
                depth + 1,
            ));
            stack.push((
                Panel {
                    lo: m,
                    hi: p.hi,
                    f_lo: p.f_mid,
                    f_mid: f_rm,
                    f_hi: p.f_hi,
                    coarse: right,
                },
                half_tol,
                depth + 1,
            ));
        }
    }

    if failed && estimate > tol {
        return Err(Error::QuadratureNonConvergent {
            requested: tol,
            achieved: estimate,
        });
    }
    Ok(Quadrature {
        value,
        estimate,
        evaluations: evals,
    })
}

/// Bisection on [lo, hi]; requires a sign change. Converges to an interval
/// of width `tol` (absolute).
pub fn bracketed_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::OutOfRange {
            field: "bracket",
            message: format!("bad bracket [{lo}, {hi}] or tolerance {tol}"),
        });
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket { lo, hi });
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn integrates_polynomial() {
        let q = adaptive_quadrature(|x| x * x, 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn integrates_sine() {
        let q = adaptive_quadrature(|x| x.sin(), 0.0, PI, 1e-12).unwrap();
        assert!((q.value - 2.0).abs() < 1e-11);
    }

    #[test]
    fn estimate_is_honest() {
        // ten analytic integrals with known values
        let cases: Vec<(Box<dyn Fn(f64) -> f64>, f64, f64, f64)> = vec![
            (Box::new(|x: f64| x * x), 0.0, 1.0, 1.0 / 3.0),
            (Box::new(|x: f64| x.sin()), 0.0, PI, 2.0),
            (Box::new(|x: f64| x.exp()), 0.0, 1.0, std::f64::consts::E - 1.0),
            (Box::new(|x: f64| 1.0 / (1.0 + x * x)), 0.0, 1.0, PI / 4.0),
            (Box::new(|x: f64| x.sqrt()), 0.0, 1.0, 2.0 / 3.0),
            (Box::new(|x: f64| (5.0 * x).cos()), 0.0, 2.0, (10.0f64).sin() / 5.0),
            (Box::new(|x: f64| x.powi(7)), -1.0, 1.0, 0.0),
            (Box::new(|x: f64| (-x * x).exp()), 0.0, 3.0, 0.8862073482595214),
            (Box::new(|x: f64| x.ln()), 1.0, 4.0, 4.0 * 4.0f64.ln() - 3.0),
            (Box::new(|x: f64| 1.0 / x), 1.0, 10.0, 10.0f64.ln()),
        ];
        for (f, lo, hi, exact) in cases {
            let q = adaptive_quadrature(&f, lo, hi, 1e-9).unwrap();
            let true_err = (q.value - exact).abs();
            assert!(
                q.estimate >= true_err || true_err < 1e-14,
                "estimate {} < true error {}",
                q.estimate,
                true_err
            );
        }
    }

    #[test]
    fn root_of_cosine() {
        let r = bracketed_root(|x| x.cos(), 1.0, 2.0, 1e-13).unwrap();
        assert!((r - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn no_bracket_is_an_error() {
        assert!(matches!(
            bracketed_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoBracket { .. })
        ));
    }
}
