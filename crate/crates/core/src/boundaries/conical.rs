//! Wedge and cosmic-string geometries: published closed forms plus the
//! point-split oracle built from the published two-point functions.
//!
//! The oracle forms G_R(theta, theta + Delta) = G - G0 from the printed
//! angular two-point functions (with the speed of light replaced by the
//! sound speed), applies (1 + d^2/d theta^2) by 5-point central finite
//! differences at fixed theta', multiplies by cS^2/(3 r^2), maps
//! <phidot^2> -> rho0 <rho^2>, and Richardson-extrapolates Delta -> 0.
//! The divergent 1/Delta^2 pieces of G and G0 are equal and are cancelled
//! analytically before evaluation, which is what makes the pipeline usable
//! in doubles; a unit test checks the cancelled form against the naive
//! difference at moderate splitting.

use std::f64::consts::{PI, TAU};

use crate::error::{require_positive, Error, Result};
use crate::fluid::{FluidSpec, GeometryResult};
use crate::numerics::{richardson, ExtrapolationTable};

/// Wedge interior point (r, theta) inside opening angle alpha, or a point
/// at distance r from a cosmic string with cone angle alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicalGeometry {
    pub alpha: f64,
    pub r: f64,
    /// Polar angle; used by the wedge only.
    pub theta: f64,
}

impl ConicalGeometry {
    pub fn wedge(alpha: f64, r: f64, theta: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("r", r)?;
        if alpha > TAU {
            return Err(Error::OutOfRange {
                field: "alpha",
                message: format!("wedge opening must satisfy 0 < alpha <= 2 pi, got {alpha}"),
            });
        }
        if !(theta > 0.0 && theta < alpha) {
            return Err(Error::OutOfRange {
                field: "theta",
                message: format!("need 0 < theta < alpha, got theta = {theta}, alpha = {alpha}"),
            });
        }
        Ok(ConicalGeometry { alpha, r, theta })
    }

    pub fn string(alpha: f64, r: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("r", r)?;
        if alpha > TAU {
            return Err(Error::OutOfRange {
                field: "alpha",
                message: format!("cone angle must satisfy 0 < alpha <= 2 pi, got {alpha}"),
            });
        }
        Ok(ConicalGeometry {
            alpha,
            r,
            theta: 0.0,
        })
    }
}

/// Wedge of opening alpha, field point at (r, theta), closed form verbatim:
/// -(hbar rho0 / (1440 pi^2 cS r^4 sin^4 S)) *
///   {(pi - alpha)(pi + alpha) sin^2 S [(pi^2 + 11 alpha^2) sin^2 S - 30 pi^2] + 45 pi^4},
/// S = pi theta / alpha.
pub fn wedge(spec: &FluidSpec, alpha: f64, r: f64, theta: f64) -> Result<GeometryResult> {
    let geom = ConicalGeometry::wedge(alpha, r, theta)?;
    // fold onto [0, alpha/2]: the closed form is symmetric about the
    // bisector and folding first makes the symmetry bit-exact
    let theta_folded = geom.theta.min(geom.alpha - geom.theta);
    let s = PI * theta_folded / geom.alpha;
    let sin_s = s.sin();
    if sin_s.abs() < 1e-12 {
        return Err(Error::Singular(format!(
            "field point on a wedge wall: sin(pi theta / alpha) = {sin_s:e}"
        )));
    }
    let s2 = sin_s * sin_s;
    let a2 = geom.alpha * geom.alpha;
    let p2 = PI * PI;
    let brace = (p2 - a2) * s2 * ((p2 + 11.0 * a2) * s2 - 30.0 * p2) + 45.0 * p2 * p2;
    let coeff = -brace / (1440.0 * p2 * s2 * s2);
    Ok(GeometryResult::new(spec, "wedge", coeff, geom.r)?
        .with_input("alpha", geom.alpha)
        .with_input("r", geom.r)
        .with_input("theta", geom.theta))
}

/// Cosmic string with cone angle alpha (deficit 2 pi - alpha):
/// -(hbar rho0 / (1440 pi^2 cS alpha^4 r^4)) (2pi - alpha)(2pi + alpha)(11 alpha^2 + 4 pi^2).
pub fn cosmic_string(spec: &FluidSpec, alpha: f64, r: f64) -> Result<GeometryResult> {
    let geom = ConicalGeometry::string(alpha, r)?;
    let a2 = geom.alpha * geom.alpha;
    let coeff = -(TAU - geom.alpha) * (TAU + geom.alpha) * (11.0 * a2 + 4.0 * PI * PI)
        / (1440.0 * PI * PI * a2 * a2);
    Ok(GeometryResult::new(spec, "cosmic_string", coeff, geom.r)?
        .with_input("alpha", geom.alpha)
        .with_input("r", geom.r))
}

/// csc^2(x) - 1/x^2, evaluated without cancellation near x = 0 through
/// (x - sin x)(x + sin x)/(x^2 sin^2 x) with a series numerator.
fn csc2_minus_inv_sq(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 0.9 {
        // x - sin x = x^3 (1/3! - x^2/5! + x^4/7! - ...)
        const COEFFS: [f64; 8] = [
            1.0 / 6.0,
            -1.0 / 120.0,
            1.0 / 5040.0,
            -1.0 / 362880.0,
            1.0 / 39916800.0,
            -1.0 / 6227020800.0,
            1.0 / 1307674368000.0,
            -1.0 / 355687428096000.0,
        ];
        let x2 = x * x;
        let mut series = 0.0;
        let mut p = 1.0;
        for c in COEFFS {
            series += c * p;
            p *= x2;
        }
        let x_minus_sin = x * x2 * series;
        let s = x.sin();
        x_minus_sin * (x + s) / (x2 * s * s)
    } else {
        let s = x.sin();
        1.0 / (s * s) - 1.0 / (x * x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointSplitGeometry {
    Wedge,
    String,
}

/// Regular part of G - G0 as a function of the two angles, with the common
/// 1/(theta - theta')^2 singularities already cancelled. Prefactor
/// hbar/(c^3 r^2) with c -> cS is applied by the caller.
fn g_r_regular(geometry: PointSplitGeometry, alpha: f64, theta1: f64, theta2: f64) -> f64 {
    let d = theta1 - theta2;
    match geometry {
        PointSplitGeometry::Wedge => {
            let sum = theta1 + theta2;
            let csc_sum = 1.0 / (PI * sum / (2.0 * alpha)).sin().powi(2);
            (1.0 / 16.0)
                * ((1.0 / (alpha * alpha)) * csc2_minus_inv_sq(PI * d / (2.0 * alpha))
                    - (1.0 / (PI * PI)) * csc2_minus_inv_sq(d / 2.0)
                    + (1.0 / (alpha * alpha)) * csc_sum)
        }
        PointSplitGeometry::String => {
            (1.0 / (4.0 * alpha * alpha)) * csc2_minus_inv_sq(PI * d / alpha)
                - (1.0 / (16.0 * PI * PI)) * csc2_minus_inv_sq(d / 2.0)
        }
    }
}

/// Same quantity via the naive difference of the printed csc^2 forms;
/// only usable at moderate splitting, kept as a cross-check.
#[cfg(test)]
fn g_r_naive(geometry: PointSplitGeometry, alpha: f64, theta1: f64, theta2: f64) -> f64 {
    let d = theta1 - theta2;
    let csc2 = |x: f64| 1.0 / x.sin().powi(2);
    match geometry {
        PointSplitGeometry::Wedge => {
            let sum = theta1 + theta2;
            (1.0 / (16.0 * alpha * alpha))
                * (csc2(PI * d / (2.0 * alpha)) + csc2(PI * sum / (2.0 * alpha)))
                - (1.0 / (16.0 * PI * PI)) * csc2(d / 2.0)
        }
        PointSplitGeometry::String => {
            (1.0 / (4.0 * alpha * alpha)) * csc2(PI * d / alpha)
                - (1.0 / (16.0 * PI * PI)) * csc2(d / 2.0)
        }
    }
}

#[derive(Debug, Clone)]
pub struct PointSplitResult {
    /// Extrapolated oracle value of <rho^2>_R.
    pub value: f64,
    pub error_estimate: f64,
    pub table: ExtrapolationTable,
    /// |F(delta_k) - F(delta_{k+1})| of the raw ladder, for convergence-rate
    /// checks (the leading error is O(delta^2), so halving shrinks these 4x).
    pub raw_differences: Vec<f64>,
}

/// Default splitting ladder 0.1 / 2^k, six rungs.
pub fn default_point_split_deltas() -> Vec<f64> {
    (0..6).map(|k| 0.1 / 2f64.powi(k)).collect()
}

/// Point-split oracle for the wedge or string shift at (alpha, r, theta).
pub fn point_split_oracle(
    spec: &FluidSpec,
    geometry: PointSplitGeometry,
    alpha: f64,
    r: f64,
    theta: f64,
    deltas: &[f64],
) -> Result<PointSplitResult> {
    let geom = match geometry {
        PointSplitGeometry::Wedge => ConicalGeometry::wedge(alpha, r, theta)?,
        PointSplitGeometry::String => ConicalGeometry::string(alpha, r)?,
    };
    if deltas.len() < 3 {
        return Err(Error::OutOfRange {
            field: "deltas",
            message: "need at least three splitting rungs".into(),
        });
    }
    let margin = match geometry {
        PointSplitGeometry::Wedge => theta.min(alpha - theta) / 4.0,
        PointSplitGeometry::String => alpha / 4.0,
    };
    for w in deltas.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::OutOfRange {
                field: "deltas",
                message: "splitting ladder must be strictly decreasing".into(),
            });
        }
    }
    if deltas[0] >= margin || *deltas.last().unwrap() <= 0.0 {
        return Err(Error::OutOfRange {
            field: "deltas",
            message: format!(
                "splittings must lie in (0, {margin:.3e}) for this geometry, got head {}",
                deltas[0]
            ),
        });
    }

    // hbar/(cS^3 r^2) carried by G; cS^2/(3 r^2 rho0) from the coincidence map
    let g_prefactor = spec.hbar() / (spec.sound_speed().powi(3) * geom.r * geom.r);
    let map_prefactor =
        spec.sound_speed() * spec.sound_speed() / (3.0 * geom.r * geom.r * spec.rho0());

    let theta0 = match geometry {
        PointSplitGeometry::Wedge => geom.theta,
        // any interior angle works for the string; the result is theta-free
        PointSplitGeometry::String => alpha / 2.0,
    };

    let samples: Vec<(f64, f64)> = deltas
        .iter()
        .map(|&delta| {
            let tp = theta0 + delta;
            let f = |x: f64| g_r_regular(geometry, alpha, x, tp);
            let h = delta / 4.0;
            let d2 = (-f(theta0 - 2.0 * h) + 16.0 * f(theta0 - h) - 30.0 * f(theta0)
                + 16.0 * f(theta0 + h)
                - f(theta0 + 2.0 * h))
                / (12.0 * h * h);
            let value = map_prefactor * g_prefactor * (f(theta0) + d2);
            (delta, value)
        })
        .collect();

    let raw_differences: Vec<f64> = samples
        .windows(2)
        .map(|w| (w[1].1 - w[0].1).abs())
        .collect();
    let table = richardson(&samples, 1)?.check_convergent("point-split oracle")?;
    Ok(PointSplitResult {
        value: table.estimate,
        error_estimate: table.error_estimate,
        table: table.clone(),
        raw_differences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn natural() -> FluidSpec {
        FluidSpec::natural()
    }

    #[test]
    fn wedge_half_space_value() {
        // alpha = pi kills the (pi - alpha) term: -(1/1440 pi^2) 45 pi^4 = -pi^2/32
        let r = wedge(&natural(), PI, 1.0, PI / 2.0).unwrap();
        assert!((r.value - (-PI * PI / 32.0)).abs() < 1e-15);
        assert!((r.value - (-0.308425)).abs() < 1e-6);
    }

    #[test]
    fn wedge_r_scaling() {
        let r1 = wedge(&natural(), 1.3, 1.0, 0.4).unwrap();
        let r2 = wedge(&natural(), 1.3, 2.0, 0.4).unwrap();
        assert!((r2.value - r1.value / 16.0).abs() <= 1e-15 * r1.value.abs());
    }

    #[test]
    fn wedge_wall_is_singular() {
        assert!(matches!(
            wedge(&natural(), 1.0, 1.0, 1e-14),
            Err(Error::OutOfRange { .. }) | Err(Error::Singular(_))
        ));
    }

    #[test]
    fn wedge_theta_symmetry() {
        // sin(pi theta / alpha) is symmetric about theta = alpha/2;
        // reflection pair chosen exactly representable
        let a = 2.0;
        let v1 = wedge(&natural(), a, 1.0, 0.75).unwrap().value;
        let v2 = wedge(&natural(), a, 1.0, 1.25).unwrap().value;
        assert_eq!(v1.to_bits(), v2.to_bits());
    }

    #[test]
    fn string_values() {
        let zero = cosmic_string(&natural(), TAU, 1.0).unwrap();
        assert_eq!(zero.value, 0.0);
        let half = cosmic_string(&natural(), PI, 1.0).unwrap();
        // (2pi-pi)(2pi+pi)(11 pi^2 + 4 pi^2)/(1440 pi^2 pi^4) = 45/(1440 pi^2)
        assert!((half.value - (-1.0 / (32.0 * PI * PI))).abs() < 1e-17);
        let near = cosmic_string(&natural(), TAU - 1e-6, 1.0).unwrap();
        assert!(near.value < 0.0 && near.value > -1e-5);
    }

    #[test]
    fn string_monotone_in_alpha() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..40 {
            let alpha = TAU * i as f64 / 40.0;
            let v = cosmic_string(&natural(), alpha, 1.0).unwrap().value;
            assert!(v > prev, "not increasing toward zero at alpha = {alpha}");
            assert!(v < 0.0);
            prev = v;
        }
    }

    #[test]
    fn stable_and_naive_g_r_agree_at_moderate_splitting() {
        for geometry in [PointSplitGeometry::Wedge, PointSplitGeometry::String] {
            for d in [0.3, 0.1, 0.02] {
                let stable = g_r_regular(geometry, 2.0, 0.9, 0.9 + d);
                let naive = g_r_naive(geometry, 2.0, 0.9, 0.9 + d);
                assert!(
                    (stable - naive).abs() <= 1e-9 * stable.abs().max(1e-3),
                    "{geometry:?} d={d}: {stable} vs {naive}"
                );
            }
        }
    }

    #[test]
    fn oracle_converges_and_records_wedge_ratio() {
        let deltas = default_point_split_deltas();
        for (alpha, theta) in [(PI, PI / 2.0), (PI / 2.0, PI / 4.0), (2.0 * PI / 3.0, PI / 3.0)] {
            let o =
                point_split_oracle(&natural(), PointSplitGeometry::Wedge, alpha, 1.0, theta, &deltas)
                    .unwrap();
            let printed = wedge(&natural(), alpha, 1.0, theta).unwrap();
            let ratio = printed.value / o.value;
            assert!(
                (ratio - (-alpha.powi(4))).abs() < 1e-6 * alpha.powi(4),
                "alpha={alpha}: ratio {ratio}"
            );
            // divergent pieces cancel by construction: the ladder converges
            assert!(o.error_estimate < 1e-8 * o.value.abs());
        }
    }

    #[test]
    fn oracle_wedge_half_space_matches_single_plate_magnitude() {
        let deltas = default_point_split_deltas();
        let o = point_split_oracle(&natural(), PointSplitGeometry::Wedge, PI, 1.0, PI / 2.0, &deltas)
            .unwrap();
        assert!((o.value - 1.0 / (32.0 * PI * PI)).abs() < 1e-9);
    }

    #[test]
    fn oracle_string_no_deficit_vanishes() {
        let deltas = default_point_split_deltas();
        let o = point_split_oracle(&natural(), PointSplitGeometry::String, TAU, 1.0, 0.0, &deltas)
            .unwrap();
        assert!(o.value.abs() < 1e-12);
    }

    #[test]
    fn oracle_string_ratio_is_minus_one() {
        let deltas = default_point_split_deltas();
        let alpha = PI;
        let o = point_split_oracle(&natural(), PointSplitGeometry::String, alpha, 1.0, 0.0, &deltas)
            .unwrap();
        let printed = cosmic_string(&natural(), alpha, 1.0).unwrap();
        let ratio = printed.value / o.value;
        assert!((ratio + 1.0).abs() < 1e-7, "ratio {ratio}");
    }

    #[test]
    fn oracle_rejects_oversized_splitting() {
        let deltas = vec![1.0, 0.5, 0.25];
        assert!(point_split_oracle(
            &natural(),
            PointSplitGeometry::Wedge,
            PI,
            1.0,
            0.1,
            &deltas
        )
        .is_err());
    }
}
