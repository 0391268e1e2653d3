//! Ray geometry near the focus of a parabolic mirror and the mean squared
//! density there: the reflected-angle map and its conjugate-ray pairing, the
//! corrected optical path difference, the published closed form g(theta0)
//! for a field point on the mirror axis side (gamma = pi/2), and a Hadamard
//! finite-part quadrature scaffold for the singular ray integral.
//!
//! Only gamma = pi/2 gets a value of <rho^2>_R; for other field angles the
//! geometry operations and the finite-part engine ship without asserting a
//! physical value.
//!
//! Measured while building (frozen as tests): the published g(theta0) obeys
//! dg/dtheta0 = 64 * (2 cos + 1)/(sin^3 (1-cos)^4), a factor 2 below what
//! the published integral representation implies (128); both numbers are
//! surfaced instead of silently adjusting either form.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{require_finite, require_positive, Error, Result};
use crate::fluid::{FluidSpec, GeometryResult};
use crate::numerics::{adaptive_quadrature, bracketed_root};

/// Largest admissible mirror aperture; beyond it a single incident ray can
/// have more than two reflected partners and the pairing is not single
/// valued.
pub const APERTURE_LIMIT: f64 = 2.0 * PI / 3.0;
const APERTURE_GUARD: f64 = 1e-9;

/// Mirror and field-point data. The distance from focus to mirror is b/2;
/// the field point sits a distance a from the focus at polar angle gamma,
/// with a << b enforced through `ratio_cap` (default a/b < 0.01).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorConfig {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub theta0: f64,
    ratio_cap: f64,
}

impl MirrorConfig {
    pub fn new(a: f64, b: f64, gamma: f64, theta0: f64) -> Result<Self> {
        Self::with_ratio_cap(a, b, gamma, theta0, 0.01)
    }

    pub fn with_ratio_cap(a: f64, b: f64, gamma: f64, theta0: f64, ratio_cap: f64) -> Result<Self> {
        require_positive("a", a)?;
        require_positive("b", b)?;
        require_finite("gamma", gamma)?;
        require_positive("theta0", theta0)?;
        require_positive("ratio_cap", ratio_cap)?;
        if a / b >= ratio_cap {
            return Err(Error::OutOfRange {
                field: "a",
                message: format!(
                    "field point must sit close to the focus: a/b = {} >= cap {ratio_cap}",
                    a / b
                ),
            });
        }
        if theta0 >= APERTURE_LIMIT - APERTURE_GUARD {
            return Err(Error::OutOfRange {
                field: "theta0",
                message: format!(
                    "aperture must stay below 2 pi / 3 (two-ray regime), got {theta0}"
                ),
            });
        }
        Ok(MirrorConfig {
            a,
            b,
            gamma,
            theta0,
            ratio_cap,
        })
    }

    /// Conjugate pair of reflected rays through the field point for the
    /// reflected angle `alpha`.
    pub fn ray_pair(&self, alpha: f64) -> Result<RayPair> {
        if !(alpha > 0.0 && alpha < self.theta0) {
            return Err(Error::OutOfRange {
                field: "alpha",
                message: format!("need 0 < alpha < theta0, got {alpha}"),
            });
        }
        let beta = conjugate_angle(self.gamma, alpha, self.theta0)?;
        // orient the pair so the unsigned leg of the path difference is the
        // later path: keeps dl = dl1 - dl2 an identity rather than a sign case
        let interior = self.gamma.cos() * (alpha.cos() - beta.cos())
            + self.gamma.sin() * (alpha.sin() - beta.sin());
        let (first, second) = if interior >= 0.0 { (alpha, beta) } else { (beta, alpha) };
        let paths = path_difference(self.a, self.gamma, first, second);
        Ok(RayPair {
            alpha: first,
            beta: second,
            theta: self.a / self.b * angle_map(self.gamma, first),
            dl: paths.dl,
            dl1: paths.dl1,
            dl2: paths.dl2,
        })
    }
}

/// A conjugate pair of reflected angles at a common incident angle, with
/// the optical path difference between the two rays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayPair {
    pub alpha: f64,
    pub beta: f64,
    /// Incident angle theta = (a/b) f(alpha).
    pub theta: f64,
    /// Corrected path difference dl = dl1 - dl2.
    pub dl: f64,
    pub dl1: f64,
    pub dl2: f64,
}

/// Scaled incident angle f with theta = (a/b) f(theta'):
/// f = -(1 + cos theta') sin(theta' - gamma).
pub fn angle_map(gamma: f64, theta_p: f64) -> f64 {
    -(1.0 + theta_p.cos()) * (theta_p - gamma).sin()
}

/// The equivalent published form -sin^2(theta') sin(theta' - gamma)/(1 - cos theta'),
/// singular at theta' = 0; retained to cross-check `angle_map`.
pub fn angle_map_sin_form(gamma: f64, theta_p: f64) -> f64 {
    -theta_p.sin().powi(2) * (theta_p - gamma).sin() / (1.0 - theta_p.cos())
}

/// d f / d theta' by analytic differentiation:
/// sin(theta') sin(theta' - gamma) - (1 + cos theta') cos(theta' - gamma).
/// At gamma = pi/2 this reduces to -sin(theta')(2 cos(theta') + 1).
pub fn angle_map_derivative(gamma: f64, theta_p: f64) -> f64 {
    theta_p.sin() * (theta_p - gamma).sin() - (1.0 + theta_p.cos()) * (theta_p - gamma).cos()
}

/// The unique conjugate angle beta != alpha in (-theta0, theta0) with
/// f(beta) = f(alpha): brackets located by sign changes of f(.) - f(alpha)
/// on a 1000-point grid, then bisection to 1e-13.
pub fn conjugate_angle(gamma: f64, alpha: f64, theta0: f64) -> Result<f64> {
    require_finite("gamma", gamma)?;
    require_positive("theta0", theta0)?;
    if theta0 >= APERTURE_LIMIT - APERTURE_GUARD {
        return Err(Error::OutOfRange {
            field: "theta0",
            message: format!("aperture must stay below 2 pi / 3, got {theta0}"),
        });
    }
    if !(alpha > 0.0 && alpha < theta0) {
        return Err(Error::OutOfRange {
            field: "alpha",
            message: format!("need 0 < alpha < theta0, got {alpha}"),
        });
    }
    let target = angle_map(gamma, alpha);
    let g = |x: f64| angle_map(gamma, x) - target;

    const GRID: usize = 1000;
    let lo = -theta0 + 1e-12;
    let hi = theta0 - 1e-12;
    let mut roots: Vec<f64> = Vec::new();
    let mut x_prev = lo;
    let mut g_prev = g(lo);
    for i in 1..=GRID {
        let x = lo + (hi - lo) * i as f64 / GRID as f64;
        let gx = g(x);
        if g_prev == 0.0 {
            roots.push(x_prev);
        } else if g_prev.signum() != gx.signum() {
            roots.push(bracketed_root(g, x_prev, x, 1e-13)?);
        }
        x_prev = x;
        g_prev = gx;
    }
    // drop the trivial root at alpha itself, then collapse duplicates
    roots.retain(|x| (x - alpha).abs() > 1e-7);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-8);
    match roots.len() {
        0 => Err(Error::NoConjugateRay { alpha }),
        1 => Ok(roots[0]),
        _ => Err(Error::Unsupported(format!(
            "pairing is not single-valued at alpha = {alpha}: {} candidate conjugates \
             (outside the monotone two-ray regime)",
            roots.len()
        ))),
    }
}

/// The three published path-difference expressions, verbatim.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathDifference {
    /// Distance difference past a line of constant x (unsigned).
    pub dl1: f64,
    /// Correction from measuring past a line perpendicular to the rays.
    pub dl2: f64,
    /// Corrected optical path difference.
    pub dl: f64,
}

pub fn path_difference(a: f64, gamma: f64, alpha: f64, beta: f64) -> PathDifference {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    let dl1 = a * (cg * (ca - cb) + sg * (sa - sb)).abs();
    let dl2 = a * (sb * (beta - gamma).sin() - sa * (alpha - gamma).sin());
    let dl = a
        * (cg * (ca - cb + sa * sa - sb * sb) + sg * (sa - sb + sb * cb - sa * ca));
    PathDifference { dl1, dl2, dl }
}

/// The published closed form g(theta0) for the gamma = pi/2 focus integral.
pub fn focus_integral_closed(theta0: f64) -> Result<f64> {
    require_positive("theta0", theta0)?;
    if theta0 >= APERTURE_LIMIT {
        return Err(Error::OutOfRange {
            field: "theta0",
            message: format!("g is defined for 0 < theta0 < 2 pi / 3, got {theta0}"),
        });
    }
    let c = theta0.cos();
    let log_part = ((1.0 + c) / (1.0 - c)).ln();
    let numerator = 30.0 * c.powi(5) - 120.0 * c.powi(4) + 160.0 * c.powi(3)
        - 40.0 * c * c
        - 94.0 * c
        - 224.0;
    let denominator = 15.0 * (1.0 + c) * (1.0 - c).powi(5);
    Ok(log_part + numerator / denominator)
}

/// The dimensionless ray integrand (2 cos a + 1)/(sin^3 a (1 - cos a)^4),
/// with 1 - cos a evaluated as 2 sin^2(a/2) so small angles stay accurate.
pub fn integrand_shape(alpha: f64) -> f64 {
    let one_minus_cos = 2.0 * (0.5 * alpha).sin().powi(2);
    (2.0 * alpha.cos() + 1.0) / (alpha.sin().powi(3) * one_minus_cos.powi(4))
}

/// Endpoint expansion of `integrand_shape` at alpha = 0 through the 1/alpha
/// term (odd function; derived symbolically once and frozen):
/// 48 a^-11 + 24 a^-9 + 28/5 a^-7 + 208/315 a^-5 - 551/25200 a^-3 - 1/32 a^-1.
pub fn integrand_endpoint_expansion() -> &'static [(i32, f64)] {
    const EXPANSION: [(i32, f64); 6] = [
        (-11, 48.0),
        (-9, 24.0),
        (-7, 28.0 / 5.0),
        (-5, 208.0 / 315.0),
        (-3, -551.0 / 25200.0),
        (-1, -1.0 / 32.0),
    ];
    &EXPANSION
}

/// Full integrand of the gamma = pi/2 focus integral, assembled two ways:
/// from the printed reduced form, and by composing d theta = (a/b) f'(alpha)
/// with the path difference of the conjugate pair (beta = -alpha). The two
/// paths must agree to 1e-12 relative; the assembly check is skipped below
/// alpha = 0.1 where the raw path-difference subtraction loses digits.
pub fn focus_integrand(spec: &FluidSpec, config: &MirrorConfig, alpha: f64) -> Result<f64> {
    if (config.gamma - FRAC_PI_2).abs() > 1e-12 {
        return Err(Error::Unsupported(
            "the reduced integrand exists only for gamma = pi/2; use the ray geometry \
             and the finite-part engine for other field angles"
                .into(),
        ));
    }
    if !(alpha > 0.0 && alpha <= config.theta0) {
        return Err(Error::OutOfRange {
            field: "alpha",
            message: format!("need 0 < alpha <= theta0, got {alpha}"),
        });
    }
    let prefactor = 3.0 * spec.hbar()
        / (32.0 * PI * PI * spec.sound_speed() * config.a.powi(3) * config.b);
    let printed = prefactor * integrand_shape(alpha);
    if !printed.is_finite() {
        return Ok(f64::INFINITY);
    }

    if alpha >= 0.1 {
        // composition: |d theta/d alpha| / dl^4 against the printed form
        let paths = path_difference(config.a, config.gamma, alpha, -alpha);
        let jacobian = config.a / config.b * angle_map_derivative(config.gamma, alpha).abs();
        let composed = 3.0 * spec.hbar() / (2.0 * PI * PI * spec.sound_speed()) * jacobian
            / paths.dl.powi(4);
        let agreement = (composed - printed).abs();
        if agreement > 1e-12 * (printed.abs() + prefactor.abs()) {
            return Err(Error::Unsupported(format!(
                "integrand assembly mismatch at alpha = {alpha}: printed {printed:e}, \
                 composed {composed:e}"
            )));
        }
    }
    Ok(printed)
}

/// Which mirror the focus value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MirrorKind {
    Revolution,
    Cylinder,
}

/// <rho^2>_R near the focus for gamma = pi/2, from the published closed
/// chain: 3 hbar g(theta0) / (4096 pi^2 cS a^3 b), times 16/(15 pi) for a
/// parabolic cylinder. The summary constant C of the -hbar rho0 C/(cS b a^3)
/// form is reported in the extras.
pub fn focus_variance(
    spec: &FluidSpec,
    config: &MirrorConfig,
    kind: MirrorKind,
) -> Result<GeometryResult> {
    if (config.gamma - FRAC_PI_2).abs() > 1e-12 {
        return Err(Error::Unsupported(
            "the closed form holds only for gamma = pi/2; general field angles expose \
             the ray geometry plus the finite-part engine without asserting a value"
                .into(),
        ));
    }
    let g = focus_integral_closed(config.theta0)?;
    let kind_factor = match kind {
        MirrorKind::Revolution => 1.0,
        MirrorKind::Cylinder => 16.0 / (15.0 * PI),
    };
    // value = 3 hbar g/(4096 pi^2 cS a^3 b) * kind_factor
    //       = coefficient * hbar rho0 / (cS * scale^4), scale = (a^3 b)^(1/4)
    let coefficient = 3.0 * g * kind_factor / (4096.0 * PI * PI * spec.rho0());
    let scale = (config.a.powi(3) * config.b).powf(0.25);
    Ok(GeometryResult::new(spec, "parabola_focus", coefficient, scale)?
        .with_input("a", config.a)
        .with_input("b", config.b)
        .with_input("theta0", config.theta0)
        .with_extra("g", g)
        .with_extra("summary_constant_C", -coefficient))
}

/// Result of a Hadamard finite-part integration.
#[derive(Debug, Clone, Copy)]
pub struct FinitePart {
    pub value: f64,
    /// Quadrature + endpoint-model error estimate.
    pub estimate: f64,
}

/// Hadamard finite part of an integral with a power-law singularity at the
/// lower endpoint. `expansion` lists the singular terms c_k (x - lower)^p_k
/// (p_k <= -1); the regular remainder f - sum is integrated by adaptive
/// quadrature away from the endpoint, the near-endpoint remainder mass is
/// restored from a local polynomial fit, and the subtracted terms are added
/// back as their analytic finite parts (divergences discarded, the 1/x term
/// contributing log(upper - lower)).
pub fn finite_part_integral<F: Fn(f64) -> f64>(
    f: F,
    expansion: &[(i32, f64)],
    lower: f64,
    upper: f64,
    tol: f64,
) -> Result<FinitePart> {
    require_finite("lower", lower)?;
    require_finite("upper", upper)?;
    require_positive("tol", tol)?;
    if upper <= lower {
        return Err(Error::OutOfRange {
            field: "upper",
            message: format!("need upper > lower, got [{lower}, {upper}]"),
        });
    }
    for (p, _) in expansion {
        if *p > -1 {
            return Err(Error::OutOfRange {
                field: "expansion",
                message: format!("singular powers must be <= -1, got {p}"),
            });
        }
    }
    let range = upper - lower;
    let remainder = |x: f64| {
        let t = x - lower;
        let mut v = f(x);
        for (p, c) in expansion {
            v -= c * t.powi(*p);
        }
        v
    };

    // quadrature away from the endpoint; the first part of the interval is
    // handled by a local fit because the subtraction has no digits left there
    let cut_fraction = 0.16;
    let cut = lower + cut_fraction * range;
    // the subtraction noise floor at the cut limits what any tolerance can
    // achieve; asking for less just subdivides forever
    let noise: f64 = expansion
        .iter()
        .map(|(p, c)| (c * (cut_fraction * range).powi(*p)).abs())
        .sum::<f64>()
        * f64::EPSILON
        * (upper - cut)
        * 4.0;
    let quad = adaptive_quadrature(&remainder, cut, upper, tol.max(noise))?;

    // remainder ~ d0 + d1 t + d2 t^2 near the endpoint, fitted where the
    // subtraction is still trustworthy
    let t1 = cut_fraction * range;
    let t2 = 1.25 * cut_fraction * range;
    let t3 = 1.5 * cut_fraction * range;
    let (r1, r2, r3) = (
        remainder(lower + t1),
        remainder(lower + t2),
        remainder(lower + t3),
    );
    // Lagrange coefficients of the quadratic through (t_i, r_i)
    let d0 = r1 * t2 * t3 / ((t1 - t2) * (t1 - t3))
        + r2 * t1 * t3 / ((t2 - t1) * (t2 - t3))
        + r3 * t1 * t2 / ((t3 - t1) * (t3 - t2));
    let d1 = -r1 * (t2 + t3) / ((t1 - t2) * (t1 - t3))
        - r2 * (t1 + t3) / ((t2 - t1) * (t2 - t3))
        - r3 * (t1 + t2) / ((t3 - t1) * (t3 - t2));
    let d2 = r1 / ((t1 - t2) * (t1 - t3))
        + r2 / ((t2 - t1) * (t2 - t3))
        + r3 / ((t3 - t1) * (t3 - t2));
    let t_cut = cut - lower;
    let mass = d0 * t_cut + 0.5 * d1 * t_cut * t_cut + d2 * t_cut.powi(3) / 3.0;
    // model error: the cubic term the fit cannot see, plus the noise floor
    let mass_estimate = (d2 * t_cut.powi(3)).abs() * 0.25 + noise + f64::EPSILON * r1.abs() * t_cut;

    // analytic finite parts of the subtracted terms
    let mut analytic = 0.0;
    for (p, c) in expansion {
        if *p == -1 {
            analytic += c * range.ln();
        } else {
            analytic += c * range.powi(p + 1) / f64::from(p + 1);
        }
    }

    Ok(FinitePart {
        value: quad.value + mass + analytic,
        estimate: quad.estimate + mass_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn natural() -> FluidSpec {
        FluidSpec::natural()
    }

    #[test]
    fn angle_map_values() {
        // gamma = pi/2 reduces to (1 + cos) cos, an even function
        assert!((angle_map(FRAC_PI_2, 0.0) - 2.0).abs() < 1e-15);
        for t in [0.2, 0.7, 1.3] {
            let f = angle_map(FRAC_PI_2, t);
            assert!((f - (1.0 + t.cos()) * t.cos()).abs() < 1e-14);
            assert!((f - angle_map(FRAC_PI_2, -t)).abs() < 1e-14);
        }
        // f(gamma, gamma) = 0
        for g in [0.3, FRAC_PI_2, 2.0] {
            assert!(angle_map(g, g).abs() < 1e-15);
        }
    }

    #[test]
    fn sin_form_agrees_away_from_zero() {
        for g in [FRAC_PI_2, FRAC_PI_2 + 0.3, 1.0] {
            for t in [-1.5, -0.4, 0.3, 0.9, 1.9] {
                let a = angle_map(g, t);
                let b = angle_map_sin_form(g, t);
                assert!((a - b).abs() <= 1e-14 * a.abs().max(1.0), "g={g} t={t}");
            }
        }
    }

    #[test]
    fn derivative_closed_form_at_right_angle() {
        for t in [0.0, 0.4, PI / 3.0, 1.5] {
            let d = angle_map_derivative(FRAC_PI_2, t);
            let expect = -t.sin() * (2.0 * t.cos() + 1.0);
            assert!((d - expect).abs() < 1e-14);
        }
        assert!((angle_map_derivative(FRAC_PI_2, PI / 3.0) + 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-6;
        for g in [FRAC_PI_2, 1.1, 2.0] {
            for t in [-1.2, -0.3, 0.5, 1.4] {
                let fd = (angle_map(g, t + h) - angle_map(g, t - h)) / (2.0 * h);
                let an = angle_map_derivative(g, t);
                assert!((fd - an).abs() < 1e-8, "g={g} t={t}: {fd} vs {an}");
            }
        }
    }

    #[test]
    fn conjugate_is_mirror_image_at_right_angle() {
        let beta = conjugate_angle(FRAC_PI_2, 0.7, 1.5).unwrap();
        assert!((beta + 0.7).abs() < 1e-12);
    }

    #[test]
    fn conjugate_residual_off_right_angle() {
        let gamma = FRAC_PI_2 + 0.2;
        let beta = conjugate_angle(gamma, 0.5, 1.8).unwrap();
        assert!((angle_map(gamma, beta) - angle_map(gamma, 0.5)).abs() < 1e-12);
        assert!((beta - 0.5).abs() > 1e-3);
    }

    #[test]
    fn small_alpha_pairs_to_small_negative_beta() {
        let beta = conjugate_angle(FRAC_PI_2, 1e-3, 1.5).unwrap();
        assert!(beta < 0.0 && (beta + 1e-3).abs() < 1e-9);
        // incident angle at alpha -> 0 approaches (a/b) * f(0) = 2 a/b
        let config = MirrorConfig::new(1e-3, 1.0, FRAC_PI_2, 1.5).unwrap();
        let pair = config.ray_pair(1e-3).unwrap();
        assert!((pair.theta - 2.0 * 1e-3 / 1.0).abs() < 1e-8);
    }

    #[test]
    fn path_difference_identity_and_reduction() {
        // dl = dl1 - dl2 when the pair is oriented, and the right-angle
        // reduction dl = 2 a sin(alpha)(1 - cos(alpha))
        for alpha in [0.3, 0.6, 0.9, 1.2] {
            let p = path_difference(1.0, FRAC_PI_2, alpha, -alpha);
            assert!((p.dl - (p.dl1 - p.dl2)).abs() < 1e-14);
            let reduced = 2.0 * alpha.sin() * (1.0 - alpha.cos());
            assert!((p.dl - reduced).abs() < 1e-12 * reduced.abs());
        }
        // coincident rays have no path difference
        let p = path_difference(1.0, 1.1, 0.8, 0.8);
        assert_eq!(p.dl, 0.0);
        // linear in a
        let p1 = path_difference(1.0, 1.1, 0.9, 0.2);
        let p2 = path_difference(2.0, 1.1, 0.9, 0.2);
        assert!((p2.dl - 2.0 * p1.dl).abs() < 1e-15);
    }

    #[test]
    fn ray_pair_conjugacy_residual() {
        let config = MirrorConfig::new(1e-3, 1.0, FRAC_PI_2 + 0.15, 1.7).unwrap();
        let pair = config.ray_pair(0.8).unwrap();
        let residual = (angle_map(config.gamma, pair.alpha) - angle_map(config.gamma, pair.beta)).abs();
        assert!(residual < 1e-12, "residual {residual}");
        assert!((pair.dl - (pair.dl1 - pair.dl2)).abs() <= 1e-14 * config.a);
    }

    #[test]
    fn closed_integral_at_right_angle() {
        let g = focus_integral_closed(FRAC_PI_2).unwrap();
        assert!((g - (-224.0 / 15.0)).abs() < 1e-12);
    }

    #[test]
    fn closed_integral_diverges_at_small_aperture() {
        assert!(focus_integral_closed(1e-4).unwrap() < -1e7);
    }

    #[test]
    fn closed_integral_negative_and_increasing() {
        let mut prev = f64::NEG_INFINITY;
        let hi = APERTURE_LIMIT - 0.05;
        for i in 0..60 {
            let t = 0.2 + (hi - 0.2) * i as f64 / 59.0;
            let g = focus_integral_closed(t).unwrap();
            assert!(g < 0.0, "g({t}) = {g} not negative");
            assert!(g > prev, "g not increasing at {t}");
            prev = g;
        }
    }

    /// Measured derivative of the published g: 64 x integrand, not 128.
    #[test]
    fn closed_integral_derivative_factor_is_64() {
        let h = 1e-5;
        for t in [PI / 3.0, FRAC_PI_2, 1.0, APERTURE_LIMIT - 0.1] {
            let fd = (focus_integral_closed(t + h).unwrap() - focus_integral_closed(t - h).unwrap())
                / (2.0 * h);
            let ratio = fd / integrand_shape(t);
            assert!(
                (ratio - 64.0).abs() < 1e-6 * 64.0,
                "t={t}: measured factor {ratio}"
            );
        }
    }

    #[test]
    fn endpoint_expansion_matches_integrand() {
        // remainder after subtracting the expansion is O(alpha)
        let expansion = integrand_endpoint_expansion();
        for alpha in [0.3, 0.4, 0.5] {
            let mut v = integrand_shape(alpha);
            for (p, c) in expansion {
                v -= c * alpha.powi(*p);
            }
            // frozen linear coefficient of the regular series
            let slope = -62454079.0 / 6810804000.0;
            assert!(
                (v - slope * alpha).abs() < 0.02 * alpha.powi(3).abs().max(1e-4),
                "alpha={alpha}: remainder {v}"
            );
        }
        // leading small-angle law ~ 48/alpha^11
        let a = 1e-3;
        assert!((integrand_shape(a) * a.powi(11) / 48.0 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn integrand_assembly_agrees_with_printed() {
        let spec = natural();
        let config = MirrorConfig::new(1e-3, 1.0, FRAC_PI_2, 1.9).unwrap();
        let v = focus_integrand(&spec, &config, FRAC_PI_2).unwrap();
        let prefactor = 3.0 / (32.0 * PI * PI * 1e-9);
        assert!((v - prefactor).abs() < 1e-10 * prefactor);
        // numerator root at 2 cos + 1 = 0
        let near_limit = integrand_shape(APERTURE_LIMIT);
        assert!(near_limit.abs() < 1e-14 * integrand_shape(1.0).abs().max(1.0));
    }

    #[test]
    fn focus_value_composition() {
        let spec = natural();
        let config = MirrorConfig::new(1e-3, 1.0, FRAC_PI_2, FRAC_PI_2).unwrap();
        let r = focus_variance(&spec, &config, MirrorKind::Revolution).unwrap();
        let expect = 3.0 / (4096.0 * PI * PI * 1e-9) * (-224.0 / 15.0);
        assert!((r.value - expect).abs() < 1e-12 * expect.abs());
        assert!(r.value < 0.0);
        let cyl = focus_variance(&spec, &config, MirrorKind::Cylinder).unwrap();
        assert!((cyl.value - expect * 16.0 / (15.0 * PI)).abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn focus_value_scaling_laws() {
        let spec = natural();
        let base = focus_variance(
            &spec,
            &MirrorConfig::new(1e-3, 1.0, FRAC_PI_2, 1.2).unwrap(),
            MirrorKind::Revolution,
        )
        .unwrap();
        let half_a = focus_variance(
            &spec,
            &MirrorConfig::new(5e-4, 1.0, FRAC_PI_2, 1.2).unwrap(),
            MirrorKind::Revolution,
        )
        .unwrap();
        assert!((half_a.value / base.value - 8.0).abs() < 1e-13 * 8.0);
        let double_b = focus_variance(
            &spec,
            &MirrorConfig::new(1e-3, 2.0, FRAC_PI_2, 1.2).unwrap(),
            MirrorKind::Revolution,
        )
        .unwrap();
        assert!((double_b.value / base.value - 0.5).abs() < 1e-13 * 0.5);
    }

    #[test]
    fn off_axis_angle_is_unsupported() {
        let spec = natural();
        let config = MirrorConfig::new(1e-3, 1.0, FRAC_PI_2 + 0.1, 1.2).unwrap();
        assert!(matches!(
            focus_variance(&spec, &config, MirrorKind::Revolution),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn finite_part_canonical_values() {
        // FP int_0^1 x^-2 dx = -1
        let fp = finite_part_integral(|x| x.powi(-2), &[(-2, 1.0)], 0.0, 1.0, 1e-10).unwrap();
        assert!((fp.value + 1.0).abs() < 1e-12, "{}", fp.value);
        // additivity: FP int_0^1 (x^-2 + 1) dx = 0
        let fp = finite_part_integral(|x| x.powi(-2) + 1.0, &[(-2, 1.0)], 0.0, 1.0, 1e-10).unwrap();
        assert!(fp.value.abs() < 1e-10, "{}", fp.value);
        // log case: FP int_0^2 x^-1 dx = ln 2
        let fp = finite_part_integral(|x| 1.0 / x, &[(-1, 1.0)], 0.0, 2.0, 1e-10).unwrap();
        assert!((fp.value - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn finite_part_derivative_recovers_integrand() {
        // d/dT FP int_0^T shape = shape(T): the endpoint constant drops out
        let fp_at = |t: f64| {
            finite_part_integral(
                integrand_shape,
                integrand_endpoint_expansion(),
                0.0,
                t,
                1e-9,
            )
            .unwrap()
            .value
        };
        let h = 1e-3;
        for t in [1.0, FRAC_PI_2] {
            let fd = (fp_at(t + h) - fp_at(t - h)) / (2.0 * h);
            let shape = integrand_shape(t);
            let rel = (fd - shape).abs() / shape.abs();
            assert!(rel < 1e-3, "t={t}: fd {fd} vs {shape} (rel {rel})");
        }
    }

    #[test]
    fn finite_part_tracks_closed_form_up_to_a_constant() {
        // g(T) - 64 FP(T) is T-independent (the finite-part prescription
        // fixes the integral only up to an endpoint constant)
        let offset_at = |t: f64| {
            let fp = finite_part_integral(
                integrand_shape,
                integrand_endpoint_expansion(),
                0.0,
                t,
                1e-9,
            )
            .unwrap()
            .value;
            focus_integral_closed(t).unwrap() - 64.0 * fp
        };
        let a = offset_at(1.0);
        let b = offset_at(FRAC_PI_2);
        let c = offset_at(1.9);
        // the comparison floor is set by the subtraction noise of the
        // alpha^-11 head near the endpoint (~1e-5 on the finite part)
        assert!((a - b).abs() < 5e-3, "{a} vs {b}");
        assert!((a - c).abs() < 5e-3, "{a} vs {c}");
    }

    #[test]
    fn config_validation() {
        assert!(MirrorConfig::new(0.1, 1.0, FRAC_PI_2, 1.0).is_err()); // a/b too big
        assert!(MirrorConfig::new(1e-3, 1.0, FRAC_PI_2, 2.2).is_err()); // aperture
        assert!(MirrorConfig::with_ratio_cap(0.1, 1.0, FRAC_PI_2, 1.0, 0.2).is_ok());
    }
}
