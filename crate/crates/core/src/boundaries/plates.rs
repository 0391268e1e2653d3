//! One and two parallel plane boundaries: image-sum construction, the
//! published two-plate closed form, and the plate Casimir force.
//!
//! The published closed form -(hbar rho0 / 96 cS a^4) [1/15 + ...] is a
//! factor pi^2 below the image sum it is derived from; both numbers are
//! reported and the ratio is part of the two-plate result.

use std::f64::consts::PI;

use crate::error::{require_positive, Error, Result};
use crate::fluid::{FluidSpec, GeometryResult};
use crate::numerics::KahanSum;

/// Plate positions: a two-plate gap of width `a` with the field point a
/// distance `z` from one plate; `a = None` is the single-plate case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateGeometry {
    pub a: Option<f64>,
    pub z: f64,
}

impl PlateGeometry {
    pub fn single(z: f64) -> Result<Self> {
        require_positive("z", z)?;
        Ok(PlateGeometry { a: None, z })
    }

    pub fn pair(a: f64, z: f64) -> Result<Self> {
        require_positive("a", a)?;
        require_positive("z", z)?;
        if z >= a {
            return Err(Error::OutOfRange {
                field: "z",
                message: format!("need 0 < z < a, got z = {z}, a = {a}"),
            });
        }
        Ok(PlateGeometry { a: Some(a), z })
    }
}

/// Attractive force per unit area between two plates:
/// hbar cS pi^2 / (480 a^4). Positive magnitude, attractive by convention.
pub fn casimir_force_per_area(spec: &FluidSpec, a: f64) -> Result<f64> {
    require_positive("a", a)?;
    Ok(spec.hbar() * spec.sound_speed() * PI * PI / (480.0 * a.powi(4)))
}

/// Single plate at distance z: -hbar rho0 / (32 pi^2 cS z^4).
pub fn single_plate(spec: &FluidSpec, z: f64) -> Result<GeometryResult> {
    let geom = PlateGeometry::single(z)?;
    let coeff = -1.0 / (32.0 * PI * PI);
    Ok(GeometryResult::new(spec, "single_plate", coeff, geom.z)?.with_input("z", geom.z))
}

/// Fold z into [0, a/2]; the physics is symmetric under z -> a - z and
/// canonicalizing before dividing makes that symmetry bit-exact whenever
/// the reflected coordinate is itself exactly representable.
fn canonical_fraction(a: f64, z: f64) -> f64 {
    z.min(a - z) / a
}

/// Two plates, closed form exactly as published:
/// -(hbar rho0 / 96 cS a^4) [1/15 + (3 - 2 sin^2(pi z/a)) / sin^4(pi z/a)].
/// The extras carry the image-sum normalization (published value * pi^2).
pub fn parallel_plates_closed(spec: &FluidSpec, a: f64, z: f64) -> Result<GeometryResult> {
    let geom = PlateGeometry::pair(a, z)?;
    let x = canonical_fraction(a, geom.z);
    let s2 = (PI * x).sin().powi(2);
    let coeff = -(1.0 / 96.0) * (1.0 / 15.0 + (3.0 - 2.0 * s2) / (s2 * s2));
    let result = GeometryResult::new(spec, "parallel_plates", coeff, a)?
        .with_input("a", a)
        .with_input("z", geom.z);
    let normalized = result.value * PI * PI;
    Ok(result
        .with_extra("image_sum_normalized", normalized)
        .with_extra("normalized_coefficient", coeff * PI * PI))
}

/// Dimensionless truncated image sum
///   s(x, N) = sum_{0<|n|<=N} (2n)^-4 + sum_{|n|<=N} (2x - 2n)^-4
/// summed smallest-to-largest magnitude with compensation, plus an integral
/// tail bound.
fn image_sum_dimensionless(x: f64, n_max: u32) -> (f64, f64) {
    let n = n_max as i64;
    let mut terms: Vec<f64> = Vec::with_capacity(3 * n_max as usize + 1);
    for k in 1..=n {
        let kk = k as f64;
        terms.push(2.0 * (2.0 * kk).powi(-4));
    }
    for k in -n..=n {
        let kk = k as f64;
        terms.push((2.0 * x - 2.0 * kk).powi(-4));
    }
    terms.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let mut acc = KahanSum::new();
    for t in terms {
        acc.add(t);
    }
    let nf = n_max as f64;
    // sum_{|n|>N} (2n)^-4 <= 1/(24 N^3); shifted tails via the comparison
    // integral with the worst offsets
    let tail = 1.0 / (24.0 * nf * nf * nf)
        + ((nf - x).powi(-3) + (nf + x).powi(-3)) / 48.0;
    (acc.value(), tail)
}

/// Two plates by the infinite image sum, truncated at |n| <= n_max:
/// -(hbar rho0 / 2 pi^2 cS) [ sum' (2an)^-4 + sum (2z - 2an)^-4 ].
/// The result carries the analytic tail bound; a warning is attached when
/// the bound exceeds 1e-8 of the value.
pub fn parallel_plates_image_sum(
    spec: &FluidSpec,
    a: f64,
    z: f64,
    n_max: u32,
) -> Result<GeometryResult> {
    let geom = PlateGeometry::pair(a, z)?;
    if n_max < 1 {
        return Err(Error::OutOfRange {
            field: "n_max",
            message: "image sum needs n_max >= 1".into(),
        });
    }
    let x = canonical_fraction(a, geom.z);
    let (s, tail) = image_sum_dimensionless(x, n_max);
    let coeff = -s / (2.0 * PI * PI);
    let mut result = GeometryResult::new(spec, "parallel_plates_image_sum", coeff, a)?
        .with_input("a", a)
        .with_input("z", geom.z)
        .with_input("n_max", n_max as f64)
        .with_extra("dimensionless_sum", s)
        .with_extra("tail_bound_dimensionless", tail);
    let bound = tail / (2.0 * PI * PI) * spec.fluctuation_scale(a)?;
    result = result.with_bound(bound);
    if tail > 1e-8 * s {
        result = result.with_warning(format!(
            "n_max = {n_max} leaves a relative tail bound {:.2e}; increase n_max for tighter results",
            tail / s
        ));
    }
    Ok(result)
}
