//! Rectangular three-torus: periodic boundary conditions in all three
//! directions give the constant shift
//!   -(hbar rho0 / 2 pi^2 cS) sum' (l^2 L1^2 + m^2 L2^2 + n^2 L3^2)^-2,
//! evaluated by the shelled lattice engine with a rigorous tail bound.

use std::f64::consts::PI;

use crate::error::{require_positive, Result};
use crate::fluid::{FluidSpec, GeometryResult};
use crate::numerics::shell_lattice_sum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusGeometry {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

impl TorusGeometry {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        require_positive("L1", l1)?;
        require_positive("L2", l2)?;
        require_positive("L3", l3)?;
        Ok(TorusGeometry { l1, l2, l3 })
    }
}

/// Shift on the torus to relative tolerance `tol`; the result carries the
/// achieved error bound and the lattice-sum diagnostics.
pub fn torus(spec: &FluidSpec, l1: f64, l2: f64, l3: f64, tol: f64) -> Result<GeometryResult> {
    let geom = TorusGeometry::new(l1, l2, l3)?;
    require_positive("tol", tol)?;
    let sum = shell_lattice_sum([geom.l1, geom.l2, geom.l3], 2, tol)?;
    // declared length scale L1: coefficient = -(L1^4 * sum)/(2 pi^2)
    let coeff = -(geom.l1.powi(4) * sum.value) / (2.0 * PI * PI);
    let bound_value = geom.l1.powi(4) * sum.bound / (2.0 * PI * PI) * spec.fluctuation_scale(geom.l1)?;
    Ok(GeometryResult::new(spec, "torus", coeff, geom.l1)?
        .with_input("L1", geom.l1)
        .with_input("L2", geom.l2)
        .with_input("L3", geom.l3)
        .with_input("tol", tol)
        .with_extra("lattice_sum", sum.value)
        .with_extra("truncation_radius", sum.radius)
        .with_extra("points", sum.points as f64)
        .with_bound(bound_value.abs()))
}
