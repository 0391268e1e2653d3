//! Single-mode squeezed-vacuum shift of the mean squared density.
//!
//! For a plane-wave mode (omega, k, V) in the squeezed vacuum with
//! parameter zeta = r e^{i delta}, the shift relative to the vacuum is
//!   prefactor * sinh r * [sinh r - cosh r * cos(2(k z - omega t) + delta)],
//! prefactor = hbar omega rho0 / (cS^2 V). The phase convention keeps the
//! argument 2(kz - omega t) + delta with no re-zeroing of delta.

use crate::error::{require_finite, require_positive, Error, Result};
use crate::fluid::FluidSpec;

/// Mode and squeeze data, validated against the owning fluid's linear
/// dispersion omega = cS k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeState {
    r: f64,
    delta: f64,
    omega: f64,
    k: f64,
    volume: f64,
}

const DISPERSION_TOLERANCE: f64 = 1e-9;

impl SqueezeState {
    pub fn new(
        spec: &FluidSpec,
        r: f64,
        delta: f64,
        omega: f64,
        k: f64,
        volume: f64,
    ) -> Result<Self> {
        require_finite("r", r)?;
        if r < 0.0 {
            return Err(Error::OutOfRange {
                field: "r",
                message: format!("squeeze magnitude must be >= 0, got {r}"),
            });
        }
        require_finite("delta", delta)?;
        require_positive("omega", omega)?;
        require_positive("k", k)?;
        require_positive("V", volume)?;
        let expected = spec.sound_speed() * k;
        if (omega - expected).abs() > DISPERSION_TOLERANCE * omega.abs() {
            return Err(Error::DispersionMismatch { omega, expected });
        }
        Ok(SqueezeState {
            r,
            delta,
            omega,
            k,
            volume,
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// hbar omega rho0 / (cS^2 V), the dimensional scale of the shift.
    pub fn prefactor(&self, spec: &FluidSpec) -> f64 {
        spec.hbar() * self.omega * spec.rho0()
            / (spec.sound_speed() * spec.sound_speed() * self.volume)
    }
}

/// Dimensionless part of the shift:
/// sinh r [sinh r - cosh r cos(2(kz - omega t) + delta)].
pub fn squeezed_coefficient(state: &SqueezeState, z: f64, t: f64) -> f64 {
    let phase = 2.0 * (state.k * z - state.omega * t) + state.delta;
    state.r.sinh() * (state.r.sinh() - state.r.cosh() * phase.cos())
}

/// Shift of <rho^2> at position z and time t.
pub fn squeezed_variance(spec: &FluidSpec, state: &SqueezeState, z: f64, t: f64) -> f64 {
    squeezed_coefficient(state, z, t) * state.prefactor(spec)
}

/// Time (or space) average over a full period: prefactor * sinh^2 r.
pub fn squeezed_average(spec: &FluidSpec, state: &SqueezeState) -> f64 {
    let s = state.r.sinh();
    state.prefactor(spec) * s * s
}

/// Closed-form extrema over the phase:
/// (min, max) = prefactor * (-(1 - e^{-2r})/2, (e^{2r} - 1)/2).
/// These equal sinh r (sinh r -/+ cosh r) but stay accurate at large r
/// where the hyperbolic difference cancels.
pub fn squeezed_extrema(spec: &FluidSpec, state: &SqueezeState) -> (f64, f64) {
    let p = state.prefactor(spec);
    let min = p * 0.5 * (-2.0 * state.r).exp_m1();
    let max = p * 0.5 * (2.0 * state.r).exp_m1();
    (min, max)
}
