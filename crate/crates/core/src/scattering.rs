//! Zero-point Brillouin scattering: the omega^5 cross section for light
//! scattering off zero-point density fluctuations, thermal occupation
//! factors for the Stokes and total lines, and the zero-point-to-thermal
//! ratio R.
//!
//! Material constants (index of refraction, the dielectric density
//! derivative, the fluid data) are never hardcoded; they arrive through a
//! JSON materials file. The speed of light and the Boltzmann constant are
//! fixed physical constants taken from the active unit system.

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_positive, Error, Result};
use crate::fluid::{constants, FluidSpec, UnitSystem};

/// Optical constants of the medium at the probe wavelength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialOptics {
    pub name: String,
    /// Mean index of refraction.
    pub eta: f64,
    /// rho0 (d epsilon / d rho0) at constant entropy, order unity.
    pub depsdrho: f64,
    /// Temperature (K in SI, dimensionless in natural units).
    #[serde(rename = "T")]
    pub temperature: f64,
}

impl MaterialOptics {
    pub fn new(name: &str, eta: f64, depsdrho: f64, temperature: f64) -> Result<Self> {
        require_finite("eta", eta)?;
        if eta < 1.0 {
            return Err(Error::OutOfRange {
                field: "eta",
                message: format!("index of refraction must be >= 1, got {eta}"),
            });
        }
        require_positive("depsdrho", depsdrho)?;
        require_finite("T", temperature)?;
        if temperature < 0.0 {
            return Err(Error::OutOfRange {
                field: "T",
                message: format!("temperature must be >= 0, got {temperature}"),
            });
        }
        Ok(MaterialOptics {
            name: name.to_owned(),
            eta,
            depsdrho,
            temperature,
        })
    }
}

/// Load a single-material JSON document {"name","eta","depsdrho","cS",
/// "rho0","T"}, returning the optics and the SI fluid spec built from the
/// file's sound speed and density. Malformed fields are reported by name.
pub fn load_material(text: &str) -> Result<(MaterialOptics, FluidSpec)> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("material file: {e}")))?;
    let require = |field: &str| -> Result<f64> {
        crate::fluid::json_number(&value, field)?
            .ok_or_else(|| Error::Config(format!("material file: field '{field}' is required")))
    };
    let name = crate::fluid::json_string(&value, "name")?
        .ok_or_else(|| Error::Config("material file: field 'name' is required".into()))?;
    let optics = MaterialOptics::new(&name, require("eta")?, require("depsdrho")?, require("T")?)
        .map_err(|e| Error::Config(format!("material file: {e}")))?;
    let spec = FluidSpec::new(constants::HBAR_SI, require("rho0")?, require("cS")?, UnitSystem::Si)
        .map_err(|e| Error::Config(format!("material file: {e}")))?;
    Ok((optics, spec))
}

/// Incident light and detection geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringKinematics {
    /// Incident light angular frequency.
    pub omega: f64,
    /// Scattering angle in [0, pi].
    pub theta: f64,
    /// Scattering volume.
    pub volume: f64,
    /// Polarization overlap e_in . e_out, |.| <= 1.
    pub pol_dot: f64,
}

impl ScatteringKinematics {
    pub fn new(omega: f64, theta: f64, volume: f64, pol_dot: f64) -> Result<Self> {
        require_positive("omega", omega)?;
        require_positive("volume", volume)?;
        require_finite("theta", theta)?;
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::OutOfRange {
                field: "theta",
                message: format!("scattering angle must lie in [0, pi], got {theta}"),
            });
        }
        require_finite("pol_dot", pol_dot)?;
        if pol_dot.abs() > 1.0 {
            return Err(Error::OutOfRange {
                field: "pol_dot",
                message: format!("|polarization overlap| must be <= 1, got {pol_dot}"),
            });
        }
        Ok(ScatteringKinematics {
            omega,
            theta,
            volume,
            pol_dot,
        })
    }
}

/// sqrt(2 (1 - cos theta)) evaluated as 2 |sin(theta/2)| so angular ratios
/// stay exact.
fn momentum_transfer_factor(theta: f64) -> f64 {
    2.0 * (0.5 * theta).sin().abs()
}

/// (coefficient, scale) split of the zero-point cross section, with
/// coefficient = sqrt(2(1-cos theta)) (e.e')^2 / (32 pi^2) dimensionless
/// and scale = hbar omega^5 V eta^4 / (c^5 cS rho0).
pub fn zp_cross_section_parts(
    spec: &FluidSpec,
    mat: &MaterialOptics,
    kin: &ScatteringKinematics,
) -> (f64, f64) {
    let c = spec.light_speed();
    let coefficient = momentum_transfer_factor(kin.theta) * kin.pol_dot * kin.pol_dot
        / (32.0 * std::f64::consts::PI.powi(2));
    let scale = spec.hbar() * kin.omega.powi(5) * kin.volume * mat.eta.powi(4)
        / (c.powi(5) * spec.sound_speed() * spec.rho0());
    (coefficient, scale)
}

/// Differential cross section for scattering off zero-point fluctuations:
/// sqrt(2(1-cos theta)) hbar omega^5 V eta^4 / (32 pi^2 c^5 cS rho0) (e.e')^2.
pub fn zp_cross_section(
    spec: &FluidSpec,
    mat: &MaterialOptics,
    kin: &ScatteringKinematics,
) -> f64 {
    let (coefficient, scale) = zp_cross_section_parts(spec, mat, kin);
    coefficient * scale
}

/// Mean phonon number of a mode of frequency Omega_q at temperature T;
/// zero at T = 0.
pub fn occupation(spec: &FluidSpec, omega_q: f64, temperature: f64) -> Result<f64> {
    require_positive("Omega_q", omega_q)?;
    require_finite("T", temperature)?;
    if temperature < 0.0 {
        return Err(Error::OutOfRange {
            field: "T",
            message: format!("temperature must be >= 0, got {temperature}"),
        });
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = spec.hbar() * omega_q / (spec.boltzmann() * temperature);
    Ok(1.0 / x.exp_m1())
}

/// Stokes-line thermal factor <n> + 1.
pub fn stokes_factor(spec: &FluidSpec, omega_q: f64, temperature: f64) -> Result<f64> {
    Ok(occupation(spec, omega_q, temperature)? + 1.0)
}

/// Total (Stokes + anti-Stokes) factor 2 <n> + 1 = coth(hbar Omega / 2 kB T).
/// The coth identity is checked on every call.
pub fn total_factor(spec: &FluidSpec, omega_q: f64, temperature: f64) -> Result<f64> {
    let n = occupation(spec, omega_q, temperature)?;
    let value = 2.0 * n + 1.0;
    if temperature > 0.0 {
        let x = spec.hbar() * omega_q / (2.0 * spec.boltzmann() * temperature);
        let coth = 1.0 / x.tanh();
        assert!(
            (value - coth).abs() <= 1e-12 * value.abs(),
            "coth identity violated: 2<n>+1 = {value}, coth = {coth}"
        );
    }
    Ok(value)
}

/// Ratio of zero-point to thermal Stokes scattering:
/// sqrt(2(1-cos theta)) (hbar omega / 2 kB T) (cS/c) eta^4 [rho0 deps/drho]^-2.
pub fn thermal_ratio(
    spec: &FluidSpec,
    mat: &MaterialOptics,
    kin: &ScatteringKinematics,
) -> Result<f64> {
    if mat.temperature == 0.0 {
        return Err(Error::OutOfRange {
            field: "T",
            message: "zero-point scattering is the sole cross section at zero temperature; \
                      the thermal ratio diverges"
                .into(),
        });
    }
    let c = spec.light_speed();
    Ok(momentum_transfer_factor(kin.theta)
        * (spec.hbar() * kin.omega / (2.0 * spec.boltzmann() * mat.temperature))
        * (spec.sound_speed() / c)
        * mat.eta.powi(4)
        / (mat.depsdrho * mat.depsdrho))
}

/// Fraction of the zero-point cross section surviving in the omega^5 part
/// of the Stokes line at high temperature.
pub fn high_temp_zp_fraction() -> f64 {
    0.5
}
