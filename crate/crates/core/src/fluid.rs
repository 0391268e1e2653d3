//! Fluid parameters, unit systems, and the universal fluctuation scale
//! hbar * rho0 / (cS * l^4) that every boundary result is measured against.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Physical constants used in SI mode. In natural mode every constant is 1.
pub mod constants {
    /// Reduced Planck constant, J s.
    pub const HBAR_SI: f64 = 1.054_571_817e-34;
    /// Boltzmann constant, J/K.
    pub const BOLTZMANN_SI: f64 = 1.380_649e-23;
    /// Speed of light in vacuum, m/s.
    pub const LIGHT_SPEED_SI: f64 = 2.997_924_58e8;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitSystem {
    #[serde(rename = "natural")]
    Natural,
    #[serde(rename = "SI")]
    Si,
}

impl UnitSystem {
    pub fn label(&self) -> &'static str {
        match self {
            UnitSystem::Natural => "natural",
            UnitSystem::Si => "SI",
        }
    }
}

/// Constants of the medium. Immutable after construction; every operation in
/// the library takes it by shared reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluidSpec {
    hbar: f64,
    rho0: f64,
    #[serde(rename = "cS")]
    c_s: f64,
    units: UnitSystem,
}

impl FluidSpec {
    /// Build a validated spec. Natural mode forces hbar = rho0 = cS = 1
    /// after validating the supplied magnitudes.
    pub fn new(hbar: f64, rho0: f64, c_s: f64, units: UnitSystem) -> Result<Self> {
        require_positive("hbar", hbar)?;
        require_positive("rho0", rho0)?;
        require_positive("cS", c_s)?;
        match units {
            UnitSystem::Natural => Ok(FluidSpec {
                hbar: 1.0,
                rho0: 1.0,
                c_s: 1.0,
                units,
            }),
            UnitSystem::Si => Ok(FluidSpec {
                hbar,
                rho0,
                c_s,
                units,
            }),
        }
    }

    /// The default medium: natural units with hbar = rho0 = cS = 1.
    pub fn natural() -> Self {
        FluidSpec {
            hbar: 1.0,
            rho0: 1.0,
            c_s: 1.0,
            units: UnitSystem::Natural,
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn sound_speed(&self) -> f64 {
        self.c_s
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    /// Boltzmann constant in the active unit system.
    pub fn boltzmann(&self) -> f64 {
        match self.units {
            UnitSystem::Natural => 1.0,
            UnitSystem::Si => constants::BOLTZMANN_SI,
        }
    }

    /// Speed of light in the active unit system.
    pub fn light_speed(&self) -> f64 {
        match self.units {
            UnitSystem::Natural => 1.0,
            UnitSystem::Si => constants::LIGHT_SPEED_SI,
        }
    }

    /// The universal scale hbar * rho0 / (cS * length^4) of equal-time
    /// density fluctuations over a region of size `length`.
    pub fn fluctuation_scale(&self, length: f64) -> Result<f64> {
        require_positive("length", length)?;
        Ok(self.hbar * self.rho0 / (self.c_s * length.powi(4)))
    }

    /// Parse from a JSON document `{"hbar":..,"rho0":..,"cS":..,"units":..}`.
    /// Missing fields default to 1 in natural mode; in SI mode all three
    /// constants are required. Malformed fields are reported by name.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("fluid spec: {e}")))?;
        let doc = FluidSpecDoc {
            hbar: json_number(&value, "hbar")?,
            rho0: json_number(&value, "rho0")?,
            c_s: json_number(&value, "cS")?,
            units: json_string(&value, "units")?,
        };
        let units = match doc.units.as_deref() {
            None | Some("natural") => UnitSystem::Natural,
            Some("SI") => UnitSystem::Si,
            Some(other) => {
                return Err(Error::Config(format!(
                    "fluid spec: field 'units' must be \"natural\" or \"SI\", got \"{other}\""
                )))
            }
        };
        let take = |field: &'static str, v: Option<f64>| -> Result<f64> {
            match (units, v) {
                (UnitSystem::Natural, None) => Ok(1.0),
                (UnitSystem::Si, None) => Err(Error::Config(format!(
                    "fluid spec: field '{field}' is required in SI mode"
                ))),
                (_, Some(x)) => Ok(x),
            }
        };
        let hbar = take("hbar", doc.hbar)?;
        let rho0 = take("rho0", doc.rho0)?;
        let c_s = take("cS", doc.c_s)?;
        FluidSpec::new(hbar, rho0, c_s, units).map_err(|e| Error::Config(format!("fluid spec: {e}")))
    }
}

struct FluidSpecDoc {
    hbar: Option<f64>,
    rho0: Option<f64>,
    c_s: Option<f64>,
    units: Option<String>,
}

/// Read an optional numeric field, reporting the field path on a type error.
pub(crate) fn json_number(value: &serde_json::Value, field: &str) -> Result<Option<f64>> {
    match value.get(field) {
        None | Some(serde_json::Value::Null) => Ok(None),
        Some(v) => v.as_f64().map(Some).ok_or_else(|| {
            Error::Config(format!("field '{field}' must be a number, got {v}"))
        }),
    }
}

/// Read an optional string field, reporting the field path on a type error.
pub(crate) fn json_string(value: &serde_json::Value, field: &str) -> Result<Option<String>> {
    match value.get(field) {
        None | Some(serde_json::Value::Null) => Ok(None),
        Some(v) => v
            .as_str()
            .map(|s| Some(s.to_owned()))
            .ok_or_else(|| Error::Config(format!("field '{field}' must be a string, got {v}"))),
    }
}

/// A computed boundary (or focus) shift of the mean squared density.
///
/// The value is always stored as `coefficient * hbar * rho0 / (cS * scale^4)`
/// and is reconstructed from those fields bit-identically by `recompose`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeometryResult {
    pub geometry: String,
    pub value: f64,
    pub coefficient: f64,
    pub length_scale: f64,
    pub inputs: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub extras: BTreeMap<String, f64>,
}

impl GeometryResult {
    pub fn new(
        spec: &FluidSpec,
        geometry: &str,
        coefficient: f64,
        length_scale: f64,
    ) -> Result<Self> {
        let value = coefficient * spec.fluctuation_scale(length_scale)?;
        Ok(GeometryResult {
            geometry: geometry.to_owned(),
            // normalize -0.0 so serialized output is stable
            value: if value == 0.0 { 0.0 } else { value },
            coefficient: if coefficient == 0.0 { 0.0 } else { coefficient },
            length_scale,
            inputs: BTreeMap::new(),
            error_bound: None,
            warning: None,
            extras: BTreeMap::new(),
        })
    }

    pub fn with_input(mut self, name: &str, value: f64) -> Self {
        self.inputs.insert(name.to_owned(), value);
        self
    }

    pub fn with_extra(mut self, name: &str, value: f64) -> Self {
        self.extras.insert(name.to_owned(), value);
        self
    }

    pub fn with_bound(mut self, bound: f64) -> Self {
        self.error_bound = Some(bound);
        self
    }

    pub fn with_warning(mut self, warning: String) -> Self {
        self.warning = Some(warning);
        self
    }

    /// Rebuild the value from the stored coefficient and length scale.
    pub fn recompose(&self, spec: &FluidSpec) -> Result<f64> {
        let v = self.coefficient * spec.fluctuation_scale(self.length_scale)?;
        Ok(if v == 0.0 { 0.0 } else { v })
    }
}
