//! Quantum density fluctuations of a fluid with a linear phonon dispersion:
//! free-space correlation functions, single-mode squeezed-vacuum shifts,
//! boundary-modified mean squared density for plates, torus, wedge, cosmic
//! string, and the focus of a parabolic mirror, and the zero-point Brillouin
//! scattering cross section. Every closed form is paired with an independent
//! numerical oracle (Fourier integral, image sum, truncated Fock space,
//! point-split two-point functions), and measured discrepancies between the
//! published closed forms and their oracles are reported rather than hidden.
//!
//! All types are immutable after construction and all operations are pure
//! functions, safe to call concurrently.

pub mod boundaries;
pub mod error;
pub mod fluid;
pub mod freefield;
pub mod numerics;
pub mod parabola;
pub mod scattering;
pub mod squeezed;

pub use error::{Error, ErrorClass, Result};
pub use fluid::{FluidSpec, GeometryResult, UnitSystem};
