//! Shared numerical engines: compensated summation, adaptive quadrature,
//! bracketed root finding, Richardson extrapolation, shelled lattice sums,
//! and the truncated-Fock-space squeeze oracle.

mod extrapolate;
mod fock;
mod lattice;
mod quad;

pub use extrapolate::{richardson, ExtrapolationTable};
pub use fock::{
    fock_squeezed_variance, required_fock_dim, FockOperators, FockSqueezedState, FockVariance,
};
pub use lattice::{lattice_sum_at_radius, shell_lattice_sum, LatticeSum};
pub use quad::{adaptive_quadrature, bracketed_root, Quadrature};

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let y = term - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
