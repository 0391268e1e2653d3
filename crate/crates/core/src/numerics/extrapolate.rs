//! Polynomial (Neville) extrapolation of a parameter ladder to zero.

use crate::error::{Error, Result};

/// A completed extrapolation: the input ladder, the limit estimate, and an
/// error estimate taken from the last diagonal correction.
#[derive(Debug, Clone)]
pub struct ExtrapolationTable {
    /// (parameter, value) pairs, strictly decreasing in parameter.
    pub levels: Vec<(f64, f64)>,
    pub estimate: f64,
    pub error_estimate: f64,
    /// |T[j][j] - T[j-1][j-1]| along the tableau diagonal.
    pub corrections: Vec<f64>,
}

impl ExtrapolationTable {
    /// Successive corrections must eventually shrink; returns an error with
    /// the table context when they grow at the tail instead.
    pub fn check_convergent(self, context: &str) -> Result<Self> {
        let n = self.corrections.len();
        if n >= 2 {
            let last = self.corrections[n - 1];
            let prev = self.corrections[n - 2];
            // allow a rounding floor: only flag growth that is material
            if last > prev && last > 1e-12 * self.estimate.abs().max(1e-300) {
                return Err(Error::ExtrapolationDiverged {
                    context: format!("{context}; levels {:?}", self.levels),
                    prev,
                    last,
                });
            }
        }
        Ok(self)
    }
}

/// Extrapolate samples (h_i, v_i) to h = 0 by Neville's algorithm in the
/// variable h^order. Exact for polynomials in h^order of degree < n.
pub fn richardson(samples: &[(f64, f64)], order: u32) -> Result<ExtrapolationTable> {
    if samples.len() < 2 {
        return Err(Error::OutOfRange {
            field: "richardson",
            message: "need at least two ladder rungs".into(),
        });
    }
    if order == 0 {
        return Err(Error::OutOfRange {
            field: "richardson",
            message: "order must be >= 1".into(),
        });
    }
    for w in samples.windows(2) {
        if !(w[1].0 < w[0].0) || !(w[1].0 > 0.0) {
            return Err(Error::OutOfRange {
                field: "richardson",
                message: "ladder parameters must be strictly decreasing and positive".into(),
            });
        }
    }

    let n = samples.len();
    let xs: Vec<f64> = samples.iter().map(|(h, _)| h.powi(order as i32)).collect();
    let mut tableau: Vec<Vec<f64>> = vec![samples.iter().map(|(_, v)| *v).collect()];
    let mut corrections = Vec::with_capacity(n - 1);
    for j in 1..n {
        let prev = &tableau[j - 1];
        let mut row = Vec::with_capacity(n - j);
        for i in 0..n - j {
            // P_{i..i+j}(0) in increment form: exact fixed point for
            // constant sequences
            let x_hi = xs[i];
            let x_lo = xs[i + j];
            let v = prev[i + 1] + (prev[i + 1] - prev[i]) * x_lo / (x_hi - x_lo);
            row.push(v);
        }
        corrections.push((row[row.len() - 1] - tableau[j - 1][tableau[j - 1].len() - 1]).abs());
        tableau.push(row);
    }

    let estimate = tableau[n - 1][0];
    let error_estimate = *corrections.last().unwrap();
    Ok(ExtrapolationTable {
        levels: samples.to_vec(),
        estimate,
        error_estimate,
        corrections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence_is_fixed_point() {
        let t = richardson(&[(0.1, 5.0), (0.05, 5.0), (0.025, 5.0)], 1).unwrap();
        assert_eq!(t.estimate, 5.0);
        assert_eq!(t.error_estimate, 0.0);
    }

    #[test]
    fn linear_model_recovered_from_two_rungs() {
        // v = c0 + c1 h  ->  exactly c0
        let c0 = -3.25;
        let c1 = 7.0;
        let t = richardson(&[(0.2, c0 + c1 * 0.2), (0.1, c0 + c1 * 0.1)], 1).unwrap();
        assert!((t.estimate - c0).abs() < 1e-14);
    }

    #[test]
    fn quadratic_error_handled_with_order_two() {
        let c0 = 1.5;
        let samples: Vec<(f64, f64)> = (0..4)
            .map(|k| {
                let h = 0.1 / 2f64.powi(k);
                (h, c0 + 3.0 * h * h)
            })
            .collect();
        let t = richardson(&samples, 2).unwrap();
        assert!((t.estimate - c0).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_decreasing_ladder() {
        assert!(richardson(&[(0.1, 1.0), (0.1, 1.0)], 1).is_err());
    }
}
