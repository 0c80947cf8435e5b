//! Symmetric-space norms of spectral profiles and the weight-function
//! machinery behind Lorentz and Marcinkiewicz spaces.

mod envelope;
mod norms;
mod range;
mod weight;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::math::{exp, ln};
use crate::{Error, Result};

pub use envelope::least_concave_majorant;
pub use norms::{
    cesaro_norm_lpq, norm, norm_l1_cap_linf, norm_l1_plus_linf, norm_lorentz, norm_lp, norm_lpq, norm_marcinkiewicz,
    step_norm_lpq, Method, NormResult, NormSpace, NormWarning, SEARCH_TOLERANCE,
};
pub use range::{f_space_witness, lorentz_range_condition, phi_floor_condition, psi_from_phi_inv, GridExtremum};
pub use weight::{WeightFunction, WeightKind, QUADRATURE_TOLERANCE};

/// Logarithmically spaced probe points `min = t₀ < … < t_{n-1} = max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for LogGrid {
    fn default() -> Self {
        LogGrid {
            min: 1e-6,
            max: 1e6,
            points: 241,
        }
    }
}

impl LogGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min > 0.0 && min.is_finite()) {
            return Err(Error::Domain {
                name: "grid minimum",
                value: min,
            });
        }
        if !(max > min && max.is_finite()) {
            return Err(Error::Domain {
                name: "grid maximum",
                value: max,
            });
        }
        if points < 2 {
            return Err(Error::Domain {
                name: "grid points",
                value: points as f64,
            });
        }
        Ok(LogGrid { min, max, points })
    }

    /// The grid points; both ends are exact.
    pub fn points(&self) -> Vec<f64> {
        let (lo, hi) = (ln(self.min), ln(self.max));
        let last = self.points - 1;
        (0..self.points)
            .map(|i| match i {
                0 => self.min,
                i if i == last => self.max,
                i => exp(lo + (hi - lo) * i as f64 / last as f64),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let g = LogGrid::default().points();
        assert_eq!(g.len(), 241);
        assert_eq!(g[0], 1e-6);
        assert_eq!(g[240], 1e6);
        assert!((g[120] - 1.0).abs() < 1e-14);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(LogGrid::new(0.0, 1.0, 10).is_err());
        assert!(LogGrid::new(2.0, 1.0, 10).is_err());
        assert!(LogGrid::new(1.0, 2.0, 1).is_err());
    }
}
