use alloc::boxed::Box;

use serde::{Deserialize, Serialize};

use super::{LogGrid, WeightFunction, WeightKind};
use crate::math::ln_1p;
use crate::rearrange::{submajorized_by_cesaro, SpectralProfile};
use crate::Result;

/// Extreme value of a ratio over a grid, with the grid point attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GridExtremum {
    pub ratio: f64,
    pub witness_t: f64,
}

/// `ψ(t) = t · (∫₀ᵗ ds/φ(s))⁻¹`.
///
/// Fails with [`crate::Error::Divergent`] when `1/φ` is not integrable at 0.
pub fn psi_from_phi_inv(phi: &WeightFunction) -> Result<WeightFunction> {
    phi.reciprocal_integral(1.0)?;
    WeightFunction::new(WeightKind::CesaroRange {
        phi: Box::new(phi.kind().clone()),
    })
}

/// `sup_t (∫_t^∞ ψ(s)/s² ds) / (φ(t)/t)` over the grid.
pub fn lorentz_range_condition(psi: &WeightFunction, phi: &WeightFunction, grid: &LogGrid) -> Result<GridExtremum> {
    let mut best = GridExtremum {
        ratio: 0.0,
        witness_t: grid.min,
    };
    for t in grid.points() {
        let ratio = psi.tail_integral(t)? * t / phi.eval(t);
        if ratio > best.ratio {
            best = GridExtremum { ratio, witness_t: t };
        }
    }
    Ok(best)
}

/// `inf_t φ(t) / (t·log(1 + 1/t))` over the grid.
pub fn phi_floor_condition(phi: &WeightFunction, grid: &LogGrid) -> GridExtremum {
    let mut best = GridExtremum {
        ratio: f64::INFINITY,
        witness_t: grid.min,
    };
    for t in grid.points() {
        let ratio = phi.eval(t) / (t * ln_1p(1.0 / t));
        if ratio < best.ratio {
            best = GridExtremum { ratio, witness_t: t };
        }
    }
    best
}

/// Whether `g` witnesses membership of `f` in the range space:
/// `μ(f) ≺≺ Cμ(g)`.
pub fn f_space_witness(f: &SpectralProfile, g: &SpectralProfile) -> bool {
    submajorized_by_cesaro(&f.mu(), g).expect("profiles have nonnegative nonincreasing μ")
}
