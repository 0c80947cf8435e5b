//! The spectral Hardy-Littlewood maximal function.
//!
//! For a profile of `|A|` and a level `x ≥ 0`,
//!
//! ```text
//! MA(x) = sup_{r>0} τ(|A| E_[x-r, x+r]) / τ(E_[x-r, x+r]),   0/0 = 0,
//! ```
//!
//! and `MA(|A|)` is obtained by applying `MA` to the spectrum of `|A|`.

mod classical;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::rearrange::{CesaroCurve, SpectralProfile};
use crate::{Error, Result};

pub use classical::{classical_max_point, classical_window_average};

/// Constant in the comparison `μ(t, MA(|A|)) ≤ 16·(Cμ(A))(t)`.
pub const THEOREM_CONSTANT: f64 = 16.0;

/// Relative slack used when deciding the bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// Value of `MA(x)` with a radius attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MaximalEvaluation {
    pub value: f64,
    /// Smallest radius attaining the supremum; 0 when the window only holds
    /// atoms sitting at `x` itself (the `r → 0⁺` limit).
    pub witness_radius: f64,
}

/// Exact `MA(x)`.
///
/// The windowed average only changes when the closed window `[x-r, x+r]`
/// reaches a new atom, so the supremum is a maximum over the radii
/// `|x - λᵢ|`. Atoms are visited in order of distance with running sums.
pub fn ma_point(p: &SpectralProfile, x: f64) -> Result<MaximalEvaluation> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain { name: "x", value: x });
    }
    let by_distance = p.by_distance(x);
    let mut best = MaximalEvaluation {
        value: 0.0,
        witness_radius: 0.0,
    };
    let mut mass = 0.0;
    let mut weight = 0.0;
    let mut count = 0usize;
    let mut i = 0;
    while i < by_distance.len() {
        let radius = by_distance[i].0;
        while i < by_distance.len() && by_distance[i].0 == radius {
            let atom = by_distance[i].1;
            mass += atom.value * atom.weight;
            weight += atom.weight;
            count += 1;
            i += 1;
        }
        let average = if count == 1 {
            by_distance[0].1.value
        } else {
            mass / weight
        };
        if average > best.value {
            best = MaximalEvaluation {
                value: average,
                witness_radius: radius,
            };
        }
    }
    Ok(best)
}

/// Trace-weighted average of the atoms in the closed window `[x-r, x+r]`,
/// computed by a plain scan (0 for an empty window).
pub fn window_average(p: &SpectralProfile, x: f64, r: f64) -> f64 {
    let mut mass = 0.0;
    let mut weight = 0.0;
    for a in p.atoms() {
        if (a.value - x).abs() <= r {
            mass += a.value * a.weight;
            weight += a.weight;
        }
    }
    if weight == 0.0 {
        0.0
    } else {
        mass / weight
    }
}

/// Brute-force `MA(x)` over `grid_size` equally spaced radii in
/// `(0, x + max value]`. Never exceeds [`ma_point`]; meant as a test oracle.
pub fn ma_grid_oracle(p: &SpectralProfile, x: f64, grid_size: usize) -> Result<f64> {
    if grid_size < 10 {
        return Err(Error::Domain {
            name: "grid size",
            value: grid_size as f64,
        });
    }
    let reach = x + p.max_value();
    let n = grid_size as f64;
    Ok((1..=grid_size)
        .map(|k| window_average(p, x, reach * k as f64 / n))
        .fold(0.0, f64::max))
}

/// The operator `MA(|A|)`: `MA` applied atomwise to the spectrum, weights
/// unchanged, then canonicalized.
pub fn ma_operator(p: &SpectralProfile) -> SpectralProfile {
    let atoms: Vec<(f64, f64)> = p
        .atoms()
        .iter()
        .map(|a| {
            let v = ma_point(p, a.value).expect("atom values are finite and nonnegative");
            (v.value, a.weight)
        })
        .collect();
    SpectralProfile::new(atoms).expect("windowed averages of valid atoms are valid")
}

/// Outcome of checking `μ(t, MA(|A|)) ≤ 16·(Cμ(A))(t)` for all `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundCheck {
    pub holds: bool,
    /// `sup_t μ(t, MA(|A|)) / (Cμ(A))(t)`.
    pub worst_ratio: f64,
    /// `t` attaining the worst ratio, as a left limit.
    pub witness_t: f64,
}

/// Checks the comparison between the maximal operator and the Cesàro
/// transform exactly.
///
/// On each constancy interval of `μ(·, MA(|A|))` the Cesàro side is
/// continuous and nonincreasing, so the ratio is largest at the right
/// endpoint (approached from the left). Ties go to the larger `t`.
pub fn verify_16_bound(p: &SpectralProfile) -> BoundCheck {
    let lhs = ma_operator(p).mu();
    let rhs = CesaroCurve::of(&p.mu()).expect("μ is nonnegative");
    let mut worst = 0.0;
    let mut witness = 0.0;
    for (_, end, value) in lhs.pieces() {
        let c = rhs.eval(end);
        if c <= 0.0 {
            continue;
        }
        let ratio = value / c;
        if ratio >= worst {
            worst = ratio;
            witness = end;
        }
    }
    BoundCheck {
        holds: worst <= THEOREM_CONSTANT * (1.0 + BOUND_SLACK),
        worst_ratio: worst,
        witness_t: witness,
    }
}

/// `sup_t t·μ(t, MA(|A|))` divided by `‖A‖₁`, with the `t` attaining it.
///
/// `t·μ(t)` increases on each step, so the supremum sits at a right endpoint.
/// Returns `(0, 0)` for a zero profile.
pub fn weak_type_ratio(p: &SpectralProfile) -> (f64, f64) {
    let l1 = p.l1_norm();
    if l1 == 0.0 {
        return (0.0, 0.0);
    }
    let mut best = (0.0, 0.0);
    for (_, end, value) in ma_operator(p).mu().pieces() {
        let r = end * value / l1;
        if r > best.0 {
            best = (r, end);
        }
    }
    best
}

/// `‖MA(|A|)‖_∞ / ‖A‖_∞` (0 for a zero profile).
pub fn linf_ratio(p: &SpectralProfile) -> f64 {
    let top = p.max_value();
    if top == 0.0 {
        0.0
    } else {
        ma_operator(p).max_value() / top
    }
}
