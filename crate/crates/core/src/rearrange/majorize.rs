//! Hardy-Littlewood-Pólya submajorization decided on prefix integrals.

use alloc::vec::Vec;

use super::{CesaroCurve, SpectralProfile, StepFunction};
use crate::Result;

/// Relative slack for prefix-integral comparisons; absorbs the rounding of
/// two different summation orders and nothing more.
pub const SLACK: f64 = 1e-12;

#[inline]
fn le_with_slack(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + SLACK * lhs.abs().max(rhs.abs())
}

/// `f ≺≺ g`: `∫₀ᵗ f ≤ ∫₀ᵗ g` for every `t ≥ 0`.
///
/// Both prefix integrals are piecewise linear, so their difference is linear
/// between the union of breakpoints and the check at those points is exact.
pub fn submajorizes(g: &StepFunction, f: &StepFunction) -> Result<bool> {
    g.require_decreasing_nonnegative()?;
    f.require_decreasing_nonnegative()?;
    let ok = g
        .breakpoints()
        .iter()
        .chain(f.breakpoints())
        .all(|&t| le_with_slack(f.integral(t), g.integral(t)));
    Ok(ok)
}

/// `f ≺≺ Cμ(g)`: `∫₀ᵗ f ≤ ∫₀ᵗ Cμ(g)` for every `t > 0`.
///
/// The left side is piecewise linear and the right side is concave on each
/// cell between consecutive breakpoints of either curve, so the difference is
/// concave per cell and its minimum sits at a cell endpoint. Interior points
/// where the slopes match (`v = a/s + b`) are probed as well.
pub fn submajorized_by_cesaro(f: &StepFunction, g: &SpectralProfile) -> Result<bool> {
    f.require_decreasing_nonnegative()?;
    let curve = CesaroCurve::of(&g.mu())?;
    submajorized_by_curve(f, &curve)
}

pub(crate) fn submajorized_by_curve(f: &StepFunction, curve: &CesaroCurve) -> Result<bool> {
    let mut probes: Vec<f64> = f.breakpoints().to_vec();
    probes.extend(curve.breakpoints());

    // Tangency candidates: for each step value v and curve piece (a, b) with
    // v > b, the slopes agree at s = a / (v - b).
    for &v in f.values() {
        for p in curve.pieces() {
            if p.a > 0.0 && v > p.b {
                let s = p.a / (v - p.b);
                if s >= p.start && s < p.end {
                    probes.push(s);
                }
            }
        }
        let tail = curve.tail_coefficient();
        if tail > 0.0 && v > 0.0 {
            let s = tail / v;
            if s >= curve.tail_start() {
                probes.push(s);
            }
        }
    }

    Ok(probes
        .iter()
        .filter(|t| **t > 0.0)
        .all(|&t| le_with_slack(f.integral(t), curve.integral(t))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(b: &[f64], v: &[f64]) -> StepFunction {
        StepFunction::new(b.to_vec(), v.to_vec()).unwrap()
    }

    #[test]
    fn reflexive() {
        let f = step(&[1.0, 2.0], &[3.0, 1.0]);
        assert!(submajorizes(&f, &f).unwrap());
    }

    #[test]
    fn breakpoint_comparison() {
        let g = step(&[2.0], &[2.0]);
        let f = step(&[1.0], &[3.0]);
        assert!(!submajorizes(&g, &f).unwrap());
        assert!(!submajorizes(&f, &g).unwrap());
        let small = step(&[1.0], &[1.0]);
        assert!(submajorizes(&g, &small).unwrap());
    }

    #[test]
    fn rejects_increasing_input() {
        let up = step(&[1.0, 2.0], &[1.0, 2.0]);
        let f = step(&[1.0], &[1.0]);
        assert!(submajorizes(&up, &f).is_err());
        assert!(submajorizes(&f, &up).is_err());
    }

    #[test]
    fn cesaro_examples() {
        let g = SpectralProfile::new([(3.0, 1.0), (1.0, 1.0)]).unwrap();
        assert!(submajorized_by_cesaro(&g.mu(), &g).unwrap());
        let big = step(&[1.0], &[100.0]);
        let unit = SpectralProfile::new([(1.0, 1.0)]).unwrap();
        assert!(!submajorized_by_cesaro(&big, &unit).unwrap());
        assert!(submajorized_by_cesaro(&StepFunction::zero(), &unit).unwrap());
        assert!(submajorized_by_cesaro(&StepFunction::zero(), &SpectralProfile::empty()).unwrap());
        assert!(!submajorized_by_cesaro(&step(&[1.0], &[1e-9]), &SpectralProfile::empty()).unwrap());
    }

    #[test]
    fn cesaro_envelope_dominates() {
        // ∫₀ᵗ Cμ(g) = 1 + ln t for t ≥ 1, while f = 1 on [0, 1 + ln 2)
        // integrates to t > 1 + ln t there.
        let g = SpectralProfile::new([(1.0, 1.0)]).unwrap();
        let f = step(&[1.0 + core::f64::consts::LN_2], &[1.0]);
        assert!(!submajorized_by_cesaro(&f, &g).unwrap());
        let f = step(&[1.0, 3.0], &[1.0, 0.3]);
        // ∫ f at 3 is 1.6 < 1 + ln 3
        assert!(submajorized_by_cesaro(&f, &g).unwrap());
    }
}
