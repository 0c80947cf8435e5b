//! The two worked examples of range spaces.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::json;

use ncmax_core::spaces::{lorentz_range_condition, phi_floor_condition, psi_from_phi_inv};
use ncmax_core::{LogGrid, WeightFunction};

use crate::report::{ReportDocument, Violation, SCHEMA};
use crate::{Error, Result};

/// Supremum of the range ratio of the first example on the default grid,
/// from an independent evaluation of the tail integral through the
/// dilogarithm identity `∫_t^∞ ln(1+1/s)/s ds = -Li₂(-1/t)`.
pub const EXAMPLE_ONE_SUP_RATIO: f64 = 2.129_106_744_526_329;
/// Relative margin around [`EXAMPLE_ONE_SUP_RATIO`].
pub const EXAMPLE_ONE_MARGIN: f64 = 0.01;
/// Window for `ψ(t)·log(1+t)/t` in the second example.
pub const EXAMPLE_TWO_WINDOW: (f64, f64) = (0.648, 1.0);
/// Agreement of `ψ` with its closed form in the second example.
pub const EXAMPLE_TWO_TOLERANCE: f64 = 1e-8;

/// `Λ_φ` with `φ(t) = t log²(1 + 1/√t)` and `ψ(t) = t log(1 + 1/t)`.
pub fn example_one_weights() -> (WeightFunction, WeightFunction) {
    (
        WeightFunction::log_type(2.0, 0.5).expect("catalog entry"),
        WeightFunction::log_type(1.0, 1.0).expect("catalog entry"),
    )
}

/// `ψ(t) = 1` on `(0, 1]` and `t/(1 + ln t)` beyond.
pub fn example_two_closed_form(t: f64) -> f64 {
    if t <= 1.0 {
        1.0
    } else {
        t / (1.0 + t.ln())
    }
}

pub fn run_example(id: u32, grid: &LogGrid) -> Result<ReportDocument> {
    let started = Instant::now();
    let mut report = match id {
        1 => example_one(grid)?,
        2 => example_two(grid)?,
        _ => return Err(Error::Usage(format!("unknown example {id}; expected 1 or 2"))),
    };
    report.runtime_millis = started.elapsed().as_millis() as u64;
    Ok(report)
}

fn base(id: u32, grid: &LogGrid) -> ReportDocument {
    ReportDocument {
        schema: SCHEMA.to_owned(),
        suite: format!("example-{id}"),
        trials: grid.points as u64,
        seed: 0,
        passed: true,
        violations: Vec::new(),
        extremal_ratio: 0.0,
        extremal_witness: None,
        constants: BTreeMap::new(),
        runtime_millis: 0,
    }
}

fn example_one(grid: &LogGrid) -> Result<ReportDocument> {
    let (phi, psi) = example_one_weights();
    let range = lorentz_range_condition(&psi, &phi, grid)?;
    let floor = phi_floor_condition(&phi, grid);
    let mut report = base(1, grid);
    report.extremal_ratio = range.ratio;
    report.extremal_witness = Some(json!({ "t": range.witness_t }));
    report.constants.extend([
        ("supRatio".to_owned(), range.ratio),
        ("supRatioT".to_owned(), range.witness_t),
        ("infRatio".to_owned(), floor.ratio),
        ("infRatioT".to_owned(), floor.witness_t),
    ]);
    let grid_index = |t: f64| grid.points().iter().position(|&g| g == t).unwrap_or(0) as u64;
    if !range.ratio.is_finite() {
        report.violations.push(Violation {
            trial_index: grid_index(range.witness_t),
            witness: json!({ "t": range.witness_t, "condition": "range" }),
            lhs: range.ratio,
            rhs: f64::MAX,
        });
    }
    if *grid == LogGrid::default() {
        report.constants.insert("pinnedSupRatio".to_owned(), EXAMPLE_ONE_SUP_RATIO);
        if (range.ratio - EXAMPLE_ONE_SUP_RATIO).abs() > EXAMPLE_ONE_MARGIN * EXAMPLE_ONE_SUP_RATIO {
            report.violations.push(Violation {
                trial_index: grid_index(range.witness_t),
                witness: json!({ "t": range.witness_t, "condition": "pinned" }),
                lhs: range.ratio,
                rhs: EXAMPLE_ONE_SUP_RATIO,
            });
        }
    }
    if !(floor.ratio > 0.0) {
        report.violations.push(Violation {
            trial_index: grid_index(floor.witness_t),
            witness: json!({ "t": floor.witness_t, "condition": "floor" }),
            lhs: floor.ratio,
            rhs: 0.0,
        });
    }
    report.passed = report.violations.is_empty();
    Ok(report)
}

fn example_two(grid: &LogGrid) -> Result<ReportDocument> {
    let psi = psi_from_phi_inv(&WeightFunction::max_one())?;
    let mut report = base(2, grid);
    let (mut c1, mut c1_t) = (f64::INFINITY, 0.0);
    let (mut c2, mut c2_t) = (0.0, 0.0);
    let mut worst_error: f64 = 0.0;
    for (i, t) in (0u64..).zip(grid.points()) {
        let value = psi.eval(t);
        let closed = example_two_closed_form(t);
        let error = (value - closed).abs() / closed;
        worst_error = worst_error.max(error);
        if !(error <= EXAMPLE_TWO_TOLERANCE) {
            report.violations.push(Violation {
                trial_index: i,
                witness: json!({ "t": t, "condition": "closedForm" }),
                lhs: value,
                rhs: closed,
            });
        }
        let r = value * t.ln_1p() / t;
        if r < c1 {
            (c1, c1_t) = (r, t);
        }
        if r > c2 {
            (c2, c2_t) = (r, t);
        }
        let (lo, hi) = EXAMPLE_TWO_WINDOW;
        if !(lo..=hi).contains(&r) {
            report.violations.push(Violation {
                trial_index: i,
                witness: json!({ "t": t, "condition": "window" }),
                lhs: r,
                rhs: if r < lo { lo } else { hi },
            });
        }
    }
    report.extremal_ratio = worst_error;
    report.extremal_witness = Some(json!({ "phi": WeightFunction::max_one() }));
    report.constants.extend([
        ("c1".to_owned(), c1),
        ("c1T".to_owned(), c1_t),
        ("c2".to_owned(), c2),
        ("c2T".to_owned(), c2_t),
        ("pinnedC1".to_owned(), EXAMPLE_TWO_WINDOW.0),
        ("pinnedC2".to_owned(), EXAMPLE_TWO_WINDOW.1),
        ("psiAt2".to_owned(), psi.eval(2.0)),
        ("maxRelativeError".to_owned(), worst_error),
    ]);
    report.passed = report.violations.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_examples_pass() {
        let one = run_example(1, &LogGrid::default()).unwrap();
        assert!(one.passed, "{:?}", one.violations);
        assert!((one.constants["supRatio"] - EXAMPLE_ONE_SUP_RATIO).abs() < 1e-7);
        let two = run_example(2, &LogGrid::default()).unwrap();
        assert!(two.passed, "{:?}", two.violations);
        assert!((two.constants["psiAt2"] - 2.0 / (1.0 + std::f64::consts::LN_2)).abs() < 1e-15);
        assert!(run_example(3, &LogGrid::default()).is_err());
    }

    #[test]
    fn custom_grid_skips_the_pin() {
        let grid = LogGrid::new(1e-2, 1e2, 11).unwrap();
        let one = run_example(1, &grid).unwrap();
        assert!(one.passed);
        assert!(!one.constants.contains_key("pinnedSupRatio"));
        assert_eq!(one.trials, 11);
    }
}
