//! Sampled curves as `t,value` CSV for plotting.

use std::fmt::Write as _;

use ncmax_core::maximal::ma_operator;
use ncmax_core::{CesaroCurve, SpectralProfile, StepFunction};

use crate::{format_number, Error, Result};

/// What to sample.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveObject {
    Step(StepFunction),
    Cesaro(CesaroCurve),
}

impl CurveObject {
    pub fn mu(p: &SpectralProfile) -> Self {
        CurveObject::Step(p.mu())
    }

    pub fn cesaro(p: &SpectralProfile) -> Self {
        CurveObject::Cesaro(CesaroCurve::of(&p.mu()).expect("μ is nonnegative"))
    }

    /// `μ(·, MA(|A|))`.
    pub fn maximal(p: &SpectralProfile) -> Self {
        CurveObject::Step(ma_operator(p).mu())
    }

    fn eval(&self, t: f64) -> f64 {
        match self {
            CurveObject::Step(f) => f.eval(t),
            CurveObject::Cesaro(c) => c.eval(t),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            CurveObject::Step(f) => f.breakpoints().to_vec(),
            CurveObject::Cesaro(c) => c.breakpoints().collect(),
        }
    }
}

/// `samples` log-spaced points in `[t_lo, t_hi]` plus every breakpoint in
/// range, in increasing order. A step function also gets a row `b-` with
/// its left limit just before each breakpoint `b`.
pub fn emit_curve(object: &CurveObject, samples: usize, t_lo: f64, t_hi: f64) -> Result<String> {
    if !(t_lo > 0.0 && t_lo.is_finite()) {
        return Err(Error::Usage(format!("log spacing needs t_lo > 0, got {t_lo}")));
    }
    if !(t_hi > t_lo && t_hi.is_finite()) {
        return Err(Error::Usage(format!("need t_hi > t_lo, got {t_hi}")));
    }
    if samples < 2 {
        return Err(Error::Usage(format!("need at least 2 samples, got {samples}")));
    }
    let grid = ncmax_core::LogGrid::new(t_lo, t_hi, samples)?;
    let breaks: Vec<f64> = object.breakpoints().into_iter().filter(|b| (t_lo..=t_hi).contains(b)).collect();
    // (t, is left limit)
    let mut rows: Vec<(f64, bool)> = grid.points().into_iter().map(|t| (t, false)).collect();
    rows.extend(breaks.iter().map(|&b| (b, false)));
    if let CurveObject::Step(_) = object {
        rows.extend(breaks.iter().map(|&b| (b, true)));
    }
    // left limits sort before the value at the same t
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    rows.dedup();

    let mut out = String::from("t,value\n");
    for (t, left) in rows {
        let (label, value) = match (left, object) {
            (true, CurveObject::Step(f)) => (format!("{}-", format_number(t)), f.eval_left(t)),
            _ => (format_number(t), object.eval(t)),
        };
        writeln!(out, "{label},{}", format_number(value)).expect("writing to a String");
    }
    Ok(out)
}
