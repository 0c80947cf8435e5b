//! Adaptive Simpson quadrature.
//!
//! Used only where no closed form exists: improper weight integrals after a
//! change of variables has made the integrand bounded.

use crate::{Error, Result};

/// Recursion depth at which a subinterval is declared unresolved.
pub const MAX_DEPTH: u32 = 48;

#[inline]
fn simpson(a: f64, fa: f64, fm: f64, b: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// The tolerance is measured against the running magnitude of the integral;
/// an absolute floor of `rel_tol * 1e-300` keeps identically-zero integrands
/// from recursing forever.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature { a, b });
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, fa, fm, b, fb);
    // Seed the scale with a five-point estimate so that the first split is
    // not judged against a lucky zero.
    let scale = whole.abs().max(f(0.25 * (3.0 * a + b)).abs().max(fm.abs()) * (b - a).abs());
    let tol = (rel_tol * scale).max(rel_tol * 1e-300);
    recurse(&f, a, fa, m, fm, b, fb, whole, tol, 0)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, fa, flm, m, fm);
    let right = simpson(m, fm, frm, b, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH || !delta.is_finite() {
        return Err(Error::Quadrature { a, b });
    }
    let l = recurse(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1)?;
    let r = recurse(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1)?;
    Ok(l + r)
}

/// Integrates over `[a, b]` (with `0 < a < b`) on a geometric mesh
/// `a, 2a, 4a, ...`, running adaptive Simpson on each cell.
///
/// Integrands that vary on a logarithmic scale converge cell by cell instead
/// of forcing deep recursion near `a`.
pub fn geometric_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a > 0.0 && b >= a) {
        return Err(Error::Quadrature { a, b });
    }
    let mut total = 0.0;
    let mut lo = a;
    while lo < b {
        let hi = (2.0 * lo).min(b);
        total += adaptive_simpson(&f, lo, hi, rel_tol)?;
        lo = hi;
    }
    Ok(total)
}
