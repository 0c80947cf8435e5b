use crate::rearrange::LineStepFunction;

/// `(1/2r) ∫_{x-r}^{x+r} |f|` for `r > 0`.
pub fn classical_window_average(f: &LineStepFunction, x: f64, r: f64) -> f64 {
    f.abs_integral(x - r, x + r) / (2.0 * r)
}

/// Centered Hardy-Littlewood maximal function of a compactly supported step
/// function on the line, evaluated exactly.
///
/// Between consecutive radii at which `x ± r` crosses a breakpoint the mass
/// in the window is affine in `r`, so the average `A(r)/2r` is monotone there.
/// The supremum is therefore the largest of the averages at those radii and
/// the `r → 0⁺` limit `(|f(x⁻)| + |f(x)|)/2`.
pub fn classical_max_point(f: &LineStepFunction, x: f64) -> f64 {
    let mut best = 0.5 * (f.eval_left(x).abs() + f.eval(x).abs());
    for &b in f.breakpoints() {
        let r = (x - b).abs();
        if r > 0.0 {
            best = best.max(classical_window_average(f, x, r));
        }
    }
    best
}
