use alloc::vec::Vec;

use crate::{Error, Result};

/// Right-open piecewise-constant function on `[0, ∞)`.
///
/// `values[i]` holds on `[breaks[i-1], breaks[i])` with `breaks[-1] = 0`; the
/// function is 0 from the last breakpoint on. Prefix integrals at every
/// breakpoint are computed once at construction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepFunction {
    breaks: Vec<f64>,
    values: Vec<f64>,
    prefix: Vec<f64>,
}

impl StepFunction {
    /// Builds a step function; breakpoints must be positive, finite and
    /// strictly increasing, values finite.
    pub fn new(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breaks.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: breaks.len(),
                got: values.len(),
            });
        }
        let mut prev = 0.0;
        for &b in &breaks {
            if !(b.is_finite() && b > prev) {
                return Err(Error::InvalidBreakpoints);
            }
            prev = b;
        }
        if let Some(&v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(v));
        }
        Ok(Self::from_parts_unchecked(breaks, values))
    }

    pub(crate) fn from_parts_unchecked(breaks: Vec<f64>, values: Vec<f64>) -> Self {
        let mut prefix = Vec::with_capacity(breaks.len());
        let mut acc = 0.0;
        let mut left = 0.0;
        for (&b, &v) in breaks.iter().zip(&values) {
            acc += v * (b - left);
            prefix.push(acc);
            left = b;
        }
        StepFunction {
            breaks,
            values,
            prefix,
        }
    }

    pub fn zero() -> Self {
        StepFunction::default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of pieces.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pieces as `(start, end, value)`.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breaks
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(move |(i, (&end, &v))| (self.start_of(i), end, v))
    }

    #[inline]
    fn start_of(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.breaks[i - 1]
        }
    }

    /// Right end of the support (0 for the empty function).
    pub fn support_end(&self) -> f64 {
        self.breaks.last().copied().unwrap_or(0.0)
    }

    /// Value at `t`, right-continuous; 0 for `t < 0` and beyond the support.
    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let i = self.breaks.partition_point(|&b| b <= t);
        self.values.get(i).copied().unwrap_or(0.0)
    }

    /// Limit from the left at `t > 0`.
    pub fn eval_left(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.values.first().copied().unwrap_or(0.0);
        }
        let i = self.breaks.partition_point(|&b| b < t);
        self.values.get(i).copied().unwrap_or(0.0)
    }

    /// Exact `∫₀ᵗ f`.
    pub fn integral(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let i = self.breaks.partition_point(|&b| b <= t);
        if i == self.breaks.len() {
            return self.total_integral();
        }
        let (base, left) = if i == 0 {
            (0.0, 0.0)
        } else {
            (self.prefix[i - 1], self.breaks[i - 1])
        };
        base + self.values[i] * (t - left)
    }

    /// Prefix integrals at the breakpoints.
    pub fn prefix_integrals(&self) -> &[f64] {
        &self.prefix
    }

    pub fn total_integral(&self) -> f64 {
        self.prefix.last().copied().unwrap_or(0.0)
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    pub(crate) fn require_decreasing_nonnegative(&self) -> Result<()> {
        if !self.is_nonnegative() {
            return Err(Error::Negative);
        }
        if !self.is_nonincreasing() {
            return Err(Error::NotNonincreasing);
        }
        Ok(())
    }
}

/// Compactly supported step function on the whole line, used by the
/// classical maximal function.
///
/// `values[i]` holds on `[breaks[i], breaks[i+1])`; the function is 0 outside
/// `[breaks[0], breaks[last])`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineStepFunction {
    breaks: Vec<f64>,
    values: Vec<f64>,
    /// `∫_{breaks[0]}^{breaks[i]} |f|`.
    abs_prefix: Vec<f64>,
}

impl LineStepFunction {
    pub fn new(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() && breaks.is_empty() {
            return Ok(Self::zero());
        }
        if breaks.len() != values.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: values.len() + 1,
                got: breaks.len(),
            });
        }
        if breaks.iter().any(|b| !b.is_finite()) || breaks.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidBreakpoints);
        }
        if let Some(&v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(v));
        }
        let mut abs_prefix = Vec::with_capacity(breaks.len());
        let mut acc = 0.0;
        abs_prefix.push(0.0);
        for (w, v) in breaks.windows(2).zip(&values) {
            acc += v.abs() * (w[1] - w[0]);
            abs_prefix.push(acc);
        }
        Ok(LineStepFunction {
            breaks,
            values,
            abs_prefix,
        })
    }

    pub fn zero() -> Self {
        LineStepFunction {
            breaks: Vec::new(),
            values: Vec::new(),
            abs_prefix: Vec::new(),
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Right-continuous value at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        if self.values.is_empty() || x < self.breaks[0] {
            return 0.0;
        }
        let i = self.breaks.partition_point(|&b| b <= x);
        if i == 0 || i > self.values.len() {
            0.0
        } else {
            self.values[i - 1]
        }
    }

    /// Limit from the left at `x`.
    pub fn eval_left(&self, x: f64) -> f64 {
        if self.values.is_empty() || x <= self.breaks[0] {
            return 0.0;
        }
        let i = self.breaks.partition_point(|&b| b < x);
        if i == 0 || i > self.values.len() {
            0.0
        } else {
            self.values[i - 1]
        }
    }

    /// `∫_{-∞}^{x} |f|`.
    pub fn abs_cumulative(&self, x: f64) -> f64 {
        if self.values.is_empty() || x <= self.breaks[0] {
            return 0.0;
        }
        let i = self.breaks.partition_point(|&b| b <= x);
        if i >= self.breaks.len() {
            return *self.abs_prefix.last().unwrap();
        }
        self.abs_prefix[i - 1] + self.values[i - 1].abs() * (x - self.breaks[i - 1])
    }

    /// `∫_{lo}^{hi} |f|` for `lo ≤ hi`.
    pub fn abs_integral(&self, lo: f64, hi: f64) -> f64 {
        self.abs_cumulative(hi) - self.abs_cumulative(lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sample() -> StepFunction {
        StepFunction::new(vec![1.0, 2.0], vec![3.0, 1.0]).unwrap()
    }

    #[test]
    fn integral_examples() {
        let f = sample();
        assert_eq!(f.integral(1.5), 3.5);
        assert_eq!(f.integral(0.0), 0.0);
        assert_eq!(f.integral(7.0), 4.0);
        let c = StepFunction::new(vec![5.0], vec![2.0]).unwrap();
        assert_eq!(c.integral(5.0), 10.0);
        assert_eq!(c.integral(9.0), 10.0);
        assert_eq!(StepFunction::zero().integral(3.0), 0.0);
    }

    #[test]
    fn evaluation_is_right_continuous() {
        let f = sample();
        assert_eq!(f.eval(0.0), 3.0);
        assert_eq!(f.eval(1.0), 1.0);
        assert_eq!(f.eval_left(1.0), 3.0);
        assert_eq!(f.eval(2.0), 0.0);
        assert_eq!(f.eval_left(2.0), 1.0);
        assert_eq!(f.eval(-1.0), 0.0);
    }

    #[test]
    fn rejects_bad_breakpoints() {
        assert_eq!(
            StepFunction::new(vec![1.0, 1.0], vec![1.0, 1.0]),
            Err(Error::InvalidBreakpoints)
        );
        assert_eq!(StepFunction::new(vec![0.0], vec![1.0]), Err(Error::InvalidBreakpoints));
        assert!(StepFunction::new(vec![1.0], vec![]).is_err());
        assert!(StepFunction::new(vec![1.0], vec![f64::NAN]).is_err());
    }

    #[test]
    fn monotonicity_predicates() {
        assert!(sample().is_nonincreasing());
        let up = StepFunction::new(vec![1.0, 2.0], vec![1.0, 3.0]).unwrap();
        assert!(!up.is_nonincreasing());
        assert_eq!(up.require_decreasing_nonnegative(), Err(Error::NotNonincreasing));
        let neg = StepFunction::new(vec![1.0], vec![-1.0]).unwrap();
        assert_eq!(neg.require_decreasing_nonnegative(), Err(Error::Negative));
    }

    #[test]
    fn line_step_cumulative() {
        let f = LineStepFunction::new(vec![-1.0, 0.0, 2.0], vec![-2.0, 1.0]).unwrap();
        assert_eq!(f.abs_cumulative(-5.0), 0.0);
        assert_eq!(f.abs_cumulative(-0.5), 1.0);
        assert_eq!(f.abs_cumulative(1.0), 3.0);
        assert_eq!(f.abs_cumulative(10.0), 4.0);
        assert_eq!(f.abs_integral(-0.5, 1.0), 2.0);
        assert_eq!(f.eval(0.0), 1.0);
        assert_eq!(f.eval_left(0.0), -2.0);
        assert_eq!(f.eval(2.0), 0.0);
        assert!(LineStepFunction::new(vec![0.0, 0.0], vec![1.0]).is_err());
    }
}
