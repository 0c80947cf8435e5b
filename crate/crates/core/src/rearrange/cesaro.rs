use alloc::vec::Vec;

use super::StepFunction;
use crate::math::ln;
use crate::Result;

/// One piece of a Cesàro curve: the value is `a / t + b` on `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CesaroPiece {
    pub start: f64,
    pub end: f64,
    pub a: f64,
    pub b: f64,
}

impl CesaroPiece {
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        if self.a == 0.0 {
            self.b
        } else {
            self.a / t + self.b
        }
    }

    /// `∫_{lo}^{hi}` of the piece for `start ≤ lo ≤ hi ≤ end`.
    fn integral_between(&self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        let log_part = if self.a == 0.0 { 0.0 } else { self.a * ln(hi / lo) };
        log_part + self.b * (hi - lo)
    }
}

/// Exact representation of the running average `(Cf)(t) = (1/t)∫₀ᵗ f` of a
/// nonnegative step function: one `a/t + b` piece per step, followed by the
/// hyperbolic tail `a_∞ / t` with `a_∞ = ∫₀^∞ f`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CesaroCurve {
    pieces: Vec<CesaroPiece>,
    tail: f64,
}

impl CesaroCurve {
    /// Cesàro transform of a nonnegative step function.
    pub fn of(f: &StepFunction) -> Result<Self> {
        if !f.is_nonnegative() {
            return Err(crate::Error::Negative);
        }
        let prefix = f.prefix_integrals();
        let pieces = f
            .pieces()
            .enumerate()
            .map(|(i, (start, end, v))| {
                let before = if i == 0 { 0.0 } else { prefix[i - 1] };
                CesaroPiece {
                    start,
                    end,
                    a: if i == 0 { 0.0 } else { before - v * start },
                    b: v,
                }
            })
            .collect();
        Ok(CesaroCurve {
            pieces,
            tail: f.total_integral(),
        })
    }

    pub fn pieces(&self) -> &[CesaroPiece] {
        &self.pieces
    }

    /// Coefficient of the tail `a_∞ / t`.
    pub fn tail_coefficient(&self) -> f64 {
        self.tail
    }

    /// Where the hyperbolic tail starts (0 for the zero curve).
    pub fn tail_start(&self) -> f64 {
        self.pieces.last().map_or(0.0, |p| p.end)
    }

    /// Breakpoints between pieces, including the start of the tail.
    pub fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.pieces.iter().map(|p| p.end)
    }

    /// `(Cf)(t)`; at `t = 0` this returns the limit `f(0)`.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.pieces.first().map_or(0.0, |p| p.b);
        }
        let i = self.pieces.partition_point(|p| p.end <= t);
        match self.pieces.get(i) {
            Some(p) => p.eval(t),
            None if self.tail == 0.0 => 0.0,
            None => self.tail / t,
        }
    }

    /// Exact `∫₀ᵗ (Cf)(s) ds`. The first piece is constant, so the lower
    /// endpoint contributes nothing singular.
    pub fn integral(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let mut total = 0.0;
        for p in &self.pieces {
            if t <= p.start {
                return total;
            }
            let hi = t.min(p.end);
            total += if p.start == 0.0 {
                p.b * hi
            } else {
                p.integral_between(p.start, hi)
            };
            if t <= p.end {
                return total;
            }
        }
        let start = self.tail_start();
        if self.tail > 0.0 && t > start {
            total += self.tail * ln(t / start);
        }
        total
    }
}
