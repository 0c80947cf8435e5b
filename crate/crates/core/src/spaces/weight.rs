use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LogGrid;
use crate::math::{close_rel, exp, ln, ln_1p, powf};
use crate::quad::{adaptive_simpson, geometric_simpson};
use crate::{Error, Result};

/// Relative tolerance of every quadrature behind a weight function.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

/// Below this power of the variable, catalog asymptotics replace quadrature
/// near a singular endpoint (relative error of the asymptotic ≲ this value).
const ASYMPTOTIC_CUTOFF: f64 = 1e-12;

/// Catalog of weight functions on `(0, ∞)`.
///
/// Serialized with a `kind` tag, e.g. `{"kind":"logtype","beta":2,"gamma":0.5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightKind {
    /// `t^α`, `α ∈ (0, 1]`.
    Power { alpha: f64 },
    /// `t · log^β(1 + t^{-γ})`.
    LogType { beta: f64, gamma: f64 },
    /// `max{1, t}`.
    MaxOne,
    /// `min{1, t}`.
    MinOne,
    /// `1` on `(0, 1]`, `t / (1 + ln t)` beyond.
    ReciprocalLog,
    /// Linear interpolation of `(t, value)` vertices, constant after the last
    /// vertex; `(0, 0)` is implied when the first vertex has `t > 0`.
    PiecewiseLinear { vertices: Vec<[f64; 2]> },
    /// `t · (∫₀ᵗ ds / φ(s))⁻¹` for the inner `φ`.
    CesaroRange { phi: Box<WeightKind> },
}

/// A validated quasiconcave weight function.
///
/// Construction checks, on a logarithmic grid over `[1e-6, 1e6]` plus the
/// function's own kinks, that the function is positive, nondecreasing and
/// that `φ(t)/t` is nonincreasing. Concavity is recorded, not required.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightKind", into = "WeightKind")]
pub struct WeightFunction {
    kind: WeightKind,
    concave: bool,
}

impl TryFrom<WeightKind> for WeightFunction {
    type Error = Error;

    fn try_from(kind: WeightKind) -> Result<Self> {
        WeightFunction::new(kind)
    }
}

impl From<WeightFunction> for WeightKind {
    fn from(w: WeightFunction) -> Self {
        w.kind
    }
}

fn domain(name: &'static str, value: f64) -> Error {
    Error::Domain { name, value }
}

impl WeightKind {
    fn check_parameters(&self) -> Result<()> {
        match self {
            WeightKind::Power { alpha } => {
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(domain("power exponent", *alpha));
                }
            }
            WeightKind::LogType { beta, gamma } => {
                if !(*beta > 0.0 && beta.is_finite()) {
                    return Err(domain("logtype beta", *beta));
                }
                if !(*gamma > 0.0 && gamma.is_finite()) {
                    return Err(domain("logtype gamma", *gamma));
                }
            }
            WeightKind::MaxOne | WeightKind::MinOne | WeightKind::ReciprocalLog => {}
            WeightKind::PiecewiseLinear { vertices } => {
                if vertices.is_empty() {
                    return Err(Error::InvalidBreakpoints);
                }
                let mut prev = f64::NEG_INFINITY;
                for &[t, v] in vertices {
                    if !(t.is_finite() && t >= 0.0 && t > prev) {
                        return Err(Error::InvalidBreakpoints);
                    }
                    if !(v.is_finite() && v >= 0.0) {
                        return Err(domain("vertex value", v));
                    }
                    prev = t;
                }
            }
            WeightKind::CesaroRange { phi } => {
                phi.check_parameters()?;
                if matches!(**phi, WeightKind::CesaroRange { .. }) {
                    return Err(Error::Unsupported("nested Cesàro range weights"));
                }
            }
        }
        Ok(())
    }

    /// Vertices with the implied origin prepended.
    fn pwl_points(vertices: &[[f64; 2]]) -> impl Iterator<Item = [f64; 2]> + '_ {
        let origin = if vertices[0][0] > 0.0 {
            Some([0.0, 0.0])
        } else {
            None
        };
        origin.into_iter().chain(vertices.iter().copied())
    }

    fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.limit_at_zero();
        }
        match self {
            WeightKind::Power { alpha } => powf(t, *alpha),
            WeightKind::LogType { beta, gamma } => t * powf(ln_1p(powf(t, -gamma)), *beta),
            WeightKind::MaxOne => t.max(1.0),
            WeightKind::MinOne => t.min(1.0),
            WeightKind::ReciprocalLog => {
                if t <= 1.0 {
                    1.0
                } else {
                    t / (1.0 + ln(t))
                }
            }
            WeightKind::PiecewiseLinear { vertices } => {
                let last = vertices[vertices.len() - 1];
                if t >= last[0] {
                    return last[1];
                }
                let mut prev = [0.0, 0.0];
                for q in Self::pwl_points(vertices) {
                    if t < q[0] {
                        let frac = (t - prev[0]) / (q[0] - prev[0]);
                        return prev[1] + frac * (q[1] - prev[1]);
                    }
                    prev = q;
                }
                last[1]
            }
            WeightKind::CesaroRange { phi } => match phi.reciprocal_integral(t) {
                Ok(denominator) => t / denominator,
                Err(_) => f64::NAN,
            },
        }
    }

    fn limit_at_zero(&self) -> f64 {
        match self {
            WeightKind::Power { .. } | WeightKind::LogType { .. } | WeightKind::MinOne => 0.0,
            WeightKind::MaxOne | WeightKind::ReciprocalLog => 1.0,
            WeightKind::PiecewiseLinear { vertices } => {
                if vertices[0][0] > 0.0 {
                    0.0
                } else {
                    vertices[0][1]
                }
            }
            // t / ∫₀ᵗ 1/φ tends to φ(0⁺)
            WeightKind::CesaroRange { phi } => phi.limit_at_zero(),
        }
    }

    fn limit_at_infinity(&self) -> f64 {
        match self {
            WeightKind::Power { .. } | WeightKind::MaxOne | WeightKind::ReciprocalLog => f64::INFINITY,
            WeightKind::LogType { beta, gamma } => {
                // t·log^β(1+t^{-γ}) ~ t^{1-βγ}
                let order = beta * gamma;
                if close_rel(order, 1.0, 1e-12) {
                    1.0
                } else if order > 1.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            WeightKind::MinOne => 1.0,
            WeightKind::PiecewiseLinear { vertices } => vertices[vertices.len() - 1][1],
            WeightKind::CesaroRange { .. } => f64::INFINITY,
        }
    }

    fn kinks(&self) -> Vec<f64> {
        match self {
            WeightKind::MaxOne | WeightKind::MinOne | WeightKind::ReciprocalLog => alloc::vec![1.0],
            WeightKind::PiecewiseLinear { vertices } => vertices.iter().map(|v| v[0]).filter(|&t| t > 0.0).collect(),
            WeightKind::CesaroRange { phi } => phi.kinks(),
            _ => Vec::new(),
        }
    }

    /// `∫₀ᵗ ds / φ(s)`.
    fn reciprocal_integral(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Ok(0.0);
        }
        match self {
            WeightKind::Power { alpha } => {
                if *alpha >= 1.0 {
                    Err(Error::Divergent("∫₀ ds/s"))
                } else {
                    Ok(powf(t, 1.0 - alpha) / (1.0 - alpha))
                }
            }
            WeightKind::LogType { beta, gamma } => {
                let (beta, gamma) = (*beta, *gamma);
                if beta <= 1.0 {
                    return Err(Error::Divergent("∫₀ ds/(s·log^β(1/s)) with β ≤ 1"));
                }
                // Near 0, φ(s) = s·(γ ln(1/s) + ln(1 + s^γ))^β, so
                // ∫₀^ε ds/φ ≈ ln(1/ε)^{1-β} / (γ^β (β-1)).
                let near_zero = |eps: f64| powf(-ln(eps), 1.0 - beta) / (powf(gamma, beta) * (beta - 1.0));
                let cutoff = powf(ASYMPTOTIC_CUTOFF, 1.0 / gamma);
                if t <= cutoff {
                    return Ok(near_zero(t));
                }
                // u = ln s turns ds/φ(s) into du / log^β(1 + e^{-γu}).
                let integrand = |u: f64| 1.0 / powf(ln_1p(exp(-gamma * u)), beta);
                let (lo, hi) = (ln(cutoff), ln(t));
                let mut total = near_zero(cutoff);
                let mut a = lo;
                while a < hi {
                    let b = (a + 1.0).min(hi);
                    total += adaptive_simpson(integrand, a, b, QUADRATURE_TOLERANCE)?;
                    a = b;
                }
                Ok(total)
            }
            WeightKind::MaxOne => Ok(if t <= 1.0 { t } else { 1.0 + ln(t) }),
            WeightKind::MinOne => Err(Error::Divergent("∫₀ ds/min(1,s)")),
            WeightKind::ReciprocalLog => {
                if t <= 1.0 {
                    Ok(t)
                } else {
                    let l = ln(t);
                    Ok(1.0 + l + 0.5 * l * l)
                }
            }
            WeightKind::PiecewiseLinear { vertices } => {
                if self.limit_at_zero() <= 0.0 {
                    return Err(Error::Divergent("piecewise-linear weight vanishing at 0"));
                }
                let mut total = 0.0;
                let mut prev: Option<[f64; 2]> = None;
                for q in Self::pwl_points(vertices) {
                    if let Some(p) = prev {
                        let hi = t.min(q[0]);
                        if hi > p[0] {
                            let slope = (q[1] - p[1]) / (q[0] - p[0]);
                            let at_hi = p[1] + slope * (hi - p[0]);
                            total += if slope == 0.0 {
                                (hi - p[0]) / p[1]
                            } else {
                                ln(at_hi / p[1]) / slope
                            };
                        }
                        if t <= q[0] {
                            return Ok(total);
                        }
                    }
                    prev = Some(q);
                }
                let last = vertices[vertices.len() - 1];
                Ok(total + (t - last[0]) / last[1])
            }
            WeightKind::CesaroRange { .. } => Err(Error::Unsupported("reciprocal integral of a Cesàro range weight")),
        }
    }

    /// `∫_t^∞ ψ(s) / s² ds` for `t > 0`.
    fn tail_integral(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(domain("t", t));
        }
        match self {
            WeightKind::Power { alpha } => {
                if *alpha >= 1.0 {
                    Err(Error::Divergent("∫^∞ ds/s"))
                } else {
                    Ok(powf(t, alpha - 1.0) / (1.0 - alpha))
                }
            }
            WeightKind::LogType { beta, gamma } => {
                let (beta, gamma) = (*beta, *gamma);
                // u = 1/s: ∫₀^{1/t} ψ(1/u) du with ψ(1/u) = log^β(1+u^γ)/u,
                // which behaves like u^{βγ-1} near u = 0.
                let order = beta * gamma;
                let near_zero = |u: f64| powf(u, order) / order;
                let upper = 1.0 / t;
                let cutoff = powf(ASYMPTOTIC_CUTOFF, 1.0 / gamma);
                if upper <= cutoff {
                    return Ok(near_zero(upper));
                }
                let integrand = |u: f64| powf(ln_1p(powf(u, gamma)), beta) / u;
                Ok(near_zero(cutoff) + geometric_simpson(integrand, cutoff, upper, QUADRATURE_TOLERANCE)?)
            }
            WeightKind::MaxOne => Err(Error::Divergent("∫^∞ max(1,s)/s² ds")),
            WeightKind::ReciprocalLog => Err(Error::Divergent("∫^∞ ds/(s(1+ln s))")),
            WeightKind::MinOne => Ok(if t <= 1.0 { 1.0 - ln(t) } else { 1.0 / t }),
            WeightKind::PiecewiseLinear { vertices } => {
                let mut total = 0.0;
                let mut prev: Option<[f64; 2]> = None;
                for q in Self::pwl_points(vertices) {
                    if let Some(p) = prev {
                        let lo = t.max(p[0]);
                        if q[0] > lo {
                            // ψ = c + m s on the segment
                            let m = (q[1] - p[1]) / (q[0] - p[0]);
                            let c = p[1] - m * p[0];
                            total += c * (1.0 / lo - 1.0 / q[0]) + m * ln(q[0] / lo);
                        }
                    }
                    prev = Some(q);
                }
                let last = vertices[vertices.len() - 1];
                Ok(total + last[1] / t.max(last[0]))
            }
            WeightKind::CesaroRange { .. } => Err(Error::Unsupported("tail integral of a Cesàro range weight")),
        }
    }
}

impl WeightFunction {
    /// Validates a catalog entry.
    pub fn new(kind: WeightKind) -> Result<Self> {
        kind.check_parameters()?;
        if let WeightKind::CesaroRange { phi } = &kind {
            phi.reciprocal_integral(1.0)?;
        }
        let mut w = WeightFunction { kind, concave: false };
        w.check_quasiconcave()?;
        w.concave = w.check_concave();
        Ok(w)
    }

    pub fn power(alpha: f64) -> Result<Self> {
        Self::new(WeightKind::Power { alpha })
    }

    pub fn log_type(beta: f64, gamma: f64) -> Result<Self> {
        Self::new(WeightKind::LogType { beta, gamma })
    }

    pub fn max_one() -> Self {
        Self::new(WeightKind::MaxOne).expect("catalog entry")
    }

    pub fn min_one() -> Self {
        Self::new(WeightKind::MinOne).expect("catalog entry")
    }

    pub fn reciprocal_log() -> Self {
        Self::new(WeightKind::ReciprocalLog).expect("catalog entry")
    }

    pub fn piecewise_linear(vertices: Vec<[f64; 2]>) -> Result<Self> {
        Self::new(WeightKind::PiecewiseLinear { vertices })
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    /// Whether the function passed the concavity check at construction.
    pub fn is_concave(&self) -> bool {
        self.concave
    }

    /// `φ(t)`; for `t ≤ 0` the limit `φ(0⁺)`.
    pub fn eval(&self, t: f64) -> f64 {
        self.kind.eval(t)
    }

    pub fn limit_at_zero(&self) -> f64 {
        self.kind.limit_at_zero()
    }

    pub fn limit_at_infinity(&self) -> f64 {
        self.kind.limit_at_infinity()
    }

    /// Points where the function is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        self.kind.kinks()
    }

    /// `∫₀ᵗ ds / φ(s)`, closed form where the catalog provides one.
    pub fn reciprocal_integral(&self, t: f64) -> Result<f64> {
        self.kind.reciprocal_integral(t)
    }

    /// `∫_t^∞ φ(s) / s² ds`.
    pub fn tail_integral(&self, t: f64) -> Result<f64> {
        self.kind.tail_integral(t)
    }

    fn probe_points(&self) -> Vec<f64> {
        let mut ts = LogGrid::new(1e-6, 1e6, 121).expect("static grid").points();
        for k in self.kinks() {
            ts.extend([k * (1.0 - 1e-6), k, k * (1.0 + 1e-6)]);
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        ts
    }

    fn slack(&self) -> f64 {
        match self.kind {
            WeightKind::CesaroRange { .. } | WeightKind::LogType { .. } => 1e-8,
            _ => 1e-12,
        }
    }

    fn check_quasiconcave(&self) -> Result<()> {
        let slack = self.slack();
        let ts = self.probe_points();
        let values: Vec<f64> = ts.iter().map(|&t| self.eval(t)).collect();
        for (i, (&t, &v)) in ts.iter().zip(&values).enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NotQuasiconcave { at: t });
            }
            if i > 0 {
                let (pt, pv) = (ts[i - 1], values[i - 1]);
                if v < pv * (1.0 - slack) {
                    return Err(Error::NotQuasiconcave { at: t });
                }
                if v / t > (pv / pt) * (1.0 + slack) {
                    return Err(Error::NotQuasiconcave { at: t });
                }
            }
        }
        Ok(())
    }

    fn check_concave(&self) -> bool {
        let slack = self.slack();
        let ts = self.probe_points();
        let values: Vec<f64> = ts.iter().map(|&t| self.eval(t)).collect();
        ts.windows(3).zip(values.windows(3)).all(|(t, v)| {
            let chord = ((t[2] - t[1]) * v[0] + (t[1] - t[0]) * v[2]) / (t[2] - t[0]);
            v[1] >= chord - slack * v[1].abs().max(chord.abs())
        })
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKind::Power { alpha } => write!(f, "power:{alpha}"),
            WeightKind::LogType { beta, gamma } => write!(f, "logtype:{beta},{gamma}"),
            WeightKind::MaxOne => f.write_str("maxone"),
            WeightKind::MinOne => f.write_str("minone"),
            WeightKind::ReciprocalLog => f.write_str("reciprocallog"),
            WeightKind::PiecewiseLinear { vertices } => {
                f.write_str("pwl:")?;
                for (i, [t, v]) in vertices.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{t},{v}")?;
                }
                Ok(())
            }
            WeightKind::CesaroRange { phi } => write!(f, "cesarorange:{phi}"),
        }
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

impl FromStr for WeightKind {
    type Err = Error;

    /// `power:0.5`, `logtype:2,0.5`, `maxone`, `minone`, `reciprocallog`,
    /// `pwl:t,v;t,v;…`, `cesarorange:<weight>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = s.split_once(':').unwrap_or((s, ""));
        let numbers = |expected: usize| -> Result<Vec<f64>> {
            let v: Vec<f64> = body.split(',').map(parse_f64).collect::<Result<_>>()?;
            if v.len() == expected {
                Ok(v)
            } else {
                Err(Error::Parse(format!("expected {expected} parameters in {s:?}")))
            }
        };
        let kind = match head {
            "power" => WeightKind::Power { alpha: numbers(1)?[0] },
            "logtype" => {
                let v = numbers(2)?;
                WeightKind::LogType { beta: v[0], gamma: v[1] }
            }
            "maxone" if body.is_empty() => WeightKind::MaxOne,
            "minone" if body.is_empty() => WeightKind::MinOne,
            "reciprocallog" if body.is_empty() => WeightKind::ReciprocalLog,
            "pwl" => {
                let vertices = body
                    .split(';')
                    .map(|pair| match pair.split_once(',') {
                        Some((t, v)) => Ok([parse_f64(t)?, parse_f64(v)?]),
                        None => Err(Error::Parse(format!("expected t,v in {pair:?}"))),
                    })
                    .collect::<Result<_>>()?;
                WeightKind::PiecewiseLinear { vertices }
            }
            "cesarorange" => WeightKind::CesaroRange {
                phi: Box::new(body.parse()?),
            },
            _ => return Err(Error::Parse(format!("unknown weight {s:?}"))),
        };
        Ok(kind)
    }
}

impl FromStr for WeightFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightFunction::new(s.parse()?)
    }
}
