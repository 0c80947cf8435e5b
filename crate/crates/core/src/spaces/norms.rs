use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{WeightFunction, WeightKind, QUADRATURE_TOLERANCE};
use crate::math::{ln, powf, sqrt};
use crate::quad::geometric_simpson;
use crate::rearrange::{CesaroCurve, SpectralProfile, StepFunction};
use crate::{Error, Result};

/// Relative tolerance of the golden-section search in `t`.
pub const SEARCH_TOLERANCE: f64 = 1e-10;

/// A symmetric space together with its parameters.
///
/// Written as `lp:p=2`, `lpq:p=2,q=1`, `l1plusinf`, `l1capinf`, `weakl1`,
/// `lorentz:phi=power:0.5`, `marcinkiewicz:psi=maxone`, ….
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpace {
    Lp { p: f64 },
    Lpq { p: f64, q: f64 },
    L1PlusLinf,
    L1CapLinf,
    Lorentz { phi: WeightFunction },
    Marcinkiewicz { psi: WeightFunction },
}

impl fmt::Display for NormSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpace::Lp { p } => write!(f, "lp:p={}", Exponent(*p)),
            NormSpace::Lpq { p, q } => write!(f, "lpq:p={},q={}", Exponent(*p), Exponent(*q)),
            NormSpace::L1PlusLinf => f.write_str("l1plusinf"),
            NormSpace::L1CapLinf => f.write_str("l1capinf"),
            NormSpace::Lorentz { phi } => write!(f, "lorentz:phi={phi}"),
            NormSpace::Marcinkiewicz { psi } => write!(f, "marcinkiewicz:psi={psi}"),
        }
    }
}

struct Exponent(f64);

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn parse_number(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

fn parse_params<'a>(body: &'a str, names: &[&str]) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != names.len() {
        return Err(Error::Parse(format!("expected parameters {names:?} in {body:?}")));
    }
    parts
        .iter()
        .zip(names)
        .map(|(part, name)| match part.split_once('=') {
            Some((k, v)) if k.trim() == *name => Ok(v),
            _ => Err(Error::Parse(format!("expected {name}=… in {body:?}"))),
        })
        .collect()
}

impl FromStr for NormSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = s.split_once(':').unwrap_or((s, ""));
        let space = match head {
            "lp" => {
                let v = parse_params(body, &["p"])?;
                NormSpace::Lp { p: parse_number(v[0])? }
            }
            "lpq" => {
                let v = parse_params(body, &["p", "q"])?;
                NormSpace::Lpq {
                    p: parse_number(v[0])?,
                    q: parse_number(v[1])?,
                }
            }
            "weakl1" if body.is_empty() => NormSpace::Lpq {
                p: 1.0,
                q: f64::INFINITY,
            },
            "l1plusinf" if body.is_empty() => NormSpace::L1PlusLinf,
            "l1capinf" if body.is_empty() => NormSpace::L1CapLinf,
            "lorentz" => match body.split_once('=') {
                Some(("phi", w)) => NormSpace::Lorentz { phi: w.parse()? },
                _ => return Err(Error::Parse(format!("expected lorentz:phi=… in {s:?}"))),
            },
            "marcinkiewicz" => match body.split_once('=') {
                Some(("psi", w)) => NormSpace::Marcinkiewicz { psi: w.parse()? },
                _ => return Err(Error::Parse(format!("expected marcinkiewicz:psi=… in {s:?}"))),
            },
            _ => return Err(Error::Parse(format!("unknown space {s:?}"))),
        };
        space.validate()?;
        Ok(space)
    }
}

impl NormSpace {
    fn validate(&self) -> Result<()> {
        match self {
            NormSpace::Lp { p } => check_lp_exponent(*p),
            NormSpace::Lpq { p, q } => check_lpq_exponents(*p, *q),
            _ => Ok(()),
        }
    }
}

impl Serialize for NormSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NormSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// How a norm value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Method {
    Exact,
    Quadrature { tolerance: f64 },
    /// Golden-section search in `t`.
    Search { tolerance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum NormWarning {
    /// Lorentz weight is quasiconcave but not concave; the functional may
    /// fail the triangle inequality.
    NonConcaveWeight,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NormResult {
    pub value: f64,
    pub space: NormSpace,
    /// `t` attaining a Marcinkiewicz supremum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximizer_t: Option<f64>,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<NormWarning>,
}

impl NormResult {
    fn exact(value: f64, space: NormSpace) -> Self {
        NormResult {
            value,
            space,
            maximizer_t: None,
            method: Method::Exact,
            warnings: Vec::new(),
        }
    }
}

/// Dispatches on the space.
pub fn norm(p: &SpectralProfile, space: &NormSpace) -> Result<NormResult> {
    match space {
        NormSpace::Lp { p: e } => norm_lp(p, *e),
        NormSpace::Lpq { p: e, q } => norm_lpq(p, *e, *q),
        NormSpace::L1PlusLinf => Ok(norm_l1_plus_linf(p)),
        NormSpace::L1CapLinf => Ok(norm_l1_cap_linf(p)),
        NormSpace::Lorentz { phi } => norm_lorentz(p, phi),
        NormSpace::Marcinkiewicz { psi } => norm_marcinkiewicz(p, psi),
    }
}

fn check_lp_exponent(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { name: "exponent p", value: p })
    }
}

fn check_lpq_exponents(p: f64, q: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Domain { name: "exponent p", value: p });
    }
    if !(q >= 1.0) {
        return Err(Error::Domain { name: "exponent q", value: q });
    }
    Ok(())
}

/// `(Σ λᵢ^p wᵢ)^{1/p}`; `p = ∞` gives the largest value.
pub fn norm_lp(p: &SpectralProfile, exponent: f64) -> Result<NormResult> {
    check_lp_exponent(exponent)?;
    let space = NormSpace::Lp { p: exponent };
    let top = p.max_value();
    let value = if top == 0.0 || exponent == f64::INFINITY {
        top
    } else if exponent == 1.0 {
        p.l1_norm()
    } else {
        let sum: f64 = p.atoms().iter().map(|a| powf(a.value / top, exponent) * a.weight).sum();
        top * if exponent == 2.0 { sqrt(sum) } else { powf(sum, 1.0 / exponent) }
    };
    Ok(NormResult::exact(value, space))
}

/// Lorentz `L_{p,q}` norm `(∫ (t^{1/p} f(t))^q dt/t)^{1/q}` of a nonnegative,
/// nonincreasing step function, in closed form; `q = ∞` gives
/// `sup t^{1/p} f(t)`.
pub fn step_norm_lpq(f: &StepFunction, p: f64, q: f64) -> Result<f64> {
    check_lpq_exponents(p, q)?;
    f.require_decreasing_nonnegative()?;
    let top = f.values().first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0.0);
    }
    if q == f64::INFINITY {
        return Ok(f.pieces().map(|(_, end, v)| powf(end, 1.0 / p) * v).fold(0.0, f64::max));
    }
    let r = q / p;
    let sum: f64 = f
        .pieces()
        .map(|(start, end, v)| powf(v / top, q) * (powf(end, r) - powf(start, r)) / r)
        .sum();
    Ok(top * powf(sum, 1.0 / q))
}

pub fn norm_lpq(p: &SpectralProfile, pp: f64, qq: f64) -> Result<NormResult> {
    let value = step_norm_lpq(&p.mu(), pp, qq)?;
    Ok(NormResult::exact(value, NormSpace::Lpq { p: pp, q: qq }))
}

/// `∫_l^h t^{e-1} dt`.
fn power_integral(l: f64, h: f64, e: f64) -> f64 {
    if e.abs() < 1e-14 {
        ln(h / l)
    } else {
        (powf(h, e) - powf(l, e)) / e
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `L_{p,q}` norm of a Cesàro curve (itself nonincreasing).
///
/// Integer `q` uses the binomial expansion of `(a/t + b)^q` and is exact;
/// other `q` integrate each piece numerically. The hyperbolic tail is finite
/// only for `p > 1`; otherwise the result is `∞`.
pub fn cesaro_norm_lpq(curve: &CesaroCurve, p: f64, q: f64) -> Result<f64> {
    check_lpq_exponents(p, q)?;
    let top = curve.eval(0.0);
    if top == 0.0 {
        return Ok(0.0);
    }
    let tail = curve.tail_coefficient() / top;
    let tail_start = curve.tail_start();
    if q == f64::INFINITY {
        // t^{1/p}(a/t + b) has its only critical point at t = a(p-1)/b.
        let mut best: f64 = 0.0;
        for piece in curve.pieces() {
            let g = |t: f64| powf(t, 1.0 / p) * piece.eval(t);
            best = best.max(g(piece.end));
            if piece.start > 0.0 {
                best = best.max(g(piece.start));
            }
            if piece.a > 0.0 && piece.b > 0.0 {
                let t = piece.a * (p - 1.0) / piece.b;
                if t > piece.start && t < piece.end {
                    best = best.max(g(t));
                }
            }
        }
        // the tail a_∞ t^{1/p - 1} is nonincreasing for p ≥ 1
        return Ok(best);
    }
    if p == 1.0 && tail > 0.0 {
        return Ok(f64::INFINITY);
    }
    let r = q / p;
    let integer_q = q <= 64.0 && q == libm::round(q);
    let mut sum = 0.0;
    for piece in curve.pieces() {
        let (a, b) = (piece.a / top, piece.b / top);
        if piece.start == 0.0 {
            sum += powf(b, q) * powf(piece.end, r) / r;
        } else if integer_q {
            let n = q as u32;
            sum += (0..=n)
                .map(|k| {
                    binomial(n, k)
                        * powf(a, f64::from(k))
                        * powf(b, f64::from(n - k))
                        * power_integral(piece.start, piece.end, r - f64::from(k))
                })
                .sum::<f64>();
        } else {
            let integrand = |t: f64| powf(t, r - 1.0) * powf(a / t + b, q);
            sum += geometric_simpson(integrand, piece.start, piece.end, 1e-12)?;
        }
    }
    if tail > 0.0 {
        sum += powf(tail, q) * powf(tail_start, r - q) / (q - r);
    }
    Ok(top * powf(sum, 1.0 / q))
}

/// `∫₀¹ μ(t) dt`.
pub fn norm_l1_plus_linf(p: &SpectralProfile) -> NormResult {
    NormResult::exact(p.mu().integral(1.0), NormSpace::L1PlusLinf)
}

/// `max(‖·‖₁, ‖·‖∞)`.
pub fn norm_l1_cap_linf(p: &SpectralProfile) -> NormResult {
    NormResult::exact(p.l1_norm().max(p.max_value()), NormSpace::L1CapLinf)
}

/// `∫ μ dφ`, summed as `Σ (μᵢ - μᵢ₊₁) φ(Wᵢ)` over the step representation.
pub fn norm_lorentz(p: &SpectralProfile, phi: &WeightFunction) -> Result<NormResult> {
    if phi.limit_at_zero() != 0.0 {
        return Err(Error::NotVanishingAtZero);
    }
    let mu = p.mu();
    let values = mu.values();
    let value = mu
        .breakpoints()
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let next = values.get(i + 1).copied().unwrap_or(0.0);
            (values[i] - next) * phi.eval(w)
        })
        .sum();
    let method = match phi.kind() {
        WeightKind::CesaroRange { .. } => Method::Quadrature {
            tolerance: QUADRATURE_TOLERANCE,
        },
        _ => Method::Exact,
    };
    let mut warnings = Vec::new();
    if !phi.is_concave() {
        warnings.push(NormWarning::NonConcaveWeight);
    }
    Ok(NormResult {
        value,
        space: NormSpace::Lorentz { phi: phi.clone() },
        maximizer_t: None,
        method,
        warnings,
    })
}

const SCAN_POINTS: usize = 16;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `h` on `[lo, hi]`: a coarse scan (geometric when the interval
/// spans decades) brackets the best sample, golden-section refines it, and
/// both endpoints are always evaluated.
fn maximize(h: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let mut best = (h(hi), hi);
    let at_lo = h(lo);
    if at_lo > best.0 {
        best = (at_lo, lo);
    }
    if hi <= lo {
        return best;
    }
    let geometric = lo > 0.0 && hi / lo > 4.0;
    let sample = |k: usize| -> f64 {
        let f = k as f64 / SCAN_POINTS as f64;
        match k {
            0 => lo,
            k if k == SCAN_POINTS => hi,
            _ if geometric => lo * powf(hi / lo, f),
            _ => lo + (hi - lo) * f,
        }
    };
    let mut j = 0;
    let mut best_sample = at_lo;
    for k in 1..=SCAN_POINTS {
        let v = h(sample(k));
        if v > best_sample {
            best_sample = v;
            j = k;
        }
    }
    let (mut a, mut b) = (sample(j.saturating_sub(1)), sample((j + 1).min(SCAN_POINTS)));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut hc, mut hd) = (h(c), h(d));
    for _ in 0..200 {
        if b - a <= SEARCH_TOLERANCE * (a.abs() + b.abs()) {
            break;
        }
        if hc >= hd {
            b = d;
            d = c;
            hd = hc;
            c = b - INV_PHI * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + INV_PHI * (b - a);
            hd = h(d);
        }
    }
    for (v, t) in [(hc, c), (hd, d), (best_sample, sample(j))] {
        if v > best.0 {
            best = (v, t);
        }
    }
    best
}

/// `sup_{t>0} ψ(t)/t · ∫₀ᵗ μ`.
///
/// On a step `[l, r)` of `μ` the prefix integral is `a + v t`, so the
/// objective is `ψ(t)(a/t + v)`, maximized per step (split at the kinks of
/// `ψ`). Beyond the support it is `(total mass)·ψ(t)/t`, nonincreasing, so
/// the last right endpoint covers it.
pub fn norm_marcinkiewicz(p: &SpectralProfile, psi: &WeightFunction) -> Result<NormResult> {
    let mu = p.mu();
    let prefix = mu.prefix_integrals();
    let kinks = psi.kinks();
    let mut best = (0.0, 0.0);
    for (i, (l, r, v)) in mu.pieces().enumerate() {
        let a = if i == 0 { 0.0 } else { prefix[i - 1] - v * l };
        let h = |t: f64| {
            if t <= 0.0 {
                v * psi.limit_at_zero()
            } else {
                psi.eval(t) * (a / t + v)
            }
        };
        let mut cuts = Vec::with_capacity(kinks.len() + 2);
        cuts.push(l);
        cuts.extend(kinks.iter().copied().filter(|&k| k > l && k < r));
        cuts.push(r);
        for w in cuts.windows(2) {
            let candidate = maximize(&h, w[0], w[1]);
            if candidate.0 > best.0 {
                best = candidate;
            }
        }
    }
    Ok(NormResult {
        value: best.0,
        space: NormSpace::Marcinkiewicz { psi: psi.clone() },
        maximizer_t: Some(best.1),
        method: Method::Search {
            tolerance: SEARCH_TOLERANCE,
        },
        warnings: Vec::new(),
    })
}
