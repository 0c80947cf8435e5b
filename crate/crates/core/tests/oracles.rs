//! Cross-checks against independent computations.

use nalgebra::DMatrix;
use ncmax_core::ingest::{
    profile_from_matrix, profile_from_stepfn, random_matrix, random_profile, random_symmetric_matrix, GeneratorSpec,
};
use ncmax_core::rearrange::cesaro;
use ncmax_core::spaces::{
    cesaro_norm_lpq, lorentz_range_condition, phi_floor_condition, psi_from_phi_inv, step_norm_lpq,
};
use ncmax_core::{DenseMatrix, LogGrid, StepFunction, WeightFunction};

fn to_nalgebra(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

/// Singular values from the eigenvalues of AᵀA, decreasing.
fn gram_oracle(m: &DenseMatrix) -> Vec<f64> {
    let a = to_nalgebra(m);
    let gram = a.transpose() * &a;
    let mut s: Vec<f64> = gram.symmetric_eigen().eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn expanded(m: &DenseMatrix) -> Vec<f64> {
    let p = profile_from_matrix(m, 1e-12).unwrap();
    let mut out = Vec::new();
    for a in p.atoms() {
        for _ in 0..a.weight.round() as usize {
            out.push(a.value);
        }
    }
    out
}

#[test]
fn singular_values_match_gram_eigenvalues() {
    let spec = GeneratorSpec::default();
    for i in 0..100 {
        let m = random_matrix(&spec, i, 8, 8);
        let ours = expanded(&m);
        let oracle = gram_oracle(&m);
        assert_eq!(ours.len(), 8);
        for (a, b) in ours.iter().zip(&oracle) {
            assert!((a - b).abs() <= 1e-9 * b, "matrix {i}: {a} vs {b}");
        }
    }
}

#[test]
fn rectangular_singular_values() {
    let spec = GeneratorSpec::default();
    for i in 0..20 {
        for (r, c) in [(5, 9), (9, 5)] {
            let m = random_matrix(&spec, i, r, c);
            let ours = expanded(&m);
            let oracle = gram_oracle(&m);
            for (a, b) in ours.iter().zip(&oracle) {
                assert!((a - b).abs() <= 1e-9 * oracle[0]);
            }
        }
    }
}

#[test]
fn unitary_stability() {
    let spec = GeneratorSpec::default();
    for i in 0..50 {
        let m = random_matrix(&spec, i, 8, 8);
        let perm = [3, 1, 7, 0, 5, 2, 6, 4];
        let a = expanded(&m);
        let b = expanded(&m.permute_rows(&perm).unwrap());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-9 * x);
        }
    }
}

#[test]
fn singular_value_triangle_inequality() {
    let spec = GeneratorSpec::default();
    let grid: Vec<f64> = (0..=16).map(|k| 0.5 * k as f64).chain([0.3, 2.7, 5.1]).collect();
    for i in 0..1000 {
        let a = random_symmetric_matrix(&spec, 2 * i, 8);
        let b = random_symmetric_matrix(&spec, 2 * i + 1, 8);
        let (ma, mb) = (
            profile_from_matrix(&a, 1e-12).unwrap().mu(),
            profile_from_matrix(&b, 1e-12).unwrap().mu(),
        );
        let mab = profile_from_matrix(&a.add(&b).unwrap(), 1e-12).unwrap().mu();
        for &t in &grid {
            for &s in &grid {
                let lhs = mab.eval(t + s);
                let rhs = ma.eval(t) + mb.eval(s);
                assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-12, "pair {i}, t={t}, s={s}: {lhs} > {rhs}");
            }
        }
    }
}

#[test]
fn stepfn_profile_is_the_sorted_rearrangement() {
    let spec = GeneratorSpec::default();
    for i in 0..200 {
        // reuse generated atoms as the pieces of a step function on ℝ₊
        let pieces: Vec<(f64, f64)> = random_profile(&spec, i).atoms().iter().map(|a| (a.value, a.weight)).collect();
        let mut breaks = Vec::new();
        let mut values = Vec::new();
        let mut t = 0.0;
        for (k, &(v, len)) in pieces.iter().enumerate() {
            t += len;
            breaks.push(t);
            values.push(if k % 3 == 1 { -v } else { v });
        }
        let f = StepFunction::new(breaks, values).unwrap();
        let p = profile_from_stepfn(&f);
        let support: f64 = pieces.iter().map(|x| x.1).sum();
        assert!((p.total_weight() - support).abs() <= 1e-12 * support);

        let mut sorted = pieces.clone();
        sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mu = p.mu();
        let mut w = 0.0;
        for (v, len) in sorted {
            assert_eq!(mu.eval(w + 0.5 * len), v);
            w += len;
        }
    }
}

/// `Li₂(x)` for `x ≤ 0` by its power series, using the inversion formula
/// below -1.
fn dilog_negative(x: f64) -> f64 {
    assert!(x <= 0.0);
    if x < -1.0 {
        let l = (-x).ln();
        return -std::f64::consts::PI.powi(2) / 6.0 - 0.5 * l * l - dilog_negative(1.0 / x);
    }
    // alternating series; average two partial sums to accelerate near -1
    let (mut sum, mut term_pow) = (0.0, 1.0);
    let mut prev = 0.0;
    for k in 1..2_000_000u64 {
        term_pow *= x;
        prev = sum;
        sum += term_pow / (k * k) as f64;
        if term_pow.abs() / ((k * k) as f64) < 1e-18 {
            break;
        }
    }
    0.5 * (sum + prev)
}

/// Pinned supremum of the range ratio for the Lorentz pair of the first
/// example over the default grid.
const EXAMPLE_ONE_SUP_RATIO: f64 = 2.129_106_744_526_329;

#[test]
fn lorentz_range_matches_dilogarithm() {
    // ∫_t^∞ ln(1+1/s)/s ds = -Li₂(-1/t), and φ(t)/t = ln²(1 + t^{-1/2}).
    let grid = LogGrid::default();
    let oracle = grid
        .points()
        .into_iter()
        .map(|t| (-dilog_negative(-1.0 / t) / (1.0 + t.powf(-0.5)).ln().powi(2), t))
        .fold((0.0, 0.0), |a, b| if b.0 > a.0 { b } else { a });
    assert!((oracle.0 - EXAMPLE_ONE_SUP_RATIO).abs() <= 1e-9 * EXAMPLE_ONE_SUP_RATIO);

    let psi = WeightFunction::log_type(1.0, 1.0).unwrap();
    let phi = WeightFunction::log_type(2.0, 0.5).unwrap();
    let ours = lorentz_range_condition(&psi, &phi, &grid).unwrap();
    assert!((ours.ratio - oracle.0).abs() <= 1e-8 * oracle.0, "{} vs {}", ours.ratio, oracle.0);
    assert_eq!(ours.witness_t, oracle.1);

    for t in [1e-6, 1e-3, 0.5, 1.0, 7.0, 1e4, 1e6] {
        let exact = -dilog_negative(-1.0 / t);
        let tail = psi.tail_integral(t).unwrap();
        assert!((tail - exact).abs() <= 1e-9 * exact, "t={t}: {tail} vs {exact}");
    }
}

#[test]
fn phi_floor_of_first_example() {
    let phi = WeightFunction::log_type(2.0, 0.5).unwrap();
    let r = phi_floor_condition(&phi, &LogGrid::default());
    // the ratio ln²(1+t^{-1/2}) / ln(1+1/t) is smallest at t = 1
    assert!((r.ratio - std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(r.witness_t, 1.0);
}

#[test]
fn logtype_reciprocal_integral_by_substitution() {
    // ∫₀ᵗ ds / (s ln²(1 + s^{-1/2})): with s = e^{-2y} and t = e^{-2y₀} this
    // is ∫_{y₀}^∞ 2 dy / ln²(1 + e^{y}), summed here with a plain midpoint rule
    let phi = WeightFunction::log_type(2.0, 0.5).unwrap();
    for t in [1e-8f64, 1e-3, 0.2, 1.0, 30.0] {
        let y0 = -0.5 * t.ln();
        let (h, mut y, mut sum) = (1e-4, y0, 0.0);
        while y < 400.0 {
            let m = y + 0.5 * h;
            let l = (1.0 + m.exp()).ln();
            sum += 2.0 * h / (l * l);
            y += h;
        }
        // tail beyond 400: ln(1+e^y) ≈ y
        sum += 2.0 / 400.0;
        let ours = phi.reciprocal_integral(t).unwrap();
        assert!((ours - sum).abs() <= 1e-7 * sum, "t={t}: {ours} vs {sum}");
    }
}

#[test]
fn second_example_closed_form() {
    let psi = psi_from_phi_inv(&WeightFunction::max_one()).unwrap();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for t in LogGrid::default().points() {
        let expect = if t <= 1.0 { 1.0 } else { t / (1.0 + t.ln()) };
        assert!((psi.eval(t) - expect).abs() <= 1e-8 * expect);
        let r = psi.eval(t) * t.ln_1p() / t;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    assert!((lo - 0.648_516_000_190_386).abs() < 1e-12);
    assert!(hi < 1.0 && hi > 0.999_999);
}

/// Cell averages of `t^{-α}` on a geometric mesh of `[δ, 1]`, constant on `[0, δ)`.
fn truncated_power(alpha: f64, delta: f64, ratio: f64) -> StepFunction {
    let avg = |a: f64, b: f64| (b.powf(1.0 - alpha) - a.powf(1.0 - alpha)) / ((1.0 - alpha) * (b - a));
    let mut breaks = vec![delta];
    let mut values = vec![delta.powf(-alpha) / (1.0 - alpha)];
    let mut a = delta;
    while a < 1.0 {
        let b = (a * ratio).min(1.0);
        breaks.push(b);
        values.push(avg(a, b));
        a = b;
    }
    StepFunction::new(breaks, values).unwrap()
}

#[test]
fn hardy_near_extremal_family() {
    // For f = t^{-α} on (0, 1]: ‖f‖₂² = 1/(1-2α), Cf = f/(1-α) on (0, 1] and
    // 1/((1-α)t) beyond, so ‖Cf‖₂/‖f‖₂ = √(2/(1-α)).
    let alpha: f64 = 0.49;
    let closed = (2.0 / (1.0 - alpha)).sqrt();
    let f = truncated_power(alpha, 1e-200, 1.02);
    let num = cesaro_norm_lpq(&cesaro(&f).unwrap(), 2.0, 2.0).unwrap();
    let den = step_norm_lpq(&f, 2.0, 2.0).unwrap();
    let ratio = num / den;
    assert!(ratio >= 1.9 && ratio <= 2.0, "{ratio}");
    assert!((ratio - closed).abs() < 5e-3, "{ratio} vs {closed}");
}

#[test]
fn cesaro_norm_against_quadrature() {
    let spec = GeneratorSpec {
        max_atoms: 8,
        ..GeneratorSpec::default()
    };
    for i in 0..20 {
        let f = random_profile(&spec, i).mu();
        let c = cesaro(&f).unwrap();
        // ∫ (Cf)² on [0, T] by composite Simpson on each piece, tail in closed form
        let mut sum = 0.0;
        let mut left = 0.0;
        for &right in f.breakpoints() {
            let n = 20_000;
            let h = (right - left) / n as f64;
            let sq = |t: f64| c.eval(t).powi(2);
            for j in 0..n {
                let a = left + j as f64 * h;
                sum += h / 6.0 * (sq(a) + 4.0 * sq(a + 0.5 * h) + sq(a + h));
            }
            left = right;
        }
        let tail = c.tail_coefficient();
        sum += tail * tail / left;
        let ours = cesaro_norm_lpq(&c, 2.0, 2.0).unwrap();
        assert!((ours - sum.sqrt()).abs() <= 1e-6 * ours, "{ours} vs {}", sum.sqrt());
    }
}
