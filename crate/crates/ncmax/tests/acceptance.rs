//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::DMatrix;
use ncmax::examples::{run_example, EXAMPLE_ONE_SUP_RATIO};
use ncmax::suites::{run_suite, Suite};
use ncmax::ReportDocument;
use ncmax_core::ingest::{profile_from_matrix, random_matrix, random_profile};
use ncmax_core::maximal::{ma_operator, ma_point, verify_16_bound};
use ncmax_core::rearrange::cesaro;
use ncmax_core::spaces::{
    cesaro_norm_lpq, norm_l1_cap_linf, norm_l1_plus_linf, norm_lp, norm_lpq, norm_marcinkiewicz, step_norm_lpq,
};
use ncmax_core::{Atom, GeneratorSpec, LogGrid, SpectralProfile, StepFunction, WeightFunction};

struct Gate {
    failures: usize,
}

impl Gate {
    fn record(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        println!("{} [{id:>3}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }

    fn suite(&mut self, id: &str, suite: Suite, trials: u64, extra: impl FnOnce(&ReportDocument) -> (bool, String)) {
        let report = run_suite(suite, trials, 42);
        let (ok, detail) = extra(&report);
        self.record(
            id,
            suite.name(),
            report.passed && ok,
            format!(
                "{} trials, {} violations, extremal ratio {:.12}, {} ms{detail}",
                report.trials,
                report.violations.len(),
                report.extremal_ratio,
                report.runtime_millis
            ),
        );
    }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

fn worked_example() -> (bool, String) {
    let p = SpectralProfile::new([(3.0, 1.0), (1.0, 1.0)]).unwrap();
    let ma = |x: f64| ma_point(&p, x).unwrap().value;
    let op = ma_operator(&p);
    let c = cesaro(&p.mu()).unwrap().eval(1.5);
    let bound = verify_16_bound(&p);
    let checks = [
        close(ma(3.0), 3.0, 1e-12),
        close(ma(1.0), 2.0, 1e-12),
        close(ma(0.0), 2.0, 1e-12),
        op.atoms().len() == 2
            && close(op.atoms()[0].value, 3.0, 1e-12)
            && close(op.atoms()[1].value, 2.0, 1e-12)
            && op.atoms().iter().all(|a| a.weight == 1.0),
        close(c, 7.0 / 3.0, 1e-12),
        close(bound.worst_ratio, 1.0, 1e-12) && close(bound.witness_t, 2.0, 1e-12),
    ];
    (
        checks.iter().all(|&b| b),
        format!(
            "MA(3)={}, MA(1)={}, MA(0)={}, MA(|A|)={:?}, Cμ(1.5)={c}, bound ratio {} at t={}⁻",
            ma(3.0),
            ma(1.0),
            ma(0.0),
            op.atoms().iter().map(|a| (a.value, a.weight)).collect::<Vec<_>>(),
            bound.worst_ratio,
            bound.witness_t
        ),
    )
}

fn svd_oracle() -> (bool, String) {
    let spec = GeneratorSpec::default();
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let m = random_matrix(&spec, i, 8, 8);
        let a = DMatrix::from_row_slice(8, 8, m.entries());
        let mut oracle: Vec<f64> = (a.transpose() * &a)
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .map(|l| l.max(0.0).sqrt())
            .collect();
        oracle.sort_by(|x, y| y.total_cmp(x));
        let ours: Vec<f64> = profile_from_matrix(&m, 1e-12)
            .unwrap()
            .atoms()
            .iter()
            .flat_map(|a: &Atom| std::iter::repeat_n(a.value, a.weight.round() as usize))
            .collect();
        if ours.len() != oracle.len() {
            return (false, format!("matrix {i}: rank {} vs {}", ours.len(), oracle.len()));
        }
        for (x, y) in ours.iter().zip(&oracle) {
            worst = worst.max((x - y).abs() / y);
        }
    }
    (worst <= 1e-9, format!("100 random 8×8, worst relative deviation {worst:.3e}"))
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

fn hardy_family() -> (bool, String) {
    let alpha = 0.49f64;
    let closed = (2.0 / (1.0 - alpha)).sqrt();
    let f = truncated_power(alpha, 1e-200, 1.02);
    let ratio =
        cesaro_norm_lpq(&cesaro(&f).unwrap(), 2.0, 2.0).unwrap() / step_norm_lpq(&f, 2.0, 2.0).unwrap();
    (
        ratio >= 1.9 && (ratio - closed).abs() < 5e-3,
        format!("truncated t^(-0.49): ratio {ratio:.6}, closed form √(2/(1-α)) = {closed:.6}"),
    )
}

fn norm_identities() -> (bool, String) {
    let spec = GeneratorSpec::default();
    let (mut lpq_dev, mut plus_dev, mut cap_dev): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..100 {
        let p = random_profile(&spec, i);
        for e in [1.0, 1.5, 2.0, 3.0, 7.0] {
            let a = norm_lpq(&p, e, e).unwrap().value;
            let b = norm_lp(&p, e).unwrap().value;
            lpq_dev = lpq_dev.max((a - b).abs() / b);
        }
        let plus = norm_l1_plus_linf(&p).value;
        let m_min = norm_marcinkiewicz(&p, &WeightFunction::min_one()).unwrap().value;
        plus_dev = plus_dev.max((m_min - plus).abs() / plus);
        let cap = norm_l1_cap_linf(&p).value;
        let m_max = norm_marcinkiewicz(&p, &WeightFunction::max_one()).unwrap().value;
        cap_dev = cap_dev.max((m_max - cap).abs() / cap);
    }
    (
        lpq_dev <= 1e-9 && plus_dev <= 1e-9 && cap_dev <= 1e-9,
        format!(
            "100 profiles: |L_pp - L_p| {lpq_dev:.1e}, |M_(t/max(1,t)) - (L1+L∞)| {plus_dev:.1e}, \
             |M_max(1,t) - (L1∩L∞)| {cap_dev:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut gate = Gate { failures: 0 };

    gate.suite("1", Suite::Theorem16, 10_000, |r| {
        let ok = (1.0..=16.0).contains(&r.extremal_ratio) && r.runtime_millis < 60_000;
        (ok, String::from(", ratio within [1, 16], under 60 s"))
    });
    gate.suite("2", Suite::LinfContraction, 1_000, |r| {
        (r.extremal_ratio <= 1.0 + 1e-12, String::from(", max-atom ratio ≤ 1 + 1e-12"))
    });
    gate.suite("3", Suite::WeakType, 1_000, |r| {
        (r.extremal_ratio <= 16.0 * (1.0 + 1e-9), String::from(", sup t·μ / ‖A‖₁ ≤ 16"))
    });
    gate.suite("4a", Suite::Decomposition, 1_000, |_| (true, String::from(", 16 probes per trial")));
    gate.suite("4b", Suite::Sublinearity, 1_000, |_| (true, String::from(", 16 probes per trial")));

    let (ok, detail) = worked_example();
    gate.record("5", "worked example {(3,1),(1,1)}", ok, detail);

    gate.suite("6a", Suite::OracleMa, 1_000, |_| {
        (true, String::from(", 10⁴-radius grid never exceeds the exact value"))
    });
    gate.suite("6b", Suite::OracleMu, 10_000, |r| {
        (r.extremal_ratio == 0.0, String::from(", exact equality"))
    });
    let (ok, detail) = svd_oracle();
    gate.record("6c", "singular values vs eigenvalues of AᵀA", ok, detail);

    gate.suite("7", Suite::TriangleSvf, 1_000, |_| (true, String::from(", symmetric 8×8 pairs")));

    gate.suite("8a", Suite::HardyConstants, 1_000, |r| {
        let consts: Vec<String> = r.constants.iter().map(|(k, v)| format!("{k}={v:.6}")).collect();
        (r.extremal_ratio <= 2.0 + 1e-9, format!(", ‖Cμ‖₂/‖μ‖₂ ≤ 2; {}", consts.join(", ")))
    });
    let (ok, detail) = hardy_family();
    gate.record("8b", "near-extremal Hardy family", ok, detail);

    let grid = LogGrid::default();
    let one = run_example(1, &grid).unwrap();
    gate.record(
        "9",
        "example 1 (Lorentz range)",
        one.passed,
        format!(
            "supRatio {:.12} at t={:.6e} (pinned {EXAMPLE_ONE_SUP_RATIO}, 1% margin), infRatio {:.12} at t={}",
            one.constants["supRatio"], one.constants["supRatioT"], one.constants["infRatio"], one.constants["infRatioT"]
        ),
    );
    let two = run_example(2, &grid).unwrap();
    gate.record(
        "10",
        "example 2 (Marcinkiewicz range)",
        two.passed,
        format!(
            "max relative error {:.2e}, ψ(2)={:.12}, c1={:.12} at t={:.4}, c2={:.12} within [{}, {}]",
            two.constants["maxRelativeError"],
            two.constants["psiAt2"],
            two.constants["c1"],
            two.constants["c1T"],
            two.constants["c2"],
            two.constants["pinnedC1"],
            two.constants["pinnedC2"]
        ),
    );

    let (ok, detail) = norm_identities();
    gate.record("11a", "norm identities", ok, detail);
    gate.suite("11b", Suite::NormsTriangle, 1_000, |_| (true, String::from(", ten norms, matrix-level sums")));

    println!(
        "{} failure(s), {:.1} s total",
        gate.failures,
        started.elapsed().as_secs_f64()
    );
    if gate.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
