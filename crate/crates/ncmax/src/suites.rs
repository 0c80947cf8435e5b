//! Randomized verification suites.
//!
//! Every trial is a pure function of `(seed, trial index)`. Trials run in
//! parallel and are collected in index order, so reports do not depend on
//! the thread count.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use ncmax_core::ingest::{
    profile_from_matrix, random_matrix, random_profile, random_symmetric_matrix, DEFAULT_SVD_TOLERANCE,
};
use ncmax_core::maximal::{linf_ratio, ma_grid_oracle, ma_operator, ma_point, verify_16_bound, weak_type_ratio, window_average, THEOREM_CONSTANT};
use ncmax_core::rearrange::cesaro;
use ncmax_core::spaces::{cesaro_norm_lpq, norm, step_norm_lpq, NormSpace, WeightFunction};
use ncmax_core::{DenseMatrix, GeneratorSpec, SpectralProfile};

use crate::report::{ReportDocument, Violation, SCHEMA};
use crate::{Error, Result};

/// Relative slack for inequalities between independently rounded sides.
pub const SLACK: f64 = 1e-9;
/// Slack for comparisons that should hold to rounding only.
pub const TIGHT_SLACK: f64 = 1e-12;
/// Probe points per trial in the decomposition and sublinearity suites.
pub const PROBES: usize = 16;
/// Radii in the brute-force maximal-function oracle.
pub const ORACLE_GRID: usize = 10_000;
/// Dimension of the random matrices.
pub const MATRIX_DIM: usize = 8;
/// `(p, q)` pairs of the Hardy suite.
pub const HARDY_EXPONENTS: [(f64, f64); 3] = [(2.0, 2.0), (2.0, 1.0), (1.5, 3.0)];

pub const SUITES: [&str; 10] = [
    "theorem-16",
    "decomposition",
    "sublinearity",
    "triangle-svf",
    "weak-type",
    "linf-contraction",
    "hardy-constants",
    "norms-triangle",
    "oracle-ma",
    "oracle-mu",
];

const PROBE_SALT: u64 = 0x7072_6f62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Theorem16,
    Decomposition,
    Sublinearity,
    TriangleSvf,
    WeakType,
    LinfContraction,
    HardyConstants,
    NormsTriangle,
    OracleMa,
    OracleMu,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem-16" => Suite::Theorem16,
            "decomposition" => Suite::Decomposition,
            "sublinearity" => Suite::Sublinearity,
            "triangle-svf" => Suite::TriangleSvf,
            "weak-type" => Suite::WeakType,
            "linf-contraction" => Suite::LinfContraction,
            "hardy-constants" => Suite::HardyConstants,
            "norms-triangle" => Suite::NormsTriangle,
            "oracle-ma" => Suite::OracleMa,
            "oracle-mu" => Suite::OracleMu,
            _ => {
                return Err(Error::Usage(format!(
                    "unknown suite {s:?}; expected one of {}",
                    SUITES.join(", ")
                )))
            }
        })
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        SUITES[self as usize]
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone, Default)]
struct Trial {
    ratio: f64,
    violation: Option<(Value, f64, f64)>,
    constants: Vec<(String, f64)>,
}

impl Trial {
    fn check(&mut self, lhs: f64, rhs: f64, slack: f64, witness: impl FnOnce() -> Value) {
        if !(lhs <= rhs + slack * lhs.abs().max(rhs.abs())) && self.violation.is_none() {
            self.violation = Some((witness(), lhs, rhs));
        }
    }
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else if lhs > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

fn profile_json(p: &SpectralProfile) -> Value {
    serde_json::to_value(p).expect("profiles serialize")
}

fn matrix_json(m: &DenseMatrix) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn matrix_profile(m: &DenseMatrix) -> SpectralProfile {
    profile_from_matrix(m, DEFAULT_SVD_TOLERANCE).expect("random matrices are well conditioned for Jacobi")
}

struct Runner {
    suite: Suite,
    spec: GeneratorSpec,
}

impl Runner {
    fn profile(&self, index: u64) -> SpectralProfile {
        random_profile(&self.spec, index)
    }

    fn matrix_pair(&self, index: u64, symmetric: bool) -> (DenseMatrix, DenseMatrix) {
        if symmetric {
            (
                random_symmetric_matrix(&self.spec, 2 * index, MATRIX_DIM),
                random_symmetric_matrix(&self.spec, 2 * index + 1, MATRIX_DIM),
            )
        } else {
            (
                random_matrix(&self.spec, 2 * index, MATRIX_DIM, MATRIX_DIM),
                random_matrix(&self.spec, 2 * index + 1, MATRIX_DIM, MATRIX_DIM),
            )
        }
    }

    /// The input of a trial, as embedded in reports.
    fn witness(&self, index: u64) -> Value {
        match self.suite {
            Suite::TriangleSvf | Suite::NormsTriangle => {
                let (a, b) = self.matrix_pair(index, self.suite == Suite::TriangleSvf);
                json!({ "a": matrix_json(&a), "b": matrix_json(&b) })
            }
            Suite::HardyConstants => json!({ "profile": profile_json(&self.profile(index)), "step": "mu" }),
            _ => json!({ "profile": profile_json(&self.profile(index)) }),
        }
    }

    fn trial(&self, index: u64) -> Trial {
        match self.suite {
            Suite::Theorem16 => self.theorem_16(index),
            Suite::Decomposition => self.decomposition(index),
            Suite::Sublinearity => self.sublinearity(index),
            Suite::TriangleSvf => self.triangle_svf(index),
            Suite::WeakType => self.weak_type(index),
            Suite::LinfContraction => self.linf_contraction(index),
            Suite::HardyConstants => self.hardy(index),
            Suite::NormsTriangle => self.norms_triangle(index),
            Suite::OracleMa => self.oracle_ma(index),
            Suite::OracleMu => self.oracle_mu(index),
        }
    }

    fn theorem_16(&self, index: u64) -> Trial {
        let p = self.profile(index);
        let check = verify_16_bound(&p);
        let mut trial = Trial {
            ratio: check.worst_ratio,
            ..Trial::default()
        };
        if !check.holds {
            let t = check.witness_t;
            let lhs = ma_operator(&p).mu().eval_left(t);
            let rhs = THEOREM_CONSTANT * cesaro(&p.mu()).expect("μ is nonnegative").eval(t);
            trial.violation = Some((json!({ "profile": profile_json(&p), "t": t }), lhs, rhs));
        }
        trial
    }

    /// `‖head‖₁ + t‖tail‖∞ ≤ 2t·Cμ(t)` for the split at `v = μ(t)`.
    fn decomposition(&self, index: u64) -> Trial {
        let p = self.profile(index);
        let mu = p.mu();
        let curve = cesaro(&mu).expect("μ is nonnegative");
        let total = p.total_weight();
        let mut rng = self.spec.rng(index, PROBE_SALT);
        let mut trial = Trial::default();
        for k in 0..PROBES {
            // half of the probes sit on breakpoints, where the split changes
            let t = if k % 2 == 0 && !mu.is_empty() {
                mu.breakpoints()[rng.gen_range(0..mu.len())]
            } else {
                log_uniform(&mut rng, 1e-3 * total, 2.0 * total)
            };
            let (head, tail) = p.split_at_value(mu.eval(t));
            let lhs = head.l1_norm() + t * tail.max_value();
            let rhs = 2.0 * t * curve.eval(t);
            trial.ratio = trial.ratio.max(ratio(lhs, rhs));
            trial.check(lhs, rhs, SLACK, || json!({ "profile": profile_json(&p), "t": t }));
        }
        trial
    }

    /// `MA(x) ≤ MA_head(x) + MA_tail(x)` for a split at an atom value.
    fn sublinearity(&self, index: u64) -> Trial {
        let p = self.profile(index);
        let mut rng = self.spec.rng(index, PROBE_SALT);
        let atoms = p.atoms();
        let v = atoms[rng.gen_range(0..atoms.len())].value;
        let (head, tail) = p.split_at_value(v);
        let mut trial = Trial::default();
        for k in 0..PROBES {
            let x = if k % 2 == 0 {
                atoms[rng.gen_range(0..atoms.len())].value
            } else {
                rng.gen_range(0.0..1.5 * p.max_value())
            };
            let lhs = ma_point(&p, x).expect("x ≥ 0").value;
            let rhs = ma_point(&head, x).expect("x ≥ 0").value + ma_point(&tail, x).expect("x ≥ 0").value;
            trial.ratio = trial.ratio.max(ratio(lhs, rhs));
            trial.check(lhs, rhs, SLACK, || json!({ "profile": profile_json(&p), "split": v, "x": x }));
        }
        trial
    }

    /// `μ(t+s, A+B) ≤ μ(t, A) + μ(s, B)` on a grid of `(t, s)`.
    fn triangle_svf(&self, index: u64) -> Trial {
        let (a, b) = self.matrix_pair(index, true);
        let sum = a.add(&b).expect("same shape");
        let (ma, mb, mab) = (matrix_profile(&a).mu(), matrix_profile(&b).mu(), matrix_profile(&sum).mu());
        let grid: Vec<f64> = (0..=2 * MATRIX_DIM).map(|k| 0.5 * k as f64).chain([0.3, 2.7, 5.1]).collect();
        let mut trial = Trial::default();
        for &t in &grid {
            for &s in &grid {
                let lhs = mab.eval(t + s);
                let rhs = ma.eval(t) + mb.eval(s);
                trial.ratio = trial.ratio.max(ratio(lhs, rhs));
                trial.check(lhs, rhs, SLACK, || {
                    json!({ "a": matrix_json(&a), "b": matrix_json(&b), "t": t, "s": s })
                });
            }
        }
        trial
    }

    fn weak_type(&self, index: u64) -> Trial {
        let p = self.profile(index);
        let (r, t) = weak_type_ratio(&p);
        let mut trial = Trial {
            ratio: r,
            ..Trial::default()
        };
        trial.check(r, THEOREM_CONSTANT, SLACK, || json!({ "profile": profile_json(&p), "t": t }));
        trial
    }

    fn linf_contraction(&self, index: u64) -> Trial {
        let p = self.profile(index);
        let r = linf_ratio(&p);
        let mut trial = Trial {
            ratio: r,
            ..Trial::default()
        };
        trial.check(r, 1.0, TIGHT_SLACK, || json!({ "profile": profile_json(&p) }));
        trial
    }

    /// `‖Cμ‖_{p,q} / ‖μ‖_{p,q}`; for `p = q = 2` the sharp bound is 2.
    fn hardy(&self, index: u64) -> Trial {
        let p = self.profile(index);
        let f = p.mu();
        let curve = cesaro(&f).expect("μ is nonnegative");
        let mut trial = Trial::default();
        for (pp, qq) in HARDY_EXPONENTS {
            let num = cesaro_norm_lpq(&curve, pp, qq).expect("valid exponents");
            let den = step_norm_lpq(&f, pp, qq).expect("valid exponents");
            let r = ratio(num, den);
            trial.constants.push((format!("hardyRatio_p{pp}_q{qq}"), r));
            if !r.is_finite() && trial.violation.is_none() {
                trial.violation = Some((json!({ "profile": profile_json(&p), "p": pp, "q": qq }), num, den));
            }
            if pp == 2.0 && qq == 2.0 {
                trial.ratio = r;
                trial.check(r, 2.0, SLACK, || json!({ "profile": profile_json(&p), "p": pp, "q": qq }));
            }
        }
        trial
    }

    /// `‖A+B‖ ≤ ‖A‖ + ‖B‖` for norms with the sum formed at the matrix level.
    fn norms_triangle(&self, index: u64) -> Trial {
        let (a, b) = self.matrix_pair(index, false);
        let sum = a.add(&b).expect("same shape");
        let (pa, pb, pab) = (matrix_profile(&a), matrix_profile(&b), matrix_profile(&sum));
        let mut trial = Trial::default();
        for space in norm_spaces() {
            let value = |p: &SpectralProfile| norm(p, &space).expect("norm of a valid profile").value;
            let lhs = value(&pab);
            let rhs = value(&pa) + value(&pb);
            trial.ratio = trial.ratio.max(ratio(lhs, rhs));
            trial.check(lhs, rhs, SLACK, || {
                json!({ "a": matrix_json(&a), "b": matrix_json(&b), "space": space.to_string() })
            });
        }
        trial
    }

    /// Exact `MA(x)` against a grid of radii (never above the exact value)
    /// and against a plain scan over every candidate radius (equal).
    fn oracle_ma(&self, index: u64) -> Trial {
        let p = self.profile(index);
        let mut rng = self.spec.rng(index, PROBE_SALT);
        let atoms = p.atoms();
        let x = if rng.gen_bool(0.5) {
            atoms[rng.gen_range(0..atoms.len())].value
        } else {
            rng.gen_range(0.0..1.2 * p.max_value())
        };
        let exact = ma_point(&p, x).expect("x ≥ 0").value;
        let grid = ma_grid_oracle(&p, x, ORACLE_GRID).expect("grid size ≥ 10");
        let scan = atoms
            .iter()
            .map(|a| window_average(&p, x, (a.value - x).abs()))
            .fold(0.0, f64::max);
        let mut trial = Trial {
            ratio: ratio(grid, exact),
            ..Trial::default()
        };
        let witness = || json!({ "profile": profile_json(&p), "x": x });
        trial.check(grid, exact, TIGHT_SLACK, witness);
        trial.check(scan, exact, TIGHT_SLACK, witness);
        trial.check(exact, scan, TIGHT_SLACK, witness);
        trial
    }

    /// `inf{s ≥ 0 : n(s) ≤ t}` against the step function, exactly.
    fn oracle_mu(&self, index: u64) -> Trial {
        let p = self.profile(index);
        let mu = p.mu();
        let mut rng = self.spec.rng(index, PROBE_SALT);
        let t = if rng.gen_bool(0.25) {
            mu.breakpoints()[rng.gen_range(0..mu.len())]
        } else {
            log_uniform(&mut rng, 1e-3 * p.total_weight(), 1.5 * p.total_weight())
        };
        let lhs = p.mu_from_distribution(t).expect("t > 0");
        let rhs = mu.eval(t);
        let mut trial = Trial {
            ratio: (lhs - rhs).abs() / rhs.max(f64::MIN_POSITIVE),
            ..Trial::default()
        };
        if lhs != rhs {
            trial.violation = Some((json!({ "profile": profile_json(&p), "t": t }), lhs, rhs));
        }
        trial
    }
}

/// Norms checked by the `norms-triangle` suite.
pub fn norm_spaces() -> Vec<NormSpace> {
    vec![
        NormSpace::Lp { p: 1.0 },
        NormSpace::Lp { p: 2.0 },
        NormSpace::Lp { p: 3.5 },
        NormSpace::Lpq { p: 2.0, q: 1.0 },
        NormSpace::L1PlusLinf,
        NormSpace::L1CapLinf,
        NormSpace::Lorentz {
            phi: WeightFunction::power(0.5).expect("catalog entry"),
        },
        NormSpace::Lorentz {
            phi: WeightFunction::log_type(2.0, 0.5).expect("catalog entry"),
        },
        NormSpace::Marcinkiewicz {
            psi: WeightFunction::max_one(),
        },
        NormSpace::Marcinkiewicz {
            psi: WeightFunction::min_one(),
        },
    ]
}

/// Runs `trials` trials of a suite.
pub fn run_suite(suite: Suite, trials: u64, seed: u64) -> ReportDocument {
    let started = Instant::now();
    let runner = Runner {
        suite,
        spec: GeneratorSpec::with_seed(seed),
    };
    let outcomes: Vec<Trial> = (0..trials).into_par_iter().map(|i| runner.trial(i)).collect();

    let mut violations = Vec::new();
    let mut extremal: Option<(u64, f64)> = None;
    let mut constants: BTreeMap<String, f64> = BTreeMap::new();
    for (i, trial) in (0u64..).zip(outcomes) {
        if let Some((witness, lhs, rhs)) = trial.violation {
            violations.push(Violation {
                trial_index: i,
                witness,
                lhs,
                rhs,
            });
        }
        if extremal.is_none_or(|(_, r)| trial.ratio > r) {
            extremal = Some((i, trial.ratio));
        }
        for (name, value) in trial.constants {
            let entry = constants.entry(name).or_insert(value);
            *entry = entry.max(value);
        }
    }
    ReportDocument {
        schema: SCHEMA.to_owned(),
        suite: suite.name().to_owned(),
        trials,
        seed,
        passed: violations.is_empty(),
        violations,
        extremal_ratio: extremal.map_or(0.0, |e| e.1),
        extremal_witness: extremal.map(|(i, _)| runner.witness(i)),
        constants,
        runtime_millis: started.elapsed().as_millis() as u64,
    }
}
