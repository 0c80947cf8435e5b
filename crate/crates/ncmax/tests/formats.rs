use ncmax::io::{matrix_from_csv, matrix_to_csv, parse_input, profile_to_json, read_input, step_to_csv, Input};
use ncmax::report::{ReportDocument, SCHEMA};
use ncmax::suites::{run_suite, Suite};
use ncmax_core::ingest::{random_matrix, random_profile};
use ncmax_core::{GeneratorSpec, StepFunction};

#[test]
fn files_round_trip_byte_stably() {
    let dir = tempfile::TempDir::new().unwrap();
    let spec = GeneratorSpec::default();
    for i in 0..25 {
        let p = random_profile(&spec, i);
        let path = dir.path().join("p.json");
        let text = profile_to_json(&p);
        std::fs::write(&path, &text).unwrap();
        let Input::Profile(back) = read_input(&path).unwrap() else { panic!() };
        assert_eq!(back, p);
        assert_eq!(profile_to_json(&back), text);

        let m = random_matrix(&spec, i, 3, 5);
        let csv = matrix_to_csv(&m);
        assert_eq!(matrix_from_csv(&csv).unwrap(), m);
        assert_eq!(matrix_to_csv(&matrix_from_csv(&csv).unwrap()), csv);

        let f = p.mu();
        let s = step_to_csv(&f);
        let Input::Step(g) = parse_input(&s).unwrap() else { panic!() };
        assert_eq!(g, f);
    }
}

#[test]
fn step_csv_semantics() {
    let Input::Step(f) = parse_input("t,v\n1,3\n2,1\n").unwrap() else { panic!() };
    assert_eq!(f, StepFunction::new(vec![1.0, 2.0], vec![3.0, 1.0]).unwrap());
    assert_eq!(f.eval(5.0), 0.0);
}

#[test]
fn report_schema() {
    let r = run_suite(Suite::WeakType, 10, 1);
    let text = r.to_json();
    let back: ReportDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.schema, SCHEMA);
    for key in ["suite", "trials", "seed", "passed", "violations", "extremalRatio", "extremalWitness", "runtimeMillis"] {
        assert!(text.contains(&format!("\"{key}\"")), "{key}");
    }
}

#[test]
fn parallel_and_serial_runs_agree() {
    let parallel = run_suite(Suite::Sublinearity, 64, 9);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| run_suite(Suite::Sublinearity, 64, 9));
    let strip = |mut r: ReportDocument| {
        r.runtime_millis = 0;
        r
    };
    assert_eq!(strip(parallel), strip(serial));
}
