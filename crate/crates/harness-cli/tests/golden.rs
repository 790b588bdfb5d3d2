//! Golden-file regression check for the canonical quadratic run. The
//! stored CSV was recorded from a verified run; any drift in the stepper,
//! the objective, or the export path shows up here.

use std::path::Path;

use harness_cli::{run_trajectory, trajectory_to_csv, RunConfig};

fn golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"))
}

#[test]
fn canonical_quadratic_run_matches_the_recorded_golden_file() {
    let config: RunConfig =
        harness_cli::read_json_config(&golden_dir().join("fig1_lp_adam_p2.json")).unwrap();
    let golden = harness_cli::import_trajectory(&golden_dir().join("fig1_lp_adam_p2.csv")).unwrap();

    let trajectory = run_trajectory(&config).unwrap();
    assert_eq!(trajectory.len(), golden.len());
    // Field-by-field with a tiny relative tolerance: the run is
    // deterministic per platform, but exp/ln may differ by an ulp across
    // libm implementations.
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()) + 1e-300;
    for (got, want) in trajectory.records.iter().zip(&golden.records) {
        assert_eq!(got.t, want.t);
        assert!(close(got.loss, want.loss), "t {}: loss {} vs {}", got.t, got.loss, want.loss);
        assert!(close(got.step_inf_norm, want.step_inf_norm), "t {}", got.t);
        assert!(close(got.step_l2_norm, want.step_l2_norm), "t {}", got.t);
        for (x, y) in got.theta.iter().zip(&want.theta) {
            assert!(close(*x, *y), "t {}: theta {} vs {}", got.t, x, y);
        }
    }
}

#[test]
fn golden_file_reimport_and_reexport_is_byte_identical() {
    let path = golden_dir().join("fig1_lp_adam_p2.csv");
    let original = std::fs::read_to_string(&path).unwrap();
    let trajectory = harness_cli::import_trajectory(&path).unwrap();
    assert_eq!(trajectory_to_csv(&trajectory), original);
}
