//! Binary-level behavior: exit codes, error reporting on stderr, and the
//! artifact files each pipeline leaves in its output directory.
//!
//! Exit code contract: 0 when the run completes and every `assert.` bound
//! holds, 2 when the run completes but an assertion fails, 1 on any error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

// --- helpers -------------------------------------------------------------------

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavesrc"))
        .args(args)
        .output()
        .expect("binary must launch")
}

/// Fresh scratch directory for one test, cleared on entry so reruns start
/// clean.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wavesrc-cli-{name}"));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("run.cfg");
    fs::write(&path, body).unwrap();
    path
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

const CIRCULAR_SIM: &str = "orbit.kind = circular\n\
    orbit.rho = 0.3\n\
    orbit.rate = 1.0\n\
    orbit.speed_bound = 0.35\n\
    orbit.radius_bound = 0.7\n\
    signal.omega = 6.0\n\
    array.kind = symmetric\n\
    array.radius = 2.0\n\
    grid.dt = 1e-3\n";

// --- configuration errors --------------------------------------------------------

#[test]
fn missing_keys_are_named_on_stderr() {
    let dir = scratch("missing-key");
    let config = write_config(
        &dir,
        "orbit.kind = fixed\n\
         orbit.speed_bound = 0.05\n\
         orbit.radius_bound = 0.5\n\
         array.kind = symmetric\n\
         array.radius = 2.0\n\
         grid.dt = 0.05\n\
         grid.samples = 10\n",
    );
    let out = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = stderr_text(&out);
    assert!(stderr.contains("signal.omega"), "stderr must name the key: {stderr}");
}

#[test]
fn unknown_keys_are_named_on_stderr() {
    let dir = scratch("unknown-key");
    let config = write_config(&dir, &format!("{CIRCULAR_SIM}grid.samples = 10\norbit.kidn = 1\n"));
    let out = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = stderr_text(&out);
    assert!(stderr.contains("orbit.kidn"), "stderr must name the stray key: {stderr}");
}

#[test]
fn usage_errors_print_usage() {
    let out = run(&[]);
    assert!(!out.status.success());
    let stderr = stderr_text(&out);
    assert!(stderr.contains("Usage"), "no-argument run must print usage: {stderr}");
}

// --- run outcomes -----------------------------------------------------------------

#[test]
fn failed_assertions_exit_with_status_two() {
    let dir = scratch("assert-fail");
    // A valid run whose reported peak (about 0.04) violates the stated bound.
    let config = write_config(
        &dir,
        "orbit.kind = fixed\n\
         orbit.speed_bound = 0.05\n\
         orbit.radius_bound = 0.5\n\
         signal.omega = 3.141592653589793\n\
         array.kind = symmetric\n\
         array.radius = 2.0\n\
         grid.dt = 0.05\n\
         grid.samples = 60\n\
         assert.max_abs_sample = 1e-6\n",
    );
    let out_dir = dir.join("out");
    let out = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "assertion failure must exit with 2");
    let report = fs::read_to_string(out_dir.join("report.txt")).unwrap();
    assert!(report.contains("status = fail"), "report must record the failure:\n{report}");
}

#[test]
fn truncated_input_is_reported_as_a_coverage_gap() {
    let dir = scratch("coverage-gap");
    // Capture a series that clears the first arrival near t = 2 but ends far
    // short of the requested recovery window.
    let sim_config = write_config(&dir, &format!("{CIRCULAR_SIM}grid.samples = 4000\n"));
    let sim_dir = dir.join("sim");
    let out = run(&[
        "simulate",
        "--config",
        sim_config.to_str().unwrap(),
        "--out",
        sim_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let recover_config = dir.join("recover.cfg");
    fs::write(
        &recover_config,
        format!(
            "input.dir = {}\n\
             array.kind = symmetric\n\
             array.radius = 2.0\n\
             signal.omega = 6.0\n\
             recover.orbit_bound = 0.7\n\
             recover.duration = 6.0\n\
             recover.step = 1e-3\n",
            sim_dir.display()
        ),
    )
    .unwrap();
    let out = run(&[
        "recover-orbit",
        "--config",
        recover_config.to_str().unwrap(),
        "--out",
        dir.join("rec").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = stderr_text(&out);
    assert!(
        stderr.contains("covers"),
        "stderr must describe the missing coverage: {stderr}"
    );
}

#[test]
fn coplanar_receiver_arrays_are_rejected() {
    let dir = scratch("coplanar");
    let config = write_config(
        &dir,
        "orbit.kind = fixed\n\
         orbit.speed_bound = 0.05\n\
         orbit.radius_bound = 0.5\n\
         signal.omega = 6.0\n\
         array.kind = custom\n\
         array.radius = 2.0\n\
         array.receiver_0 = 2 0 0\n\
         array.receiver_1 = -2 0 0\n\
         array.receiver_2 = 0 2 0\n\
         array.receiver_3 = 0 -2 0\n\
         grid.dt = 0.05\n\
         grid.samples = 10\n",
    );
    let out = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = stderr_text(&out);
    assert!(stderr.contains("coplanar"), "stderr must name the geometry defect: {stderr}");
}

// --- artifact files ----------------------------------------------------------------

#[test]
fn source_recovery_writes_spectrum_and_grid_files() {
    let dir = scratch("recover-source");
    let config = write_config(
        &dir,
        "source.kind = gaussian\n\
         source.sigma = 0.25\n\
         source.support = 0.9\n\
         sphere.radius = 1.8\n\
         sphere.order = 6\n\
         directions.order = 3\n\
         volume.spacing = 0.12\n\
         freq.min = 0.5\n\
         freq.max = 4.0\n\
         freq.count = 6\n\
         ghat.kind = one\n\
         invert.half_width = 0.4\n\
         invert.points_per_axis = 5\n\
         truth.enabled = true\n",
    );
    let out_dir = dir.join("out");
    let out = run(&[
        "recover-source",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));

    // One spectrum row per (frequency, direction) pair after the header.
    let spectrum = fs::read_to_string(out_dir.join("spectrum.csv")).unwrap();
    let rows: Vec<&str> = spectrum.lines().collect();
    assert_eq!(rows[0], "kappa,d_theta,d_phi,re,im,mask");
    assert_eq!(rows.len(), 1 + 6 * 18, "6 frequencies x 18 directions");

    // One grid row per lattice point, with the truth column requested.
    let grid = fs::read_to_string(out_dir.join("reconstruction.csv")).unwrap();
    let rows: Vec<&str> = grid.lines().collect();
    assert_eq!(rows[0], "x,y,z,f_rec,f_true");
    assert_eq!(rows.len(), 1 + 5 * 5 * 5);

    let report = fs::read_to_string(out_dir.join("report.txt")).unwrap();
    assert!(report.contains("metric.l2_error_full ="), "report:\n{report}");
    assert!(report.contains("status = pass"), "report:\n{report}");
}

#[test]
fn quiet_boundary_pipeline_reports_each_spacing() {
    let dir = scratch("nonradiating");
    let config = write_config(
        &dir,
        "chi.radius = 0.6\n\
         chi.duration = 1.0\n\
         sphere.radius = 1.5\n\
         observe.t_max = 3.0\n\
         observe.step = 0.25\n\
         observe.order = 2\n\
         volume.spacings = 0.1 0.05\n",
    );
    let out_dir = dir.join("out");
    let out = run(&[
        "nonradiating",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    let report = fs::read_to_string(out_dir.join("report.txt")).unwrap();
    assert!(report.contains("metric.boundary_ratio_0 ="), "report:\n{report}");
    assert!(report.contains("metric.boundary_ratio_1 ="), "report:\n{report}");
    assert!(report.contains("metric.refinement_gain ="), "report:\n{report}");
}
