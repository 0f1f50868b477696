//! Pipeline drivers behind the command-line subcommands.
//!
//! Each driver reads a flat `key = value` configuration, runs one numerical
//! pipeline, writes CSV artifacts plus `report.txt` into the output
//! directory, and checks any `assert.<metric> = bound` entries against the
//! metrics it reported.  Configurations are validated against a closed key
//! set so typos fail loudly; the `assert.`, `truth.`, and `cli.` sections
//! stay open.

use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;

use super::csv::{write_grid_csv, write_orbit_csv, write_series_csv, write_spectrum_csv};
use super::{read_series_csv, CliError, ConfigError, KeyValues, RunReport};
use crate::core::{
    nonradiating_from_chi, validate_receivers, ChiSpec, Config, Orbit, ReceiverArray,
    SourceSpec, SpatialMap, TimeMap, TimeSeries, Vec3,
};
use crate::forward::{helmholtz_cauchy_set, retarded_potential, simulate_receivers};
use crate::orbit::recover_orbit;
use crate::srcrec::{invert_bandlimited, recover_spectrum_3d};
use crate::transforms::{ball_rule, sphere_rule};

// --- shared parsing ------------------------------------------------------------

fn bad(key: &str, value: &str, expected: &'static str) -> CliError {
    ConfigError::BadValue { key: key.to_string(), value: value.to_string(), expected }.into()
}

/// Reads an orbit description under `prefix.`: `kind` selects the path
/// family, `speed_bound`/`radius_bound` declare the envelopes fed to the
/// recovery band, and the family-specific keys fill in the parameters.
fn parse_orbit(kv: &KeyValues, prefix: &str) -> Result<Orbit, CliError> {
    let key = |name: &str| format!("{prefix}.{name}");
    let kind = kv.require(&key("kind"))?.to_string();
    let speed = kv.require_f64(&key("speed_bound"))?;
    let radius = kv.require_f64(&key("radius_bound"))?;
    match kind.as_str() {
        "fixed" => Ok(Orbit::fixed(speed, radius)),
        "linear" => Ok(Orbit::linear(kv.require_vec3(&key("velocity"))?, speed, radius)),
        "circular" => Ok(Orbit::circular(
            kv.require_f64(&key("rho"))?,
            kv.require_f64(&key("rate"))?,
            speed,
            radius,
        )),
        other => Err(bad(&key("kind"), other, "fixed, linear, or circular")),
    }
}

/// Reads the four-receiver array: `array.kind = symmetric` places the
/// standard non-coplanar quadruple on the sphere `array.radius`; `custom`
/// reads `array.receiver_0` through `array.receiver_3`.
fn parse_array(kv: &KeyValues) -> Result<ReceiverArray, CliError> {
    let kind = kv.require("array.kind")?.to_string();
    let radius = kv.require_f64("array.radius")?;
    let array = match kind.as_str() {
        "symmetric" => ReceiverArray::symmetric(radius),
        "custom" => {
            let mut positions = Vec::with_capacity(4);
            for j in 0..4 {
                positions.push(kv.require_vec3(&format!("array.receiver_{j}"))?);
            }
            ReceiverArray::new(positions, radius)
        }
        other => return Err(bad("array.kind", other, "symmetric or custom")),
    };
    validate_receivers(&array)?;
    Ok(array)
}

fn finish(
    mut report: RunReport,
    started: Instant,
    kv: &KeyValues,
    out_dir: &Path,
) -> Result<RunReport, CliError> {
    report.metric("runtime_seconds", started.elapsed().as_secs_f64());
    report.apply_asserts(kv)?;
    report.write(&out_dir.join("report.txt"))?;
    Ok(report)
}

// --- simulate -------------------------------------------------------------------

const SIMULATE_KEYS: &[&str] = &[
    "orbit.kind",
    "orbit.speed_bound",
    "orbit.radius_bound",
    "orbit.velocity",
    "orbit.rho",
    "orbit.rate",
    "signal.omega",
    "array.kind",
    "array.radius",
    "array.receiver_0",
    "array.receiver_1",
    "array.receiver_2",
    "array.receiver_3",
    "grid.t0",
    "grid.dt",
    "grid.samples",
];

/// Simulates the field of a monochromatic moving point source at the four
/// receivers and writes one `receiver_<j>.csv` per receiver.
pub fn run_simulate(kv: &KeyValues, out_dir: &Path) -> Result<RunReport, CliError> {
    kv.ensure_known(SIMULATE_KEYS, &["assert", "cli"])?;
    let started = Instant::now();

    let orbit = parse_orbit(kv, "orbit")?;
    let omega = kv.require_f64("signal.omega")?;
    let array = parse_array(kv)?;
    let t0 = kv.f64_or("grid.t0", 0.0)?;
    let dt = kv.require_f64("grid.dt")?;
    let samples = kv.require_usize("grid.samples")?;

    let series = simulate_receivers(&orbit, omega, &array, t0, dt, samples)?;
    fs::create_dir_all(out_dir)?;
    let mut peak = 0.0_f64;
    for (j, s) in series.iter().enumerate() {
        for &u in &s.samples {
            peak = peak.max(u.abs());
        }
        write_series_csv(&out_dir.join(format!("receiver_{j}.csv")), s)?;
    }

    let mut report = RunReport::new("simulate", kv);
    report.metric("receivers", series.len() as f64);
    report.metric("samples", samples as f64);
    report.metric("max_abs_sample", peak);
    finish(report, started, kv, out_dir)
}

// --- recover-orbit ----------------------------------------------------------------

const RECOVER_ORBIT_KEYS: &[&str] = &[
    "input.dir",
    "array.kind",
    "array.radius",
    "array.receiver_0",
    "array.receiver_1",
    "array.receiver_2",
    "array.receiver_3",
    "signal.omega",
    "recover.orbit_bound",
    "recover.duration",
    "recover.step",
    "recover.cos_floor",
];

/// Recovers a source trajectory from four recorded receiver series
/// (`receiver_0.csv` … `receiver_3.csv` under `input.dir`) and writes
/// `orbit.csv`.  An optional `truth.` orbit adds a `max_position_error`
/// metric.
pub fn run_recover_orbit(kv: &KeyValues, out_dir: &Path) -> Result<RunReport, CliError> {
    kv.ensure_known(RECOVER_ORBIT_KEYS, &["assert", "truth", "cli"])?;
    let started = Instant::now();

    let input = Path::new(kv.require("input.dir")?).to_path_buf();
    let array = parse_array(kv)?;
    let omega = kv.require_f64("signal.omega")?;
    let orbit_bound = kv.require_f64("recover.orbit_bound")?;
    let duration = kv.require_f64("recover.duration")?;
    let step = kv.require_f64("recover.step")?;
    let cos_floor = kv.f64_or("recover.cos_floor", Config::default().cos_floor)?;

    let mut series: Vec<TimeSeries> = Vec::with_capacity(4);
    for j in 0..4 {
        series.push(read_series_csv(&input.join(format!("receiver_{j}.csv")))?);
    }

    let estimate = recover_orbit(
        &series,
        &array,
        omega,
        array.radius,
        orbit_bound,
        duration,
        step,
        cos_floor,
    )?;
    fs::create_dir_all(out_dir)?;
    write_orbit_csv(&out_dir.join("orbit.csv"), &estimate)?;

    let mut report = RunReport::new("recover-orbit", kv);
    report.metric("nodes", estimate.len() as f64);
    report.metric("guard_fraction", estimate.guard_fraction);
    let max_residual = estimate.residuals.iter().cloned().fold(0.0_f64, f64::max);
    report.metric("max_residual", max_residual);

    if kv.get("truth.kind").is_some() {
        let truth = parse_orbit(kv, "truth")?;
        let mut worst = 0.0_f64;
        for (i, position) in estimate.positions.iter().enumerate() {
            worst = worst.max((*position - truth.position(estimate.time(i))).norm());
        }
        report.metric("max_position_error", worst);
    }
    finish(report, started, kv, out_dir)
}

// --- recover-source ---------------------------------------------------------------

const RECOVER_SOURCE_KEYS: &[&str] = &[
    "source.kind",
    "source.sigma",
    "source.center",
    "source.support",
    "sphere.radius",
    "sphere.order",
    "directions.order",
    "volume.spacing",
    "freq.min",
    "freq.max",
    "freq.count",
    "ghat.kind",
    "ghat.cutoff",
    "invert.half_width",
    "invert.points_per_axis",
    "invert.kappa_sweep",
];

fn cube_grid(half_width: f64, per_axis: usize) -> Vec<Vec3> {
    let axis: Vec<f64> = if per_axis < 2 {
        vec![0.0]
    } else {
        (0..per_axis)
            .map(|i| -half_width + 2.0 * half_width * i as f64 / (per_axis - 1) as f64)
            .collect()
    };
    let mut points = Vec::with_capacity(axis.len().pow(3));
    for &x in &axis {
        for &y in &axis {
            for &z in &axis {
                points.push(Vec3::new(x, y, z));
            }
        }
    }
    points
}

fn relative_l2(reconstruction: &[f64], truth: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (r, t) in reconstruction.iter().zip(truth) {
        num += (r - t) * (r - t);
        den += t * t;
    }
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}

/// Synthesizes multi-frequency boundary data for a known spatial profile,
/// extracts its Fourier spectrum from that data alone, and inverts the
/// band-limited spectrum on a cube grid.  Writes `spectrum.csv` and
/// `reconstruction.csv`.
///
/// `truth.enabled = true` adds the exact profile as an `f_true` column and
/// reports relative L2 errors: `l2_error_full` for the whole band and
/// `l2_error_<i>` for every entry of `invert.kappa_sweep`, plus
/// `sweep_violations`, the number of adjacent sweep pairs whose error
/// failed to decrease.
pub fn run_recover_source(kv: &KeyValues, out_dir: &Path) -> Result<RunReport, CliError> {
    kv.ensure_known(RECOVER_SOURCE_KEYS, &["assert", "truth", "cli"])?;
    let started = Instant::now();

    let kind = kv.require("source.kind")?.to_string();
    if kind != "gaussian" {
        return Err(bad("source.kind", &kind, "gaussian"));
    }
    let sigma = kv.require_f64("source.sigma")?;
    let center = if kv.get("source.center").is_some() {
        kv.require_vec3("source.center")?
    } else {
        Vec3::ZERO
    };
    let support = kv.require_f64("source.support")?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(bad("source.sigma", kv.get("source.sigma").unwrap_or(""), "a positive width"));
    }

    let profile: SpatialMap = Arc::new(move |y: Vec3| {
        (-(y - center).norm_sq() / (2.0 * sigma * sigma)).exp()
    });
    let steady: TimeMap = Arc::new(|_| 1.0);
    let source = SourceSpec::Separable {
        f: Arc::clone(&profile),
        g: steady,
        radius: support,
        duration: 1.0,
    };

    let sphere_radius = kv.require_f64("sphere.radius")?;
    let sphere = Arc::new(sphere_rule(kv.require_usize("sphere.order")?)?);
    let directions = Arc::new(sphere_rule(kv.require_usize("directions.order")?)?);
    let volume = ball_rule(support, kv.require_f64("volume.spacing")?)?;

    let freq_min = kv.require_f64("freq.min")?;
    let freq_max = kv.require_f64("freq.max")?;
    let freq_count = kv.require_usize("freq.count")?;
    if freq_count < 2 || !(freq_max > freq_min) || !(freq_min > 0.0) {
        return Err(bad("freq.count", kv.get("freq.count").unwrap_or(""), "an increasing positive band with at least two nodes"));
    }
    let kappas: Vec<f64> = (0..freq_count)
        .map(|i| freq_min + (freq_max - freq_min) * i as f64 / (freq_count - 1) as f64)
        .collect();

    let ghat_kind = kv.require("ghat.kind")?.to_string();
    let cutoff = match ghat_kind.as_str() {
        "one" => f64::INFINITY,
        "one_below" => kv.require_f64("ghat.cutoff")?,
        other => return Err(bad("ghat.kind", other, "one or one_below")),
    };
    let g_hat = move |kappa: f64| {
        if kappa <= cutoff {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    };

    let modes: Vec<(f64, Complex64)> = kappas.iter().map(|&k| (k, g_hat(k))).collect();
    let data = helmholtz_cauchy_set(&source, &modes, &sphere, sphere_radius, &volume)?;
    let spectrum =
        recover_spectrum_3d(&data, &directions, &g_hat, Config::default().divisor_floor)?;

    fs::create_dir_all(out_dir)?;
    write_spectrum_csv(&out_dir.join("spectrum.csv"), &spectrum)?;

    let half_width = kv.require_f64("invert.half_width")?;
    let per_axis = kv.require_usize("invert.points_per_axis")?;
    let points = cube_grid(half_width, per_axis);
    let reconstruction = invert_bandlimited(&spectrum, &points)?;

    let truth_enabled = match kv.get("truth.enabled") {
        None => false,
        Some("true") => true,
        Some("false") => false,
        Some(other) => return Err(bad("truth.enabled", other, "true or false")),
    };
    let truth: Option<Vec<f64>> =
        truth_enabled.then(|| points.iter().map(|&p| profile(p)).collect());
    write_grid_csv(
        &out_dir.join("reconstruction.csv"),
        &points,
        &reconstruction,
        truth.as_deref(),
    )?;

    let mut report = RunReport::new("recover-source", kv);
    report.metric("kappa_nodes", spectrum.kappas.len() as f64);
    report.metric("direction_nodes", directions.len() as f64);
    let masked = spectrum.mask.iter().filter(|&&valid| !valid).count();
    report.metric("masked_rows", masked as f64);

    if let Some(truth) = &truth {
        report.metric("l2_error_full", relative_l2(&reconstruction, truth));
    }
    let sweep = kv.f64_list("invert.kappa_sweep")?;
    if !sweep.is_empty() {
        let truth = truth.as_ref().ok_or_else(|| {
            ConfigError::BadValue {
                key: "invert.kappa_sweep".to_string(),
                value: kv.get("invert.kappa_sweep").unwrap_or("").to_string(),
                expected: "truth.enabled = true when sweeping",
            }
        })?;
        let mut errors = Vec::with_capacity(sweep.len());
        for (i, &kappa_max) in sweep.iter().enumerate() {
            let restricted = spectrum.restricted(kappa_max);
            let rec = invert_bandlimited(&restricted, &points)?;
            let err = relative_l2(&rec, truth);
            report.metric(&format!("l2_error_{i}"), err);
            errors.push(err);
        }
        let violations =
            errors.windows(2).filter(|pair| !(pair[1] < pair[0])).count();
        report.metric("sweep_violations", violations as f64);
    }
    finish(report, started, kv, out_dir)
}

// --- nonradiating -----------------------------------------------------------------

const NONRADIATING_KEYS: &[&str] = &[
    "chi.radius",
    "chi.duration",
    "sphere.radius",
    "observe.t_max",
    "observe.step",
    "observe.order",
    "volume.spacings",
];

/// Builds the wave-operator image of a compactly supported space-time bump
/// — a source that radiates nothing — and measures how quiet the field is
/// on a distant sphere, once per volume-rule spacing.
///
/// Reports `sup_chi`, one `boundary_ratio_<i>` per spacing (boundary
/// peak over `sup_chi`), `refinement_gain` (first ratio over last), and
/// `force_outside_support_max`.
pub fn run_nonradiating(kv: &KeyValues, out_dir: &Path) -> Result<RunReport, CliError> {
    kv.ensure_known(NONRADIATING_KEYS, &["assert", "cli"])?;
    let started = Instant::now();

    let chi_radius = kv.require_f64("chi.radius")?;
    let chi_duration = kv.require_f64("chi.duration")?;
    let sphere_radius = kv.require_f64("sphere.radius")?;
    let t_max = kv.require_f64("observe.t_max")?;
    let step = kv.require_f64("observe.step")?;
    let order = kv.require_usize("observe.order")?;
    let spacings = kv.f64_list("volume.spacings")?;
    if spacings.is_empty() {
        return Err(ConfigError::MissingKey("volume.spacings".to_string()).into());
    }

    let chi = ChiSpec::radial_bump(chi_radius, chi_duration);
    let source = nonradiating_from_chi(&chi, 0.0);

    // chi is radial in space, so a dense (r, t) sweep captures its peak.
    let mut sup_chi = 0.0_f64;
    for i in 0..=60 {
        for j in 0..=60 {
            let y = Vec3::new(chi_radius * i as f64 / 60.0, 0.0, 0.0);
            let t = chi_duration * j as f64 / 60.0;
            sup_chi = sup_chi.max((chi.value)(y, t).abs());
        }
    }

    let observers = sphere_rule(order)?;
    if !(step > 0.0 && t_max > 0.0) {
        return Err(bad("observe.step", kv.get("observe.step").unwrap_or(""), "a positive time step"));
    }
    let time_nodes = (t_max / step).round() as usize;

    let mut report = RunReport::new("nonradiating", kv);
    report.metric("sup_chi", sup_chi);
    let mut ratios = Vec::with_capacity(spacings.len());
    for (i, &spacing) in spacings.iter().enumerate() {
        let rule = ball_rule(chi_radius, spacing)?;
        let mut peak = 0.0_f64;
        for direction in &observers.nodes {
            let x = *direction * sphere_radius;
            for k in 0..=time_nodes {
                let u = retarded_potential(&source, x, k as f64 * step, &rule)?;
                peak = peak.max(u.abs());
            }
        }
        let ratio = peak / sup_chi;
        report.metric(&format!("boundary_ratio_{i}"), ratio);
        ratios.push(ratio);
    }
    if ratios.len() >= 2 {
        report.metric("refinement_gain", ratios[0] / ratios[ratios.len() - 1]);
    }

    // The derived force must vanish identically outside the declared support.
    let probes = [
        (Vec3::new(1.05 * chi_radius, 0.0, 0.0), 0.5 * chi_duration),
        (Vec3::new(0.0, 1.5 * chi_radius, 0.0), 0.25 * chi_duration),
        (Vec3::new(0.3 * chi_radius, 0.0, 0.0), 1.05 * chi_duration),
        (Vec3::new(0.0, 0.0, 0.5 * chi_radius), -0.05 * chi_duration),
    ];
    let mut outside = 0.0_f64;
    for (y, t) in probes {
        if let Some(value) = source.density(y, t) {
            outside = outside.max(value.abs());
        }
    }
    report.metric("force_outside_support_max", outside);

    fs::create_dir_all(out_dir)?;
    finish(report, started, kv, out_dir)
}

// --- tests -------------------------------------------------------------------
