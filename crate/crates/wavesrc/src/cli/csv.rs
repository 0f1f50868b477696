//! Bit-stable CSV input and output.
//!
//! All reals are written with 17 significant digits (`{:.16e}`), which
//! round-trips every f64 exactly; lines end with LF; the decimal separator
//! is always '.'.  Metadata rides in `# key = value` header lines so a
//! series file is self-describing.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::ConfigError;
use crate::core::{TimeSeries, Vec3};
use crate::orbit::OrbitEstimate;
use crate::srcrec::PolarSpectrum;

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

// --- time series ---------------------------------------------------------------

/// Writes one receiver series: `# key = value` headers (receiver position,
/// grid, optional first arrival) and `t,u` rows.
pub fn write_series_csv(path: &Path, series: &TimeSeries) -> std::io::Result<()> {
    let mut out = String::new();
    let r = series.receiver;
    let _ = writeln!(out, "# receiver = {} {} {}", real(r.x), real(r.y), real(r.z));
    let _ = writeln!(out, "# t0 = {}", real(series.t0));
    let _ = writeln!(out, "# dt = {}", real(series.dt));
    let _ = writeln!(out, "# samples = {}", series.len());
    if let Some(arrival) = series.first_arrival {
        let _ = writeln!(out, "# first_arrival = {}", real(arrival));
    }
    out.push_str("t,u\n");
    for (k, &value) in series.samples.iter().enumerate() {
        let _ = writeln!(out, "{},{}", real(series.time(k)), real(value));
    }
    fs::write(path, out)
}

fn csv_error(path: &Path, line: usize, reason: impl Into<String>) -> ConfigError {
    ConfigError::Csv { path: path.display().to_string(), line, reason: reason.into() }
}

/// Reads a series written by [`write_series_csv`].
///
/// The time column is informational; samples are placed on the grid declared
/// by the `t0`/`dt` headers.
///
/// # Errors
///
/// [`ConfigError::Csv`] for unreadable files, missing headers, malformed
/// rows, or a sample count that contradicts the header.
pub fn read_series_csv(path: &Path) -> Result<TimeSeries, ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|e| csv_error(path, 0, format!("cannot read: {e}")))?;
    let mut receiver = None;
    let mut t0 = None;
    let mut dt = None;
    let mut declared = None;
    let mut first_arrival = None;
    let mut samples = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let Some((key, value)) = header.split_once('=') else {
                return Err(csv_error(path, line_no, "header line without '='"));
            };
            let (key, value) = (key.trim(), value.trim());
            let parse = |v: &str| -> Result<f64, ConfigError> {
                v.parse().map_err(|_| csv_error(path, line_no, format!("bad real '{v}'")))
            };
            match key {
                "receiver" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(csv_error(path, line_no, "receiver needs three reals"));
                    }
                    receiver =
                        Some(Vec3::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?));
                }
                "t0" => t0 = Some(parse(value)?),
                "dt" => dt = Some(parse(value)?),
                "samples" => {
                    declared = Some(value.parse::<usize>().map_err(|_| {
                        csv_error(path, line_no, format!("bad sample count '{value}'"))
                    })?);
                }
                "first_arrival" => first_arrival = Some(parse(value)?),
                other => {
                    return Err(csv_error(path, line_no, format!("unknown header '{other}'")));
                }
            }
            continue;
        }
        if line == "t,u" {
            continue;
        }
        let Some((_, value)) = line.split_once(',') else {
            return Err(csv_error(path, line_no, "data row without a comma"));
        };
        let u: f64 = value
            .trim()
            .parse()
            .map_err(|_| csv_error(path, line_no, format!("bad sample '{value}'")))?;
        samples.push(u);
    }

    let receiver = receiver.ok_or_else(|| csv_error(path, 0, "missing 'receiver' header"))?;
    let t0 = t0.ok_or_else(|| csv_error(path, 0, "missing 't0' header"))?;
    let dt = dt.ok_or_else(|| csv_error(path, 0, "missing 'dt' header"))?;
    if let Some(count) = declared {
        if count != samples.len() {
            return Err(csv_error(
                path,
                0,
                format!("header declares {count} samples, found {}", samples.len()),
            ));
        }
    }
    let series = TimeSeries::new(receiver, t0, dt, samples)
        .map_err(|e| csv_error(path, 0, e.to_string()))?;
    Ok(match first_arrival {
        Some(arrival) => series.with_first_arrival(arrival),
        None => series,
    })
}

// --- recovery outputs ------------------------------------------------------------

/// Writes a recovered trajectory: `t,a_x,a_y,a_z,residual,guard` rows.
pub fn write_orbit_csv(path: &Path, estimate: &OrbitEstimate) -> std::io::Result<()> {
    let mut out = String::from("t,a_x,a_y,a_z,residual,guard\n");
    for i in 0..estimate.len() {
        let a = estimate.positions[i];
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            real(estimate.time(i)),
            real(a.x),
            real(a.y),
            real(a.z),
            real(estimate.residuals[i]),
            u8::from(estimate.guard_mask[i]),
        );
    }
    fs::write(path, out)
}

/// Writes a polar spectrum: `kappa,d_theta,d_phi,re,im,mask` rows, one per
/// (frequency, direction) pair in storage order.
pub fn write_spectrum_csv(path: &Path, spectrum: &PolarSpectrum) -> std::io::Result<()> {
    let mut out = String::from("kappa,d_theta,d_phi,re,im,mask\n");
    for (m, &kappa) in spectrum.kappas.iter().enumerate() {
        for (j, d) in spectrum.directions.nodes.iter().enumerate() {
            let value = spectrum.values[spectrum.index(m, j)];
            let theta = d.z.clamp(-1.0, 1.0).acos();
            let phi = d.y.atan2(d.x);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                real(kappa),
                real(theta),
                real(phi),
                real(value.re),
                real(value.im),
                u8::from(spectrum.mask[spectrum.index(m, j)]),
            );
        }
    }
    fs::write(path, out)
}

/// Writes a reconstruction grid: `x,y,z,f_rec[,f_true]` rows.
pub fn write_grid_csv(
    path: &Path,
    points: &[Vec3],
    reconstruction: &[f64],
    truth: Option<&[f64]>,
) -> std::io::Result<()> {
    assert_eq!(points.len(), reconstruction.len(), "one value per point");
    if let Some(t) = truth {
        assert_eq!(points.len(), t.len(), "one truth value per point");
    }
    let mut out = String::from(match truth {
        Some(_) => "x,y,z,f_rec,f_true\n",
        None => "x,y,z,f_rec\n",
    });
    for (i, p) in points.iter().enumerate() {
        let _ = write!(
            out,
            "{},{},{},{}",
            real(p.x),
            real(p.y),
            real(p.z),
            real(reconstruction[i])
        );
        if let Some(t) = truth {
            let _ = write!(out, ",{}", real(t[i]));
        }
        out.push('\n');
    }
    fs::write(path, out)
}

// --- tests -------------------------------------------------------------------
