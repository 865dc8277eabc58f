//! Deterministic file writers. Floats use Rust's shortest round-trip decimal
//! formatting, absent band values serialize as empty CSV fields or JSON
//! nulls, and line endings are LF. Identical inputs produce byte-identical
//! files.

use anyhow::{Context, Result};
use scqmm_bands::report::{ParamsSidecar, SpectrumReport};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Frozen scan CSV header (columns are append-only across versions).
pub const SCAN_CSV_HEADER: &str =
    "K,band1,band2,continuum_lo,continuum_hi,photon_line,residual1,residual2,a_prime1,a_prime2";
/// Figure outputs append the reference curve of the b = 0 problem.
pub const FIGURE_CSV_HEADER: &str =
    "K,band1,band2,continuum_lo,continuum_hi,photon_line,residual1,residual2,a_prime1,a_prime2,pure_attractive";
pub const ATLAS_CSV_HEADER: &str = "beta,gamma,band1_bandwidth,band1_relative_flatness,band2_max_photon_offset,gap_band1_to_continuum_k0,repulsive_exists";

pub fn fmt(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

pub fn scan_csv(report: &SpectrumReport, with_pure_attractive: bool) -> String {
    let b = &report.bands;
    let mut out = String::new();
    out.push_str(if with_pure_attractive {
        FIGURE_CSV_HEADER
    } else {
        SCAN_CSV_HEADER
    });
    out.push('\n');
    for i in 0..b.k.len() {
        out.push_str(&fmt(b.k[i]));
        for v in [b.band1[i], b.band2[i]] {
            out.push(',');
            out.push_str(&fmt_opt(v));
        }
        for v in [b.continuum_lo[i], b.continuum_hi[i], b.photon_line[i]] {
            out.push(',');
            out.push_str(&fmt(v));
        }
        for v in [b.residual1[i], b.residual2[i], b.a_prime1[i], b.a_prime2[i]] {
            out.push(',');
            out.push_str(&fmt_opt(v));
        }
        if with_pure_attractive {
            out.push(',');
            out.push_str(&fmt(b.pure_attractive[i]));
        }
        out.push('\n');
    }
    out
}

/// One (β, γ) tile of the flatness/gap atlas. Metrics of an absent band are
/// empty in CSV and null in JSON.
#[derive(Debug, Clone, Serialize)]
pub struct AtlasRow {
    pub beta: f64,
    pub gamma: f64,
    pub band1_bandwidth: Option<f64>,
    pub band1_relative_flatness: Option<f64>,
    pub band2_max_photon_offset: Option<f64>,
    pub gap_band1_to_continuum_k0: Option<f64>,
    pub repulsive_exists: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AtlasReport {
    pub version: String,
    pub format_version: u32,
    pub k_points: usize,
    pub rows: Vec<AtlasRow>,
}

pub fn atlas_csv(rows: &[AtlasRow]) -> String {
    let mut out = String::from(ATLAS_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt(r.beta),
            fmt(r.gamma),
            fmt_opt(r.band1_bandwidth),
            fmt_opt(r.band1_relative_flatness),
            fmt_opt(r.band2_max_photon_offset),
            fmt_opt(r.gap_band1_to_continuum_k0),
            r.repulsive_exists
        ));
    }
    out
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).context("serializing JSON")?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = std::fs::File::create(path)
        .with_context(|| format!("creating {}", path.display()))?;
    f.write_all(contents.as_bytes())
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// `<out>.params.json`, written next to every scan/figure output.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".params.json");
    PathBuf::from(name)
}

pub fn write_sidecar(out: &Path, sidecar: &ParamsSidecar) -> Result<()> {
    write_file(&sidecar_path(out), &to_json_pretty(sidecar)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip_formatting() {
        assert_eq!(fmt(0.1), "0.1");
        assert_eq!(fmt(-1.0), "-1");
        assert_eq!(fmt(std::f64::consts::PI), "3.141592653589793");
        let v: f64 = "155.69802442856427".parse().unwrap();
        assert_eq!(fmt(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn sidecar_path_appends_suffix() {
        assert_eq!(
            sidecar_path(Path::new("out/scan.csv")),
            PathBuf::from("out/scan.csv.params.json")
        );
    }
}
