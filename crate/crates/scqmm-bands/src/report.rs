//! Serializable scan records: inputs, bands, reference curves, diagnostics
//! and (optionally) oracle deltas.

use crate::error::Result;
use crate::oracle::ComparisonReport;
use crate::params::NormalizedParams;
use crate::spectrum::{
    self, AsymptoticEdges, BandEdges, BandStructure, Branch, Flatness, RepulsiveExistence,
};
use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const FORMAT_VERSION: u32 = 1;

/// Residual bound every emitted band point must satisfy.
pub const ROOT_RESIDUAL_BOUND: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportParams {
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub normalized: NormalizedParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridDescriptor {
    pub k_points: usize,
    pub k_min: f64,
    pub k_max: f64,
}

/// Column-oriented band table; absent band values are nulls.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandsTable {
    pub k: Vec<f64>,
    pub band1: Vec<Option<f64>>,
    pub band2: Vec<Option<f64>>,
    pub continuum_lo: Vec<f64>,
    pub continuum_hi: Vec<f64>,
    pub photon_line: Vec<f64>,
    pub residual1: Vec<Option<f64>>,
    pub residual2: Vec<Option<f64>>,
    pub a_prime1: Vec<Option<f64>>,
    pub a_prime2: Vec<Option<f64>>,
    /// Defect band of the b = 0 problem, the "pure attractive" reference.
    pub pure_attractive: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub max_abs_residual_band1: Option<f64>,
    pub max_abs_residual_band2: Option<f64>,
    pub band1_gaps: usize,
    pub band2_gaps: usize,
    pub parity_max_dev: Option<f64>,
    pub flatness_band1: Option<Flatness>,
    pub flatness_band2: Option<Flatness>,
    pub band2_max_photon_offset: Option<f64>,
    pub band1_max_pure_attractive_dev: Option<f64>,
    pub band_edges_attractive: Option<BandEdges>,
    pub band_edges_asymptotic: AsymptoticEdges,
    pub repulsive: RepulsiveExistence,
    pub solve_errors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<ComparisonReport>,
}

/// Full record of one scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub version: String,
    pub format_version: u32,
    pub params: ReportParams,
    pub grid: GridDescriptor,
    pub bands: BandsTable,
    pub diagnostics: Diagnostics,
}

/// Sidecar written next to every scan output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsSidecar {
    pub version: String,
    pub format_version: u32,
    pub normalized_params: NormalizedParams,
}

impl ParamsSidecar {
    pub fn new(np: NormalizedParams) -> Self {
        Self {
            version: TOOL_VERSION.to_string(),
            format_version: FORMAT_VERSION,
            normalized_params: np,
        }
    }
}

fn max_over<'a>(it: impl Iterator<Item = &'a Option<f64>>) -> Option<f64> {
    it.flatten().fold(None, |acc, &v| {
        Some(acc.map_or(v, |m: f64| m.max(v)))
    })
}

impl SpectrumReport {
    pub fn from_scan(
        beta: Option<f64>,
        gamma: Option<f64>,
        scan: &BandStructure,
        oracle: Option<ComparisonReport>,
    ) -> Result<Self> {
        let np = scan.params;
        let n = scan.grid.len();
        let mut bands = BandsTable {
            k: Vec::with_capacity(n),
            band1: Vec::with_capacity(n),
            band2: Vec::with_capacity(n),
            continuum_lo: Vec::with_capacity(n),
            continuum_hi: Vec::with_capacity(n),
            photon_line: scan.photon.clone(),
            residual1: Vec::with_capacity(n),
            residual2: Vec::with_capacity(n),
            a_prime1: Vec::with_capacity(n),
            a_prime2: Vec::with_capacity(n),
            pure_attractive: Vec::with_capacity(n),
        };
        for (i, k) in scan.grid.iter().enumerate() {
            bands.k.push(k.value());
            bands.continuum_lo.push(scan.continuum[i].lo);
            bands.continuum_hi.push(scan.continuum[i].hi);
            bands.pure_attractive.push(spectrum::pure_attractive_reference(k, &np));
            let p1 = &scan.band1.points[i];
            bands.band1.push(p1.map(|p| p.eps));
            bands.residual1.push(p1.map(|p| p.residual));
            bands.a_prime1.push(p1.map(|p| p.a_prime));
            let p2 = &scan.band2.points[i];
            bands.band2.push(p2.map(|p| p.eps));
            bands.residual2.push(p2.map(|p| p.residual));
            bands.a_prime2.push(p2.map(|p| p.a_prime));
        }

        let parity = |vals: &[Option<f64>]| {
            let mut worst: Option<f64> = None;
            for i in 0..n {
                if let (Some(x), Some(y)) = (vals[i], vals[n - 1 - i]) {
                    let d = (x - y).abs();
                    worst = Some(worst.map_or(d, |w: f64| w.max(d)));
                }
            }
            worst
        };
        let parity_max_dev = match (parity(&bands.band1), parity(&bands.band2)) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        };

        let band2_max_photon_offset = bands
            .band2
            .iter()
            .zip(&bands.photon_line)
            .filter_map(|(b, p)| b.map(|b| (b - p).abs()))
            .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |m| m.max(d))));
        let band1_max_pure_attractive_dev = bands
            .band1
            .iter()
            .zip(&bands.pure_attractive)
            .filter_map(|(b, r)| b.map(|b| (b - r).abs()))
            .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |m| m.max(d))));

        let diagnostics = Diagnostics {
            max_abs_residual_band1: max_over(bands.residual1.iter()).map(f64::abs),
            max_abs_residual_band2: max_over(bands.residual2.iter()).map(f64::abs),
            band1_gaps: bands.band1.iter().filter(|p| p.is_none()).count(),
            band2_gaps: bands.band2.iter().filter(|p| p.is_none()).count(),
            parity_max_dev,
            flatness_band1: spectrum::flatness(&scan.band1).ok(),
            flatness_band2: spectrum::flatness(&scan.band2).ok(),
            band2_max_photon_offset,
            band1_max_pure_attractive_dev,
            band_edges_attractive: spectrum::band_edge_closed_form(&np, Branch::Attractive),
            band_edges_asymptotic: spectrum::band_edge_asymptotic(&np, Branch::Attractive),
            repulsive: spectrum::repulsive_existence(&np),
            solve_errors: scan
                .solve_errors
                .iter()
                .map(|(band, i, msg)| format!("{band:?} at index {i}: {msg}"))
                .collect(),
            oracle,
        };

        Ok(Self {
            version: TOOL_VERSION.to_string(),
            format_version: FORMAT_VERSION,
            params: ReportParams {
                beta,
                gamma,
                normalized: np,
            },
            grid: GridDescriptor {
                k_points: n,
                k_min: scan.grid.point(0).value(),
                k_max: scan.grid.point(n - 1).value(),
            },
            bands,
            diagnostics,
        })
    }
}

/// Re-check the solver invariants on every emitted band value; called by
/// writers before anything reaches disk.
pub fn verify_band_structure(scan: &BandStructure) -> Result<()> {
    use crate::error::Error;
    for (i, k) in scan.grid.iter().enumerate() {
        let lo = scan.continuum[i].lo;
        let photon = scan.photon[i];
        if let Some(p) = &scan.band1.points[i] {
            if p.residual.abs() >= ROOT_RESIDUAL_BOUND {
                return Err(Error::Domain(format!(
                    "band 1 residual {} out of bounds at K = {}",
                    p.residual,
                    k.value()
                )));
            }
            if !(p.eps < lo) || !(p.eps > photon) || !(p.a_prime < 0.0) {
                return Err(Error::Domain(format!(
                    "band 1 separation violated at K = {}",
                    k.value()
                )));
            }
        }
        if let Some(p) = &scan.band2.points[i] {
            if p.residual.abs() >= ROOT_RESIDUAL_BOUND {
                return Err(Error::Domain(format!(
                    "band 2 residual {} out of bounds at K = {}",
                    p.residual,
                    k.value()
                )));
            }
            if !(p.eps < photon) || !(p.a_prime < 0.0) {
                return Err(Error::Domain(format!(
                    "band 2 must lie below the photon line at K = {}",
                    k.value()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DimensionlessParams;
    use crate::spectrum::KGrid;

    #[test]
    fn report_diagnostics_populated() {
        let np = DimensionlessParams::new(0.5, 0.2).unwrap().normalized();
        let scan = spectrum::scan_bands(&np, &KGrid::uniform(21).unwrap(), 1e-12).unwrap();
        verify_band_structure(&scan).unwrap();
        let report = SpectrumReport::from_scan(Some(0.5), Some(0.2), &scan, None).unwrap();
        assert_eq!(report.bands.k.len(), 21);
        assert_eq!(report.diagnostics.band1_gaps, 0);
        assert!(report.diagnostics.max_abs_residual_band1.unwrap() < ROOT_RESIDUAL_BOUND);
        assert!(report.diagnostics.band2_max_photon_offset.unwrap() < 1e-2);
        assert!(!report.diagnostics.repulsive.exists);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"format_version\":1"));
    }
}
