//! Command-line front end for the qubit-photon bound-state band solver.
//!
//! Subcommands: `scan` (band table over a K grid), `figure` (the twelve
//! preset panels fig3a..fig5d), `atlas` (flatness/gap map over a (β, γ)
//! grid), `validate` (solver versus exact-diagonalization oracle) and
//! `params` (all parameterizations of one working point). Outputs are
//! deterministic CSV or JSON; re-running an identical invocation reproduces
//! byte-identical files.

mod config;
mod output;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use config::ConfigFile;
use output::{AtlasReport, AtlasRow};
use rayon::prelude::*;
use scqmm_bands::oracle::{self, ComparisonReport};
use scqmm_bands::params::{
    ConsistencyReport, DerivedParams, DimensionlessParams, EnergyScales, NormalizedParams,
    PhysicalParams,
};
use scqmm_bands::report::{self, ParamsSidecar, SpectrumReport, FORMAT_VERSION, TOOL_VERSION};
use scqmm_bands::spectrum::{self, KGrid};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "scqmm-bands",
    version,
    about = "Qubit-photon bound-state bands of a 1D superconducting quantum metamaterial"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve both bound-state bands over a K grid and write a data table
    Scan(ScanArgs),
    /// Reproduce a preset band diagram (fig3a..fig5d) with reference curves
    Figure(FigureArgs),
    /// Map band flatness, gaps and repulsive existence over a (β, γ) grid
    Atlas(AtlasArgs),
    /// Cross-check the solver against finite-ring exact diagonalization
    Validate(ValidateArgs),
    /// Print physical, energy-scale, derived and normalized parameters
    Params(ParamsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct ScanArgs {
    /// Dimensionless "speed of light" β = √(E_em/E_J)
    #[arg(long)]
    beta: Option<f64>,
    /// Charging-to-Josephson ratio γ = E_C/E_J
    #[arg(long)]
    gamma: Option<f64>,
    /// K-grid size; odd so K = 0 and ±π are on-grid [default: 401]
    #[arg(long)]
    k_points: Option<usize>,
    /// Root-bracketing tolerance [default: 1e-12]
    #[arg(long)]
    tol: Option<f64>,
    /// Also run the N-cell oracle and embed the comparison (N even, >= 16)
    #[arg(long)]
    oracle_n: Option<usize>,
    /// Output path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// key=value config file (# comments); flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Preset id: fig3a..fig5d (fig3/4/5 -> β = 0.1/0.2/0.5; a/b/c/d -> γ = 0.2/1/5/10)
    #[arg(long)]
    figure: String,
    #[arg(long)]
    k_points: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct AtlasArgs {
    /// β range as lo:hi
    #[arg(long)]
    beta_range: String,
    /// γ range as lo:hi
    #[arg(long)]
    gamma_range: String,
    /// Grid points per axis (>= 2)
    #[arg(long)]
    resolution: usize,
    #[arg(long)]
    k_points: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Ring size N (even, >= 16) [default: 64]
    #[arg(long)]
    oracle_n: Option<usize>,
    /// Largest accepted |ε_solver - ε_oracle| on resolvable points [default: 1e-5]
    #[arg(long)]
    tol: Option<f64>,
    /// Report path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Energy unit for E_J when starting from (β, γ) [default: 1]
    #[arg(long)]
    e_josephson: Option<f64>,
    /// Junction critical current I_c (statampere, Gaussian-CGS)
    #[arg(long)]
    critical_current: Option<f64>,
    /// Junction capacitance C_J (cm, Gaussian-CGS)
    #[arg(long)]
    junction_capacitance: Option<f64>,
    /// Cell period ℓ (cm)
    #[arg(long)]
    cell_period: Option<f64>,
    /// Stripe separation d (cm)
    #[arg(long)]
    stripe_separation: Option<f64>,
    /// Report path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

const DEFAULT_K_POINTS: usize = 401;
const DEFAULT_TOL: f64 = 1e-12;
const DEFAULT_ORACLE_N: usize = 64;
const DEFAULT_DELTA_TOL: f64 = 1e-5;

fn load_config(path: &Option<PathBuf>) -> Result<ConfigFile> {
    match path {
        Some(p) => ConfigFile::load(p),
        None => Ok(ConfigFile::default()),
    }
}

struct ScanSettings {
    beta: f64,
    gamma: f64,
    k_points: usize,
    tol: f64,
    oracle_n: Option<usize>,
    out: PathBuf,
    format: OutputFormat,
}

fn parse_format(s: &str) -> Result<OutputFormat> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => bail!("format must be csv or json, got {other:?}"),
    }
}

fn resolve_scan(args: &ScanArgs) -> Result<ScanSettings> {
    let cfg = load_config(&args.config)?;
    let beta = args
        .beta
        .or(cfg.get_f64("beta")?)
        .context("missing --beta (or beta= in the config file)")?;
    let gamma = args
        .gamma
        .or(cfg.get_f64("gamma")?)
        .context("missing --gamma (or gamma= in the config file)")?;
    let format = match (&args.format, cfg.get_str("format")) {
        (Some(f), _) => *f,
        (None, Some(s)) => parse_format(s)?,
        (None, None) => OutputFormat::Csv,
    };
    let out = args
        .out
        .clone()
        .or_else(|| cfg.get_str("out").map(PathBuf::from))
        .context("missing --out (or out= in the config file)")?;
    Ok(ScanSettings {
        beta,
        gamma,
        k_points: args
            .k_points
            .or(cfg.get_usize("k_points")?)
            .unwrap_or(DEFAULT_K_POINTS),
        tol: args.tol.or(cfg.get_f64("tol")?).unwrap_or(DEFAULT_TOL),
        oracle_n: args.oracle_n.or(cfg.get_usize("oracle_n")?),
        out,
        format,
    })
}

/// fig3/fig4/fig5 -> β = 0.1/0.2/0.5; panels a/b/c/d -> γ = 0.2/1/5/10.
fn parse_figure_preset(id: &str) -> Result<(f64, f64)> {
    let s = id.to_ascii_lowercase();
    let beta = match s.strip_suffix(|c: char| c.is_ascii_alphabetic() && "abcd".contains(c)) {
        Some("fig3") => 0.1,
        Some("fig4") => 0.2,
        Some("fig5") => 0.5,
        _ => bail!("unknown figure preset {id:?} (expected fig3a..fig5d)"),
    };
    let gamma = match s.chars().last() {
        Some('a') => 0.2,
        Some('b') => 1.0,
        Some('c') => 5.0,
        Some('d') => 10.0,
        _ => bail!("unknown figure panel in {id:?} (expected a, b, c or d)"),
    };
    Ok((beta, gamma))
}

fn build_report(settings: &ScanSettings) -> Result<SpectrumReport> {
    let p = DimensionlessParams::new(settings.beta, settings.gamma)?;
    let np = p.normalized();
    let grid = KGrid::uniform(settings.k_points)?;
    let scan = spectrum::scan_bands(&np, &grid, settings.tol)?;
    report::verify_band_structure(&scan)?;
    let comparison = match settings.oracle_n {
        Some(n) => Some(oracle::compare_with_solver(&np, n, settings.tol)?),
        None => None,
    };
    Ok(SpectrumReport::from_scan(
        Some(settings.beta),
        Some(settings.gamma),
        &scan,
        comparison,
    )?)
}

fn write_scan_outputs(
    settings: &ScanSettings,
    report: &SpectrumReport,
    with_pure_attractive: bool,
) -> Result<()> {
    let contents = match settings.format {
        OutputFormat::Csv => output::scan_csv(report, with_pure_attractive),
        OutputFormat::Json => output::to_json_pretty(report)?,
    };
    output::write_file(&settings.out, &contents)?;
    output::write_sidecar(&settings.out, &ParamsSidecar::new(report.params.normalized))?;
    Ok(())
}

fn cmd_scan(args: &ScanArgs) -> Result<u8> {
    let settings = resolve_scan(args)?;
    let report = build_report(&settings)?;
    write_scan_outputs(&settings, &report, false)?;
    Ok(0)
}

fn cmd_figure(args: &FigureArgs) -> Result<u8> {
    let (beta, gamma) = parse_figure_preset(&args.figure)?;
    let scan_args = ScanArgs {
        beta: Some(beta),
        gamma: Some(gamma),
        k_points: args.k_points,
        tol: args.tol,
        oracle_n: None,
        out: args.out.clone(),
        format: args.format,
        config: args.config.clone(),
    };
    let settings = resolve_scan(&scan_args)?;
    let report = build_report(&settings)?;
    write_scan_outputs(&settings, &report, true)?;
    Ok(0)
}

fn parse_range(s: &str, name: &str) -> Result<(f64, f64)> {
    let Some((lo, hi)) = s.split_once(':') else {
        bail!("{name} must look like lo:hi, got {s:?}");
    };
    let lo: f64 = lo.trim().parse().with_context(|| format!("{name} lower bound"))?;
    let hi: f64 = hi.trim().parse().with_context(|| format!("{name} upper bound"))?;
    if !(lo > 0.0) || !(hi >= lo) {
        bail!("{name} must satisfy 0 < lo <= hi, got {s:?}");
    }
    Ok((lo, hi))
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn atlas_row(beta: f64, gamma: f64, grid: &KGrid, tol: f64) -> Result<AtlasRow> {
    let np = DimensionlessParams::new(beta, gamma)?.normalized();
    let scan = spectrum::scan_bands(&np, grid, tol)?;
    let flat1 = spectrum::flatness(&scan.band1).ok();
    let offset = scan
        .band2
        .points
        .iter()
        .zip(&scan.photon)
        .filter_map(|(p, line)| p.map(|p| (p.eps - line).abs()))
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |m| m.max(d))));
    let mid = (grid.len() - 1) / 2;
    let gap_k0 = scan.band1.points[mid].map(|p| scan.continuum[mid].lo - p.eps);
    Ok(AtlasRow {
        beta,
        gamma,
        band1_bandwidth: flat1.map(|f| f.bandwidth),
        band1_relative_flatness: flat1.map(|f| f.relative),
        band2_max_photon_offset: offset,
        gap_band1_to_continuum_k0: gap_k0,
        repulsive_exists: spectrum::repulsive_existence(&np).exists,
    })
}

fn cmd_atlas(args: &AtlasArgs) -> Result<u8> {
    if args.resolution < 2 {
        bail!("resolution must be >= 2, got {}", args.resolution);
    }
    let (beta_lo, beta_hi) = parse_range(&args.beta_range, "--beta-range")?;
    let (gamma_lo, gamma_hi) = parse_range(&args.gamma_range, "--gamma-range")?;
    let k_points = args.k_points.unwrap_or(DEFAULT_K_POINTS);
    let tol = args.tol.unwrap_or(DEFAULT_TOL);
    let grid = KGrid::uniform(k_points)?;
    let betas = linspace(beta_lo, beta_hi, args.resolution);
    let gammas = linspace(gamma_lo, gamma_hi, args.resolution);
    let tiles: Vec<(f64, f64)> = betas
        .iter()
        .flat_map(|&b| gammas.iter().map(move |&g| (b, g)))
        .collect();
    let rows: Vec<AtlasRow> = tiles
        .par_iter()
        .map(|&(b, g)| atlas_row(b, g, &grid, tol))
        .collect::<Result<_>>()?;
    let contents = match args.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => output::atlas_csv(&rows),
        OutputFormat::Json => output::to_json_pretty(&AtlasReport {
            version: TOOL_VERSION.to_string(),
            format_version: FORMAT_VERSION,
            k_points,
            rows,
        })?,
    };
    output::write_file(&args.out, &contents)?;
    Ok(0)
}

#[derive(Debug, Clone, Serialize)]
struct ValidateReport {
    version: String,
    format_version: u32,
    beta: f64,
    gamma: f64,
    normalized: NormalizedParams,
    n_cells: usize,
    delta_tol: f64,
    pass: bool,
    failures: Vec<String>,
    comparison: ComparisonReport,
}

fn cmd_validate(args: &ValidateArgs) -> Result<u8> {
    let cfg = load_config(&args.config)?;
    let beta = args
        .beta
        .or(cfg.get_f64("beta")?)
        .context("missing --beta")?;
    let gamma = args
        .gamma
        .or(cfg.get_f64("gamma")?)
        .context("missing --gamma")?;
    let n_cells = args
        .oracle_n
        .or(cfg.get_usize("oracle_n")?)
        .unwrap_or(DEFAULT_ORACLE_N);
    let delta_tol = args.tol.or(cfg.get_f64("tol")?).unwrap_or(DEFAULT_DELTA_TOL);
    let np = DimensionlessParams::new(beta, gamma)?.normalized();
    let comparison = oracle::compare_with_solver(&np, n_cells, DEFAULT_TOL)?;

    let mut failures = Vec::new();
    for e in &comparison.entries {
        if let Some(d) = e.band1.delta {
            if d > delta_tol {
                failures.push(format!("band1 delta {d} exceeds {delta_tol} at K = {}", e.k));
            }
        }
        if let Some(d) = e.band2.delta {
            if d > delta_tol {
                failures.push(format!("band2 delta {d} exceeds {delta_tol} at K = {}", e.k));
            }
        }
    }
    if comparison.structure_mismatches > 0 {
        failures.push(format!(
            "{} momentum points where exactly one side found a band",
            comparison.structure_mismatches
        ));
    }
    if !comparison.multiset.pass {
        failures.push(format!(
            "block-union vs full-spectrum multiset differs by {} (tol {})",
            comparison.multiset.max_abs_diff, comparison.multiset.tol
        ));
    }

    let report = ValidateReport {
        version: TOOL_VERSION.to_string(),
        format_version: FORMAT_VERSION,
        beta,
        gamma,
        normalized: np,
        n_cells,
        delta_tol,
        pass: failures.is_empty(),
        failures,
        comparison,
    };
    let json = output::to_json_pretty(&report)?;
    match &args.out {
        Some(path) => output::write_file(path, &json)?,
        None => print!("{json}"),
    }
    Ok(if report.pass { 0 } else { 1 })
}

#[derive(Debug, Clone, Serialize)]
struct MixingAngles {
    sin_eta: f64,
    cos_eta: f64,
    tan_eta: f64,
}

#[derive(Debug, Clone, Serialize)]
struct ParamsReport {
    version: String,
    format_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    physical: Option<PhysicalParams>,
    /// Energy unit: erg when starting from physical inputs, otherwise the
    /// --e-josephson scale.
    energy_unit: String,
    dimensionless: DimensionlessParams,
    energy_scales: EnergyScales,
    derived: DerivedParams,
    mixing: MixingAngles,
    normalized: NormalizedParams,
    consistency: ConsistencyReport,
    consistency_max: f64,
}

fn cmd_params(args: &ParamsArgs) -> Result<u8> {
    let physical_flags = [
        args.critical_current,
        args.junction_capacitance,
        args.cell_period,
        args.stripe_separation,
    ];
    let (physical, energy_scales, energy_unit) = if physical_flags.iter().any(Option::is_some) {
        if physical_flags.iter().any(Option::is_none) {
            bail!(
                "physical input needs all of --critical-current, --junction-capacitance, \
                 --cell-period and --stripe-separation"
            );
        }
        let p = PhysicalParams::new(
            args.critical_current.unwrap(),
            args.junction_capacitance.unwrap(),
            args.cell_period.unwrap(),
            args.stripe_separation.unwrap(),
        )?;
        (Some(p), p.to_energy_scales(), "erg".to_string())
    } else {
        let beta = args.beta.context("missing --beta (or physical inputs)")?;
        let gamma = args.gamma.context("missing --gamma (or physical inputs)")?;
        let scale = args.e_josephson.unwrap_or(1.0);
        let p = DimensionlessParams::new(beta, gamma)?;
        (
            None,
            EnergyScales::from_dimensionless(p, scale)?,
            format!("E_J = {scale}"),
        )
    };
    let dimensionless = energy_scales.dimensionless();
    let derived = energy_scales.derived();
    let consistency = dimensionless.cross_check()?;
    let report = ParamsReport {
        version: TOOL_VERSION.to_string(),
        format_version: FORMAT_VERSION,
        physical,
        energy_unit,
        dimensionless,
        energy_scales,
        derived,
        mixing: MixingAngles {
            sin_eta: derived.sin_eta(),
            cos_eta: derived.cos_eta(),
            tan_eta: derived.tan_eta(),
        },
        normalized: dimensionless.normalized(),
        consistency,
        consistency_max: consistency.max_residual(),
    };
    let json = output::to_json_pretty(&report)?;
    match &args.out {
        Some(path) => output::write_file(path, &json)?,
        None => print!("{json}"),
    }
    Ok(0)
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Scan(args) => cmd_scan(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Atlas(args) => cmd_atlas(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Params(args) => cmd_params(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_presets() {
        assert_eq!(parse_figure_preset("fig3a").unwrap(), (0.1, 0.2));
        assert_eq!(parse_figure_preset("fig4b").unwrap(), (0.2, 1.0));
        assert_eq!(parse_figure_preset("fig5c").unwrap(), (0.5, 5.0));
        assert_eq!(parse_figure_preset("fig5d").unwrap(), (0.5, 10.0));
        assert!(parse_figure_preset("fig6a").is_err());
        assert!(parse_figure_preset("fig3e").is_err());
        assert!(parse_figure_preset("fig3").is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("0.1:0.5", "x").unwrap(), (0.1, 0.5));
        assert!(parse_range("0.5:0.1", "x").is_err());
        assert!(parse_range("0:1", "x").is_err());
        assert!(parse_range("1", "x").is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.2, 10.0, 4);
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], 0.2);
        assert_eq!(v[3], 10.0);
    }
}
