//! Parameter maps for a chain of charge qubits inside a two-stripe
//! superconducting transmission line.
//!
//! The model lives on three equivalent levels of description:
//!
//! 1. **Physical** — junction critical current I_c, junction capacitance C_J,
//!    cell period ℓ and stripe separation d (Gaussian-CGS units).
//! 2. **Energy scales** — Josephson energy E_J = Φ₀I_c/2πc, charging energy
//!    E_C = 2e²/C_J and the lattice electromagnetic energy
//!    E_em = (Φ₀/2π)²/8πℓd.
//! 3. **Dimensionless** — β = √(E_em/E_J) (the "speed of light" of the qubit
//!    chain) and γ = E_C/E_J. These two knobs fully characterize the system.
//!
//! Quantizing the field and truncating each island to its two lowest charge
//! states produces a tight-binding photon coupled to two-level emitters with
//! level splitting Δ = 2ϵ, ϵ = √(E_J² + E_C²), photon quantum
//! ħω = √(2E_em·E_C + E_C·E_J²/2ϵ), hopping J = E_em·E_C/2ħω and two
//! interaction channels: an attractive A = E_J²E_C/4ħωϵ and a repulsive
//! B = E_J·E_C²/8ħωϵ.
//!
//! The band solver works in units of 2J with
//!
//! ```text
//! a = A/2J = 1/(4β²√(1+γ²)),   b = B/2J = γa/2,
//! δ = Δ/2J = 2√(2(1+γ²)/γβ² + √(1+γ²)/2γβ⁴),
//! ħω/2J = 2 + 1/(2β²√(1+γ²)).
//! ```
//!
//! Both routes into (a, b, δ) — the closed forms above and the explicit chain
//! physical → energies → derived → ratios — are implemented independently;
//! [`cross_check`] measures their agreement and should sit at machine
//! precision for any well-conditioned input.

use crate::error::{Error, Result};
use serde::Serialize;

/// Electron charge in esu (statcoulomb), CODATA 2018.
pub const ELECTRON_CHARGE_ESU: f64 = 4.803_204_712_57e-10;
/// Planck constant in erg·s, CODATA 2018 (exact).
pub const PLANCK_ERG_S: f64 = 6.626_070_15e-27;
/// Speed of light in cm/s (exact).
pub const SPEED_OF_LIGHT_CM_S: f64 = 2.997_924_58e10;

/// Superconducting flux quantum Φ₀ = hc/2e in gauss·cm².
pub fn flux_quantum_gauss_cm2() -> f64 {
    PLANCK_ERG_S * SPEED_OF_LIGHT_CM_S / (2.0 * ELECTRON_CHARGE_ESU)
}

fn require_positive(value: f64, name: &str) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("{name} = {value}")));
    }
    if value <= 0.0 {
        return Err(Error::Domain(format!("{name} must be > 0, got {value}")));
    }
    Ok(value)
}

/// Raw junction and geometry parameters in Gaussian-CGS units.
///
/// Capacitance carries the dimension of length in this unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    /// Junction critical current I_c (statampere).
    pub critical_current: f64,
    /// Junction capacitance C_J (cm).
    pub junction_capacitance: f64,
    /// Cell period ℓ (cm).
    pub cell_period: f64,
    /// Stripe separation d (cm).
    pub stripe_separation: f64,
}

impl PhysicalParams {
    pub fn new(
        critical_current: f64,
        junction_capacitance: f64,
        cell_period: f64,
        stripe_separation: f64,
    ) -> Result<Self> {
        Ok(Self {
            critical_current: require_positive(critical_current, "critical_current")?,
            junction_capacitance: require_positive(junction_capacitance, "junction_capacitance")?,
            cell_period: require_positive(cell_period, "cell_period")?,
            stripe_separation: require_positive(stripe_separation, "stripe_separation")?,
        })
    }

    /// The three energy scales in erg.
    ///
    /// E_C = 2e²/C_J, E_J = Φ₀I_c/2πc, E_em = (Φ₀/2π)²/8πℓd.
    pub fn to_energy_scales(&self) -> EnergyScales {
        use std::f64::consts::PI;
        let phi0 = flux_quantum_gauss_cm2();
        let e_charging = 2.0 * ELECTRON_CHARGE_ESU * ELECTRON_CHARGE_ESU / self.junction_capacitance;
        let e_josephson = phi0 * self.critical_current / (2.0 * PI * SPEED_OF_LIGHT_CM_S);
        let e_em = (phi0 / (2.0 * PI)).powi(2)
            / (8.0 * PI * self.cell_period * self.stripe_separation);
        EnergyScales {
            e_josephson,
            e_charging,
            e_em,
        }
    }
}

/// The three energy scales of the model, in one consistent unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyScales {
    /// Josephson energy E_J.
    pub e_josephson: f64,
    /// Charging energy E_C.
    pub e_charging: f64,
    /// Electromagnetic (lattice field) energy E_em.
    pub e_em: f64,
}

impl EnergyScales {
    pub fn new(e_josephson: f64, e_charging: f64, e_em: f64) -> Result<Self> {
        Ok(Self {
            e_josephson: require_positive(e_josephson, "e_josephson")?,
            e_charging: require_positive(e_charging, "e_charging")?,
            e_em: require_positive(e_em, "e_em")?,
        })
    }

    /// E_J = scale, E_C = γ·scale, E_em = β²·scale.
    pub fn from_dimensionless(p: DimensionlessParams, e_josephson_scale: f64) -> Result<Self> {
        let scale = require_positive(e_josephson_scale, "e_josephson_scale")?;
        Ok(Self {
            e_josephson: scale,
            e_charging: p.gamma * scale,
            e_em: p.beta * p.beta * scale,
        })
    }

    /// β = √(E_em/E_J), γ = E_C/E_J. Exact inverse of [`Self::from_dimensionless`].
    pub fn dimensionless(&self) -> DimensionlessParams {
        DimensionlessParams {
            beta: (self.e_em / self.e_josephson).sqrt(),
            gamma: self.e_charging / self.e_josephson,
        }
    }

    /// Quantized-model couplings ħω, J, A, B, Δ, ϵ and the mixing angle.
    pub fn derived(&self) -> DerivedParams {
        let ej = self.e_josephson;
        let ec = self.e_charging;
        let eem = self.e_em;
        let qubit_energy = ej.hypot(ec);
        let photon_quantum = (2.0 * eem * ec + ec * ej * ej / (2.0 * qubit_energy)).sqrt();
        let hopping = eem * ec / (2.0 * photon_quantum);
        let attractive = ej * ej * ec / (4.0 * photon_quantum * qubit_energy);
        let repulsive = ej * ec * ec / (8.0 * photon_quantum * qubit_energy);
        DerivedParams {
            photon_quantum,
            hopping,
            attractive,
            repulsive,
            splitting: 2.0 * qubit_energy,
            qubit_energy,
            mixing_angle: (ej / ec).atan(),
            e_josephson: ej,
            e_charging: ec,
        }
    }
}

/// The two dimensionless knobs (β, γ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessParams {
    pub beta: f64,
    pub gamma: f64,
}

impl DimensionlessParams {
    /// Both knobs must be strictly positive: γ → 0 sends δ to infinity, so
    /// zero is rejected rather than clamped.
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        Ok(Self {
            beta: require_positive(beta, "beta")?,
            gamma: require_positive(gamma, "gamma")?,
        })
    }

    /// Closed-form normalized parameters (a, b, δ, ħω/2J).
    pub fn normalized(&self) -> NormalizedParams {
        let b2 = self.beta * self.beta;
        let root = (1.0 + self.gamma * self.gamma).sqrt();
        let a = 1.0 / (4.0 * b2 * root);
        let delta = 2.0
            * (2.0 * (1.0 + self.gamma * self.gamma) / (self.gamma * b2)
                + root / (2.0 * self.gamma * b2 * b2))
                .sqrt();
        NormalizedParams {
            a,
            b: self.gamma * a / 2.0,
            delta,
            homega: 2.0 + 1.0 / (2.0 * b2 * root),
        }
    }

    /// Normalized parameters through the explicit energy-scale chain, with
    /// E_J set to an arbitrary positive scale. Algebraically identical to
    /// [`Self::normalized`]; used as its independent cross-check.
    pub fn normalized_via_energies(&self, e_josephson_scale: f64) -> Result<NormalizedParams> {
        let scales = EnergyScales::from_dimensionless(*self, e_josephson_scale)?;
        let d = scales.derived();
        let two_j = 2.0 * d.hopping;
        Ok(NormalizedParams {
            a: d.attractive / two_j,
            b: d.repulsive / two_j,
            delta: d.splitting / two_j,
            homega: d.photon_quantum / two_j,
        })
    }

    /// Relative residuals between the two routes into (a, b, δ, ħω/2J).
    pub fn cross_check(&self) -> Result<ConsistencyReport> {
        let direct = self.normalized();
        let via = self.normalized_via_energies(1.0)?;
        let rel = |x: f64, y: f64| ((x - y) / x).abs();
        Ok(ConsistencyReport {
            residual_a: rel(direct.a, via.a),
            residual_b: rel(direct.b, via.b),
            residual_delta: rel(direct.delta, via.delta),
            residual_homega: rel(direct.homega, via.homega),
        })
    }
}

/// Couplings of the quantized model, in the same unit as the input energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    /// Photon quantum ħω.
    pub photon_quantum: f64,
    /// Photon inter-cell tunneling amplitude J.
    pub hopping: f64,
    /// Attractive interaction strength A.
    pub attractive: f64,
    /// Repulsive interaction strength B.
    pub repulsive: f64,
    /// Two-level splitting Δ = 2ϵ.
    pub splitting: f64,
    /// ϵ = √(E_J² + E_C²).
    pub qubit_energy: f64,
    /// Mixing angle of the charge-basis rotation, tan η = E_J/E_C.
    pub mixing_angle: f64,
    #[serde(skip)]
    e_josephson: f64,
    #[serde(skip)]
    e_charging: f64,
}

impl DerivedParams {
    /// sin η of the diagonalizing rotation. The transformation that takes the
    /// charge basis to the energy eigenbasis uses the branch sin η = -E_J/ϵ,
    /// cos η = +E_C/ϵ while quoting the magnitude relation tan η = E_J/E_C;
    /// the accessors reproduce that convention literally.
    pub fn sin_eta(&self) -> f64 {
        -self.e_josephson / self.qubit_energy
    }

    pub fn cos_eta(&self) -> f64 {
        self.e_charging / self.qubit_energy
    }

    pub fn tan_eta(&self) -> f64 {
        self.e_josephson / self.e_charging
    }
}

/// Working currency of the band solver: every energy in units of 2J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizedParams {
    /// Attractive coupling a = A/2J.
    pub a: f64,
    /// Repulsive coupling b = B/2J = γa/2.
    pub b: f64,
    /// Two-level splitting δ = Δ/2J.
    pub delta: f64,
    /// Photon quantum ħω/2J.
    pub homega: f64,
}

impl NormalizedParams {
    /// Same parameters with the repulsive channel switched off. The resulting
    /// band is the pure-attractive defect band δ - √(a² + cos²(K/2)).
    pub fn without_repulsion(&self) -> Self {
        Self { b: 0.0, ..*self }
    }
}

/// Residuals of the normalized-parameter identities, one per quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub residual_a: f64,
    pub residual_b: f64,
    pub residual_delta: f64,
    pub residual_homega: f64,
}

impl ConsistencyReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_a
            .max(self.residual_b)
            .max(self.residual_delta)
            .max(self.residual_homega)
    }
}

/// The twelve (β, γ) combinations used throughout the tests and the figure
/// presets: β ∈ {0.1, 0.2, 0.5} × γ ∈ {0.2, 1, 5, 10}.
pub const REFERENCE_COMBOS: [(f64, f64); 12] = [
    (0.1, 0.2),
    (0.1, 1.0),
    (0.1, 5.0),
    (0.1, 10.0),
    (0.2, 0.2),
    (0.2, 1.0),
    (0.2, 5.0),
    (0.2, 10.0),
    (0.5, 0.2),
    (0.5, 1.0),
    (0.5, 5.0),
    (0.5, 10.0),
];
