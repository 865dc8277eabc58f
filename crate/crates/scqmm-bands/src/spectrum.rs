//! Bound-state bands of the qubit-photon problem at fixed total
//! quasi-momentum K.
//!
//! In units of 2J (cell period ℓ ≡ 1, photon offset ħω removed) the free
//! qubit-photon pairs fill the continuum ε(q, K) = δ - cos q · cos(K/2) and a
//! bare photon disperses along ε = -cos K. Bound states are roots of
//!
//! ```text
//! √((δ-ε)² - cos²(K/2)) = a - b²/(ε + cos K)        (ε < δ - |cos(K/2)|)
//! ```
//!
//! i.e. zeros of the residual G(ε) = lhs - rhs, where the energy-dependent
//! defect strength a'(K, ε) = -a + b²/(ε + cos K) combines the attractive and
//! repulsive interaction channels. Only the attractive branch (ε below the
//! continuum, a' < 0) supports solutions at realistic couplings; it carries
//! two bands:
//!
//! * **Band 1** — qubit-like, near δ - a. G is strictly decreasing on the
//!   bracket (-cos K + b²/a, δ - |cos(K/2)|): the left end pins a' = 0 (G > 0)
//!   and the right end pins the square root to zero (G < 0), so bisection is
//!   safe and the root unique.
//! * **Band 2** — photon-like, pinned slightly below the photon line by the
//!   pole of a'. On (-∞, -cos K) G again decreases monotonically from +∞ to
//!   -∞; the bracket is grown geometrically away from the pole starting at
//!   the leading-order offset b²/(δ + a).
//!
//! At the zone edge K = ±π the square root collapses and the equation becomes
//! an exact quadratic; its two roots are the closed-form band edges used to
//! cross-check the solver.

use crate::error::{Error, Result};
use crate::params::NormalizedParams;
use serde::Serialize;
use std::f64::consts::PI;

/// Quasi-momentum in radians per cell, restricted to the first Brillouin
/// zone [-π, π].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Momentum(f64);

impl Momentum {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::NonFinite(format!("momentum {k}")));
        }
        if k.abs() > PI {
            return Err(Error::Domain(format!(
                "momentum {k} outside the Brillouin zone [-π, π]"
            )));
        }
        Ok(Self(k))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// |cos(K/2)|, the half-width of the continuum at this K.
    fn cos_half(self) -> f64 {
        (self.0 / 2.0).cos().abs()
    }
}

/// Uniform symmetric grid over [-π, π] with an odd point count, so that
/// K = 0 and K = ±π are always on-grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KGrid {
    k_points: usize,
}

impl KGrid {
    pub fn uniform(k_points: usize) -> Result<Self> {
        if k_points < 3 || k_points % 2 == 0 {
            return Err(Error::Domain(format!(
                "k_points must be odd and >= 3, got {k_points}"
            )));
        }
        Ok(Self { k_points })
    }

    pub fn len(&self) -> usize {
        self.k_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// i-th grid point; exact negation symmetry K(i) = -K(n-1-i).
    pub fn point(&self, i: usize) -> Momentum {
        debug_assert!(i < self.k_points);
        let mid = ((self.k_points - 1) / 2) as f64;
        Momentum(PI * (i as f64 - mid) / mid)
    }

    pub fn iter(&self) -> impl Iterator<Item = Momentum> + '_ {
        (0..self.k_points).map(move |i| self.point(i))
    }
}

/// Continuum window [δ - |cos(K/2)|, δ + |cos(K/2)|] at one K; collapses to a
/// point at the zone edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuumSlice {
    pub k: Momentum,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Band {
    Band1,
    Band2,
}

/// One converged bound-state energy at one K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandPoint {
    pub k: Momentum,
    /// Bound-state energy ε = (E - ħω)/2J.
    pub eps: f64,
    pub band: Band,
    /// Defect-equation residual G(ε) at the returned root.
    pub residual: f64,
    /// Effective coupling a'(K, ε) at the root; negative on this branch.
    pub a_prime: f64,
}

/// ε(q, K) = δ - cos q · cos(K/2), the free qubit-photon pair dispersion.
pub fn continuum_dispersion(q: Momentum, k: Momentum, np: &NormalizedParams) -> f64 {
    np.delta - q.value().cos() * (k.value() / 2.0).cos()
}

/// Lower and upper continuum edges at K.
pub fn continuum_edges(k: Momentum, np: &NormalizedParams) -> ContinuumSlice {
    let c = k.cos_half();
    ContinuumSlice {
        k,
        lo: np.delta - c,
        hi: np.delta + c,
    }
}

/// Bare photon dispersion -cos K (units of 2J, offset ħω removed).
pub fn photon_line(k: Momentum) -> f64 {
    -k.value().cos()
}

/// Defect band of the purely attractive problem (b = 0):
/// δ - √(a² + cos²(K/2)). Reference curve for the full Band 1.
pub fn pure_attractive_reference(k: Momentum, np: &NormalizedParams) -> f64 {
    let c = k.cos_half();
    np.delta - (np.a * np.a + c * c).sqrt()
}

fn pole_distance(eps: f64, k: Momentum) -> f64 {
    eps + k.value().cos()
}

/// Effective coupling a'(K, ε) = -a + b²/(ε + cos K).
///
/// With b = 0 the coupling is -a for every ε (the pole carries zero weight).
pub fn effective_coupling(eps: f64, k: Momentum, np: &NormalizedParams) -> Result<f64> {
    if np.b == 0.0 {
        return Ok(-np.a);
    }
    let d = pole_distance(eps, k);
    if d.abs() <= f64::EPSILON * eps.abs().max(1.0) {
        return Err(Error::Pole {
            eps,
            k: k.value(),
        });
    }
    Ok(-np.a + np.b * np.b / d)
}

/// G(ε) for the attractive branch: √((δ-ε)² - cos²(K/2)) - (a - b²/(ε+cos K)).
///
/// Defined for ε strictly below the lower continuum edge; the root condition
/// G = 0 is the bound-state equation with sgn(ε-δ) = -1.
pub fn residual(eps: f64, k: Momentum, np: &NormalizedParams) -> Result<f64> {
    let c = k.cos_half();
    if !(eps < np.delta - c) {
        return Err(Error::InsideContinuum {
            eps,
            k: k.value(),
        });
    }
    let ap = effective_coupling(eps, k, np)?;
    Ok(eval_g_parts(eps, c, np.delta, ap))
}

/// Residual from precomputed pieces. `(δ-ε)² - c²` can round to a tiny
/// negative number when ε sits at the collapsed zone-edge continuum; clamp.
fn eval_g_parts(eps: f64, c: f64, delta: f64, a_prime: f64) -> f64 {
    let d = delta - eps;
    let disc = (d * d - c * c).max(0.0);
    disc.sqrt() + a_prime
}

/// Unchecked residual used inside the bracketing solvers (the brackets keep
/// ε at or below the lower continuum edge by construction).
fn eval_g(eps: f64, k: Momentum, np: &NormalizedParams) -> f64 {
    let coupling = if np.b == 0.0 {
        -np.a
    } else {
        -np.a + np.b * np.b / pole_distance(eps, k)
    };
    eval_g_parts(eps, k.cos_half(), np.delta, coupling)
}

/// Bisection for a strictly decreasing g with g(lo) > 0 > g(hi). The bracket
/// is shrunk until the midpoint is no longer strictly inside it, i.e. to
/// floating-point resolution; `tol` only caps how coarse a result may be
/// accepted.
fn bisect_decreasing(
    g: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    max_iter: usize,
) -> f64 {
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

const MAX_BISECTION_ITER: usize = 200;

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    Ok(())
}

fn make_point(eps: f64, k: Momentum, band: Band, np: &NormalizedParams) -> Result<BandPoint> {
    Ok(BandPoint {
        k,
        eps,
        band,
        residual: eval_g(eps, k, np),
        a_prime: effective_coupling(eps, k, np)?,
    })
}

/// Band 1: the unique root of G in (-cos K + b²/a, δ - |cos(K/2)|).
///
/// Returns `None` when the bracket is empty or carries no sign change (for
/// instance at couplings where the repulsive channel overwhelms the
/// attractive one and pushes the left end past the continuum).
pub fn solve_band1(k: Momentum, np: &NormalizedParams, tol: f64) -> Result<Option<BandPoint>> {
    check_tol(tol)?;
    let pole = -k.value().cos();
    let offset = if np.b == 0.0 { 0.0 } else { np.b * np.b / np.a };
    let lo = pole + offset;
    let hi = np.delta - k.cos_half();
    if !(lo < hi) || !lo.is_finite() {
        return Ok(None);
    }
    // Monotone-bracket guard: G must enter positive and leave negative.
    if !(eval_g(lo, k, np) > 0.0) || !(eval_g(hi, k, np) < 0.0) {
        return Ok(None);
    }
    let eps = bisect_decreasing(|e| eval_g(e, k, np), lo, hi, MAX_BISECTION_ITER);
    Ok(Some(make_point(eps, k, Band::Band1, np)?))
}

/// Band 2: the unique root of G below the photon line -cos K.
///
/// The root distance from the pole spans orders of magnitude across the
/// (β, γ) plane, so the bracket is discovered by geometric stepping from the
/// leading-order offset b²/(δ + a). With b = 0 the pole disappears and no
/// second root exists.
pub fn solve_band2(k: Momentum, np: &NormalizedParams, tol: f64) -> Result<Option<BandPoint>> {
    check_tol(tol)?;
    if np.b == 0.0 {
        return Ok(None);
    }
    let pole = -k.value().cos();
    let mut step = np.b * np.b / (np.delta + np.a);
    if !(step > 0.0) || !step.is_finite() {
        return Ok(None);
    }

    // Right end: walk toward the pole until G < 0 (the b²-divergence side).
    let floor = 4.0 * f64::EPSILON * pole.abs().max(1.0);
    let mut found_hi = false;
    for _ in 0..MAX_BISECTION_ITER {
        if eval_g(pole - step, k, np) < 0.0 {
            found_hi = true;
            break;
        }
        step /= 2.0;
        if step < floor {
            break;
        }
    }
    if !found_hi {
        return Ok(None);
    }
    let hi = pole - step;

    // Left end: double the step away from the pole until G > 0.
    let mut span = step;
    let mut found_lo = false;
    for _ in 0..MAX_BISECTION_ITER {
        span *= 2.0;
        if !span.is_finite() {
            break;
        }
        if eval_g(pole - span, k, np) > 0.0 {
            found_lo = true;
            break;
        }
    }
    if !found_lo {
        return Ok(None);
    }
    let lo = pole - span;

    let eps = bisect_decreasing(|e| eval_g(e, k, np), lo, hi, MAX_BISECTION_ITER);
    Ok(Some(make_point(eps, k, Band::Band2, np)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Attractive,
    Repulsive,
}

/// Zone-edge energies ε(±π), labeled by the ± sign of the quadratic solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandEdges {
    pub eps_plus: f64,
    pub eps_minus: f64,
}

/// Closed-form solutions of the zone-edge quadratic
/// (ε - δ)(ε + cos π) = ∓a(ε + cos π) + b² (attractive/repulsive).
///
/// The attractive discriminant (1-δ+a)² + 4b² is always non-negative; the
/// repulsive one can go negative, in which case `None` marks that no real
/// solution exists. The smaller root is recovered from the product of roots
/// to avoid cancellation.
pub fn band_edge_closed_form(np: &NormalizedParams, branch: Branch) -> Option<BandEdges> {
    let (sum, t, product) = match branch {
        Branch::Attractive => (
            1.0 + np.delta - np.a,
            1.0 - np.delta + np.a,
            np.delta - np.a - np.b * np.b,
        ),
        Branch::Repulsive => (
            1.0 + np.delta + np.a,
            1.0 - np.delta - np.a,
            np.delta + np.a + np.b * np.b,
        ),
    };
    let disc = match branch {
        Branch::Attractive => t * t + 4.0 * np.b * np.b,
        Branch::Repulsive => t * t - 4.0 * np.b * np.b,
    };
    if disc < 0.0 {
        return None;
    }
    let r = disc.sqrt();
    let hi = 0.5 * (sum + r);
    let lo = if hi != 0.0 { product / hi } else { 0.5 * (sum - r) };
    // ε± = (sum ± t·√(1 + (2b/t)²))/2; the sign of t decides which of the
    // two ordered roots carries the "+" label.
    let (eps_plus, eps_minus) = if t < 0.0 { (lo, hi) } else { (hi, lo) };
    Some(BandEdges {
        eps_plus,
        eps_minus,
    })
}

/// First-order expansions of the zone-edge energies in the small parameter
/// x = aγ/(1 - δ ∓ a).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticEdges {
    pub eps_plus: f64,
    pub eps_minus: f64,
    /// Expansion parameter x; the truncation error scales as x².
    pub expansion_parameter: f64,
    /// False when |x| >= 1 and the expansion carries no validity.
    pub within_validity: bool,
}

/// Asymptotic zone-edge energies. Note (aγ/2)² = b².
pub fn band_edge_asymptotic(np: &NormalizedParams, branch: Branch) -> AsymptoticEdges {
    let b2 = np.b * np.b;
    let (eps_minus, eps_plus, denom) = match branch {
        Branch::Attractive => {
            let denom = 1.0 - np.delta + np.a;
            (np.delta - np.a - b2 / denom, 1.0 + b2 / denom, denom)
        }
        Branch::Repulsive => {
            let denom = 1.0 - np.delta - np.a;
            (np.delta + np.a + b2 / denom, 1.0 + b2 / denom, denom)
        }
    };
    let x = 2.0 * np.b / denom;
    AsymptoticEdges {
        eps_plus,
        eps_minus,
        expansion_parameter: x,
        within_validity: x.abs() < 1.0,
    }
}

/// Existence test for repulsive-branch bound states: δ + a < 1 + a(γ/2)²,
/// with a(γ/2)² = b²/a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepulsiveExistence {
    pub exists: bool,
    pub margin: f64,
}

pub fn repulsive_existence(np: &NormalizedParams) -> RepulsiveExistence {
    let quad = if np.b == 0.0 { 0.0 } else { np.b * np.b / np.a };
    let margin = 1.0 + quad - np.delta - np.a;
    RepulsiveExistence {
        exists: margin > 0.0,
        margin,
    }
}

/// One band over a K grid; unsolved points stay as explicit gaps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandCurve {
    pub band: Band,
    pub params: NormalizedParams,
    pub grid: KGrid,
    pub points: Vec<Option<BandPoint>>,
}

impl BandCurve {
    pub fn solved(&self) -> impl Iterator<Item = &BandPoint> {
        self.points.iter().flatten()
    }
}

/// Full scan output: both bands plus the free-state reference curves.
#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    pub params: NormalizedParams,
    pub grid: KGrid,
    pub band1: BandCurve,
    pub band2: BandCurve,
    pub continuum: Vec<ContinuumSlice>,
    pub photon: Vec<f64>,
    /// Per-point solver failures, recorded without aborting the scan.
    pub solve_errors: Vec<(Band, usize, String)>,
}

/// Solve both bands on every grid point. Points where a band is absent are
/// gaps, never interpolated: near-degeneracy of Band 2 with the photon line
/// is physically meaningful.
pub fn scan_bands(np: &NormalizedParams, grid: &KGrid, tol: f64) -> Result<BandStructure> {
    check_tol(tol)?;
    let n = grid.len();
    let mut band1 = Vec::with_capacity(n);
    let mut band2 = Vec::with_capacity(n);
    let mut continuum = Vec::with_capacity(n);
    let mut photon = Vec::with_capacity(n);
    let mut solve_errors = Vec::new();
    for (i, k) in grid.iter().enumerate() {
        continuum.push(continuum_edges(k, np));
        photon.push(photon_line(k));
        match solve_band1(k, np, tol) {
            Ok(p) => band1.push(p),
            Err(e) => {
                solve_errors.push((Band::Band1, i, e.to_string()));
                band1.push(None);
            }
        }
        match solve_band2(k, np, tol) {
            Ok(p) => band2.push(p),
            Err(e) => {
                solve_errors.push((Band::Band2, i, e.to_string()));
                band2.push(None);
            }
        }
    }
    Ok(BandStructure {
        params: *np,
        grid: *grid,
        band1: BandCurve {
            band: Band::Band1,
            params: *np,
            grid: *grid,
            points: band1,
        },
        band2: BandCurve {
            band: Band::Band2,
            params: *np,
            grid: *grid,
            points: band2,
        },
        continuum,
        photon,
        solve_errors,
    })
}

/// Bandwidth of a solved curve, absolute and relative to δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Flatness {
    pub bandwidth: f64,
    pub relative: f64,
}

pub fn flatness(curve: &BandCurve) -> Result<Flatness> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in curve.solved() {
        lo = lo.min(p.eps);
        hi = hi.max(p.eps);
    }
    if lo > hi {
        return Err(Error::Domain("flatness of an empty band curve".into()));
    }
    let bandwidth = hi - lo;
    Ok(Flatness {
        bandwidth,
        relative: bandwidth / curve.params.delta,
    })
}
