//! Brute-force verifier: exact diagonalization of the projected lattice
//! Hamiltonian on a finite ring of N cells.
//!
//! The model is restricted to the subspace spanned by one photon with all
//! qubits in the ground state (amplitudes u_m) and one photon plus one
//! excited qubit (amplitudes Ψ_{m,n}, photon at m, qubit at n). In units of
//! 2J with the one-photon offset ħω removed, the matrix elements are
//!
//! * u-sector: nearest-neighbor hopping -1/2 on a periodic ring,
//! * Ψ-sector: diagonal δ, symmetrized hopping -1/4 for each of the four
//!   moves m ± 1 and n ± 1 (the amplitude equations split the photon hop
//!   between the two indices), defect -a on the diagonal sites Ψ_{m,m},
//! * coupling b between u_m and Ψ_{m,m}.
//!
//! Total momentum is conserved. Substituting
//! Ψ_{m,n} = e^{iK(m+n)/2} Φ_{m-n} / √N maps each momentum sector
//! K = 2πj/N onto an (N+1)-dimensional block: a relative-coordinate chain
//! Φ_0..Φ_{N-1} with hopping -cos(K/2)/2, defect -a and coupling b at l = 0,
//! plus the photon amplitude u_K at energy -cos K. Ring periodicity forces
//! Φ_{l+N} = e^{-iKN/2} Φ_l, so the single wrap bond carries the twist
//! (-1)^j and every block stays real symmetric.
//!
//! Eliminating u_K at energy ε adds exactly b²/(ε + cos K) to the l = 0
//! defect, which ties the blocks to the transcendental band equation: every
//! block eigenvalue outside the continuum satisfies the discrete secular
//! equation
//!
//! ```text
//! 1 = (1/N) Σ_q a'(K, ε) / (ε - δ + cos(K/2) cos q)
//! ```
//!
//! over the twisted relative momenta q = (2πs + πj)/N. Its N → ∞ limit is
//! the band solver's equation, which makes the comparison non-circular.

use crate::error::{Error, Result};
use crate::params::NormalizedParams;
use crate::spectrum::{self, Momentum};
use nalgebra::DMatrix;
use serde::Serialize;
use std::f64::consts::PI;

/// Tolerance of the block-union versus full-spectrum multiset identity.
pub const BLOCK_COMPLETENESS_TOL: f64 = 1e-9;

/// Eigenvalues this close to the continuum edge (in units of the mean free
/// level spacing at that K) are not treated as separated bound states.
const SPACING_MULTIPLE: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Representation {
    FullRealSpace,
    KBlock(usize),
}

/// A finite-N projected model, either the full (N + N²)-dimensional
/// real-space Hamiltonian or one (N+1)-dimensional momentum block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RingModel {
    pub n_cells: usize,
    pub np: NormalizedParams,
    pub representation: Representation,
}

fn check_ring_size(n_cells: usize) -> Result<()> {
    if n_cells < 4 {
        return Err(Error::Domain(format!(
            "ring needs at least 4 cells, got {n_cells}"
        )));
    }
    if n_cells % 2 != 0 {
        return Err(Error::Domain(format!(
            "odd rings are unsupported (half-integer momentum quantization), got {n_cells}"
        )));
    }
    Ok(())
}

impl RingModel {
    pub fn full(n_cells: usize, np: NormalizedParams) -> Result<Self> {
        check_ring_size(n_cells)?;
        Ok(Self {
            n_cells,
            np,
            representation: Representation::FullRealSpace,
        })
    }

    pub fn k_block(n_cells: usize, np: NormalizedParams, k_index: usize) -> Result<Self> {
        check_ring_size(n_cells)?;
        if k_index >= n_cells {
            return Err(Error::Domain(format!(
                "k_index {k_index} out of range for {n_cells} cells"
            )));
        }
        Ok(Self {
            n_cells,
            np,
            representation: Representation::KBlock(k_index),
        })
    }

    pub fn dim(&self) -> usize {
        match self.representation {
            Representation::FullRealSpace => self.n_cells + self.n_cells * self.n_cells,
            Representation::KBlock(_) => self.n_cells + 1,
        }
    }

    /// Center-of-mass momentum of a block, folded into (-π, π].
    pub fn momentum(&self) -> Option<Momentum> {
        match self.representation {
            Representation::FullRealSpace => None,
            Representation::KBlock(j) => {
                Some(Momentum::new(ring_momentum(j, self.n_cells)).expect("folded momentum"))
            }
        }
    }
}

/// K_j = 2πj/N folded into (-π, π].
pub fn ring_momentum(k_index: usize, n_cells: usize) -> f64 {
    let raw = 2.0 * PI * k_index as f64 / n_cells as f64;
    if raw > PI {
        raw - 2.0 * PI
    } else {
        raw
    }
}

/// Full real-space Hamiltonian, basis {u_m} then {Ψ_{m,n} at N + mN + n}.
pub fn build_full_hamiltonian(model: &RingModel) -> Result<DMatrix<f64>> {
    if model.representation != Representation::FullRealSpace {
        return Err(Error::Domain(
            "build_full_hamiltonian requires the full_real_space representation".into(),
        ));
    }
    let n = model.n_cells;
    let np = model.np;
    let dim = model.dim();
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    let psi = |m: usize, q: usize| n + m * n + q;
    for m in 0..n {
        let right = (m + 1) % n;
        h[(m, right)] += -0.5;
        h[(right, m)] += -0.5;
        // Coupling feeds the photon at m into the doubly-occupied site m.
        h[(m, psi(m, m))] = np.b;
        h[(psi(m, m), m)] = np.b;
    }
    for m in 0..n {
        for q in 0..n {
            let i = psi(m, q);
            h[(i, i)] = np.delta + if m == q { -np.a } else { 0.0 };
            let mp = psi((m + 1) % n, q);
            let qp = psi(m, (q + 1) % n);
            h[(i, mp)] += -0.25;
            h[(mp, i)] += -0.25;
            h[(i, qp)] += -0.25;
            h[(qp, i)] += -0.25;
        }
    }
    Ok(h)
}

/// Momentum block at K = 2πj/N, basis {Φ_0..Φ_{N-1}, u_K}. The wrap bond
/// between Φ_{N-1} and Φ_0 carries the twist (-1)^j.
pub fn build_k_block(model: &RingModel) -> Result<DMatrix<f64>> {
    let j = match model.representation {
        Representation::KBlock(j) => j,
        Representation::FullRealSpace => {
            return Err(Error::Domain(
                "build_k_block requires a k_block representation".into(),
            ))
        }
    };
    let n = model.n_cells;
    let np = model.np;
    let angle = 2.0 * PI * j as f64 / n as f64;
    let hop = -0.5 * (angle / 2.0).cos();
    let twist = if j % 2 == 0 { 1.0 } else { -1.0 };
    let mut h = DMatrix::<f64>::zeros(n + 1, n + 1);
    for l in 0..n {
        h[(l, l)] = np.delta;
    }
    h[(0, 0)] -= np.a;
    for l in 0..n - 1 {
        h[(l, l + 1)] += hop;
        h[(l + 1, l)] += hop;
    }
    h[(n - 1, 0)] += hop * twist;
    h[(0, n - 1)] += hop * twist;
    h[(n, n)] = -angle.cos();
    h[(0, n)] = np.b;
    h[(n, 0)] = np.b;
    Ok(h)
}

/// Free levels of a block (a = b = 0): δ - cos(K/2)·cos q over the twisted
/// relative momenta, plus the photon level -cos K.
pub fn free_block_levels(model: &RingModel) -> Result<Vec<f64>> {
    let j = match model.representation {
        Representation::KBlock(j) => j,
        Representation::FullRealSpace => {
            return Err(Error::Domain("free_block_levels needs a k_block".into()))
        }
    };
    let n = model.n_cells;
    let angle = 2.0 * PI * j as f64 / n as f64;
    let c = (angle / 2.0).cos();
    let mut levels: Vec<f64> = (0..n)
        .map(|s| model.np.delta - c * twisted_momentum(s, j, n).cos())
        .collect();
    levels.push(-angle.cos());
    Ok(levels)
}

/// Relative momentum q_s = (2πs + πj)/N on the (-1)^j-twisted ring.
fn twisted_momentum(s: usize, j: usize, n: usize) -> f64 {
    (2.0 * PI * s as f64 + PI * j as f64) / n as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelClass {
    BoundBelow,
    Continuum,
    BoundAbove,
}

/// Sorted spectrum of one model, with eigenvalues classified against the
/// free continuum window at the relevant K.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    /// Column eigenvectors matching `eigenvalues`; kept only for blocks.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub classes: Vec<LevelClass>,
}

/// Sorted dense symmetric eigendecomposition. Rejects non-finite entries and
/// any matrix that is not exactly equal to its transpose.
pub fn dense_symmetric_eigen(
    matrix: &DMatrix<f64>,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>)> {
    if !matrix.is_square() {
        return Err(Error::Domain("eigensolve needs a square matrix".into()));
    }
    let dim = matrix.nrows();
    for i in 0..dim {
        for j in 0..=i {
            let v = matrix[(i, j)];
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("matrix entry ({i}, {j}) = {v}")));
            }
            if v != matrix[(j, i)] {
                return Err(Error::Domain(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    if want_vectors {
        let eig = matrix.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let eigenvectors: Vec<Vec<f64>> = order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect();
        Ok((eigenvalues, Some(eigenvectors)))
    } else {
        let mut eigenvalues: Vec<f64> = matrix.clone().symmetric_eigenvalues().iter().copied().collect();
        eigenvalues.sort_by(f64::total_cmp);
        Ok((eigenvalues, None))
    }
}

/// Numerical noise floor for spectral separations, scaled to the matrix norm.
fn noise_floor(model: &RingModel) -> f64 {
    10.0 * model.n_cells as f64 * f64::EPSILON * (model.np.delta + 2.0)
}

/// Continuum half-width |cos(K/2)| seen by this model (1 for the full
/// real-space spectrum, which unions every K sector).
fn continuum_half_width(model: &RingModel) -> f64 {
    match model.representation {
        Representation::FullRealSpace => 1.0,
        Representation::KBlock(j) => {
            (PI * j as f64 / model.n_cells as f64).cos().abs()
        }
    }
}

/// Separation below which an eigenvalue cannot be told apart from the free
/// spectrum: five mean level spacings of the N-level continuum at this K,
/// never less than the numerical noise floor.
pub fn resolvability_threshold(model: &RingModel) -> f64 {
    let spacing = 2.0 * continuum_half_width(model) / model.n_cells as f64;
    (SPACING_MULTIPLE * spacing).max(noise_floor(model))
}

/// Diagonalize and classify one model.
pub fn eigensolve(model: &RingModel, matrix: &DMatrix<f64>) -> Result<SpectralResult> {
    if matrix.nrows() != model.dim() {
        return Err(Error::Domain(format!(
            "matrix dimension {} does not match the model dimension {}",
            matrix.nrows(),
            model.dim()
        )));
    }
    let want_vectors = matches!(model.representation, Representation::KBlock(_));
    let (eigenvalues, eigenvectors) = dense_symmetric_eigen(matrix, want_vectors)?;
    let c = continuum_half_width(model);
    let tau = resolvability_threshold(model);
    let (lo, hi) = (model.np.delta - c, model.np.delta + c);
    let classes = eigenvalues
        .iter()
        .map(|&e| {
            if e < lo - tau {
                LevelClass::BoundBelow
            } else if e > hi + tau {
                LevelClass::BoundAbove
            } else {
                LevelClass::Continuum
            }
        })
        .collect();
    Ok(SpectralResult {
        eigenvalues,
        eigenvectors,
        classes,
    })
}

/// Outcome of looking for one band in one block spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", content = "eps", rename_all = "snake_case")]
pub enum BandExtraction {
    /// A single well-separated eigenvalue.
    Resolved(f64),
    /// A candidate exists but sits closer to the free spectrum than the
    /// finite-size resolvability threshold.
    Unresolvable,
    Absent,
}

impl BandExtraction {
    pub fn resolved(&self) -> Option<f64> {
        match self {
            BandExtraction::Resolved(e) => Some(*e),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtractedBands {
    pub band1: BandExtraction,
    pub band2: BandExtraction,
}

/// Pick the two bound states out of a block spectrum: Band 1 between the
/// photon line and the lower continuum edge, Band 2 below the photon line.
pub fn extract_bound_states(model: &RingModel, result: &SpectralResult) -> Result<ExtractedBands> {
    let k = model
        .momentum()
        .ok_or_else(|| Error::Domain("bound-state extraction needs a k_block result".into()))?;
    let photon = spectrum::photon_line(k);
    let lo_edge = model.np.delta - continuum_half_width(model);
    let floor = noise_floor(model);
    let tau = resolvability_threshold(model);

    let mut band1 = Vec::new();
    let mut band2 = Vec::new();
    for &e in &result.eigenvalues {
        if e < photon - floor {
            band2.push(e);
        } else if e > photon + floor && e < lo_edge - floor {
            band1.push(e);
        }
    }

    let pick = |cands: &[f64], separation: &dyn Fn(f64) -> f64, name: &str| -> Result<BandExtraction> {
        let resolved: Vec<f64> = cands
            .iter()
            .copied()
            .filter(|&e| separation(e) > tau)
            .collect();
        match resolved.len() {
            0 if cands.is_empty() => Ok(BandExtraction::Absent),
            0 => Ok(BandExtraction::Unresolvable),
            1 => Ok(BandExtraction::Resolved(resolved[0])),
            n => Err(Error::Ambiguous(format!(
                "{n} separated candidates for {name} at K index {:?}",
                model.representation
            ))),
        }
    };

    Ok(ExtractedBands {
        band1: pick(&band1, &|e| lo_edge - e, "band 1")?,
        band2: pick(&band2, &|e| photon - e, "band 2")?,
    })
}

/// Residual of the discrete secular equation for one block eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecularResidual {
    pub eigenvalue: f64,
    pub deviation: f64,
}

/// Check every bound-classified block eigenvalue against the discrete
/// secular equation. With b = 0 the photon level decouples and is skipped.
pub fn secular_residuals(model: &RingModel, result: &SpectralResult) -> Result<Vec<SecularResidual>> {
    let j = match model.representation {
        Representation::KBlock(j) => j,
        Representation::FullRealSpace => {
            return Err(Error::Domain("secular check needs a k_block".into()))
        }
    };
    let n = model.n_cells;
    let np = model.np;
    let angle = 2.0 * PI * j as f64 / n as f64;
    let c = (angle / 2.0).cos();
    let cos_k = angle.cos();
    let floor = noise_floor(model);
    let mut out = Vec::new();
    for (idx, &eps) in result.eigenvalues.iter().enumerate() {
        if result.classes[idx] == LevelClass::Continuum {
            continue;
        }
        if np.b == 0.0 && (eps + cos_k).abs() <= floor.max(1e-10) {
            continue; // decoupled photon level, not a defect state
        }
        let a_prime = -np.a
            + if np.b == 0.0 {
                0.0
            } else {
                np.b * np.b / (eps + cos_k)
            };
        let sum: f64 = (0..n)
            .map(|s| a_prime / (eps - np.delta + c * twisted_momentum(s, j, n).cos()))
            .sum::<f64>()
            / n as f64;
        out.push(SecularResidual {
            eigenvalue: eps,
            deviation: (sum - 1.0).abs(),
        });
    }
    Ok(out)
}

/// Peak |Φ| at each ring distance d = 0..N/2 of a block eigenvector
/// (the trailing u amplitude is ignored). Bound states decay monotonically
/// away from the defect.
pub fn localization_profile(vector: &[f64], n_cells: usize) -> Vec<f64> {
    let half = n_cells / 2;
    let mut profile = vec![0.0f64; half + 1];
    for (l, amp) in vector.iter().take(n_cells).enumerate() {
        let d = l.min(n_cells - l);
        profile[d] = profile[d].max(amp.abs());
    }
    profile
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandComparison {
    pub solver: Option<f64>,
    pub oracle: BandExtraction,
    /// |ε_solver - ε_oracle| where both sides produced a value.
    pub delta: Option<f64>,
}

fn compare_band(solver: Option<f64>, oracle: BandExtraction) -> BandComparison {
    let delta = match (solver, oracle.resolved()) {
        (Some(s), Some(o)) => Some((s - o).abs()),
        _ => None,
    };
    BandComparison {
        solver,
        oracle,
        delta,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonEntry {
    pub k_index: usize,
    pub k: f64,
    pub band1: BandComparison,
    pub band2: BandComparison,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultisetCheck {
    pub max_abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Solver-versus-oracle record over every allowed ring momentum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub n_cells: usize,
    pub solver_tol: f64,
    pub entries: Vec<ComparisonEntry>,
    pub max_band1_delta: Option<f64>,
    pub max_band2_delta: Option<f64>,
    pub band1_unresolvable: usize,
    pub band2_unresolvable: usize,
    /// Points where exactly one side found a band (none expected).
    pub structure_mismatches: usize,
    pub multiset: MultisetCheck,
}

/// Run the full oracle: per-K block comparison against the transcendental
/// solver plus the block-union versus full-spectrum multiset identity.
/// Unresolvable points are reported, never failed.
pub fn compare_with_solver(
    np: &NormalizedParams,
    n_cells: usize,
    solver_tol: f64,
) -> Result<ComparisonReport> {
    if n_cells < 16 {
        return Err(Error::Domain(format!(
            "oracle comparison needs at least 16 cells, got {n_cells}"
        )));
    }
    let mut entries = Vec::with_capacity(n_cells);
    let mut block_union: Vec<f64> = Vec::with_capacity(n_cells * (n_cells + 1));
    let mut max_b1: Option<f64> = None;
    let mut max_b2: Option<f64> = None;
    let mut unres1 = 0;
    let mut unres2 = 0;
    let mut mismatches = 0;

    for j in 0..n_cells {
        let model = RingModel::k_block(n_cells, *np, j)?;
        let matrix = build_k_block(&model)?;
        let result = eigensolve(&model, &matrix)?;
        block_union.extend_from_slice(&result.eigenvalues);
        let extracted = extract_bound_states(&model, &result)?;
        let k = model.momentum().expect("block momentum");
        let s1 = spectrum::solve_band1(k, np, solver_tol)?.map(|p| p.eps);
        let s2 = spectrum::solve_band2(k, np, solver_tol)?.map(|p| p.eps);
        let band1 = compare_band(s1, extracted.band1);
        let band2 = compare_band(s2, extracted.band2);
        if let Some(d) = band1.delta {
            max_b1 = Some(max_b1.map_or(d, |m: f64| m.max(d)));
        }
        if let Some(d) = band2.delta {
            max_b2 = Some(max_b2.map_or(d, |m: f64| m.max(d)));
        }
        unres1 += usize::from(extracted.band1 == BandExtraction::Unresolvable);
        unres2 += usize::from(extracted.band2 == BandExtraction::Unresolvable);
        mismatches += usize::from(s1.is_some() != matches!(extracted.band1, BandExtraction::Resolved(_)) && extracted.band1 != BandExtraction::Unresolvable);
        mismatches += usize::from(s2.is_some() != matches!(extracted.band2, BandExtraction::Resolved(_)) && extracted.band2 != BandExtraction::Unresolvable);
        entries.push(ComparisonEntry {
            k_index: j,
            k: k.value(),
            band1,
            band2,
        });
    }

    let full_model = RingModel::full(n_cells, *np)?;
    let full = eigensolve(&full_model, &build_full_hamiltonian(&full_model)?)?;
    block_union.sort_by(f64::total_cmp);
    let max_abs_diff = full
        .eigenvalues
        .iter()
        .zip(&block_union)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);

    Ok(ComparisonReport {
        n_cells,
        solver_tol,
        entries,
        max_band1_delta: max_b1,
        max_band2_delta: max_b2,
        band1_unresolvable: unres1,
        band2_unresolvable: unres2,
        structure_mismatches: mismatches,
        multiset: MultisetCheck {
            max_abs_diff,
            tol: BLOCK_COMPLETENESS_TOL,
            pass: max_abs_diff < BLOCK_COMPLETENESS_TOL,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DimensionlessParams;

    fn np(beta: f64, gamma: f64) -> NormalizedParams {
        DimensionlessParams::new(beta, gamma).unwrap().normalized()
    }

    fn free(delta: f64) -> NormalizedParams {
        NormalizedParams {
            a: 0.0,
            b: 0.0,
            delta,
            homega: delta / 2.0,
        }
    }

    #[test]
    fn ring_size_validation() {
        let p = np(0.5, 1.0);
        assert!(RingModel::full(2, p).is_err());
        assert!(RingModel::full(7, p).is_err());
        assert!(RingModel::full(4, p).is_ok());
        assert!(RingModel::k_block(8, p, 8).is_err());
    }

    #[test]
    fn ring_momentum_folding() {
        assert_eq!(ring_momentum(0, 8), 0.0);
        assert_eq!(ring_momentum(4, 8), PI);
        assert!((ring_momentum(5, 8) - (-3.0 * PI / 4.0)).abs() < 1e-15);
        assert!((ring_momentum(7, 8) - (-PI / 4.0)).abs() < 1e-15);
    }

    #[test]
    fn dimensions() {
        let p = np(0.5, 1.0);
        let full = RingModel::full(4, p).unwrap();
        assert_eq!(full.dim(), 20);
        assert_eq!(build_full_hamiltonian(&full).unwrap().nrows(), 20);
        let block = RingModel::k_block(4, p, 0).unwrap();
        assert_eq!(block.dim(), 5);
        assert_eq!(build_k_block(&block).unwrap().nrows(), 5);
    }

    #[test]
    fn matrices_exactly_symmetric() {
        let p = np(0.1, 10.0);
        let full = RingModel::full(6, p).unwrap();
        let h = build_full_hamiltonian(&full).unwrap();
        assert_eq!(h, h.transpose());
        for j in 0..6 {
            let block = RingModel::k_block(6, p, j).unwrap();
            let h = build_k_block(&block).unwrap();
            assert_eq!(h, h.transpose());
        }
    }

    #[test]
    fn representation_mismatch_rejected() {
        let p = np(0.5, 1.0);
        let full = RingModel::full(8, p).unwrap();
        let block = RingModel::k_block(8, p, 1).unwrap();
        assert!(build_k_block(&full).is_err());
        assert!(build_full_hamiltonian(&block).is_err());
    }

    #[test]
    fn eigensolve_small_matrices() {
        let m = DMatrix::from_row_slice(1, 1, &[3.25]);
        let (ev, _) = dense_symmetric_eigen(&m, false).unwrap();
        assert_eq!(ev, vec![3.25]);

        let t = 0.7;
        let m = DMatrix::from_row_slice(2, 2, &[0.0, t, t, 0.0]);
        let (ev, vecs) = dense_symmetric_eigen(&m, true).unwrap();
        assert!((ev[0] + t).abs() < 1e-14 && (ev[1] - t).abs() < 1e-14);
        assert_eq!(vecs.unwrap().len(), 2);

        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0]);
        assert!(dense_symmetric_eigen(&m, false).is_err());
        let m = DMatrix::from_row_slice(1, 1, &[f64::NAN]);
        assert!(dense_symmetric_eigen(&m, false).is_err());
    }

    #[test]
    fn free_block_spectrum_matches_dispersion() {
        let p = free(7.0);
        for n in [4usize, 6] {
            for j in 0..n {
                let model = RingModel::k_block(n, p, j).unwrap();
                let r = eigensolve(&model, &build_k_block(&model).unwrap()).unwrap();
                let mut expected = free_block_levels(&model).unwrap();
                expected.sort_by(f64::total_cmp);
                for (got, want) in r.eigenvalues.iter().zip(&expected) {
                    assert!((got - want).abs() < 1e-12, "n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn free_full_spectrum_is_tensor_continuum() {
        // a = b = 0: Ψ-sector eigenvalues are δ - (cos k_m + cos k_n)/2 over
        // the ring momentum grid, u-sector ones are -cos k.
        let p = free(7.0);
        let n = 6;
        let model = RingModel::full(n, p).unwrap();
        let r = eigensolve(&model, &build_full_hamiltonian(&model).unwrap()).unwrap();
        let mut expected = Vec::new();
        for s in 0..n {
            expected.push(-(2.0 * PI * s as f64 / n as f64).cos());
            for t in 0..n {
                let cm = (2.0 * PI * s as f64 / n as f64).cos();
                let cn = (2.0 * PI * t as f64 / n as f64).cos();
                expected.push(p.delta - 0.5 * (cm + cn));
            }
        }
        expected.sort_by(f64::total_cmp);
        for (got, want) in r.eigenvalues.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-12);
        }
        // Classification: everything is continuum or photon-like, no bound
        // state between the photon line and the continuum.
        let tau = resolvability_threshold(&model);
        for (&e, &cl) in r.eigenvalues.iter().zip(&r.classes) {
            if cl == LevelClass::BoundBelow {
                assert!(e <= 1.0 + tau, "free level {e} misclassified");
            }
        }
    }

    #[test]
    fn gerschgorin_bound() {
        let p = np(0.1, 1.0);
        let model = RingModel::full(6, p).unwrap();
        let h = build_full_hamiltonian(&model).unwrap();
        let r = eigensolve(&model, &h).unwrap();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..h.nrows() {
            let radius: f64 = (0..h.ncols())
                .filter(|&j| j != i)
                .map(|j| h[(i, j)].abs())
                .sum();
            lo = lo.min(h[(i, i)] - radius);
            hi = hi.max(h[(i, i)] + radius);
        }
        assert!(r.eigenvalues.first().unwrap() >= &lo);
        assert!(r.eigenvalues.last().unwrap() <= &hi);
    }

    #[test]
    fn extraction_free_case_absent() {
        let p = free(7.0);
        for j in [0usize, 3, 8, 12] {
            let model = RingModel::k_block(16, p, j).unwrap();
            let r = eigensolve(&model, &build_k_block(&model).unwrap()).unwrap();
            let e = extract_bound_states(&model, &r).unwrap();
            assert_eq!(e.band1, BandExtraction::Absent, "j = {j}");
            assert_eq!(e.band2, BandExtraction::Absent, "j = {j}");
        }
    }

    #[test]
    fn extraction_zone_edge_matches_quadratic() {
        // K = π block is exactly a 2x2 problem in (Φ_0, u); its bound states
        // are the closed-form zone-edge roots for any ring size.
        let p = np(0.1, 1.0);
        let model = RingModel::k_block(16, p, 8).unwrap();
        let r = eigensolve(&model, &build_k_block(&model).unwrap()).unwrap();
        let e = extract_bound_states(&model, &r).unwrap();
        let edges =
            spectrum::band_edge_closed_form(&p, spectrum::Branch::Attractive).unwrap();
        assert!((e.band1.resolved().unwrap() - edges.eps_minus).abs() < 1e-10);
        assert!((e.band2.resolved().unwrap() - edges.eps_plus).abs() < 1e-10);
    }

    #[test]
    fn weak_binding_flagged_unresolvable_near_zone_center() {
        // (β, γ) = (0.5, 0.2): Band 2 sits ~6e-4 below the photon line,
        // far under the N = 64 level spacing away from the zone edge.
        let p = np(0.5, 0.2);
        let model = RingModel::k_block(64, p, 0).unwrap();
        let r = eigensolve(&model, &build_k_block(&model).unwrap()).unwrap();
        let e = extract_bound_states(&model, &r).unwrap();
        assert_eq!(e.band2, BandExtraction::Unresolvable);
        assert!(matches!(e.band1, BandExtraction::Resolved(_)));
    }

    #[test]
    fn schur_complement_adds_pole_term_to_defect() {
        // Eliminating u_K from (H - εI) must add exactly b²/(ε + cos K) to
        // the l = 0 defect for any ε that is not an eigenvalue.
        let p = np(0.2, 5.0);
        let n = 8;
        for j in [0usize, 1, 4, 5] {
            let model = RingModel::k_block(n, p, j).unwrap();
            let h = build_k_block(&model).unwrap();
            let cos_k = (2.0 * PI * j as f64 / n as f64).cos();
            for eps in [-3.7, 0.21, 11.0] {
                let phi_block = h.view((0, 0), (n, n)).into_owned();
                let shifted = phi_block - DMatrix::<f64>::identity(n, n) * eps;
                let mut schur = shifted.clone();
                let d = h[(n, n)] - eps;
                for r in 0..n {
                    for c in 0..n {
                        schur[(r, c)] -= h[(r, n)] * h[(n, c)] / d;
                    }
                }
                // Only the (0, 0) entry moves, by b²/(ε + cos K).
                let expected = p.b * p.b / (eps + cos_k);
                for r in 0..n {
                    for c in 0..n {
                        let want = if (r, c) == (0, 0) {
                            shifted[(r, c)] + expected
                        } else {
                            shifted[(r, c)]
                        };
                        assert!((schur[(r, c)] - want).abs() < 1e-12 * (1.0 + want.abs()));
                    }
                }
            }
        }
    }

    #[test]
    fn comparison_small_ring() {
        let p = np(0.1, 1.0);
        let report = compare_with_solver(&p, 16, 1e-12).unwrap();
        assert_eq!(report.entries.len(), 16);
        assert!(report.multiset.pass, "multiset diff {}", report.multiset.max_abs_diff);
        assert_eq!(report.structure_mismatches, 0);
        assert!(report.max_band1_delta.unwrap() < 1e-8);
        assert!(report.max_band2_delta.unwrap() < 1e-8);
        assert!(compare_with_solver(&p, 8, 1e-12).is_err());
    }
}
