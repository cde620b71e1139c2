//! Certification of candidate basis sets: orthonormality and maximal
//! entanglement checks, plus unextendibility established either by a
//! structural column-support certificate or by seeded multi-start
//! maximization of the minimal singular value over the complement.
//!
//! The numeric search maximizes f(c) = sqrt(dimA) * sigma_min(sum_j c_j
//! B_j) over unit coefficient vectors c on an orthonormal complement
//! basis {B_j}. f lies in [0, 1], and f = 1 exactly at coefficient
//! vectors whose matrix is maximally entangled, so a maximizer with
//! f = 1 is an extension witness while a supremum bounded away from 1 is
//! evidence of unextendibility. The maximum of a minimal singular value
//! is not concave, so numeric results are reported as evidence, never as
//! certificates.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bases::BasisSet;
use crate::error::{Error, Result};
use crate::hsmat::{ComplexMatrix, MatrixSubspace, ORTHONORMALITY_TOL};

/// A complement column counts as occupied if any basis element has an
/// entry of magnitude above this in it.
pub const COLUMN_SUPPORT_TOL: f64 = 1e-9;

/// A search value of at least 1 - this tolerance promotes the maximizer
/// to an extension-witness candidate.
pub const WITNESS_VALUE_TOL: f64 = 1e-10;

/// Witness validation tolerance: orthogonality residual against every
/// member, and singular-value deviation from 1/sqrt(dimA).
pub const WITNESS_RESIDUAL_TOL: f64 = 1e-9;

/// Ascent stops early once f reaches 1 minus this.
const ASCENT_TARGET_TOL: f64 = 1e-12;

/// Improvements below this do not reset the stall counter.
const STALL_TOL: f64 = 1e-14;

/// Iterations without improvement before a restart gives up.
const STALL_WINDOW: usize = 200;

/// Cap on alternating-projection polish rounds after ascent.
const POLISH_MAX_ROUNDS: usize = 60;

/// Multi-start search configuration. All randomness derives from `seed`;
/// restart r draws from an independent, scheduling-independent stream.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub step_init: f64,
    pub step_decay: f64,
    pub seed: u64,
    pub evidence_margin: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iterations: 2000,
            step_init: 0.1,
            step_decay: 0.995,
            seed: 0,
            evidence_margin: 1e-3,
        }
    }
}

/// Outcome of a single tolerance check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckResult {
    pub pass: bool,
    pub max_deviation: f64,
}

/// Largest |<A_i|A_j> - delta_ij| over pairs, compared against `tol`.
pub fn check_orthonormal(b: &BasisSet, tol: f64) -> CheckResult {
    let dev = b.gram_max_deviation();
    CheckResult {
        pass: dev <= tol,
        max_deviation: dev,
    }
}

/// Largest |sigma - 1/sqrt(dimA)| over all members and singular values,
/// compared against `tol`. Maximal entanglement requires dimA <= dimB.
pub fn check_max_entangled(b: &BasisSet, tol: f64) -> Result<CheckResult> {
    if b.dim_a() > b.dim_b() {
        return Err(Error::Domain(format!(
            "maximal entanglement requires dimA <= dimB, got {}x{}",
            b.dim_a(),
            b.dim_b()
        )));
    }
    let target = 1.0 / (b.dim_a() as f64).sqrt();
    let per_member = crate::map_indexed(b.len(), |i| {
        b.member(i)
            .singular_values()
            .iter()
            .map(|s| (s - target).abs())
            .fold(0.0, f64::max)
    });
    let dev = per_member.into_iter().fold(0.0, f64::max);
    Ok(CheckResult {
        pass: dev <= tol,
        max_deviation: dev,
    })
}

/// Column-support certificate: if the union of numerically occupied
/// columns across the complement basis has size c < dimA, every
/// complement matrix has rank at most c, hence a zero singular value,
/// hence the complement contains no maximally entangled state. Returns
/// the bounding rank c, or None when the support is full.
pub fn structural_certificate(comp: &MatrixSubspace) -> Option<usize> {
    let mut occupied = vec![false; comp.cols()];
    for b in comp.basis() {
        for (c, occ) in occupied.iter_mut().enumerate() {
            if *occ {
                continue;
            }
            *occ = (0..b.rows()).any(|r| b.get(r, c).norm() > COLUMN_SUPPORT_TOL);
        }
    }
    let support = occupied.iter().filter(|&&o| o).count();
    if support < comp.rows() {
        Some(support)
    } else {
        None
    }
}

/// Result of the multi-start search: the best value found, the total
/// iterations executed across restarts, and the maximizer when it reached
/// a witness-level value.
#[derive(Clone, Debug)]
pub struct NumericSearch {
    pub best_value: f64,
    pub iterations: usize,
    pub witness: Option<ComplexMatrix>,
}

struct RestartOutcome {
    value: f64,
    coeffs: Vec<Complex64>,
    iterations: usize,
}

fn combine(basis: &[&DMatrix<Complex64>], coeffs: &[Complex64], rows: usize, cols: usize) -> DMatrix<Complex64> {
    let mut acc = DMatrix::<Complex64>::zeros(rows, cols);
    for (b, &c) in basis.iter().zip(coeffs) {
        crate::hsmat::accumulate(&mut acc, c, b);
    }
    acc
}

fn normalize(coeffs: &mut [Complex64]) {
    let norm = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in coeffs.iter_mut() {
            *z /= norm;
        }
    }
}

/// Index of the minimal singular value; among exact ties the smallest
/// index of the (descending) decomposition is used, a subgradient choice
/// for the ascent direction.
fn min_sigma_index(values: &[f64]) -> usize {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    values.iter().position(|&v| v == min).unwrap_or(0)
}

fn eval_f(basis: &[&DMatrix<Complex64>], coeffs: &[Complex64], rows: usize, cols: usize, sqrt_d: f64) -> f64 {
    let m = combine(basis, coeffs, rows, cols);
    let sv = m.singular_values();
    let idx = min_sigma_index(sv.as_slice());
    sqrt_d * sv[idx]
}

/// Maximizes f over the complement by projected gradient ascent from
/// `cfg.restarts` seeded random starts, each followed by an
/// alternating-projection polish (snap the singular values to
/// 1/sqrt(dimA), project back onto the complement), which sharpens
/// near-witness values to full precision. Returns an error when the
/// complement is empty (the candidate is a complete basis) or not a
/// dimA <= dimB space.
pub fn numeric_unextendibility(comp: &MatrixSubspace, cfg: &SearchConfig) -> Result<NumericSearch> {
    if comp.dim() == 0 {
        return Err(Error::Precondition(
            "empty complement: the candidate spans the full matrix space".into(),
        ));
    }
    if comp.rows() > comp.cols() {
        return Err(Error::Domain(format!(
            "maximal entanglement requires dimA <= dimB, got {}x{}",
            comp.rows(),
            comp.cols()
        )));
    }
    if cfg.restarts == 0 {
        return Err(Error::Domain("search requires restarts >= 1".into()));
    }
    let rows = comp.rows();
    let cols = comp.cols();
    let n = comp.dim();
    let sqrt_d = (rows as f64).sqrt();
    let basis: Vec<&DMatrix<Complex64>> = comp.basis().iter().map(|b| b.data()).collect();

    let outcomes: Vec<RestartOutcome> = crate::map_indexed(cfg.restarts, |restart| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(restart as u64);
        let mut coeffs: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        normalize(&mut coeffs);

        let mut step = cfg.step_init;
        let mut best_value = f64::NEG_INFINITY;
        let mut best_coeffs = coeffs.clone();
        let mut last_improve = 0usize;
        let mut iterations = 0usize;

        for it in 0..cfg.max_iterations {
            iterations += 1;
            let m = combine(&basis, &coeffs, rows, cols);
            let svd = m.svd(true, true);
            let sv = svd.singular_values.as_slice();
            let idx = min_sigma_index(sv);
            let f = sqrt_d * sv[idx];
            if f > best_value + STALL_TOL {
                last_improve = it;
            }
            if f > best_value {
                best_value = f;
                best_coeffs.copy_from_slice(&coeffs);
            }
            if best_value >= 1.0 - ASCENT_TARGET_TOL {
                break;
            }
            if it - last_improve >= STALL_WINDOW {
                break;
            }
            let u = svd.u.as_ref().expect("u requested").column(idx).clone_owned();
            let v = svd
                .v_t
                .as_ref()
                .expect("v_t requested")
                .row(idx)
                .adjoint();
            for (j, b) in basis.iter().enumerate() {
                let bv = *b * &v;
                let g = u.dotc(&bv);
                coeffs[j] += Complex64::from(step) * g.conj();
            }
            normalize(&mut coeffs);
            step *= cfg.step_decay;
        }

        // Alternating-projection polish from the best iterate.
        let mut coeffs = best_coeffs.clone();
        for _ in 0..POLISH_MAX_ROUNDS {
            let m = combine(&basis, &coeffs, rows, cols);
            let svd = m.svd(true, true);
            let target = svd.u.as_ref().expect("u requested")
                * svd.v_t.as_ref().expect("v_t requested")
                / Complex64::from(sqrt_d);
            let mut projected: Vec<Complex64> = basis
                .iter()
                .map(|b| b.iter().zip(target.iter()).map(|(x, y)| x.conj() * y).sum())
                .collect();
            let norm = projected.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-12 {
                break;
            }
            normalize(&mut projected);
            let f = eval_f(&basis, &projected, rows, cols, sqrt_d);
            if f > best_value + 1e-15 {
                best_value = f;
                best_coeffs.copy_from_slice(&projected);
                coeffs = projected;
            } else {
                break;
            }
        }

        RestartOutcome {
            value: best_value,
            coeffs: best_coeffs,
            iterations,
        }
    });

    let mut best = 0usize;
    for (idx, o) in outcomes.iter().enumerate() {
        if o.value > outcomes[best].value {
            best = idx;
        }
    }
    let iterations = outcomes.iter().map(|o| o.iterations).sum();
    let best_value = outcomes[best].value.clamp(0.0, 1.0);

    let witness = if best_value >= 1.0 - WITNESS_VALUE_TOL {
        let m = combine(&basis, &outcomes[best].coeffs, rows, cols);
        let norm = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Some(ComplexMatrix::from_dmatrix(m.unscale(norm)))
    } else {
        None
    };

    Ok(NumericSearch {
        best_value,
        iterations,
        witness,
    })
}

/// How unextendibility was settled.
#[derive(Clone, Debug)]
pub enum Unextendibility {
    /// Every complement matrix has rank at most `max_rank` < dimA.
    StructuralRankCertificate { max_rank: usize },
    /// Best value of the multi-start search; evidence, not proof.
    NumericalEvidence {
        best_value: f64,
        restarts: usize,
        iterations: usize,
        seed: u64,
    },
    /// Unextendibility was not evaluated (complete basis or failed
    /// basic checks).
    NotApplicable { reason: String },
}

/// Overall verdict for a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedUmeb,
    EvidenceUmeb,
    Extendible,
    Inconclusive,
    FailedBasicChecks,
    CompleteBasis,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedUmeb => "certifiedUMEB",
            Verdict::EvidenceUmeb => "evidenceUMEB",
            Verdict::Extendible => "extendible",
            Verdict::Inconclusive => "inconclusive",
            Verdict::FailedBasicChecks => "failedBasicChecks",
            Verdict::CompleteBasis => "completeBasis",
        }
    }
}

/// Full certification record. A witness is present exactly when the
/// verdict is extendible.
#[derive(Clone, Debug)]
pub struct CertificationReport {
    pub orthonormality: CheckResult,
    pub entanglement: CheckResult,
    pub complement_dim: usize,
    pub unextendibility: Unextendibility,
    pub verdict: Verdict,
    pub witness: Option<ComplexMatrix>,
}

/// Certifies with the default basic-check tolerance.
pub fn certify(b: &BasisSet, cfg: &SearchConfig) -> Result<CertificationReport> {
    certify_with_tol(b, cfg, ORTHONORMALITY_TOL)
}

/// Runs both basic checks, computes the complement of the candidate's
/// span, and settles unextendibility: a structural certificate gives
/// verdict certifiedUMEB; otherwise the numeric search gives evidenceUMEB
/// (value below 1 - evidenceMargin), extendible (validated witness), or
/// inconclusive. An empty complement gives completeBasis.
pub fn certify_with_tol(b: &BasisSet, cfg: &SearchConfig, tol: f64) -> Result<CertificationReport> {
    let orthonormality = check_orthonormal(b, tol);
    let entanglement = check_max_entangled(b, tol)?;

    let span = MatrixSubspace::orthonormalize(b.dim_a(), b.dim_b(), b.members())?;
    let comp = span.complement();
    let complement_dim = comp.dim();

    if !orthonormality.pass || !entanglement.pass {
        return Ok(CertificationReport {
            orthonormality,
            entanglement,
            complement_dim,
            unextendibility: Unextendibility::NotApplicable {
                reason: "basic checks failed; unextendibility was not evaluated".into(),
            },
            verdict: Verdict::FailedBasicChecks,
            witness: None,
        });
    }

    if complement_dim == 0 {
        return Ok(CertificationReport {
            orthonormality,
            entanglement,
            complement_dim,
            unextendibility: Unextendibility::NotApplicable {
                reason: "the candidate spans the full matrix space and is a complete basis".into(),
            },
            verdict: Verdict::CompleteBasis,
            witness: None,
        });
    }

    if let Some(max_rank) = structural_certificate(&comp) {
        return Ok(CertificationReport {
            orthonormality,
            entanglement,
            complement_dim,
            unextendibility: Unextendibility::StructuralRankCertificate { max_rank },
            verdict: Verdict::CertifiedUmeb,
            witness: None,
        });
    }

    let search = numeric_unextendibility(&comp, cfg)?;
    let evidence = Unextendibility::NumericalEvidence {
        best_value: search.best_value,
        restarts: cfg.restarts,
        iterations: search.iterations,
        seed: cfg.seed,
    };

    if let Some(w) = search.witness {
        if witness_is_valid(b, &w) {
            return Ok(CertificationReport {
                orthonormality,
                entanglement,
                complement_dim,
                unextendibility: evidence,
                verdict: Verdict::Extendible,
                witness: Some(w),
            });
        }
    }

    let verdict = if search.best_value <= 1.0 - cfg.evidence_margin {
        Verdict::EvidenceUmeb
    } else {
        Verdict::Inconclusive
    };
    Ok(CertificationReport {
        orthonormality,
        entanglement,
        complement_dim,
        unextendibility: evidence,
        verdict,
        witness: None,
    })
}

/// A witness must be orthogonal to every member and maximally entangled,
/// both within [`WITNESS_RESIDUAL_TOL`].
fn witness_is_valid(b: &BasisSet, w: &ComplexMatrix) -> bool {
    let target = 1.0 / (b.dim_a() as f64).sqrt();
    let orthogonal = b
        .members()
        .iter()
        .all(|m| m.hs_inner(w).map(|z| z.norm()).unwrap_or(f64::INFINITY) <= WITNESS_RESIDUAL_TOL);
    let entangled = w
        .singular_values()
        .iter()
        .all(|s| (s - target).abs() <= WITNESS_RESIDUAL_TOL);
    orthogonal && entangled
}
