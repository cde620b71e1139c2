//! Pair-product spectra and eigenvalue-order classification.
//!
//! Equivalence of two same-size unitary families requires a permutation
//! pi and a unitary U conjugating every scaled pair product onto its
//! image: U (sqrt(d)A_i)(sqrt(d)A_j) U^dagger =
//! (sqrt(d)B_{pi(i)})(sqrt(d)B_{pi(j)}). Conjugation preserves
//! eigenvalues, so the multiset of pair-product eigenvalue orders is an
//! invariant: if one family has a pair-product eigenvalue of infinite
//! order and the other has none, the families cannot be equivalent.
//! Infinite order is detected through the rational-cosine criterion: an
//! angle that is a rational multiple of pi and has a rational cosine must
//! have cosine in {0, +-1/2, +-1}, so any other rational cosine rules out
//! finite order.

use crate::bases::BasisSet;
use crate::error::{Error, Result};
use crate::hsmat::UNITARY_TOL;

pub const DEFAULT_NMAX: u32 = 1000;
pub const DEFAULT_DENOM_MAX: i64 = 64;
pub const DEFAULT_ORDER_TOL: f64 = 1e-9;

/// Order classification of a unimodular eigenvalue e^{i phase}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderClass {
    /// Least n with |e^{i n phase} - 1| within tolerance.
    Finite(u32),
    /// cos(phase) matches a rational p/q outside {0, +-1/2, +-1}, so the
    /// order is infinite.
    InfiniteByNiven,
    /// Neither test concluded; no order is guessed.
    Unresolved,
}

/// Eigenphases and order classes for one ordered pair (i, j).
#[derive(Clone, Debug)]
pub struct PairSpectrum {
    pub i: usize,
    pub j: usize,
    pub eigenphases: Vec<f64>,
    pub orders: Vec<OrderClass>,
}

/// Spectra of all ordered pair products of a square unitary family.
#[derive(Clone, Debug)]
pub struct SpectralProfile {
    pub dim: usize,
    pub pairs: Vec<PairSpectrum>,
}

impl SpectralProfile {
    pub fn has_infinite_order(&self) -> bool {
        self.pairs
            .iter()
            .any(|p| p.orders.contains(&OrderClass::InfiniteByNiven))
    }
}

/// Eigenphases of (sqrt(d) A_i)(sqrt(d) A_j) for every ordered pair
/// (i, j), sorted ascending per pair, with default-parameter order
/// classes. Requires a square family whose members are all proportional
/// to unitaries.
pub fn pair_product_spectra(b: &BasisSet) -> Result<SpectralProfile> {
    if b.dim_a() != b.dim_b() {
        return Err(Error::Precondition(format!(
            "pair products require a square family, got {}x{}",
            b.dim_a(),
            b.dim_b()
        )));
    }
    let d = b.dim_a();
    let scale = (d as f64).sqrt();
    for (m, label) in b.members().iter().zip(b.labels()) {
        if !m.is_scaled_unitary(scale, UNITARY_TOL) {
            return Err(Error::Precondition(format!(
                "member {label} is not proportional to a unitary"
            )));
        }
    }
    let n = b.len();
    let pairs = crate::map_indexed(n * n, |flat| {
        let i = flat / n;
        let j = flat % n;
        let product = b
            .member(i)
            .matmul(b.member(j))
            .expect("square members compose")
            .scale((d as f64).into());
        let eigenphases = product.eigenphases().expect("product is square");
        let orders = eigenphases
            .iter()
            .map(|&phase| {
                classify_order(phase, DEFAULT_NMAX, DEFAULT_DENOM_MAX, DEFAULT_ORDER_TOL)
            })
            .collect();
        PairSpectrum {
            i,
            j,
            eigenphases,
            orders,
        }
    });
    Ok(SpectralProfile { dim: d, pairs })
}

/// Best rational approximation p/q to x with 1 <= q <= denom_max, via
/// continued-fraction convergents and the final semiconvergent.
fn best_rational(x: f64, denom_max: i64) -> (i64, i64) {
    let mut hm2: i64 = 0; // h_{-2}
    let mut hm1: i64 = 1; // h_{-1}
    let mut km2: i64 = 1;
    let mut km1: i64 = 0;
    let mut cur = x;
    for _ in 0..64 {
        let a_f = cur.floor();
        if a_f.abs() > 1e15 {
            break;
        }
        let a = a_f as i64;
        let (h, k) = match (
            a.checked_mul(hm1).and_then(|v| v.checked_add(hm2)),
            a.checked_mul(km1).and_then(|v| v.checked_add(km2)),
        ) {
            (Some(h), Some(k)) => (h, k),
            _ => break,
        };
        if k > denom_max {
            // The last convergent within the cap competes with the
            // largest admissible semiconvergent.
            let conv = (hm1, km1.max(1));
            let t = (denom_max - km2) / km1.max(1);
            if t >= 1 {
                let semi = (t * hm1 + hm2, t * km1 + km2);
                let d_semi = (x - semi.0 as f64 / semi.1 as f64).abs();
                let d_conv = (x - conv.0 as f64 / conv.1 as f64).abs();
                if d_semi < d_conv {
                    return semi;
                }
            }
            return conv;
        }
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;
        let frac = cur - a_f;
        if frac.abs() < 1e-14 {
            break;
        }
        cur = 1.0 / frac;
    }
    (hm1, km1.max(1))
}

/// Classifies e^{i phase}: finite(n) for the least n <= n_max with
/// |e^{i n phase} - 1| <= tol; otherwise infiniteByNiven when cos(phase)
/// is within tol of a rational p/q, q <= denom_max, outside
/// {0, +-1/2, +-1}; otherwise unresolved.
pub fn classify_order(phase: f64, n_max: u32, denom_max: i64, tol: f64) -> OrderClass {
    for n in 1..=n_max {
        let dist = 2.0 * (0.5 * n as f64 * phase).sin().abs();
        if dist <= tol {
            return OrderClass::Finite(n);
        }
    }
    let cosine = phase.cos();
    let (p, q) = best_rational(cosine, denom_max);
    if (cosine - p as f64 / q as f64).abs() <= tol && !niven_excluded(p, q) {
        OrderClass::InfiniteByNiven
    } else {
        OrderClass::Unresolved
    }
}

/// Rational cosines compatible with finite order: 0, +-1/2, +-1.
fn niven_excluded(p: i64, q: i64) -> bool {
    (q == 1 && (-1..=1).contains(&p)) || (q == 2 && (p == 1 || p == -1))
}

/// Inequivalence report: an obstruction holds when exactly one of the two
/// families has a pair-product eigenvalue of infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InequivalenceReport {
    pub a_has_infinite_order: bool,
    pub b_has_infinite_order: bool,
    pub obstruction: bool,
}

impl InequivalenceReport {
    pub fn verdict(&self) -> &'static str {
        if self.obstruction {
            "inequivalent (spectral order obstruction)"
        } else {
            "no obstruction found"
        }
    }
}

/// Compares the infinite-order content of two same-shape, same-count
/// square families. The negative result is NOT a proof of equivalence;
/// only the obstruction direction is conclusive.
pub fn inequivalence_witness(a: &BasisSet, b: &BasisSet) -> Result<InequivalenceReport> {
    if a.dim_a() != b.dim_a() || a.dim_b() != b.dim_b() {
        return Err(Error::Domain(format!(
            "shape mismatch: {}x{} vs {}x{}",
            a.dim_a(),
            a.dim_b(),
            b.dim_a(),
            b.dim_b()
        )));
    }
    if a.len() != b.len() {
        return Err(Error::Domain(format!(
            "member count mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let pa = pair_product_spectra(a)?;
    let pb = pair_product_spectra(b)?;
    let a_has = pa.has_infinite_order();
    let b_has = pb.has_infinite_order();
    Ok(InequivalenceReport {
        a_has_infinite_order: a_has,
        b_has_infinite_order: b_has,
        obstruction: a_has != b_has,
    })
}
