//! Composite constructions that assemble larger unextendible candidates
//! from the primitive families: block scaling (`theorem1_scale`), block
//! doubling (`example1_double`), column truncation (`theorem2_truncate`),
//! block composition (`prop2_compose`), and the equal-block direct-sum
//! unitary basis (`prop1_equal_blocks`).
//!
//! Constructors insert the normalization factors (1/sqrt q, 1/sqrt 2)
//! themselves so every emitted member has unit Hilbert-Schmidt norm, and
//! they validate their inputs, but they never assert unextendibility:
//! certification re-establishes claims on the output.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::bases::{pad_columns, shift_phase_sv1b, weyl_ub, BasisSet, Claim, Provenance};
use crate::bases::embed_block;
use crate::error::{Error, Result};
use crate::hsmat::{ComplexMatrix, ORTHONORMALITY_TOL, UNITARY_TOL};

/// Parameters of the block-scaling construction: the block count q and a
/// square unextendible base family in d x d.
#[derive(Clone, Debug)]
pub struct ScaleParams {
    pub q: usize,
    pub base: BasisSet,
}

fn require_square_unitary_family(b: &BasisSet, what: &str) -> Result<()> {
    let d = b.dim_a();
    if d != b.dim_b() {
        return Err(Error::Domain(format!(
            "{what} must be square, got {}x{}",
            b.dim_a(),
            b.dim_b()
        )));
    }
    let gram = b.gram_max_deviation();
    if gram > ORTHONORMALITY_TOL {
        return Err(Error::Precondition(format!(
            "{what} is not orthonormal: Gram deviation {gram:.3e}"
        )));
    }
    let scale = (d as f64).sqrt();
    for (m, label) in b.members().iter().zip(b.labels()) {
        if !m.is_scaled_unitary(scale, UNITARY_TOL) {
            return Err(Error::Precondition(format!(
                "{what} member {label} is not proportional to a unitary"
            )));
        }
    }
    Ok(())
}

/// Scales a d x d unextendible family to qd x qd using the default Weyl
/// unitary basis of the d x d matrix space; see
/// [`theorem1_scale_with_ub`].
pub fn theorem1_scale(params: &ScaleParams) -> Result<BasisSet> {
    if params.base.dim_a() != params.base.dim_b() {
        return Err(Error::Domain(format!(
            "theorem1 base must be square, got {}x{}",
            params.base.dim_a(),
            params.base.dim_b()
        )));
    }
    let ub = weyl_ub(params.base.dim_a())?;
    theorem1_scale_with_ub(params, &ub)
}

/// Scales a d x d unextendible family (N < d^2 members v_i) to qd x qd,
/// producing (qd)^2 - q(d^2 - N) members:
///
/// - shifted blocks (1/sqrt q)(S_q^k o T_{q(j)}) (x) u_i for k in [1, q),
///   j in [0, q), with u_i running over a complete unitary basis of the
///   d x d matrix space, where S_q is the cyclic shift, T_{q(j)} has every
///   row equal to (1, zeta_q^j, ..., zeta_q^{j(q-1)}), and o is the
///   entrywise product;
/// - diagonal blocks (1/sqrt q)(I_q o T_{q(j)}) (x) v_i for j in [0, q).
///
/// For q = 1 the output equals the base set. The shifted blocks vanish
/// against each other and the diagonal blocks by column-support phases,
/// so the output is orthonormal and every member times sqrt(qd) is
/// unitary.
pub fn theorem1_scale_with_ub(params: &ScaleParams, ub: &BasisSet) -> Result<BasisSet> {
    let base = &params.base;
    let q = params.q;
    if q == 0 {
        return Err(Error::Domain("theorem1 requires q >= 1".into()));
    }
    if base.dim_a() != base.dim_b() {
        return Err(Error::Domain(format!(
            "theorem1 base must be square, got {}x{}",
            base.dim_a(),
            base.dim_b()
        )));
    }
    let d = base.dim_a();
    let n_base = base.len();
    if n_base >= d * d {
        return Err(Error::Claim(format!(
            "theorem1 base must be unextendible (fewer than {} members), got {n_base}",
            d * d
        )));
    }
    require_square_unitary_family(base, "theorem1 base")?;
    if ub.dim_a() != d || ub.dim_b() != d || ub.len() != d * d {
        return Err(Error::Precondition(format!(
            "theorem1 unitary basis must have {} members of {d}x{d}, got {} of {}x{}",
            d * d,
            ub.len(),
            ub.dim_a(),
            ub.dim_b()
        )));
    }
    require_square_unitary_family(ub, "theorem1 unitary basis")?;

    if q == 1 {
        return Ok(base.clone());
    }

    let zeta = |num: i64| -> Complex64 {
        let r = num.rem_euclid(q as i64) as f64;
        Complex64::from_polar(1.0, TAU * r / q as f64)
    };
    let block_scale = Complex64::from(1.0 / (q as f64).sqrt());

    let qd = q * d;
    let total = qd * qd - q * (d * d - n_base);
    let mut members = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);

    for k in 1..q {
        for j in 0..q {
            // S_q^k o T_{q(j)}: row r carries zeta_q^{j*((r+k) mod q)} in
            // column (r+k) mod q.
            let mut factor = ComplexMatrix::zeros(q, q);
            for r in 0..q {
                let c = (r + k) % q;
                factor.set(r, c, zeta((j * c) as i64));
            }
            for (u, label) in ub.members().iter().zip(ub.labels()) {
                members.push(factor.kron(u).scale(block_scale));
                labels.push(format!("U(k={k},j={j})*{label}"));
            }
        }
    }
    for j in 0..q {
        // I_q o T_{q(j)} = diag(1, zeta_q^j, ..., zeta_q^{j(q-1)}).
        let mut factor = ComplexMatrix::zeros(q, q);
        for r in 0..q {
            factor.set(r, r, zeta((j * r) as i64));
        }
        for (v, label) in base.members().iter().zip(base.labels()) {
            members.push(factor.kron(v).scale(block_scale));
            labels.push(format!("V(j={j})*{label}"));
        }
    }
    debug_assert_eq!(members.len(), total);

    BasisSet::new(
        qd,
        qd,
        members,
        labels,
        Provenance::new(
            "theorem1",
            &[
                ("q", q.to_string()),
                ("base", base.provenance().compact()),
                ("ub", ub.provenance().compact()),
            ],
        ),
        Claim::Umeb,
    )
}

fn diag_pair(u: &ComplexMatrix, top_sign: f64) -> ComplexMatrix {
    let p = u.rows();
    let s = Complex64::from(top_sign / 2f64.sqrt());
    let t = Complex64::from(1.0 / 2f64.sqrt());
    let mut out = ComplexMatrix::zeros(2 * p, 2 * p);
    for r in 0..p {
        for c in 0..p {
            out.set(r, c, s * u.get(r, c));
            out.set(p + r, p + c, t * u.get(r, c));
        }
    }
    out
}

fn anti_pair(v: &ComplexMatrix, top_sign: f64) -> ComplexMatrix {
    let p = v.rows();
    let s = Complex64::from(top_sign / 2f64.sqrt());
    let t = Complex64::from(1.0 / 2f64.sqrt());
    let mut out = ComplexMatrix::zeros(2 * p, 2 * p);
    for r in 0..p {
        for c in 0..p {
            out.set(r, p + c, s * v.get(r, c));
            out.set(p + r, c, t * v.get(r, c));
        }
    }
    out
}

/// Doubles a p x p unitary basis (p^2 members U_i) and a p x p
/// unextendible family (m members V_i) into a (2p^2 + 2m)-member family
/// in 2p x 2p: the block-diagonal members (1/sqrt 2)(+-U_i direct-sum U_i)
/// and the block-antidiagonal members with V_i in both off-diagonal
/// blocks, the top-right one carrying the sign.
pub fn example1_double(ub: &BasisSet, uub: &BasisSet) -> Result<BasisSet> {
    if ub.dim_a() != ub.dim_b() {
        return Err(Error::Domain(format!(
            "example1 unitary basis must be square, got {}x{}",
            ub.dim_a(),
            ub.dim_b()
        )));
    }
    let p = ub.dim_a();
    if uub.dim_a() != p || uub.dim_b() != p {
        return Err(Error::Domain(format!(
            "example1 requires matching dimensions: unitary basis is {p}x{p}, unextendible family is {}x{}",
            uub.dim_a(),
            uub.dim_b()
        )));
    }
    if ub.len() != p * p {
        return Err(Error::Precondition(format!(
            "example1 unitary basis must be complete ({} members), got {}",
            p * p,
            ub.len()
        )));
    }
    if uub.len() >= p * p {
        return Err(Error::Claim(format!(
            "example1 unextendible family must have fewer than {} members, got {}",
            p * p,
            uub.len()
        )));
    }
    require_square_unitary_family(ub, "example1 unitary basis")?;
    require_square_unitary_family(uub, "example1 unextendible family")?;

    let total = 2 * ub.len() + 2 * uub.len();
    let mut members = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    for (u, label) in ub.members().iter().zip(ub.labels()) {
        members.push(diag_pair(u, 1.0));
        labels.push(format!("D+({label})"));
    }
    for (u, label) in ub.members().iter().zip(ub.labels()) {
        members.push(diag_pair(u, -1.0));
        labels.push(format!("D-({label})"));
    }
    for (v, label) in uub.members().iter().zip(uub.labels()) {
        members.push(anti_pair(v, 1.0));
        labels.push(format!("X+({label})"));
    }
    for (v, label) in uub.members().iter().zip(uub.labels()) {
        members.push(anti_pair(v, -1.0));
        labels.push(format!("X-({label})"));
    }

    BasisSet::new(
        2 * p,
        2 * p,
        members,
        labels,
        Provenance::new(
            "example1",
            &[
                ("p", p.to_string()),
                ("ub", ub.provenance().compact()),
                ("uub", uub.provenance().compact()),
            ],
        ),
        Claim::Umeb,
    )
}

/// Direct-sum unitary basis of the equal-block subspace: the 2p^2 members
/// (1/sqrt 2)(+-U_i direct-sum U_i). This is a complete basis of the
/// block-diagonal subspace only, so the claim stays NONE.
pub fn prop1_equal_blocks(ub: &BasisSet) -> Result<BasisSet> {
    if ub.dim_a() != ub.dim_b() {
        return Err(Error::Domain(format!(
            "prop1 unitary basis must be square, got {}x{}",
            ub.dim_a(),
            ub.dim_b()
        )));
    }
    let p = ub.dim_a();
    if ub.len() != p * p {
        return Err(Error::Precondition(format!(
            "prop1 unitary basis must be complete ({} members), got {}",
            p * p,
            ub.len()
        )));
    }
    require_square_unitary_family(ub, "prop1 unitary basis")?;

    let mut members = Vec::with_capacity(2 * ub.len());
    let mut labels = Vec::with_capacity(2 * ub.len());
    for (u, label) in ub.members().iter().zip(ub.labels()) {
        members.push(diag_pair(u, 1.0));
        labels.push(format!("D+({label})"));
    }
    for (u, label) in ub.members().iter().zip(ub.labels()) {
        members.push(diag_pair(u, -1.0));
        labels.push(format!("D-({label})"));
    }
    BasisSet::new(
        2 * p,
        2 * p,
        members,
        labels,
        Provenance::new("prop1", &[("ub", ub.provenance().compact())]),
        Claim::None,
    )
}

/// Shift-phase basis of the d x (dPrime - i) block, zero-padded to
/// d x dPrime. The i zeroed columns leave no room for a maximally
/// entangled state in the complement, so the d(dPrime - i) members form
/// an unextendible candidate. Admissible range: 1 <= i < d and
/// d <= dPrime - i.
pub fn theorem2_truncate(d: usize, d_prime: usize, i: usize) -> Result<BasisSet> {
    if d == 0 {
        return Err(Error::Domain("theorem2 requires d >= 1".into()));
    }
    if d >= d_prime {
        return Err(Error::Domain(format!(
            "theorem2 requires d < dprime, got d={d}, dprime={d_prime}"
        )));
    }
    if d_prime >= 2 * d {
        if i < 1 || i >= d {
            return Err(Error::Domain(format!(
                "theorem2 case (i) requires 1 <= i < d when dprime >= 2d, got i={i} with d={d}, dprime={d_prime}"
            )));
        }
    } else {
        let r = d_prime - d;
        if i < 1 || i > r {
            return Err(Error::Domain(format!(
                "theorem2 case (ii) requires 1 <= i <= r when dprime = d + r with r < d, got i={i} with d={d}, dprime={d_prime}, r={r}"
            )));
        }
    }
    let inner = shift_phase_sv1b(d, d_prime - i)?;
    let padded = pad_columns(&inner, d_prime)?;
    BasisSet::new(
        d,
        d_prime,
        padded.members().to_vec(),
        padded.labels().to_vec(),
        Provenance::new(
            "theorem2",
            &[
                ("d", d.to_string()),
                ("dprime", d_prime.to_string()),
                ("i", i.to_string()),
            ],
        ),
        Claim::Umeb,
    )
}

/// Composes a complete shift-phase basis of the d x (dPrime - d) block
/// with a d x d unextendible family embedded in the last d columns,
/// giving d(dPrime - d) + N members. Requires dPrime >= 2d so the first
/// block supports maximally entangled states.
pub fn prop2_compose(d: usize, d_prime: usize, uub: &BasisSet) -> Result<BasisSet> {
    if d == 0 {
        return Err(Error::Domain("prop2 requires d >= 1".into()));
    }
    if d_prime < 2 * d {
        return Err(Error::Domain(format!(
            "prop2 requires dprime >= 2d, got d={d}, dprime={d_prime}"
        )));
    }
    if uub.dim_a() != d || uub.dim_b() != d {
        return Err(Error::Precondition(format!(
            "prop2 requires a {d}x{d} unextendible family, got {}x{}",
            uub.dim_a(),
            uub.dim_b()
        )));
    }
    if uub.len() >= d * d {
        return Err(Error::Precondition(format!(
            "prop2 unextendible family must have fewer than {} members, got {}",
            d * d,
            uub.len()
        )));
    }
    let meb = pad_columns(&shift_phase_sv1b(d, d_prime - d)?, d_prime)?;
    let embedded = embed_block(uub, 0, d_prime - d, d, d_prime)?;

    let mut members = meb.members().to_vec();
    members.extend_from_slice(embedded.members());
    let mut labels = meb.labels().to_vec();
    labels.extend_from_slice(embedded.labels());

    BasisSet::new(
        d,
        d_prime,
        members,
        labels,
        Provenance::new(
            "prop2",
            &[
                ("d", d.to_string()),
                ("dprime", d_prime.to_string()),
                ("uub", uub.provenance().compact()),
            ],
        ),
        Claim::Umeb,
    )
}
