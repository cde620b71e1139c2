//! Generators of the primitive orthonormal families: Weyl unitary bases,
//! shift-phase singular-value-1 bases, the 6-member 3x3 set, and
//! block/column embeddings.
//!
//! Every member of a [`BasisSet`] is stored with unit Hilbert-Schmidt
//! norm, so a "unitary" family member is a matrix U with sqrt(d)*U
//! unitary. Member ordering and labels are fixed by each generator so
//! that serialized output is reproducible.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hsmat::ComplexMatrix;

/// What a basis set claims to be. Complete-family claims pin the member
/// count to dimA*dimB; unextendible-family claims require fewer members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Meb,
    Umeb,
    Ub,
    Uub,
    Sv1b,
    Usv1b,
    None,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Meb => "MEB",
            Claim::Umeb => "UMEB",
            Claim::Ub => "UB",
            Claim::Uub => "UUB",
            Claim::Sv1b => "SV1B",
            Claim::Usv1b => "USV1B",
            Claim::None => "NONE",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "MEB" => Ok(Claim::Meb),
            "UMEB" => Ok(Claim::Umeb),
            "UB" => Ok(Claim::Ub),
            "UUB" => Ok(Claim::Uub),
            "SV1B" => Ok(Claim::Sv1b),
            "USV1B" => Ok(Claim::Usv1b),
            "NONE" => Ok(Claim::None),
            other => Err(Error::Claim(format!("unknown claim {other:?}"))),
        }
    }

    fn requires_complete(self) -> bool {
        matches!(self, Claim::Meb | Claim::Ub | Claim::Sv1b)
    }

    fn requires_incomplete(self) -> bool {
        matches!(self, Claim::Umeb | Claim::Uub | Claim::Usv1b)
    }
}

/// Construction name plus its parameters, carried along so serialized
/// bases record how they were built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub construction: String,
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new<S: Into<String>>(construction: S, params: &[(&str, String)]) -> Self {
        Self {
            construction: construction.into(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }

    /// One-line rendering, used when one construction's provenance is a
    /// parameter of another.
    pub fn compact(&self) -> String {
        if self.params.is_empty() {
            self.construction.clone()
        } else {
            let args: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            format!("{}({})", self.construction, args.join(","))
        }
    }
}

/// Ordered, labeled family of same-shape unit-norm matrices.
///
/// Member norms and orthonormality are established by the certification
/// module, not revalidated on construction; the structural invariants
/// enforced here are shapes, label count, and the claim/member-count
/// consistency.
#[derive(Clone, Debug)]
pub struct BasisSet {
    dim_a: usize,
    dim_b: usize,
    members: Vec<ComplexMatrix>,
    labels: Vec<String>,
    provenance: Provenance,
    claim: Claim,
}

impl BasisSet {
    pub fn new(
        dim_a: usize,
        dim_b: usize,
        members: Vec<ComplexMatrix>,
        labels: Vec<String>,
        provenance: Provenance,
        claim: Claim,
    ) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::Domain("basis dimensions must be positive".into()));
        }
        if labels.len() != members.len() {
            return Err(Error::Precondition(format!(
                "{} labels for {} members",
                labels.len(),
                members.len()
            )));
        }
        for m in &members {
            if m.rows() != dim_a || m.cols() != dim_b {
                return Err(Error::ShapeMismatch {
                    left: format!("{dim_a}x{dim_b}"),
                    right: format!("{}x{}", m.rows(), m.cols()),
                });
            }
        }
        let ambient = dim_a * dim_b;
        if claim.requires_complete() && members.len() != ambient {
            return Err(Error::Claim(format!(
                "claim {} requires exactly {ambient} members, got {}",
                claim.as_str(),
                members.len()
            )));
        }
        if claim.requires_incomplete() && members.len() >= ambient {
            return Err(Error::Claim(format!(
                "claim {} requires fewer than {ambient} members, got {}",
                claim.as_str(),
                members.len()
            )));
        }
        Ok(Self {
            dim_a,
            dim_b,
            members,
            labels,
            provenance,
            claim,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ComplexMatrix] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ComplexMatrix {
        &self.members[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn claim(&self) -> Claim {
        self.claim
    }

    /// Largest |<A_i|A_j> - delta_ij| over all member pairs.
    pub fn gram_max_deviation(&self) -> f64 {
        let n = self.members.len();
        let per_row = crate::map_indexed(n, |i| {
            let mut worst = 0.0f64;
            for j in i..n {
                let inner = self.members[i]
                    .hs_inner(&self.members[j])
                    .expect("members share shape");
                let target = if i == j { 1.0 } else { 0.0 };
                let dev = (inner - Complex64::from(target)).norm();
                worst = worst.max(dev);
            }
            worst
        });
        per_row.into_iter().fold(0.0, f64::max)
    }
}

/// d-th root of unity raised to `num`, with the exponent reduced mod d.
fn xi(d: usize, num: i64) -> Complex64 {
    let r = num.rem_euclid(d as i64) as f64;
    Complex64::from_polar(1.0, TAU * r / d as f64)
}

/// Weyl phase-shift unitary basis of the d x d matrix space: member
/// (m, n) is (1/sqrt d) sum_k xi_d^{mk} |k><(k+n) mod d|, with members
/// ordered lexicographically in (m, n).
pub fn weyl_ub(d: usize) -> Result<BasisSet> {
    if d == 0 {
        return Err(Error::Domain("weyl_ub requires d >= 1".into()));
    }
    let scale = 1.0 / (d as f64).sqrt();
    let mut members = Vec::with_capacity(d * d);
    let mut labels = Vec::with_capacity(d * d);
    for m in 0..d {
        for n in 0..d {
            let mut mat = ComplexMatrix::zeros(d, d);
            for k in 0..d {
                mat.set(k, (k + n) % d, xi(d, (m * k) as i64).scale(scale));
            }
            members.push(mat);
            labels.push(format!("W({m},{n})"));
        }
    }
    BasisSet::new(
        d,
        d,
        members,
        labels,
        Provenance::new("weyl", &[("d", d.to_string())]),
        Claim::Ub,
    )
}

/// Shift-phase singular-value-1 basis of the d x m matrix space (d <= m):
/// member (n, j) is (1/sqrt d) sum_k xi_d^{nk} |k><(k+j) mod m|, ordered
/// lexicographically in (n, j). Every member has all singular values
/// 1/sqrt(d), so the corresponding states are maximally entangled.
pub fn shift_phase_sv1b(d: usize, m: usize) -> Result<BasisSet> {
    if d == 0 {
        return Err(Error::Domain("shift_phase_sv1b requires d >= 1".into()));
    }
    if d > m {
        return Err(Error::Domain(format!(
            "shift_phase_sv1b requires d <= m (maximal entanglement needs dimA <= dimB), got d={d}, m={m}"
        )));
    }
    let scale = 1.0 / (d as f64).sqrt();
    let mut members = Vec::with_capacity(d * m);
    let mut labels = Vec::with_capacity(d * m);
    for n in 0..d {
        for j in 0..m {
            let mut mat = ComplexMatrix::zeros(d, m);
            for k in 0..d {
                mat.set(k, (k + j) % m, xi(d, (n * k) as i64).scale(scale));
            }
            members.push(mat);
            labels.push(format!("A({n},{j})"));
        }
    }
    BasisSet::new(
        d,
        m,
        members,
        labels,
        Provenance::new(
            "sv1b",
            &[("d", d.to_string()), ("m", m.to_string())],
        ),
        Claim::Sv1b,
    )
}

/// The 6-member unextendible maximally entangled family in 3x3.
///
/// Six unit vectors psi_j are built from (e_p +- b e_{p+1 mod 3})/a with
/// b the golden ratio and a = sqrt(1 + b^2); each member is the matrix of
/// (I (x) U_j)|Phi+> where U_j = I - (1 - e^{i theta})|psi_j><psi_j| and
/// cos(theta) = -7/8. The sign of sin(theta) is fixed positive so output
/// is reproducible. Any two psi overlap with |<psi_j|psi_k>|^2 = 1/5,
/// which makes the six members pairwise orthonormal.
pub fn bravyi33() -> BasisSet {
    let b = (1.0 + 5f64.sqrt()) / 2.0;
    let a = (1.0 + b * b).sqrt();
    let e_it = Complex64::new(-7.0 / 8.0, 15f64.sqrt() / 8.0);
    let one_minus_eit = Complex64::new(1.0, 0.0) - e_it;

    let mut psis: Vec<[f64; 3]> = Vec::with_capacity(6);
    for p in 0..3usize {
        for sign in [1.0, -1.0] {
            let mut v = [0.0; 3];
            v[p] = 1.0 / a;
            v[(p + 1) % 3] = sign * b / a;
            psis.push(v);
        }
    }

    let scale = 1.0 / 3f64.sqrt();
    let mut members = Vec::with_capacity(6);
    let mut labels = Vec::with_capacity(6);
    for (idx, psi) in psis.iter().enumerate() {
        // U = I - (1 - e^{i theta}) |psi><psi|; the member is U^T / sqrt(3).
        let u = ComplexMatrix::from_fn(3, 3, |r, c| {
            let delta = if r == c { 1.0 } else { 0.0 };
            Complex64::from(delta) - one_minus_eit * Complex64::from(psi[r] * psi[c])
        });
        members.push(u.transpose().scale(Complex64::from(scale)));
        labels.push(format!("u{}", idx + 1));
    }
    BasisSet::new(
        3,
        3,
        members,
        labels,
        Provenance::new("bravyi33", &[]),
        Claim::Umeb,
    )
    .expect("fixed-size construction is valid")
}

/// Zero-pads every member on the right to dimA x newDimB. Inner products
/// are unchanged (the added entries are exact zeros); the claim resets to
/// NONE because completeness claims do not survive a change of ambient
/// space.
pub fn pad_columns(b: &BasisSet, new_dim_b: usize) -> Result<BasisSet> {
    if new_dim_b < b.dim_b() {
        return Err(Error::Domain(format!(
            "pad_columns cannot shrink: {} -> {new_dim_b} columns",
            b.dim_b()
        )));
    }
    embed_with(
        b,
        0,
        0,
        b.dim_a(),
        new_dim_b,
        Provenance::new(
            "pad_columns",
            &[
                ("newDimB", new_dim_b.to_string()),
                ("inner", b.provenance().compact()),
            ],
        ),
    )
}

/// Places every member as a block at (rowOffset, colOffset) inside an
/// ambientRows x ambientCols zero matrix. Inner products are unchanged.
pub fn embed_block(
    b: &BasisSet,
    row_offset: usize,
    col_offset: usize,
    ambient_rows: usize,
    ambient_cols: usize,
) -> Result<BasisSet> {
    embed_with(
        b,
        row_offset,
        col_offset,
        ambient_rows,
        ambient_cols,
        Provenance::new(
            "embed_block",
            &[
                ("rowOffset", row_offset.to_string()),
                ("colOffset", col_offset.to_string()),
                ("ambientRows", ambient_rows.to_string()),
                ("ambientCols", ambient_cols.to_string()),
                ("inner", b.provenance().compact()),
            ],
        ),
    )
}

fn embed_with(
    b: &BasisSet,
    row_offset: usize,
    col_offset: usize,
    ambient_rows: usize,
    ambient_cols: usize,
    provenance: Provenance,
) -> Result<BasisSet> {
    if row_offset + b.dim_a() > ambient_rows || col_offset + b.dim_b() > ambient_cols {
        return Err(Error::Domain(format!(
            "block {}x{} at offset ({row_offset}, {col_offset}) overflows ambient {ambient_rows}x{ambient_cols}",
            b.dim_a(),
            b.dim_b()
        )));
    }
    let members = b
        .members()
        .iter()
        .map(|m| {
            let mut out = ComplexMatrix::zeros(ambient_rows, ambient_cols);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    out.set(row_offset + r, col_offset + c, m.get(r, c));
                }
            }
            out
        })
        .collect();
    BasisSet::new(
        ambient_rows,
        ambient_cols,
        members,
        b.labels().to_vec(),
        provenance,
        Claim::None,
    )
}
