//! File formats and canonical serialization.
//!
//! All output is JSON with a fixed layout: two-space indentation and
//! every float rendered in scientific notation with 17 significant
//! digits and a lowercase exponent. That rendering is exact for f64, so
//! canonical files round-trip bit-for-bit and identical inputs produce
//! byte-identical outputs. Files are written atomically
//! (write-temp-then-rename).

use std::collections::BTreeMap;
use std::io::{self, Write as IoWrite};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use umeb_core::certify::{CertificationReport, SearchConfig, Unextendibility};
use umeb_core::equiv::{InequivalenceReport, OrderClass, SpectralProfile};
use umeb_core::{BasisSet, Claim, ComplexMatrix, Provenance};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProvenanceFile {
    pub construction: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MemberFile {
    pub label: String,
    /// Row-major complex entries as [re, im] pairs.
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BasisFile {
    pub format_version: u32,
    pub dims: [usize; 2],
    pub claim: String,
    pub provenance: ProvenanceFile,
    pub members: Vec<MemberFile>,
}

fn matrix_to_pairs(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [m.get(r, c).re, m.get(r, c).im]).collect())
        .collect()
}

pub fn member_file(label: &str, m: &ComplexMatrix) -> MemberFile {
    MemberFile {
        label: label.to_string(),
        matrix: matrix_to_pairs(m),
    }
}

impl BasisFile {
    pub fn from_basis(b: &BasisSet) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            dims: [b.dim_a(), b.dim_b()],
            claim: b.claim().as_str().to_string(),
            provenance: ProvenanceFile {
                construction: b.provenance().construction.clone(),
                params: b.provenance().params.clone(),
            },
            members: b
                .members()
                .iter()
                .zip(b.labels())
                .map(|(m, label)| member_file(label, m))
                .collect(),
        }
    }

    /// Validates the file invariants and rebuilds the basis set. Errors
    /// are strings because every failure here is a malformed-input
    /// problem, not a domain problem.
    pub fn to_basis(&self) -> Result<BasisSet, String> {
        if self.format_version != FORMAT_VERSION {
            return Err(format!(
                "unsupported formatVersion {} (expected {FORMAT_VERSION})",
                self.format_version
            ));
        }
        let [dim_a, dim_b] = self.dims;
        let claim = Claim::parse(&self.claim).map_err(|e| e.to_string())?;
        let mut members = Vec::with_capacity(self.members.len());
        let mut labels = Vec::with_capacity(self.members.len());
        for (idx, m) in self.members.iter().enumerate() {
            if m.matrix.len() != dim_a || m.matrix.iter().any(|row| row.len() != dim_b) {
                return Err(format!(
                    "member {idx} ({}) does not match dims {dim_a}x{dim_b}",
                    m.label
                ));
            }
            let entries: Vec<Complex64> = m
                .matrix
                .iter()
                .flatten()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect();
            members.push(
                ComplexMatrix::from_rows(dim_a, dim_b, entries).map_err(|e| e.to_string())?,
            );
            labels.push(m.label.clone());
        }
        let params: Vec<(&str, String)> = self
            .provenance
            .params
            .iter()
            .map(|(k, v)| (k.as_str(), v.clone()))
            .collect();
        BasisSet::new(
            dim_a,
            dim_b,
            members,
            labels,
            Provenance::new(self.provenance.construction.clone(), &params),
            claim,
        )
        .map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SearchConfigFile {
    pub restarts: usize,
    pub max_iterations: usize,
    pub step_init: f64,
    pub step_decay: f64,
    pub seed: u64,
    pub evidence_margin: f64,
}

impl From<&SearchConfig> for SearchConfigFile {
    fn from(cfg: &SearchConfig) -> Self {
        Self {
            restarts: cfg.restarts,
            max_iterations: cfg.max_iterations,
            step_init: cfg.step_init,
            step_decay: cfg.step_decay,
            seed: cfg.seed,
            evidence_margin: cfg.evidence_margin,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OrthonormalityFile {
    pub pass: bool,
    pub max_gram_deviation: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct EntanglementFile {
    pub pass: bool,
    pub max_singular_value_deviation: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, tag = "kind")]
pub enum UnextendibilityFile {
    #[serde(rename = "structuralRankCertificate", rename_all = "camelCase")]
    StructuralRankCertificate { max_rank: usize },
    #[serde(rename = "numericalEvidence", rename_all = "camelCase")]
    NumericalEvidence {
        best_value: f64,
        restarts: usize,
        iterations: usize,
        seed: u64,
    },
    #[serde(rename = "notApplicable", rename_all = "camelCase")]
    NotApplicable { reason: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ReportFile {
    pub format_version: u32,
    /// Digest of the exact input bytes, prefixed "sha256:".
    pub input_digest: String,
    pub search_config: SearchConfigFile,
    pub orthonormality: OrthonormalityFile,
    pub entanglement: EntanglementFile,
    pub complement_dim: usize,
    pub unextendibility: UnextendibilityFile,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<MemberFile>,
}

pub fn report_file(
    report: &CertificationReport,
    cfg: &SearchConfig,
    input_digest: String,
) -> ReportFile {
    ReportFile {
        format_version: FORMAT_VERSION,
        input_digest,
        search_config: cfg.into(),
        orthonormality: OrthonormalityFile {
            pass: report.orthonormality.pass,
            max_gram_deviation: report.orthonormality.max_deviation,
        },
        entanglement: EntanglementFile {
            pass: report.entanglement.pass,
            max_singular_value_deviation: report.entanglement.max_deviation,
        },
        complement_dim: report.complement_dim,
        unextendibility: match &report.unextendibility {
            Unextendibility::StructuralRankCertificate { max_rank } => {
                UnextendibilityFile::StructuralRankCertificate {
                    max_rank: *max_rank,
                }
            }
            Unextendibility::NumericalEvidence {
                best_value,
                restarts,
                iterations,
                seed,
            } => UnextendibilityFile::NumericalEvidence {
                best_value: *best_value,
                restarts: *restarts,
                iterations: *iterations,
                seed: *seed,
            },
            Unextendibility::NotApplicable { reason } => UnextendibilityFile::NotApplicable {
                reason: reason.clone(),
            },
        },
        verdict: report.verdict.as_str().to_string(),
        witness: report
            .witness
            .as_ref()
            .map(|w| member_file("witness", w)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, tag = "kind")]
pub enum OrderFile {
    #[serde(rename = "finite", rename_all = "camelCase")]
    Finite { n: u32 },
    #[serde(rename = "infiniteByNiven")]
    InfiniteByNiven,
    #[serde(rename = "unresolved")]
    Unresolved,
}

impl From<OrderClass> for OrderFile {
    fn from(o: OrderClass) -> Self {
        match o {
            OrderClass::Finite(n) => OrderFile::Finite { n },
            OrderClass::InfiniteByNiven => OrderFile::InfiniteByNiven,
            OrderClass::Unresolved => OrderFile::Unresolved,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PairFile {
    pub i: usize,
    pub j: usize,
    pub eigenphases: Vec<f64>,
    pub orders: Vec<OrderFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SpectraFile {
    pub format_version: u32,
    pub input_digest: String,
    pub dim: usize,
    pub pairs: Vec<PairFile>,
}

pub fn spectra_file(profile: &SpectralProfile, input_digest: String) -> SpectraFile {
    SpectraFile {
        format_version: FORMAT_VERSION,
        input_digest,
        dim: profile.dim,
        pairs: profile
            .pairs
            .iter()
            .map(|p| PairFile {
                i: p.i,
                j: p.j,
                eigenphases: p.eigenphases.clone(),
                orders: p.orders.iter().map(|&o| o.into()).collect(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CompareFile {
    pub format_version: u32,
    pub a_digest: String,
    pub b_digest: String,
    pub a_has_infinite_order: bool,
    pub b_has_infinite_order: bool,
    pub obstruction: bool,
    pub verdict: String,
}

pub fn compare_file(
    report: &InequivalenceReport,
    a_digest: String,
    b_digest: String,
) -> CompareFile {
    CompareFile {
        format_version: FORMAT_VERSION,
        a_digest,
        b_digest,
        a_has_infinite_order: report.a_has_infinite_order,
        b_has_infinite_order: report.b_has_infinite_order,
        obstruction: report.obstruction,
        verdict: report.verdict().to_string(),
    }
}

/// Pretty formatter with exact float rendering: 17 significant digits in
/// scientific notation, lowercase exponent.
struct CanonicalFormatter<'a> {
    inner: serde_json::ser::PrettyFormatter<'a>,
}

impl serde_json::ser::Formatter for CanonicalFormatter<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn end_object_key<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object_key(writer)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object_value(writer)
    }
}

/// Canonical bytes of a serializable value: fixed layout, trailing
/// newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let formatter = CanonicalFormatter {
        inner: serde_json::ser::PrettyFormatter::new(),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut out, formatter);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    out.push(b'\n');
    out
}

/// Writes via a sibling temp file and renames into place, so readers
/// never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

pub fn sha256_digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
