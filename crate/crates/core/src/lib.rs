//! Construction and certification of maximally entangled bases (MEB) and
//! unextendible maximally entangled bases (UMEB) of bipartite spaces
//! C^d (x) C^d'.
//!
//! A pure state |psi> = sum_{k,l} a_kl |k>|l'> is identified with the d x d'
//! matrix A = [a_kl]; under this correspondence state inner products become
//! Hilbert-Schmidt inner products Tr(A^dagger B), and |psi> is maximally
//! entangled exactly when all singular values of sqrt(d)*A equal 1. The
//! library works on the matrix side throughout:
//!
//! - [`hsmat`]: dense complex matrices, Hilbert-Schmidt geometry, subspaces
//!   and orthogonal complements, the state/matrix correspondence.
//! - [`bases`]: generators of the primitive orthonormal families (Weyl
//!   unitary bases, shift-phase singular-value-1 bases, the 6-member 3x3
//!   set) and block/column embeddings.
//! - [`construct`]: the composite constructions that scale, double,
//!   truncate, and compose those families into UMEB candidates.
//! - [`certify`]: orthonormality and maximal-entanglement checks plus
//!   unextendibility certification, structural where possible and by
//!   seeded multi-start optimization otherwise.
//! - [`equiv`]: pair-product spectra and eigenvalue-order classification,
//!   a necessary condition for local-unitary inequivalence.
//!
//! With the default `parallel` feature, independent work items (optimizer
//! restarts, pair spectra, per-member checks) run on rayon; results are
//! reduced in index order so outputs are identical with the feature off.

pub mod bases;
pub mod certify;
pub mod construct;
pub mod equiv;
pub mod error;
pub mod hsmat;

pub use bases::{BasisSet, Claim, Provenance};
pub use certify::{CertificationReport, SearchConfig, Unextendibility, Verdict};
pub use equiv::{OrderClass, SpectralProfile};
pub use error::{Error, Result};
pub use hsmat::{ComplexMatrix, MatrixSubspace, StateVector};

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
