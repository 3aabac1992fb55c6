//! Radicals of degenerate κ-traces restricted to the singlet subalgebra
//! H⁰: moment tables, Gram matrices, minimal annihilators φ_p⁰ and the
//! comparison of the κ = +1 and κ = -1 generators.

mod certificate;
mod full;
mod gram;
mod moments;

pub use certificate::{
    annihilators, coincide, default_j, nonzero_ideal_witness, predicted_annihilator, side,
    AnnihilatorCertificate, AnnihilatorPair, Mismatch, MomentProvenance, PerP, SideData, Verdict,
    Witness, WitnessReport,
};
pub use gram::{build_gram, BasisLabel, Generator, H0Gram};
pub use moments::{build_moment_table, MomentEntry, MomentTable, Provenance, ProvenanceSummary};
pub use full::{
    compare_truncated_kernels, truncated_kernel_comparison, SectorComparison,
    TruncatedKernelComparison,
};
