//! Qubit weak values and their Bloch-space geometry.
//!
//! The crate evaluates the weak value ⟨ψ|M|φ⟩/⟨ψ|φ⟩ of a Hermitian
//! observable between a pre-selected state |φ⟩ and a post-selected
//! state |ψ⟩, and decomposes it into geometric invariants on the
//! Euclidean space of traceless Hermitian operators: the observable's
//! trace, the invariant-line coordinate s, the plane offset a, and the
//! ensemble phase ω. On top of that sit closed-form extremal
//! observables, noise-channel parameter estimation from observed weak
//! values, and seeded numerical exploration of the analogous geometry
//! in higher dimensions.

#![forbid(unsafe_code)]

pub mod density;
pub mod error;
pub mod extremal;
pub mod hermitian;
pub mod ket;
pub mod noise;
pub mod qunit;
pub mod sampling;
pub mod weak;

/// Numerical tolerances used by validation throughout the crate.
pub mod tolerances {
    /// Norm and positivity slack.
    pub const EPS_NORM: f64 = 1e-10;
    /// Conjugate-symmetry and trace slack.
    pub const EPS_HERM: f64 = 1e-10;
    /// Mutual-unbiasedness slack on squared overlaps.
    pub const EPS_MUB: f64 = 1e-8;
    /// Distinct-nonorthogonal window on |⟨ψ|φ⟩|.
    pub const EPS_DIST: f64 = 1e-8;
}

pub use density::DensityOp;
pub use error::{Error, Result};
pub use extremal::{extremal_imag_projectors, extremal_real_projectors, real_bound, ExtremalReport};
pub use hermitian::{
    decompose_in_mub_basis, distance, is_mutually_unbiased, mub_partner, scalar_product,
    HermitianOp, SPoint,
};
pub use ket::Ket;
pub use noise::{
    expected_noisy_weak, infer_p, optimal_noise_probe, ChannelKind, Component, NoiseChannel,
    NoiseEstimate, ProbeSensitivities,
};
pub use qunit::{conjecture_scan, proposition_check, QunitFrame, ScanReport};
pub use weak::{
    generalized_weak_value, mixture_decomposition, KLine, MixtureDecomposition, PPSEnsemble,
    PPSPlane, WeakDecomposition,
};
