//! Singular value functions, distribution functions, the Cesàro operator and
//! submajorization on finite spectral profiles.

mod cesaro;
mod majorize;
mod profile;
mod step;

pub use cesaro::{CesaroCurve, CesaroPiece};
pub use majorize::{submajorized_by_cesaro, submajorizes, SLACK as SUBMAJORIZATION_SLACK};
pub use profile::{Atom, SpectralProfile, MERGE_TOLERANCE};
pub use step::{LineStepFunction, StepFunction};

/// `μ(·, A)` of a profile.
pub fn mu_of_profile(p: &SpectralProfile) -> StepFunction {
    p.mu()
}

/// `(Cf)(t) = (1/t)∫₀ᵗ f` for a nonnegative step function.
pub fn cesaro(f: &StepFunction) -> crate::Result<CesaroCurve> {
    CesaroCurve::of(f)
}
