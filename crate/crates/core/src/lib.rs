//! Finite spectral models of τ-measurable operators.
//!
//! An operator `|A|` is represented by a [`SpectralProfile`]: a finite list of
//! spectral values together with the trace of the corresponding spectral
//! projections. On top of that model this crate computes, in closed form where
//! possible:
//!
//! * the singular value function `μ(t, A)`, distribution functions and
//!   submajorization ([`rearrange`]);
//! * the spectral Hardy-Littlewood maximal function `MA` and the operator
//!   `MA(|A|)` ([`maximal`]);
//! * symmetric norms (`L_p`, `L_{p,q}`, `L_1+L_∞`, `L_1∩L_∞`, Lorentz and
//!   Marcinkiewicz) and quasiconcave weight machinery ([`spaces`]);
//! * ingestion of dense matrices and step functions, plus seeded generators
//!   ([`ingest`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub(crate) mod math;
pub mod quad;

pub mod ingest;
pub mod maximal;
pub mod rearrange;
pub mod spaces;

pub use error::{Error, Result};
pub use ingest::{DenseMatrix, GeneratorSpec};
pub use maximal::MaximalEvaluation;
pub use rearrange::{Atom, CesaroCurve, LineStepFunction, SpectralProfile, StepFunction};
pub use spaces::{LogGrid, NormResult, NormSpace, WeightFunction, WeightKind};
