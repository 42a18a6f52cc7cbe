//! Projected fixed-point iteration on the manifold of rank-`r` matrices.
//!
//! The iteration `Y_{k+1} = I(Y_k, Φ(Y_k) − Y_k)` retracts each full step of
//! a contraction `Φ` back onto the manifold with the projector-splitting
//! retraction `I`. The crate provides the retraction, a family of test
//! contractions, a driver that records a tangent/normal error split at every
//! step, the convergence bounds that apply to such runs, and an experiment
//! harness that writes CSV traces, SVG plots and bound certificates.

pub mod bounds;
pub mod contractions;
pub mod error;
pub mod experiment;
pub mod iteration;
pub mod linalg;
pub mod retraction;
pub mod rng;
pub mod tolerances;

pub use error::{Error, Result};
