//! Exact tournament probabilities for random 3-sided dice in the balanced
//! uniform model.
//!
//! Event regions are convex polytopes in `Q^k`, the space of `k` dice, and
//! their probabilities are exact volumes computed by the [`polytope`]
//! engine. [`tournaments`] turns those volumes into class probabilities and
//! [`montecarlo`] cross-checks them by simulation.

pub mod dice;
pub mod error;
pub mod linalg;
pub mod montecarlo;
pub mod polytope;
pub mod tournaments;

pub use dice::{Die, DominanceMode, DominanceOutcome, SigmaWord};
pub use error::{Error, Result};
pub use linalg::{RatMatrix, RatVector, Rational};
pub use montecarlo::{estimate, DieSampler, EstimateReport, SamplerConfig};
pub use polytope::{HPolytope, HalfSpace, Simplex, VPolytope};
pub use tournaments::{
    ProbabilityReport, Tournament, TournamentClass3, TournamentClass4, TournamentOutcome,
};
