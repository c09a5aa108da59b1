//! Floating-point verification of the Schwarzian foliation, the companion
//! system and the Kummer equation.
//!
//! All integrations run along straight complex segments with an adaptive
//! Dormand–Prince 5(4) scheme. Derivatives of quotients, composites and
//! inverses are taken by jet arithmetic on `Complex64` jets, never by
//! differencing. Every check returns the measured residual.

pub mod checks;
pub mod config;
pub mod dopri;
pub mod path;
pub mod registry;
pub mod solution;

mod crat;

use num_complex::Complex64;
use thiserror::Error;

pub use checks::closure::{check_groupoid_closure, default_jets, ClosureCheck};
pub use checks::companion::{integrate_companion, CompanionSolution};
pub use checks::cone::{check_cone_plane, check_cone_plane_exact, sympow_initial, ConeCheck, ConeWitness, ExactConeCheck, ExactConeWitness};
pub use checks::foliation::integrate_foliation;
pub use checks::projective::{check_projective_relation, check_projective_relation_with, ProjectiveCheck};
pub use checks::tangency::{check_flow_tangency, product_field, PolynomialField, RationalField, TangencyCheck, VectorField};
pub use config::VerifierConfig;
pub use dopri::{Dopri5, Step};
pub use path::NumericPath;
pub use registry::{CheckContext, CheckRegistry, CheckReport, VerifierCheck};
pub use solution::{NumericSolution, Sample};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("path passes within {distance:.3e} of the pole {pole}")]
    PoleTooClose { pole: Complex64, distance: f64 },
    #[error("singular encounter: {0}")]
    SingularEncounter(String),
    #[error("step size underflow or step budget exhausted at s = {at}")]
    StepFailure { at: f64 },
    #[error("denominator vanishes on the path at λ = {0}")]
    ZeroDenominatorOnPath(Complex64),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("the two initial conditions do not span a plane")]
    DegeneratePlane,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Jet(#[from] kummer_core::jet::JetError),
    #[error(transparent)]
    Schwarz(#[from] kummer_core::schwarzian::SchwarzError),
    #[error(transparent)]
    Ode(#[from] kummer_core::ode::OdeError),
    #[error("csv output: {0}")]
    Csv(String),
}
