//! The individual verifier checks.

pub mod closure;
pub mod companion;
pub mod cone;
pub mod foliation;
pub mod projective;
pub mod tangency;
