//! Exact algebra over ℚ(λ), jet groupoids, the Schwarzian and Kummer
//! equations, second-order linear ODEs and the Kovacic-style minimality
//! engine.

pub mod algebra;
pub mod ode;
pub mod jet;
pub mod schwarzian;
pub mod engine;
