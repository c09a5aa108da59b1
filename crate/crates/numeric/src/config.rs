//! Tolerances and thresholds for the verifier.

/// Environment variable overriding both integrator tolerances.
pub const TOL_ENV: &str = "KUMMER_KIT_TOL";

#[derive(Clone, Debug, PartialEq)]
pub struct VerifierConfig {
    pub rtol: f64,
    pub atol: f64,
    /// Acceptance threshold for residual checks.
    pub threshold: f64,
    /// Minimum distance between a path and any pole of R.
    pub exclusion_radius: f64,
    /// Step budget per segment.
    pub max_steps: usize,
    /// `|λ_τ|`, `|ψ₂|` or `|φ'|` below this aborts the integration.
    pub singular_threshold: f64,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        VerifierConfig {
            rtol: 1e-10,
            atol: 1e-10,
            threshold: 1e-6,
            exclusion_radius: 0.1,
            max_steps: 100_000,
            singular_threshold: 1e-8,
        }
    }
}

impl VerifierConfig {
    /// Defaults, with `KUMMER_KIT_TOL` applied when it holds a positive number.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(tol) = std::env::var(TOL_ENV).ok().and_then(|s| s.trim().parse::<f64>().ok()) {
            cfg = cfg.with_tolerance(tol);
        }
        cfg
    }

    /// Sets both integrator tolerances; non-positive or non-finite values are ignored.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        if tol.is_finite() && tol > 0.0 {
            self.rtol = tol;
            self.atol = tol;
        }
        self
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let c = VerifierConfig::default();
        assert_eq!((c.rtol, c.atol, c.threshold, c.exclusion_radius), (1e-10, 1e-10, 1e-6, 0.1));
        let c = c.with_tolerance(1e-8);
        assert_eq!((c.rtol, c.atol), (1e-8, 1e-8));
        assert_eq!(c.clone().with_tolerance(-1.0), c);
    }
}
