//! `S_λ(ψ₁/ψ₂) = R(λ)` along a path, with the quotient's derivatives taken by
//! series division of the numeric jets.

use num_complex::Complex64;

use kummer_core::algebra::{RatFunc, TruncSeries};
use kummer_core::jet::Jet;
use kummer_core::schwarzian::{schwarzian_jet, Mobius};

use super::companion::integrate_companion;
use crate::config::VerifierConfig;
use crate::crat::CRat;
use crate::path::NumericPath;
use crate::solution::{NumericSolution, Sample};
use crate::NumericError;

#[derive(Clone, Debug)]
pub struct ProjectiveCheck {
    pub max_residual: f64,
    /// `[τ, τ', τ'', τ''']` with `|S_λ(τ) − R(λ)|` per sample.
    pub tau: NumericSolution,
    pub wronskian_drift: f64,
}

/// Fundamental system at the path start used by the check.
pub const PROJECTIVE_INITIAL: [[Complex64; 2]; 2] =
    [[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];

pub fn check_projective_relation(r: &RatFunc, path: &NumericPath, cfg: &VerifierConfig) -> Result<ProjectiveCheck, NumericError> {
    check_projective_relation_with(r, path, None, cfg)
}

/// As [`check_projective_relation`], replacing τ by `m ∘ τ` when given.
pub fn check_projective_relation_with(
    r: &RatFunc,
    path: &NumericPath,
    mobius: Option<&Mobius<Complex64>>,
    cfg: &VerifierConfig,
) -> Result<ProjectiveCheck, NumericError> {
    let sol = integrate_companion(r, PROJECTIVE_INITIAL, path, cfg)?;
    let rr = CRat::new(r);
    let mut samples = Vec::with_capacity(sol.psi1.samples.len());
    for (a, b) in sol.psi1.samples.iter().zip(&sol.psi2.samples) {
        if b.values[0].norm() < cfg.singular_threshold {
            return Err(NumericError::ZeroDenominatorOnPath(b.lambda));
        }
        let tau = quotient_jet(a.lambda, &a.values, &b.values)?;
        let tau = match mobius {
            Some(m) => m.apply_jet(&tau)?,
            None => tau,
        };
        let res = (schwarzian_jet(&tau)? - rr.eval(a.lambda)).norm();
        samples.push(Sample { s: a.s, lambda: a.lambda, values: tau.values(), error: a.error.max(b.error), residual: Some(res) });
    }
    let tau = NumericSolution { samples };
    Ok(ProjectiveCheck { max_residual: tau.max_residual(), tau, wronskian_drift: sol.wronskian_drift })
}

fn taylor(values: &[Complex64]) -> TruncSeries<Complex64> {
    let mut fact = 1.0;
    let coeffs = values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if k > 0 {
                fact *= k as f64;
            }
            v / fact
        })
        .collect();
    TruncSeries::new(coeffs)
}

/// 3-jet of `num/den` at λ from the derivative lists of both.
pub(crate) fn quotient_jet(lambda: Complex64, num: &[Complex64], den: &[Complex64]) -> Result<Jet<Complex64>, NumericError> {
    let q = taylor(num).div(&taylor(den)).ok_or(NumericError::ZeroDenominatorOnPath(lambda))?;
    let mut fact = 1.0;
    let coeffs = (1..num.len())
        .map(|k| {
            fact *= k as f64;
            q.coeff(k) * fact
        })
        .collect();
    Ok(Jet::new(lambda, q.coeff(0), coeffs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse::parse_rational_function as parse;

    #[test]
    fn zero_potential_is_mobius() {
        let chk = check_projective_relation(&RatFunc::zero(), &NumericPath::segment(0.0, 1.0), &VerifierConfig::default()).unwrap();
        assert!(chk.max_residual < 1e-8);
        // τ = 1/(1 + λ)
        let last = chk.tau.last();
        assert!((last.values[0] - 0.5).norm() < 1e-10);
    }

    #[test]
    fn airy_on_unit_segment() {
        let chk = check_projective_relation(&parse("l").unwrap(), &NumericPath::segment(0.0, 1.0), &VerifierConfig::default()).unwrap();
        assert!(chk.max_residual < 1e-6, "{}", chk.max_residual);
    }

    #[test]
    fn mobius_invariance() {
        let m = Mobius::new(Complex64::new(2.0, 0.5), Complex64::new(-1.0, 0.0), Complex64::new(0.3, -0.2), Complex64::new(1.5, 0.0)).unwrap();
        let path = NumericPath::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.5), Complex64::new(1.0, 0.0)]).unwrap();
        let chk = check_projective_relation_with(&parse("l").unwrap(), &path, Some(&m), &VerifierConfig::default()).unwrap();
        assert!(chk.max_residual < 1e-6, "{}", chk.max_residual);
    }

    #[test]
    fn vanishing_denominator_detected() {
        // ψ₂ = 1 + λ vanishes at the path end
        let err = check_projective_relation(&RatFunc::zero(), &NumericPath::segment(0.0, -1.0), &VerifierConfig::default());
        assert!(matches!(err, Err(NumericError::ZeroDenominatorOnPath(_))));
    }
}
