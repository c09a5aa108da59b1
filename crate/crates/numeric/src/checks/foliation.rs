//! `λ(τ)` solving `S_τ(λ) + λ_τ² R(λ) = 0`, integrated in the τ-plane as
//! `λ_τττ = (3/2)λ_ττ²/λ_τ − λ_τ³R(λ)`.

use num_complex::Complex64;

use kummer_core::algebra::RatFunc;
use kummer_core::schwarzian::schwarz_residual;

use crate::config::VerifierConfig;
use crate::crat::CRat;
use crate::dopri::Dopri5;
use crate::path::{poles_of, NumericPath};
use crate::solution::{NumericSolution, Sample};
use crate::NumericError;

/// `initial = [λ, λ_τ, λ_ττ]` at the start of `tau_path`. Samples carry
/// `[λ, λ_τ, λ_ττ, λ_τττ]` and the residual of the foliation equation.
pub fn integrate_foliation(
    r: &RatFunc,
    initial: [Complex64; 3],
    tau_path: &NumericPath,
    cfg: &VerifierConfig,
) -> Result<NumericSolution, NumericError> {
    if initial[1].norm() < cfg.singular_threshold {
        return Err(NumericError::SingularEncounter("λ_τ vanishes at the start".into()));
    }
    let rr = CRat::new(r);
    let poles = poles_of(r);
    let third = |y: &[Complex64]| 1.5 * y[2] * y[2] / y[1] - y[1] * y[1] * y[1] * rr.eval(y[0]);
    let steps = tau_path.integrate(&Dopri5::from_config(cfg), &initial, |_, y, out| {
        if y[1].norm() < cfg.singular_threshold {
            return Err(NumericError::SingularEncounter(format!("λ_τ = {} below threshold", y[1])));
        }
        if let Some(p) = poles.iter().find(|p| (y[0] - **p).norm() < cfg.exclusion_radius) {
            return Err(NumericError::SingularEncounter(format!("λ = {} approaches the pole {p}", y[0])));
        }
        out[0] = y[1];
        out[1] = y[2];
        out[2] = third(y);
        Ok(())
    })?;
    let residual = schwarz_residual(r).compile();
    let samples = steps
        .into_iter()
        .map(|st| {
            let values = vec![st.y[0], st.y[1], st.y[2], third(&st.y)];
            let res = residual.eval(st.z, &values).norm();
            Sample { s: st.s, lambda: st.z, values, error: st.error, residual: Some(res) }
        })
        .collect();
    Ok(NumericSolution { samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse::parse_rational_function as parse;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn identity_for_zero_potential() {
        let sol = integrate_foliation(&RatFunc::zero(), [c(0.0), c(1.0), c(0.0)], &NumericPath::segment(0.0, 1.0), &VerifierConfig::default())
            .unwrap();
        for s in &sol.samples {
            assert!((s.values[0] - s.lambda).norm() < 1e-10);
        }
    }

    #[test]
    fn mobius_closed_form() {
        let path = NumericPath::new(vec![c(0.0), Complex64::new(0.3, 0.4)]).unwrap();
        for p in [NumericPath::segment(0.0, 0.5), NumericPath::segment(0.0, -0.5), path] {
            let sol = integrate_foliation(&RatFunc::zero(), [c(0.0), c(1.0), c(2.0)], &p, &VerifierConfig::default()).unwrap();
            for s in &sol.samples {
                let t = s.lambda;
                assert!((s.values[0] - t / (1.0 - t)).norm() < 1e-8, "τ = {t}");
            }
        }
    }

    #[test]
    fn airy_residual_small() {
        let sol = integrate_foliation(&parse("l").unwrap(), [c(0.2), c(1.0), c(0.1)], &NumericPath::segment(0.0, 0.8), &VerifierConfig::default())
            .unwrap();
        assert!(sol.max_residual() < 1e-8);
    }

    #[test]
    fn vanishing_derivative_rejected() {
        let err = integrate_foliation(&RatFunc::zero(), [c(0.0), c(0.0), c(1.0)], &NumericPath::segment(0.0, 1.0), &VerifierConfig::default());
        assert!(matches!(err, Err(NumericError::SingularEncounter(_))));
    }
}
