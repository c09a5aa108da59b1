//! Fundamental solutions of `ψ'' = −(R/2)ψ` along a path.

use num_complex::Complex64;

use kummer_core::algebra::RatFunc;

use crate::config::VerifierConfig;
use crate::crat::CRat;
use crate::dopri::Dopri5;
use crate::path::NumericPath;
use crate::solution::{NumericSolution, Sample};
use crate::NumericError;

#[derive(Clone, Debug)]
pub struct CompanionSolution {
    pub psi1: NumericSolution,
    pub psi2: NumericSolution,
    /// `max |W(s) − W(0)| / |W(0)|` over the samples.
    pub wronskian_drift: f64,
}

/// `initial = [[ψ₁, ψ₂], [ψ₁', ψ₂']]` at the path start. Samples carry
/// `[ψ, ψ', ψ'', ψ''']`.
pub fn integrate_companion(
    r: &RatFunc,
    initial: [[Complex64; 2]; 2],
    path: &NumericPath,
    cfg: &VerifierConfig,
) -> Result<CompanionSolution, NumericError> {
    let w0 = initial[0][0] * initial[1][1] - initial[0][1] * initial[1][0];
    if w0.norm() < cfg.singular_threshold {
        return Err(NumericError::InvalidInput("initial matrix is singular".into()));
    }
    path.preflight(r, cfg.exclusion_radius)?;
    let rr = CRat::new(r);
    let y0 = [initial[0][0], initial[1][0], initial[0][1], initial[1][1]];
    let steps = path.integrate(&Dopri5::from_config(cfg), &y0, |z, y, out| {
        let half = -0.5 * rr.eval(z);
        out[0] = y[1];
        out[1] = half * y[0];
        out[2] = y[3];
        out[3] = half * y[2];
        Ok(())
    })?;
    let mut psi1 = Vec::with_capacity(steps.len());
    let mut psi2 = Vec::with_capacity(steps.len());
    let mut drift = 0.0f64;
    for st in steps {
        let (rv, dr) = rr.eval_d(st.z);
        let jet = |p: Complex64, dp: Complex64| vec![p, dp, -0.5 * rv * p, -0.5 * (dr * p + rv * dp)];
        let w = st.y[0] * st.y[3] - st.y[2] * st.y[1];
        let rel = ((w - w0) / w0).norm();
        drift = drift.max(rel);
        psi1.push(Sample { s: st.s, lambda: st.z, values: jet(st.y[0], st.y[1]), error: st.error, residual: Some(rel) });
        psi2.push(Sample { s: st.s, lambda: st.z, values: jet(st.y[2], st.y[3]), error: st.error, residual: Some(rel) });
    }
    Ok(CompanionSolution {
        psi1: NumericSolution { samples: psi1 },
        psi2: NumericSolution { samples: psi2 },
        wronskian_drift: drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse::parse_rational_function as parse;
    use kummer_core::algebra::Field;
    use kummer_core::ode::{from_potential, series_solve};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    const IDENTITY: [[Complex64; 2]; 2] = [[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];

    #[test]
    fn zero_potential_gives_one_and_lambda() {
        let sol = integrate_companion(&RatFunc::zero(), IDENTITY, &NumericPath::segment(0.0, 1.0), &VerifierConfig::default()).unwrap();
        for (a, b) in sol.psi1.samples.iter().zip(&sol.psi2.samples) {
            assert!((a.values[0] - 1.0).norm() < 1e-12);
            assert!((b.values[0] - b.lambda).norm() < 1e-12);
        }
    }

    #[test]
    fn matches_series_at_point_three() {
        let r = parse("l").unwrap();
        let sol = integrate_companion(&r, IDENTITY, &NumericPath::segment(0.0, 0.3), &VerifierConfig::default()).unwrap();
        assert!(sol.wronskian_drift < 1e-8);
        let ode = from_potential(&r);
        let x = c(0.3);
        for (init, got) in [([c(1.0), c(0.0)], sol.psi1.last()), ([c(0.0), c(1.0)], sol.psi2.last())] {
            let s = series_solve(&ode, &Complex64::zero(), &init, 40).unwrap();
            let v = s.series.eval(&x);
            let dv = s.series.derivative().eval(&x);
            assert!((got.values[0] - v).norm() < 1e-8);
            assert!((got.values[1] - dv).norm() < 1e-8);
        }
    }

    #[test]
    fn wronskian_conserved_on_complex_path() {
        let r = parse("l^2 - 3/(l-2)").unwrap();
        let path = NumericPath::new(vec![c(0.0), Complex64::new(0.5, 0.7), c(1.2)]).unwrap();
        let init = [[c(2.0), c(1.0)], [Complex64::new(0.0, 1.0), c(1.0)]];
        let sol = integrate_companion(&r, init, &path, &VerifierConfig::default()).unwrap();
        assert!(sol.wronskian_drift < 1e-8, "{}", sol.wronskian_drift);
    }

    #[test]
    fn singular_matrix_rejected() {
        let init = [[c(1.0), c(2.0)], [c(1.0), c(2.0)]];
        assert!(integrate_companion(&RatFunc::zero(), init, &NumericPath::segment(0.0, 1.0), &VerifierConfig::default()).is_err());
    }
}
