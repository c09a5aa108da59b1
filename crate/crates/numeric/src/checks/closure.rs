//! Closure of Kummer solutions under composition and inversion.
//!
//! `φ₁` is integrated along the path together with `φ₂` carried along
//! `μ = φ₁(λ)`: `d/dλ [φ₂, φ₂', φ₂''](μ) = φ₁'·[φ₂', φ₂'', φ₂'''](μ)`.

use num_complex::Complex64;

use kummer_core::algebra::RatFunc;
use kummer_core::jet::{jet_compose, jet_invert, Jet};
use kummer_core::schwarzian::kummer_residual;

use crate::config::VerifierConfig;
use crate::crat::CRat;
use crate::dopri::Dopri5;
use crate::path::{poles_of, NumericPath};
use crate::solution::{NumericSolution, Sample};
use crate::NumericError;

#[derive(Clone, Debug)]
pub struct ClosureCheck {
    pub composite_residual: f64,
    pub inverse_residual: f64,
    /// Jets of `φ₂∘φ₁` with their Kummer residuals.
    pub composite: NumericSolution,
}

impl ClosureCheck {
    pub fn max_residual(&self) -> f64 {
        self.composite_residual.max(self.inverse_residual)
    }
}

/// `φ''' = (3/2)φ''²/φ' + φ'(R(λ) − R(φ)φ'²)`.
fn kummer_third(rr: &CRat, lambda: Complex64, y: &[Complex64]) -> Complex64 {
    1.5 * y[2] * y[2] / y[1] + y[1] * (rr.eval(lambda) - rr.eval(y[0]) * y[1] * y[1])
}

/// `inner` starts at the path start; `outer` starts at the target of
/// `inner`. Both need order ≥ 2; higher entries are ignored.
pub fn check_groupoid_closure(
    r: &RatFunc,
    inner: &Jet<Complex64>,
    outer: &Jet<Complex64>,
    path: &NumericPath,
    cfg: &VerifierConfig,
) -> Result<ClosureCheck, NumericError> {
    if inner.order() < 2 || outer.order() < 2 {
        return Err(NumericError::InvalidInput("closure needs initial 2-jets".into()));
    }
    if (inner.source() - path.start()).norm() > 1e-12 {
        return Err(NumericError::InvalidInput("inner jet must start at the path start".into()));
    }
    if (outer.source() - inner.target()).norm() > 1e-12 {
        return Err(NumericError::DomainMismatch("outer jet source differs from inner jet target".into()));
    }
    path.preflight(r, cfg.exclusion_radius)?;
    let rr = CRat::new(r);
    let poles = poles_of(r);
    let y0 = [*inner.target(), inner.derivative(1), inner.derivative(2), *outer.target(), outer.derivative(1), outer.derivative(2)];
    let steps = path.integrate(&Dopri5::from_config(cfg), &y0, |z, y, out| {
        let mu = y[0];
        if let Some(p) = poles.iter().find(|p| (mu - **p).norm() < cfg.exclusion_radius) {
            return Err(NumericError::DomainMismatch(format!("inner solution reaches {mu}, near the pole {p}")));
        }
        if y[1].norm() < cfg.singular_threshold || y[4].norm() < cfg.singular_threshold {
            return Err(NumericError::SingularEncounter("first derivative vanishes".into()));
        }
        out[0] = y[1];
        out[1] = y[2];
        out[2] = kummer_third(&rr, z, &y[..3]);
        out[3] = y[1] * y[4];
        out[4] = y[1] * y[5];
        out[5] = y[1] * kummer_third(&rr, mu, &y[3..]);
        Ok(())
    })?;

    let residual = kummer_residual(r).compile();
    let mut samples = Vec::with_capacity(steps.len());
    let mut inverse_residual = 0.0f64;
    for st in steps {
        let y = &st.y;
        let j1 = Jet::new(st.z, y[0], vec![y[1], y[2], kummer_third(&rr, st.z, &y[..3])])?;
        let j2 = Jet::new(y[0], y[3], vec![y[4], y[5], kummer_third(&rr, y[0], &y[3..])])?;
        let comp = jet_compose(&j2, &j1)?;
        let res = residual.eval(st.z, &comp.values()).norm();
        let inv = jet_invert(&j1)?;
        inverse_residual = inverse_residual.max(residual.eval(*inv.source(), &inv.values()).norm());
        samples.push(Sample { s: st.s, lambda: st.z, values: comp.values(), error: st.error, residual: Some(res) });
    }
    let composite = NumericSolution { samples };
    Ok(ClosureCheck { composite_residual: composite.max_residual(), inverse_residual, composite })
}

/// Near-identity initial jets at `lambda0` used by default.
pub fn default_jets(lambda0: Complex64) -> (Jet<Complex64>, Jet<Complex64>) {
    let c = |x: f64| Complex64::new(x, 0.0);
    let mid = lambda0 + 0.01;
    let inner = Jet::new(lambda0, mid, vec![c(1.02), c(0.03)]).expect("invertible");
    let outer = Jet::new(mid, mid + 0.005, vec![c(0.97), c(-0.02)]).expect("invertible");
    (inner, outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse::parse_rational_function as parse;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn mobius_jets_compose_for_zero_potential() {
        let inner = Jet::new(c(0.0), c(0.1), vec![c(1.1), c(0.2)]).unwrap();
        let outer = Jet::new(c(0.1), c(0.05), vec![c(0.9), c(-0.1)]).unwrap();
        let chk = check_groupoid_closure(&RatFunc::zero(), &inner, &outer, &NumericPath::segment(0.0, 1.0), &VerifierConfig::default()).unwrap();
        assert!(chk.composite_residual < 1e-8, "{}", chk.composite_residual);
        assert!(chk.inverse_residual < 1e-8);
    }

    #[test]
    fn airy_near_identity() {
        let (inner, outer) = default_jets(c(0.0));
        let chk = check_groupoid_closure(&parse("l").unwrap(), &inner, &outer, &NumericPath::segment(0.0, 1.0), &VerifierConfig::default()).unwrap();
        assert!(chk.composite_residual < 1e-6, "{}", chk.composite_residual);
        assert!(chk.inverse_residual < 1e-6, "{}", chk.inverse_residual);
    }

    #[test]
    fn mismatched_jets_rejected() {
        let inner = Jet::new(c(0.0), c(0.1), vec![c(1.0), c(0.0)]).unwrap();
        let outer = Jet::new(c(0.2), c(0.1), vec![c(1.0), c(0.0)]).unwrap();
        let err = check_groupoid_closure(&RatFunc::zero(), &inner, &outer, &NumericPath::segment(0.0, 1.0), &VerifierConfig::default());
        assert!(matches!(err, Err(NumericError::DomainMismatch(_))));
    }

    #[test]
    fn inner_range_near_pole_aborts() {
        // φ₁ runs from 0.5 towards 1.5 and meets the pole of R at 1.2
        let inner = Jet::new(c(0.0), c(0.5), vec![c(1.0), c(0.0)]).unwrap();
        let outer = Jet::new(c(0.5), c(0.5), vec![c(1.0), c(0.0)]).unwrap();
        let r = parse("1/(l-6/5)").unwrap();
        let err = check_groupoid_closure(&r, &inner, &outer, &NumericPath::segment(0.0, 1.0), &VerifierConfig::default());
        assert!(matches!(err, Err(NumericError::DomainMismatch(_))), "{err:?}");
    }
}
