//! Named verifier checks behind a common trait, selected at runtime.

use num_complex::Complex64;

use kummer_core::algebra::{RatFunc, Q};

use crate::checks::closure::{check_groupoid_closure, default_jets};
use crate::checks::companion::integrate_companion;
use crate::checks::cone::{check_cone_plane, check_cone_plane_exact, sympow_initial};
use crate::checks::foliation::integrate_foliation;
use crate::checks::projective::check_projective_relation;
use crate::checks::tangency::{check_flow_tangency, product_field};
use crate::config::VerifierConfig;
use crate::path::NumericPath;
use crate::NumericError;

/// Relative Wronskian drift tolerated on companion integrations.
pub const WRONSKIAN_THRESHOLD: f64 = 1e-8;
/// Minimum log-log slope for flow tangency.
pub const TANGENCY_SLOPE: f64 = 1.9;
pub const TANGENCY_EPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Coefficient bound for square-root series in the cone check.
pub const CONE_THRESHOLD: f64 = 1e-9;
pub const CONE_ORDER: usize = 12;

pub struct CheckContext {
    pub r: RatFunc,
    pub path: NumericPath,
    pub config: VerifierConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    /// What `value` measures.
    pub metric: String,
    pub value: f64,
    pub threshold: f64,
    /// `true` when larger values are better (slopes), `false` for residuals.
    pub higher_is_better: bool,
}

impl CheckReport {
    fn residual(name: &str, metric: &str, value: f64, threshold: f64) -> Self {
        CheckReport { name: name.into(), metric: metric.into(), value, threshold, higher_is_better: false }
    }

    pub fn passed(&self) -> bool {
        if self.higher_is_better {
            self.value >= self.threshold
        } else {
            self.value <= self.threshold
        }
    }
}

pub trait VerifierCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, ctx: &CheckContext) -> Result<CheckReport, NumericError>;
}

struct Projective;
struct Closure;
struct Companion;
struct Foliation;
struct Tangency;
struct Cone;

impl VerifierCheck for Projective {
    fn name(&self) -> &'static str {
        "projective"
    }
    fn run(&self, ctx: &CheckContext) -> Result<CheckReport, NumericError> {
        let chk = check_projective_relation(&ctx.r, &ctx.path, &ctx.config)?;
        Ok(CheckReport::residual(self.name(), "max |S(psi1/psi2) - R|", chk.max_residual, ctx.config.threshold))
    }
}

impl VerifierCheck for Closure {
    fn name(&self) -> &'static str {
        "closure"
    }
    fn run(&self, ctx: &CheckContext) -> Result<CheckReport, NumericError> {
        let (inner, outer) = default_jets(ctx.path.start());
        let chk = check_groupoid_closure(&ctx.r, &inner, &outer, &ctx.path, &ctx.config)?;
        Ok(CheckReport::residual(self.name(), "max Kummer residual of composite and inverse", chk.max_residual(), ctx.config.threshold))
    }
}

impl VerifierCheck for Companion {
    fn name(&self) -> &'static str {
        "companion"
    }
    fn run(&self, ctx: &CheckContext) -> Result<CheckReport, NumericError> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let sol = integrate_companion(&ctx.r, [[one, zero], [zero, one]], &ctx.path, &ctx.config)?;
        Ok(CheckReport::residual(self.name(), "relative Wronskian drift", sol.wronskian_drift, WRONSKIAN_THRESHOLD))
    }
}

impl VerifierCheck for Foliation {
    fn name(&self) -> &'static str {
        "foliation"
    }
    fn run(&self, ctx: &CheckContext) -> Result<CheckReport, NumericError> {
        let start = ctx.path.start();
        let tau_path = NumericPath::new(ctx.path.waypoints.iter().map(|z| z - start).collect())?;
        let one = Complex64::new(1.0, 0.0);
        let sol = integrate_foliation(&ctx.r, [start, one, Complex64::new(0.0, 0.0)], &tau_path, &ctx.config)?;
        Ok(CheckReport::residual(self.name(), "max |S_tau(lambda) + lambda_tau^2 R(lambda)|", sol.max_residual(), ctx.config.threshold))
    }
}

impl VerifierCheck for Tangency {
    fn name(&self) -> &'static str {
        "tangency"
    }
    fn run(&self, ctx: &CheckContext) -> Result<CheckReport, NumericError> {
        let field = product_field(&ctx.r, &ctx.path, &ctx.config)?;
        let chk = check_flow_tangency(&ctx.r, &field, ctx.path.end(), &TANGENCY_EPS, &ctx.config)?;
        Ok(CheckReport {
            name: self.name().into(),
            metric: "log-log slope of the flow residual".into(),
            value: chk.slope,
            threshold: TANGENCY_SLOPE,
            higher_is_better: true,
        })
    }
}

impl VerifierCheck for Cone {
    fn name(&self) -> &'static str {
        "cone"
    }
    /// Exact at real path starts (rounded to 1/1000), float otherwise.
    fn run(&self, ctx: &CheckContext) -> Result<CheckReport, NumericError> {
        let start = ctx.path.start();
        let metric = "max square-root series residual";
        if start.im == 0.0 {
            let x0 = Q::new(((start.re * 1000.0).round() as i64).into(), 1000.into());
            let r0 = ctx.r.eval(&x0).ok_or_else(|| NumericError::InvalidInput("path starts at a pole".into()))?;
            let q = |n: i64, d: i64| Q::new(n.into(), d.into());
            let two = q(2, 1);
            let init = |a: Q, b: Q, c: Q| [a.clone(), b, &two * &c - &r0 * &a];
            let plane = [init(q(1, 1), q(1, 2), q(1, 1)), init(q(0, 1), q(1, 1), q(-2, 1))];
            let chk = check_cone_plane_exact(&ctx.r, &x0, plane, CONE_ORDER)?;
            return Ok(CheckReport::residual(self.name(), metric, chk.max_residual(), CONE_THRESHOLD));
        }
        let c = |x: f64| Complex64::new(x, 0.0);
        let plane = [sympow_initial(&ctx.r, start, [c(1.0), c(0.5), c(1.0)]), sympow_initial(&ctx.r, start, [c(0.0), c(1.0), c(-2.0)])];
        let chk = check_cone_plane(&ctx.r, start, plane, CONE_ORDER)?;
        Ok(CheckReport::residual(self.name(), metric, chk.max_residual, CONE_THRESHOLD))
    }
}

pub struct CheckRegistry {
    checks: Vec<Box<dyn VerifierCheck>>,
}

impl CheckRegistry {
    pub fn empty() -> Self {
        CheckRegistry { checks: Vec::new() }
    }

    /// projective, closure, companion, foliation, tangency, cone.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(Projective));
        reg.register(Box::new(Closure));
        reg.register(Box::new(Companion));
        reg.register(Box::new(Foliation));
        reg.register(Box::new(Tangency));
        reg.register(Box::new(Cone));
        reg
    }

    /// Adds a check, replacing any with the same name.
    pub fn register(&mut self, check: Box<dyn VerifierCheck>) {
        match self.checks.iter().position(|c| c.name() == check.name()) {
            Some(i) => self.checks[i] = check,
            None => self.checks.push(check),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn VerifierCheck> {
        self.checks.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    /// Runs the named checks in order; unknown names are an error.
    pub fn run(&self, names: &[&str], ctx: &CheckContext) -> Result<Vec<CheckReport>, NumericError> {
        names
            .iter()
            .map(|n| self.get(n).ok_or_else(|| NumericError::UnknownCheck(n.to_string()))?.run(ctx))
            .collect()
    }
}

impl Default for CheckRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse::parse_rational_function as parse;

    fn airy() -> CheckContext {
        CheckContext { r: parse("l").unwrap(), path: NumericPath::segment(0.0, 1.0), config: VerifierConfig::default() }
    }

    #[test]
    fn all_standard_checks_pass_for_airy() {
        let reg = CheckRegistry::standard();
        let reports = reg.run(&reg.names(), &airy()).unwrap();
        assert_eq!(reports.len(), 6);
        for r in reports {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn unknown_check_is_an_error() {
        let err = CheckRegistry::standard().run(&["nope"], &airy()).unwrap_err();
        assert_eq!(err, NumericError::UnknownCheck("nope".into()));
    }

    #[test]
    fn registration_replaces_by_name() {
        struct Fixed;
        impl VerifierCheck for Fixed {
            fn name(&self) -> &'static str {
                "projective"
            }
            fn run(&self, _: &CheckContext) -> Result<CheckReport, NumericError> {
                Ok(CheckReport::residual("projective", "fixed", 1.0, 0.5))
            }
        }
        let mut reg = CheckRegistry::standard();
        reg.register(Box::new(Fixed));
        assert_eq!(reg.names().len(), 6);
        assert!(!reg.run(&["projective"], &airy()).unwrap()[0].passed());
    }
}
