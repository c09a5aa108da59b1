//! Kummer residual of the time-ε flow of `f(λ)∂_λ`.
//!
//! The 3-jet of the flow map comes from the variational equations
//! `J₁' = f'J₁`, `J₂' = f''J₁² + f'J₂`, `J₃' = f'''J₁³ + 3f''J₁J₂ + f'J₃`.
//! When `f` solves the linearized equation at the base point the residual
//! is `O(ε²)`, otherwise `O(ε)`.

use num_complex::Complex64;

use kummer_core::algebra::RatFunc;
use kummer_core::schwarzian::kummer_residual;

use super::companion::integrate_companion;
use crate::config::VerifierConfig;
use crate::crat::CRat;
use crate::dopri::Dopri5;
use crate::path::NumericPath;
use crate::NumericError;

pub trait VectorField: Send + Sync {
    /// `[f, f', f'', f''']` at `y`.
    fn jet(&self, y: Complex64) -> [Complex64; 4];
}

/// `Σ c_k (λ − center)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialField {
    pub center: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl VectorField for PolynomialField {
    fn jet(&self, y: Complex64) -> [Complex64; 4] {
        let t = y - self.center;
        let mut d = self.coeffs.clone();
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for slot in out.iter_mut() {
            *slot = d.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * t + a);
            d = d.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
        }
        out
    }
}

/// A rational vector field.
#[derive(Clone, Debug)]
pub struct RationalField([CRat; 4]);

impl RationalField {
    pub fn new(f: &RatFunc) -> Self {
        let d1 = f.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        RationalField([CRat::new(f), CRat::new(&d1), CRat::new(&d2), CRat::new(&d3)])
    }
}

impl VectorField for RationalField {
    fn jet(&self, y: Complex64) -> [Complex64; 4] {
        self.0.each_ref().map(|d| d.eval(y))
    }
}

#[derive(Clone, Debug)]
pub struct TangencyCheck {
    pub base: Complex64,
    pub eps: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Least-squares slope of `ln residual` against `ln ε`.
    pub slope: f64,
    /// `|f''' + 2Rf' + R'f|` at the base point.
    pub linear_residual: f64,
}

pub fn check_flow_tangency(
    r: &RatFunc,
    field: &dyn VectorField,
    base: Complex64,
    eps: &[f64],
    cfg: &VerifierConfig,
) -> Result<TangencyCheck, NumericError> {
    if eps.len() < 2 || eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(NumericError::InvalidInput("need at least two positive ε values".into()));
    }
    let rr = CRat::new(r);
    let (rv, dr) = rr.eval_d(base);
    let f = field.jet(base);
    let linear_residual = (f[3] + 2.0 * rv * f[1] + dr * f[0]).norm();

    let residual = kummer_residual(r).compile();
    let tol = cfg.rtol.min(1e-12);
    let solver = Dopri5::new(tol, tol.min(cfg.atol) * 1e-2);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut residuals = Vec::with_capacity(eps.len());
    for &e in eps {
        let steps = solver.integrate(zero, Complex64::new(e, 0.0), &[base, one, zero, zero], |_, y, out| {
            let [f0, f1, f2, f3] = field.jet(y[0]);
            out[0] = f0;
            out[1] = f1 * y[1];
            out[2] = f2 * y[1] * y[1] + f1 * y[2];
            out[3] = f3 * y[1] * y[1] * y[1] + 3.0 * f2 * y[1] * y[2] + f1 * y[3];
            Ok(())
        })?;
        let y = &steps.last().expect("end state").y;
        residuals.push(residual.eval(base, y).norm());
    }
    let slope = log_slope(eps, &residuals);
    Ok(TangencyCheck { base, eps: eps.to_vec(), residuals, slope, linear_residual })
}

fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = x.iter().zip(y).map(|(a, b)| (a.ln(), b.max(f64::MIN_POSITIVE).ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// The cubic Taylor field of `ψ₁ψ₂` at the end of `path`, where `ψ₁, ψ₂`
/// start from the identity matrix at the path start.
pub fn product_field(r: &RatFunc, path: &NumericPath, cfg: &VerifierConfig) -> Result<PolynomialField, NumericError> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let sol = integrate_companion(r, [[one, zero], [zero, one]], path, cfg)?;
    let a = &sol.psi1.last().values;
    let b = &sol.psi2.last().values;
    // Leibniz rule up to the third derivative
    let d = [
        a[0] * b[0],
        a[1] * b[0] + a[0] * b[1],
        a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
        a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3],
    ];
    Ok(PolynomialField { center: path.end(), coeffs: vec![d[0], d[1], d[2] / 2.0, d[3] / 6.0] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse::parse_rational_function as parse;

    const EPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn quadratic_field_is_mobius_for_zero_potential() {
        let f = PolynomialField { center: c(0.0), coeffs: vec![c(0.0), c(0.0), c(1.0)] };
        let chk = check_flow_tangency(&RatFunc::zero(), &f, c(0.3), &EPS, &VerifierConfig::default()).unwrap();
        assert!(chk.residuals.iter().all(|&r| r < 1e-12), "{:?}", chk.residuals);
        assert_eq!(chk.linear_residual, 0.0);
    }

    #[test]
    fn airy_product_decays_quadratically() {
        let r = parse("l").unwrap();
        let cfg = VerifierConfig::default();
        let f = product_field(&r, &NumericPath::segment(0.0, 0.5), &cfg).unwrap();
        let chk = check_flow_tangency(&r, &f, c(0.5), &EPS, &cfg).unwrap();
        assert!(chk.linear_residual < 1e-8);
        assert!(chk.slope >= 1.9, "{chk:?}");
    }

    #[test]
    fn non_solution_decays_linearly() {
        let f = RationalField::new(&RatFunc::one());
        let chk = check_flow_tangency(&parse("l").unwrap(), &f, c(0.5), &EPS, &VerifierConfig::default()).unwrap();
        assert!((chk.slope - 1.0).abs() < 0.1, "{chk:?}");
    }

    #[test]
    fn slope_of_power_law() {
        assert!((log_slope(&[1.0, 10.0, 100.0], &[1.0, 100.0, 10000.0]) - 2.0).abs() < 1e-12);
    }
}
