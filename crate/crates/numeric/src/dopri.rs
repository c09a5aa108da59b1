//! Dormand–Prince 5(4) with PI step-size control, for complex systems along
//! a straight segment `z(s) = a + s(b − a)`, `s ∈ [0, 1]`.

use num_complex::Complex64;

use crate::config::VerifierConfig;
use crate::NumericError;

type C = Complex64;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const BETA: f64 = 0.04;
const ALPHA: f64 = 0.2 - 0.75 * BETA;

/// An accepted step: segment parameter, point, state and error estimate.
#[derive(Clone, Debug)]
pub struct Step {
    pub s: f64,
    pub z: C,
    pub y: Vec<C>,
    pub error: f64,
}

#[derive(Clone, Debug)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Upper bound on the step in `s`.
    pub h_max: f64,
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Dopri5 { rtol, atol, max_steps: 100_000, h_max: 0.05 }
    }

    pub fn from_config(cfg: &VerifierConfig) -> Self {
        Dopri5 { max_steps: cfg.max_steps, ..Dopri5::new(cfg.rtol, cfg.atol) }
    }

    /// Integrates `dy/dz = f(z, y)` from `a` to `b`. The start state is the
    /// first returned step. `f` returns `Err` to abort.
    pub fn integrate<F>(&self, a: C, b: C, y0: &[C], mut f: F) -> Result<Vec<Step>, NumericError>
    where
        F: FnMut(C, &[C], &mut [C]) -> Result<(), NumericError>,
    {
        let n = y0.len();
        let dz = b - a;
        let mut rhs = |s: f64, y: &[C], out: &mut [C]| -> Result<(), NumericError> {
            f(a + dz * s, y, out)?;
            for v in out.iter_mut() {
                *v *= dz;
            }
            if out.iter().any(|v| !v.is_finite()) {
                return Err(NumericError::SingularEncounter(format!("non-finite derivative at λ = {}", a + dz * s)));
            }
            Ok(())
        };

        let mut steps = vec![Step { s: 0.0, z: a, y: y0.to_vec(), error: 0.0 }];
        if dz.norm() == 0.0 {
            return Ok(steps);
        }
        let mut s = 0.0;
        let mut y = y0.to_vec();
        let mut k = vec![vec![C::new(0.0, 0.0); n]; 7];
        rhs(s, &y, &mut k[0])?;
        let mut h = self.initial_step(&y, &k[0]);
        let mut err_old: f64 = 1e-4;
        let mut tmp = vec![C::new(0.0, 0.0); n];
        let mut y_new = vec![C::new(0.0, 0.0); n];
        let mut attempts = 0usize;

        while s < 1.0 {
            attempts += 1;
            if attempts > self.max_steps || h < 1e-14 {
                return Err(NumericError::StepFailure { at: s });
            }
            let last = s + h >= 1.0;
            if last {
                h = 1.0 - s;
            }
            let stage = |k: &[Vec<C>], coeffs: &[(usize, f64)], tmp: &mut [C], y: &[C]| {
                for i in 0..n {
                    tmp[i] = y[i] + coeffs.iter().map(|&(j, c)| k[j][i] * (h * c)).sum::<C>();
                }
            };
            stage(&k, &[(0, A21)], &mut tmp, &y);
            let mut out = vec![C::new(0.0, 0.0); n];
            rhs(s + C2 * h, &tmp, &mut out)?;
            k[1].copy_from_slice(&out);
            stage(&k, &[(0, A31), (1, A32)], &mut tmp, &y);
            rhs(s + C3 * h, &tmp, &mut out)?;
            k[2].copy_from_slice(&out);
            stage(&k, &[(0, A41), (1, A42), (2, A43)], &mut tmp, &y);
            rhs(s + C4 * h, &tmp, &mut out)?;
            k[3].copy_from_slice(&out);
            stage(&k, &[(0, A51), (1, A52), (2, A53), (3, A54)], &mut tmp, &y);
            rhs(s + C5 * h, &tmp, &mut out)?;
            k[4].copy_from_slice(&out);
            stage(&k, &[(0, A61), (1, A62), (2, A63), (3, A64), (4, A65)], &mut tmp, &y);
            rhs(s + h, &tmp, &mut out)?;
            k[5].copy_from_slice(&out);
            stage(&k, &[(0, A71), (2, A73), (3, A74), (4, A75), (5, A76)], &mut y_new, &y);
            rhs(s + h, &y_new, &mut out)?;
            k[6].copy_from_slice(&out);

            let mut acc = 0.0;
            for i in 0..n {
                let e = h * (k[0][i] * E1 + k[2][i] * E3 + k[3][i] * E4 + k[4][i] * E5 + k[5][i] * E6 + k[6][i] * E7);
                let sc = self.atol + self.rtol * y[i].norm().max(y_new[i].norm());
                acc += (e.norm() / sc).powi(2);
            }
            let err = (acc / n.max(1) as f64).sqrt();
            if !err.is_finite() {
                h *= FAC_MIN;
                continue;
            }
            if err <= 1.0 {
                let fac = (SAFETY * err.max(1e-10).powf(-ALPHA) * err_old.powf(BETA)).clamp(FAC_MIN, FAC_MAX);
                err_old = err.max(1e-4);
                s = if last { 1.0 } else { s + h };
                y.copy_from_slice(&y_new);
                let first = k[6].clone();
                k[0] = first;
                steps.push(Step { s, z: a + dz * s, y: y.clone(), error: err * self.rtol.max(self.atol) });
                h = (h * fac).min(self.h_max);
            } else {
                h *= (SAFETY * err.powf(-ALPHA)).clamp(FAC_MIN, 1.0);
            }
        }
        Ok(steps)
    }

    fn initial_step(&self, y: &[C], f0: &[C]) -> f64 {
        let scale = |i: usize| self.atol + self.rtol * y[i].norm();
        let n = y.len().max(1) as f64;
        let d0 = (y.iter().enumerate().map(|(i, v)| (v.norm() / scale(i)).powi(2)).sum::<f64>() / n).sqrt();
        let d1 = (f0.iter().enumerate().map(|(i, v)| (v.norm() / scale(i)).powi(2)).sum::<f64>() / n).sqrt();
        let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h.clamp(1e-8, self.h_max)
    }
}
