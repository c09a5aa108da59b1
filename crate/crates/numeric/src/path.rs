//! Piecewise-linear paths in ℂ and the pole-distance preflight.

use num_complex::Complex64;

use kummer_core::algebra::factor::pole_data;
use kummer_core::algebra::{Location, Poly, RatFunc};
use kummer_core::algebra::Field;

use crate::dopri::{Dopri5, Step};
use crate::NumericError;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericPath {
    pub waypoints: Vec<Complex64>,
}

impl NumericPath {
    pub fn new(waypoints: Vec<Complex64>) -> Result<Self, NumericError> {
        if waypoints.len() < 2 {
            return Err(NumericError::InvalidInput("a path needs at least two waypoints".into()));
        }
        if waypoints.iter().any(|z| !z.is_finite()) {
            return Err(NumericError::InvalidInput("non-finite waypoint".into()));
        }
        Ok(NumericPath { waypoints })
    }

    /// Real segment `[a, b]`.
    pub fn segment(a: f64, b: f64) -> Self {
        NumericPath { waypoints: vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)] }
    }

    /// Parses `"0,1"` or `"0;0.5+0.5i;1"`; waypoints separated by `,` or `;`.
    pub fn parse(text: &str) -> Result<Self, NumericError> {
        let pts = text
            .split([',', ';'])
            .map(|t| kummer_core::jet::parse_scalar_float(t.trim()).map_err(|e| NumericError::InvalidInput(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(pts)
    }

    pub fn start(&self) -> Complex64 {
        self.waypoints[0]
    }

    pub fn end(&self) -> Complex64 {
        *self.waypoints.last().expect("nonempty")
    }

    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.waypoints.windows(2).map(|w| (w[0], w[1]))
    }

    /// Integrates `dy/dλ = f(λ, y)` along every segment in turn. Step
    /// parameters are global: segment `k` covers `s ∈ [k, k + 1]`.
    pub fn integrate<F>(&self, solver: &Dopri5, y0: &[Complex64], mut f: F) -> Result<Vec<Step>, NumericError>
    where
        F: FnMut(Complex64, &[Complex64], &mut [Complex64]) -> Result<(), NumericError>,
    {
        let mut out: Vec<Step> = Vec::new();
        let mut y = y0.to_vec();
        for (k, (a, b)) in self.segments().enumerate() {
            let steps = solver.integrate(a, b, &y, &mut f).map_err(|e| match e {
                NumericError::StepFailure { at } => NumericError::StepFailure { at: at + k as f64 },
                other => other,
            })?;
            let skip = usize::from(k > 0);
            for mut st in steps.into_iter().skip(skip) {
                st.s += k as f64;
                out.push(st);
            }
            y = out.last().expect("at least the start").y.clone();
        }
        Ok(out)
    }

    /// Smallest distance from the path to `p`.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.segments().map(|(a, b)| segment_distance(a, b, p)).fold(f64::INFINITY, f64::min)
    }

    /// Fails when any pole of `r` lies within `radius` of the path.
    pub fn preflight(&self, r: &RatFunc, radius: f64) -> Result<(), NumericError> {
        self.preflight_points(&poles_of(r), radius)
    }

    pub fn preflight_points(&self, poles: &[Complex64], radius: f64) -> Result<(), NumericError> {
        for &pole in poles {
            let distance = self.distance_to(pole);
            if distance < radius {
                return Err(NumericError::PoleTooClose { pole, distance });
            }
        }
        Ok(())
    }

    /// `[0, 1]` when it clears the poles of `r`, otherwise the first clear
    /// unit segment among a few shifted candidates.
    pub fn default_for(r: &RatFunc, radius: f64) -> Result<Self, NumericError> {
        let poles = poles_of(r);
        let candidates = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 0.5), (0.0, -0.5), (-2.0, 0.0), (0.5, 1.5), (3.0, 3.0)];
        for (re, im) in candidates {
            let a = Complex64::new(re, im);
            let p = NumericPath { waypoints: vec![a, a + 1.0] };
            if p.preflight_points(&poles, radius).is_ok() {
                return Ok(p);
            }
        }
        Err(NumericError::InvalidInput("no pole-free default path".into()))
    }
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * d.conj()).re / len2;
    (a + d * t.clamp(0.0, 1.0) - p).norm()
}

/// Poles of `r` in ℂ; places of degree ≥ 3 are located by Durand–Kerner.
pub fn poles_of(r: &RatFunc) -> Vec<Complex64> {
    let mut out = Vec::new();
    for datum in pole_data(r.den()) {
        match datum.location {
            Location::Point(q) => out.push(q.to_complex()),
            Location::Unsplit(f) => out.extend(durand_kerner(&f)),
        }
    }
    out
}

/// All complex roots of a squarefree polynomial.
pub fn durand_kerner(p: &Poly) -> Vec<Complex64> {
    let Some(n) = p.degree() else { return vec![] };
    if n == 0 {
        return vec![];
    }
    let c: Vec<Complex64> = p.monic().coeffs().iter().map(Complex64::from_rational).collect();
    let eval = |x: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a);
    let bound = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(bound, 0.4 + std::f64::consts::TAU * k as f64 / n as f64)).collect();
    for _ in 0..1000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let den: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse::parse_rational_function as parse;

    #[test]
    fn pole_free_segment_passes() {
        let p = NumericPath::segment(0.0, 1.0);
        assert!(p.preflight(&parse("l").unwrap(), 0.1).is_ok());
        assert!(p.preflight(&parse("1/(l-2)").unwrap(), 0.1).is_ok());
    }

    #[test]
    fn nearby_poles_are_rejected() {
        let p = NumericPath::segment(0.0, 1.0);
        let err = p.preflight(&parse("1/(l-1/2)^2").unwrap(), 0.1).unwrap_err();
        assert!(matches!(err, NumericError::PoleTooClose { distance, .. } if distance < 1e-12));
        // ±0.05i sits within 0.1 of the segment interior
        assert!(p.preflight(&parse("1/(400*l^2+1)").unwrap(), 0.1).is_err());
    }

    #[test]
    fn unsplit_poles_located() {
        let mut z = poles_of(&parse("1/(l^3-2)").unwrap());
        z.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        let cube = 2f64.cbrt();
        assert!((z[1] - Complex64::new(cube, 0.0)).norm() < 1e-12);
        assert!(z.iter().all(|w| (w.powu(3) - 2.0).norm() < 1e-12));
    }

    #[test]
    fn default_path_avoids_poles() {
        let r = parse("1/(2*l^2)").unwrap();
        let p = NumericPath::default_for(&r, 0.1).unwrap();
        assert!(p.preflight(&r, 0.1).is_ok());
        assert_eq!(NumericPath::default_for(&parse("l").unwrap(), 0.1).unwrap(), NumericPath::segment(0.0, 1.0));
    }

    #[test]
    fn parses_waypoints() {
        let p = NumericPath::parse("0; 0.5+0.5i; 1").unwrap();
        assert_eq!(p.waypoints.len(), 3);
        assert!(NumericPath::parse("0").is_err());
    }
}
