//! Square elements of a plane in the solution space of
//! `f''' + 2Rf' + R'f = 0`.
//!
//! At an ordinary point `x₀` with `ψ₁ = 1 + O(t²)`, `ψ₂ = t + O(t³)`, the
//! element `aψ₁² + bψ₁ψ₂ + cψ₂²` has initial data `(a, b, 2c − R(x₀)a)`.
//! It is a square exactly when `b² = 4ac`.
//!
//! Taking the root from the float series is ill-conditioned when `|β/α|`
//! is large: rounding in `F` grows like `|β/α|^k` in the k-th coefficient.
//! Scaled so that `α = 1`, every witness of a rational plane lies in
//! `ℚ(√D)` with `D` the discriminant of the restricted quadratic, and
//! [`check_cone_plane_exact`] works there without rounding.

use num_complex::Complex64;

use kummer_core::algebra::field::{rational_sqrt, split_square};
use kummer_core::algebra::{Field, Quadratic, RatFunc, TruncSeries, Q};
use kummer_core::ode::{from_potential, series_residual, series_solve, symmetric_power_2, SeriesSolution};

use crate::crat::CRat;
use crate::NumericError;

type C = Complex64;

#[derive(Clone, Debug)]
pub struct ConeWitness {
    /// Line coordinates `(s, t)` of the witness in the given plane.
    pub line: (C, C),
    /// Coordinates in `ψ₁², ψ₁ψ₂, ψ₂²`, normalized to unit length.
    pub abc: [C; 3],
    /// The square root is `αψ₁ + βψ₂`.
    pub alpha: C,
    pub beta: C,
    /// Largest coefficient of the linear-equation residual of the root series.
    pub sqrt_residual: f64,
    /// Largest coefficient of `root − (αψ₁ + βψ₂)`.
    pub match_error: f64,
}

#[derive(Clone, Debug)]
pub struct ConeCheck {
    /// `(q₁₁, q₁₂, q₂₂)` of `b² − 4ac` restricted to the plane.
    pub discriminant: (C, C, C),
    pub witnesses: Vec<ConeWitness>,
    pub max_residual: f64,
}

/// Initial data `(f, f', f'')` at `x0` of `aψ₁² + bψ₁ψ₂ + cψ₂²`.
pub fn sympow_initial(r: &RatFunc, x0: C, abc: [C; 3]) -> [C; 3] {
    let [a, b, c] = abc;
    [a, b, 2.0 * c - CRat::new(r).eval(x0) * a]
}

fn to_abc(r0: C, f: &[C; 3]) -> [C; 3] {
    [f[0], f[1], (f[2] + r0 * f[0]) / 2.0]
}

fn norm3(v: &[C; 3]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Roots of `p x² + q x + r` as projective points `(x, 1)`, with `(1, 0)`
/// for a vanishing leading coefficient.
fn projective_roots(p: C, q: C, r: C, scale: f64) -> Vec<(C, C)> {
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    if p.norm() <= 1e-13 * scale {
        let mut out = vec![(one, zero)];
        if q.norm() > 1e-13 * scale {
            out.push((-r / q, one));
        }
        return out;
    }
    let disc = (q * q - 4.0 * p * r).sqrt();
    let big = if (q + disc).norm() >= (q - disc).norm() { -(q + disc) / 2.0 } else { -(q - disc) / 2.0 };
    let x1 = big / p;
    let x2 = if big.norm() > 0.0 { r / big } else { x1 };
    vec![(x1, one), (x2, one)]
}

/// `plane` holds two sympow initial conditions `(f, f', f'')` at `x0`.
/// Each witness is checked on series of `n` terms.
pub fn check_cone_plane(r: &RatFunc, x0: C, plane: [[C; 3]; 2], n: usize) -> Result<ConeCheck, NumericError> {
    let r0 = CRat::new(r).eval(x0);
    if !r0.is_finite() {
        return Err(NumericError::InvalidInput(format!("{x0} is a pole of R")));
    }
    let v1 = to_abc(r0, &plane[0]);
    let v2 = to_abc(r0, &plane[1]);
    let cross = [v1[1] * v2[2] - v1[2] * v2[1], v1[2] * v2[0] - v1[0] * v2[2], v1[0] * v2[1] - v1[1] * v2[0]];
    if norm3(&cross) <= 1e-12 * norm3(&v1) * norm3(&v2) {
        return Err(NumericError::DegeneratePlane);
    }
    let q11 = v1[1] * v1[1] - 4.0 * v1[0] * v1[2];
    let q22 = v2[1] * v2[1] - 4.0 * v2[0] * v2[2];
    let q12 = 2.0 * v1[1] * v2[1] - 4.0 * (v1[0] * v2[2] + v2[0] * v1[2]);
    let scale = q11.norm().max(q12.norm()).max(q22.norm()).max(f64::MIN_POSITIVE);

    // Solve in the coordinate whose square has the larger coefficient.
    let lines: Vec<(C, C)> = if q22.norm() >= q11.norm() {
        projective_roots(q22, q12, q11, scale).into_iter().map(|(t, s)| (s, t)).collect()
    } else {
        projective_roots(q11, q12, q22, scale)
    };

    let lin = from_potential(r);
    let sym = symmetric_power_2(&lin)?;
    let mut witnesses: Vec<ConeWitness> = Vec::new();
    for (s, t) in lines {
        let mut abc = [s * v1[0] + t * v2[0], s * v1[1] + t * v2[1], s * v1[2] + t * v2[2]];
        let len = norm3(&abc);
        abc.iter_mut().for_each(|x| *x /= len);
        if witnesses.iter().any(|w| norm3(&cross_of(&w.abc, &abc)) < 1e-9) {
            continue;
        }
        let [a, b, c] = abc;
        let (alpha, beta) = if a.norm() >= c.norm() {
            let al = a.sqrt();
            (al, b / (2.0 * al))
        } else {
            let be = c.sqrt();
            (b / (2.0 * be), be)
        };
        let f = series_solve(&sym, &x0, &sympow_initial(r, x0, abc), n)?;
        let root = series_sqrt(&f.series, alpha, beta);
        let res = series_residual(&lin, &SeriesSolution { base: x0, series: root.clone() })?;
        let sqrt_residual = res.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
        let g = series_solve(&lin, &x0, &[alpha, beta], n)?;
        let match_error = (0..root.precision()).map(|k| (root.coeff(k) - g.series.coeff(k)).norm()).fold(0.0, f64::max);
        witnesses.push(ConeWitness { line: (s, t), abc, alpha, beta, sqrt_residual, match_error });
    }
    let max_residual = witnesses.iter().map(|w| w.sqrt_residual.max(w.match_error)).fold(0.0, f64::max);
    Ok(ConeCheck { discriminant: (q11, q12, q22), witnesses, max_residual })
}

/// A witness over `ℚ(√D)`, scaled so that `α = 1` (or `α = 0, β = 1`
/// when the witness is `ψ₂²`).
#[derive(Clone, Debug)]
pub struct ExactConeWitness {
    pub abc: [Quadratic; 3],
    pub alpha: Quadratic,
    pub beta: Quadratic,
    /// Linear-equation residual of the root series.
    pub residual: TruncSeries<Quadratic>,
    /// Root series equals the series of `αψ₁ + βψ₂`.
    pub matches_solution: bool,
}

impl ExactConeWitness {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.coeffs().iter().all(Field::is_zero)
    }

    /// Largest `|coefficient|`, `0.0` exactly when all vanish.
    pub fn residual_norm(&self) -> f64 {
        self.residual.coeffs().iter().map(|c| c.to_complex().norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct ExactConeCheck {
    /// Discriminant of `b² − 4ac` on the line coordinates.
    pub discriminant: Q,
    pub witnesses: Vec<ExactConeWitness>,
}

impl ExactConeCheck {
    pub fn max_residual(&self) -> f64 {
        self.witnesses
            .iter()
            .map(|w| if w.matches_solution { w.residual_norm() } else { f64::INFINITY })
            .fold(0.0, f64::max)
    }
}

fn quad(x: &Q) -> Quadratic {
    Quadratic::rational(x.clone())
}

/// Exact counterpart of [`check_cone_plane`] for a rational base point and
/// rational initial data.
pub fn check_cone_plane_exact(r: &RatFunc, x0: &Q, plane: [[Q; 3]; 2], n: usize) -> Result<ExactConeCheck, NumericError> {
    let r0 = r.eval(x0).ok_or_else(|| NumericError::InvalidInput(format!("{x0} is a pole of R")))?;
    let half = Q::new(1.into(), 2.into());
    let abc = |f: &[Q; 3]| [f[0].clone(), f[1].clone(), (&f[2] + &r0 * &f[0]) * &half];
    let v1 = abc(&plane[0]);
    let v2 = abc(&plane[1]);
    let cross = [
        &v1[1] * &v2[2] - &v1[2] * &v2[1],
        &v1[2] * &v2[0] - &v1[0] * &v2[2],
        &v1[0] * &v2[1] - &v1[1] * &v2[0],
    ];
    if cross.iter().all(Field::is_zero) {
        return Err(NumericError::DegeneratePlane);
    }
    let four = Q::from_integer(4.into());
    let q11 = &v1[1] * &v1[1] - &four * &v1[0] * &v1[2];
    let q22 = &v2[1] * &v2[1] - &four * &v2[0] * &v2[2];
    let q12 = Q::from_integer(2.into()) * &v1[1] * &v2[1] - &four * (&v1[0] * &v2[2] + &v2[0] * &v1[2]);
    let disc = &q12 * &q12 - &four * &q11 * &q22;

    let zero = <Quadratic as Field>::zero();
    let one = <Quadratic as Field>::one();
    // Line coordinates (s, t) with q11 s² + q12 st + q22 t² = 0.
    let mut lines: Vec<(Quadratic, Quadratic)> = Vec::new();
    if Field::is_zero(&q22) {
        lines.push((zero.clone(), one.clone()));
        if !Field::is_zero(&q12) {
            lines.push((one.clone(), quad(&(-&q11 / &q12))));
        }
    } else {
        let root = match rational_sqrt(&disc) {
            Some(q) => quad(&q),
            None => {
                let (sq, k) = split_square(&disc);
                Quadratic::surd(sq, k)
            }
        };
        let den = quad(&(Q::from_integer(2.into()) * &q22)).inv().expect("q22 ≠ 0");
        for sign in [1, -1] {
            let t = quad(&-&q12).add(&if sign == 1 { root.clone() } else { root.neg() }).mul(&den);
            if lines.iter().all(|(_, u)| *u != t) {
                lines.push((one.clone(), t));
            }
        }
    }

    let lin = from_potential(r);
    let sym = symmetric_power_2(&lin)?;
    let base = quad(x0);
    let r0q = quad(&r0);
    let two = quad(&Q::from_integer(2.into()));
    let mut witnesses = Vec::new();
    for (s, t) in lines {
        let v: Vec<Quadratic> = (0..3).map(|i| s.mul(&quad(&v1[i])).add(&t.mul(&quad(&v2[i])))).collect();
        let (w, alpha, beta) = if Field::is_zero(&v[0]) {
            ([zero.clone(), zero.clone(), one.clone()], zero.clone(), one.clone())
        } else {
            let inv = v[0].inv().expect("nonzero");
            let b = v[1].mul(&inv);
            let beta = b.div(&two).expect("nonzero");
            ([one.clone(), b, v[2].mul(&inv)], one.clone(), beta)
        };
        let init = [w[0].clone(), w[1].clone(), two.mul(&w[2]).sub(&r0q.mul(&w[0]))];
        let f = series_solve(&sym, &base, &init, n)?;
        let root = if Field::is_zero(&alpha) {
            let shifted = TruncSeries::new((2..n).map(|k| f.series.coeff(k)).collect());
            let inner = shifted.sqrt_with(one.clone()).ok_or(NumericError::DegeneratePlane)?;
            let mut c = vec![zero.clone()];
            c.extend(inner.coeffs().iter().cloned());
            TruncSeries::new(c)
        } else {
            f.series.sqrt_with(one.clone()).ok_or(NumericError::DegeneratePlane)?
        };
        let residual = series_residual(&lin, &SeriesSolution { base: base.clone(), series: root.clone() })?;
        let g = series_solve(&lin, &base, &[alpha.clone(), beta.clone()], root.precision())?;
        let matches_solution = g.series == root;
        witnesses.push(ExactConeWitness { abc: w, alpha, beta, residual, matches_solution });
    }
    Ok(ExactConeCheck { discriminant: disc, witnesses })
}

fn cross_of(u: &[C; 3], v: &[C; 3]) -> [C; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

/// Square root of `F = (α + βt + …)²` with the given leading terms; when
/// `α = 0` the root is `t·√(F/t²)`.
fn series_sqrt(f: &TruncSeries<C>, alpha: C, beta: C) -> TruncSeries<C> {
    let n = f.precision();
    if alpha.norm() > 1e-8 * beta.norm().max(1.0) {
        return f.sqrt_with(alpha).expect("nonzero constant term");
    }
    let shifted = TruncSeries::new((2..n).map(|k| f.coeff(k)).collect());
    let inner = shifted.sqrt_with(beta).expect("nonzero leading coefficient");
    let mut coeffs = vec![C::new(0.0, 0.0)];
    coeffs.extend(inner.coeffs().iter().take(n - 1).copied());
    TruncSeries::new(coeffs)
}
