//! Monic linear ODEs over ℚ(λ): the potential operator ψ'' = −½Rψ, its
//! companion matrix and second symmetric power, the attached Riccati
//! equation, and power-series solutions at ordinary points.

use std::fmt;

use thiserror::Error;

use crate::algebra::field::{factorial, Field, Q};
use crate::algebra::linalg;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::series::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdeError {
    #[error("expected an operator of order {expected}, got {found}")]
    WrongOrder { expected: usize, found: usize },
    #[error("operator is not trace-free")]
    NonTraceFree,
    #[error("base point is a singular point of the operator")]
    BasePointSingular,
    #[error("expected {expected} initial values, got {found}")]
    InitialLength { expected: usize, found: usize },
}

/// `y^(n) + a_{n−1} y^(n−1) + … + a_0 y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearODE {
    coeffs: Vec<RatFunc>,
}

impl LinearODE {
    /// From `a_0, …, a_{n−1}` of the monic form.
    pub fn new(coeffs: Vec<RatFunc>) -> Self {
        assert!(!coeffs.is_empty(), "order must be at least 1");
        LinearODE { coeffs }
    }

    /// From `c_0, …, c_n` of a not necessarily monic operator.
    pub fn from_unnormalized(mut c: Vec<RatFunc>) -> Option<Self> {
        let lead = c.pop()?;
        if lead.is_zero() || c.is_empty() {
            return None;
        }
        Some(LinearODE { coeffs: c.iter().map(|x| x.div(&lead).expect("nonzero")).collect() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_j`; `a_n = 1`.
    pub fn coeff(&self, j: usize) -> RatFunc {
        if j == self.order() {
            RatFunc::one()
        } else {
            self.coeffs.get(j).cloned().unwrap_or_else(RatFunc::zero)
        }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// `L(y)` for `y` given as a rational function.
    pub fn apply(&self, y: &RatFunc) -> RatFunc {
        let mut d = y.clone();
        let mut acc = RatFunc::zero();
        for j in 0..=self.order() {
            acc = acc.add(&self.coeff(j).mul(&d));
            d = d.derivative();
        }
        acc
    }

    /// Poles of the coefficients as a single denominator.
    pub fn singular_denominator(&self) -> crate::algebra::poly::Poly {
        self.coeffs.iter().fold(crate::algebra::poly::Poly::one(), |acc, c| {
            let g = crate::algebra::poly::poly_gcd(&acc, c.den()).expect("nonzero");
            acc.mul(&c.den().exact_div(&g).expect("gcd divides"))
        })
    }

    /// Human form such as `f''' + 2*l*f' + 1*f = 0`.
    pub fn display_with(&self, var: &str) -> String {
        let deriv = |j: usize| format!("{var}{}", "'".repeat(j));
        let mut out = deriv(self.order());
        for j in (0..self.order()).rev() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let neg = c.to_string().starts_with('-');
            let body = if neg { c.neg().to_string() } else { c.to_string() };
            let body = if body.contains([' ', '+', '-']) { format!("({body})") } else { body };
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&format!("{body}*{}", deriv(j)));
        }
        out.push_str(" = 0");
        out
    }
}

impl fmt::Display for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("f"))
    }
}

/// `ψ'' + (R/2) ψ = 0`.
pub fn from_potential(r: &RatFunc) -> LinearODE {
    LinearODE::new(vec![r.scale(&Q::new(1.into(), 2.into())), RatFunc::zero()])
}

/// First-order system matrix `[[0, 1], [−a_0, −a_1]]`.
pub fn companion(ode: &LinearODE) -> Result<[[RatFunc; 2]; 2], OdeError> {
    if ode.order() != 2 {
        return Err(OdeError::WrongOrder { expected: 2, found: ode.order() });
    }
    Ok([[RatFunc::zero(), RatFunc::one()], [ode.coeff(0).neg(), ode.coeff(1).neg()]])
}

/// Second symmetric power of `ψ'' + a_0 ψ = 0`, by differentiating `f = ψ²`
/// in the basis `{ψ², ψψ', ψ'²}` and eliminating.
pub fn symmetric_power_2(ode: &LinearODE) -> Result<LinearODE, OdeError> {
    if ode.order() != 2 {
        return Err(OdeError::WrongOrder { expected: 2, found: ode.order() });
    }
    if !ode.coeff(1).is_zero() {
        return Err(OdeError::NonTraceFree);
    }
    let a0 = ode.coeff(0);
    let two = RatFunc::constant(Q::from_integer(2.into()));
    // d(ψ²) = 2ψψ', d(ψψ') = ψ'² − a0ψ², d(ψ'²) = −2a0ψψ'
    let d = |v: &[RatFunc; 3]| -> [RatFunc; 3] {
        [
            v[0].derivative().sub(&a0.mul(&v[1])),
            v[1].derivative().add(&two.mul(&v[0])).sub(&two.mul(&a0).mul(&v[2])),
            v[2].derivative().add(&v[1]),
        ]
    };
    let f0 = [RatFunc::one(), RatFunc::zero(), RatFunc::zero()];
    let f1 = d(&f0);
    let f2 = d(&f1);
    let f3 = d(&f2);
    // c0 f + c1 f' + c2 f'' = −f'''
    let m: linalg::Matrix<RatFunc> = (0..3).map(|i| vec![f0[i].clone(), f1[i].clone(), f2[i].clone()]).collect();
    let rhs: Vec<RatFunc> = f3.iter().map(|x| x.neg()).collect();
    let c = linalg::solve(&m, &rhs).expect("ψ², (ψ²)', (ψ²)'' are independent");
    Ok(LinearODE::new(c))
}

/// `u' + u² + R/2 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiEq {
    pub r: RatFunc,
}

impl RiccatiEq {
    pub fn residual(&self, u: &RatFunc) -> RatFunc {
        u.derivative().add(&u.mul(u)).add(&self.r.scale(&Q::new(1.into(), 2.into())))
    }

    pub fn is_solution(&self, u: &RatFunc) -> bool {
        self.residual(u).is_zero()
    }
}

impl fmt::Display for RiccatiEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = self.r.scale(&Q::new(1.into(), 2.into()));
        if half.is_zero() {
            return f.write_str("u' + u^2 = 0");
        }
        let neg = half.to_string().starts_with('-');
        let body = if neg { half.neg().to_string() } else { half.to_string() };
        let body = if body.contains([' ', '+', '-']) { format!("({body})") } else { body };
        write!(f, "u' + u^2 {} {body} = 0", if neg { "-" } else { "+" })
    }
}

pub fn riccati_of(r: &RatFunc) -> RiccatiEq {
    RiccatiEq { r: r.clone() }
}

/// Truncated solution `y(base + t) = Σ c_k t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution<F: Field> {
    pub base: F,
    pub series: TruncSeries<F>,
}

impl<F: Field> SeriesSolution<F> {
    /// `y^(j)(base)`.
    pub fn derivative_at_base(&self, j: usize) -> F {
        self.series.coeff(j).mul(&factorial::<F>(j))
    }
}

/// Coefficient series of the operator at `base`, `None` at a pole.
fn coefficient_series<F: Field>(ode: &LinearODE, base: &F, n: usize) -> Option<Vec<TruncSeries<F>>> {
    ode.coeffs().iter().map(|a| a.taylor_in(base, n)).collect()
}

/// Unique solution with `y^(j)(base) = initial[j]`, to `n` terms.
pub fn series_solve<F: Field>(
    ode: &LinearODE,
    base: &F,
    initial: &[F],
    n: usize,
) -> Result<SeriesSolution<F>, OdeError> {
    let ord = ode.order();
    if initial.len() != ord {
        return Err(OdeError::InitialLength { expected: ord, found: initial.len() });
    }
    let a = coefficient_series(ode, base, n).ok_or(OdeError::BasePointSingular)?;
    let mut y = vec![F::zero(); n.max(ord)];
    for (j, v) in initial.iter().enumerate() {
        y[j] = v.div(&factorial::<F>(j)).expect("nonzero factorial");
    }
    // y^(j) has coefficient (i+j)!/i! · y_{i+j} at t^i
    let falling = |i: usize, j: usize| -> F {
        let mut acc = F::one();
        for m in (i + 1)..=(i + j) {
            acc = acc.mul(&F::from_i64(m as i64));
        }
        acc
    };
    for k in 0..n.saturating_sub(ord) {
        let mut rhs = F::zero();
        for (j, aj) in a.iter().enumerate() {
            for i in 0..=k {
                let c = aj.coeff(k - i);
                if c.is_zero() {
                    continue;
                }
                rhs = rhs.add(&c.mul(&falling(i, j)).mul(&y[i + j]));
            }
        }
        y[k + ord] = rhs.neg().div(&falling(k, ord)).expect("nonzero");
    }
    y.truncate(n);
    Ok(SeriesSolution { base: base.clone(), series: TruncSeries::new(y) })
}

/// `L(y)` as a series; exact solutions give zero to `precision − order`
/// terms.
pub fn series_residual<F: Field>(ode: &LinearODE, y: &SeriesSolution<F>) -> Result<TruncSeries<F>, OdeError> {
    let n = y.series.precision();
    let a = coefficient_series(ode, &y.base, n).ok_or(OdeError::BasePointSingular)?;
    let keep = n.saturating_sub(ode.order());
    let mut d = y.series.clone();
    let mut acc = TruncSeries::zero(keep);
    for j in 0..=ode.order() {
        let term = if j == ode.order() { d.truncate(keep) } else { d.mul(&a[j]).truncate(keep) };
        acc = acc.add(&term);
        d = d.derivative();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi};
    use crate::algebra::parse::parse_rational_function as parse;

    #[test]
    fn potential_operators() {
        assert_eq!(from_potential(&RatFunc::zero()).to_string(), "f'' = 0");
        assert_eq!(from_potential(&parse("l").unwrap()).display_with("psi"), "psi'' + 1/2*l*psi = 0");
        assert_eq!(
            from_potential(&parse("-2*(1+l^2)").unwrap()).display_with("psi"),
            "psi'' - (l^2 + 1)*psi = 0"
        );
    }

    #[test]
    fn companion_matrices() {
        let c = companion(&from_potential(&parse("l").unwrap())).unwrap();
        assert_eq!(c[1][0], parse("-l/2").unwrap());
        assert!(c[0][0].add(&c[1][1]).is_zero());
        assert!(matches!(companion(&LinearODE::new(vec![RatFunc::one()])), Err(OdeError::WrongOrder { .. })));
    }

    #[test]
    fn symmetric_power_examples() {
        let s = symmetric_power_2(&from_potential(&parse("l").unwrap())).unwrap();
        assert_eq!(s.to_string(), "f''' + 2*l*f' + 1*f = 0");
        let s = symmetric_power_2(&from_potential(&RatFunc::zero())).unwrap();
        assert_eq!(s.to_string(), "f''' = 0");
        let nt = LinearODE::new(vec![RatFunc::one(), RatFunc::one()]);
        assert_eq!(symmetric_power_2(&nt), Err(OdeError::NonTraceFree));
    }

    #[test]
    fn riccati_examples() {
        let r = riccati_of(&parse("-2*(1+l^2)").unwrap());
        assert!(r.is_solution(&parse("l").unwrap()));
        assert!(riccati_of(&parse("1/(2*l^2)").unwrap()).is_solution(&parse("1/(2*l)").unwrap()));
        assert_eq!(riccati_of(&RatFunc::zero()).to_string(), "u' + u^2 = 0");
    }

    #[test]
    fn airy_like_series() {
        let ode = from_potential(&parse("l").unwrap());
        let s = series_solve(&ode, &qi(0), &[qi(1), qi(0)], 8).unwrap();
        // c_{k+2} = −c_{k−1}/(2(k+1)(k+2))
        assert_eq!(s.series.coeff(3), q(-1, 12));
        assert_eq!(s.series.coeff(6), q(1, 12 * 60));
        let lin = series_solve(&from_potential(&RatFunc::zero()), &qi(0), &[qi(0), qi(1)], 5).unwrap();
        assert_eq!(lin.series.coeffs(), &[qi(0), qi(1), qi(0), qi(0), qi(0)]);
    }

    #[test]
    fn singular_base_rejected() {
        let ode = from_potential(&parse("1/l").unwrap());
        assert_eq!(series_solve(&ode, &qi(0), &[qi(1), qi(0)], 5), Err(OdeError::BasePointSingular));
    }

    #[test]
    fn squares_solve_symmetric_power() {
        let ode = from_potential(&parse("l").unwrap());
        let sym = symmetric_power_2(&ode).unwrap();
        let psi = series_solve(&ode, &qi(0), &[qi(1), qi(0)], 12).unwrap();
        let sq = SeriesSolution { base: qi(0), series: psi.series.mul(&psi.series) };
        let res = series_residual(&sym, &sq).unwrap();
        assert_eq!(res.precision(), 9);
        assert!(res.is_zero());
    }
}
