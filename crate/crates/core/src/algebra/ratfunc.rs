//! Rational functions in canonical form: coprime numerator and denominator,
//! monic denominator.

use std::fmt;

use super::field::{Field, Q};
use super::poly::{poly_gcd, Polynomial};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

pub type RatFunc = RationalFunction<Q>;

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = poly_gcd(&num, &den).expect("denominator is nonzero");
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lead = d.lead();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RationalFunction { num: n, den: d }
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn num(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<F> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalize(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(self.num.mul(&rhs.den), self.den.mul(&rhs.num)))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunction { num: self.num.pow(n), den: self.den.pow(n) }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::one().div(self)
    }

    /// d/dλ by the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::normalize(n, self.den.mul(&self.den))
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        self.num.eval(x).div(&d)
    }

    /// Composition `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, AlgebraError> {
        // with inner = p/q: P(p/q) = Σ c_i p^i q^(n−i) / q^n
        let (p, q) = (&inner.num, &inner.den);
        let n = self.num.deg_i().max(self.den.deg_i()).max(0) as usize;
        let p_pows: Vec<Polynomial<F>> = std::iter::successors(Some(Polynomial::one()), |x| Some(x.mul(p))).take(n + 1).collect();
        let q_pows: Vec<Polynomial<F>> = std::iter::successors(Some(Polynomial::one()), |x| Some(x.mul(q))).take(n + 1).collect();
        let homogenize = |poly: &Polynomial<F>| {
            poly.coeffs()
                .iter()
                .enumerate()
                .fold(Polynomial::zero(), |acc, (i, c)| acc.add(&p_pows[i].mul(&q_pows[n - i]).scale(c)))
        };
        let d = homogenize(&self.den);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(homogenize(&self.num), d))
    }

    /// `deg(den) - deg(num)`.
    pub fn order_at_infinity(&self) -> Result<i64, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroInput);
        }
        Ok(self.den.deg_i() - self.num.deg_i())
    }

    /// Maximum of numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> RationalFunction<G> {
        RationalFunction::new(self.num.map(f), self.den.map(f)).expect("embedding keeps den nonzero")
    }

    pub fn display_with(&self, var: &str) -> String {
        let n = self.num.display_with(var);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.display_with(var);
        let n_atomic = !n.trim_start_matches('-').contains(['+', '-', ' ']);
        let d_atomic = !d.contains(['+', '-', ' ', '*', '/']);
        let n = if n_atomic { n } else { format!("({n})") };
        let d = if d_atomic { d } else { format!("({d})") };
        format!("{n}/{d}")
    }
}

impl RatFunc {
    /// Evaluates at an element of any field via the rational embedding.
    pub fn eval_in<G: Field>(&self, x: &G) -> Option<G> {
        let n = self.num.eval_with(x, G::from_rational);
        let d = self.den.eval_with(x, G::from_rational);
        n.div(&d)
    }

    pub fn lift<G: Field>(&self) -> RationalFunction<G> {
        self.map(G::from_rational)
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("l"))
    }
}

/// ℚ(λ) (or F(λ)) is itself a field; this lets jets and expressions be
/// evaluated symbolically.
impl<F: Field> Field for RationalFunction<F> {
    const EXACT: bool = F::EXACT;

    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        RationalFunction::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RationalFunction::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RationalFunction::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rational(q: &Q) -> Self {
        RationalFunction::constant(F::from_rational(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qi;
    use crate::algebra::poly::Poly;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let inv_l = rf(&[1], &[0, 1]);
        assert!(inv_l.add(&inv_l.neg()).is_zero());
        let a = rf(&[0, 1], &[-1, 1]);
        let b = rf(&[-1, 1], &[0, 1]);
        assert_eq!(a.mul(&b), RatFunc::one());
        // 1/(λ(λ−1)) = 1/(λ²−λ)
        let prod = rf(&[1], &[0, 1]).mul(&rf(&[1], &[-1, 1]));
        assert_eq!(prod, rf(&[1], &[0, -1, 1]));
        assert_eq!(a.div(&RatFunc::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(rf(&[0, 0, 1], &[1]).derivative(), rf(&[0, 2], &[1]));
        assert_eq!(rf(&[1], &[0, 1]).derivative(), rf(&[-1], &[0, 0, 1]));
        // λ/(λ+1) → 1/(λ+1)²
        assert_eq!(rf(&[0, 1], &[1, 1]).derivative(), rf(&[1], &[1, 2, 1]));
    }

    #[test]
    fn order_at_infinity_examples() {
        assert_eq!(rf(&[1], &[0, 0, 1]).order_at_infinity(), Ok(2));
        assert_eq!(rf(&[0, 1], &[1]).order_at_infinity(), Ok(-1));
        assert_eq!(rf(&[1, 1], &[0, 0, 0, 1]).order_at_infinity(), Ok(2));
        assert_eq!(RatFunc::zero().order_at_infinity(), Err(AlgebraError::ZeroInput));
    }

    #[test]
    fn canonical_form() {
        let r = RatFunc::new(p(&[2, 2]), p(&[4, 4])).unwrap();
        assert_eq!(r, RatFunc::constant(crate::algebra::field::q(1, 2)));
        let s = RatFunc::new(p(&[1]), p(&[0, 2])).unwrap();
        assert!(s.den().lead().is_one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf(&[1], &[0, 0, 1]).to_string(), "1/l^2");
        assert_eq!(rf(&[1, 1], &[0, 2]).to_string(), "(1/2*l + 1/2)/l");
        assert_eq!(rf(&[-2], &[1, 1]).to_string(), "-2/(l + 1)");
    }

    #[test]
    fn compose_with_mobius() {
        // (1/λ)∘(λ+1) = 1/(λ+1)
        assert_eq!(rf(&[1], &[0, 1]).compose(&rf(&[1, 1], &[1])).unwrap(), rf(&[1], &[1, 1]));
    }
}
