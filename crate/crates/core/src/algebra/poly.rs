//! Dense univariate polynomials, coefficients lowest degree first.

use std::any::Any;
use std::fmt;

use super::field::{Field, Q};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F: Field> {
    coeffs: Vec<F>,
}

pub type Poly = Polynomial<Q>;

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - c`.
    pub fn linear_root(c: &F) -> Self {
        Self::new(vec![c.neg(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(F::neg).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Euclidean division; `None` for a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.lead().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Evaluation at an element of another field that embeds this one.
    pub fn eval_with<G: Field>(&self, x: &G, embed: impl Fn(&F) -> G) -> G {
        self.coeffs.iter().rev().fold(G::zero(), |acc, c| acc.mul(x).add(&embed(c)))
    }

    /// Composition `self(other)`.
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(other).add(&Self::constant(c.clone())))
    }

    /// Coefficients of `p(c + t)` as a polynomial in `t`.
    pub fn taylor_shift(&self, c: &F) -> Self {
        // repeated synthetic division
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].mul(c);
                a[j] = a[j].add(&t);
            }
        }
        Self::new(a)
    }

    /// Coefficients reversed against degree `n`: `x^n p(1/x)`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = vec![F::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i <= n {
                v[n - i] = c.clone();
            }
        }
        Self::new(v)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly {
    /// Embeds rational coefficients into another field.
    pub fn lift<G: Field>(&self) -> Polynomial<G> {
        self.map(G::from_rational)
    }
}

/// Monic gcd, modular over ℚ and Euclidean otherwise. Errors only when
/// both inputs are zero.
pub fn poly_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>, AlgebraError> {
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    if let (Some(a), Some(b)) = ((a as &dyn Any).downcast_ref::<Poly>(), (b as &dyn Any).downcast_ref::<Poly>()) {
        let g = super::modgcd::gcd_q(a, b);
        return Ok((&g as &dyn Any).downcast_ref::<Polynomial<F>>().expect("F = Q").clone());
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("nonzero divisor");
        x = y;
        // keep intermediate remainders small
        y = r.monic();
    }
    Ok(x.monic())
}

/// Extended Euclid: returns `(g, s, t)` with `s a + t b = g` monic.
pub fn poly_xgcd<F: Field>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
) -> Result<(Polynomial<F>, Polynomial<F>, Polynomial<F>), AlgebraError> {
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(), Polynomial::zero());
    let (mut t0, mut t1) = (Polynomial::zero(), Polynomial::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = r0.lead().inv().expect("nonzero gcd");
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// Renders a coefficient as a term factor, bracketing compound values.
pub(crate) fn atom_string(s: &str) -> (bool, String) {
    let body = s.strip_prefix('-');
    let negative = body.is_some();
    let body = body.unwrap_or(s);
    let compound = body.contains(['+', '-', ' ']);
    if compound {
        (false, format!("({s})"))
    } else {
        (negative, body.to_string())
    }
}

impl<F: Field> Polynomial<F> {
    /// Human-readable form in the given variable, parseable back by
    /// [`parse_rational_function`](super::parse::parse_rational_function)
    /// when the coefficients are rational.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let (negative, body) = atom_string(&c.to_string());
            let term = if k == 0 {
                body
            } else if body == "1" {
                power
            } else {
                format!("{body}*{power}")
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
                out.push_str(&term);
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("l"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi};

    pub(crate) fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn gcd_examples() {
        // gcd(λ−1, λ+1) = 1
        assert_eq!(poly_gcd(&p(&[-1, 1]), &p(&[1, 1])).unwrap(), p(&[1]));
        // gcd(λ²−1, (λ−1)²) = λ−1
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
        // gcd(p, 0) = monic(p)
        let a = p(&[2, 4]);
        assert_eq!(poly_gcd(&a, &Poly::zero()).unwrap(), Poly::new(vec![q(1, 2), qi(1)]));
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero()), Err(AlgebraError::BothZero));
    }

    #[test]
    fn xgcd_bezout() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 3, 0, 2]);
        let (g, s, t) = poly_xgcd(&a, &b).unwrap();
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let a = p(&[3, -1, 0, 2]);
        let c = q(1, 3);
        let shifted = a.taylor_shift(&c);
        assert_eq!(shifted, a.compose(&Poly::new(vec![c, qi(1)])));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "l^2 + 1");
        assert_eq!(p(&[0, -2]).to_string(), "-2*l");
        assert_eq!(Poly::new(vec![q(1, 2), qi(-3)]).to_string(), "-3*l + 1/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn division() {
        let (q_, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q_, p(&[1, -1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1]).div_rem(&Poly::zero()).is_none());
    }
}
