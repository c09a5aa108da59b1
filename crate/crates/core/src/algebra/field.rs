//! The scalar abstraction shared by polynomials, series, jets and linear algebra.
//!
//! Exact fields (`Q`, [`Quadratic`](super::quad::Quadratic), rational functions)
//! and the floating-point field `Complex64` all implement [`Field`], so the
//! same jet and series code serves both the symbolic engine and the numeric
//! verifier.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. `BigRational` keeps numerator and denominator
/// coprime with a positive denominator.
pub type Q = BigRational;

pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// `true` for exact arithmetic, `false` for floating point.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Q) -> Self;

    /// A square root inside the same field, when one exists.
    fn sqrt(&self) -> Option<Self> {
        None
    }

    /// Pivot preference for elimination; larger is better, zero means unusable.
    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    /// Equality up to the field's notion of rounding.
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }

    fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents.
    fn powi(&self, n: i64) -> Option<Self> {
        if n >= 0 {
            Some(self.pow(n as u32))
        } else {
            self.inv().map(|i| i.pow((-n) as u32))
        }
    }
}

impl Field for Q {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn from_rational(q: &Q) -> Self {
        Complex64::new(q_to_f64(q), 0.0)
    }
    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }
    fn pivot_score(&self) -> f64 {
        self.norm()
    }
    fn approx_eq(&self, other: &Self) -> bool {
        let scale = 1.0_f64.max(self.norm()).max(other.norm());
        (self - other).norm() <= 1e-9 * scale
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator may individually overflow f64
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root of a rational, when it is rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Q::new(n, d))
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Writes `x = s² · k` with `s > 0` rational and `k` a squarefree integer
/// (negative when `x` is). Zero maps to `(0, 1)`.
pub fn split_square(x: &Q) -> (Q, BigInt) {
    if Zero::is_zero(x) {
        return (<Q as Field>::zero(), BigInt::one());
    }
    // x = p/q = p q / q²
    let m = x.numer() * x.denom();
    let (s_int, k) = squarefree_decompose(&m);
    (Q::new(s_int, x.denom().clone()), k)
}

/// `n = s² · k` with `k` squarefree, sign carried by `k`.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut s = BigInt::one();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2u32);
    let mut iterations = 0u64;
    while &p * &p <= rest && iterations < 5_000_000 {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &p;
        }
        if e % 2 == 1 {
            k *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
        iterations += 1;
    }
    // leftover is prime (or a large cofactor without small divisors)
    if let Some(r) = int_sqrt_exact(&rest) {
        s *= r;
    } else {
        k *= rest;
    }
    (s, sign * k)
}

/// Positive divisors of a nonzero integer, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n;
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigInt::one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

pub fn factorial<F: Field>(n: usize) -> F {
    let mut acc = F::one();
    for i in 2..=n {
        acc = acc.mul(&F::from_i64(i as i64));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_cases() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn split_square_recovers_value() {
        for (n, d) in [(8, 1), (-12, 5), (1, 18), (49, 9), (3, 1)] {
            let x = q(n, d);
            let (s, k) = split_square(&x);
            assert_eq!(&s * &s * Q::from_integer(k.clone()), x);
            assert_eq!(squarefree_decompose(&k).0, BigInt::one());
        }
    }

    #[test]
    fn divisors_of_twelve() {
        let d: Vec<i64> = divisors(&BigInt::from(12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn pow_and_powi() {
        assert_eq!(qi(2).pow(10), qi(1024));
        assert_eq!(qi(2).powi(-2), Some(q(1, 4)));
        assert_eq!(<Q as Field>::zero().powi(-1), None);
    }
}
