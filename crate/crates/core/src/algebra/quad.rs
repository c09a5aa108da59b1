//! Elements of a quadratic field ℚ(√d), with `d = -1` giving the Gaussian
//! rationals.
//!
//! The radicand travels with each value. Rational values created through
//! [`Field::from_rational`] carry `d = 0` ("no field fixed yet") and adopt the
//! radicand of whatever they are combined with.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::field::{rational_sqrt, squarefree_decompose, Field, Q};

#[derive(Clone, Debug)]
pub struct Quadratic {
    a: Q,
    b: Q,
    d: BigInt,
}

impl Quadratic {
    /// `a + b√d`; `d` must be squarefree and different from 1 unless `b = 0`.
    pub fn new(a: Q, b: Q, d: BigInt) -> Self {
        debug_assert!(
            b.is_zero() || squarefree_decompose(&d).0 == BigInt::from(1) && d != BigInt::from(1),
            "radicand {d} is not a squarefree non-unit"
        );
        Quadratic { a, b, d }
    }

    pub fn rational(a: Q) -> Self {
        Quadratic { a, b: Q::zero(), d: BigInt::from(0) }
    }

    /// The rational value `a` viewed inside ℚ(√d).
    pub fn rational_in(a: Q, d: &BigInt) -> Self {
        Quadratic { a, b: Q::zero(), d: d.clone() }
    }

    /// `b·√d`.
    pub fn surd(b: Q, d: BigInt) -> Self {
        Quadratic::new(Q::zero(), b, d)
    }

    pub fn gaussian(re: Q, im: Q) -> Self {
        Quadratic { a: re, b: im, d: BigInt::from(-1) }
    }

    pub fn rational_part(&self) -> &Q {
        &self.a
    }

    pub fn surd_part(&self) -> &Q {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_rational().then_some(&self.a)
    }

    /// Galois conjugate `a - b√d`.
    pub fn conj(&self) -> Self {
        Quadratic { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// Norm `a² - d b²`.
    pub fn norm(&self) -> Q {
        &self.a * &self.a - Q::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        use super::field::q_to_f64;
        let a = q_to_f64(&self.a);
        let b = q_to_f64(&self.b);
        if self.b.is_zero() {
            return num_complex::Complex64::new(a, 0.0);
        }
        let d = q_to_f64(&Q::from_integer(self.d.clone()));
        if d >= 0.0 {
            num_complex::Complex64::new(a + b * d.sqrt(), 0.0)
        } else {
            num_complex::Complex64::new(a, b * (-d).sqrt())
        }
    }

    fn merge_d(&self, other: &Self) -> BigInt {
        if self.d == BigInt::from(0) {
            return other.d.clone();
        }
        if other.d == BigInt::from(0) {
            return self.d.clone();
        }
        assert!(
            self.d == other.d || self.b.is_zero() || other.b.is_zero(),
            "mixing ℚ(√{}) and ℚ(√{})",
            self.d,
            other.d
        );
        if !self.b.is_zero() || other.b.is_zero() {
            self.d.clone()
        } else {
            other.d.clone()
        }
    }
}

impl PartialEq for Quadratic {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Field for Quadratic {
    const EXACT: bool = true;

    fn zero() -> Self {
        Quadratic::rational(Q::zero())
    }
    fn one() -> Self {
        Quadratic::rational(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Quadratic { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.merge_d(rhs) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Quadratic { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.merge_d(rhs) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let d = self.merge_d(rhs);
        let dq = Q::from_integer(d.clone());
        Quadratic {
            a: &self.a * &rhs.a + dq * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
    }
    fn neg(&self) -> Self {
        Quadratic { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Quadratic { a: &c.a / &n, b: &c.b / &n, d: self.d.clone() })
    }
    fn from_rational(q: &Q) -> Self {
        Quadratic::rational(q.clone())
    }

    /// Square root inside ℚ(√d) (or ℚ when no radicand is fixed).
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Quadratic::rational_in(r, &self.d));
            }
            if self.d == BigInt::from(0) {
                return None;
            }
            // (y√d)² = y² d
            let y = rational_sqrt(&(&self.a / Q::from_integer(self.d.clone())))?;
            return Some(Quadratic::surd(y, self.d.clone()));
        }
        // (x + y√d)² = x² + d y² + 2xy√d
        let n = rational_sqrt(&self.norm())?;
        let two = Q::from_integer(BigInt::from(2));
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let root = Quadratic { a: x, b: y, d: self.d.clone() };
                if root.mul(&root) == *self {
                    return Some(root);
                }
            }
        }
        None
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let gaussian = self.d == BigInt::from(-1);
        let surd = |b: &Q| -> String {
            let unit = if gaussian { "i".to_string() } else { format!("sqrt({})", self.d) };
            if b.is_one() {
                unit
            } else if gaussian {
                format!("{b}{unit}")
            } else {
                format!("{b}*{unit}")
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                return write!(f, "-{}", surd(&-&self.b));
            }
            return write!(f, "{}", surd(&self.b));
        }
        if self.b.is_negative() {
            write!(f, "{}-{}", self.a, surd(&-&self.b))
        } else {
            write!(f, "{}+{}", self.a, surd(&self.b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi};

    fn s2(a: i64, b: i64) -> Quadratic {
        Quadratic::new(qi(a), qi(b), BigInt::from(2))
    }

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let x = s2(1, 1);
        let y = s2(1, -1);
        assert_eq!(x.mul(&y), Quadratic::rational(qi(-1)));
        assert_eq!(x.inv().unwrap().mul(&x), Quadratic::one());
    }

    #[test]
    fn sqrt_inside_field() {
        // (1 + √2)² = 3 + 2√2
        let sq = s2(3, 2);
        let r = sq.sqrt().unwrap();
        assert_eq!(r.mul(&r), sq);
        // √2 as the root of the rational 2 inside ℚ(√2)
        let two = Quadratic::rational_in(qi(2), &BigInt::from(2));
        assert_eq!(two.sqrt().unwrap(), s2(0, 1));
        // 3 has no root in ℚ(√2)
        assert!(Quadratic::rational_in(qi(3), &BigInt::from(2)).sqrt().is_none());
    }

    #[test]
    fn gaussian_display() {
        let z = Quadratic::gaussian(q(1, 2), qi(-3));
        assert_eq!(z.to_string(), "1/2-3i");
        assert_eq!(Quadratic::gaussian(qi(0), qi(1)).to_string(), "i");
        assert_eq!(s2(0, 3).to_string(), "3*sqrt(2)");
    }
}
