//! Rational functions over ℚ(√d), stored as `re + im·√d` with `re, im ∈ ℚ(λ)`.
//!
//! Certificates are re-verified in this representation, independently of the
//! `RationalFunction<Quadratic>` arithmetic that produced them.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::algebra::field::{q_to_f64, Field, Q};
use crate::algebra::poly::{Poly, Polynomial};
use crate::algebra::quad::Quadratic;
use crate::algebra::ratfunc::{RatFunc, RationalFunction};

#[derive(Clone, Debug, PartialEq)]
pub struct ExtRatFunc {
    d: BigInt,
    re: RatFunc,
    im: RatFunc,
}

impl ExtRatFunc {
    pub fn rational(r: RatFunc) -> Self {
        ExtRatFunc { d: BigInt::from(0), re: r, im: RatFunc::zero() }
    }

    /// `re + im·√d`; `d` must be squarefree and not 1 unless `im = 0`.
    pub fn new(re: RatFunc, im: RatFunc, d: BigInt) -> Self {
        if im.is_zero() {
            return Self::rational(re);
        }
        ExtRatFunc { d, re, im }
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn re(&self) -> &RatFunc {
        &self.re
    }

    pub fn im(&self) -> &RatFunc {
        &self.im
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&RatFunc> {
        self.is_rational().then_some(&self.re)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn merged(&self, o: &Self) -> BigInt {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => o.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, o.d, "mixing two quadratic fields");
                self.d.clone()
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im), self.merged(o))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im), self.merged(o))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg(), self.d.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.merged(o);
        let dq = RatFunc::constant(Q::from_integer(d.clone()));
        let re = self.re.mul(&o.re).add(&dq.mul(&self.im).mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Self::new(re, im, d)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.re.scale(c), self.im.scale(c), self.d.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.re.derivative(), self.im.derivative(), self.d.clone())
    }

    /// Embeds into `RationalFunction<Quadratic>`.
    pub fn to_quadratic(&self) -> RationalFunction<Quadratic> {
        let re = self.re.lift::<Quadratic>();
        if self.is_rational() {
            return re;
        }
        let s = Quadratic::surd(Field::one(), self.d.clone());
        re.add(&self.im.lift::<Quadratic>().scale(&s))
    }

    /// Splits a function over ℚ(√d) by rationalizing its denominator.
    pub fn from_quadratic(f: &RationalFunction<Quadratic>) -> Self {
        let d = f
            .num()
            .coeffs()
            .iter()
            .chain(f.den().coeffs())
            .find(|c| !c.is_rational())
            .map(|c| c.radicand().clone());
        let Some(d) = d else {
            let num = f.num().map(|c| c.rational_part().clone());
            let den = f.den().map(|c| c.rational_part().clone());
            return Self::rational(RatFunc::new(num, den).expect("nonzero denominator"));
        };
        let conj = f.den().map(Quadratic::conj);
        let num = f.num().mul(&conj);
        let den = f.den().mul(&conj);
        let den_q: Poly = den.map(|c| c.rational_part().clone());
        let part = |p: &Polynomial<Quadratic>, pick: fn(&Quadratic) -> &Q| -> Poly { p.map(|c| pick(c).clone()) };
        let re = RatFunc::new(part(&num, Quadratic::rational_part), den_q.clone()).expect("nonzero");
        let im = RatFunc::new(part(&num, Quadratic::surd_part), den_q).expect("nonzero");
        Self::new(re, im, d)
    }

    pub fn eval_complex(&self, x: Complex64) -> Option<Complex64> {
        let ev = |r: &RatFunc| -> Option<Complex64> {
            let n = r.num().eval_with(&x, Complex64::from_rational);
            let d = r.den().eval_with(&x, Complex64::from_rational);
            (d.norm() > 0.0).then(|| n / d)
        };
        let re = ev(&self.re)?;
        if self.is_rational() {
            return Some(re);
        }
        let dv = q_to_f64(&Q::from_integer(self.d.clone()));
        let root = Complex64::new(dv, 0.0).sqrt();
        Some(re + ev(&self.im)? * root)
    }
}

fn radical(d: &BigInt) -> String {
    if *d == BigInt::from(-1) {
        "i".to_string()
    } else {
        format!("sqrt({d})")
    }
}

impl fmt::Display for ExtRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.re);
        }
        let im = self.im.to_string();
        let im_term = match im.as_str() {
            "1" => radical(&self.d),
            "-1" => format!("-{}", radical(&self.d)),
            s if self.im.is_constant() || !s.trim_start_matches('-').contains(['+', '-', ' ', '/']) => {
                format!("{s}*{}", radical(&self.d))
            }
            s => format!("({s})*{}", radical(&self.d)),
        };
        if self.re.is_zero() {
            return f.write_str(&im_term);
        }
        match im_term.strip_prefix('-') {
            Some(rest) => write!(f, "{} - {rest}", self.re),
            None => write!(f, "{} + {im_term}", self.re),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qi;
    use crate::algebra::parse::parse_rational_function as parse;

    #[test]
    fn sqrt_two_squares_to_two() {
        let s = ExtRatFunc::new(RatFunc::zero(), RatFunc::one(), BigInt::from(2));
        assert_eq!(s.mul(&s), ExtRatFunc::rational(RatFunc::constant(qi(2))));
        assert_eq!(s.to_string(), "sqrt(2)");
    }

    #[test]
    fn quadratic_round_trip() {
        let f = ExtRatFunc::new(parse("1/l").unwrap(), parse("l/(l+1)").unwrap(), BigInt::from(-1));
        let back = ExtRatFunc::from_quadratic(&f.to_quadratic());
        assert_eq!(back, f);
        let z = f.eval_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!((z - Complex64::new(1.0, 0.5)).norm() < 1e-14);
    }

    #[test]
    fn display_forms() {
        let f = ExtRatFunc::new(parse("l").unwrap(), parse("-1/2").unwrap(), BigInt::from(3));
        assert_eq!(f.to_string(), "l - 1/2*sqrt(3)");
    }
}
