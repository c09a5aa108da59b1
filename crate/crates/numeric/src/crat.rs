//! Complex evaluation of exact rational functions.

use num_complex::Complex64;

use kummer_core::algebra::ratfunc::RatFunc;
use kummer_core::algebra::Field;

fn coeffs(p: &kummer_core::algebra::Poly) -> Vec<Complex64> {
    p.coeffs().iter().map(Complex64::from_rational).collect()
}

/// `(value, derivative)` pairs of `p` at `x`.
fn horner2(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        d = d * x + v;
        v = v * x + a;
    }
    (v, d)
}

#[derive(Clone, Debug)]
pub(crate) struct CRat {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

impl CRat {
    pub fn new(r: &RatFunc) -> Self {
        CRat { num: coeffs(r.num()), den: coeffs(r.den()) }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.eval_d(x).0
    }

    /// Value and first derivative.
    pub fn eval_d(&self, x: Complex64) -> (Complex64, Complex64) {
        let (n, dn) = horner2(&self.num, x);
        let (d, dd) = horner2(&self.den, x);
        (n / d, (dn * d - n * dd) / (d * d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse::parse_rational_function as parse;

    #[test]
    fn value_and_derivative() {
        let r = CRat::new(&parse("1/(l^2+1)").unwrap());
        let x = Complex64::new(0.5, 0.25);
        let (v, d) = r.eval_d(x);
        let one = Complex64::new(1.0, 0.0);
        assert!((v - one / (x * x + one)).norm() < 1e-14);
        assert!((d + 2.0 * x / ((x * x + one) * (x * x + one))).norm() < 1e-14);
    }
}
