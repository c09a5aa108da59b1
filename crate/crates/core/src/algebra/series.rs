//! Truncated power series and finite Laurent expansions.

use super::field::Field;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;

/// `Σ c_k t^k mod t^N` with `N = coeffs.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> TruncSeries<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        TruncSeries { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        TruncSeries { coeffs: vec![F::zero(); n] }
    }

    pub fn constant(c: F, n: usize) -> Self {
        let mut s = Self::zero(n);
        if n > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `c + t` truncated to `n` terms.
    pub fn variable(c: F, n: usize) -> Self {
        let mut s = Self::constant(c, n);
        if n > 1 {
            s.coeffs[1] = F::one();
        }
        s
    }

    pub fn from_poly(p: &Polynomial<F>, n: usize) -> Self {
        TruncSeries { coeffs: (0..n).map(|k| p.coeff(k)).collect() }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn truncate(&self, n: usize) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().take(n).cloned().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        TruncSeries { coeffs: (0..n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        TruncSeries { coeffs: (0..n).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect() }
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(F::neg).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let mut out = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inv(&self) -> Option<Self> {
        let n = self.precision();
        if n == 0 {
            return Some(self.clone());
        }
        let a0_inv = self.coeffs[0].inv()?;
        let mut out = vec![F::zero(); n];
        out[0] = a0_inv.clone();
        for k in 1..n {
            let mut acc = F::zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = acc.mul(&a0_inv).neg();
        }
        Some(TruncSeries { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        Some(self.mul(&rhs.inv()?))
    }

    /// Square root with the given root of the constant term.
    pub fn sqrt_with(&self, root0: F) -> Option<Self> {
        let n = self.precision();
        if n == 0 {
            return Some(self.clone());
        }
        let two_inv = root0.add(&root0).inv()?;
        let mut out = vec![F::zero(); n];
        out[0] = root0;
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc.sub(&out[j].mul(&out[k - j]));
            }
            out[k] = acc.mul(&two_inv);
        }
        Some(TruncSeries { coeffs: out })
    }

    /// Square root; needs a nonzero constant term with a root in `F`.
    pub fn sqrt(&self) -> Option<Self> {
        let r0 = self.coeffs.first()?.sqrt()?;
        self.sqrt_with(r0)
    }

    /// d/dt; the result loses one term of precision.
    pub fn derivative(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul(&F::from_i64(k as i64))).collect(),
        }
    }

    /// Antiderivative with constant term `c`; gains one term.
    pub fn integrate(&self, c: F) -> Self {
        let mut out = vec![c];
        for (k, a) in self.coeffs.iter().enumerate() {
            out.push(a.div(&F::from_i64(k as i64 + 1)).expect("nonzero integer"));
        }
        TruncSeries { coeffs: out }
    }

    /// `self(inner(t))` for `inner` without constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.coeff(0).is_zero(), "inner series must vanish at 0");
        let n = self.precision().min(inner.precision());
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone(), n));
        }
        acc
    }

    /// Compositional inverse of a series `a₁t + a₂t² + …` with `a₁ ≠ 0`.
    pub fn reversion(&self) -> Option<Self> {
        let n = self.precision();
        if !self.coeff(0).is_zero() || n < 2 {
            return None;
        }
        let a1_inv = self.coeffs[1].inv()?;
        // Newton-free fixed point: g = (t − (f(g) − a₁g)) / a₁, one order per pass
        let t = Self::variable(F::zero(), n);
        let mut g = t.scale(&a1_inv);
        let linear = TruncSeries { coeffs: (0..n).map(|k| if k == 1 { self.coeffs[1].clone() } else { F::zero() }).collect() };
        let higher = self.sub(&linear);
        for _ in 0..n {
            g = t.sub(&higher.compose(&g)).scale(&a1_inv);
        }
        Some(g)
    }

    /// Value of the truncated polynomial at `t`.
    pub fn eval(&self, t: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(t).add(c))
    }

    pub fn to_poly(&self) -> Polynomial<F> {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> TruncSeries<G> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// Finite Laurent expansion `Σ_{i} c_i t^{val+i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<F: Field> {
    pub val: i64,
    pub coeffs: Vec<F>,
}

impl<F: Field> Laurent<F> {
    /// Coefficient of `t^k`, zero outside the computed window.
    pub fn coeff(&self, k: i64) -> F {
        if k < self.val {
            return F::zero();
        }
        self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(F::zero)
    }

    /// Highest exponent covered by the expansion (exclusive).
    pub fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn leading(&self) -> F {
        self.coeff(self.val)
    }
}

/// Laurent expansion of `num/den` in `t` given polynomial data in `t`.
fn laurent_of_quotient<F: Field>(num: &Polynomial<F>, den: &Polynomial<F>, terms: usize) -> Laurent<F> {
    let vn = num.valuation().expect("nonzero numerator");
    let vd = den.valuation().expect("nonzero denominator");
    let n_shift = Polynomial::new(num.coeffs()[vn..].to_vec());
    let d_shift = Polynomial::new(den.coeffs()[vd..].to_vec());
    let ns = TruncSeries::from_poly(&n_shift, terms);
    let ds = TruncSeries::from_poly(&d_shift, terms);
    let q = ns.div(&ds).expect("shifted denominator has a nonzero constant term");
    Laurent { val: vn as i64 - vd as i64, coeffs: q.coeffs }
}

impl<F: Field> RationalFunction<F> {
    /// Laurent expansion in `t = λ − c`, `terms` coefficients from the
    /// leading one.
    pub fn laurent_at(&self, c: &F, terms: usize) -> Option<Laurent<F>> {
        if self.is_zero() {
            return None;
        }
        let n = self.num().taylor_shift(c);
        let d = self.den().taylor_shift(c);
        Some(laurent_of_quotient(&n, &d, terms))
    }

    /// Laurent expansion in `t = 1/λ`; the valuation equals the order at ∞.
    pub fn laurent_at_infinity(&self, terms: usize) -> Option<Laurent<F>> {
        if self.is_zero() {
            return None;
        }
        let dn = self.num().degree().expect("nonzero");
        let dd = self.den().degree().expect("nonzero");
        let n = self.num().reversed(dn);
        let d = self.den().reversed(dd);
        let mut l = laurent_of_quotient(&n, &d, terms);
        l.val += dd as i64 - dn as i64;
        Some(l)
    }

    /// Taylor series at an ordinary point `c`; `None` at a pole.
    pub fn taylor_at(&self, c: &F, terms: usize) -> Option<TruncSeries<F>> {
        let n = TruncSeries::from_poly(&self.num().taylor_shift(c), terms);
        let d = TruncSeries::from_poly(&self.den().taylor_shift(c), terms);
        n.div(&d)
    }
}

impl super::ratfunc::RatFunc {
    /// Taylor series at `c` computed directly in `G`, skipping any
    /// normalization of the embedded function. `None` at a pole.
    pub fn taylor_in<G: Field>(&self, c: &G, terms: usize) -> Option<TruncSeries<G>> {
        let n = self.num().lift::<G>().taylor_shift(c);
        let d = self.den().lift::<G>().taylor_shift(c);
        if d.coeff(0).is_zero() {
            return None;
        }
        TruncSeries::from_poly(&n, terms).div(&TruncSeries::from_poly(&d, terms))
    }
}
