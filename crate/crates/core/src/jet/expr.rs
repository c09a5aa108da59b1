//! Differential rational expressions in λ, φ, φ', …, φ^(k).

use std::fmt;

use num_complex::Complex64;

use crate::algebra::field::{Field, Q};
use crate::algebra::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq)]
pub enum DiffExpr {
    /// The independent variable λ.
    Lambda,
    /// `φ^(j)`, with `Dep(0) = φ`.
    Dep(usize),
    Const(Q),
    /// A rational function of λ evaluated at the inner expression.
    Apply(RatFunc, Box<DiffExpr>),
    Add(Vec<DiffExpr>),
    Mul(Vec<DiffExpr>),
    Pow(Box<DiffExpr>, i32),
}

/// Variable of a partial derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wrt {
    /// Explicit dependence on λ.
    Lambda,
    Dep(usize),
}

impl DiffExpr {
    pub fn constant(c: Q) -> Self {
        DiffExpr::Const(c)
    }

    pub fn int(n: i64) -> Self {
        DiffExpr::Const(Q::from_i64(n))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DiffExpr::Const(c) if Field::is_zero(c))
    }

    /// `R(inner)`, folded when `R` or `inner` is constant.
    pub fn apply(r: &RatFunc, inner: DiffExpr) -> Self {
        if let Some(c) = r.as_constant() {
            return DiffExpr::Const(c);
        }
        if let DiffExpr::Const(x) = &inner {
            if let Some(v) = r.eval(x) {
                return DiffExpr::Const(v);
            }
        }
        if *r == RatFunc::x() {
            return inner;
        }
        DiffExpr::Apply(r.clone(), Box::new(inner))
    }

    pub fn sum(terms: Vec<DiffExpr>) -> Self {
        let mut out = Vec::new();
        let mut c = <Q as Field>::zero();
        for t in terms {
            match t {
                DiffExpr::Const(x) => c = c.add(&x),
                DiffExpr::Add(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        if !Field::is_zero(&c) {
            out.push(DiffExpr::Const(c));
        }
        match out.len() {
            0 => Self::zero(),
            1 => out.pop().expect("one term"),
            _ => DiffExpr::Add(out),
        }
    }

    pub fn product(factors: Vec<DiffExpr>) -> Self {
        let mut out = Vec::new();
        let mut c = <Q as Field>::one();
        for f in factors {
            match f {
                DiffExpr::Const(x) => c = c.mul(&x),
                DiffExpr::Mul(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        if Field::is_zero(&c) {
            return Self::zero();
        }
        if !Field::is_one(&c) {
            out.insert(0, DiffExpr::Const(c));
        }
        match out.len() {
            0 => Self::one(),
            1 => out.pop().expect("one factor"),
            _ => DiffExpr::Mul(out),
        }
    }

    pub fn pow(base: DiffExpr, n: i32) -> Self {
        match (n, &base) {
            (0, _) => Self::one(),
            (1, _) => base,
            (_, DiffExpr::Const(c)) if !Field::is_zero(c) || n > 0 => {
                DiffExpr::Const(c.powi(n as i64).expect("nonzero base"))
            }
            (_, DiffExpr::Pow(b, m)) => DiffExpr::Pow(b.clone(), m * n),
            _ => DiffExpr::Pow(Box::new(base), n),
        }
    }

    pub fn add(self, rhs: DiffExpr) -> Self {
        Self::sum(vec![self, rhs])
    }

    pub fn sub(self, rhs: DiffExpr) -> Self {
        Self::sum(vec![self, rhs.neg()])
    }

    pub fn mul(self, rhs: DiffExpr) -> Self {
        Self::product(vec![self, rhs])
    }

    pub fn neg(self) -> Self {
        Self::product(vec![Self::int(-1), self])
    }

    pub fn div(self, rhs: DiffExpr) -> Self {
        Self::product(vec![self, Self::pow(rhs, -1)])
    }

    /// Highest jet coordinate appearing, `None` without jet coordinates.
    pub fn order(&self) -> Option<usize> {
        match self {
            DiffExpr::Lambda | DiffExpr::Const(_) => None,
            DiffExpr::Dep(j) => Some(*j),
            DiffExpr::Apply(_, e) | DiffExpr::Pow(e, _) => e.order(),
            DiffExpr::Add(v) | DiffExpr::Mul(v) => v.iter().filter_map(DiffExpr::order).max(),
        }
    }

    fn depends_on(&self, w: Wrt) -> bool {
        match self {
            DiffExpr::Lambda => w == Wrt::Lambda,
            DiffExpr::Dep(j) => w == Wrt::Dep(*j),
            DiffExpr::Const(_) => false,
            DiffExpr::Apply(_, e) | DiffExpr::Pow(e, _) => e.depends_on(w),
            DiffExpr::Add(v) | DiffExpr::Mul(v) => v.iter().any(|e| e.depends_on(w)),
        }
    }

    /// Partial derivative with respect to one coordinate.
    pub fn partial(&self, w: Wrt) -> DiffExpr {
        if !self.depends_on(w) {
            return Self::zero();
        }
        match self {
            DiffExpr::Lambda | DiffExpr::Dep(_) => Self::one(),
            DiffExpr::Const(_) => Self::zero(),
            DiffExpr::Apply(r, inner) => {
                Self::apply(&r.derivative(), (**inner).clone()).mul(inner.partial(w))
            }
            DiffExpr::Add(v) => Self::sum(v.iter().map(|e| e.partial(w)).collect()),
            DiffExpr::Mul(v) => {
                let mut terms = Vec::new();
                for i in 0..v.len() {
                    let di = v[i].partial(w);
                    if di.is_zero() {
                        continue;
                    }
                    let mut factors: Vec<DiffExpr> = v.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, e)| e.clone()).collect();
                    factors.push(di);
                    terms.push(Self::product(factors));
                }
                Self::sum(terms)
            }
            DiffExpr::Pow(b, n) => Self::product(vec![
                Self::int(*n as i64),
                Self::pow((**b).clone(), n - 1),
                b.partial(w),
            ]),
        }
    }

    /// `∂/∂λ + Σ φ^(j+1) ∂/∂φ^(j)`.
    pub fn total_derivative(&self) -> DiffExpr {
        let mut terms = vec![self.partial(Wrt::Lambda)];
        if let Some(k) = self.order() {
            for j in 0..=k {
                let p = self.partial(Wrt::Dep(j));
                if !p.is_zero() {
                    terms.push(DiffExpr::Dep(j + 1).mul(p));
                }
            }
        }
        Self::sum(terms)
    }

    /// Value at λ and `jet = [φ, φ', …]`; `None` on division by zero.
    pub fn eval<F: Field>(&self, lambda: &F, jet: &[F]) -> Option<F> {
        match self {
            DiffExpr::Lambda => Some(lambda.clone()),
            DiffExpr::Dep(j) => jet.get(*j).cloned(),
            DiffExpr::Const(c) => Some(F::from_rational(c)),
            DiffExpr::Apply(r, inner) => r.eval_in(&inner.eval(lambda, jet)?),
            DiffExpr::Add(v) => v.iter().try_fold(F::zero(), |acc, e| Some(acc.add(&e.eval(lambda, jet)?))),
            DiffExpr::Mul(v) => v.iter().try_fold(F::one(), |acc, e| Some(acc.mul(&e.eval(lambda, jet)?))),
            DiffExpr::Pow(b, n) => b.eval(lambda, jet)?.powi(*n as i64),
        }
    }

    /// Float version with rational functions pre-converted.
    pub fn compile(&self) -> CompiledExpr {
        let conv = |p: &crate::algebra::poly::Poly| -> Vec<Complex64> { p.coeffs().iter().map(Complex64::from_rational).collect() };
        match self {
            DiffExpr::Lambda => CompiledExpr::Lambda,
            DiffExpr::Dep(j) => CompiledExpr::Dep(*j),
            DiffExpr::Const(c) => CompiledExpr::Const(Complex64::from_rational(c)),
            DiffExpr::Apply(r, e) => CompiledExpr::Apply(conv(r.num()), conv(r.den()), Box::new(e.compile())),
            DiffExpr::Add(v) => CompiledExpr::Add(v.iter().map(DiffExpr::compile).collect()),
            DiffExpr::Mul(v) => CompiledExpr::Mul(v.iter().map(DiffExpr::compile).collect()),
            DiffExpr::Pow(b, n) => CompiledExpr::Pow(Box::new(b.compile()), *n),
        }
    }

    fn fmt_prec(&self, prec: u8) -> String {
        let dep = |j: usize| format!("phi{}", "'".repeat(j));
        match self {
            DiffExpr::Lambda => "l".to_string(),
            DiffExpr::Dep(j) => dep(*j),
            DiffExpr::Const(c) => {
                let s = c.to_string();
                if prec > 0 && (s.contains('/') || s.starts_with('-')) {
                    format!("({s})")
                } else {
                    s
                }
            }
            DiffExpr::Apply(r, inner) => {
                let var = match &**inner {
                    DiffExpr::Lambda => "l".to_string(),
                    DiffExpr::Dep(j) => dep(*j),
                    other => format!("({})", other.fmt_prec(0)),
                };
                let s = r.display_with(&var);
                if prec > 0 && s.contains([' ', '/', '*', '^']) {
                    format!("({s})")
                } else {
                    s
                }
            }
            DiffExpr::Add(v) => {
                let mut out = String::new();
                for (i, e) in v.iter().enumerate() {
                    let s = match e {
                        DiffExpr::Const(c) => c.to_string(),
                        _ => e.fmt_prec(1),
                    };
                    if i == 0 {
                        out.push_str(&s);
                    } else if let Some(rest) = s.strip_prefix('-') {
                        out.push_str(" - ");
                        out.push_str(rest);
                    } else {
                        out.push_str(" + ");
                        out.push_str(&s);
                    }
                }
                if prec > 1 {
                    format!("({out})")
                } else {
                    out
                }
            }
            DiffExpr::Mul(v) => {
                let mut parts: Vec<String> = Vec::new();
                let mut sign = "";
                for (i, e) in v.iter().enumerate() {
                    match e {
                        DiffExpr::Const(c) if i == 0 && c < &<Q as Field>::zero() => {
                            sign = "-";
                            let m = -c;
                            if !Field::is_one(&m) {
                                parts.push(DiffExpr::Const(m).fmt_prec(2));
                            }
                        }
                        _ => parts.push(e.fmt_prec(2)),
                    }
                }
                let body = parts.join("*");
                let s = format!("{sign}{body}");
                if prec > 2 {
                    format!("({s})")
                } else {
                    s
                }
            }
            DiffExpr::Pow(b, n) => {
                let base = b.fmt_prec(3);
                if *n < 0 {
                    format!("{base}^({n})")
                } else {
                    format!("{base}^{n}")
                }
            }
        }
    }
}

impl fmt::Display for DiffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_prec(0))
    }
}

/// [`DiffExpr`] with Complex64 coefficients, for repeated float evaluation.
#[derive(Clone, Debug)]
pub enum CompiledExpr {
    Lambda,
    Dep(usize),
    Const(Complex64),
    Apply(Vec<Complex64>, Vec<Complex64>, Box<CompiledExpr>),
    Add(Vec<CompiledExpr>),
    Mul(Vec<CompiledExpr>),
    Pow(Box<CompiledExpr>, i32),
}

fn horner(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a)
}

impl CompiledExpr {
    /// Value at λ and `jet = [φ, φ', …]`; non-finite on division by zero.
    pub fn eval(&self, lambda: Complex64, jet: &[Complex64]) -> Complex64 {
        match self {
            CompiledExpr::Lambda => lambda,
            CompiledExpr::Dep(j) => jet[*j],
            CompiledExpr::Const(c) => *c,
            CompiledExpr::Apply(n, d, e) => {
                let x = e.eval(lambda, jet);
                horner(n, x) / horner(d, x)
            }
            CompiledExpr::Add(v) => v.iter().map(|e| e.eval(lambda, jet)).sum(),
            CompiledExpr::Mul(v) => v.iter().map(|e| e.eval(lambda, jet)).product(),
            CompiledExpr::Pow(b, n) => b.eval(lambda, jet).powi(*n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qi;
    use crate::algebra::parse::parse_rational_function as parse;

    #[test]
    fn total_derivative_examples() {
        assert_eq!(DiffExpr::Dep(0).total_derivative(), DiffExpr::Dep(1));
        let r = parse("l^2 + 1").unwrap();
        assert_eq!(DiffExpr::apply(&r, DiffExpr::Lambda).total_derivative(), DiffExpr::apply(&parse("2*l").unwrap(), DiffExpr::Lambda));
        // R(φ)φ'² → R'(φ)φ'³ + 2R(φ)φ'φ''
        let f = DiffExpr::apply(&r, DiffExpr::Dep(0)).mul(DiffExpr::pow(DiffExpr::Dep(1), 2));
        let d = f.total_derivative();
        let expect = |lam: &Q, j: &[Q]| -> Q {
            let rp = parse("2*l").unwrap().eval(&j[0]).unwrap();
            let rv = r.eval(&j[0]).unwrap();
            let _ = lam;
            rp * &j[1] * &j[1] * &j[1] + qi(2) * rv * &j[1] * &j[2]
        };
        for pt in [[qi(1), qi(2), qi(3)], [qi(-2), qi(5), qi(1)]] {
            assert_eq!(d.eval(&qi(0), &pt).unwrap(), expect(&qi(0), &pt));
        }
        assert_eq!(d.order(), Some(2));
    }

    #[test]
    fn compiled_matches_exact() {
        let r = parse("1/(l - 3)").unwrap();
        let f = DiffExpr::apply(&r, DiffExpr::Dep(0)).mul(DiffExpr::pow(DiffExpr::Dep(1), -2)).add(DiffExpr::Lambda);
        let exact = f.eval(&qi(1), &[qi(2), qi(4)]).unwrap();
        let c = Complex64::new(1.0, 0.0);
        let float = f.compile().eval(c, &[Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)]);
        assert!((float - Complex64::from_rational(&exact)).norm() < 1e-14);
    }

    #[test]
    fn display_is_readable() {
        let s = DiffExpr::Dep(3).div(DiffExpr::Dep(1));
        assert_eq!(s.to_string(), "phi'''*phi'^(-1)");
        assert_eq!(DiffExpr::Dep(1).sub(DiffExpr::one()).to_string(), "phi' - 1");
    }
}
