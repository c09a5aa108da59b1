//! Undetermined-coefficient solves shared by the case searches.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::local::Place;
use crate::algebra::field::{Field, Q};
use crate::algebra::linalg;
use crate::algebra::poly::{poly_gcd, Polynomial};
use crate::algebra::quad::Quadratic;
use crate::algebra::ratfunc::RationalFunction;

pub(crate) type QPoly = Polynomial<Quadratic>;
pub(crate) type QRat = RationalFunction<Quadratic>;

fn lcm(a: &QPoly, b: &QPoly) -> QPoly {
    let g = poly_gcd(a, b).expect("nonzero");
    a.exact_div(&g).expect("gcd divides").mul(b).monic()
}

/// Monic `P` of degree `d` with `Σ coeffs[j]·P^(j) = 0`, where the last
/// coefficient is the leading one.
pub(crate) fn monic_polynomial_solution(coeffs: &[QRat], d: usize) -> Option<QPoly> {
    let den = coeffs.iter().fold(QPoly::one(), |acc, c| lcm(&acc, c.den()));
    let cleared: Vec<QPoly> =
        coeffs.iter().map(|c| c.num().mul(&den.exact_div(c.den()).expect("lcm is a multiple"))).collect();
    let image = |i: usize| -> QPoly {
        let mut m = QPoly::monomial(Quadratic::one(), i);
        let mut acc = QPoly::zero();
        for c in &cleared {
            acc = acc.add(&c.mul(&m));
            m = m.derivative();
        }
        acc
    };
    let columns: Vec<QPoly> = (0..=d).map(image).collect();
    let rows = columns.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let matrix: Vec<Vec<Quadratic>> = (0..rows).map(|k| columns[..d].iter().map(|c| c.coeff(k)).collect()).collect();
    let rhs: Vec<Quadratic> = (0..rows).map(|k| columns[d].coeff(k).neg()).collect();
    let mut p = if d == 0 {
        if rhs.iter().all(Quadratic::is_zero) {
            vec![]
        } else {
            return None;
        }
    } else {
        linalg::solve(&matrix, &rhs)?
    };
    p.push(Quadratic::one());
    Some(QPoly::new(p))
}

/// `c / (λ − point)^k`.
pub(crate) fn polar_term(c: &Quadratic, point: &Quadratic, k: usize) -> QRat {
    let lin = QPoly::new(vec![point.neg(), Quadratic::one()]);
    QRat::new(QPoly::constant(c.clone()), lin.pow(k as u32)).expect("nonzero")
}

/// `Σ_i part[i]·(λ − c)^(−i)` at a finite place, `Σ_i part[i]·λ^i` at infinity.
pub(crate) fn local_part(place: &Place, part: &[Quadratic]) -> QRat {
    match place {
        Place::Finite(c) => part
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(QRat::zero(), |acc, (i, a)| acc.add(&polar_term(a, c, i))),
        Place::Infinity => QRat::from_poly(QPoly::new(part.to_vec())),
    }
}

/// Running sum `q + Σ c_k √k` of quadratic numbers from different fields.
#[derive(Clone, Debug, Default)]
pub(crate) struct SurdSum {
    rational: Q,
    parts: BTreeMap<BigInt, Q>,
}

impl SurdSum {
    pub fn add(&mut self, x: &Quadratic, sign: i64) {
        let s = Q::from_integer(sign.into());
        self.rational += x.rational_part() * &s;
        if !x.is_rational() {
            *self.parts.entry(x.radicand().clone()).or_insert_with(<Q as Zero>::zero) += x.surd_part() * &s;
        }
    }

    /// The value when it is a non-negative integer.
    pub fn nonnegative_integer(&self) -> Option<usize> {
        if self.parts.values().any(|v| !Zero::is_zero(v)) || !self.rational.is_integer() {
            return None;
        }
        let n = self.rational.to_integer();
        if n < BigInt::zero() {
            return None;
        }
        n.try_into().ok()
    }
}

/// The distinct radicands among irrational entries.
pub(crate) fn radicands_of<'a>(xs: impl IntoIterator<Item = &'a Quadratic>) -> Vec<BigInt> {
    let mut ds: Vec<BigInt> = xs.into_iter().filter(|x| !x.is_rational()).map(|x| x.radicand().clone()).collect();
    ds.sort();
    ds.dedup();
    ds
}

/// Square root of a function whose numerator and denominator are, up to a
/// constant, squares of polynomials. Returns `(c, g)` with `f = c·g²`.
pub(crate) fn square_decomposition(f: &QRat) -> Option<(Quadratic, QRat)> {
    let lc = f.num().lead();
    let num = monic_square_root(&f.num().monic())?;
    let den = monic_square_root(f.den())?;
    Some((lc, QRat::new(num, den).ok()?))
}

fn monic_square_root(p: &QPoly) -> Option<QPoly> {
    let deg = p.degree()?;
    if deg % 2 == 1 {
        return None;
    }
    let n = deg / 2;
    let rev: Vec<Quadratic> = (0..=n).map(|k| p.coeff(deg - k)).collect();
    let root = crate::algebra::series::TruncSeries::new(rev).sqrt_with(Quadratic::one())?;
    let coeffs: Vec<Quadratic> = (0..=n).map(|k| root.coeff(n - k)).collect();
    let g = QPoly::new(coeffs);
    (g.mul(&g) == *p).then_some(g)
}
