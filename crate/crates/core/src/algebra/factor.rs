//! Square-free decomposition and exact root extraction for factors of
//! degree at most two.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::field::{divisors, split_square, Field, Q};
use super::poly::{poly_gcd, Poly};
use super::quad::Quadratic;

/// Where a root (or a whole place) sits.
#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    /// A point of ℚ or of a quadratic field ℚ(√d).
    Point(Quadratic),
    /// A place of degree ≥ 3 kept as its monic defining polynomial.
    Unsplit(Poly),
}

impl Location {
    pub fn degree(&self) -> usize {
        match self {
            Location::Point(p) if p.is_rational() => 1,
            Location::Point(_) => 2,
            Location::Unsplit(p) => p.degree().unwrap_or(0),
        }
    }
}

/// A pole place and its multiplicity in the denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleDatum {
    pub location: Location,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeFactor {
    /// Monic factor.
    pub factor: Poly,
    pub multiplicity: usize,
    /// Exact roots; empty when the factor is carried unsplit.
    pub roots: Vec<Quadratic>,
}

impl SquarefreeFactor {
    pub fn is_split(&self) -> bool {
        !self.roots.is_empty()
    }
}

/// Yun's algorithm: monic square-free factors with multiplicities.
pub fn squarefree(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let a0 = poly_gcd(&p, &dp).expect("p nonzero");
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let mut c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = poly_gcd(&b, &d).expect("b nonzero");
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Integer polynomial proportional to `p` (primitive content not removed).
fn clear_denominators(p: &Poly) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect()
}

/// Distinct rational roots of `p` by the rational-root test.
pub fn rational_roots(p: &Poly) -> Vec<Q> {
    let mut roots = Vec::new();
    let Some(deg) = p.degree() else { return roots };
    if deg == 0 {
        return roots;
    }
    let mut rest = p.clone();
    if let Some(v) = rest.valuation() {
        if v > 0 {
            roots.push(<Q as Field>::zero());
            rest = Poly::new(rest.coeffs()[v..].to_vec());
        }
    }
    if rest.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let ints = clear_denominators(&rest);
    let a0 = ints[0].clone();
    let an = ints[ints.len() - 1].clone();
    let nums = divisors(&a0);
    let dens = divisors(&an);
    let mut cands: Vec<Q> = Vec::new();
    for n in &nums {
        for d in &dens {
            let c = Q::new(n.clone(), d.clone());
            if !cands.contains(&c) {
                cands.push(c.clone());
                cands.push(-c);
            }
        }
    }
    cands.sort();
    for c in cands {
        if Field::is_zero(&rest.eval(&c)) {
            roots.push(c);
        }
    }
    roots.sort();
    roots
}

/// Roots of a monic quadratic `λ² + bλ + c` without rational roots.
fn quadratic_roots(p: &Poly) -> [Quadratic; 2] {
    let b = p.coeff(1);
    let c = p.coeff(0);
    let two = Q::from_integer(BigInt::from(2));
    let disc = &b * &b - Q::from_integer(BigInt::from(4)) * &c;
    let (s, k) = split_square(&disc);
    let re = -&b / &two;
    let im = &s / &two;
    [Quadratic::new(re.clone(), im.clone(), k.clone()), Quadratic::new(re, -im, k)]
}

/// Square-free factors of `p`, with rational roots pulled out as linear
/// factors and quadratic remainders split exactly. Higher-degree remainders
/// are returned unsplit.
pub fn squarefree_and_roots(p: &Poly) -> Vec<SquarefreeFactor> {
    let mut out = Vec::new();
    for (f, m) in squarefree(p) {
        let mut rest = f;
        for r in rational_roots(&rest) {
            let lin = Poly::linear_root(&r);
            rest = rest.exact_div(&lin).expect("root divides");
            out.push(SquarefreeFactor {
                factor: lin,
                multiplicity: m,
                roots: vec![Quadratic::rational(r)],
            });
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(2) => {
                let roots = quadratic_roots(&rest).to_vec();
                out.push(SquarefreeFactor { factor: rest, multiplicity: m, roots });
            }
            Some(_) => out.push(SquarefreeFactor { factor: rest, multiplicity: m, roots: vec![] }),
        }
    }
    out
}

/// Pole places of a denominator, one datum per point (conjugate points are
/// listed separately) or per unsplit place.
pub fn pole_data(den: &Poly) -> Vec<PoleDatum> {
    let mut out = Vec::new();
    for sf in squarefree_and_roots(den) {
        if sf.is_split() {
            for r in sf.roots {
                out.push(PoleDatum { location: Location::Point(r), order: sf.multiplicity });
            }
        } else {
            out.push(PoleDatum { location: Location::Unsplit(sf.factor), order: sf.multiplicity });
        }
    }
    out
}

/// Pole orders per place, without needing any splitting.
pub fn pole_orders(den: &Poly) -> Vec<usize> {
    let mut out = Vec::new();
    for (f, m) in squarefree(den) {
        let deg = f.degree().unwrap_or(0);
        out.extend(std::iter::repeat(m).take(deg));
    }
    out
}

/// The set of radicands of the non-rational points, sorted and deduplicated.
pub fn radicands(points: &[Quadratic]) -> Vec<BigInt> {
    let mut ds: Vec<BigInt> = points.iter().filter(|p| !p.is_rational()).map(|p| p.radicand().clone()).collect();
    ds.sort_by(|a, b| a.abs().cmp(&b.abs()).then(a.cmp(b)));
    ds.dedup();
    ds
}

impl Quadratic {
    /// Whether this point is a root of `p`.
    pub fn is_root_of(&self, p: &Poly) -> bool {
        p.eval_with(self, Quadratic::from_rational).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qi;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn monomial_factors() {
        // λ²(λ−1) = λ³ − λ²
        let f = squarefree_and_roots(&p(&[0, 0, -1, 1]));
        assert_eq!(f.len(), 2);
        let zero = f.iter().find(|s| s.factor == p(&[0, 1])).unwrap();
        assert_eq!(zero.multiplicity, 2);
        assert_eq!(zero.roots, vec![Quadratic::rational(qi(0))]);
        let one = f.iter().find(|s| s.factor == p(&[-1, 1])).unwrap();
        assert_eq!(one.multiplicity, 1);
        assert_eq!(one.roots, vec![Quadratic::rational(qi(1))]);
    }

    #[test]
    fn gaussian_roots() {
        let f = squarefree_and_roots(&p(&[1, 0, 1]));
        assert_eq!(f.len(), 1);
        let i = Quadratic::gaussian(qi(0), qi(1));
        assert!(f[0].roots.contains(&i));
        assert!(f[0].roots.contains(&i.conj()));
        for r in &f[0].roots {
            assert!(r.is_root_of(&f[0].factor));
        }
    }

    #[test]
    fn cubic_stays_unsplit() {
        let f = squarefree_and_roots(&p(&[-2, 0, 0, 1]));
        assert_eq!(f.len(), 1);
        assert!(!f[0].is_split());
        assert_eq!(f[0].factor, p(&[-2, 0, 0, 1]));
    }

    #[test]
    fn product_reconstructs_input() {
        // 3(λ−2)³(λ²−2)(λ³+λ+1)²
        let mut input = p(&[3]);
        for _ in 0..3 {
            input = input.mul(&p(&[-2, 1]));
        }
        input = input.mul(&p(&[-2, 0, 1]));
        input = input.mul(&p(&[1, 1, 0, 1]).pow(2));
        let mut prod = Poly::one();
        for sf in squarefree_and_roots(&input) {
            prod = prod.mul(&sf.factor.pow(sf.multiplicity as u32));
        }
        assert_eq!(prod, input.monic());
        assert_eq!(pole_orders(&input).iter().sum::<usize>(), 3 + 2 + 6);
    }

    #[test]
    fn surd_roots() {
        let f = squarefree_and_roots(&p(&[-8, 0, 1]));
        let r = &f[0].roots[0];
        assert_eq!(r.radicand(), &BigInt::from(2));
        assert!(r.is_root_of(&p(&[-8, 0, 1])));
    }
}
