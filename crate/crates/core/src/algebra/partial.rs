//! Partial fractions over the split pole places.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::factor::{squarefree_and_roots, Location, PoleDatum};
use super::field::{Field, Q};
use super::poly::{Poly, Polynomial};
use super::quad::Quadratic;
use super::ratfunc::{RatFunc, RationalFunction};
use super::AlgebraError;

/// Principal part at one point: `ladder[j]` multiplies `1/(λ − c)^{j+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaceTerms {
    pub pole: PoleDatum,
    pub ladder: Vec<Quadratic>,
}

impl PlaceTerms {
    pub fn point(&self) -> &Quadratic {
        match &self.pole.location {
            Location::Point(p) => p,
            Location::Unsplit(_) => unreachable!("unsplit places never carry ladders"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub polynomial: Poly,
    pub places: Vec<PlaceTerms>,
}

/// Decomposes `a` into its polynomial part and principal parts at each
/// (exactly split) pole.
pub fn partial_fractions(a: &RatFunc) -> Result<PartialFractions, AlgebraError> {
    let (poly_part, _) = a.num().div_rem(a.den()).expect("den nonzero");
    let mut places = Vec::new();
    for sf in squarefree_and_roots(a.den()) {
        if !sf.is_split() {
            return Err(AlgebraError::UnsupportedField(format!(
                "pole place {} has degree {} over Q",
                sf.factor,
                sf.factor.degree().unwrap_or(0)
            )));
        }
        let m = sf.multiplicity;
        for c in sf.roots {
            let lifted: RationalFunction<Quadratic> = a.map(|x| Quadratic::rational_in(x.clone(), c.radicand()));
            let l = lifted.laurent_at(&c, m).expect("a nonzero at a pole");
            let ladder = (1..=m as i64).map(|j| l.coeff(-j)).collect();
            places.push(PlaceTerms { pole: PoleDatum { location: Location::Point(c), order: m }, ladder });
        }
    }
    Ok(PartialFractions { polynomial: poly_part, places })
}

impl PartialFractions {
    /// Reassembles the rational function. Conjugate places are summed in
    /// their common quadratic field, which makes the total rational.
    pub fn recompose(&self) -> RatFunc {
        let mut rational = RatFunc::from_poly(self.polynomial.clone());
        let mut by_field: BTreeMap<BigInt, RationalFunction<Quadratic>> = BTreeMap::new();
        for place in &self.places {
            let c = place.point();
            let d = c.radicand().clone();
            let lin = Polynomial::new(vec![c.neg(), Quadratic::rational_in(Q::from_integer(1.into()), &d)]);
            let mut sum = RationalFunction::<Quadratic>::zero();
            for (j, coef) in place.ladder.iter().enumerate() {
                let term = RationalFunction::new(Polynomial::constant(coef.clone()), lin.pow(j as u32 + 1))
                    .expect("nonzero denominator");
                sum = sum.add(&term);
            }
            if c.is_rational() && place.ladder.iter().all(|x| x.is_rational()) {
                rational = rational.add(&to_rational(&sum));
            } else {
                let slot = by_field.entry(d).or_insert_with(RationalFunction::zero);
                *slot = slot.add(&sum);
            }
        }
        for sum in by_field.values() {
            rational = rational.add(&to_rational(sum));
        }
        rational
    }
}

fn to_rational(f: &RationalFunction<Quadratic>) -> RatFunc {
    let back = |p: &Polynomial<Quadratic>| -> Poly {
        Poly::new(
            p.coeffs()
                .iter()
                .map(|c| c.as_rational().cloned().expect("conjugate places sum to a rational function"))
                .collect(),
        )
    };
    RatFunc::new(back(f.num()), back(f.den())).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qi;
    use crate::algebra::parse::parse_rational_function;

    #[test]
    fn cover_up_example() {
        let a = parse_rational_function("1/(l*(l-1))").unwrap();
        let pf = partial_fractions(&a).unwrap();
        assert!(pf.polynomial.is_zero());
        assert_eq!(pf.places.len(), 2);
        for pl in &pf.places {
            let c = pl.point().as_rational().unwrap().clone();
            let expect = if c == qi(0) { qi(-1) } else { qi(1) };
            assert_eq!(pl.ladder, vec![Quadratic::rational(expect)]);
        }
        assert_eq!(pf.recompose(), a);
    }

    #[test]
    fn polynomial_and_double_pole() {
        let pf = partial_fractions(&parse_rational_function("l^2").unwrap()).unwrap();
        assert!(pf.places.is_empty());
        let pf = partial_fractions(&parse_rational_function("1/l^2").unwrap()).unwrap();
        assert_eq!(pf.places.len(), 1);
        assert_eq!(pf.places[0].ladder, vec![Quadratic::rational(qi(0)), Quadratic::rational(qi(1))]);
    }

    #[test]
    fn mixed_quadratic_fields_round_trip() {
        let a = parse_rational_function("(l^5 + 3)/((l^2 + 1)^2 * (l^2 - 2) * (l - 3))").unwrap();
        let pf = partial_fractions(&a).unwrap();
        assert_eq!(pf.places.len(), 5);
        assert_eq!(pf.recompose(), a);
    }

    #[test]
    fn cubic_place_is_unsupported() {
        let a = parse_rational_function("1/(l^3 - 2)").unwrap();
        assert!(matches!(partial_fractions(&a), Err(AlgebraError::UnsupportedField(_))));
    }
}
