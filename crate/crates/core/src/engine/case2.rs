//! Search for a degree-2 algebraic Riccati solution via integer exponent
//! sets and a third-order polynomial ansatz.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::ansatz::{monic_polynomial_solution, polar_term, radicands_of, square_decomposition, QRat};
use super::ext::ExtRatFunc;
use super::local::{potential, root_in, Case2Place, LocalExponentData, Place};
use super::{Certificate, EngineError, SearchOutcome};
use crate::algebra::factor::pole_orders;
use crate::algebra::field::{Field, Q};
use crate::algebra::quad::Quadratic;
use crate::algebra::ratfunc::RatFunc;

enum Family {
    Found(Certificate),
    Empty,
    Undecided,
}

pub fn case2_search(big_r: &RatFunc) -> Result<SearchOutcome, EngineError> {
    let r = potential(big_r);
    if r.is_zero() {
        return Ok(SearchOutcome::Exhausted("r = 0 has rational Riccati solutions".into()));
    }
    if !pole_orders(r.den()).into_iter().any(|o| o == 2 || (o > 2 && o % 2 == 1)) {
        return Ok(SearchOutcome::Exhausted("r has no pole of order 2 or of odd order above 2".into()));
    }
    let data = LocalExponentData::new(big_r)?;
    let places = data.case2_places();
    let total = places.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.exponents.len()));
    let total = match total {
        Some(t) if t <= super::case1::MAX_FAMILIES => t,
        _ => return Ok(SearchOutcome::Undecided("too many exponent families to enumerate".into())),
    };
    let outcomes: Vec<Family> = (0..total).into_par_iter().map(|idx| family(&data, &places, idx)).collect();
    let mut undecided = false;
    for outcome in outcomes {
        match outcome {
            Family::Found(c) => return Ok(SearchOutcome::Certified(c)),
            Family::Undecided => undecided = true,
            Family::Empty => {}
        }
    }
    if undecided {
        Ok(SearchOutcome::Undecided("a reducible candidate needs a square root outside the working field".into()))
    } else {
        Ok(SearchOutcome::Exhausted(format!("none of the {total} exponent families yields a polynomial")))
    }
}

fn family(data: &LocalExponentData, places: &[Case2Place], mut idx: usize) -> Family {
    let mut pick = vec![0i64; places.len()];
    for (slot, p) in pick.iter_mut().zip(places).rev() {
        *slot = p.exponents[idx % p.exponents.len()];
        idx /= p.exponents.len();
    }
    let mut twice_d = 0i64;
    for (place, &e) in places.iter().zip(&pick) {
        twice_d += if place.place == Place::Infinity { e } else { -e };
    }
    if twice_d < 0 || twice_d % 2 != 0 {
        return Family::Empty;
    }
    let d = (twice_d / 2) as usize;

    let half = Quadratic::from_rational(&Q::new(1.into(), 2.into()));
    let mut theta = QRat::zero();
    for (place, &e) in places.iter().zip(&pick) {
        if let Place::Finite(c) = &place.place {
            theta = theta.add(&polar_term(&half.mul(&Quadratic::from_i64(e)), c, 1));
        }
    }
    let r = data.r.lift::<Quadratic>();
    let k = |n: i64| QRat::constant(Quadratic::from_i64(n));
    let dt = theta.derivative();
    let t2 = theta.mul(&theta);
    // P''' + 3θP'' + (3θ² + 3θ' − 4r)P' + (θ'' + 3θθ' + θ³ − 4rθ − 2r')P = 0
    let c3 = QRat::one();
    let c2 = k(3).mul(&theta);
    let c1 = k(3).mul(&t2).add(&k(3).mul(&dt)).sub(&k(4).mul(&r));
    let c0 = dt
        .derivative()
        .add(&k(3).mul(&theta).mul(&dt))
        .add(&t2.mul(&theta))
        .sub(&k(4).mul(&r).mul(&theta))
        .sub(&k(2).mul(&r.derivative()));
    let Some(p) = monic_polynomial_solution(&[c0, c1, c2, c3], d) else { return Family::Empty };

    let phi = theta.add(&QRat::from_poly(p.derivative()).div(&QRat::from_poly(p)).expect("monic"));
    let pc = phi.neg();
    let qc = phi.derivative().add(&phi.mul(&phi)).mul(&QRat::constant(half.clone())).sub(&r);
    let big_r = r.mul(&k(-2));
    let a = pc.mul(&pc).neg().add(&qc.add(&qc)).sub(&big_r).add(&pc.derivative());
    let b = qc.derivative().sub(&pc.mul(&qc)).sub(&pc.mul(&big_r).mul(&QRat::constant(half.clone())));
    if !a.is_zero() || !b.is_zero() {
        return Family::Empty;
    }

    // a square discriminant means the quadratic splits into Riccati solutions
    let disc = pc.mul(&pc).sub(&k(4).mul(&qc));
    let minus_half_p = pc.mul(&QRat::constant(half.neg()));
    if disc.is_zero() {
        return Family::Found(Certificate::RiccatiSolution(ExtRatFunc::from_quadratic(&minus_half_p)));
    }
    if let Some((lc, g)) = square_decomposition(&disc) {
        let field: BigInt = radicands_of(disc.num().coeffs().iter().chain(disc.den().coeffs())).pop().unwrap_or_default();
        let Some(root) = root_in(&lc, &field) else { return Family::Undecided };
        let u = minus_half_p.add(&g.mul(&QRat::constant(root.mul(&half))));
        if !u.derivative().add(&u.mul(&u)).sub(&r).is_zero() {
            return Family::Undecided;
        }
        return Family::Found(Certificate::RiccatiSolution(ExtRatFunc::from_quadratic(&u)));
    }
    Family::Found(Certificate::MinimalPolynomial { p: ExtRatFunc::from_quadratic(&pc), q: ExtRatFunc::from_quadratic(&qc) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_rational_function as parse;

    #[test]
    fn dihedral_instance_certifies() {
        let r = parse("-2/l + 3/(8*l^2)").unwrap();
        match case2_search(&r).unwrap() {
            SearchOutcome::Certified(c @ Certificate::MinimalPolynomial { .. }) => assert!(c.verify(&r)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn airy_skips_by_necessary_condition() {
        assert!(matches!(case2_search(&parse("l").unwrap()).unwrap(), SearchOutcome::Exhausted(_)));
    }
}
