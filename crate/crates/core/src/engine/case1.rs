//! Search for a Riccati solution `u ∈ ℚ̄(λ)`: local exponents at every place,
//! one candidate degree per sign family, then a polynomial ansatz.

use rayon::prelude::*;

use super::ansatz::{local_part, monic_polynomial_solution, polar_term, radicands_of, QRat, SurdSum};
use super::ext::ExtRatFunc;
use super::local::{potential, Case1Place, LocalExponentData, Place};
use super::{Certificate, EngineError, SearchOutcome};
use crate::algebra::factor::pole_orders;
use crate::algebra::quad::Quadratic;
use crate::algebra::ratfunc::RatFunc;

/// Families beyond this count are not enumerated.
pub const MAX_FAMILIES: usize = 1 << 16;

enum Family {
    Found(QRat),
    Empty,
    Undecided,
}

pub fn case1_search(big_r: &RatFunc) -> Result<SearchOutcome, EngineError> {
    let r = potential(big_r);
    if r.is_zero() {
        return Ok(SearchOutcome::Certified(Certificate::RiccatiSolution(ExtRatFunc::rational(RatFunc::zero()))));
    }
    if let Some(o) = pole_orders(r.den()).into_iter().find(|&o| o > 1 && o % 2 == 1) {
        return Ok(SearchOutcome::Exhausted(format!("r has a pole of odd order {o}")));
    }
    let o_inf = r.order_at_infinity()?;
    if o_inf <= 2 && o_inf % 2 != 0 {
        return Ok(SearchOutcome::Exhausted(format!("r has odd order {o_inf} at infinity")));
    }
    let data = LocalExponentData::new(big_r)?;
    let Some(places) = data.case1_places() else {
        return Ok(SearchOutcome::Undecided("a local square root lies outside the quadratic field of its place".into()));
    };
    let total = places.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.choices.len()));
    let total = match total {
        Some(t) if t <= MAX_FAMILIES => t,
        _ => return Ok(SearchOutcome::Undecided("too many sign families to enumerate".into())),
    };
    let outcomes: Vec<Family> = (0..total).into_par_iter().map(|idx| family(&data, &places, idx)).collect();
    let mut undecided = false;
    for outcome in outcomes {
        match outcome {
            Family::Found(u) => {
                return Ok(SearchOutcome::Certified(Certificate::RiccatiSolution(ExtRatFunc::from_quadratic(&u))))
            }
            Family::Undecided => undecided = true,
            Family::Empty => {}
        }
    }
    if undecided {
        Ok(SearchOutcome::Undecided("some sign families need two distinct quadratic fields".into()))
    } else {
        Ok(SearchOutcome::Exhausted(format!("none of the {total} sign families yields a polynomial")))
    }
}

/// Mixed-radix decoding; the first place varies slowest.
fn choice_indices(places: &[Case1Place], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; places.len()];
    for (slot, p) in out.iter_mut().zip(places).rev() {
        *slot = idx % p.choices.len();
        idx /= p.choices.len();
    }
    out
}

fn family(data: &LocalExponentData, places: &[Case1Place], idx: usize) -> Family {
    let pick = choice_indices(places, idx);
    let mut d = SurdSum::default();
    for (place, &k) in places.iter().zip(&pick) {
        let sign = if place.place == Place::Infinity { 1 } else { -1 };
        d.add(&place.choices[k].alpha, sign);
    }
    let Some(d) = d.nonnegative_integer() else { return Family::Empty };

    let mut involved: Vec<&Quadratic> = Vec::new();
    for (place, &k) in places.iter().zip(&pick) {
        if let Place::Finite(c) = &place.place {
            involved.push(c);
        }
        involved.push(&place.choices[k].alpha);
        involved.extend(place.choices[k].sqrt_part.iter());
    }
    if radicands_of(involved).len() > 1 {
        return Family::Undecided;
    }

    let mut omega = QRat::zero();
    for (place, &k) in places.iter().zip(&pick) {
        let choice = &place.choices[k];
        omega = omega.add(&local_part(&place.place, &choice.sqrt_part));
        if let Place::Finite(c) = &place.place {
            omega = omega.add(&polar_term(&choice.alpha, c, 1));
        }
    }
    let r = data.r.lift::<Quadratic>();
    // P'' + 2ωP' + (ω' + ω² − r)P = 0
    let c0 = omega.derivative().add(&omega.mul(&omega)).sub(&r);
    let c1 = omega.add(&omega);
    let Some(p) = monic_polynomial_solution(&[c0, c1, QRat::one()], d) else { return Family::Empty };
    let u = omega.add(&QRat::from_poly(p.derivative()).div(&QRat::from_poly(p)).expect("monic"));
    if u.derivative().add(&u.mul(&u)).sub(&r).is_zero() {
        Family::Found(u)
    } else {
        Family::Empty
    }
}
