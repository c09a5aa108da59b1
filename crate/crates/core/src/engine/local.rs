//! Local data of `r = −R/2` (so that the linear equation reads `ψ'' = rψ`)
//! at its poles and at infinity, and the candidate exponents built from it.

use num_bigint::BigInt;
use num_traits::Zero;

use super::EngineError;
use crate::algebra::factor::{pole_data, radicands, Location};
use crate::algebra::field::{split_square, Field, Q};
use crate::algebra::quad::Quadratic;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::series::{Laurent, TruncSeries};

/// `−R/2`.
pub fn potential(big_r: &RatFunc) -> RatFunc {
    big_r.scale(&Q::new((-1).into(), 2.into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalPole {
    pub point: Quadratic,
    pub order: usize,
    /// Laurent expansion of `r` in `λ − point`.
    pub laurent: Laurent<Quadratic>,
}

/// Where a candidate exponent lives.
#[derive(Clone, Debug, PartialEq)]
pub enum Place {
    Finite(Quadratic),
    Infinity,
}

/// One sign choice at a place: the exponent `α` and the truncated square
/// root `[√r]`. At a finite place `sqrt_part[i]` multiplies `(λ − c)^(−i)`;
/// at infinity it multiplies `λ^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Case1Choice {
    pub alpha: Quadratic,
    pub sqrt_part: Vec<Quadratic>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case1Place {
    pub place: Place,
    pub choices: Vec<Case1Choice>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case2Place {
    pub place: Place,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalExponentData {
    pub r: RatFunc,
    pub poles: Vec<LocalPole>,
    pub order_at_infinity: i64,
    /// Laurent expansion of `r` in `1/λ`.
    pub infinity: Laurent<Q>,
    /// Radicand of the quadratic field holding the poles, if any.
    pub field: Option<BigInt>,
}

impl LocalExponentData {
    /// Splits the poles of `−R/2`. Fails for places of degree ≥ 3 and for
    /// poles spread over more than one quadratic field.
    pub fn new(big_r: &RatFunc) -> Result<Self, EngineError> {
        let r = potential(big_r);
        if r.is_zero() {
            return Err(EngineError::ZeroPotential);
        }
        let mut poles = Vec::new();
        for datum in pole_data(r.den()) {
            match datum.location {
                Location::Point(p) => poles.push((p, datum.order)),
                Location::Unsplit(f) => {
                    return Err(EngineError::UnsupportedField(format!(
                        "pole place {} of degree {} does not split over a quadratic field",
                        f,
                        f.degree().unwrap_or(0)
                    )))
                }
            }
        }
        let points: Vec<Quadratic> = poles.iter().map(|(p, _)| p.clone()).collect();
        let ds = radicands(&points);
        if ds.len() > 1 {
            let list: Vec<String> = ds.iter().map(|d| format!("sqrt({d})")).collect();
            return Err(EngineError::UnsupportedField(format!("poles lie in several quadratic fields: {}", list.join(", "))));
        }
        let lifted = r.lift::<Quadratic>();
        let poles = poles
            .into_iter()
            .map(|(point, order)| {
                let laurent = lifted.laurent_at(&point, order + 2).expect("r is nonzero");
                LocalPole { point, order, laurent }
            })
            .collect();
        let order_at_infinity = r.order_at_infinity()?;
        let terms = order_at_infinity.unsigned_abs() as usize + 4;
        let infinity = r.laurent_at_infinity(terms).expect("r is nonzero");
        Ok(LocalExponentData { r, poles, order_at_infinity, infinity, field: ds.into_iter().next() })
    }

    fn field_of(&self, point: &Quadratic) -> BigInt {
        if point.is_rational() {
            BigInt::zero()
        } else {
            self.field.clone().unwrap_or_default()
        }
    }

    /// Exponents and square-root parts for the first-case search, one entry
    /// per pole followed by infinity. `None` when a needed square root lies
    /// outside the quadratic field of its place.
    pub fn case1_places(&self) -> Option<Vec<Case1Place>> {
        let mut out = Vec::with_capacity(self.poles.len() + 1);
        for pole in &self.poles {
            let field = self.field_of(&pole.point);
            let choices = match pole.order {
                1 => vec![Case1Choice { alpha: Quadratic::one(), sqrt_part: vec![] }],
                2 => {
                    let b = pole.laurent.coeff(-2);
                    order_two_choices(&b, &field)?
                }
                o => {
                    let nu = o / 2;
                    let s: Vec<Quadratic> = (0..nu).map(|k| pole.laurent.coeff(k as i64 - o as i64)).collect();
                    let root0 = root_in(&s[0], &field)?;
                    let sq = TruncSeries::new(s).sqrt_with(root0)?;
                    let mut sqrt_part = vec![Quadratic::zero(); nu + 1];
                    for (i, slot) in sqrt_part.iter_mut().enumerate().skip(2) {
                        *slot = sq.coeff(nu - i);
                    }
                    let half_nu = Quadratic::from_rational(&Q::new((nu as i64).into(), 2.into()));
                    let shift = sq.coeff(nu - 1);
                    signed_pair(sqrt_part, half_nu.add(&shift), half_nu.sub(&shift))
                }
            };
            out.push(Case1Place { place: Place::Finite(pole.point.clone()), choices });
        }
        let o = self.order_at_infinity;
        let zero = BigInt::zero();
        let choices = if o > 2 {
            vec![
                Case1Choice { alpha: Quadratic::zero(), sqrt_part: vec![] },
                Case1Choice { alpha: Quadratic::one(), sqrt_part: vec![] },
            ]
        } else if o == 2 {
            let b = Quadratic::rational(self.infinity.coeff(2));
            order_two_choices(&b, &zero)?
        } else {
            let nu = (-o / 2) as usize;
            let s: Vec<Quadratic> = (0..nu + 2).map(|k| Quadratic::rational(self.infinity.coeff(o + k as i64))).collect();
            let root0 = root_in(&s[0], &zero)?;
            let sq = TruncSeries::new(s).sqrt_with(root0)?;
            let sqrt_part: Vec<Quadratic> = (0..=nu).map(|j| sq.coeff(nu - j)).collect();
            let half_nu = Quadratic::from_rational(&Q::new((nu as i64).into(), 2.into()));
            let shift = sq.coeff(nu + 1);
            signed_pair(sqrt_part, shift.sub(&half_nu), shift.neg().sub(&half_nu))
        };
        out.push(Case1Place { place: Place::Infinity, choices });
        Some(out)
    }

    /// Integer exponent sets for the second-case search, one entry per pole
    /// followed by infinity.
    pub fn case2_places(&self) -> Vec<Case2Place> {
        let mut out = Vec::with_capacity(self.poles.len() + 1);
        for pole in &self.poles {
            let exponents = match pole.order {
                1 => vec![4],
                2 => order_two_set(&pole.laurent.coeff(-2)),
                o => vec![o as i64],
            };
            out.push(Case2Place { place: Place::Finite(pole.point.clone()), exponents });
        }
        let o = self.order_at_infinity;
        let exponents = if o > 2 {
            vec![0, 2, 4]
        } else if o == 2 {
            order_two_set(&Quadratic::rational(self.infinity.coeff(2)))
        } else {
            vec![o]
        };
        out.push(Case2Place { place: Place::Infinity, exponents });
        out
    }
}

/// Square root of `x` inside the field of its place. Places over ℚ accept
/// any quadratic surd.
pub(crate) fn root_in(x: &Quadratic, field: &BigInt) -> Option<Quadratic> {
    if field.is_zero() && x.is_rational() {
        let (s, k) = split_square(x.rational_part());
        return Some(if k == BigInt::from(1) { Quadratic::rational(s) } else { Quadratic::surd(s, k) });
    }
    Quadratic::new(x.rational_part().clone(), x.surd_part().clone(), field.clone()).sqrt()
}

/// `α± = 1/2 ± √(1 + 4b)/2` with no square-root part.
fn order_two_choices(b: &Quadratic, field: &BigInt) -> Option<Vec<Case1Choice>> {
    let disc = Quadratic::one().add(&b.mul(&Quadratic::from_i64(4)));
    let s = root_in(&disc, field)?;
    let half = Quadratic::from_rational(&Q::new(1.into(), 2.into()));
    let hs = s.mul(&half);
    Some(signed_pair(vec![], half.add(&hs), half.sub(&hs)))
}

fn signed_pair(sqrt_part: Vec<Quadratic>, plus: Quadratic, minus: Quadratic) -> Vec<Case1Choice> {
    let neg: Vec<Quadratic> = sqrt_part.iter().map(Quadratic::neg).collect();
    let same = plus == minus && sqrt_part.iter().all(Quadratic::is_zero);
    let mut out = vec![Case1Choice { alpha: plus, sqrt_part }];
    if !same {
        out.push(Case1Choice { alpha: minus, sqrt_part: neg });
    }
    out
}

/// `{2 + k√(1 + 4b) : k = 0, ±2} ∩ ℤ`.
fn order_two_set(b: &Quadratic) -> Vec<i64> {
    let mut out = vec![2];
    let Some(b) = b.as_rational() else { return out };
    let disc = Q::from_integer(1.into()) + Q::from_integer(4.into()) * b;
    let Some(s) = crate::algebra::field::rational_sqrt(&disc) else { return out };
    let two_s = s * Q::from_integer(2.into());
    if two_s.is_integer() && !Zero::is_zero(&two_s) {
        let k: i64 = two_s.to_integer().try_into().unwrap_or(i64::MAX / 4);
        out.extend([2 + k, 2 - k]);
    }
    out
}
