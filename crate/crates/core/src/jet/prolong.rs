//! Prolongation of jets along a determined equation, and the linearization
//! of an equation at identity jets.

use super::expr::{DiffExpr, Wrt};
use super::{Jet, JetError};
use crate::algebra::field::Field;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::series::TruncSeries;
use crate::ode::LinearODE;

/// Taylor data `f(x), f'(x), …, f^(k)(x)` of a vector field `f(λ)∂/∂λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetVectorField<F: Field> {
    pub base: F,
    pub coeffs: Vec<F>,
}

impl<F: Field> JetVectorField<F> {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// From a series in `t = λ − base`.
    pub fn from_series(base: F, s: &TruncSeries<F>) -> Self {
        let mut fact = F::one();
        let mut coeffs = Vec::with_capacity(s.precision());
        for (k, c) in s.coeffs().iter().enumerate() {
            if k > 0 {
                fact = fact.mul(&F::from_i64(k as i64));
            }
            coeffs.push(c.mul(&fact));
        }
        JetVectorField { base, coeffs }
    }
}

fn nonzero<F: Field>(x: &F) -> bool {
    if F::EXACT {
        !x.is_zero()
    } else {
        x.pivot_score() > 1e-300
    }
}

/// Solves `eq = 0` for slot `slot` of `values` (other slots fixed).
fn solve_top<F: Field>(eq: &DiffExpr, lambda: &F, values: &mut Vec<F>, slot: usize) -> Result<(), JetError> {
    let d = eq.partial(Wrt::Dep(slot));
    values.resize(slot + 1, F::zero());
    values[slot] = F::zero();
    // Newton from 0; one step is exact when eq is affine in the slot
    let steps = if F::EXACT { 1 } else { 60 };
    for _ in 0..steps {
        let a = d.eval(lambda, values).ok_or(JetError::SingularLocus)?;
        if !nonzero(&a) {
            return Err(JetError::SingularLocus);
        }
        let b = eq.eval(lambda, values).ok_or(JetError::SingularLocus)?;
        let step = b.div(&a).ok_or(JetError::SingularLocus)?;
        values[slot] = values[slot].sub(&step);
        if !F::EXACT && step.pivot_score() <= 1e-15 * (1.0 + values[slot].pivot_score()) {
            break;
        }
    }
    let check = eq.eval(lambda, values).ok_or(JetError::SingularLocus)?;
    if F::EXACT && !check.is_zero() {
        return Err(JetError::NotSolvable);
    }
    Ok(())
}

/// Extends the `(k−1)`-jet `j` to order `m` using `eq`, an order-`k`
/// expression, and its total derivatives.
pub fn prolong<F: Field>(eq: &DiffExpr, j: &Jet<F>, m: usize) -> Result<Jet<F>, JetError> {
    let k = eq.order().ok_or(JetError::NotSolvable)?;
    if k == 0 {
        return Err(JetError::NotSolvable);
    }
    if j.order() + 1 < k {
        return Err(JetError::OrderTooLow { required: k - 1, found: j.order() });
    }
    if m < k {
        return Ok(j.truncate(m));
    }
    let lambda = j.source().clone();
    let mut values = j.truncate(k - 1).values();
    let mut current = eq.clone();
    solve_top(&current, &lambda, &mut values, k)?;
    for slot in (k + 1)..=m {
        current = current.total_derivative();
        solve_top(&current, &lambda, &mut values, slot)?;
    }
    Jet::new(j.source().clone(), j.target().clone(), values[1..].to_vec())
}

/// The linear equation `Σ (∂F/∂φ^(j))|_id f^(j) = 0` satisfied by vector
/// fields tangent to `{F = 0}` at the identity, made monic.
pub fn linearize_at_identity(eq: &DiffExpr) -> Result<LinearODE, JetError> {
    let k = eq.order().ok_or(JetError::NotVanishingOnIdentity)?;
    let x = RatFunc::x();
    let mut id = vec![x.clone(), RatFunc::one()];
    id.resize(k + 1, RatFunc::zero());
    let at_id = eq.eval(&x, &id).ok_or(JetError::SingularLocus)?;
    if !at_id.is_zero() {
        return Err(JetError::NotVanishingOnIdentity);
    }
    let mut c = Vec::with_capacity(k + 1);
    for jj in 0..=k {
        c.push(eq.partial(Wrt::Dep(jj)).eval(&x, &id).ok_or(JetError::SingularLocus)?);
    }
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    LinearODE::from_unnormalized(c).ok_or(JetError::SingularLocus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{qi, Q};

    #[test]
    fn translation_flow() {
        let eq = DiffExpr::Dep(1).sub(DiffExpr::one());
        let j = Jet::new(qi(0), qi(0), vec![]).unwrap();
        let p = prolong(&eq, &j, 3).unwrap();
        assert_eq!(p.coeffs(), &[qi(1), qi(0), qi(0)]);
        assert_eq!(linearize_at_identity(&eq).unwrap().to_string(), "f' = 0");
    }

    #[test]
    fn singular_and_nonvanishing() {
        // φ'·φ' − λ² vanishes nowhere near the identity at λ = 2
        let eq = DiffExpr::pow(DiffExpr::Dep(1), 2).sub(DiffExpr::pow(DiffExpr::Lambda, 2));
        assert_eq!(linearize_at_identity(&eq), Err(JetError::NotVanishingOnIdentity));
        // φ·φ' = 0 at φ = 0 is singular for φ'
        let eq = DiffExpr::Dep(0).mul(DiffExpr::Dep(1));
        let j: Jet<Q> = Jet::new(qi(0), qi(0), vec![]).unwrap();
        assert_eq!(prolong(&eq, &j, 1), Err(JetError::SingularLocus));
    }
}
