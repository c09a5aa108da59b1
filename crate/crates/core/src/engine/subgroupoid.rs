//! The order-2 sub-groupoid attached to a rational Riccati solution `u`:
//! symmetries of the affine structure `τ''/τ' = −2u` inside the projective
//! structure.

use super::ext::ExtRatFunc;
use crate::algebra::field::Q;
use crate::algebra::ratfunc::RatFunc;
use crate::jet::{prolong, DiffExpr, Jet, JetError};
use crate::schwarzian::kummer_residual;

/// `2u(φ)φ' − 2u(λ) − φ''/φ'`.
pub fn affine_sigma_residual(u: &RatFunc) -> DiffExpr {
    let two = || DiffExpr::int(2);
    two()
        .mul(DiffExpr::apply(u, DiffExpr::Dep(0)))
        .mul(DiffExpr::Dep(1))
        .sub(two().mul(DiffExpr::apply(u, DiffExpr::Lambda)))
        .sub(DiffExpr::Dep(2).div(DiffExpr::Dep(1)))
}

/// `τ''/τ' + 2u(λ)`, with τ in the dependent slot.
pub fn affine_structure_residual(u: &RatFunc) -> DiffExpr {
    DiffExpr::Dep(2).div(DiffExpr::Dep(1)).add(DiffExpr::int(2).mul(DiffExpr::apply(u, DiffExpr::Lambda)))
}

/// `S_λ(τ) − R` for τ with `τ''/τ' = −2u`, i.e. `(−2u)' − ½(−2u)² − R`.
/// Vanishes exactly for Riccati solutions.
pub fn schwarzian_reduction(u: &ExtRatFunc, big_r: &RatFunc) -> ExtRatFunc {
    let v = u.scale(&Q::from_integer((-2).into()));
    v.derivative()
        .sub(&v.mul(&v).scale(&Q::new(1.into(), 2.into())))
        .sub(&ExtRatFunc::rational(big_r.clone()))
}

/// Prolongs a 1-jet along the affine-sigma equation to order 3 and returns
/// the Kummer residual there; zero for every jet off the singular locus.
pub fn containment_residual(u: &RatFunc, big_r: &RatFunc, seed: &Jet<Q>) -> Result<Q, JetError> {
    let jet = prolong(&affine_sigma_residual(u), &seed.truncate(1), 3)?;
    kummer_residual(big_r).eval(jet.source(), &jet.values()).ok_or(JetError::SingularLocus)
}

/// `true` when `u` passes the exact Schwarzian reduction for `R`.
pub fn reduces_schwarzian(u: &ExtRatFunc, big_r: &RatFunc) -> bool {
    schwarzian_reduction(u, big_r).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qi;
    use crate::algebra::parse::parse_rational_function as parse;

    #[test]
    fn affine_residual_shapes() {
        assert_eq!(affine_sigma_residual(&RatFunc::zero()).eval(&qi(0), &[qi(0), qi(1), qi(0)]), Some(qi(0)));
        let e = affine_sigma_residual(&RatFunc::x());
        // 2φφ' − 2λ − φ''/φ' at (λ, φ, φ', φ'') = (1, 2, 1, 2)
        assert_eq!(e.eval(&qi(1), &[qi(2), qi(1), qi(2)]), Some(qi(0)));
    }

    #[test]
    fn reduction_and_containment() {
        let u = RatFunc::x();
        let r = parse("-2*(1+l^2)").unwrap();
        assert!(reduces_schwarzian(&ExtRatFunc::rational(u.clone()), &r));
        let seed = Jet::new(qi(1), qi(3), vec![qi(2)]).unwrap();
        assert_eq!(containment_residual(&u, &r, &seed), Ok(qi(0)));
        assert!(!reduces_schwarzian(&ExtRatFunc::rational(u), &parse("l").unwrap()));
    }
}
