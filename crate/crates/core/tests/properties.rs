use proptest::prelude::*;

use kummer_core::algebra::poly::poly_xgcd;
use kummer_core::algebra::{poly_gcd, q, qi, Field, Poly, RatFunc, TruncSeries, Q};
use kummer_core::engine::{containment_residual, verdict, Certificate};
use kummer_core::jet::{jet_compose, jet_invert, linearize_at_identity, prolong, DiffExpr, Jet};
use kummer_core::ode::{from_potential, series_residual, series_solve, symmetric_power_2};
use kummer_core::schwarzian::{chain_rule_check, kummer_build, kummer_residual, Mobius};

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1).prop_map(|c| Poly::new(c.into_iter().map(qi).collect()))
}

fn ratfunc(max_deg: usize) -> impl Strategy<Value = RatFunc> {
    (poly(max_deg), poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn nonconstant(max_deg: usize) -> impl Strategy<Value = RatFunc> {
    ratfunc(max_deg).prop_filter("nonconstant", |r| !r.is_constant())
}

fn small_q() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// k-jet of the rational map `f` at `x`, by repeated differentiation.
fn jet_of(f: &RatFunc, x: &Q, k: usize) -> Option<Jet<Q>> {
    let mut d = f.clone();
    let target = f.eval(x)?;
    let mut coeffs = Vec::new();
    for _ in 0..k {
        d = d.derivative();
        coeffs.push(d.eval(x)?);
    }
    Jet::new(x.clone(), target, coeffs).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(3), b in ratfunc(3), c in ratfunc(3)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.recip().unwrap()), RatFunc::one());
        }
    }

    #[test]
    fn leibniz_and_quotient_rules(a in ratfunc(3), b in ratfunc(3)) {
        prop_assert_eq!(a.mul(&b).derivative(), a.derivative().mul(&b).add(&a.mul(&b.derivative())));
        if !b.is_zero() {
            let lhs = a.div(&b).unwrap().derivative();
            let rhs = a.derivative().mul(&b).sub(&a.mul(&b.derivative())).div(&b.mul(&b)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gcd_divides_and_bezout_holds(a in poly(4), b in poly(4), c in poly(2)) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (a, b) = (a.mul(&c), b.mul(&c));
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(g.div_rem(&c.monic()).unwrap().1.is_zero());
        let (g2, s, t) = poly_xgcd(&a, &b).unwrap();
        prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g2);
    }

    #[test]
    fn schwarzian_cocycle(tau in nonconstant(3), phi in nonconstant(3)) {
        prop_assume!(!tau.compose(&phi).unwrap().is_constant());
        prop_assert!(chain_rule_check(&tau, &phi).unwrap().is_zero());
    }

    #[test]
    fn jet_groupoid_laws(
        x in small_q(),
        f in prop::collection::vec(small_q(), 3),
        g in prop::collection::vec(small_q(), 3),
        h in prop::collection::vec(small_q(), 3),
        y in small_q(),
        z in small_q(),
        w in small_q(),
    ) {
        prop_assume!(!f[0].is_zero() && !g[0].is_zero() && !h[0].is_zero());
        let f = Jet::new(x.clone(), y.clone(), f).unwrap();
        let g = Jet::new(y, z.clone(), g).unwrap();
        let h = Jet::new(z, w, h).unwrap();
        let left = jet_compose(&h, &jet_compose(&g, &f).unwrap()).unwrap();
        let right = jet_compose(&jet_compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
        let id = jet_compose(&jet_invert(&f).unwrap(), &f).unwrap();
        prop_assert_eq!(id, Jet::identity(x, 3));
    }

    #[test]
    fn jet_compose_matches_composed_maps(f in nonconstant(2), g in nonconstant(2), x in small_q()) {
        let Some(fj) = jet_of(&f, &x, 4) else { return Ok(()) };
        let Some(gj) = jet_of(&g, fj.target(), 4) else { return Ok(()) };
        let Some(direct) = jet_of(&g.compose(&f).unwrap(), &x, 4) else { return Ok(()) };
        prop_assert_eq!(jet_compose(&gj, &fj).unwrap(), direct);
    }

    #[test]
    fn linearization_matches_symmetric_square(r in ratfunc(3)) {
        let sys = kummer_build(&r).unwrap();
        prop_assert!(sys.consistent());
        prop_assert_eq!(linearize_at_identity(&sys.residual).unwrap(), symmetric_power_2(&from_potential(&r)).unwrap());
    }

    #[test]
    fn total_derivative_commutes_with_substitution(phi in nonconstant(2), r in ratfunc(2)) {
        // d/dλ [E(λ, φ, φ', φ'', φ''')] = (D E)(λ, φ, …, φ'''')
        let e = kummer_residual(&r);
        let mut derivs = vec![phi.clone()];
        for _ in 0..4 {
            let next = derivs.last().unwrap().derivative();
            derivs.push(next);
        }
        let lambda = RatFunc::x();
        if let (Some(v), Some(dv)) = (e.eval(&lambda, &derivs[..4]), e.total_derivative().eval(&lambda, &derivs)) {
            prop_assert_eq!(v.derivative(), dv);
        }
    }

    #[test]
    fn prolongation_recovers_mobius_jets(a in small_q(), b in small_q(), c in small_q(), e in small_q(), x in small_q()) {
        let Ok(m) = Mobius::new(a, b, c, e) else { return Ok(()) };
        let Ok(exact) = m.jet_at(&x, 6) else { return Ok(()) };
        let eq = kummer_residual(&RatFunc::zero());
        prop_assert_eq!(prolong(&eq, &exact.truncate(2), 6).unwrap(), exact);
    }

    #[test]
    fn kummer_solutions_are_closed_under_composition(
        r in ratfunc(2),
        x in small_q(),
        f in prop::collection::vec(small_q(), 2),
        g in prop::collection::vec(small_q(), 2),
        y in small_q(),
        z in small_q(),
    ) {
        prop_assume!(!f[0].is_zero() && !g[0].is_zero());
        let eq = kummer_residual(&r);
        let (Ok(f), Ok(g)) = (
            prolong(&eq, &Jet::new(x, y.clone(), f).unwrap(), 5),
            prolong(&eq, &Jet::new(y, z, g).unwrap(), 5),
        ) else { return Ok(()) };
        let comp = jet_compose(&g, &f).unwrap();
        for k in 3..=5 {
            let e = (0..k - 3).fold(eq.clone(), |acc, _| acc.total_derivative());
            prop_assert_eq!(e.eval(comp.source(), &comp.values()), Some(Q::zero()));
        }
        let inv = jet_invert(&f).unwrap();
        prop_assert_eq!(eq.eval(inv.source(), &inv.values()), Some(Q::zero()));
    }

    #[test]
    fn sympow_series_has_zero_residual(r in ratfunc(2), init in prop::collection::vec(small_q(), 3)) {
        let ode = symmetric_power_2(&from_potential(&r)).unwrap();
        prop_assume!(r.eval(&Q::zero()).is_some());
        if let Ok(sol) = series_solve(&ode, &Q::zero(), &init, 10) {
            let res: TruncSeries<Q> = series_residual(&ode, &sol).unwrap();
            prop_assert!(res.is_zero());
        }
    }
}

#[test]
fn certified_subgroupoids_sit_inside_the_kummer_groupoid() {
    for src in ["0", "-2*(1+l^2)", "1/(2*l^2)", "-2", "-4/l^2", "-3/(2*l^2)"] {
        let r = kummer_core::algebra::parse_rational_function(src).unwrap();
        let rep = verdict(&r).unwrap();
        let Some(Certificate::RiccatiSolution(u)) = &rep.case.certificate else { panic!("{src}: no Riccati certificate") };
        let u = u.as_rational().expect("rational").clone();
        for (x, d1) in [(q(1, 3), q(2, 1)), (q(5, 2), q(-1, 7)), (q(-3, 1), q(3, 4))] {
            if r.eval(&x).is_none() || u.eval(&x).is_none() {
                continue;
            }
            let target = x.add(&q(1, 5));
            if u.eval(&target).is_none() || r.eval(&target).is_none() {
                continue;
            }
            let seed = Jet::new(x.clone(), target, vec![d1.clone()]).unwrap();
            assert_eq!(containment_residual(&u, &r, &seed).unwrap(), Q::zero(), "{src} at {x}");
        }
    }
}

#[test]
fn diffexpr_evaluates_over_rational_functions() {
    let e = DiffExpr::Dep(1).mul(DiffExpr::Lambda);
    let phi = RatFunc::x().mul(&RatFunc::x());
    let v = e.eval(&RatFunc::x(), &[phi.clone(), phi.derivative()]).unwrap();
    assert_eq!(v, phi.scale(&qi(2)));
}
