//! The Schwarzian derivative, Möbius maps, and the Kummer equation
//! `S(φ) + R(φ)φ'² = R(λ)` with its linearization.

use std::fmt;

use thiserror::Error;

use crate::algebra::field::{factorial, Field, Q};
use crate::algebra::ratfunc::RatFunc;
use crate::jet::{jet_compose, linearize_at_identity, DiffExpr, Jet, JetError};
use crate::ode::{from_potential, symmetric_power_2, LinearODE, OdeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchwarzError {
    #[error("Schwarzian of a constant function")]
    ConstantInput,
    #[error("jet order {0} is below 3")]
    OrderTooLow(usize),
    #[error("Möbius map has a pole at the target point")]
    PoleOfMobius,
    #[error("degenerate Möbius matrix (ae − bc = 0)")]
    Degenerate,
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Ode(#[from] OdeError),
}

/// `S(f) = (f''/f')' − ½(f''/f')²`.
pub fn schwarzian_rf(f: &RatFunc) -> Result<RatFunc, SchwarzError> {
    let d1 = f.derivative();
    if d1.is_zero() {
        return Err(SchwarzError::ConstantInput);
    }
    let y = d1.derivative().div(&d1).expect("f' nonzero");
    Ok(y.derivative().sub(&y.mul(&y).scale(&Q::new(1.into(), 2.into()))))
}

/// `φ'''/φ' − (3/2)(φ''/φ')²` at a jet of order ≥ 3.
pub fn schwarzian_jet<F: Field>(j: &Jet<F>) -> Result<F, SchwarzError> {
    if j.order() < 3 {
        return Err(SchwarzError::OrderTooLow(j.order()));
    }
    let c = j.coeffs();
    let inv = c[0].inv().ok_or(JetError::NotInvertible)?;
    let r2 = c[1].mul(&inv);
    let three_halves = F::from_rational(&Q::new(3.into(), 2.into()));
    Ok(c[2].mul(&inv).sub(&three_halves.mul(&r2).mul(&r2)))
}

/// `S_λ(τ∘φ) − (S(τ)∘φ)φ'² − S(φ)`, identically zero.
pub fn chain_rule_check(tau: &RatFunc, phi: &RatFunc) -> Result<RatFunc, SchwarzError> {
    let comp = tau.compose(phi).map_err(|_| SchwarzError::ConstantInput)?;
    let lhs = schwarzian_rf(&comp)?;
    let st = schwarzian_rf(tau)?;
    let sp = schwarzian_rf(phi)?;
    let dphi = phi.derivative();
    let pulled = st.compose(phi).map_err(|_| SchwarzError::ConstantInput)?;
    Ok(lhs.sub(&pulled.mul(&dphi).mul(&dphi)).sub(&sp))
}

/// `τ ↦ (aτ + b)/(cτ + e)`, normalized so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub e: F,
}

impl<F: Field> Mobius<F> {
    pub fn new(a: F, b: F, c: F, e: F) -> Result<Self, SchwarzError> {
        let det = a.mul(&e).sub(&b.mul(&c));
        if det.is_zero() {
            return Err(SchwarzError::Degenerate);
        }
        let first = [&a, &b, &c, &e].into_iter().find(|x| !x.is_zero()).cloned().expect("det ≠ 0");
        let s = first.inv().expect("nonzero");
        Ok(Mobius { a: a.mul(&s), b: b.mul(&s), c: c.mul(&s), e: e.mul(&s) })
    }

    pub fn identity() -> Self {
        Mobius { a: F::one(), b: F::zero(), c: F::zero(), e: F::one() }
    }

    pub fn det(&self) -> F {
        self.a.mul(&self.e).sub(&self.b.mul(&self.c))
    }

    pub fn apply(&self, tau: &F) -> Option<F> {
        self.a.mul(tau).add(&self.b).div(&self.c.mul(tau).add(&self.e))
    }

    /// `self ∘ other` (matrix product).
    pub fn compose(&self, o: &Self) -> Self {
        Mobius::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.e)),
            self.c.mul(&o.a).add(&self.e.mul(&o.c)),
            self.c.mul(&o.b).add(&self.e.mul(&o.e)),
        )
        .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> Self {
        Mobius::new(self.e.clone(), self.b.neg(), self.c.neg(), self.a.clone()).expect("invertible")
    }

    /// k-jet of the map at `tau`:
    /// `m^(n)(τ) = (ae − bc)(−c)^{n−1} n!/(cτ + e)^{n+1}`.
    pub fn jet_at(&self, tau: &F, k: usize) -> Result<Jet<F>, SchwarzError> {
        let den = self.c.mul(tau).add(&self.e);
        if den.is_zero() {
            return Err(SchwarzError::PoleOfMobius);
        }
        let inv = den.inv().expect("nonzero");
        let det = self.det();
        let mc = self.c.neg();
        let coeffs = (1..=k)
            .map(|n| det.mul(&mc.pow(n as u32 - 1)).mul(&factorial::<F>(n)).mul(&inv.pow(n as u32 + 1)))
            .collect();
        Ok(Jet::new(tau.clone(), self.apply(tau).expect("den nonzero"), coeffs)?)
    }

    /// Jet of `m ∘ φ`.
    pub fn apply_jet(&self, j: &Jet<F>) -> Result<Jet<F>, SchwarzError> {
        let mj = self.jet_at(j.target(), j.order())?;
        Ok(jet_compose(&mj, j)?)
    }
}

impl Mobius<Q> {
    pub fn to_rf(&self) -> RatFunc {
        use crate::algebra::poly::Poly;
        RatFunc::new(Poly::new(vec![self.b.clone(), self.a.clone()]), Poly::new(vec![self.e.clone(), self.c.clone()]))
            .expect("det ≠ 0 keeps the denominator nonzero")
    }
}

impl<F: Field> fmt::Display for Mobius<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}*t + {})/({}*t + {})", self.a, self.b, self.c, self.e)
    }
}

fn schwarzian_expr() -> DiffExpr {
    let p1 = || DiffExpr::Dep(1);
    let ratio = DiffExpr::Dep(2).div(p1());
    DiffExpr::Dep(3)
        .div(p1())
        .sub(DiffExpr::constant(Q::new(3.into(), 2.into())).mul(DiffExpr::pow(ratio, 2)))
}

/// `S(φ) + R(φ)φ'² − R(λ)`.
pub fn kummer_residual(r: &RatFunc) -> DiffExpr {
    schwarzian_expr()
        .add(DiffExpr::apply(r, DiffExpr::Dep(0)).mul(DiffExpr::pow(DiffExpr::Dep(1), 2)))
        .sub(DiffExpr::apply(r, DiffExpr::Lambda))
}

/// The residual multiplied by `φ'²`:
/// `φ'''φ' − (3/2)φ''² + R(φ)φ'⁴ − R(λ)φ'²`.
pub fn kummer_residual_cleared(r: &RatFunc) -> DiffExpr {
    let p1 = || DiffExpr::Dep(1);
    DiffExpr::sum(vec![
        DiffExpr::Dep(3).mul(p1()),
        DiffExpr::constant(Q::new((-3).into(), 2.into())).mul(DiffExpr::pow(DiffExpr::Dep(2), 2)),
        DiffExpr::apply(r, DiffExpr::Dep(0)).mul(DiffExpr::pow(p1(), 4)),
        DiffExpr::apply(r, DiffExpr::Lambda).mul(DiffExpr::pow(p1(), 2)).neg(),
    ])
}

/// `S_τ(λ) + λ_τ² R(λ)` with τ in the independent slot and λ(τ) as `Dep`.
pub fn schwarz_residual(r: &RatFunc) -> DiffExpr {
    schwarzian_expr().add(DiffExpr::apply(r, DiffExpr::Dep(0)).mul(DiffExpr::pow(DiffExpr::Dep(1), 2)))
}

/// Right-hand side of `λ_τττ = (3/2)λ_ττ²/λ_τ + λ_τ³R(λ)`, the last
/// component of the vector field `D_τ` on 2-jets.
///
/// This has the opposite sign in the `R` term from the equation
/// `S_τ(λ) + λ_τ²R = 0`; see [`schwarz_rhs`] for the solved form of that.
pub fn foliation_rhs(r: &RatFunc) -> DiffExpr {
    DiffExpr::constant(Q::new(3.into(), 2.into()))
        .mul(DiffExpr::pow(DiffExpr::Dep(2), 2))
        .div(DiffExpr::Dep(1))
        .add(DiffExpr::pow(DiffExpr::Dep(1), 3).mul(DiffExpr::apply(r, DiffExpr::Dep(0))))
}

/// `λ_τττ = (3/2)λ_ττ²/λ_τ − λ_τ³R(λ)`, solving [`schwarz_residual`] for the
/// highest derivative. Inverses of solutions of `S_λ(τ) = R` satisfy it.
pub fn schwarz_rhs(r: &RatFunc) -> DiffExpr {
    DiffExpr::constant(Q::new(3.into(), 2.into()))
        .mul(DiffExpr::pow(DiffExpr::Dep(2), 2))
        .div(DiffExpr::Dep(1))
        .sub(DiffExpr::pow(DiffExpr::Dep(1), 3).mul(DiffExpr::apply(r, DiffExpr::Dep(0))))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KummerSystem {
    pub r: RatFunc,
    pub residual: DiffExpr,
    pub cleared: DiffExpr,
    pub linearized: LinearODE,
    pub sympow: LinearODE,
}

impl KummerSystem {
    /// Linearization and symmetric square agree coefficient-wise.
    pub fn consistent(&self) -> bool {
        self.linearized == self.sympow
    }
}

pub fn kummer_build(r: &RatFunc) -> Result<KummerSystem, SchwarzError> {
    let residual = kummer_residual(r);
    let linearized = linearize_at_identity(&residual)?;
    let sympow = symmetric_power_2(&from_potential(r))?;
    Ok(KummerSystem { r: r.clone(), residual, cleared: kummer_residual_cleared(r), linearized, sympow })
}
