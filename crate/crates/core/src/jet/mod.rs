//! k-jets of local biholomorphisms of the line, composed and inverted as
//! truncated power series.

mod expr;
mod prolong;
mod text;

pub use expr::{CompiledExpr, DiffExpr, Wrt};
pub use prolong::{linearize_at_identity, prolong, JetVectorField};
pub use text::{parse_scalar_exact, parse_scalar_float, AnyJet, JetJson};

use thiserror::Error;

use crate::algebra::field::{factorial, Field};
use crate::algebra::series::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("source of the outer jet does not match the target of the inner jet")]
    SourceTargetMismatch,
    #[error("first derivative vanishes; not a jet of a biholomorphism")]
    NotInvertible,
    #[error("jet order {found} is below the required {required}")]
    OrderTooLow { required: usize, found: usize },
    #[error("equation is singular at this jet")]
    SingularLocus,
    #[error("expression does not vanish on identity jets")]
    NotVanishingOnIdentity,
    #[error("expression could not be solved for its highest derivative")]
    NotSolvable,
    #[error("invalid jet text: {0}")]
    Parse(String),
}

/// `(source → target; φ'(source), …, φ^(k)(source))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<F: Field> {
    source: F,
    target: F,
    coeffs: Vec<F>,
}

/// Float jets treat a first derivative this small as zero.
const FLOAT_SINGULAR: f64 = 1e-300;

fn negligible<F: Field>(x: &F) -> bool {
    if F::EXACT {
        x.is_zero()
    } else {
        x.pivot_score() <= FLOAT_SINGULAR
    }
}

impl<F: Field> Jet<F> {
    /// Order 0 jets (no derivatives) are allowed as prolongation seeds.
    pub fn new(source: F, target: F, coeffs: Vec<F>) -> Result<Self, JetError> {
        if let Some(c1) = coeffs.first() {
            if negligible(c1) {
                return Err(JetError::NotInvertible);
            }
        }
        Ok(Jet { source, target, coeffs })
    }

    pub fn identity(x: F, order: usize) -> Self {
        let mut coeffs = vec![F::zero(); order];
        if order > 0 {
            coeffs[0] = F::one();
        }
        Jet { source: x.clone(), target: x, coeffs }
    }

    pub fn source(&self) -> &F {
        &self.source
    }

    pub fn target(&self) -> &F {
        &self.target
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `φ^(j)(source)` with `j = 0` the target.
    pub fn derivative(&self, j: usize) -> F {
        if j == 0 {
            self.target.clone()
        } else {
            self.coeffs.get(j - 1).cloned().unwrap_or_else(F::zero)
        }
    }

    /// `[φ, φ', …, φ^(k)]` at the source.
    pub fn values(&self) -> Vec<F> {
        std::iter::once(self.target.clone()).chain(self.coeffs.iter().cloned()).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Jet { source: self.source.clone(), target: self.target.clone(), coeffs: self.coeffs.iter().take(order).cloned().collect() }
    }

    /// `φ(source + t) − target` as a series with `order + 1` terms.
    pub fn displacement_series(&self) -> TruncSeries<F> {
        let mut c = vec![F::zero()];
        for (j, cj) in self.coeffs.iter().enumerate() {
            c.push(cj.div(&factorial::<F>(j + 1)).expect("nonzero factorial"));
        }
        TruncSeries::new(c)
    }

    fn from_displacement(source: F, target: F, s: &TruncSeries<F>, order: usize) -> Self {
        let coeffs = (1..=order).map(|j| s.coeff(j).mul(&factorial::<F>(j))).collect();
        Jet { source, target, coeffs }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Jet<G> {
        Jet { source: f(&self.source), target: f(&self.target), coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// Jet of `g ∘ f` at `f.source`, truncated to the smaller order.
pub fn jet_compose<F: Field>(g: &Jet<F>, f: &Jet<F>) -> Result<Jet<F>, JetError> {
    if !f.target.approx_eq(&g.source) {
        return Err(JetError::SourceTargetMismatch);
    }
    let k = f.order().min(g.order());
    let a = f.truncate(k).displacement_series();
    let b = g.truncate(k).displacement_series();
    let c = b.compose(&a);
    Ok(Jet::from_displacement(f.source.clone(), g.target.clone(), &c, k))
}

/// Inverse jet at `f.target`.
pub fn jet_invert<F: Field>(f: &Jet<F>) -> Result<Jet<F>, JetError> {
    let k = f.order();
    if k == 0 {
        return Ok(Jet { source: f.target.clone(), target: f.source.clone(), coeffs: vec![] });
    }
    if negligible(&f.coeffs[0]) {
        return Err(JetError::NotInvertible);
    }
    let rev = f.displacement_series().reversion().ok_or(JetError::NotInvertible)?;
    Ok(Jet::from_displacement(f.target.clone(), f.source.clone(), &rev, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi, Q};

    fn jet(s: i64, t: i64, c: &[i64]) -> Jet<Q> {
        Jet::new(qi(s), qi(t), c.iter().map(|&x| qi(x)).collect()).unwrap()
    }

    #[test]
    fn second_order_chain_rule() {
        let f = jet(0, 0, &[2, 1]);
        let g = jet(0, 0, &[3, 1]);
        assert_eq!(jet_compose(&g, &f).unwrap(), jet(0, 0, &[6, 7]));
    }

    #[test]
    fn inverse_example() {
        let f = jet(0, 0, &[2, 1]);
        let inv = jet_invert(&f).unwrap();
        assert_eq!(inv.coeffs(), &[q(1, 2), q(-1, 8)]);
        assert_eq!(jet_compose(&f, &inv).unwrap(), Jet::identity(qi(0), 2));
        assert_eq!(jet_invert(&Jet::identity(qi(3), 4)).unwrap(), Jet::identity(qi(3), 4));
    }

    #[test]
    fn mismatch_and_singular() {
        let f = jet(0, 1, &[2, 1]);
        let g = jet(0, 0, &[3, 1]);
        assert_eq!(jet_compose(&g, &f), Err(JetError::SourceTargetMismatch));
        assert_eq!(Jet::new(qi(0), qi(0), vec![qi(0)]), Err(JetError::NotInvertible));
    }

    #[test]
    fn compose_truncates_to_lower_order() {
        let f = jet(0, 0, &[2, 1, 5]);
        let g = jet(0, 0, &[3, 1]);
        assert_eq!(jet_compose(&g, &f).unwrap().order(), 2);
    }
}
