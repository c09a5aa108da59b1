//! Exclusion of first-order subequations `f' = a f`, `a = p/q` with
//! `deg p, deg q ≤ n`, inside the symmetric square.
//!
//! Writing `f = Σ w_i F_i` in a series basis of the symmetric square, the
//! condition `q f' − p f = 0` is bilinear in `w` and the coefficients of
//! `p, q`. Replacing each product by its own unknown gives a linear system;
//! full column rank rules out every nonzero bilinear solution.

use super::EngineError;
use crate::algebra::field::{Field, Q};
use crate::algebra::linalg;
use crate::algebra::ratfunc::RatFunc;
use crate::ode::{from_potential, series_solve, symmetric_power_2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderOneCheck {
    pub max_degree: usize,
    pub unknowns: usize,
    /// Series coefficients used as equations.
    pub equations: usize,
    pub rank: usize,
}

impl OrderOneCheck {
    pub fn impossible(&self) -> bool {
        self.rank == self.unknowns
    }
}

/// The relaxed system at `base` with `equations` series coefficients.
pub fn order_one_relaxation(
    big_r: &RatFunc,
    base: &Q,
    max_degree: usize,
    equations: usize,
) -> Result<OrderOneCheck, EngineError> {
    let sym = symmetric_power_2(&from_potential(big_r))?;
    let n = equations + 1;
    let mut basis = Vec::with_capacity(3);
    for i in 0..3 {
        let mut init = vec![Q::zero(); 3];
        init[i] = Q::one();
        basis.push(series_solve(&sym, base, &init, n)?.series);
    }
    let mut columns: Vec<Vec<Q>> = Vec::new();
    for f in &basis {
        let df = f.derivative();
        for j in 0..=max_degree {
            columns.push((0..equations).map(|k| if k >= j { df.coeff(k - j) } else { Q::zero() }).collect());
            columns.push((0..equations).map(|k| if k >= j { f.coeff(k - j).neg() } else { Q::zero() }).collect());
        }
    }
    let matrix: Vec<Vec<Q>> = (0..equations).map(|k| columns.iter().map(|c| c[k].clone()).collect()).collect();
    Ok(OrderOneCheck { max_degree, unknowns: columns.len(), equations, rank: linalg::rank(&matrix) })
}

/// The smallest number of series coefficients, up to `max_equations`, at
/// which the relaxed system has full rank.
pub fn first_contradiction(
    big_r: &RatFunc,
    base: &Q,
    max_degree: usize,
    max_equations: usize,
) -> Result<Option<OrderOneCheck>, EngineError> {
    let unknowns = 6 * (max_degree + 1);
    for equations in unknowns..=max_equations {
        let check = order_one_relaxation(big_r, base, max_degree, equations)?;
        if check.impossible() {
            return Ok(Some(check));
        }
    }
    Ok(None)
}
