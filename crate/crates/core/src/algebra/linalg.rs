//! Dense Gaussian elimination over any [`Field`].
//!
//! Exact fields pivot on any nonzero entry. Floating-point fields pivot on
//! the largest entry of the column and treat entries below a relative
//! threshold as zero.

use super::field::Field;

pub type Matrix<F> = Vec<Vec<F>>;

/// Relative threshold under which float pivots count as zero.
pub const FLOAT_RANK_TOL: f64 = 1e-10;

pub struct Echelon<F: Field> {
    pub rows: Matrix<F>,
    pub pivots: Vec<usize>,
    /// Product of the pivots times the sign of the row permutation.
    pub det_factor: F,
}

fn threshold<F: Field>(m: &Matrix<F>) -> f64 {
    if F::EXACT {
        return 0.0;
    }
    let max = m.iter().flatten().map(|x| x.pivot_score()).fold(0.0, f64::max);
    FLOAT_RANK_TOL * max
}

/// Reduced row echelon form.
pub fn rref<F: Field>(mut m: Matrix<F>) -> Echelon<F> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let tol = threshold(&m);
    let mut pivots = Vec::new();
    let mut det = F::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best = None;
        let mut best_score = tol;
        for (i, row) in m.iter().enumerate().skip(r) {
            let s = row[c].pivot_score();
            if s > best_score {
                best = Some(i);
                best_score = s;
                if F::EXACT {
                    break;
                }
            }
        }
        let Some(p) = best else { continue };
        if p != r {
            m.swap(p, r);
            det = det.neg();
        }
        let inv = m[r][c].inv().expect("pivot nonzero");
        det = det.mul(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x = x.sub(&f.mul(pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: m, pivots, det_factor: det }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m.clone()).pivots.len()
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let e = rref(m.clone());
    if e.pivots.len() < n {
        F::zero()
    } else {
        e.det_factor
    }
}

/// A basis of the right kernel `{v : m v = 0}`.
pub fn kernel<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let e = rref(m.clone());
    let mut basis = Vec::new();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    for &f in &free {
        let mut v = vec![F::zero(); cols];
        v[f] = F::one();
        for (row, &pc) in e.rows.iter().zip(&e.pivots) {
            v[pc] = row[f].neg();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = b` (free variables set to zero), or `None` when
/// the system is inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let aug: Matrix<F> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rref(aug);
    if e.pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        x[pc] = row[cols].clone();
    }
    Some(x)
}

pub fn mat_vec<F: Field>(m: &Matrix<F>, v: &[F]) -> Vec<F> {
    m.iter().map(|row| row.iter().zip(v).fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
}
