use rayon::prelude::*;

use crate::scalar::Scalar;

use super::certificate::AffineProgram;
use super::cone::{HCone, RowRef};
use super::linalg::rref;
use super::lp::{minimize, LpOutcome};

/// `true` when `row >= 0` holds on `{others >= 0, eqs == 0}`.
pub(crate) fn implied<S: Scalar>(
    dim: usize,
    row: &[S],
    others: &[&Vec<S>],
    eqs: &[Vec<S>],
) -> bool {
    let mut prog = AffineProgram::new(dim);
    for (i, r) in others.iter().enumerate() {
        prog.push_inequality((*r).clone(), S::zero(), RowRef::Inequality(i));
    }
    for (i, r) in eqs.iter().enumerate() {
        prog.push_equality(r.clone(), S::zero(), RowRef::Equality(i));
    }
    match minimize(&prog, row) {
        LpOutcome::Optimal { value, .. } => !value.is_neg(),
        LpOutcome::Unbounded { .. } => false,
        LpOutcome::Infeasible { .. } => true,
    }
}

/// Keeps an independent subset of the equalities, in input order.
pub(crate) fn independent_rows<S: Scalar>(rows: &[Vec<S>], dim: usize) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut current: Vec<Vec<S>> = Vec::new();
    let mut r = 0;
    for (i, row) in rows.iter().enumerate() {
        current.push(row.clone());
        let zeros = vec![S::zero(); current.len()];
        let nr = rref(&current, &zeros, dim).rank();
        if nr > r {
            r = nr;
            kept.push(i);
        } else {
            current.pop();
        }
    }
    kept
}

/// Drops every inequality implied by the remaining rows, and dependent equalities.
///
/// Rows that are not implied by all other rows are kept without further work;
/// the candidates are then removed one at a time, re-testing each against the
/// current survivors.
pub fn remove_redundant<S: Scalar>(cone: &HCone<S>) -> HCone<S> {
    let mut c = cone.clone();
    c.dedup();
    let dim = c.dim();
    let eq_rows: Vec<Vec<S>> = c.equalities.iter().map(|f| f.coeffs.clone()).collect();
    let keep_eq = independent_rows(&eq_rows, dim);
    let eqs: Vec<Vec<S>> = keep_eq.iter().map(|&i| eq_rows[i].clone()).collect();

    let rows: Vec<Vec<S>> = c.inequalities.iter().map(|f| f.coeffs.clone()).collect();
    let n = rows.len();
    let candidate: Vec<bool> = (0..n)
        .into_par_iter()
        .map(|i| {
            let others: Vec<&Vec<S>> = (0..n).filter(|&j| j != i).map(|j| &rows[j]).collect();
            implied(dim, &rows[i], &others, &eqs)
        })
        .collect();

    let mut alive = vec![true; n];
    for i in 0..n {
        if !candidate[i] {
            continue;
        }
        let others: Vec<&Vec<S>> = (0..n)
            .filter(|&j| j != i && alive[j])
            .map(|j| &rows[j])
            .collect();
        if implied(dim, &rows[i], &others, &eqs) {
            alive[i] = false;
        }
    }

    let mut out = HCone::new(c.space.clone());
    out.inequalities = c
        .inequalities
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(f, _)| f)
        .collect();
    out.equalities = keep_eq.into_iter().map(|i| c.equalities[i].clone()).collect();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::CoordinateSpace;
    use crate::scalar::{int, Rational};
    use std::sync::Arc;

    #[test]
    fn duplicate_and_dominated_rows() {
        let mut c: HCone<Rational> = HCone::new(Arc::new(CoordinateSpace::anonymous(2)));
        for r in [[1, 0], [1, 0], [1, 1], [0, 1]] {
            c.add_inequality(r.iter().map(|&x| int(x)).collect()).unwrap();
        }
        let out = remove_redundant(&c);
        let rows: Vec<Vec<Rational>> = out.inequalities.iter().map(|f| f.coeffs.clone()).collect();
        assert_eq!(rows, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn dependent_equalities_reduced() {
        let mut c: HCone<Rational> = HCone::new(Arc::new(CoordinateSpace::anonymous(3)));
        c.add_equality(vec![int(1), int(1), int(0)]).unwrap();
        c.add_equality(vec![int(0), int(1), int(1)]).unwrap();
        c.add_equality(vec![int(1), int(2), int(1)]).unwrap();
        assert_eq!(remove_redundant(&c).equalities.len(), 2);
    }

    #[test]
    fn mutually_implied_pair_keeps_one() {
        // x >= 0 and 2x >= 0 after an equality y = x: y >= 0 and x >= 0 imply each other.
        let mut c: HCone<Rational> = HCone::new(Arc::new(CoordinateSpace::anonymous(2)));
        c.add_inequality(vec![int(1), int(0)]).unwrap();
        c.add_inequality(vec![int(0), int(1)]).unwrap();
        c.add_equality(vec![int(1), int(-1)]).unwrap();
        assert_eq!(remove_redundant(&c).inequalities.len(), 1);
    }
}
