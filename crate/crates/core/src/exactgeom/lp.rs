//! Linear programs over cones, solved through their duals.
//!
//! Equalities (including exact pins) are eliminated first, leaving a program
//! `min o.z  s.t.  G z + g >= 0` in the free coordinates `z`. Its dual has one
//! row per free coordinate, which keeps the tableau small for the typical
//! entropic system (hundreds of rows, a few dozen free coordinates).

use crate::error::Result;
use crate::scalar::Scalar;

use super::certificate::{AffineProgram, Certificate, Pins};
use super::cone::{HCone, LinearForm, RowRef};
use super::linalg::{rref, Rref};
use super::simplex::{solve, SimplexOutcome};

#[derive(Clone, Debug)]
pub enum LpOutcome<S> {
    /// `certificate` proves `objective . h >= value` on the feasible set.
    Optimal {
        value: S,
        point: Vec<S>,
        certificate: Certificate<S>,
    },
    /// Feasible direction along which the objective decreases without bound.
    Unbounded { point: Vec<S>, direction: Vec<S> },
    Infeasible { certificate: Certificate<S> },
}

impl<S: Scalar> LpOutcome<S> {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn min_value(&self) -> Option<&S> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Minimizes `objective` over `cone` with `pins` as extra constraints.
pub fn lp_check<S: Scalar>(
    cone: &HCone<S>,
    objective: &LinearForm<S>,
    pins: &Pins<S>,
) -> Result<LpOutcome<S>> {
    let prog = AffineProgram::from_cone(cone, pins)?;
    Ok(minimize(&prog, &objective.coeffs))
}

/// Feasibility of `cone` under `pins`; `Err` carries a Farkas certificate.
pub fn feasibility<S: Scalar>(cone: &HCone<S>, pins: &Pins<S>) -> Result<std::result::Result<(), Certificate<S>>> {
    let prog = AffineProgram::from_cone(cone, pins)?;
    Ok(check_feasible(&prog))
}

struct Reduced<S> {
    red: Rref<S>,
    free: Vec<usize>,
    /// `G` rows in free coordinates, with constants.
    g: Vec<Vec<S>>,
    g0: Vec<S>,
}

fn reduce<S: Scalar>(prog: &AffineProgram<S>) -> std::result::Result<Reduced<S>, Certificate<S>> {
    let dim = prog.dim;
    let erows: Vec<Vec<S>> = prog.equalities.iter().map(|r| r.coeffs.clone()).collect();
    let econst: Vec<S> = prog.equalities.iter().map(|r| r.constant.clone()).collect();
    let red = rref(&erows, &econst, dim);

    if let Some((comb, k)) = &red.inconsistency {
        // sum comb_j (e_j h + c_j) == k for all h, which must be zero.
        let flip = k.is_pos();
        let terms = prog
            .equalities
            .iter()
            .zip(comb)
            .filter(|(_, l)| !l.is_zero())
            .map(|(r, l)| (r.id, if flip { -l.clone() } else { l.clone() }))
            .collect();
        return Err(Certificate {
            terms,
            target: LinearForm::zero(dim),
            constant: if flip { -k.clone() } else { k.clone() },
        });
    }

    let free = red.free_columns();
    let mut g = Vec::with_capacity(prog.inequalities.len());
    let mut g0 = Vec::with_capacity(prog.inequalities.len());
    for row in &prog.inequalities {
        let (coeffs, konst) = substitute(&red, &free, &row.coeffs, &row.constant);
        g.push(coeffs);
        g0.push(konst);
    }
    Ok(Reduced { red, free, g, g0 })
}

/// Rewrites `a . h + c` in terms of the free coordinates.
fn substitute<S: Scalar>(red: &Rref<S>, free: &[usize], a: &[S], c: &S) -> (Vec<S>, S) {
    let mut coeffs: Vec<S> = free.iter().map(|&f| a[f].clone()).collect();
    let mut konst = c.clone();
    for (r, &p) in red.pivots.iter().enumerate() {
        let w = &a[p];
        if w.is_zero() {
            continue;
        }
        for (j, &f) in free.iter().enumerate() {
            let e = &red.rows[r][f];
            if !e.is_zero() {
                coeffs[j] = coeffs[j].clone() - w.clone() * e.clone();
            }
        }
        konst = konst - w.clone() * red.consts[r].clone();
    }
    (coeffs, konst)
}

fn lift<S: Scalar>(red: &Rref<S>, free: &[usize], z: &[S], homogeneous: bool) -> Vec<S> {
    let mut h = vec![S::zero(); red.ncols];
    for (j, &f) in free.iter().enumerate() {
        h[f] = z[j].clone();
    }
    for (r, &p) in red.pivots.iter().enumerate() {
        let mut v = if homogeneous {
            S::zero()
        } else {
            -red.consts[r].clone()
        };
        for (j, &f) in free.iter().enumerate() {
            let e = &red.rows[r][f];
            if !e.is_zero() {
                v = v - e.clone() * z[j].clone();
            }
        }
        h[p] = v;
    }
    h
}

/// Builds a certificate from inequality multipliers `y`, completing it with
/// equality multipliers so the coefficient sum equals `target`.
fn complete<S: Scalar>(
    prog: &AffineProgram<S>,
    red: &Rref<S>,
    y: &[S],
    target: &[S],
) -> Certificate<S> {
    let dim = prog.dim;
    let mut terms = Vec::new();
    let mut sum = vec![S::zero(); dim];
    let mut constant = S::zero();
    for (row, m) in prog.inequalities.iter().zip(y) {
        if m.is_zero() {
            continue;
        }
        terms.push((row.id, m.clone()));
        for (acc, c) in sum.iter_mut().zip(&row.coeffs) {
            if !c.is_zero() {
                *acc = acc.clone() + m.clone() * c.clone();
            }
        }
        constant = constant + m.clone() * row.constant.clone();
    }
    let residual: Vec<S> = target
        .iter()
        .zip(&sum)
        .map(|(t, s)| t.clone() - s.clone())
        .collect();
    if let Some(lambda) = red.express(&residual) {
        for (row, l) in prog.equalities.iter().zip(lambda) {
            if l.is_zero() {
                continue;
            }
            constant = constant + l.clone() * row.constant.clone();
            terms.push((row.id, l));
        }
    }
    Certificate {
        terms,
        target: LinearForm::geq(target.to_vec()),
        constant,
    }
}

fn farkas_lp<S: Scalar>(r: &Reduced<S>) -> Option<Vec<S>> {
    let m = r.g.len();
    if m == 0 {
        return None;
    }
    let k = r.free.len();
    // Columns: y_0..y_{m-1}, slack. Rows: G^T y = 0 (k rows), sum y + s = 1.
    let mut a = vec![vec![S::zero(); m + 1]; k + 1];
    for (i, gi) in r.g.iter().enumerate() {
        for j in 0..k {
            if !gi[j].is_zero() {
                a[j][i] = gi[j].clone();
            }
        }
        a[k][i] = S::one();
    }
    a[k][m] = S::one();
    let mut b = vec![S::zero(); k + 1];
    b[k] = S::one();
    let mut c = r.g0.clone();
    c.push(S::zero());
    match solve(&a, &b, &c) {
        SimplexOutcome::Optimal { x, value, .. } if value.is_neg() => {
            Some(x[..m].to_vec())
        }
        _ => None,
    }
}

pub(crate) fn check_feasible<S: Scalar>(prog: &AffineProgram<S>) -> std::result::Result<(), Certificate<S>> {
    let r = reduce(prog)?;
    match farkas_lp(&r) {
        Some(y) => Err(complete(prog, &r.red, &y, &vec![S::zero(); prog.dim])),
        None => Ok(()),
    }
}

/// Minimizes `objective . h` over an affine program.
pub fn minimize<S: Scalar>(prog: &AffineProgram<S>, objective: &[S]) -> LpOutcome<S> {
    let r = match reduce(prog) {
        Ok(r) => r,
        Err(certificate) => return LpOutcome::Infeasible { certificate },
    };
    if let Some(y) = farkas_lp(&r) {
        let certificate = complete(prog, &r.red, &y, &vec![S::zero(); prog.dim]);
        return LpOutcome::Infeasible { certificate };
    }

    let (oz, o0) = substitute(&r.red, &r.free, objective, &S::zero());
    let m = r.g.len();
    let k = r.free.len();
    // Dual: min g0 . y  s.t. G^T y = oz, y >= 0.
    let mut a = vec![vec![S::zero(); m]; k];
    for (i, gi) in r.g.iter().enumerate() {
        for j in 0..k {
            if !gi[j].is_zero() {
                a[j][i] = gi[j].clone();
            }
        }
    }
    match solve(&a, &oz, &r.g0) {
        SimplexOutcome::Optimal { x, value, duals } => {
            let z: Vec<S> = duals.iter().map(|u| -u.clone()).collect();
            let point = lift(&r.red, &r.free, &z, false);
            let certificate = complete(prog, &r.red, &x, objective);
            LpOutcome::Optimal {
                value: o0 - value,
                point,
                certificate,
            }
        }
        SimplexOutcome::Infeasible { farkas } => {
            let d: Vec<S> = farkas.iter().map(|w| -w.clone()).collect();
            let direction = lift(&r.red, &r.free, &d, true);
            // A feasible point: solve with a zero objective.
            let zero = vec![S::zero(); k];
            let point = match solve(&a, &zero, &r.g0) {
                SimplexOutcome::Optimal { duals, .. } => {
                    let z: Vec<S> = duals.iter().map(|u| -u.clone()).collect();
                    lift(&r.red, &r.free, &z, false)
                }
                _ => vec![S::zero(); prog.dim],
            };
            LpOutcome::Unbounded { point, direction }
        }
        SimplexOutcome::Unbounded { direction } => {
            // Dual unbounded means primal infeasible; only reachable through
            // tolerance effects in floating mode.
            let certificate = complete(prog, &r.red, &direction, &vec![S::zero(); prog.dim]);
            LpOutcome::Infeasible { certificate }
        }
    }
}

/// Row identifiers of the program in the order the LP sees them.
pub fn row_ids<S: Scalar>(prog: &AffineProgram<S>) -> Vec<RowRef> {
    prog.inequalities
        .iter()
        .chain(&prog.equalities)
        .map(|r| r.id)
        .collect()
}
