use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::certificate::{AffineProgram, Pins};
use super::cone::{HCone, RowRef};
use super::lp::check_feasible;

/// An infeasible subsystem together with the input rows it came from.
#[derive(Clone, Debug)]
pub struct Subsystem<S> {
    pub cone: HCone<S>,
    pub inequality_rows: Vec<usize>,
    pub equality_rows: Vec<usize>,
}

fn sub_feasible<S: Scalar>(cone: &HCone<S>, pins: &Pins<S>, ineq: &[usize], eq: &[usize]) -> Result<bool> {
    let full = AffineProgram::from_cone(cone, pins)?;
    let mut prog = AffineProgram::new(full.dim);
    prog.inequalities = full
        .inequalities
        .into_iter()
        .filter(|r| match r.id {
            RowRef::Inequality(i) => ineq.contains(&i),
            _ => true,
        })
        .collect();
    prog.equalities = full
        .equalities
        .into_iter()
        .filter(|r| match r.id {
            RowRef::Equality(i) => eq.contains(&i),
            _ => true,
        })
        .collect();
    Ok(check_feasible(&prog).is_ok())
}

/// A 1-minimal infeasible subsystem of `cone` under fixed `pins`.
///
/// Starts from the support of a Farkas certificate and then tries to delete
/// each remaining row once.
pub fn iis_shrink<S: Scalar>(cone: &HCone<S>, pins: &Pins<S>) -> Result<Subsystem<S>> {
    let prog = AffineProgram::from_cone(cone, pins)?;
    let cert = match check_feasible(&prog) {
        Ok(()) => return Err(Error::Feasible),
        Err(c) => c,
    };
    let mut ineq: Vec<usize> = Vec::new();
    let mut eq: Vec<usize> = Vec::new();
    for (id, _) in &cert.terms {
        match id {
            RowRef::Inequality(i) => ineq.push(*i),
            RowRef::Equality(i) => eq.push(*i),
            _ => {}
        }
    }
    ineq.sort_unstable();
    eq.sort_unstable();

    let mut k = 0;
    while k < ineq.len() {
        let mut trial = ineq.clone();
        trial.remove(k);
        if sub_feasible(cone, pins, &trial, &eq)? {
            k += 1;
        } else {
            ineq = trial;
        }
    }
    let mut k = 0;
    while k < eq.len() {
        let mut trial = eq.clone();
        trial.remove(k);
        if sub_feasible(cone, pins, &ineq, &trial)? {
            k += 1;
        } else {
            eq = trial;
        }
    }

    let mut out = HCone::new(cone.space.clone());
    out.inequalities = ineq.iter().map(|&i| cone.inequalities[i].clone()).collect();
    out.equalities = eq.iter().map(|&i| cone.equalities[i].clone()).collect();
    Ok(Subsystem {
        cone: out,
        inequality_rows: ineq,
        equality_rows: eq,
    })
}
