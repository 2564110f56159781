//! Fourier-Motzkin projection of cones.

use std::sync::Arc;

use crate::entropy::CoordinateSpace;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::cone::{HCone, LinearForm};
use super::redundancy::remove_redundant;

#[derive(Clone, Debug)]
pub struct FmConfig {
    /// Abort when an elimination step produces more rows than this.
    pub max_rows: Option<usize>,
    /// Run redundancy removal after every eliminated coordinate.
    pub reduce_each_step: bool,
}

impl Default for FmConfig {
    fn default() -> Self {
        FmConfig {
            max_rows: Some(200_000),
            reduce_each_step: true,
        }
    }
}

struct Work<S> {
    ineqs: Vec<Vec<S>>,
    eqs: Vec<Vec<S>>,
    /// Original coordinate index of each remaining column.
    cols: Vec<usize>,
}

impl<S: Scalar> Work<S> {
    fn drop_column(&mut self, j: usize) {
        for r in self.ineqs.iter_mut().chain(self.eqs.iter_mut()) {
            r.remove(j);
        }
        self.cols.remove(j);
    }

    fn tidy(&mut self) {
        let mut c = self.as_cone();
        c.dedup();
        self.load(c);
    }

    fn as_cone(&self) -> HCone<S> {
        let mut c = HCone::new(Arc::new(CoordinateSpace::anonymous(self.cols.len())));
        c.inequalities = self.ineqs.iter().cloned().map(LinearForm::geq).collect();
        c.equalities = self.eqs.iter().cloned().map(LinearForm::eq).collect();
        c
    }

    fn load(&mut self, c: HCone<S>) {
        self.ineqs = c.inequalities.into_iter().map(|f| f.coeffs).collect();
        self.eqs = c.equalities.into_iter().map(|f| f.coeffs).collect();
    }
}

fn primitive<S: Scalar>(mut v: Vec<S>) -> Vec<S> {
    S::make_primitive(&mut v);
    v
}

/// Projection of `cone` onto the coordinates not listed in `drop`.
pub fn fm_eliminate<S: Scalar>(cone: &HCone<S>, drop: &[usize], cfg: &FmConfig) -> Result<HCone<S>> {
    cone.validate()?;
    let dim = cone.dim();
    if let Some(&bad) = drop.iter().find(|&&d| d >= dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad + 1,
        });
    }
    let mut w = Work {
        ineqs: cone.inequalities.iter().map(|f| f.coeffs.clone()).collect(),
        eqs: cone.equalities.iter().map(|f| f.coeffs.clone()).collect(),
        cols: (0..dim).collect(),
    };
    w.tidy();
    let mut pending: Vec<usize> = drop.to_vec();
    pending.sort_unstable();
    pending.dedup();

    while !pending.is_empty() {
        let col_of = |w: &Work<S>, c: usize| w.cols.iter().position(|&x| x == c).unwrap();
        // Coordinates fixed by an equality are substituted away first.
        let by_eq = pending.iter().enumerate().find_map(|(pi, &c)| {
            let j = col_of(&w, c);
            w.eqs
                .iter()
                .enumerate()
                .filter(|(_, e)| !e[j].is_negligible())
                .min_by_key(|(_, e)| e.iter().filter(|x| !x.is_negligible()).count())
                .map(|(ei, _)| (pi, j, ei))
        });
        if let Some((pi, j, ei)) = by_eq {
            let e = w.eqs.remove(ei);
            let sub = |r: &mut Vec<S>| {
                if !r[j].is_negligible() {
                    let f = r[j].clone() / e[j].clone();
                    for (x, y) in r.iter_mut().zip(&e) {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                    r[j] = S::zero();
                }
            };
            w.ineqs.iter_mut().for_each(sub);
            w.eqs.iter_mut().for_each(sub);
            w.drop_column(j);
            w.ineqs = std::mem::take(&mut w.ineqs).into_iter().map(primitive).collect();
            pending.remove(pi);
            w.tidy();
            continue;
        }

        let (pi, j) = pending
            .iter()
            .enumerate()
            .map(|(pi, &c)| (pi, col_of(&w, c)))
            .min_by_key(|&(_, j)| {
                let p = w.ineqs.iter().filter(|r| r[j].is_pos()).count();
                let n = w.ineqs.iter().filter(|r| r[j].is_neg()).count();
                p * n
            })
            .unwrap();
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in std::mem::take(&mut w.ineqs) {
            if r[j].is_pos() {
                pos.push(r);
            } else if r[j].is_neg() {
                neg.push(r);
            } else {
                next.push(r);
            }
        }
        if let Some(limit) = cfg.max_rows {
            if next.len() + pos.len() * neg.len() > limit {
                return Err(Error::RowLimit { limit });
            }
        }
        for p in &pos {
            for n in &neg {
                let a = p[j].clone();
                let b = -n[j].clone();
                let mut v: Vec<S> = p
                    .iter()
                    .zip(n)
                    .map(|(x, y)| b.clone() * x.clone() + a.clone() * y.clone())
                    .collect();
                v[j] = S::zero();
                next.push(primitive(v));
            }
        }
        w.ineqs = next;
        w.drop_column(j);
        pending.remove(pi);
        if cfg.reduce_each_step {
            let reduced = remove_redundant(&w.as_cone());
            w.load(reduced);
        } else {
            w.tidy();
        }
    }

    let reduced = remove_redundant(&w.as_cone());
    let mut out = HCone::new(Arc::new(cone.space.restrict(&w.cols)));
    out.inequalities = reduced.inequalities;
    out.equalities = reduced.equalities;
    Ok(out)
}

/// Projection onto the listed coordinates (in the order of the input space).
pub fn project_onto<S: Scalar>(cone: &HCone<S>, keep: &[usize], cfg: &FmConfig) -> Result<HCone<S>> {
    let drop: Vec<usize> = (0..cone.dim()).filter(|i| !keep.contains(i)).collect();
    fm_eliminate(cone, &drop, cfg)
}
