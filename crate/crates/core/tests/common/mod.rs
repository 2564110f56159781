//! Randomized property checks shared by the property suite and the
//! acceptance run. Each check returns `Err` with a description on failure.

#![allow(dead_code)]

pub mod tables;

use std::collections::BTreeSet;
use std::sync::Arc;

use entrocone::entropy::{elemental_count, elemental_list, functional, CoordinateSpace, Expr, VarSet};
use entrocone::exactgeom::{
    canonical_ray, dd_enumerate, feasibility, iis_shrink, lp_check, project_onto, verify_certificate,
    verify_certificate_with_pins, DdConfig, FmConfig, HCone, LinearForm, LpOutcome, Pins,
};
use entrocone::{int, Rational};
use proptest::prelude::*;

pub type Check = Result<(), String>;

/// A cone inside the nonnegative orthant: `x >= 0` plus random integer rows.
#[derive(Clone, Debug)]
pub struct RandomCone {
    pub dim: usize,
    pub rows: Vec<Vec<i64>>,
}

impl RandomCone {
    pub fn hcone(&self) -> HCone<Rational> {
        let mut h = HCone::new(Arc::new(CoordinateSpace::anonymous(self.dim)));
        for i in 0..self.dim {
            let mut e = vec![int(0); self.dim];
            e[i] = int(1);
            h.inequalities.push(LinearForm::geq(e));
        }
        for r in &self.rows {
            h.inequalities.push(LinearForm::geq(r.iter().map(|&x| int(x)).collect()));
        }
        h
    }
}

pub fn random_cone() -> impl Strategy<Value = RandomCone> {
    (3usize..=4).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=5)
            .prop_map(move |rows| RandomCone { dim, rows })
    })
}

pub fn random_point(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=4, dim)
}

fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    let mut total = int(0);
    for j in 0..n {
        if m[0][j] == int(0) {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Extremal rays by brute force: every `dim - 1` rows with a one-dimensional
/// kernel (generalized cross product), kept when feasible.
pub fn brute_force_rays(h: &HCone<Rational>) -> BTreeSet<Vec<Rational>> {
    let d = h.dim();
    let rows: Vec<&Vec<Rational>> = h.inequalities.iter().map(|f| &f.coeffs).collect();
    let mut out = BTreeSet::new();
    for pick in subsets(rows.len(), d - 1) {
        let m: Vec<&Vec<Rational>> = pick.iter().map(|&i| rows[i]).collect();
        let r: Vec<Rational> = (0..d)
            .map(|j| {
                let minor: Vec<Vec<Rational>> = m
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let v = det(&minor);
                if j % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        if r.iter().all(|x| *x == int(0)) {
            continue;
        }
        for s in [int(1), int(-1)] {
            let c: Vec<Rational> = r.iter().map(|x| x * &s).collect();
            if h.contains(&c) {
                out.insert(canonical_ray(&c));
            }
        }
    }
    out
}

pub fn check_dd_matches_oracle(c: &RandomCone) -> Check {
    let h = c.hcone();
    let v = dd_enumerate(&h, &DdConfig::default()).map_err(|e| e.to_string())?;
    let got: BTreeSet<Vec<Rational>> = v.rays.iter().map(|r| canonical_ray(r)).collect();
    if got.len() != v.rays.len() {
        return Err("duplicate rays".into());
    }
    let want = brute_force_rays(&h);
    if got != want {
        return Err(format!("dd {got:?} vs oracle {want:?}"));
    }
    Ok(())
}

/// Projection onto the first `keep` coordinates: every original ray projects
/// into the result, and every ray of the result lifts to a feasible point.
pub fn check_fm_projection(c: &RandomCone, keep: usize) -> Check {
    let h = c.hcone();
    let keep: Vec<usize> = (0..keep.min(c.dim - 1)).collect();
    let proj = project_onto(&h, &keep, &FmConfig::default()).map_err(|e| e.to_string())?;
    let v = dd_enumerate(&h, &DdConfig::default()).map_err(|e| e.to_string())?;
    for r in &v.rays {
        let p: Vec<Rational> = keep.iter().map(|&k| r[k].clone()).collect();
        if !proj.contains(&p) {
            return Err(format!("projection of {r:?} violates the projected cone"));
        }
    }
    let cfg = DdConfig {
        allow_lineality: true,
        ..Default::default()
    };
    let pv = dd_enumerate(&proj, &cfg).map_err(|e| e.to_string())?;
    for r in pv.rays.iter().chain(&pv.lineality) {
        let pins = Pins::exact(keep.iter().zip(r).map(|(&k, x)| (k, x.clone())));
        if feasibility(&h, &pins).map_err(|e| e.to_string())?.is_err() {
            return Err(format!("projected ray {r:?} does not lift"));
        }
    }
    Ok(())
}

/// Minimizing a random objective yields either a verified optimality
/// certificate or a decreasing direction inside the cone.
pub fn check_lp_certificate(c: &RandomCone, objective: &[i64]) -> Check {
    let h = c.hcone();
    let obj: Vec<Rational> = objective.iter().map(|&x| int(x)).collect();
    match lp_check(&h, &LinearForm::geq(obj.clone()), &Pins::new()).map_err(|e| e.to_string())? {
        LpOutcome::Optimal { value, certificate, .. } => {
            if value != int(0) {
                return Err(format!("cone minimum {value} is not zero"));
            }
            if !verify_certificate(&certificate, &h).map_err(|e| e.to_string())? || !certificate.proves(&obj) {
                return Err("optimality certificate does not verify".into());
            }
        }
        LpOutcome::Unbounded { direction, .. } => {
            let val: Rational = direction.iter().zip(&obj).map(|(a, b)| a * b).sum();
            if !h.contains(&direction) || val >= int(0) {
                return Err("direction is not a decreasing ray of the cone".into());
            }
        }
        LpOutcome::Infeasible { .. } => return Err("a cone cannot be infeasible".into()),
    }
    Ok(())
}

/// Pinning coordinates either leaves a feasible system or yields a Farkas
/// certificate plus a 1-minimal infeasible subsystem.
pub fn check_farkas_and_iis(c: &RandomCone, point: &[i64]) -> Check {
    let h = c.hcone();
    let pins = Pins::exact(point.iter().take(c.dim).enumerate().map(|(k, &x)| (k, int(x))));
    let cert = match feasibility(&h, &pins).map_err(|e| e.to_string())? {
        Ok(()) => {
            let p: Vec<Rational> = point.iter().map(|&x| int(x)).collect();
            return if h.contains(&p) {
                Ok(())
            } else {
                Err(format!("{point:?} reported feasible but lies outside"))
            };
        }
        Err(cert) => cert,
    };
    if !cert.is_farkas() || !verify_certificate_with_pins(&cert, &h, &pins).map_err(|e| e.to_string())? {
        return Err("Farkas certificate does not verify".into());
    }
    let sub = iis_shrink(&h, &pins).map_err(|e| e.to_string())?;
    if feasibility(&sub.cone, &pins).map_err(|e| e.to_string())?.is_ok() {
        return Err("subsystem is feasible".into());
    }
    for k in 0..sub.cone.inequalities.len() {
        let mut smaller = sub.cone.clone();
        smaller.inequalities.remove(k);
        if feasibility(&smaller, &pins).map_err(|e| e.to_string())?.is_err() {
            return Err(format!("subsystem stays infeasible without row {k}"));
        }
    }
    Ok(())
}

pub fn check_canonical_scaling(v: &[i64], num: i64, den: i64) -> Check {
    let r: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
    let lambda = Rational::new(num.into(), den.into());
    let s: Vec<Rational> = r.iter().map(|x| x * &lambda).collect();
    if canonical_ray(&r) != canonical_ray(&s) {
        return Err(format!("scaling {v:?} by {lambda} changes the canonical ray"));
    }
    Ok(())
}

/// Elemental inequalities counted by enumerating pairs and conditioning sets.
pub fn check_elemental_count(n: usize) -> Check {
    let mut count = n;
    for i in 0..n {
        for j in i + 1..n {
            for mask in 0u64..(1 << n) {
                if mask >> i & 1 == 0 && mask >> j & 1 == 0 {
                    count += 1;
                }
            }
        }
    }
    let listed = elemental_list(VarSet::from_indices(0..n)).len();
    if count != listed || count != elemental_count(n) {
        return Err(format!("n = {n}: counted {count}, listed {listed}, formula {}", elemental_count(n)));
    }
    Ok(())
}

const TERMS: [&str; 6] = ["H(A0)", "H(A0,B1)", "I(A0:B0)", "I(A1:B1)", "H(B1|A1)", "H(B0|A0)"];

/// `functional(a X + b Y) = a functional(X) + b functional(Y)`.
pub fn check_functional_linearity(x: usize, y: usize, a: i64, b: i64) -> Check {
    let sc = entrocone::scenarios::bell_scenario(&[2, 2]).map_err(|e| e.to_string())?;
    let f = |s: &str| -> Result<Vec<Rational>, String> {
        Ok(functional(&Expr::parse(s).map_err(|e| e.to_string())?, &sc.space)
            .map_err(|e| e.to_string())?
            .coeffs)
    };
    let (tx, ty) = (TERMS[x % TERMS.len()], TERMS[y % TERMS.len()]);
    let sign = |c: i64| if c < 0 { format!("- {}", -c) } else { format!("+ {c}") };
    let lhs = f(&format!("{} {tx} {} {ty}", sign(a), sign(b)))?;
    let (fx, fy) = (f(tx)?, f(ty)?);
    let rhs: Vec<Rational> = fx.iter().zip(&fy).map(|(p, q)| p * int(a) + q * int(b)).collect();
    if lhs != rhs {
        return Err(format!("{a} {tx} + {b} {ty} is not additive"));
    }
    Ok(())
}
