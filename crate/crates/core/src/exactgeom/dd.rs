//! Double description method for extreme-ray enumeration.
//!
//! Equalities are quotiented out first, so the incremental phase runs in the
//! free coordinates of the equality system. Exact inputs run on a checked
//! `i64` kernel and fall back to the generic kernel if an entry overflows.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{dot, Rational, Scalar};

use super::bitset::Bitset;
use super::cone::{canonical_line, canonical_ray, lex_cmp, HCone, LinearForm, VCone};
use super::linalg::{inverse_columns, rank, rref};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Adjacency {
    /// Zero-set inclusion against every other ray.
    #[default]
    Combinatorial,
    /// Rank of the common active rows.
    Algebraic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DdProgress {
    pub processed: usize,
    pub total: usize,
    pub rays: usize,
}

#[derive(Clone)]
pub struct DdConfig {
    pub max_rays: Option<usize>,
    pub adjacency: Adjacency,
    /// Return a lineality basis instead of failing on non-pointed cones.
    pub allow_lineality: bool,
    pub parallel: bool,
    pub progress: Option<Arc<dyn Fn(DdProgress) + Send + Sync>>,
}

impl Default for DdConfig {
    fn default() -> Self {
        DdConfig {
            max_rays: None,
            adjacency: Adjacency::Combinatorial,
            allow_lineality: false,
            parallel: true,
            progress: None,
        }
    }
}

impl fmt::Debug for DdConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DdConfig")
            .field("max_rays", &self.max_rays)
            .field("adjacency", &self.adjacency)
            .field("allow_lineality", &self.allow_lineality)
            .field("parallel", &self.parallel)
            .finish()
    }
}

pub(crate) trait DdNum: Clone + Send + Sync + 'static {
    fn dot(a: &[Self], b: &[Self]) -> Option<Self>;
    fn sgn(&self) -> Ordering;
    /// `ap * n - an * p`, canonically rescaled.
    fn combine(ap: &Self, n: &[Self], an: &Self, p: &[Self]) -> Option<Vec<Self>>;
    fn rank_of(rows: &[&Vec<Self>], ncols: usize) -> usize;
}

impl<S: Scalar> DdNum for S {
    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        Some(dot(a, b))
    }

    fn sgn(&self) -> Ordering {
        self.sign()
    }

    fn combine(ap: &Self, n: &[Self], an: &Self, p: &[Self]) -> Option<Vec<Self>> {
        let mut v: Vec<S> = n
            .iter()
            .zip(p)
            .map(|(x, y)| ap.clone() * x.clone() - an.clone() * y.clone())
            .collect();
        S::make_primitive(&mut v);
        Some(v)
    }

    fn rank_of(rows: &[&Vec<Self>], ncols: usize) -> usize {
        let owned: Vec<Vec<S>> = rows.iter().map(|r| (*r).clone()).collect();
        rank(&owned, ncols)
    }
}

impl DdNum for i64 {
    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        let mut s: i128 = 0;
        for (x, y) in a.iter().zip(b) {
            s = s.checked_add(*x as i128 * *y as i128)?;
        }
        i64::try_from(s).ok()
    }

    fn sgn(&self) -> Ordering {
        self.cmp(&0)
    }

    fn combine(ap: &Self, n: &[Self], an: &Self, p: &[Self]) -> Option<Vec<Self>> {
        let mut wide = Vec::with_capacity(n.len());
        let mut g: i128 = 0;
        for (x, y) in n.iter().zip(p) {
            let v = (*ap as i128 * *x as i128).checked_sub(*an as i128 * *y as i128)?;
            g = g.gcd(&v);
            wide.push(v);
        }
        if g > 1 {
            for v in wide.iter_mut() {
                *v /= g;
            }
        }
        wide.into_iter().map(|v| i64::try_from(v).ok()).collect()
    }

    fn rank_of(rows: &[&Vec<Self>], ncols: usize) -> usize {
        let owned: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        rank(&owned, ncols)
    }
}

enum KernelError {
    Overflow,
    RayLimit(usize),
}

struct Ray<T> {
    v: Vec<T>,
    zeros: Bitset,
}

fn kernel<T: DdNum>(
    rows: &[Vec<T>],
    init: Vec<Vec<T>>,
    k: usize,
    cfg: &DdConfig,
) -> std::result::Result<Vec<Vec<T>>, KernelError> {
    let m = rows.len();
    let mut rays: Vec<Ray<T>> = init
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            let mut zeros = Bitset::new(m);
            for i in (0..k).filter(|&i| i != j) {
                zeros.set(i);
            }
            Ray { v, zeros }
        })
        .collect();

    for (i, row) in rows.iter().enumerate().skip(k) {
        let dots: Vec<Option<T>> = if cfg.parallel {
            rays.par_iter().map(|r| T::dot(row, &r.v)).collect()
        } else {
            rays.iter().map(|r| T::dot(row, &r.v)).collect()
        };
        let dots: Vec<T> = dots.into_iter().collect::<Option<_>>().ok_or(KernelError::Overflow)?;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (j, d) in dots.iter().enumerate() {
            match d.sgn() {
                Ordering::Greater => pos.push(j),
                Ordering::Less => neg.push(j),
                Ordering::Equal => rays[j].zeros.set(i),
            }
        }
        if !neg.is_empty() {
            let adjacent = |p: usize, n: usize| -> Option<Bitset> {
                let z = rays[p].zeros.and(&rays[n].zeros);
                if z.count() + 2 < k {
                    return None;
                }
                match cfg.adjacency {
                    Adjacency::Combinatorial => {
                        let blocked = rays.iter().enumerate().any(|(r, ray)| {
                            r != p && r != n && z.is_subset_of(&ray.zeros)
                        });
                        (!blocked).then_some(z)
                    }
                    Adjacency::Algebraic => {
                        let active: Vec<&Vec<T>> = z.ones().map(|a| &rows[a]).collect();
                        (T::rank_of(&active, k) + 2 == k).then_some(z)
                    }
                }
            };
            let make = |p: usize| -> std::result::Result<Vec<Ray<T>>, KernelError> {
                let mut out = Vec::new();
                for &n in &neg {
                    if let Some(mut z) = adjacent(p, n) {
                        let v = T::combine(&dots[p], &rays[n].v, &dots[n], &rays[p].v)
                            .ok_or(KernelError::Overflow)?;
                        z.set(i);
                        out.push(Ray { v, zeros: z });
                    }
                }
                Ok(out)
            };
            let fresh: Vec<Vec<Ray<T>>> = if cfg.parallel {
                pos.par_iter().map(|&p| make(p)).collect::<std::result::Result<_, _>>()?
            } else {
                pos.iter().map(|&p| make(p)).collect::<std::result::Result<_, _>>()?
            };
            let mut is_neg = vec![false; rays.len()];
            for &n in &neg {
                is_neg[n] = true;
            }
            let mut next: Vec<Ray<T>> = rays
                .into_iter()
                .enumerate()
                .filter(|(j, _)| !is_neg[*j])
                .map(|(_, r)| r)
                .collect();
            next.extend(fresh.into_iter().flatten());
            rays = next;
        }
        if let Some(limit) = cfg.max_rays {
            if rays.len() > limit {
                return Err(KernelError::RayLimit(limit));
            }
        }
        if let Some(cb) = &cfg.progress {
            cb(DdProgress {
                processed: i + 1,
                total: m,
                rays: rays.len(),
            });
        }
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}

fn nonzeros<S: Scalar>(v: &[S]) -> usize {
    v.iter().filter(|x| !x.is_negligible()).count()
}

/// Extreme rays of `cone`.
pub fn dd_enumerate<S: Scalar>(cone: &HCone<S>, cfg: &DdConfig) -> Result<VCone<S>> {
    cone.validate()?;
    let dim = cone.dim();
    let eq_rows: Vec<Vec<S>> = cone.equalities.iter().map(|f| f.coeffs.clone()).collect();
    let red = rref(&eq_rows, &vec![S::zero(); eq_rows.len()], dim);
    let basis = red.null_space();
    let k = basis.len();
    if k == 0 {
        return Ok(VCone::new(cone.space.clone(), Vec::new()));
    }

    let mut rows: Vec<Vec<S>> = Vec::new();
    for f in &cone.inequalities {
        let mut r: Vec<S> = basis.iter().map(|b| dot(&f.coeffs, b)).collect();
        if r.iter().all(|x| x.is_negligible()) {
            continue;
        }
        S::make_primitive(&mut r);
        if !rows.contains(&r) {
            rows.push(r);
        }
    }

    let lift = |z: &[S]| -> Vec<S> {
        let mut h = vec![S::zero(); dim];
        for (zj, b) in z.iter().zip(&basis) {
            if zj.is_zero() {
                continue;
            }
            for (x, y) in h.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() + zj.clone() * y.clone();
                }
            }
        }
        h
    };

    let lin = rref(&rows, &vec![S::zero(); rows.len()], k);
    if lin.rank() < k {
        if !cfg.allow_lineality {
            return Err(Error::NotPointed(k - lin.rank()));
        }
        let lines: Vec<Vec<S>> = lin.null_space().iter().map(|z| lift(z)).collect();
        let mut pointed = cone.clone();
        for l in &lines {
            pointed.equalities.push(LinearForm::eq(l.clone()));
        }
        let inner = DdConfig {
            allow_lineality: false,
            ..cfg.clone()
        };
        let mut out = dd_enumerate(&pointed, &inner)?;
        out.space = cone.space.clone();
        let mut lineality: Vec<Vec<S>> = lines.iter().map(|l| canonical_line(l)).collect();
        lineality.sort_by(|a, b| lex_cmp(a, b));
        out.lineality = lineality;
        return Ok(out);
    }

    // Sparse rows first; the first independent ones seed a simplicial cone.
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| nonzeros(&rows[i]));
    let mut seed: Vec<usize> = Vec::with_capacity(k);
    let mut echelon: Vec<(usize, Vec<S>)> = Vec::new();
    for &i in &order {
        if seed.len() == k {
            break;
        }
        let mut v = rows[i].clone();
        for (p, e) in &echelon {
            if !v[*p].is_zero() {
                let f = v[*p].clone() / e[*p].clone();
                for (x, y) in v.iter_mut().zip(e) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_negligible()) {
            echelon.push((p, v));
            seed.push(i);
        }
    }
    let mut ordered: Vec<Vec<S>> = seed.iter().map(|&i| rows[i].clone()).collect();
    ordered.extend(
        order
            .iter()
            .filter(|i| !seed.contains(i))
            .map(|&i| rows[i].clone()),
    );
    let init: Vec<Vec<S>> = inverse_columns(&ordered[..k])
        .ok_or_else(|| Error::Invalid("seed rows are singular".into()))?
        .into_iter()
        .map(|mut c| {
            S::make_primitive(&mut c);
            c
        })
        .collect();

    let to_i64 = |v: &Vec<S>| -> Option<Vec<i64>> { v.iter().map(|x| x.as_i64()).collect() };
    let mut zrays: Option<Vec<Vec<S>>> = None;
    if S::EXACT {
        let r64: Option<Vec<Vec<i64>>> = ordered.iter().map(to_i64).collect();
        let i64_init: Option<Vec<Vec<i64>>> = init.iter().map(to_i64).collect();
        if let (Some(r64), Some(i64_init)) = (r64, i64_init) {
            match kernel(&r64, i64_init, k, cfg) {
                Ok(rs) => {
                    zrays = Some(
                        rs.into_iter()
                            .map(|r| r.into_iter().map(|x| S::from_ratio(x, 1)).collect())
                            .collect(),
                    )
                }
                Err(KernelError::RayLimit(limit)) => return Err(Error::RayLimit { limit }),
                Err(KernelError::Overflow) => {}
            }
        }
    }
    let zrays = match zrays {
        Some(z) => z,
        None => match kernel(&ordered, init, k, cfg) {
            Ok(rs) => rs,
            Err(KernelError::RayLimit(limit)) => return Err(Error::RayLimit { limit }),
            Err(KernelError::Overflow) => unreachable!("generic kernel does not overflow"),
        },
    };

    let mut rays: Vec<Vec<S>> = zrays.iter().map(|z| canonical_ray(&lift(z))).collect();
    rays.sort_by(|a, b| lex_cmp(a, b));
    rays.dedup();
    Ok(VCone::new(cone.space.clone(), rays))
}

/// Facet description of the cone generated by `v` (rays plus lineality).
pub fn facets_of<S: Scalar>(v: &VCone<S>) -> Result<HCone<S>> {
    let mut dual = HCone::new(v.space.clone());
    for r in &v.rays {
        dual.add_inequality(r.clone())?;
    }
    for l in &v.lineality {
        dual.add_equality(l.clone())?;
    }
    let cfg = DdConfig {
        allow_lineality: true,
        ..DdConfig::default()
    };
    let gens = dd_enumerate(&dual, &cfg)?;
    let mut out = HCone::new(v.space.clone());
    out.inequalities = gens.rays.into_iter().map(LinearForm::geq).collect();
    out.equalities = gens.lineality.into_iter().map(LinearForm::eq).collect();
    Ok(out)
}
