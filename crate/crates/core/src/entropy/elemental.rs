use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactgeom::HCone;
use crate::scalar::Scalar;

use super::space::{CoordinateSpace, VarSet};

/// One elemental Shannon inequality over a variable set `vars`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elemental {
    /// `H(vars) - H(vars \ {i}) >= 0`
    Monotone { vars: VarSet, i: usize },
    /// `I(i:j|s) = H(s+i) + H(s+j) - H(s+i+j) - H(s) >= 0`
    Submodular { i: usize, j: usize, s: VarSet },
}

impl Elemental {
    /// Sparse coefficients keyed by subset.
    pub fn terms(self) -> Vec<(VarSet, i64)> {
        match self {
            Elemental::Monotone { vars, i } => vec![(vars, 1), (vars.without(i), -1)],
            Elemental::Submodular { i, j, s } => vec![
                (s.with(i), 1),
                (s.with(j), 1),
                (s.with(i).with(j), -1),
                (s, -1),
            ],
        }
    }

    pub fn dense<S: Scalar>(self, space: &CoordinateSpace) -> Result<Vec<S>> {
        let mut v = vec![S::zero(); space.dim()];
        for (set, c) in self.terms() {
            let k = space
                .index_of(set)
                .ok_or_else(|| Error::UnknownSubset(space.render_set(set)))?;
            v[k] = v[k].clone() + S::from_ratio(c, 1);
        }
        Ok(v)
    }
}

/// All elemental inequalities over `vars`: monotonicity first, then
/// `I(i:j|S)` for `i < j` and every `S` of the remaining variables.
pub fn elemental_list(vars: VarSet) -> Vec<Elemental> {
    let idx: Vec<usize> = vars.indices().collect();
    let mut out: Vec<Elemental> = idx.iter().map(|&i| Elemental::Monotone { vars, i }).collect();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let rest = vars.without(i).without(j);
            let mut subs: Vec<VarSet> = rest.subsets().collect();
            subs.sort_by(|x, y| x.canonical_cmp(*y));
            out.extend(subs.into_iter().map(|s| Elemental::Submodular { i, j, s }));
        }
    }
    out
}

/// Elemental system of `vars` written in `space`, plus `H() = 0`.
pub fn elemental_for<S: Scalar>(vars: VarSet, space: &Arc<CoordinateSpace>) -> Result<HCone<S>> {
    if vars.is_empty() {
        return Err(Error::Invalid("elemental inequalities need at least one variable".into()));
    }
    let mut cone = HCone::new(space.clone());
    for e in elemental_list(vars) {
        cone.add_inequality(e.dense(space)?)?;
    }
    Ok(cone.with_normalization())
}

/// Elemental system of the first `n` variables of `space`.
pub fn elemental_inequalities<S: Scalar>(n: usize, space: &Arc<CoordinateSpace>) -> Result<HCone<S>> {
    if n < 1 {
        return Err(Error::Invalid("elemental inequalities need at least one variable".into()));
    }
    elemental_for(VarSet::from_indices(0..n), space)
}

/// `2^(n-2) * C(n,2) + n`
pub fn elemental_count(n: usize) -> usize {
    if n < 2 {
        return n;
    }
    (1usize << (n - 2)) * (n * (n - 1) / 2) + n
}

/// Shannon cone on the full power set of `names`.
pub fn shannon_cone<S: Scalar>(names: Vec<String>) -> Result<HCone<S>> {
    let n = names.len();
    let space = Arc::new(CoordinateSpace::power_set(names));
    elemental_inequalities(n, &space)
}
