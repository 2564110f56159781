use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::entropy::{CoordinateSpace, VarSet};
use crate::error::{Error, Result};
use crate::exactgeom::VCone;
use crate::scalar::Scalar;
use crate::scenarios::{MarginalScenario, ScenarioKind};

use super::Label;

/// Finite group of coordinate permutations induced by relabeling variables.
///
/// Element `g` sends coordinate `k` to `g[k]`, so `(g.v)[g[k]] = v[k]`.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub space: Arc<CoordinateSpace>,
    pub generators: Vec<Vec<usize>>,
    elements: Vec<Vec<usize>>,
}

fn coordinate_perm(space: &CoordinateSpace, var_perm: &[usize]) -> Result<Vec<usize>> {
    space
        .sets()
        .iter()
        .map(|&s| {
            let t = VarSet::from_indices(s.indices().map(|i| var_perm[i]));
            space.index_of(t).ok_or_else(|| {
                Error::Invalid(format!(
                    "relabeling does not preserve the space: {} has no image",
                    space.render_set(s)
                ))
            })
        })
        .collect()
}

impl SymmetryGroup {
    pub fn trivial(space: Arc<CoordinateSpace>) -> Self {
        let id: Vec<usize> = (0..space.dim()).collect();
        SymmetryGroup {
            space,
            generators: Vec::new(),
            elements: vec![id],
        }
    }

    /// Closure of the given variable permutations.
    pub fn from_variable_perms(space: Arc<CoordinateSpace>, perms: &[Vec<usize>]) -> Result<Self> {
        let generators = perms
            .iter()
            .map(|p| coordinate_perm(&space, p))
            .collect::<Result<Vec<_>>>()?;
        let id: Vec<usize> = (0..space.dim()).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for gen in &generators {
                let h: Vec<usize> = g.iter().map(|&k| gen[k]).collect();
                if seen.insert(h.clone()) {
                    elements.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        elements.sort();
        Ok(SymmetryGroup {
            space,
            generators,
            elements,
        })
    }

    /// Party swaps among parties with equal setting counts (only `A <-> C` in
    /// bilocal scenarios) and setting relabelings within each party. The
    /// information-causality scenario gets the trivial group.
    pub fn for_scenario(sc: &MarginalScenario, space: Arc<CoordinateSpace>) -> Result<Self> {
        if sc.kind == ScenarioKind::InformationCausality {
            return Ok(Self::trivial(space));
        }
        let n = sc.n_vars();
        let mut perms = Vec::new();
        let swap = |p: usize, q: usize| -> Vec<usize> {
            (0..n)
                .map(|i| {
                    let o = sc.observables[i];
                    let target = if o.party == p {
                        q
                    } else if o.party == q {
                        p
                    } else {
                        return i;
                    };
                    sc.var(target, o.setting).expect("equal setting counts")
                })
                .collect()
        };
        let pairs: Vec<(usize, usize)> = match sc.kind {
            ScenarioKind::Bilocal => vec![(0, 2)],
            _ => (0..sc.parties())
                .flat_map(|p| (p + 1..sc.parties()).map(move |q| (p, q)))
                .collect(),
        };
        for (p, q) in pairs {
            if sc.settings[p] == sc.settings[q] {
                perms.push(swap(p, q));
            }
        }
        for p in 0..sc.parties() {
            let m = sc.settings[p];
            if m < 2 {
                continue;
            }
            let relabel = |f: &dyn Fn(usize) -> usize| -> Vec<usize> {
                (0..n)
                    .map(|i| {
                        let o = sc.observables[i];
                        if o.party == p {
                            sc.var(p, f(o.setting)).expect("setting in range")
                        } else {
                            i
                        }
                    })
                    .collect()
            };
            perms.push(relabel(&|s| match s {
                0 => 1,
                1 => 0,
                s => s,
            }));
            if m > 2 {
                perms.push(relabel(&|s| (s + 1) % m));
            }
        }
        Self::from_variable_perms(space, &perms)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn act<S: Clone>(&self, g: &[usize], v: &[S]) -> Vec<S> {
        let mut out = v.to_vec();
        for (k, x) in v.iter().enumerate() {
            out[g[k]] = x.clone();
        }
        out
    }

    /// Distinct images of `v`, lexicographically sorted.
    pub fn orbit<S: Scalar>(&self, v: &[S]) -> Vec<Vec<S>> {
        let mut out: Vec<Vec<S>> = self.elements.iter().map(|g| self.act(g, v)).collect();
        out.sort_by(|a, b| lex(a, b));
        out.dedup();
        out
    }
}

fn lex<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Lexicographic minimum of the orbit of `v`.
pub fn canonical_form<S: Scalar>(v: &[S], group: &SymmetryGroup) -> Vec<S> {
    group
        .elements
        .iter()
        .map(|g| group.act(g, v))
        .min_by(|a, b| lex(a, b))
        .unwrap_or_else(|| v.to_vec())
}

/// One orbit of rays under a symmetry group.
#[derive(Clone, Debug, PartialEq)]
pub struct RayClass<S> {
    pub representative: Vec<S>,
    pub orbit_size: usize,
    pub labels: Vec<Label>,
}

/// Partition of `rays` into orbits, sorted by representative.
pub fn orbit_classes<S: Scalar>(rays: &VCone<S>, group: &SymmetryGroup) -> Vec<RayClass<S>> {
    let mut reps: BTreeMap<String, Vec<S>> = BTreeMap::new();
    for r in &rays.rays {
        let c = canonical_form(r, group);
        let key: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        reps.entry(key.join(",")).or_insert(c);
    }
    let mut out: Vec<RayClass<S>> = reps
        .into_values()
        .map(|rep| RayClass {
            orbit_size: group.orbit(&rep).len(),
            representative: rep,
            labels: Vec::new(),
        })
        .collect();
    out.sort_by(|a, b| lex(&a.representative, &b.representative));
    out
}
