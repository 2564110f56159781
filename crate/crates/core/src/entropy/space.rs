use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A subset of the ordered variable list, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(pub u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn singleton(i: usize) -> Self {
        VarSet(1 << i)
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        VarSet(idx.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn minus(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> VarSet {
        VarSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> VarSet {
        VarSet(self.0 & !(1 << i))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }

    /// All subsets, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = VarSet(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }

    /// Order used for coordinates: cardinality first, then the sorted index
    /// sequences compared lexicographically.
    pub fn canonical_cmp(self, other: VarSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Ordered coordinates of an entropy vector, one per variable subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSpace {
    variables: Vec<String>,
    sets: Vec<VarSet>,
    index: HashMap<VarSet, usize>,
}

impl CoordinateSpace {
    /// Space over the given subsets, sorted into canonical order, with the
    /// empty set always present and first.
    pub fn canonical(variables: Vec<String>, sets: impl IntoIterator<Item = VarSet>) -> Self {
        let mut all: Vec<VarSet> = sets.into_iter().collect();
        all.push(VarSet::EMPTY);
        all.sort_by(|a, b| a.canonical_cmp(*b));
        all.dedup();
        Self::with_order(variables, all)
    }

    /// Space that keeps `sets` in the order given (duplicates are dropped).
    pub fn with_order(variables: Vec<String>, sets: Vec<VarSet>) -> Self {
        let mut index = HashMap::new();
        let mut kept = Vec::with_capacity(sets.len());
        for s in sets {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(s) {
                e.insert(kept.len());
                kept.push(s);
            }
        }
        CoordinateSpace {
            variables,
            sets: kept,
            index,
        }
    }

    pub fn power_set(variables: Vec<String>) -> Self {
        let full = VarSet((1u64 << variables.len()) - 1);
        Self::canonical(variables, full.subsets())
    }

    /// All subsets of every context.
    pub fn from_contexts(variables: Vec<String>, contexts: &[VarSet]) -> Self {
        let sets: Vec<VarSet> = contexts.iter().flat_map(|c| c.subsets()).collect();
        Self::canonical(variables, sets)
    }

    /// A plain `dim`-dimensional space with coordinates `x0, x1, ...`.
    pub fn anonymous(dim: usize) -> Self {
        let vars = (0..dim).map(|i| format!("x{i}")).collect();
        Self::with_order(vars, (0..dim).map(VarSet::singleton).collect())
    }

    pub fn dim(&self) -> usize {
        self.sets.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn sets(&self) -> &[VarSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> VarSet {
        self.sets[i]
    }

    pub fn index_of(&self, s: VarSet) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn empty_index(&self) -> Option<usize> {
        self.index_of(VarSet::EMPTY)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<VarSet> {
        let mut s = VarSet::EMPTY;
        for n in names {
            let i = self
                .variable_index(n.as_ref())
                .ok_or_else(|| Error::UnknownVariable(n.as_ref().to_string()))?;
            s = s.with(i);
        }
        Ok(s)
    }

    pub fn index_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<usize> {
        let s = self.set_from_names(names)?;
        self.index_of(s)
            .ok_or_else(|| Error::UnknownSubset(self.render_set(s)))
    }

    pub fn names(&self, s: VarSet) -> Vec<String> {
        s.indices().map(|i| self.variables[i].clone()).collect()
    }

    pub fn render_set(&self, s: VarSet) -> String {
        if s.is_empty() {
            "{}".to_string()
        } else {
            self.names(s).join(",")
        }
    }

    /// `H(A0,B1)`-style label of coordinate `i`.
    pub fn label(&self, i: usize) -> String {
        format!("H({})", self.render_set(self.sets[i]).replace("{}", ""))
    }

    /// Sub-space keeping the listed coordinates, in their current order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        Self::with_order(
            self.variables.clone(),
            keep.iter().map(|&i| self.sets[i]).collect(),
        )
    }

    /// Maps coordinates of `self` into `other` by subset identity (matched by
    /// variable name).
    pub fn embedding_into(&self, other: &CoordinateSpace) -> Result<Vec<usize>> {
        let remap: Vec<Option<usize>> = self
            .variables
            .iter()
            .map(|v| other.variable_index(v))
            .collect();
        self.sets
            .iter()
            .map(|&s| {
                let mut t = VarSet::EMPTY;
                for i in s.indices() {
                    let j = remap[i].ok_or_else(|| Error::UnknownVariable(self.variables[i].clone()))?;
                    t = t.with(j);
                }
                other
                    .index_of(t)
                    .ok_or_else(|| Error::UnknownSubset(self.render_set(s)))
            })
            .collect()
    }
}
