//! Conditional probability tables ("boxes"), box algebra and quantum boxes.

pub mod ghz;
pub mod named;
pub mod optimize;

use crate::classify::NamedInequality;
use crate::entropy::{entropy_vector, exact_entropy_vector};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

pub use ghz::{ghz_box, ghz_entropy_vector, PhaseConfig};
pub use named::{named_box, NAMED_BOXES};
pub use optimize::{optimize_ghz_violation, scan_csv, GhzObjective, GhzOptimum, OptimizerConfig};

/// Mixed-radix index, first digit most significant.
pub(crate) fn radix_index(digits: &[usize], radix: &[usize]) -> usize {
    digits.iter().zip(radix).fold(0, |acc, (d, r)| acc * r + d)
}

pub(crate) fn radix_tuples(radix: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = radix.iter().product();
    (0..total)
        .map(|mut k| {
            let mut t = vec![0; radix.len()];
            for (slot, r) in t.iter_mut().zip(radix).rev() {
                *slot = k % r;
                k /= r;
            }
            t
        })
        .collect()
}

/// `p(a_1..a_n | x_1..x_n)` for `n` parties.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbBox<S> {
    settings: Vec<usize>,
    outcomes: Vec<usize>,
    table: Vec<S>,
}

impl<S: Scalar> ProbBox<S> {
    /// `table` is indexed by setting tuple, then outcome tuple, both in
    /// mixed radix with the first party most significant.
    pub fn new(settings: Vec<usize>, outcomes: Vec<usize>, table: Vec<S>) -> Result<Self> {
        if settings.len() != outcomes.len() || settings.is_empty() {
            return Err(Error::Shape("settings and outcomes must list the same parties".into()));
        }
        if settings.iter().chain(&outcomes).any(|&k| k == 0) {
            return Err(Error::Shape("every party needs at least one setting and outcome".into()));
        }
        let n: usize = settings.iter().product::<usize>() * outcomes.iter().product::<usize>();
        if table.len() != n {
            return Err(Error::Shape(format!("table has {} entries, expected {n}", table.len())));
        }
        Ok(ProbBox {
            settings,
            outcomes,
            table,
        })
    }

    pub fn from_fn(
        settings: Vec<usize>,
        outcomes: Vec<usize>,
        f: impl Fn(&[usize], &[usize]) -> S,
    ) -> Self {
        let mut table = Vec::new();
        let outs = radix_tuples(&outcomes);
        for x in radix_tuples(&settings) {
            for a in &outs {
                table.push(f(&x, a));
            }
        }
        ProbBox {
            settings,
            outcomes,
            table,
        }
    }

    pub fn uniform(settings: Vec<usize>, outcomes: Vec<usize>) -> Self {
        let n: usize = outcomes.iter().product();
        let p = S::from_ratio(1, n as i64);
        Self::from_fn(settings, outcomes, |_, _| p.clone())
    }

    pub fn parties(&self) -> usize {
        self.settings.len()
    }

    pub fn settings(&self) -> &[usize] {
        &self.settings
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.outcomes
    }

    pub fn table(&self) -> &[S] {
        &self.table
    }

    fn n_outcomes(&self) -> usize {
        self.outcomes.iter().product()
    }

    pub fn prob(&self, x: &[usize], a: &[usize]) -> &S {
        let xi = radix_index(x, &self.settings);
        &self.table[xi * self.n_outcomes() + radix_index(a, &self.outcomes)]
    }

    pub fn setting_tuples(&self) -> Vec<Vec<usize>> {
        radix_tuples(&self.settings)
    }

    /// Row of the table for one setting tuple.
    pub fn row(&self, x: &[usize]) -> &[S] {
        let n = self.n_outcomes();
        let xi = radix_index(x, &self.settings);
        &self.table[xi * n..(xi + 1) * n]
    }

    /// Distribution of the outcomes of `parties` under settings `x`, indexed
    /// in mixed radix over the listed parties.
    pub fn marginal(&self, x: &[usize], parties: &[usize]) -> Vec<S> {
        let n = self.parties();
        let mut stride = vec![1; n];
        for p in (0..n.saturating_sub(1)).rev() {
            stride[p] = stride[p + 1] * self.outcomes[p + 1];
        }
        let mut target = vec![0; parties.len()];
        let mut acc = 1;
        for (k, &p) in parties.iter().enumerate().rev() {
            target[k] = acc;
            acc *= self.outcomes[p];
        }
        let mut out = vec![S::zero(); acc];
        for (i, p) in self.row(x).iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let k: usize = parties
                .iter()
                .zip(&target)
                .map(|(&q, t)| (i / stride[q]) % self.outcomes[q] * t)
                .sum();
            out[k] = out[k].clone() + p.clone();
        }
        out
    }

    pub fn check_normalized(&self) -> Result<()> {
        for x in self.setting_tuples() {
            let row = self.row(&x);
            if row.iter().any(|p| p.is_neg()) {
                return Err(Error::Invalid(format!("negative probability under settings {x:?}")));
            }
            let s = row.iter().fold(S::zero(), |a, b| a + b.clone());
            let gap = (s - S::one()).abs().to_f64_lossy();
            let bad = if S::EXACT { gap != 0.0 } else { gap > 1e-12 };
            if bad {
                return Err(Error::Invalid(format!("row {x:?} sums to 1{gap:+e}")));
            }
        }
        Ok(())
    }

    /// Every party's choice of setting leaves the others' joint marginal unchanged.
    pub fn check_nonsignaling(&self) -> Result<()> {
        let n = self.parties();
        for p in 0..n {
            let others: Vec<usize> = (0..n).filter(|&q| q != p).collect();
            for x in self.setting_tuples() {
                if x[p] == 0 {
                    continue;
                }
                let mut x0 = x.clone();
                x0[p] = 0;
                let (m1, m0) = (self.marginal(&x, &others), self.marginal(&x0, &others));
                let gap = m1
                    .iter()
                    .zip(&m0)
                    .map(|(a, b)| (a.clone() - b.clone()).abs().to_f64_lossy())
                    .fold(0.0, f64::max);
                let bad = if S::EXACT { m1 != m0 } else { gap > 1e-12 };
                if bad {
                    return Err(Error::Signaling {
                        subset: format!("parties {others:?}"),
                        first: x0,
                        second: x,
                        gap,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ProbBox<T> {
        ProbBox {
            settings: self.settings.clone(),
            outcomes: self.outcomes.clone(),
            table: self.table.iter().map(f).collect(),
        }
    }

    /// Applies the outcome permutation `perm` to `party` under `setting`.
    pub fn relabel_outcomes(&self, party: usize, setting: usize, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.outcomes[party] {
            return Err(Error::Shape("permutation length differs from outcome count".into()));
        }
        Ok(Self::from_fn(self.settings.clone(), self.outcomes.clone(), |x, a| {
            if x[party] != setting {
                return self.prob(x, a).clone();
            }
            let mut b = a.to_vec();
            b[party] = perm[a[party]];
            self.prob(x, &b).clone()
        }))
    }
}

/// Convex combination of boxes with identical shape.
pub fn mix<S: Scalar>(boxes: &[&ProbBox<S>], weights: &[S]) -> Result<ProbBox<S>> {
    let first = boxes
        .first()
        .ok_or_else(|| Error::Shape("no boxes to mix".into()))?;
    if boxes.len() != weights.len() {
        return Err(Error::Shape("one weight per box is required".into()));
    }
    if weights.iter().any(|w| w.is_neg()) {
        return Err(Error::Invalid("mixing weights must be nonnegative".into()));
    }
    let total = weights.iter().fold(S::zero(), |a, b| a + b.clone());
    if !(total - S::one()).is_negligible() {
        return Err(Error::Invalid("mixing weights must sum to one".into()));
    }
    for b in boxes {
        if b.settings != first.settings || b.outcomes != first.outcomes {
            return Err(Error::Shape("boxes to mix have different shapes".into()));
        }
    }
    let table = (0..first.table.len())
        .map(|i| {
            boxes
                .iter()
                .zip(weights)
                .fold(S::zero(), |acc, (b, w)| acc + w.clone() * b.table[i].clone())
        })
        .collect();
    Ok(ProbBox {
        settings: first.settings.clone(),
        outcomes: first.outcomes.clone(),
        table,
    })
}

/// `v * box + (1 - v) * uniform`.
pub fn white_noise<S: Scalar>(b: &ProbBox<S>, v: S) -> Result<ProbBox<S>> {
    if v.is_neg() || (v.clone() - S::one()).is_pos() {
        return Err(Error::Invalid("visibility must lie in [0, 1]".into()));
    }
    let u = ProbBox::uniform(b.settings.clone(), b.outcomes.clone());
    let w = S::one() - v.clone();
    mix(&[b, &u], &[v, w])
}

/// Value of the inequality's expression on the entropy vector of `b`.
pub fn evaluate(ineq: &NamedInequality, b: &ProbBox<f64>) -> Result<f64> {
    let sc = ineq.build_scenario()?;
    ineq.value(&entropy_vector(b, &sc)?)
}

/// Exact value when every marginal of `b` is dyadic, `None` otherwise.
pub fn evaluate_exact(ineq: &NamedInequality, b: &ProbBox<Rational>) -> Result<Option<Rational>> {
    let sc = ineq.build_scenario()?;
    match exact_entropy_vector(b, &sc)? {
        Some(h) => ineq.value(&h).map(Some),
        None => Ok(None),
    }
}
