use std::sync::Arc;

use num_traits::{One, Zero};

use crate::boxes::ProbBox;
use crate::error::{Error, Result};
use crate::exactgeom::LinearForm;
use crate::scalar::{dot, Rational, Scalar};
use crate::scenarios::MarginalScenario;

use super::space::{CoordinateSpace, VarSet};

/// Entropies indexed by the coordinates of `space`; `H()` is always zero.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyVector<S> {
    pub space: Arc<CoordinateSpace>,
    pub values: Vec<S>,
}

impl<S: Scalar> EntropyVector<S> {
    pub fn new(space: Arc<CoordinateSpace>, values: Vec<S>) -> Result<Self> {
        if values.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: values.len(),
            });
        }
        if let Some(k) = space.empty_index() {
            if !values[k].is_zero() {
                return Err(Error::Invalid("entropy of the empty set must be zero".into()));
            }
        }
        Ok(EntropyVector { space, values })
    }

    pub fn get<N: AsRef<str>>(&self, names: &[N]) -> Result<&S> {
        Ok(&self.values[self.space.index_of_names(names)?])
    }

    pub fn eval(&self, form: &LinearForm<S>) -> Result<S> {
        if form.dim() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: form.dim(),
            });
        }
        Ok(dot(&form.coeffs, &self.values))
    }

    pub fn to_f64(&self) -> EntropyVector<f64> {
        EntropyVector {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v.to_f64_lossy()).collect(),
        }
    }
}

/// `-sum p log2 p` with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&q| q > 0.0)
        .map(|&q| -q * q.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `-sum p log2 p` when every nonzero `p` is a power of two, else `None`.
fn dyadic_entropy(p: &[Rational]) -> Option<Rational> {
    let mut h = Rational::zero();
    for q in p.iter().filter(|q| !q.is_zero()) {
        if !q.numer().is_one() {
            return None;
        }
        let d = q.denom();
        let k = d.bits() - 1;
        if *d != num_bigint::BigInt::one() << k {
            return None;
        }
        h += q * Rational::from_integer(k.into());
    }
    Some(h)
}

/// Parties and their fixed settings for the variables of `set`.
fn fixed_settings(sc: &MarginalScenario, set: VarSet) -> Result<Vec<Option<usize>>> {
    let mut fixed = vec![None; sc.parties()];
    for i in set.indices() {
        let o = sc.observables[i];
        if fixed[o.party].replace(o.setting).is_some() {
            return Err(Error::Shape(format!(
                "{} contains two settings of one party",
                sc.space.render_set(set)
            )));
        }
    }
    Ok(fixed)
}

/// Marginal of `set`, checked for agreement across every setting choice of
/// the parties outside `set`.
fn context_marginal<S: Scalar>(
    b: &ProbBox<S>,
    sc: &MarginalScenario,
    set: VarSet,
    check: bool,
) -> Result<Vec<S>> {
    let fixed = fixed_settings(sc, set)?;
    let parties: Vec<usize> = (0..sc.parties()).filter(|&p| fixed[p].is_some()).collect();
    let mut choices = b
        .setting_tuples()
        .into_iter()
        .filter(|x| fixed.iter().zip(x).all(|(f, v)| f.is_none_or(|s| s == *v)));
    let first = choices.next().expect("every party has a setting");
    let m0 = b.marginal(&first, &parties);
    if check {
        for x in choices {
            let m = b.marginal(&x, &parties);
            let gap = m
                .iter()
                .zip(&m0)
                .map(|(a, c)| (a.clone() - c.clone()).abs().to_f64_lossy())
                .fold(0.0, f64::max);
            let differs = if S::EXACT { m != m0 } else { gap > 1e-12 };
            if differs {
                return Err(Error::Signaling {
                    subset: sc.space.render_set(set),
                    first: first.clone(),
                    second: x,
                    gap,
                });
            }
        }
    }
    Ok(m0)
}

fn check_shape<S: Scalar>(b: &ProbBox<S>, sc: &MarginalScenario) -> Result<()> {
    if b.settings() != sc.settings.as_slice() {
        return Err(Error::Shape(format!(
            "box settings {:?} do not match scenario settings {:?}",
            b.settings(),
            sc.settings
        )));
    }
    Ok(())
}

pub(crate) fn entropy_vector_with(
    b: &ProbBox<f64>,
    sc: &MarginalScenario,
    check: bool,
) -> Result<EntropyVector<f64>> {
    check_shape(b, sc)?;
    let values = sc
        .space
        .sets()
        .iter()
        .map(|&s| {
            if s.is_empty() {
                Ok(0.0)
            } else {
                Ok(shannon_entropy(&context_marginal(b, sc, s, check)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyVector {
        space: sc.space.clone(),
        values,
    })
}

/// Base-2 entropies of every observable coordinate of `sc`.
pub fn entropy_vector(b: &ProbBox<f64>, sc: &MarginalScenario) -> Result<EntropyVector<f64>> {
    entropy_vector_with(b, sc, true)
}

/// Exact entropies of a box whose marginal probabilities are all dyadic
/// (`2^-k`); `Ok(None)` when some marginal is not.
pub fn exact_entropy_vector(
    b: &ProbBox<Rational>,
    sc: &MarginalScenario,
) -> Result<Option<EntropyVector<Rational>>> {
    check_shape(b, sc)?;
    let mut values = Vec::with_capacity(sc.space.dim());
    for &s in sc.space.sets() {
        if s.is_empty() {
            values.push(Rational::zero());
            continue;
        }
        match dyadic_entropy(&context_marginal(b, sc, s, true)?) {
            Some(h) => values.push(h),
            None => return Ok(None),
        }
    }
    Ok(Some(EntropyVector {
        space: sc.space.clone(),
        values,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::{mix, named_box};
    use crate::scalar::{int, rat};
    use crate::scenarios::bell_scenario;

    #[test]
    fn pr_box_is_all_ones() {
        let sc = bell_scenario(&[2, 2]).unwrap();
        let pr = named_box("pr").unwrap();
        let h = entropy_vector(&pr.convert(|p| p.to_f64_lossy()), &sc).unwrap();
        for (i, v) in h.values.iter().enumerate().skip(1) {
            assert!((v - 1.0).abs() < 1e-12, "{}", sc.space.label(i));
        }
    }

    #[test]
    fn deterministic_box_is_zero() {
        let sc = bell_scenario(&[2, 2]).unwrap();
        let b: ProbBox<f64> =
            ProbBox::from_fn(vec![2, 2], vec![2, 2], |_, a| if a == [0, 0] { 1.0 } else { 0.0 });
        assert!(entropy_vector(&b, &sc).unwrap().values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn pr_pc_mixture_exact() {
        let sc = bell_scenario(&[2, 2]).unwrap();
        let (pr, pc) = (named_box("pr").unwrap(), named_box("pc2").unwrap());
        let m = mix(&[&pr, &pc], &[rat(1, 2), rat(1, 2)]).unwrap();
        let h = exact_entropy_vector(&m, &sc).unwrap().unwrap();
        assert_eq!(*h.get(&["A1", "B1"]).unwrap(), int(2));
        assert_eq!(*h.get(&["A0", "B1"]).unwrap(), int(1));
        assert_eq!(*h.get(&["A0"]).unwrap(), int(1));
    }

    #[test]
    fn non_dyadic_is_none() {
        let sc = bell_scenario(&[1]).unwrap();
        let b = ProbBox::new(vec![1], vec![3], vec![rat(1, 3); 3]).unwrap();
        assert!(exact_entropy_vector(&b, &sc).unwrap().is_none());
    }

    #[test]
    fn signaling_reported_with_subset() {
        let sc = bell_scenario(&[2, 2]).unwrap();
        let b: ProbBox<f64> = ProbBox::from_fn(vec![2, 2], vec![2, 2], |x, a| {
            if a[1] == x[0] && a[0] == 0 {
                1.0
            } else {
                0.0
            }
        });
        match entropy_vector(&b, &sc) {
            Err(Error::Signaling { subset, .. }) => assert!(subset.starts_with('B')),
            other => panic!("{other:?}"),
        }
    }
}
