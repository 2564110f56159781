//! Tripartite GHZ state of local dimension `d` measured in phase-shifted
//! Fourier bases.

use serde::{Deserialize, Serialize};

use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::scenarios::MarginalScenario;

use super::ProbBox;

/// One phase per (party, setting), stored as `[A0, A1, B0, B1, C0, C1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseConfig {
    pub alphas: [f64; 6],
}

impl PhaseConfig {
    pub fn zero() -> Self {
        PhaseConfig { alphas: [0.0; 6] }
    }

    pub fn alpha(&self, party: usize, setting: usize) -> f64 {
        self.alphas[2 * party + setting]
    }

    /// Every phase reduced into `[0, 1)`.
    pub fn canonical(&self) -> Self {
        let mut alphas = self.alphas;
        for a in alphas.iter_mut() {
            *a = a.rem_euclid(1.0);
            if *a >= 1.0 {
                *a = 0.0;
            }
        }
        PhaseConfig { alphas }
    }
}

/// `sin^2(pi t)` with the argument reduced to `[-1/2, 1/2]` first.
fn sin_pi_sq(t: f64) -> f64 {
    let r = t - t.round();
    (std::f64::consts::PI * r).sin().powi(2)
}

/// `sin^2(pi s) / sin^2(pi s / d)`, replaced by its limit `d^2` exactly when
/// `s / d` is an integer.
pub(crate) fn fejer(s: f64, d: usize) -> f64 {
    let q = s / d as f64;
    if q.fract() == 0.0 {
        return (d * d) as f64;
    }
    sin_pi_sq(s) / sin_pi_sq(q)
}

/// `p(a,b,c|x,y,z) = sin^2(g) / sin^2(g/d) / d^4` with
/// `g = pi (a + b + c + alpha_{1,x} + alpha_{2,y} + alpha_{3,z})`.
pub fn ghz_box(d: usize, phases: &PhaseConfig) -> Result<ProbBox<f64>> {
    if d == 0 {
        return Err(Error::Invalid("dimension must be positive".into()));
    }
    let norm = (d as f64).powi(4);
    // The probability only depends on a + b + c, so tabulate once per setting.
    let mut cache = vec![[0.0; 8]; 3 * d];
    for (t, row) in cache.iter_mut().enumerate() {
        for (xi, slot) in row.iter_mut().enumerate() {
            let (x, y, z) = (xi >> 2, (xi >> 1) & 1, xi & 1);
            let s = t as f64 + phases.alpha(0, x) + phases.alpha(1, y) + phases.alpha(2, z);
            *slot = fejer(s, d) / norm;
        }
    }
    Ok(ProbBox::from_fn(vec![2, 2, 2], vec![d, d, d], |x, a| {
        cache[a[0] + a[1] + a[2]][(x[0] << 2) | (x[1] << 1) | x[2]]
    }))
}

/// Entropies of [`ghz_box`] on the observable coordinates of `sc`, computed
/// from the distribution of `a + b + c mod d` alone.
///
/// Marginals on at most two parties are uniform; a full context has `d^2`
/// outcome triples for every residue `s`, each of probability
/// `fejer(s + alpha) / d^4`.
pub fn ghz_entropy_vector(
    d: usize,
    phases: &PhaseConfig,
    sc: &MarginalScenario,
) -> Result<EntropyVector<f64>> {
    if d == 0 {
        return Err(Error::Invalid("dimension must be positive".into()));
    }
    if sc.settings != [2, 2, 2] {
        return Err(Error::Shape(format!(
            "GHZ boxes have settings [2, 2, 2], scenario has {:?}",
            sc.settings
        )));
    }
    let log_d = (d as f64).log2();
    let norm = (d as f64).powi(4);
    let mut full = [0.0; 8];
    for (xi, h) in full.iter_mut().enumerate() {
        let alpha = phases.alpha(0, xi >> 2) + phases.alpha(1, (xi >> 1) & 1) + phases.alpha(2, xi & 1);
        let sum: f64 = (0..d)
            .map(|t| {
                let q = fejer(t as f64 + alpha, d) / norm;
                if q > 0.0 {
                    -q * q.log2()
                } else {
                    0.0
                }
            })
            .sum();
        *h = (d * d) as f64 * sum;
    }
    let values = sc
        .space
        .sets()
        .iter()
        .map(|&set| {
            let mut x = [0usize; 3];
            for i in set.indices() {
                let o = sc.observables[i];
                x[o.party] = o.setting;
            }
            if set.len() == 3 {
                full[(x[0] << 2) | (x[1] << 1) | x[2]]
            } else {
                set.len() as f64 * log_d
            }
        })
        .collect();
    EntropyVector::new(sc.space.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::entropy_vector;
    use crate::scenarios::bell_scenario;

    #[test]
    fn structured_entropies_match_table() {
        let sc = bell_scenario(&[2, 2, 2]).unwrap();
        let p = PhaseConfig {
            alphas: [0.13, 0.71, 0.42, 0.05, 0.93, 0.38],
        };
        for d in [2, 3, 4] {
            for ph in [p, PhaseConfig::zero()] {
                let a = ghz_entropy_vector(d, &ph, &sc).unwrap();
                let b = entropy_vector(&ghz_box(d, &ph).unwrap(), &sc).unwrap();
                for (x, y) in a.values.iter().zip(&b.values) {
                    assert!((x - y).abs() < 1e-10, "{d}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn d2_zero_phases() {
        let b = ghz_box(2, &PhaseConfig::zero()).unwrap();
        for x in b.setting_tuples() {
            for a in super::super::radix_tuples(&[2, 2, 2]) {
                let want = if (a[0] + a[1] + a[2]) % 2 == 0 { 0.25 } else { 0.0 };
                assert!((b.prob(&x, &a) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn near_singular_is_continuous() {
        let exact = fejer(4.0, 4);
        let near = fejer(4.0 + 1e-9, 4);
        assert_eq!(exact, 16.0);
        assert!((exact - near).abs() < 1e-6);
    }

    #[test]
    fn rows_normalized() {
        let p = PhaseConfig {
            alphas: [0.13, 0.71, 0.42, 0.05, 0.93, 0.38],
        };
        for d in [2, 3, 5] {
            let b = ghz_box(d, &p).unwrap();
            b.check_normalized().unwrap();
            b.check_nonsignaling().unwrap();
        }
    }
}
