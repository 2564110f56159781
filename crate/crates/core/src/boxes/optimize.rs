//! Multi-start search for GHZ phases violating the genuine tripartite
//! nonlocality witness.

use std::io::Write;

use argmin::core::{CostFunction, Executor, State, TerminationReason, TerminationStatus};
use argmin::solver::neldermead::NelderMead;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::named_inequality;
use crate::error::{Error, Result};
use crate::exactgeom::LinearForm;
use crate::scalar::from_rational;
use crate::scenarios::{bell_scenario, MarginalScenario};

use super::ghz::{ghz_entropy_vector, PhaseConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub starts: usize,
    pub max_iters: u64,
    /// Stop when the simplex values have this standard deviation.
    pub tolerance: f64,
    /// Edge length of the initial simplex.
    pub step: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            starts: 24,
            max_iters: 3000,
            tolerance: 1e-12,
            step: 0.1,
            seed: 2017,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhzOptimum {
    pub d: usize,
    pub phases: PhaseConfig,
    pub value: f64,
    /// Whether the best start stopped on the tolerance rather than the
    /// iteration cap.
    pub converged: bool,
    /// Best value reached from each start, in start order.
    pub start_values: Vec<f64>,
}

/// The witness value of `ghz_box(d, phases)`.
pub struct GhzObjective {
    d: usize,
    scenario: MarginalScenario,
    form: LinearForm<f64>,
}

impl GhzObjective {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Invalid(format!("GHZ dimension {d} is below 2")));
        }
        let scenario = bell_scenario(&[2, 2, 2])?;
        let f = named_inequality("gtnl")?.expression_form(&scenario.space)?;
        let form = LinearForm::geq(f.coeffs.iter().map(from_rational).collect());
        Ok(GhzObjective { d, scenario, form })
    }

    pub fn value(&self, phases: &PhaseConfig) -> Result<f64> {
        ghz_entropy_vector(self.d, phases, &self.scenario)?.eval(&self.form)
    }
}

impl CostFunction for GhzObjective {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        let mut alphas = [0.0; 6];
        alphas.copy_from_slice(p);
        self.value(&PhaseConfig { alphas })
            .map_err(|e| argmin::core::Error::msg(e.to_string()))
    }
}

/// Lattice corners of `{0, 1/2}^6` spread over the index range, then uniform
/// random points.
fn starting_points(cfg: &OptimizerConfig) -> Vec<[f64; 6]> {
    let corners = cfg.starts / 2;
    let mut out: Vec<[f64; 6]> = (0..corners)
        .map(|k| {
            let bits = k * 64 / corners.max(1);
            let mut p = [0.0; 6];
            for (i, x) in p.iter_mut().enumerate() {
                if bits >> i & 1 == 1 {
                    *x = 0.5;
                }
            }
            p
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    while out.len() < cfg.starts {
        let mut p = [0.0; 6];
        for x in p.iter_mut() {
            *x = rng.gen::<f64>();
        }
        out.push(p);
    }
    out
}

struct Run {
    phases: [f64; 6],
    value: f64,
    converged: bool,
}

fn descend(obj: &GhzObjective, start: [f64; 6], cfg: &OptimizerConfig) -> Result<Run> {
    let mut simplex = vec![start.to_vec()];
    for i in 0..6 {
        let mut v = start.to_vec();
        v[i] += cfg.step;
        simplex.push(v);
    }
    let solver = NelderMead::new(simplex)
        .with_sd_tolerance(cfg.tolerance)
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let problem = GhzObjective {
        d: obj.d,
        scenario: obj.scenario.clone(),
        form: obj.form.clone(),
    };
    let res = Executor::new(problem, solver)
        .configure(|s| s.max_iters(cfg.max_iters))
        .run()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let state = res.state();
    let best = state
        .get_best_param()
        .ok_or_else(|| Error::Invalid("optimizer returned no point".into()))?;
    let mut phases = [0.0; 6];
    phases.copy_from_slice(best);
    let converged = matches!(
        state.get_termination_status(),
        TerminationStatus::Terminated(TerminationReason::SolverConverged)
    );
    Ok(Run {
        phases,
        value: state.get_best_cost(),
        converged,
    })
}

/// Minimizes the genuine tripartite nonlocality witness over the six GHZ
/// phases. Deterministic for a fixed seed whatever the thread count.
pub fn optimize_ghz_violation(d: usize, cfg: &OptimizerConfig) -> Result<GhzOptimum> {
    let obj = GhzObjective::new(d)?;
    let runs = starting_points(cfg)
        .into_par_iter()
        .map(|p| descend(&obj, p, cfg))
        .collect::<Result<Vec<_>>>()?;
    let best = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .map(|(_, r)| r)
        .ok_or_else(|| Error::Invalid("at least one start is required".into()))?;
    let phases = PhaseConfig { alphas: best.phases }.canonical();
    Ok(GhzOptimum {
        d,
        value: obj.value(&phases)?,
        phases,
        converged: best.converged,
        start_values: runs.iter().map(|r| r.value).collect(),
    })
}

/// Writes one CSV row per optimum: `d`, the six phases and the witness value.
pub fn scan_csv<W: Write>(optima: &[GhzOptimum], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let to_io = |e: csv::Error| Error::Io(e.into());
    w.write_record([
        "d", "alpha_1_0", "alpha_1_1", "alpha_2_0", "alpha_2_1", "alpha_3_0", "alpha_3_1", "S_value",
    ])
    .map_err(to_io)?;
    for o in optima {
        let mut row = vec![o.d.to_string()];
        row.extend(o.phases.alphas.iter().map(|a| format!("{a:.16e}")));
        row.push(format!("{:.16e}", o.value));
        w.write_record(&row).map_err(to_io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_are_deterministic() {
        let cfg = OptimizerConfig::default();
        let a = starting_points(&cfg);
        assert_eq!(a.len(), 24);
        assert_eq!(a, starting_points(&cfg));
        assert_eq!(a[0], [0.0; 6]);
    }

    #[test]
    fn integer_shift_of_one_party_is_invariant() {
        let obj = GhzObjective::new(3).unwrap();
        let p = PhaseConfig {
            alphas: [0.21, 0.67, 0.05, 0.44, 0.9, 0.13],
        };
        let mut q = p;
        q.alphas[2] += 1.0;
        q.alphas[3] += 1.0;
        assert!((obj.value(&p).unwrap() - obj.value(&q).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn csv_has_header_and_full_precision() {
        let o = GhzOptimum {
            d: 2,
            phases: PhaseConfig::zero(),
            value: -0.1,
            converged: true,
            start_values: vec![],
        };
        let mut buf = Vec::new();
        scan_csv(&[o], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(
            lines.next().unwrap(),
            "d,alpha_1_0,alpha_1_1,alpha_2_0,alpha_2_1,alpha_3_0,alpha_3_1,S_value"
        );
        assert!(lines.next().unwrap().ends_with("-1.0000000000000001e-1"));
    }
}
