use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactgeom::VCone;
use crate::scalar::Rational;
use crate::scenarios::MarginalScenario;

use super::membership::{Classifier, Label};
use super::symmetry::{orbit_classes, RayClass, SymmetryGroup};

/// Called with `(done, total)` as classes are labeled.
pub type ClassifyProgress = Arc<dyn Fn(usize, usize) + Send + Sync>;

/// Labels every class of `rays` in parallel; order follows the representatives.
pub fn classify_rays(
    rays: &VCone<Rational>,
    classifier: &Classifier,
    group: &SymmetryGroup,
    extremal: bool,
    progress: Option<ClassifyProgress>,
) -> Result<Vec<RayClass<Rational>>> {
    let sc = &classifier.scenario;
    if rays.space.dim() != sc.space.dim() {
        return Err(Error::DimensionMismatch {
            expected: sc.space.dim(),
            found: rays.space.dim(),
        });
    }
    let mut classes = orbit_classes(rays, group);
    let total = classes.len();
    let done = AtomicUsize::new(0);
    classes.par_iter_mut().try_for_each(|c| -> Result<()> {
        c.labels = classifier.labels(&c.representative, extremal)?;
        let k = done.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(p) = &progress {
            p(k, total);
        }
        Ok(())
    })?;
    Ok(classes)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    /// Number of classes.
    pub total: usize,
    /// Number of rays over all classes.
    pub rays: usize,
    pub local: usize,
    pub nonlocal: usize,
    pub gtnl: usize,
    pub bilocal: usize,
    pub nonbilocal: usize,
    pub genuinely_nonbilocal: usize,
    pub ic_violating: usize,
}

impl ClassCounts {
    pub fn of(classes: &[RayClass<Rational>]) -> Self {
        let mut c = ClassCounts {
            total: classes.len(),
            rays: classes.iter().map(|k| k.orbit_size).sum(),
            ..Default::default()
        };
        for k in classes {
            for l in &k.labels {
                *match l {
                    Label::Local => &mut c.local,
                    Label::Nonlocal => &mut c.nonlocal,
                    Label::Gtnl => &mut c.gtnl,
                    Label::Bilocal => &mut c.bilocal,
                    Label::Nonbilocal => &mut c.nonbilocal,
                    Label::GenuinelyNonbilocal => &mut c.genuinely_nonbilocal,
                    Label::IcViolating => &mut c.ic_violating,
                } += 1;
            }
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// Exact coordinates as `p` or `p/q` strings.
    pub representative: Vec<String>,
    pub orbit_size: usize,
    pub labels: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub scenario: String,
    pub coordinates: Vec<String>,
    pub group_order: usize,
    /// Verdicts rest on the Shannon outer approximation of the entropy cone.
    pub shannon_relaxation: bool,
    pub classes: Vec<ClassEntry>,
    pub counts: ClassCounts,
}

impl ClassificationReport {
    pub fn new(sc: &MarginalScenario, group: &SymmetryGroup, classes: &[RayClass<Rational>], shannon_relaxation: bool) -> Self {
        ClassificationReport {
            scenario: sc.spec().to_string(),
            coordinates: (0..sc.space.dim()).map(|k| sc.space.label(k)).collect(),
            group_order: group.order(),
            shannon_relaxation,
            classes: classes
                .iter()
                .map(|c| ClassEntry {
                    representative: c.representative.iter().map(|x| x.to_string()).collect(),
                    orbit_size: c.orbit_size,
                    labels: c.labels.clone(),
                })
                .collect(),
            counts: ClassCounts::of(classes),
        }
    }
}
