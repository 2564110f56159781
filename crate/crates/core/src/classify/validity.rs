use num_traits::{One, Zero};

use crate::entropy::CoordinateSpace;
use crate::error::{Error, Result};
use crate::exactgeom::{
    iis_shrink, lp_check, project_onto, Certificate, FmConfig, HCone, LinearForm, LpOutcome, Pins,
};
use crate::scalar::{dot, Rational};
use crate::scenarios::transport;

use super::membership::EmbeddedSystem;

/// Outcome of minimizing an inequality over a system.
#[derive(Clone, Debug)]
pub struct Validity {
    pub valid: bool,
    /// Proof of `form >= 0` over the system when valid.
    pub certificate: Option<Certificate<Rational>>,
    /// A point of the system on which the form is negative when invalid.
    pub witness: Option<Vec<Rational>>,
}

/// Whether `form >= 0` holds on `system` with `extra` equalities added.
///
/// The form may live on a coordinate space smaller than the system's
/// (projection onto its coordinates); it is matched by variable names.
pub fn check_validity(
    form: &LinearForm<Rational>,
    form_space: &CoordinateSpace,
    system: &HCone<Rational>,
    extra: &[LinearForm<Rational>],
) -> Result<Validity> {
    let objective = transport(form, form_space, &system.space)?;
    let mut cone = system.clone();
    cone.equalities.extend(extra.iter().cloned());
    Ok(match lp_check(&cone, &objective, &Pins::new())? {
        LpOutcome::Optimal {
            value, certificate, ..
        } if value >= Rational::zero() => Validity {
            valid: true,
            certificate: Some(certificate),
            witness: None,
        },
        LpOutcome::Optimal { point, .. } => Validity {
            valid: false,
            certificate: None,
            witness: Some(point),
        },
        LpOutcome::Unbounded { direction, .. } => Validity {
            valid: false,
            certificate: None,
            witness: Some(direction),
        },
        LpOutcome::Infeasible { .. } => {
            return Err(Error::Invalid("a cone always contains the origin".into()))
        }
    })
}

/// Visibilities at which a derivation is retried, mixing the ray with
/// `noise` as `v * ray + (1 - v) * noise`.
#[derive(Clone, Debug, Default)]
pub struct NoiseSchedule {
    pub visibilities: Vec<Rational>,
    pub noise: Vec<Rational>,
}

impl NoiseSchedule {
    /// `v = 1, 19/20, ..., 1/20` toward `noise`.
    pub fn uniform_steps(noise: Vec<Rational>) -> Self {
        NoiseSchedule {
            visibilities: (1..=20).rev().map(|k| Rational::new(k.into(), 20.into())).collect(),
            noise,
        }
    }
}

/// An inequality derived for a ray, valid on the system it came from.
#[derive(Clone, Debug)]
pub struct Derived {
    /// `>= 0` form on the observable space.
    pub form: LinearForm<Rational>,
    /// Value of the form on the source ray (negative).
    pub value: Rational,
    /// Visibility of the noisy point the form was derived from.
    pub visibility: Rational,
}

fn derive_at(
    point: &[Rational],
    sys: &EmbeddedSystem,
    obs: &CoordinateSpace,
) -> Result<Option<LinearForm<Rational>>> {
    let pins = Pins::exact(sys.embedding.iter().zip(point).map(|(&j, v)| (j, v.clone())));
    let sub = match iis_shrink(&sys.cone, &pins) {
        Ok(s) => s,
        Err(Error::Feasible) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut keep = sys.embedding.clone();
    keep.sort_unstable();
    let proj = project_onto(&sub.cone, &keep, &FmConfig::default())?;
    let mut best: Option<(Rational, LinearForm<Rational>)> = None;
    let candidates = proj.inequalities.iter().cloned().chain(
        proj.equalities
            .iter()
            .flat_map(|f| [LinearForm::geq(f.coeffs.clone()), LinearForm::geq(f.negated().coeffs)]),
    );
    for f in candidates {
        let f = transport(&f, &proj.space, obs)?.primitive();
        let v = dot(&f.coeffs, point);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, f));
        }
    }
    match best {
        Some((v, f)) if v < Rational::zero() => Ok(Some(f)),
        _ => Err(Error::Invalid(
            "projection of the infeasible subsystem has no violated row".into(),
        )),
    }
}

/// Derives an inequality valid on `sys` and violated by `ray`.
///
/// The ray is pinned, an irreducible infeasible subsystem is extracted and
/// projected onto the observable coordinates; the most violated projected row
/// is returned. With a schedule, the derivation is repeated on noisier points
/// while they stay infeasible and the last derived form is kept.
pub fn derive_inequality(
    ray: &[Rational],
    sys: &EmbeddedSystem,
    obs: &CoordinateSpace,
    schedule: &NoiseSchedule,
) -> Result<Derived> {
    let mut found = derive_at(ray, sys, obs)?
        .map(|f| (f, Rational::one()))
        .ok_or(Error::Feasible)?;
    for v in &schedule.visibilities {
        if *v >= Rational::one() {
            continue;
        }
        let w = Rational::one() - v;
        let point: Vec<Rational> = ray
            .iter()
            .zip(&schedule.noise)
            .map(|(r, n)| v * r + &w * n)
            .collect();
        match derive_at(&point, sys, obs)? {
            Some(f) => found = (f, v.clone()),
            None => break,
        }
    }
    let (form, visibility) = found;
    let value = dot(&form.coeffs, ray);
    Ok(Derived {
        form,
        value,
        visibility,
    })
}
