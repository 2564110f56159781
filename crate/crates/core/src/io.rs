//! JSON artifacts for cones, ray sets and entropy vectors.
//!
//! Scalars are written as strings (`"3"`, `"-1/2"`, or 17 significant digits
//! for `f64`) and the coordinate space as one name list per coordinate, in the
//! space's own order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classify::ClassEntry;
use crate::entropy::{CoordinateSpace, EntropyVector};
use crate::error::{Error, Result};
use crate::exactgeom::{HCone, LinearForm, VCone};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub variables: Vec<String>,
    pub space: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inequalities: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equalities: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassEntry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyVectorJson {
    pub variables: Vec<String>,
    pub space: Vec<Vec<String>>,
    pub values: Vec<String>,
}

fn texts<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

fn parse_row<S: Scalar>(row: &[String], dim: usize) -> Result<Vec<S>> {
    if row.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: row.len(),
        });
    }
    row.iter()
        .map(|t| S::parse(t).ok_or_else(|| Error::Parse(format!("not a number: {t:?}"))))
        .collect()
}

fn space_json(space: &CoordinateSpace) -> (Vec<String>, Vec<Vec<String>>) {
    (
        space.variables().to_vec(),
        space.sets().iter().map(|&s| space.names(s)).collect(),
    )
}

/// Rebuilds a coordinate space in the listed order.
pub fn space_from_json(variables: &[String], space: &[Vec<String>]) -> Result<Arc<CoordinateSpace>> {
    let probe = CoordinateSpace::with_order(variables.to_vec(), Vec::new());
    let sets = space
        .iter()
        .map(|names| probe.set_from_names(names))
        .collect::<Result<Vec<_>>>()?;
    let n = sets.len();
    let out = CoordinateSpace::with_order(variables.to_vec(), sets);
    if out.dim() != n {
        return Err(Error::Parse("coordinate listed twice".into()));
    }
    Ok(Arc::new(out))
}

impl ConeJson {
    pub fn from_hcone<S: Scalar>(cone: &HCone<S>) -> Self {
        let (variables, space) = space_json(&cone.space);
        ConeJson {
            variables,
            space,
            inequalities: cone.inequalities.iter().map(|f| texts(&f.coeffs)).collect(),
            equalities: cone.equalities.iter().map(|f| texts(&f.coeffs)).collect(),
            ..Default::default()
        }
    }

    pub fn from_vcone<S: Scalar>(cone: &VCone<S>) -> Self {
        let (variables, space) = space_json(&cone.space);
        ConeJson {
            variables,
            space,
            rays: cone.rays.iter().map(|r| texts(r)).collect(),
            lineality: cone.lineality.iter().map(|r| texts(r)).collect(),
            ..Default::default()
        }
    }

    pub fn coordinate_space(&self) -> Result<Arc<CoordinateSpace>> {
        space_from_json(&self.variables, &self.space)
    }

    pub fn hcone<S: Scalar>(&self) -> Result<HCone<S>> {
        let space = self.coordinate_space()?;
        let d = space.dim();
        let mut cone = HCone::new(space);
        for r in &self.inequalities {
            cone.inequalities.push(LinearForm::geq(parse_row(r, d)?));
        }
        for r in &self.equalities {
            cone.equalities.push(LinearForm::eq(parse_row(r, d)?));
        }
        Ok(cone)
    }

    pub fn vcone<S: Scalar>(&self) -> Result<VCone<S>> {
        let space = self.coordinate_space()?;
        let d = space.dim();
        let mut cone = VCone::new(space, Vec::new());
        for r in &self.rays {
            cone.rays.push(parse_row(r, d)?);
        }
        for r in &self.lineality {
            cone.lineality.push(parse_row(r, d)?);
        }
        Ok(cone)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl EntropyVectorJson {
    pub fn from_vector<S: Scalar>(h: &EntropyVector<S>) -> Self {
        let (variables, space) = space_json(&h.space);
        EntropyVectorJson {
            variables,
            space,
            values: texts(&h.values),
        }
    }

    pub fn vector<S: Scalar>(&self) -> Result<EntropyVector<S>> {
        let space = space_from_json(&self.variables, &self.space)?;
        let values = parse_row(&self.values, space.dim())?;
        EntropyVector::new(space, values)
    }
}
