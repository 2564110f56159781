use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactgeom::{minimize, AffineProgram, HCone, Pins, RowRef};
use crate::scalar::{rat, Rational, Scalar};
use crate::scenarios::{
    bilocal_constraints, hybrid_system, local_system, BilocalMode, MarginalScenario, ScenarioKind,
};

/// Half-width of the band a floating pin is widened into.
pub const FLOAT_PIN_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Local,
    Nonlocal,
    Gtnl,
    Bilocal,
    Nonbilocal,
    GenuinelyNonbilocal,
    IcViolating,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Local => "local",
            Label::Nonlocal => "nonlocal",
            Label::Gtnl => "gtnl",
            Label::Bilocal => "bilocal",
            Label::Nonbilocal => "nonbilocal",
            Label::GenuinelyNonbilocal => "genuinely_nonbilocal",
            Label::IcViolating => "ic_violating",
        }
    }
}

/// A point of the observable space: an exact ray or a floating entropy vector.
#[derive(Clone, Copy, Debug)]
pub enum Point<'a> {
    Exact(&'a [Rational]),
    Float(&'a [f64]),
}

impl Point<'_> {
    fn len(&self) -> usize {
        match self {
            Point::Exact(v) => v.len(),
            Point::Float(v) => v.len(),
        }
    }

    /// Exact value or `(value - tol, value + tol)`.
    fn pin(&self, k: usize) -> (Rational, Option<Rational>) {
        match self {
            Point::Exact(v) => (v[k].clone(), None),
            Point::Float(v) => (
                Rational::from_f64_lossy(v[k]),
                Some(Rational::from_f64_lossy(FLOAT_PIN_TOLERANCE)),
            ),
        }
    }

    fn pins(&self, embedding: &[usize]) -> Pins<Rational> {
        let mut pins = Pins::new();
        for (k, &j) in embedding.iter().enumerate() {
            match self.pin(k) {
                (v, None) => pins.pin(j, v),
                (v, Some(t)) => pins.band(j, &v - &t, &v + &t),
            }
        }
        pins
    }
}

/// A system together with the positions of the observable coordinates in it.
#[derive(Clone, Debug)]
pub struct EmbeddedSystem {
    pub cone: HCone<Rational>,
    pub embedding: Vec<usize>,
}

impl EmbeddedSystem {
    pub fn new(cone: HCone<Rational>, sc: &MarginalScenario) -> Result<Self> {
        let embedding = sc.space.embedding_into(&cone.space)?;
        Ok(EmbeddedSystem { cone, embedding })
    }

    pub fn contains(&self, p: Point) -> Result<bool> {
        if p.len() != self.embedding.len() {
            return Err(Error::DimensionMismatch {
                expected: self.embedding.len(),
                found: p.len(),
            });
        }
        let prog = AffineProgram::from_cone(&self.cone, &p.pins(&self.embedding))?;
        Ok(crate::exactgeom::lp::check_feasible(&prog).is_ok())
    }
}

/// Precomputed systems for classifying points of one scenario.
#[derive(Clone, Debug)]
pub struct Classifier {
    pub scenario: MarginalScenario,
    pub local: EmbeddedSystem,
    pub hybrids: Vec<EmbeddedSystem>,
    pub bilocal: Option<EmbeddedSystem>,
}

impl Classifier {
    pub fn new(sc: &MarginalScenario) -> Result<Self> {
        let local = EmbeddedSystem::new(local_system(sc)?, sc)?;
        let tripartite = sc.parties() == 3 && sc.kind != ScenarioKind::InformationCausality;
        let hybrids = if tripartite {
            (0..3)
                .map(|p| EmbeddedSystem::new(hybrid_system(sc, p)?, sc))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let bilocal = if tripartite {
            let mut cone = local.cone.clone();
            cone.equalities
                .extend(bilocal_constraints(sc, BilocalMode::Extended)?);
            Some(EmbeddedSystem::new(cone, sc)?)
        } else {
            None
        };
        Ok(Classifier {
            scenario: sc.clone(),
            local,
            hybrids,
            bilocal,
        })
    }

    /// Verdicts for scenarios with four or more variables come from the
    /// Shannon outer approximation of the entropy cone.
    pub fn shannon_relaxation(&self) -> bool {
        self.scenario.n_vars() >= 4
    }

    pub fn is_local(&self, p: Point) -> Result<bool> {
        self.local.contains(p)
    }

    pub fn is_bilocal(&self, p: Point) -> Result<bool> {
        self.bilocal
            .as_ref()
            .ok_or_else(|| Error::Invalid("bilocality needs three parties".into()))?
            .contains(p)
    }

    /// Membership in the hybrid model where `party` is the local one.
    pub fn in_hybrid(&self, p: Point, party: usize) -> Result<bool> {
        self.hybrids
            .get(party)
            .ok_or_else(|| Error::Invalid("hybrid models need three parties".into()))?
            .contains(p)
    }

    /// For an extremal ray of the nonsignaling cone: outside every hybrid cone.
    pub fn is_gtnl_extremal(&self, p: Point) -> Result<bool> {
        for party in 0..self.hybrids.len().max(1) {
            if self.in_hybrid(p, party)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `p = h_1 + h_2 + h_3` with each `h_i` in its hybrid system.
    pub fn gtnl_membership_general(&self, p: Point) -> Result<bool> {
        if self.hybrids.is_empty() {
            return Err(Error::Invalid("hybrid models need three parties".into()));
        }
        let n = self.scenario.space.dim();
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        let dim: usize = self.hybrids.iter().map(|h| h.cone.dim()).sum();
        let mut prog = AffineProgram::new(dim);
        let (mut off, mut ni, mut ne) = (0, 0, 0);
        let shift = |coeffs: &[Rational], off: usize| {
            let mut v = vec![Rational::from_integer(0.into()); dim];
            v[off..off + coeffs.len()].clone_from_slice(coeffs);
            v
        };
        for h in &self.hybrids {
            for f in &h.cone.inequalities {
                prog.push_inequality(shift(&f.coeffs, off), rat(0, 1), RowRef::Inequality(ni));
                ni += 1;
            }
            for f in &h.cone.equalities {
                prog.push_equality(shift(&f.coeffs, off), rat(0, 1), RowRef::Equality(ne));
                ne += 1;
            }
            off += h.cone.dim();
        }
        for k in 0..n {
            let mut row = vec![rat(0, 1); dim];
            let mut off = 0;
            for h in &self.hybrids {
                row[off + h.embedding[k]] = rat(1, 1);
                off += h.cone.dim();
            }
            match p.pin(k) {
                (v, None) => prog.push_equality(row, -v, RowRef::Extra(k)),
                (v, Some(t)) => {
                    let neg: Vec<Rational> = row.iter().map(|x| -x).collect();
                    prog.push_inequality(row, -(&v - &t), RowRef::Extra(2 * k));
                    prog.push_inequality(neg, &v + &t, RowRef::Extra(2 * k + 1));
                }
            }
        }
        Ok(minimize(&prog, &vec![rat(0, 1); dim]).is_feasible())
    }

    /// Labels of an exact ray. `extremal` enables the per-cone shortcut for
    /// genuine tripartite nonlocality; otherwise the joint program is used.
    pub fn labels(&self, ray: &[Rational], extremal: bool) -> Result<Vec<Label>> {
        let p = Point::Exact(ray);
        let mut out = Vec::new();
        if self.scenario.kind == ScenarioKind::InformationCausality {
            let ic = super::registry::named_inequality("ic")?;
            let f = ic.expression_form(&self.scenario.space)?;
            if ic.is_violated(&f.eval(ray)) {
                out.push(Label::IcViolating);
            }
            return Ok(out);
        }
        let local = self.is_local(p)?;
        out.push(if local { Label::Local } else { Label::Nonlocal });
        if self.scenario.kind == ScenarioKind::Bilocal {
            let bilocal = self.is_bilocal(p)?;
            out.push(if bilocal { Label::Bilocal } else { Label::Nonbilocal });
            if local && !bilocal {
                out.push(Label::GenuinelyNonbilocal);
            }
        } else if !self.hybrids.is_empty() && !local {
            let gtnl = if extremal {
                self.is_gtnl_extremal(p)?
            } else {
                !self.gtnl_membership_general(p)?
            };
            if gtnl {
                out.push(Label::Gtnl);
            }
        }
        Ok(out)
    }
}

/// Feasibility of the joint Shannon system of `sc` with the ray pinned.
pub fn is_local(ray: &[Rational], sc: &MarginalScenario) -> Result<bool> {
    EmbeddedSystem::new(local_system(sc)?, sc)?.contains(Point::Exact(ray))
}

/// Feasibility of the joint Shannon system plus end-party independence.
pub fn is_bilocal(ray: &[Rational], sc: &MarginalScenario) -> Result<bool> {
    let mut cone: HCone<Rational> = local_system(sc)?;
    cone.equalities
        .extend(bilocal_constraints(sc, BilocalMode::Extended)?);
    EmbeddedSystem::new(cone, sc)?.contains(Point::Exact(ray))
}
