//! System identifiers accepted by `check` and `derive`.

use entrocone::classify::Classifier;
use entrocone::exactgeom::HCone;
use entrocone::scenarios::{
    bilocal_constraints, hybrid_system, ic_cone, local_system, ns_cone, BilocalMode, MarginalScenario,
    ScenarioKind, ScenarioSpec,
};
use entrocone::{Error, Rational, Result};

const PARTIES: [&str; 3] = ["A|BC", "B|AC", "C|AB"];

pub enum SystemSpec {
    Local(MarginalScenario),
    Ns(MarginalScenario),
    /// Hybrid systems for the listed local parties.
    Hybrid(MarginalScenario, Vec<usize>),
    Bilocal(MarginalScenario),
    Ic,
}

fn scenario(kind: &str, settings: &str) -> Result<MarginalScenario> {
    format!("{kind}:{settings}").parse::<ScenarioSpec>()?.build()
}

impl SystemSpec {
    /// `local:2x2`, `ns:2x2x2`, `hybrid:A|BC`, `hybrid:2x2x2`, `bilocal:2x2x2`
    /// or `ic`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ic" {
            return Ok(SystemSpec::Ic);
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `kind:settings`, got `{s}`")))?;
        Ok(match kind {
            "local" => SystemSpec::Local(scenario("bell", rest)?),
            "ns" => SystemSpec::Ns(scenario("bell", rest)?),
            "bilocal" | "bilocal-extended" => SystemSpec::Bilocal(scenario("bilocal", rest)?),
            "hybrid" => match PARTIES.iter().position(|p| *p == rest) {
                Some(p) => SystemSpec::Hybrid(scenario("bell", "2x2x2")?, vec![p]),
                None => SystemSpec::Hybrid(scenario("bell", rest)?, vec![0, 1, 2]),
            },
            _ => return Err(Error::Parse(format!("unknown system kind `{kind}`"))),
        })
    }

    /// Like [`SystemSpec::parse`], with a bare kind taking the settings of `sc`.
    pub fn for_scenario(s: &str, sc: &MarginalScenario) -> Result<Self> {
        if s.contains(':') || s == "ic" {
            return Self::parse(s);
        }
        let settings = sc.spec().to_string();
        let settings = settings.split_once(':').map(|(_, r)| r).unwrap_or("");
        match s {
            "local" if sc.kind == ScenarioKind::Bilocal => Ok(SystemSpec::Local(sc.clone())),
            "bilocal" => Ok(SystemSpec::Bilocal(scenario("bilocal", settings)?)),
            _ => Self::parse(&format!("{s}:{settings}")),
        }
    }

    /// Whether the system lives on the observable coordinates only.
    pub fn observable(&self) -> bool {
        matches!(self, SystemSpec::Ns(_) | SystemSpec::Ic)
    }

    pub fn systems(&self) -> Result<Vec<(String, HCone<Rational>)>> {
        Ok(match self {
            SystemSpec::Local(sc) => vec![(format!("local:{}", settings(sc)), local_system(sc)?)],
            SystemSpec::Ns(sc) => vec![(format!("ns:{}", settings(sc)), ns_cone(sc)?)],
            SystemSpec::Ic => vec![("ic".into(), ic_cone()?)],
            SystemSpec::Bilocal(sc) => {
                let mut cone = local_system(sc)?;
                cone.equalities
                    .extend(bilocal_constraints(sc, BilocalMode::Extended)?);
                vec![(format!("bilocal-extended:{}", settings(sc)), cone)]
            }
            SystemSpec::Hybrid(sc, parties) => {
                if Classifier::new(sc)?.hybrids.is_empty() {
                    return Err(Error::Invalid("hybrid systems need three parties".into()));
                }
                parties
                    .iter()
                    .map(|&p| Ok((format!("hybrid:{}", PARTIES[p]), hybrid_system(sc, p)?)))
                    .collect::<Result<Vec<_>>>()?
            }
        })
    }
}

fn settings(sc: &MarginalScenario) -> String {
    sc.settings.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("x")
}
