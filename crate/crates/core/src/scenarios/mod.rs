//! Marginal scenarios and the cones built on them: nonsignaling, local,
//! hybrid local/nonsignaling, bilocal and information causality.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::entropy::{elemental_for, functional, CoordinateSpace, Expr, VarSet};
use crate::error::{Error, Result};
use crate::exactgeom::{project_onto, FmConfig, HCone, LinearForm};
use crate::scalar::{from_rational, Scalar};

/// Measurement `setting` of `party`; party 0 is `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObservableLabel {
    pub party: usize,
    pub setting: usize,
}

impl ObservableLabel {
    /// `A0`, `B1`, ... ; a party with a single setting is just its letter.
    pub fn name(&self, settings_of_party: usize) -> String {
        let letter = (b'A' + self.party as u8) as char;
        if settings_of_party == 1 {
            letter.to_string()
        } else {
            format!("{letter}{}", self.setting)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Bell,
    Bilocal,
    #[serde(rename = "ic")]
    InformationCausality,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BilocalMode {
    /// `I(A_x : C_z) = 0` on the observable coordinates.
    #[default]
    Observable,
    /// `H(A_all, C_all) = H(A_all) + H(C_all)` on the joint space.
    Extended,
}

impl FromStr for BilocalMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "observable" => Ok(BilocalMode::Observable),
            "extended" => Ok(BilocalMode::Extended),
            _ => Err(Error::Parse(format!("unknown bilocal mode `{s}`"))),
        }
    }
}

/// Serializable description of a scenario, also written as `bell:2x2`,
/// `bilocal:2x2x2` or `ic`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    #[serde(default)]
    pub settings: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bilocal_mode: Option<BilocalMode>,
}

impl ScenarioSpec {
    pub fn bell(settings: &[usize]) -> Self {
        ScenarioSpec {
            kind: ScenarioKind::Bell,
            settings: settings.to_vec(),
            bilocal_mode: None,
        }
    }

    pub fn build(&self) -> Result<MarginalScenario> {
        match self.kind {
            ScenarioKind::Bell => bell_scenario(&self.settings),
            ScenarioKind::Bilocal => bilocal_scenario(&self.settings),
            ScenarioKind::InformationCausality => Ok(ic_scenario()),
        }
    }
}

impl FromStr for ScenarioSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ic" {
            return Ok(ScenarioSpec {
                kind: ScenarioKind::InformationCausality,
                settings: vec![2, 2, 1],
                bilocal_mode: None,
            });
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `kind:settings`, got `{s}`")))?;
        let kind = match kind {
            "bell" => ScenarioKind::Bell,
            "bilocal" => ScenarioKind::Bilocal,
            _ => return Err(Error::Parse(format!("unknown scenario kind `{kind}`"))),
        };
        let settings = rest
            .split('x')
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&k| k > 0)
                    .ok_or_else(|| Error::Parse(format!("bad setting count `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScenarioSpec {
            kind,
            settings,
            bilocal_mode: (kind == ScenarioKind::Bilocal).then_some(BilocalMode::Observable),
        })
    }
}

impl fmt::Display for ScenarioSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.settings.iter().map(|k| k.to_string()).collect();
        match self.kind {
            ScenarioKind::InformationCausality => write!(f, "ic"),
            ScenarioKind::Bell => write!(f, "bell:{}", dims.join("x")),
            ScenarioKind::Bilocal => write!(f, "bilocal:{}", dims.join("x")),
        }
    }
}

/// Observables, their jointly measurable contexts and the two coordinate
/// spaces: the observable one (all subsets of contexts) and the full power set.
#[derive(Clone, Debug)]
pub struct MarginalScenario {
    pub kind: ScenarioKind,
    pub settings: Vec<usize>,
    pub observables: Vec<ObservableLabel>,
    pub names: Vec<String>,
    pub contexts: Vec<VarSet>,
    pub space: Arc<CoordinateSpace>,
    pub full: Arc<CoordinateSpace>,
}

impl MarginalScenario {
    fn assemble(
        kind: ScenarioKind,
        settings: Vec<usize>,
        observables: Vec<ObservableLabel>,
        names: Vec<String>,
        contexts: Vec<VarSet>,
    ) -> Self {
        let space = Arc::new(CoordinateSpace::from_contexts(names.clone(), &contexts));
        let full = Arc::new(CoordinateSpace::power_set(names.clone()));
        MarginalScenario {
            kind,
            settings,
            observables,
            names,
            contexts,
            space,
            full,
        }
    }

    pub fn parties(&self) -> usize {
        self.settings.len()
    }

    pub fn n_vars(&self) -> usize {
        self.names.len()
    }

    pub fn spec(&self) -> ScenarioSpec {
        ScenarioSpec {
            kind: self.kind,
            settings: self.settings.clone(),
            bilocal_mode: None,
        }
    }

    /// Index of the variable measured by `party` under `setting`.
    pub fn var(&self, party: usize, setting: usize) -> Option<usize> {
        self.observables
            .iter()
            .position(|o| o.party == party && o.setting == setting)
    }

    /// All variables belonging to `party`.
    pub fn party_vars(&self, party: usize) -> VarSet {
        VarSet::from_indices(
            self.observables
                .iter()
                .enumerate()
                .filter(|(_, o)| o.party == party)
                .map(|(i, _)| i),
        )
    }

    /// Position of each observable coordinate inside the full power-set space.
    pub fn observable_embedding(&self) -> Vec<usize> {
        self.space
            .embedding_into(&self.full)
            .expect("observable subsets exist in the power set")
    }
}

fn observables_for(settings: &[usize]) -> (Vec<ObservableLabel>, Vec<String>) {
    let mut obs = Vec::new();
    let mut names = Vec::new();
    for (party, &m) in settings.iter().enumerate() {
        for setting in 0..m {
            let o = ObservableLabel { party, setting };
            names.push(o.name(m));
            obs.push(o);
        }
    }
    (obs, names)
}

/// One context per choice of one setting for every party, in lexicographic
/// order of the setting tuple.
fn product_contexts(settings: &[usize], obs: &[ObservableLabel]) -> Vec<VarSet> {
    let tuples = crate::boxes::radix_tuples(settings);
    tuples
        .iter()
        .map(|x| {
            VarSet::from_indices(
                obs.iter()
                    .enumerate()
                    .filter(|(_, o)| x[o.party] == o.setting)
                    .map(|(i, _)| i),
            )
        })
        .collect()
}

fn check_settings(settings: &[usize]) -> Result<()> {
    if settings.is_empty() || settings.contains(&0) {
        return Err(Error::Invalid("need at least one party with at least one setting".into()));
    }
    if settings.iter().sum::<usize>() > 20 {
        return Err(Error::Invalid("too many observables for a power-set space".into()));
    }
    Ok(())
}

pub fn bell_scenario(settings: &[usize]) -> Result<MarginalScenario> {
    check_settings(settings)?;
    let (obs, names) = observables_for(settings);
    let contexts = product_contexts(settings, &obs);
    Ok(MarginalScenario::assemble(
        ScenarioKind::Bell,
        settings.to_vec(),
        obs,
        names,
        contexts,
    ))
}

/// Three parties in a line; `A` and `C` share no source.
pub fn bilocal_scenario(settings: &[usize]) -> Result<MarginalScenario> {
    if settings.len() != 3 {
        return Err(Error::Invalid("bilocal scenarios have exactly three parties".into()));
    }
    let mut sc = bell_scenario(settings)?;
    sc.kind = ScenarioKind::Bilocal;
    Ok(sc)
}

/// Variables `X0, X1, G0, G1, M` with contexts `{X0,G0}, {X1,G1}, {M}`.
pub fn ic_scenario() -> MarginalScenario {
    let obs = vec![
        ObservableLabel { party: 0, setting: 0 },
        ObservableLabel { party: 0, setting: 1 },
        ObservableLabel { party: 1, setting: 0 },
        ObservableLabel { party: 1, setting: 1 },
        ObservableLabel { party: 2, setting: 0 },
    ];
    let names = ["X0", "X1", "G0", "G1", "M"].map(String::from).to_vec();
    let contexts = vec![
        VarSet::from_indices([0, 2]),
        VarSet::from_indices([1, 3]),
        VarSet::singleton(4),
    ];
    MarginalScenario::assemble(
        ScenarioKind::InformationCausality,
        vec![2, 2, 1],
        obs,
        names,
        contexts,
    )
}

/// Union of the elemental systems of `contexts`, merged in `space`.
pub fn union_of_elementals<S: Scalar>(
    contexts: &[VarSet],
    space: &Arc<CoordinateSpace>,
) -> Result<HCone<S>> {
    let mut cone = HCone::new(space.clone());
    for &c in contexts {
        let part = elemental_for::<S>(c, space)?;
        cone.inequalities.extend(part.inequalities);
    }
    cone.dedup();
    Ok(cone.with_normalization())
}

/// Rewrites a form on `from` into `to`, matching subsets by variable name.
pub fn transport<S: Scalar>(
    form: &LinearForm<S>,
    from: &CoordinateSpace,
    to: &CoordinateSpace,
) -> Result<LinearForm<S>> {
    let mut coeffs = vec![S::zero(); to.dim()];
    for (i, c) in form.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let names = from.names(from.set(i));
        coeffs[to.index_of_names(&names)?] = c.clone();
    }
    Ok(LinearForm {
        coeffs,
        relation: form.relation,
    })
}

fn rational_form<S: Scalar>(expr: &Expr, space: &CoordinateSpace) -> Result<Vec<S>> {
    Ok(functional(expr, space)?
        .coeffs
        .iter()
        .map(from_rational)
        .collect())
}

/// Intersection of the per-context Shannon cones on the observable space.
pub fn ns_cone<S: Scalar>(sc: &MarginalScenario) -> Result<HCone<S>> {
    union_of_elementals(&sc.contexts, &sc.space)
}

/// Shannon cone of all observables jointly, on the full power set.
pub fn local_system<S: Scalar>(sc: &MarginalScenario) -> Result<HCone<S>> {
    let all = VarSet::from_indices(0..sc.n_vars());
    elemental_for(all, &sc.full)
}

/// Contexts of the hybrid model in which `local_party` holds all its
/// observables jointly with one observable of each other party.
pub fn hybrid_contexts(sc: &MarginalScenario, local_party: usize) -> Result<Vec<VarSet>> {
    if local_party >= sc.parties() {
        return Err(Error::Invalid(format!("no party {local_party}")));
    }
    let local = sc.party_vars(local_party);
    let mut out: Vec<VarSet> = Vec::new();
    for c in &sc.contexts {
        let c = c.union(local);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// The local-party hybrid system on the subsets of its contexts.
pub fn hybrid_system<S: Scalar>(sc: &MarginalScenario, local_party: usize) -> Result<HCone<S>> {
    let contexts = hybrid_contexts(sc, local_party)?;
    let space = Arc::new(CoordinateSpace::from_contexts(sc.names.clone(), &contexts));
    union_of_elementals(&contexts, &space)
}

fn end_blocks(sc: &MarginalScenario) -> Result<(Vec<String>, Vec<String>)> {
    if sc.parties() != 3 {
        return Err(Error::Invalid("bilocality needs three parties".into()));
    }
    Ok((
        sc.full.names(sc.party_vars(0)),
        sc.full.names(sc.party_vars(2)),
    ))
}

/// Independence of the end parties, written on the observable space
/// (`Observable`) or on the full power set (`Extended`).
pub fn bilocal_constraints<S: Scalar>(
    sc: &MarginalScenario,
    mode: BilocalMode,
) -> Result<Vec<LinearForm<S>>> {
    let (a, c) = end_blocks(sc)?;
    match mode {
        BilocalMode::Observable => {
            let mut out = Vec::new();
            for x in &a {
                for z in &c {
                    let e = Expr::i(&[x.as_str()], &[z.as_str()]);
                    out.push(LinearForm::eq(rational_form(&e, &sc.space)?));
                }
            }
            Ok(out)
        }
        BilocalMode::Extended => {
            let a: Vec<&str> = a.iter().map(String::as_str).collect();
            let c: Vec<&str> = c.iter().map(String::as_str).collect();
            let e = Expr::i(&a, &c);
            Ok(vec![LinearForm::eq(rational_form(&e, &sc.full)?)])
        }
    }
}

/// Nonsignaling bilocal cone on the observable space.
///
/// `Extended` intersects the nonsignaling cone with the observable projection
/// of the end parties' joint Shannon cone under block independence.
pub fn bilocal_cone<S: Scalar>(sc: &MarginalScenario, mode: BilocalMode) -> Result<HCone<S>> {
    let mut cone = ns_cone::<S>(sc)?;
    match mode {
        BilocalMode::Observable => {
            cone.equalities.extend(bilocal_constraints(sc, mode)?);
        }
        BilocalMode::Extended => {
            let block = sc.party_vars(0).union(sc.party_vars(2));
            let bspace = Arc::new(CoordinateSpace::canonical(sc.names.clone(), block.subsets()));
            let mut ext = elemental_for::<S>(block, &bspace)?;
            for f in bilocal_constraints::<S>(sc, mode)? {
                ext.equalities.push(transport(&f, &sc.full, &bspace)?);
            }
            let keep: Vec<usize> = (0..bspace.dim())
                .filter(|&i| sc.space.index_of(bspace.set(i)).is_some())
                .collect();
            let proj = project_onto(&ext, &keep, &FmConfig::default())?;
            for f in &proj.inequalities {
                cone.inequalities.push(transport(f, &proj.space, &sc.space)?);
            }
            for f in &proj.equalities {
                cone.equalities.push(transport(f, &proj.space, &sc.space)?);
            }
        }
    }
    cone.dedup();
    Ok(cone)
}

/// Context cones of `{X0,G0}, {X1,G1}, {M}` plus `H(M) >= I(X_s : G_s)`.
pub fn ic_cone<S: Scalar>() -> Result<HCone<S>> {
    let sc = ic_scenario();
    let mut cone = ns_cone::<S>(&sc)?;
    for s in 0..2 {
        let (x, g) = (format!("X{s}"), format!("G{s}"));
        let e = Expr::h(&["M"]) - Expr::i(&[x.as_str()], &[g.as_str()]);
        cone.add_inequality(rational_form(&e, &sc.space)?)?;
    }
    Ok(cone)
}
