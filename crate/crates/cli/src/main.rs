use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use entrocone::boxes::{optimize_ghz_violation, scan_csv, OptimizerConfig};
use entrocone::classify::{
    check_validity, classify_rays, derive_inequality, named_inequality, orbit_classes, verify_all,
    ClassEntry, ClassificationReport, Classifier, EmbeddedSystem, Label, NoiseSchedule,
    SymmetryGroup,
};
use entrocone::entropy::CoordinateSpace;
use entrocone::exactgeom::{dd_enumerate, DdConfig, DdProgress, HCone, LinearForm, VCone};
use entrocone::io::{ConeJson, EntropyVectorJson};
use entrocone::scenarios::{
    bilocal_cone, ic_cone, ns_cone, BilocalMode, MarginalScenario, ScenarioKind, ScenarioSpec,
};
use entrocone::{Error, Rational};

mod system;

use system::SystemSpec;

#[derive(Parser)]
#[command(name = "entrocone", version, about = "Entropic cones of correlation scenarios")]
struct Cli {
    /// Diagnostics on stderr as JSON lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for classification and optimizer restarts.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a scenario: observables, contexts and coordinates.
    Scenario {
        /// `bell:2x2`, `bell:3x3`, `bell:2x2x2`, `bilocal:2x2x2` or `ic`.
        spec: String,
    },
    /// Build a cone in H-representation.
    Cone(ConeArgs),
    /// Enumerate the extremal rays of a cone.
    Rays(RaysArgs),
    /// Label the ray classes of a ray file.
    Classify(ClassifyArgs),
    /// Decide whether an inequality holds on a system.
    Check(CheckArgs),
    /// Derive an inequality violated by a ray.
    Derive(DeriveArgs),
    /// Replay the built-in certificates.
    Certify(CertifyArgs),
    /// Optimize the GHZ violation for a range of dimensions.
    GhzScan(GhzArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ns,
    Bilocal,
    Ic,
}

#[derive(Args)]
struct ConeArgs {
    #[arg(long)]
    scenario: String,
    #[arg(long, value_enum, default_value = "ns")]
    family: Family,
    /// Bilocality constraint mode for `--family bilocal`.
    #[arg(long, default_value = "observable")]
    mode: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupChoice {
    Auto,
    None,
}

#[derive(Args)]
struct RaysArgs {
    cone: PathBuf,
    /// Group the rays into symmetry classes.
    #[arg(long)]
    classes: bool,
    #[arg(long, value_enum, default_value = "auto")]
    group: GroupChoice,
    /// Stop when the intermediate ray count exceeds this.
    #[arg(long)]
    max_rays: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    rays: PathBuf,
    /// Comma-separated subset of `local,gtnl,bilocal,ic`.
    #[arg(long, default_value = "local,gtnl,bilocal,ic")]
    labels: String,
    /// Use the joint hybrid program even for extremal rays.
    #[arg(long)]
    general: bool,
    #[arg(long, value_enum, default_value = "auto")]
    group: GroupChoice,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    inequality: String,
    /// `local:2x2`, `ns:2x2x2`, `hybrid:A|BC`, `bilocal:2x2x2`, `ic`, ...
    #[arg(long)]
    system: String,
}

#[derive(Args)]
struct DeriveArgs {
    /// Entropy vector file, or a ray file together with `--index`.
    #[arg(long)]
    ray: PathBuf,
    #[arg(long)]
    index: Option<usize>,
    /// Scenario of the ray when the file does not name one.
    #[arg(long)]
    scenario: Option<String>,
    /// `local`, `hybrid`, `hybrid:A|BC`, `bilocal`, or a full system id.
    #[arg(long)]
    system: String,
    /// Retry at decreasing visibilities toward uniform noise.
    #[arg(long)]
    noise: bool,
}

#[derive(Args)]
struct CertifyArgs {
    /// Replay every built-in certificate.
    #[arg(long)]
    all: bool,
    /// Replay one certificate by id.
    id: Option<String>,
}

#[derive(Args)]
struct GhzArgs {
    #[arg(long, default_value_t = 2)]
    d_min: usize,
    #[arg(long, default_value_t = 40)]
    d_max: usize,
    #[arg(long, default_value_t = 24)]
    starts: usize,
    #[arg(long, default_value_t = OptimizerConfig::default().seed)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Ctx {
    json: bool,
}

impl Ctx {
    fn note(&self, msg: &str) {
        if self.json {
            eprintln!("{}", serde_json::json!({ "level": "info", "message": msg }));
        } else {
            eprintln!("{msg}");
        }
    }

    fn fail(&self, e: &Error) {
        if self.json {
            eprintln!("{}", serde_json::json!({ "level": "error", "message": e.to_string() }));
        } else {
            eprintln!("error: {e}");
        }
    }
}

type Res<T> = Result<T, Error>;

fn write_out(out: Option<&Path>, text: &str) -> Res<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut o = io::stdout().lock();
            o.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                o.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Res<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn scenario_of(s: &str) -> Res<MarginalScenario> {
    s.parse::<ScenarioSpec>()?.build()
}

fn run(cli: Cli, ctx: &Ctx) -> Res<()> {
    match cli.command {
        Command::Scenario { spec } => scenario_cmd(&spec),
        Command::Cone(a) => cone_cmd(a),
        Command::Rays(a) => rays_cmd(a, ctx),
        Command::Classify(a) => classify_cmd(a, ctx),
        Command::Check(a) => check_cmd(a),
        Command::Derive(a) => derive_cmd(a, ctx),
        Command::Certify(a) => certify_cmd(a),
        Command::GhzScan(a) => ghz_cmd(a, ctx),
    }
}

#[derive(Serialize)]
struct ScenarioInfo {
    spec: ScenarioSpec,
    name: String,
    observables: Vec<String>,
    contexts: Vec<Vec<String>>,
    coordinates: Vec<String>,
    hidden_coordinates: usize,
}

fn scenario_cmd(spec: &str) -> Res<()> {
    let sc = scenario_of(spec)?;
    let info = ScenarioInfo {
        spec: sc.spec(),
        name: sc.spec().to_string(),
        observables: sc.names.clone(),
        contexts: sc.contexts.iter().map(|&c| sc.space.names(c)).collect(),
        coordinates: (0..sc.space.dim()).map(|k| sc.space.label(k)).collect(),
        hidden_coordinates: sc.full.dim(),
    };
    write_out(None, &to_json(&info)?)
}

fn cone_cmd(a: ConeArgs) -> Res<()> {
    let sc = scenario_of(&a.scenario)?;
    let (cone, family): (HCone<Rational>, String) = match a.family {
        Family::Ns => (ns_cone(&sc)?, "ns".into()),
        Family::Ic => {
            if sc.kind != ScenarioKind::InformationCausality {
                return Err(Error::Invalid("the ic family needs the ic scenario".into()));
            }
            (ic_cone()?, "ic".into())
        }
        Family::Bilocal => {
            let mode: BilocalMode = a.mode.parse()?;
            let name = format!("bilocal-{}", a.mode);
            (bilocal_cone(&sc, mode)?, name)
        }
    };
    let mut j = ConeJson::from_hcone(&cone);
    j.scenario = Some(sc.spec().to_string());
    j.family = Some(family);
    write_out(a.out.as_deref(), &j.to_json()?)
}

fn read_cone(p: &Path) -> Res<ConeJson> {
    ConeJson::from_json(&fs::read_to_string(p)?)
}

fn group_for(choice: GroupChoice, scenario: Option<&MarginalScenario>, space: Arc<CoordinateSpace>) -> Res<SymmetryGroup> {
    match (choice, scenario) {
        (GroupChoice::Auto, Some(sc)) => SymmetryGroup::for_scenario(sc, space),
        _ => Ok(SymmetryGroup::trivial(space)),
    }
}

fn file_scenario(j: &ConeJson) -> Res<Option<MarginalScenario>> {
    j.scenario.as_deref().map(scenario_of).transpose()
}

fn rays_cmd(a: RaysArgs, ctx: &Ctx) -> Res<()> {
    let input = read_cone(&a.cone)?;
    let cone: HCone<Rational> = input.hcone()?;
    let json = ctx.json;
    let mut cfg = DdConfig {
        progress: Some(Arc::new(move |p: DdProgress| {
            if json {
                eprintln!(
                    "{}",
                    serde_json::json!({ "level": "progress", "rows": p.processed, "of": p.total, "rays": p.rays })
                );
            } else {
                eprintln!("row {}/{}: {} rays", p.processed, p.total, p.rays);
            }
        })),
        ..Default::default()
    };
    if let Some(m) = a.max_rays {
        cfg.max_rays = Some(m);
    }
    let v = dd_enumerate(&cone, &cfg)?;
    let mut out = ConeJson::from_vcone(&v);
    out.scenario = input.scenario.clone();
    out.family = input.family.clone();
    if a.classes {
        let sc = file_scenario(&input)?;
        let g = group_for(a.group, sc.as_ref(), v.space.clone())?;
        out.group_order = Some(g.order());
        out.classes = Some(
            orbit_classes(&v, &g)
                .into_iter()
                .map(|c| ClassEntry {
                    representative: c.representative.iter().map(|x| x.to_string()).collect(),
                    orbit_size: c.orbit_size,
                    labels: Vec::new(),
                })
                .collect(),
        );
        ctx.note(&format!("{} rays in {} classes", v.rays.len(), out.classes.as_ref().map_or(0, Vec::len)));
    }
    write_out(a.out.as_deref(), &out.to_json()?)
}

fn label_filter(spec: &str) -> Res<Vec<Label>> {
    let mut keep = Vec::new();
    for t in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match t {
            "local" => keep.extend([Label::Local, Label::Nonlocal]),
            "gtnl" => keep.push(Label::Gtnl),
            "bilocal" => keep.extend([Label::Bilocal, Label::Nonbilocal, Label::GenuinelyNonbilocal]),
            "ic" => keep.push(Label::IcViolating),
            _ => return Err(Error::Parse(format!("unknown label group `{t}`"))),
        }
    }
    Ok(keep)
}

fn classify_cmd(a: ClassifyArgs, ctx: &Ctx) -> Res<()> {
    let keep = label_filter(&a.labels)?;
    let input = read_cone(&a.rays)?;
    let sc = file_scenario(&input)?
        .ok_or_else(|| Error::Invalid("the ray file does not name its scenario".into()))?;
    let rays: VCone<Rational> = input.vcone()?;
    let extremal = !a.general && input.family.as_deref() == Some("ns");
    let classifier = Classifier::new(&sc)?;
    let group = group_for(a.group, Some(&sc), rays.space.clone())?;
    let json = ctx.json;
    let progress = Arc::new(move |done: usize, total: usize| {
        if done % 50 == 0 || done == total {
            if json {
                eprintln!("{}", serde_json::json!({ "level": "progress", "classified": done, "of": total }));
            } else {
                eprintln!("classified {done}/{total}");
            }
        }
    });
    let mut classes = classify_rays(&rays, &classifier, &group, extremal, Some(progress))?;
    for c in &mut classes {
        c.labels.retain(|l| keep.contains(l));
    }
    let report = ClassificationReport::new(&sc, &group, &classes, classifier.shannon_relaxation());
    write_out(a.out.as_deref(), &to_json(&report)?)
}

fn check_cmd(a: CheckArgs) -> Res<()> {
    let ineq = named_inequality(&a.inequality)?;
    let isc = ineq.build_scenario()?;
    let form = ineq.form(&isc.space)?;
    let sys = SystemSpec::parse(&a.system)?;
    let mut out = String::new();
    for (name, cone) in sys.systems()? {
        let v = check_validity(&form, &isc.space, &cone, &[])?;
        if v.valid {
            out += &format!("{}: valid on {name}\n", ineq.id);
            if let Some(cert) = &v.certificate {
                for (r, m) in &cert.terms {
                    if let Some(row) = cone.row(*r) {
                        out += &format!("  {m} x [{}]\n", row.render(&cone.space));
                    }
                }
            }
        } else {
            out += &format!("{}: invalid on {name}\n", ineq.id);
        }
        if sys.observable() {
            let rays = dd_enumerate(&cone, &DdConfig::default())?;
            let f = transport_form(&ineq.expression_form(&isc.space)?, &isc.space, &cone.space)?;
            for (k, r) in rays.rays.iter().enumerate() {
                let val = f.eval(r);
                let verdict = if ineq.is_violated(&val) { "violated" } else { "satisfied" };
                out += &format!("  ray {}: {} = {val} ({verdict})\n", k + 1, ineq.id);
            }
        }
    }
    write_out(None, &out)
}

fn transport_form(f: &LinearForm<Rational>, from: &CoordinateSpace, to: &CoordinateSpace) -> Res<LinearForm<Rational>> {
    entrocone::scenarios::transport(f, from, to)
}

fn read_ray(a: &DeriveArgs) -> Res<(Vec<Rational>, MarginalScenario)> {
    let text = fs::read_to_string(&a.ray)?;
    let named = a.scenario.as_deref().map(scenario_of).transpose()?;
    if let Ok(v) = serde_json::from_str::<EntropyVectorJson>(&text) {
        let sc = named.ok_or_else(|| Error::Invalid("pass --scenario for an entropy vector file".into()))?;
        let h = v.vector::<Rational>()?;
        let ray = sc
            .space
            .sets()
            .iter()
            .map(|&s| h.get(&sc.space.names(s)).cloned())
            .collect::<Res<Vec<_>>>()?;
        return Ok((ray, sc));
    }
    let j = ConeJson::from_json(&text)?;
    let sc = match named {
        Some(sc) => sc,
        None => file_scenario(&j)?.ok_or_else(|| Error::Invalid("the ray file does not name its scenario".into()))?,
    };
    let v: VCone<Rational> = j.vcone()?;
    let k = a.index.unwrap_or(0);
    let r = v
        .rays
        .get(k)
        .ok_or_else(|| Error::Invalid(format!("ray index {k} out of range ({} rays)", v.rays.len())))?;
    let f = LinearForm::geq(r.clone());
    Ok((transport_form(&f, &v.space, &sc.space)?.coeffs, sc))
}

fn derive_cmd(a: DeriveArgs, ctx: &Ctx) -> Res<()> {
    let (ray, sc) = read_ray(&a)?;
    let sys = SystemSpec::for_scenario(&a.system, &sc)?;
    let mut out = String::new();
    let mut derived = 0;
    for (name, cone) in sys.systems()? {
        let emb = EmbeddedSystem::new(cone, &sc)?;
        let schedule = if a.noise {
            let noise: Vec<Rational> = sc.space.sets().iter().map(|s| Rational::from_integer((s.len() as i64).into())).collect();
            NoiseSchedule::uniform_steps(noise)
        } else {
            NoiseSchedule::default()
        };
        match derive_inequality(&ray, &emb, &sc.space, &schedule) {
            Ok(d) => {
                derived += 1;
                out += &format!(
                    "{name}: {}\n  value on ray {} (visibility {})\n",
                    d.form.render(&sc.space),
                    d.value,
                    d.visibility
                );
            }
            Err(Error::Feasible) => {
                ctx.note(&format!("ray is inside {name}; nothing to derive"));
            }
            Err(e) => return Err(e),
        }
    }
    if derived == 0 {
        return Err(Error::Feasible);
    }
    write_out(None, &out)
}

fn certify_cmd(a: CertifyArgs) -> Res<()> {
    let report = verify_all()?;
    let checks: Vec<_> = report
        .checks
        .iter()
        .filter(|c| a.all || a.id.as_deref().is_none_or(|id| id == c.id))
        .collect();
    if checks.is_empty() {
        return Err(Error::UnknownId(a.id.unwrap_or_default()));
    }
    let mut out = String::new();
    for c in &checks {
        match &c.mismatch {
            None if c.verified => out += &format!("{} on {}: verified ({} rows)\n", c.id, c.system, c.rows),
            Some(k) => out += &format!("{} on {}: FAILED at {k}\n", c.id, c.system),
            None => out += &format!("{} on {}: FAILED\n", c.id, c.system),
        }
    }
    let ok = checks.iter().filter(|c| c.verified).count();
    out += &format!("{ok}/{} certificates verified\n", checks.len());
    write_out(None, &out)?;
    if ok == checks.len() {
        Ok(())
    } else {
        Err(Error::Invalid("certificate replay failed".into()))
    }
}

fn ghz_cmd(a: GhzArgs, ctx: &Ctx) -> Res<()> {
    if a.d_min < 2 || a.d_max < a.d_min {
        return Err(Error::Invalid("need 2 <= d-min <= d-max".into()));
    }
    let cfg = OptimizerConfig {
        starts: a.starts,
        seed: a.seed,
        ..Default::default()
    };
    let mut optima = Vec::new();
    for d in a.d_min..=a.d_max {
        let o = optimize_ghz_violation(d, &cfg)?;
        if !o.converged {
            ctx.note(&format!("d = {d}: best start hit the iteration cap"));
        }
        ctx.note(&format!("d = {d}: {:.10}", o.value));
        optima.push(o);
    }
    let mut buf = Vec::new();
    scan_csv(&optima, &mut buf)?;
    write_out(a.out.as_deref(), &String::from_utf8_lossy(&buf))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { json: cli.json };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            ctx.fail(&Error::Invalid(e.to_string()));
            return ExitCode::from(2);
        }
    }
    match run(cli, &ctx) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            ctx.fail(&e);
            ExitCode::from(1)
        }
    }
}
