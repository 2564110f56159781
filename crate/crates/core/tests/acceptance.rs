//! Acceptance run: one line per criterion.
//!
//! `cargo test -p entrocone --test acceptance` runs every criterion;
//! positional arguments select criteria by number (`-- 1 2 9`). The two
//! enumeration criteria (4 and 8) are stretch targets: a failure there is
//! printed but only fails the run when `ACCEPTANCE_STRICT=1`.
//! `ACCEPTANCE_FULL=1` compares the two GTNL programs on every tripartite
//! class instead of a sample.

mod common;

use common::tables::*;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use entrocone::boxes::{mix, named_box, optimize_ghz_violation, OptimizerConfig};
use entrocone::classify::{
    canonical_form, classify_rays, is_bilocal, is_local, named_inequality, verify_all, ClassCounts, Classifier,
    Label, Point, RayClass, SymmetryGroup,
};
use entrocone::entropy::exact_entropy_vector;
use entrocone::exactgeom::{
    canonical_ray, dd_enumerate, lp_check, project_onto, DdConfig, FmConfig, HCone, LinearForm, LpOutcome, Pins,
    VCone,
};
use entrocone::scenarios::{
    bell_scenario, bilocal_cone, bilocal_scenario, ic_cone, ic_scenario, local_system, ns_cone, BilocalMode,
    MarginalScenario,
};
use entrocone::{int, rat, Rational};
use proptest::test_runner::{Config, TestRunner};

/// Frozen minimum of the GHZ witness at `d = 2` from the grid oracle below.
const GHZ_D2_ORACLE: f64 = -0.090_430_434_856_9;
const GHZ_ORACLE_TOLERANCE: f64 = 1e-4;
const GHZ_VIOLATION_THRESHOLD: f64 = -1e-3;
const GHZ_SCAN_BUDGET: Duration = Duration::from_secs(3600);
const GHZ_SCAN_SLACK: f64 = 1e-12;
const PROPERTY_CASES: u32 = 200;
/// Classes checked against the joint GTNL program unless `ACCEPTANCE_FULL=1`.
const GTNL_AGREEMENT_SAMPLE: usize = 64;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    stretch: bool,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria = [
        Criterion { id: 1, title: "bipartite m=2 classes", stretch: false, run: table_one },
        Criterion { id: 2, title: "bipartite m=3 classes", stretch: false, run: table_two },
        Criterion { id: 3, title: "information causality rays", stretch: false, run: ic_table },
        Criterion { id: 4, title: "tripartite enumeration", stretch: true, run: tripartite },
        Criterion { id: 5, title: "spot classifications", stretch: false, run: spot_checks },
        Criterion { id: 6, title: "certificate replay", stretch: false, run: certificates },
        Criterion { id: 7, title: "CHSH projection", stretch: false, run: chsh_projection },
        Criterion { id: 8, title: "bilocal enumeration", stretch: true, run: bilocal },
        Criterion { id: 9, title: "GHZ witness", stretch: false, run: ghz },
        Criterion { id: 10, title: "property suites", stretch: false, run: properties },
    ];
    let mut fatal = 0;
    for c in criteria.iter().filter(|c| selected.is_empty() || selected.contains(&c.id)) {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} ({secs:.1} s): {detail}", c.id, c.title),
            Err(detail) => {
                let tag = if c.stretch { "FAIL (stretch)" } else { "FAIL" };
                println!("criterion {:>2} {tag}  {} ({secs:.1} s): {detail}", c.id, c.title);
                if !c.stretch || strict {
                    fatal += 1;
                }
            }
        }
    }
    if fatal > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Enumerated {
    sc: MarginalScenario,
    rays: VCone<Rational>,
    group: SymmetryGroup,
    classes: Vec<RayClass<Rational>>,
}

fn enumerate(sc: MarginalScenario, cone: &HCone<Rational>, extremal: bool) -> Result<Enumerated, String> {
    let rays = dd_enumerate(cone, &DdConfig::default()).map_err(e2s)?;
    let group = SymmetryGroup::for_scenario(&sc, sc.space.clone()).map_err(e2s)?;
    let cl = Classifier::new(&sc).map_err(e2s)?;
    let classes = classify_rays(&rays, &cl, &group, extremal, None).map_err(e2s)?;
    Ok(Enumerated { sc, rays, group, classes })
}

fn bipartite(m: usize) -> Result<Enumerated, String> {
    let sc = bell_scenario(&[m, m]).map_err(e2s)?;
    let cone = ns_cone(&sc).map_err(e2s)?;
    enumerate(sc, &cone, true)
}

/// Classes must coincide with the table rows up to symmetry; rows listed in
/// `local_rows` (1-based) are local and all others nonlocal.
fn match_table(e: &Enumerated, rows: &[Vec<Rational>], local_rows: usize) -> Result<String, String> {
    let got: BTreeSet<Vec<Rational>> = e.classes.iter().map(|c| c.representative.clone()).collect();
    let want: BTreeSet<Vec<Rational>> = rows.iter().map(|r| canonical_form(r, &e.group)).collect();
    ensure(want.len() == rows.len(), || "table rows are not pairwise inequivalent".into())?;
    ensure(got == want, || {
        let render = |v: &Vec<Rational>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let missing: Vec<String> = want.difference(&got).map(render).collect();
        let extra: Vec<String> = got.difference(&want).map(render).collect();
        format!("{} classes found, {} in the table; unmatched rows {missing:?}, unmatched classes {extra:?}", got.len(), want.len())
    })?;
    for (k, r) in rows.iter().enumerate() {
        let rep = canonical_form(r, &e.group);
        let c = e.classes.iter().find(|c| c.representative == rep).expect("matched above");
        let local = c.labels.contains(&Label::Local);
        ensure(local == (k < local_rows), || format!("row {} has labels {:?}", k + 1, c.labels))?;
    }
    let counts = ClassCounts::of(&e.classes);
    Ok(format!(
        "{} rays, {} classes, {} local / {} nonlocal, all rows matched",
        e.rays.rays.len(),
        counts.total,
        counts.local,
        counts.nonlocal
    ))
}

fn check_misprints<const N: usize>(
    sc: &MarginalScenario,
    m: usize,
    table: &[[i64; N]],
    misprints: &[(usize, usize, i64)],
) -> Result<(), String> {
    let cone: HCone<Rational> = ns_cone(sc).map_err(e2s)?;
    for &(row, col, printed) in misprints {
        let mut r = table[row - 1];
        r[col] = printed;
        ensure(!cone.contains(&bipartite_row(sc, m, &r)?), || format!("printed row {row} is a valid point"))?;
    }
    Ok(())
}

fn table_one() -> Outcome {
    let e = bipartite(2)?;
    check_misprints(&e.sc, 2, &TABLE_ONE, &TABLE_ONE_MISPRINTS)?;
    let rows = TABLE_ONE.iter().map(|r| bipartite_row(&e.sc, 2, r)).collect::<Result<Vec<_>, _>>()?;
    match_table(&e, &rows, 4)
}

fn table_two() -> Outcome {
    let e = bipartite(3)?;
    check_misprints(&e.sc, 3, &TABLE_TWO, &TABLE_TWO_MISPRINTS)?;
    let rows = TABLE_TWO.iter().map(|r| bipartite_row(&e.sc, 3, r)).collect::<Result<Vec<_>, _>>()?;
    match_table(&e, &rows, 7)
}

fn ic_table() -> Outcome {
    let sc = ic_scenario();
    let cone = ic_cone().map_err(e2s)?;
    let rays = dd_enumerate(&cone, &DdConfig::default()).map_err(e2s)?;
    let got: BTreeSet<Vec<Rational>> = rays.rays.iter().map(|r| canonical_ray(r)).collect();
    let table = ic_rows(&sc)?;
    let want: BTreeSet<Vec<Rational>> = table.iter().map(|r| canonical_ray(r)).collect();
    ensure(got == want, || format!("{} rays found, expected the 8 table rays", got.len()))?;
    let cl = Classifier::new(&sc).map_err(e2s)?;
    let mut violating = Vec::new();
    for (k, r) in table.iter().enumerate() {
        if cl.labels(r, true).map_err(e2s)?.contains(&Label::IcViolating) {
            violating.push(k + 1);
        }
    }
    ensure(violating == vec![8], || format!("violating rays {violating:?}"))?;
    Ok("8 rays matched, only ray 8 violates".into())
}

fn tripartite() -> Outcome {
    let sc = bell_scenario(&[2, 2, 2]).map_err(e2s)?;
    let cone = ns_cone(&sc).map_err(e2s)?;
    let e = enumerate(sc, &cone, true)?;
    let c = ClassCounts::of(&e.classes);
    let got = (c.total, c.local, c.nonlocal, c.gtnl);
    ensure(got == (1292, 128, 1164, 932), || format!("counts (classes, local, nonlocal, gtnl) = {got:?}"))?;
    let full = std::env::var("ACCEPTANCE_FULL").is_ok_and(|v| v == "1");
    let step = if full { 1 } else { e.classes.len().div_ceil(GTNL_AGREEMENT_SAMPLE) };
    let cl = Classifier::new(&e.sc).map_err(e2s)?;
    let mut compared = 0;
    for class in e.classes.iter().step_by(step) {
        let p = Point::Exact(&class.representative);
        let general = !cl.is_local(p).map_err(e2s)? && !cl.gtnl_membership_general(p).map_err(e2s)?;
        ensure(general == class.labels.contains(&Label::Gtnl), || {
            format!("extremal and joint GTNL programs disagree on {:?}", class.representative)
        })?;
        compared += 1;
    }
    Ok(format!(
        "{} rays, 1292 classes, 128 local / 1164 nonlocal, 932 GTNL; joint GTNL program agrees on {compared} classes",
        c.rays
    ))
}

fn exact_vector(id: &str, sc: &MarginalScenario, boxes: &[&str]) -> Result<Vec<Rational>, String> {
    let bs = boxes.iter().map(|b| named_box(b)).collect::<Result<Vec<_>, _>>().map_err(e2s)?;
    let refs: Vec<_> = bs.iter().collect();
    let weights = vec![rat(1, boxes.len() as i64); boxes.len()];
    let b = mix(&refs, &weights).map_err(e2s)?;
    Ok(exact_entropy_vector(&b, sc)
        .map_err(e2s)?
        .ok_or_else(|| format!("{id}: marginals are not dyadic"))?
        .values)
}

fn spot_checks() -> Outcome {
    let tri = bell_scenario(&[2, 2, 2]).map_err(e2s)?;
    let cl = Classifier::new(&tri).map_err(e2s)?;

    let m3_ray = exact_vector("nltri+pc3", &tri, &["nltri", "pc3"])?;
    let m3 = named_inequality("m3").map_err(e2s)?.expression_form(&tri.space).map_err(e2s)?;
    let m3_value = m3.eval(&m3_ray);
    ensure(m3_value == int(1), || format!("M3 = {m3_value} on the nltri/pc3 mixture"))?;
    ensure(!cl.is_local(Point::Exact(&m3_ray)).map_err(e2s)?, || "nltri/pc3 mixture is local".into())?;
    ensure(cl.gtnl_membership_general(Point::Exact(&m3_ray)).map_err(e2s)?, || {
        "nltri/pc3 mixture is GTNL".into()
    })?;

    let xyz_ray = exact_vector("xyz+pc3", &tri, &["xyz", "pc3"])?;
    ensure(!cl.gtnl_membership_general(Point::Exact(&xyz_ray)).map_err(e2s)?, || {
        "(xyz + pc3)/2 decomposes into hybrid models".into()
    })?;

    let act = bilocal_scenario(&[2, 1, 1]).map_err(e2s)?;
    let act_ray = exact_vector("biloc_activation", &act, &["biloc_activation"])?;
    ensure(is_local(&act_ray, &act).map_err(e2s)?, || "activation ray is not local".into())?;
    ensure(!is_bilocal(&act_ray, &act).map_err(e2s)?, || "activation ray is bilocal".into())?;

    let bl = bilocal_scenario(&[2, 2, 2]).map_err(e2s)?;
    let gnb = exact_vector("genuine_nonbilocal", &bl, &["genuine_nonbilocal"])?;
    let sbl = named_inequality("sbl").map_err(e2s)?.expression_form(&bl.space).map_err(e2s)?;
    let sbl_value = sbl.eval(&gnb);
    ensure(sbl_value == int(-1), || format!("S_BL = {sbl_value}"))?;

    Ok("M3 = 1 nonlocal non-GTNL; xyz/pc3 GTNL; activation local not bilocal; S_BL = -1".into())
}

fn certificates() -> Outcome {
    let r = verify_all().map_err(e2s)?;
    let failed: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.verified)
        .map(|c| format!("{} ({})", c.id, c.mismatch.clone().unwrap_or_default()))
        .collect();
    ensure(failed.is_empty() && r.total == 8, || format!("{}/{} verified; failed: {failed:?}", r.verified, r.total))?;
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    Ok(format!("{}/{} verified: {}", r.verified, r.total, ids.join(", ")))
}

/// Coefficients with the empty-set coordinate cleared, made primitive.
fn normalized(f: &LinearForm<Rational>, sc: &MarginalScenario) -> Vec<Rational> {
    let mut c = f.coeffs.clone();
    if let Some(k) = sc.space.empty_index() {
        c[k] = int(0);
    }
    LinearForm::geq(c).primitive().coeffs
}

fn chsh_projection() -> Outcome {
    let sc = bell_scenario(&[2, 2]).map_err(e2s)?;
    let full: HCone<Rational> = local_system(&sc).map_err(e2s)?;
    let mut keep = sc.space.embedding_into(&full.space).map_err(e2s)?;
    keep.sort_unstable();
    let proj = project_onto(&full, &keep, &FmConfig::default()).map_err(e2s)?;
    let got: BTreeSet<Vec<Rational>> = proj.inequalities.iter().map(|f| normalized(f, &sc)).collect();

    let group = SymmetryGroup::for_scenario(&sc, sc.space.clone()).map_err(e2s)?;
    let echsh = named_inequality("echsh").map_err(e2s)?.form(&sc.space).map_err(e2s)?;
    let family: BTreeSet<Vec<Rational>> = group.orbit(&normalized(&echsh, &sc)).into_iter().collect();
    let elemental: BTreeSet<Vec<Rational>> =
        ns_cone::<Rational>(&sc).map_err(e2s)?.inequalities.iter().map(|f| normalized(f, &sc)).collect();
    let want: BTreeSet<Vec<Rational>> = family.union(&elemental).cloned().collect();
    ensure(got == want, || {
        let extra = got.difference(&want).count();
        let missing = want.difference(&got).count();
        format!("{extra} unexpected rows, {missing} missing rows")
    })?;
    let nontrivial_eq = proj.equalities.iter().filter(|f| !normalized(f, &sc).iter().all(|x| *x == int(0))).count();
    ensure(nontrivial_eq == 0, || format!("{nontrivial_eq} unexpected equalities"))?;
    Ok(format!("{} CHSH rows + {} elemental rows, nothing else", family.len(), elemental.len()))
}

/// Whether every row of `b` is implied by `a`.
fn implies(a: &HCone<Rational>, b: &HCone<Rational>) -> Result<bool, String> {
    let rows = b.inequalities.iter().cloned().chain(
        b.equalities
            .iter()
            .flat_map(|f| [LinearForm::geq(f.coeffs.clone()), LinearForm::geq(f.negated().coeffs)]),
    );
    for f in rows {
        match lp_check(a, &f, &Pins::new()).map_err(e2s)? {
            LpOutcome::Optimal { value, .. } if value >= int(0) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn bilocal() -> Outcome {
    let sc = bilocal_scenario(&[2, 2, 2]).map_err(e2s)?;
    let obs: HCone<Rational> = bilocal_cone(&sc, BilocalMode::Observable).map_err(e2s)?;
    let ext: HCone<Rational> = bilocal_cone(&sc, BilocalMode::Extended).map_err(e2s)?;
    let same = implies(&obs, &ext)? && implies(&ext, &obs)?;
    let e = enumerate(sc, &obs, true)?;
    let c = ClassCounts::of(&e.classes);
    let got = (c.total, c.bilocal, c.nonbilocal, c.genuinely_nonbilocal);
    let modes = if same {
        "observable and extended cones coincide"
    } else {
        "extended cone differs and was not enumerated"
    };
    ensure(got == (329, 15, 314, 40), || {
        format!(
            "observable mode: {} rays, (classes, bilocal, nonbilocal, genuinely nonbilocal) = {got:?}, \
             expected (329, 15, 314, 40); {modes}",
            c.rays
        )
    })?;
    Ok(format!("observable mode matched; {modes}"))
}

/// Triple entropy of the `d`-dimensional GHZ box at total phase `t`, summed
/// outcome by outcome from the probability formula.
fn ghz_triple_entropy(d: usize, t: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let mut h = 0.0;
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let g = pi * ((a + b + c) as f64 + t);
                let den = (g / d as f64).sin().powi(2);
                let p = if den < 1e-300 { 1.0 / (d * d) as f64 } else { g.sin().powi(2) / den / (d as f64).powi(4) };
                if p > 0.0 {
                    h -= p * p.log2();
                }
            }
        }
    }
    h
}

/// Witness on phases `[A0, A1, B0, B1, C0, C1]`; pair marginals of the GHZ
/// box are uniform, so the four pair terms contribute `-8 log2 d`.
fn ghz_witness(d: usize, p: &[f64; 6], h: impl Fn(f64) -> f64) -> f64 {
    let t = |x: usize, y: usize, z: usize| h(p[x] + p[2 + y] + p[4 + z]);
    t(1, 1, 0) + t(1, 0, 0) + t(1, 0, 1) + t(0, 1, 0) + t(0, 1, 1) - t(1, 1, 1) - 8.0 * (d as f64).log2()
}

/// Grid search over `(A1, B1, C0, C1)` with `A0 = B0 = 0` (the witness only
/// sees sums of one phase per party), step `1/100`, then pattern search.
fn ghz_grid_oracle(d: usize) -> f64 {
    const N: usize = 100;
    let table: Vec<f64> = (0..N).map(|k| ghz_triple_entropy(d, k as f64 / N as f64)).collect();
    let at = |k: usize| table[k % N];
    let mut best = (f64::INFINITY, [0usize; 4]);
    for a1 in 0..N {
        for b1 in 0..N {
            for c0 in 0..N {
                for c1 in 0..N {
                    let v = at(a1 + b1 + c0) + at(a1 + c0) + at(a1 + c1) + at(b1 + c0) + at(b1 + c1)
                        - at(a1 + b1 + c1);
                    if v < best.0 {
                        best = (v, [a1, b1, c0, c1]);
                    }
                }
            }
        }
    }
    let mut x: [f64; 4] = best.1.map(|k| k as f64 / N as f64);
    let f = |x: &[f64; 4]| ghz_witness(d, &[0.0, x[0], 0.0, x[1], x[2], x[3]], |t| ghz_triple_entropy(d, t));
    let mut fx = f(&x);
    let mut step = 1.0 / N as f64;
    while step > 1e-12 {
        let mut improved = false;
        for i in 0..4 {
            for s in [step, -step] {
                let mut y = x;
                y[i] += s;
                let fy = f(&y);
                if fy < fx {
                    (x, fx, improved) = (y, fy, true);
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    fx
}

fn ghz() -> Outcome {
    let cfg = OptimizerConfig::default();
    let mut small = Vec::new();
    for d in 2..=5 {
        let o = optimize_ghz_violation(d, &cfg).map_err(e2s)?;
        ensure(o.value < GHZ_VIOLATION_THRESHOLD, || format!("d = {d}: value {}", o.value))?;
        small.push(o.value);
    }
    let oracle = ghz_grid_oracle(2);
    ensure((oracle - GHZ_D2_ORACLE).abs() < 1e-9, || format!("oracle recomputed as {oracle:.12}"))?;
    let gap = (small[0] - GHZ_D2_ORACLE).abs();
    ensure(gap <= GHZ_ORACLE_TOLERANCE, || format!("d = 2 optimum {} vs oracle {GHZ_D2_ORACLE}", small[0]))?;
    let t = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    for d in 2..=40 {
        let o = optimize_ghz_violation(d, &cfg).map_err(e2s)?;
        worst = worst.max(o.value);
    }
    let took = t.elapsed();
    ensure(worst <= GHZ_SCAN_SLACK, || format!("scan value {worst} above zero"))?;
    ensure(took <= GHZ_SCAN_BUDGET, || format!("scan took {took:?}"))?;
    Ok(format!(
        "d=2..5 values {:.6} {:.6} {:.6} {:.6}; d=2 within {gap:.1e} of oracle; d<=40 scan in {:.0} s, max {worst:.3e}",
        small[0],
        small[1],
        small[2],
        small[3],
        took.as_secs_f64()
    ))
}

fn run_property<S: std::fmt::Debug + Clone>(
    name: &str,
    strategy: impl proptest::strategy::Strategy<Value = S>,
    check: impl Fn(S) -> common::Check,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |v| check(v).map_err(proptest::test_runner::TestCaseError::fail))
        .map_err(|e| format!("{name}: {e}"))
}

/// Labels are unchanged by positive scaling and by every group element.
fn label_invariance(e: &Enumerated) -> Result<usize, String> {
    let cl = Classifier::new(&e.sc).map_err(e2s)?;
    let scale = rat(7, 3);
    let mut labels = BTreeMap::new();
    for r in &e.rays.rays {
        let base = cl.labels(r, true).map_err(e2s)?;
        let scaled: Vec<Rational> = r.iter().map(|x| x * &scale).collect();
        ensure(cl.labels(&scaled, true).map_err(e2s)? == base, || format!("scaling changes labels of {r:?}"))?;
        labels.insert(canonical_ray(r), base);
    }
    for r in &e.rays.rays {
        let base = &labels[&canonical_ray(r)];
        for g in e.group.elements() {
            let moved = canonical_ray(&e.group.act(g, r));
            let image = labels.get(&moved).ok_or_else(|| format!("symmetry image of {r:?} is not a ray"))?;
            ensure(image == base, || format!("symmetry changes labels of {r:?}"))?;
        }
    }
    Ok(labels.len())
}

fn properties() -> Outcome {
    use proptest::prelude::*;
    run_property("dd", common::random_cone(), |c| common::check_dd_matches_oracle(&c))?;
    run_property("fm", (common::random_cone(), 1usize..=3), |(c, k)| common::check_fm_projection(&c, k))?;
    run_property("lp", (common::random_cone(), common::random_point(4)), |(c, o)| {
        common::check_lp_certificate(&c, &o[..c.dim])
    })?;
    run_property("farkas", (common::random_cone(), common::random_point(4)), |(c, p)| {
        common::check_farkas_and_iis(&c, &p[..c.dim])
    })?;
    run_property(
        "scaling",
        (prop::collection::vec(-6i64..=6, 1..8), 1i64..50, 1i64..50),
        |(v, n, d)| common::check_canonical_scaling(&v, n, d),
    )?;
    for n in 2..=6 {
        common::check_elemental_count(n)?;
    }
    let mut rays = 0;
    for m in [2, 3] {
        rays += label_invariance(&bipartite(m)?)?;
    }
    let sc = ic_scenario();
    let cone = ic_cone().map_err(e2s)?;
    rays += label_invariance(&enumerate(sc, &cone, true)?)?;
    Ok(format!(
        "{PROPERTY_CASES} cases each for DD/FM/LP/Farkas/scaling; elemental counts n=2..6; {rays} rays label-invariant"
    ))
}
