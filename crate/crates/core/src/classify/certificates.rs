use num_traits::{One, Zero};
use serde::Serialize;

use crate::entropy::{CoordinateSpace, Elemental, VarSet};
use crate::error::{Error, Result};
use crate::exactgeom::{certificate_mismatch, verify_certificate, Certificate, HCone, LinearForm, RowRef};
use crate::scalar::{int, Rational};
use crate::scenarios::{
    bilocal_constraints, hybrid_system, local_system, ns_cone, transport, BilocalMode, MarginalScenario,
    ScenarioSpec,
};

use super::registry::named_inequality;

/// A proof of a registry inequality as a combination of rows of a system.
#[derive(Clone, Debug)]
pub struct BuiltinCertificate {
    pub id: &'static str,
    pub system_id: String,
    pub system: HCone<Rational>,
    pub certificate: Certificate<Rational>,
}

fn vars(space: &CoordinateSpace, names: &str) -> Result<VarSet> {
    let list: Vec<&str> = names.split_whitespace().collect();
    space.set_from_names(&list)
}

fn var(space: &CoordinateSpace, name: &str) -> Result<usize> {
    space
        .variable_index(name)
        .ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

/// Collects multipliers for rows of one system.
struct Proof<'a> {
    system: &'a HCone<Rational>,
    terms: Vec<(RowRef, Rational)>,
}

impl<'a> Proof<'a> {
    fn new(system: &'a HCone<Rational>) -> Self {
        Proof {
            system,
            terms: Vec::new(),
        }
    }

    fn bump(&mut self, r: RowRef, m: Rational) {
        match self.terms.iter_mut().find(|(q, _)| *q == r) {
            Some((_, x)) => *x += m,
            None => self.terms.push((r, m)),
        }
    }

    fn space(&self) -> &CoordinateSpace {
        &self.system.space
    }

    fn add_row(&mut self, e: Elemental, m: Rational) -> Result<()> {
        let dense: Vec<Rational> = e.dense(self.space())?;
        let i = self.system.find_inequality(&dense).ok_or_else(|| {
            Error::Invalid(format!(
                "{} is not a row of the system",
                LinearForm::geq(dense.clone()).render(self.space())
            ))
        })?;
        self.bump(RowRef::Inequality(i), m);
        Ok(())
    }

    /// `H(all) >= H(all - {drop})` of the context `all`.
    fn mono(&mut self, all: &str, drop: &str) -> Result<()> {
        let e = Elemental::Monotone {
            vars: vars(self.space(), all)?,
            i: var(self.space(), drop)?,
        };
        self.add_row(e, Rational::one())
    }

    /// `I(i : j | given) >= 0`.
    fn cmi(&mut self, i: &str, j: &str, given: &str) -> Result<()> {
        let (a, b) = (var(self.space(), i)?, var(self.space(), j)?);
        let e = Elemental::Submodular {
            i: a.min(b),
            j: a.max(b),
            s: vars(self.space(), given)?,
        };
        self.add_row(e, Rational::one())
    }

    /// `I(X : Y | Z)` for sets, split by the chain rule into elemental rows.
    fn cmi_sets(&mut self, x: &str, y: &str, z: &str) -> Result<()> {
        let xs: Vec<&str> = x.split_whitespace().collect();
        let ys: Vec<&str> = y.split_whitespace().collect();
        for (a, xa) in xs.iter().enumerate() {
            for (b, yb) in ys.iter().enumerate() {
                let mut given: Vec<&str> = z.split_whitespace().collect();
                given.extend(&xs[..a]);
                given.extend(&ys[..b]);
                self.cmi(xa, yb, &given.join(" "))?;
            }
        }
        Ok(())
    }

    /// `H(all) - H(part)` as monotonicity plus conditional mutual information.
    fn mono_sets(&mut self, all: &str, part: &str) -> Result<()> {
        let all_v: Vec<&str> = all.split_whitespace().collect();
        let mut u: Vec<&str> = part.split_whitespace().collect();
        let missing: Vec<&str> = all_v.iter().filter(|v| !u.contains(v)).copied().collect();
        for e in missing {
            // H(U e) - H(U) = [H(all) - H(all - e)] + I(e : rest | U)
            self.mono(all, e)?;
            let rest: Vec<&str> = all_v
                .iter()
                .filter(|v| !u.contains(v) && **v != e)
                .copied()
                .collect();
            if !rest.is_empty() {
                self.cmi_sets(e, &rest.join(" "), &u.join(" "))?;
            }
            u.push(e);
        }
        Ok(())
    }

    /// Multiplier on the equality equal (up to sign) to `coeffs`.
    fn equality(&mut self, coeffs: &[Rational], m: Rational) -> Result<()> {
        for (i, f) in self.system.equalities.iter().enumerate() {
            let neg = f.coeffs.iter().zip(coeffs).all(|(a, b)| *a == -b.clone());
            if f.coeffs == coeffs || neg {
                let m = if neg { -m } else { m };
                self.bump(RowRef::Equality(i), m);
                return Ok(());
            }
        }
        Err(Error::Invalid("equality is not part of the system".into()))
    }

    /// Closes the proof of `target`, absorbing the `H()` coefficient into the
    /// normalization equality.
    fn finish(mut self, target: LinearForm<Rational>) -> Result<Certificate<Rational>> {
        if let Some(k) = self.space().empty_index() {
            let mut sum = Rational::zero();
            for (r, m) in &self.terms {
                if let Some(row) = self.system.row(*r) {
                    sum += &row.coeffs[k] * m;
                }
            }
            let gap = &target.coeffs[k] - sum;
            if !gap.is_zero() {
                let mut e = vec![Rational::zero(); self.system.dim()];
                e[k] = Rational::one();
                self.equality(&e, gap)?;
            }
        }
        Ok(Certificate {
            terms: self.terms.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
            target,
            constant: Rational::zero(),
        })
    }
}

fn target_on(id: &str, system: &HCone<Rational>) -> Result<LinearForm<Rational>> {
    let n = named_inequality(id)?;
    let sc = n.build_scenario()?;
    transport(&n.form(&sc.space)?, &sc.space, &system.space)
}

fn scenario(s: &str) -> Result<MarginalScenario> {
    s.parse::<ScenarioSpec>()?.build()
}

fn monogamy() -> Result<BuiltinCertificate> {
    let system = ns_cone(&scenario("bell:2x2x2")?)?;
    let mut p = Proof::new(&system);
    p.cmi("B0", "C1", "A0")?;
    p.cmi("B1", "C0", "A0")?;
    p.cmi("A1", "C1", "B0")?;
    p.cmi("A1", "B1", "C0")?;
    p.mono("A0 B0 C1", "A0")?;
    p.mono("A0 B1 C0", "A0")?;
    p.mono("A1 B0 C1", "B0")?;
    p.mono("A1 B1 C0", "C0")?;
    let certificate = p.finish(target_on("monogamy", &system)?)?;
    Ok(BuiltinCertificate {
        id: "monogamy",
        system_id: "ns:2x2x2".into(),
        system,
        certificate,
    })
}

/// Rows are `(kind, a, b, c)`: `("m", context, dropped, "")` or
/// `("i", x, y, given)`.
fn gtnl(party: usize, rows: &[(&str, &str, &str, &str)]) -> Result<BuiltinCertificate> {
    let system = hybrid_system(&scenario("bell:2x2x2")?, party)?;
    let mut p = Proof::new(&system);
    for &(kind, a, b, c) in rows {
        match kind {
            "m" => p.mono(a, b)?,
            _ => p.cmi(a, b, c)?,
        }
    }
    let certificate = p.finish(target_on("gtnl", &system)?)?;
    let (id, sys) = [
        ("gtnl_a", "hybrid:A|BC"),
        ("gtnl_b", "hybrid:B|AC"),
        ("gtnl_c", "hybrid:C|AB"),
    ][party];
    Ok(BuiltinCertificate {
        id,
        system_id: sys.into(),
        system,
        certificate,
    })
}

fn bilocal_system(settings: &str) -> Result<(MarginalScenario, HCone<Rational>)> {
    let sc = scenario(&format!("bilocal:{settings}"))?;
    let mut system = local_system(&sc)?;
    system
        .equalities
        .extend(bilocal_constraints(&sc, BilocalMode::Extended)?);
    Ok((sc, system))
}

fn biloc_activation() -> Result<BuiltinCertificate> {
    let (sc, system) = bilocal_system("2x1x1")?;
    let mut p = Proof::new(&system);
    p.cmi("A0", "C", "")?;
    p.mono("A0 A1 B C", "B")?;
    p.cmi("A1", "B", "A0")?;
    p.cmi("A0", "C", "A1 B")?;
    let independence = bilocal_constraints::<Rational>(&sc, BilocalMode::Extended)?;
    p.equality(&independence[0].coeffs, int(-1))?;
    let certificate = p.finish(target_on("biloc_activation", &system)?)?;
    Ok(BuiltinCertificate {
        id: "biloc_activation",
        system_id: "bilocal-extended:2x1x1".into(),
        system,
        certificate,
    })
}

fn sbl() -> Result<BuiltinCertificate> {
    let (sc, system) = bilocal_system("2x2x2")?;
    let all = "A0 A1 B0 B1 C0 C1";
    let mut p = Proof::new(&system);
    p.mono(all, "C1")?;
    p.mono(all, "B1")?;
    p.cmi("B0", "C0", "C1")?;
    p.cmi("A0", "C1", "A1")?;
    p.cmi("A0", "C0", "B0 C1")?;
    p.cmi("C0", "C1", "A1 B1")?;
    p.cmi("A0", "C0", "A1 C1")?;
    p.cmi("B1", "C1", "A0 B0 C0")?;
    p.cmi("B0", "B1", "A1 C0 C1")?;
    p.cmi("A1", "C1", "A0 B0 B1 C0")?;
    p.cmi("A0", "B1", "A1 B0 C0 C1")?;
    p.cmi("A1", "C1", "")?;
    let independence = bilocal_constraints::<Rational>(&sc, BilocalMode::Extended)?;
    p.equality(&independence[0].coeffs, int(-1))?;
    let certificate = p.finish(target_on("sbl", &system)?)?;
    Ok(BuiltinCertificate {
        id: "sbl",
        system_id: "bilocal-extended:2x2x2".into(),
        system,
        certificate,
    })
}

/// `-M3 = [H(all) - H(A0 B1 C1)] + I(A0 : A1 B1 C1 | B0 C0) + I(B0 : B1 C0 | A1 C1)
/// + I(C1 : C0 | A1 B1)`.
fn m3() -> Result<BuiltinCertificate> {
    let system = local_system(&scenario("bell:2x2x2")?)?;
    let mut p = Proof::new(&system);
    p.mono_sets("A0 A1 B0 B1 C0 C1", "A0 B1 C1")?;
    p.cmi_sets("A0", "A1 B1 C1", "B0 C0")?;
    p.cmi_sets("B0", "B1 C0", "A1 C1")?;
    p.cmi_sets("C1", "C0", "A1 B1")?;
    let certificate = p.finish(target_on("m3", &system)?)?;
    Ok(BuiltinCertificate {
        id: "m3",
        system_id: "local:2x2x2".into(),
        system,
        certificate,
    })
}

fn echsh() -> Result<BuiltinCertificate> {
    let system = local_system(&scenario("bell:2x2")?)?;
    let mut p = Proof::new(&system);
    for &(kind, a, b, c) in ECHSH_ROWS {
        match kind {
            "m" => p.mono(a, b)?,
            _ => p.cmi(a, b, c)?,
        }
    }
    let certificate = p.finish(target_on("echsh", &system)?)?;
    Ok(BuiltinCertificate {
        id: "echsh",
        system_id: "local:2x2".into(),
        system,
        certificate,
    })
}

const ECHSH_ROWS: &[(&str, &str, &str, &str)] = &[
    ("m", "A0 A1 B0 B1", "A0", ""),
    ("m", "A0 A1 B0 B1", "B0", ""),
    ("i", "A0", "A1", "B0 B1"),
    ("i", "A0", "B0", "A1 B1"),
    ("i", "A1", "B1", "B0"),
    ("i", "B0", "B1", "A0"),
];

const GTNL_A: &[(&str, &str, &str, &str)] = &[
    ("m", "A0 A1 B1 C0", "B1", ""),
    ("m", "A0 A1 B1 C1", "A0", ""),
    ("m", "A0 A1 B0 C0", "C0", ""),
    ("m", "A0 A1 B0 C1", "B0", ""),
    ("i", "A0", "A1", "B1 C0"),
    ("i", "A1", "B1", "A0 C1"),
    ("i", "A0", "B0", "A1 C0"),
    ("i", "A0", "C1", "A1 B0"),
];

const GTNL_B: &[(&str, &str, &str, &str)] = &[
    ("m", "A0 B0 B1 C0", "A0", ""),
    ("m", "A0 B0 B1 C1", "B1", ""),
    ("m", "A1 B0 B1 C0", "C0", ""),
    ("m", "A1 B0 B1 C1", "B0", ""),
    ("i", "A0", "B0", "B1 C0"),
    ("i", "B0", "B1", "A0 C1"),
    ("i", "B0", "B1", "A1 C0"),
    ("i", "B1", "C1", "A1 B0"),
];

const GTNL_C: &[(&str, &str, &str, &str)] = &[
    ("m", "A0 B1 C0 C1", "A0", ""),
    ("m", "A0 B1 C0 C1", "B1", ""),
    ("m", "A1 B0 C0 C1", "B0", ""),
    ("m", "A1 B1 C0 C1", "C0", ""),
    ("i", "A0", "C1", "B1 C0"),
    ("i", "B1", "C0", "A0 C1"),
    ("i", "C0", "C1", "A1 B0"),
    ("i", "B1", "C1", "A1 C0"),
];

/// Every built-in proof, each against the system it is stated for.
pub fn builtin_certificates() -> Result<Vec<BuiltinCertificate>> {
    Ok(vec![
        monogamy()?,
        gtnl(0, GTNL_A)?,
        gtnl(1, GTNL_B)?,
        gtnl(2, GTNL_C)?,
        biloc_activation()?,
        sbl()?,
        m3()?,
        echsh()?,
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateCheck {
    pub id: String,
    pub system: String,
    pub rows: usize,
    pub verified: bool,
    /// First coordinate where the combination differs from the target.
    pub mismatch: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub checks: Vec<CertificateCheck>,
    pub verified: usize,
    pub total: usize,
}

impl CertificateReport {
    pub fn all_verified(&self) -> bool {
        self.verified == self.total
    }
}

pub fn verify_all() -> Result<CertificateReport> {
    let checks = builtin_certificates()?
        .into_iter()
        .map(|b| {
            let verified = verify_certificate(&b.certificate, &b.system)?;
            let mismatch = certificate_mismatch(&b.certificate, &b.system)?
                .map(|k| b.system.space.label(k));
            Ok(CertificateCheck {
                id: b.id.to_string(),
                system: b.system_id,
                rows: b.certificate.terms.len(),
                verified,
                mismatch,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verified = checks.iter().filter(|c| c.verified).count();
    Ok(CertificateReport {
        total: checks.len(),
        verified,
        checks,
    })
}
