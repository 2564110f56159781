use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::cone::{HCone, LinearForm, RowRef};

/// Value a coordinate is pinned to for one LP call.
#[derive(Clone, Debug, PartialEq)]
pub enum Pin<S> {
    Exact(S),
    Band { lower: S, upper: S },
}

/// Partial coordinate assignment, keyed by coordinate index.
#[derive(Clone, Debug, PartialEq)]
pub struct Pins<S>(pub BTreeMap<usize, Pin<S>>);

impl<S> Default for Pins<S> {
    fn default() -> Self {
        Pins(BTreeMap::new())
    }
}

impl<S: Scalar> Pins<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn exact(entries: impl IntoIterator<Item = (usize, S)>) -> Self {
        Pins(entries.into_iter().map(|(k, v)| (k, Pin::Exact(v))).collect())
    }

    pub fn pin(&mut self, k: usize, v: S) {
        self.0.insert(k, Pin::Exact(v));
    }

    pub fn band(&mut self, k: usize, lower: S, upper: S) {
        self.0.insert(k, Pin::Band { lower, upper });
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One affine row `coeffs . h + constant (>= | ==) 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineRow<S> {
    pub coeffs: Vec<S>,
    pub constant: S,
    pub id: RowRef,
}

/// A general system of affine rows, the input format of the LP layer.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineProgram<S> {
    pub dim: usize,
    pub inequalities: Vec<AffineRow<S>>,
    pub equalities: Vec<AffineRow<S>>,
}

impl<S: Scalar> AffineProgram<S> {
    pub fn new(dim: usize) -> Self {
        AffineProgram {
            dim,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn from_cone(cone: &HCone<S>, pins: &Pins<S>) -> Result<Self> {
        cone.validate()?;
        let dim = cone.dim();
        let mut p = Self::new(dim);
        for (i, f) in cone.inequalities.iter().enumerate() {
            p.inequalities.push(AffineRow {
                coeffs: f.coeffs.clone(),
                constant: S::zero(),
                id: RowRef::Inequality(i),
            });
        }
        for (i, f) in cone.equalities.iter().enumerate() {
            p.equalities.push(AffineRow {
                coeffs: f.coeffs.clone(),
                constant: S::zero(),
                id: RowRef::Equality(i),
            });
        }
        for (&k, pin) in &pins.0 {
            if k >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k + 1,
                });
            }
            let unit = |s: S| {
                let mut e = vec![S::zero(); dim];
                e[k] = s;
                e
            };
            match pin {
                Pin::Exact(v) => p.equalities.push(AffineRow {
                    coeffs: unit(S::one()),
                    constant: -v.clone(),
                    id: RowRef::Pin(k),
                }),
                Pin::Band { lower, upper } => {
                    p.inequalities.push(AffineRow {
                        coeffs: unit(S::one()),
                        constant: -lower.clone(),
                        id: RowRef::PinLower(k),
                    });
                    p.inequalities.push(AffineRow {
                        coeffs: unit(-S::one()),
                        constant: upper.clone(),
                        id: RowRef::PinUpper(k),
                    });
                }
            }
        }
        Ok(p)
    }

    pub fn push_inequality(&mut self, coeffs: Vec<S>, constant: S, id: RowRef) {
        self.inequalities.push(AffineRow { coeffs, constant, id });
    }

    pub fn push_equality(&mut self, coeffs: Vec<S>, constant: S, id: RowRef) {
        self.equalities.push(AffineRow { coeffs, constant, id });
    }

    fn lookup(&self) -> HashMap<RowRef, (&AffineRow<S>, bool)> {
        let mut m = HashMap::new();
        for r in &self.inequalities {
            m.insert(r.id, (r, true));
        }
        for r in &self.equalities {
            m.insert(r.id, (r, false));
        }
        m
    }
}

/// Nonnegative combination of system rows claimed to equal `target`.
///
/// Read as: for every feasible `h`,
/// `target . h + constant == sum_k m_k (row_k . h + const_k) >= 0`.
/// A Farkas certificate has a zero target and a negative constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<S> {
    pub terms: Vec<(RowRef, S)>,
    pub target: LinearForm<S>,
    pub constant: S,
}

impl<S: Scalar> Certificate<S> {
    pub fn is_farkas(&self) -> bool {
        self.target.is_trivial() && self.constant.is_neg()
    }

    /// Certificate proving `target >= 0` with a zero constant.
    pub fn proves(&self, target: &[S]) -> bool {
        self.constant.is_negligible()
            && self
                .target
                .coeffs
                .iter()
                .zip(target)
                .all(|(a, b)| (a.clone() - b.clone()).is_negligible())
    }
}

/// Checks a certificate against the rows of `system` (no pins).
pub fn verify_certificate<S: Scalar>(cert: &Certificate<S>, system: &HCone<S>) -> Result<bool> {
    verify_certificate_with_pins(cert, system, &Pins::new())
}

pub fn verify_certificate_with_pins<S: Scalar>(
    cert: &Certificate<S>,
    system: &HCone<S>,
    pins: &Pins<S>,
) -> Result<bool> {
    verify_in_program(cert, &AffineProgram::from_cone(system, pins)?)
}

pub fn verify_in_program<S: Scalar>(cert: &Certificate<S>, prog: &AffineProgram<S>) -> Result<bool> {
    if cert.target.dim() != prog.dim {
        return Err(Error::DimensionMismatch {
            expected: prog.dim,
            found: cert.target.dim(),
        });
    }
    let rows = prog.lookup();
    let mut coeffs = vec![S::zero(); prog.dim];
    let mut constant = S::zero();
    for (id, mult) in &cert.terms {
        let (row, is_ineq) = rows.get(id).ok_or(Error::UnresolvedRow(*id))?;
        if *is_ineq && mult.is_neg() {
            return Ok(false);
        }
        if mult.is_zero() {
            continue;
        }
        for (acc, c) in coeffs.iter_mut().zip(&row.coeffs) {
            if !c.is_zero() {
                *acc = acc.clone() + mult.clone() * c.clone();
            }
        }
        constant = constant + mult.clone() * row.constant.clone();
    }
    let same = |a: &S, b: &S| (a.clone() - b.clone()).is_negligible();
    Ok(coeffs.iter().zip(&cert.target.coeffs).all(|(a, b)| same(a, b))
        && same(&constant, &cert.constant))
}

/// First coordinate where the certificate's row sum and target disagree.
pub fn certificate_mismatch<S: Scalar>(
    cert: &Certificate<S>,
    system: &HCone<S>,
) -> Result<Option<usize>> {
    let prog = AffineProgram::from_cone(system, &Pins::new())?;
    let rows = prog.lookup();
    let mut coeffs = vec![S::zero(); prog.dim];
    for (id, mult) in &cert.terms {
        let (row, _) = rows.get(id).ok_or(Error::UnresolvedRow(*id))?;
        for (acc, c) in coeffs.iter_mut().zip(&row.coeffs) {
            *acc = acc.clone() + mult.clone() * c.clone();
        }
    }
    Ok((0..prog.dim).find(|&i| !(coeffs[i].clone() - cert.target.coeffs[i].clone()).is_negligible()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::CoordinateSpace;
    use crate::scalar::{int, Rational};
    use std::sync::Arc;

    #[test]
    fn empty_certificate_zero_target() {
        let c: HCone<Rational> = HCone::new(Arc::new(CoordinateSpace::anonymous(3)));
        let cert = Certificate {
            terms: vec![],
            target: LinearForm::zero(3),
            constant: int(0),
        };
        assert!(verify_certificate(&cert, &c).unwrap());
    }

    #[test]
    fn unresolved_row_is_an_error() {
        let c: HCone<Rational> = HCone::new(Arc::new(CoordinateSpace::anonymous(1)));
        let cert = Certificate {
            terms: vec![(RowRef::Inequality(4), int(1))],
            target: LinearForm::zero(1),
            constant: int(0),
        };
        assert!(matches!(
            verify_certificate(&cert, &c),
            Err(Error::UnresolvedRow(RowRef::Inequality(4)))
        ));
    }

    #[test]
    fn negative_multiplier_on_inequality_rejected() {
        let mut c: HCone<Rational> = HCone::new(Arc::new(CoordinateSpace::anonymous(1)));
        c.add_inequality(vec![int(1)]).unwrap();
        let cert = Certificate {
            terms: vec![(RowRef::Inequality(0), int(-1))],
            target: LinearForm::geq(vec![int(-1)]),
            constant: int(0),
        };
        assert!(!verify_certificate(&cert, &c).unwrap());
    }
}
