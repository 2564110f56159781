use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::entropy::CoordinateSpace;
use crate::error::{Error, Result};
use crate::scalar::{dot, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    GeqZero,
    EqZero,
}

/// `coeffs · h >= 0` or `coeffs · h == 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<S> {
    pub coeffs: Vec<S>,
    pub relation: Relation,
}

impl<S: Scalar> LinearForm<S> {
    pub fn geq(coeffs: Vec<S>) -> Self {
        LinearForm {
            coeffs,
            relation: Relation::GeqZero,
        }
    }

    pub fn eq(coeffs: Vec<S>) -> Self {
        LinearForm {
            coeffs,
            relation: Relation::EqZero,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::geq(vec![S::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible())
    }

    pub fn eval(&self, h: &[S]) -> S {
        dot(&self.coeffs, h)
    }

    pub fn negated(&self) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            relation: self.relation,
        }
    }

    pub fn scaled(&self, f: &S) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| c.clone() * f.clone()).collect(),
            relation: self.relation,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            relation: self.relation,
        }
    }

    /// Positive rescaling to coprime integers (exact) or unit max-norm (float).
    pub fn primitive(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        S::make_primitive(&mut coeffs);
        LinearForm {
            coeffs,
            relation: self.relation,
        }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_negligible())
            .collect()
    }

    /// Human readable `+1 H(A0,B0) -1 H(A0) >= 0`.
    pub fn render(&self, space: &CoordinateSpace) -> String {
        let mut out = String::new();
        for i in self.support() {
            let c = &self.coeffs[i];
            let sign = if c.is_neg() { "-" } else { "+" };
            let mag = c.abs();
            if !out.is_empty() {
                out.push(' ');
            }
            if mag == S::one() {
                out.push_str(&format!("{sign}{}", space.label(i)));
            } else {
                out.push_str(&format!("{sign}{mag} {}", space.label(i)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        match self.relation {
            Relation::GeqZero => out.push_str(" >= 0"),
            Relation::EqZero => out.push_str(" = 0"),
        }
        out
    }
}

/// Identifies a row of a system, including pins added for one LP call.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowRef {
    Inequality(usize),
    Equality(usize),
    /// `h[k] - value == 0`
    Pin(usize),
    /// `h[k] - lower >= 0`
    PinLower(usize),
    /// `upper - h[k] >= 0`
    PinUpper(usize),
    /// Caller-supplied affine row of a custom program.
    Extra(usize),
}

impl RowRef {
    pub fn is_inequality(self) -> bool {
        matches!(
            self,
            RowRef::Inequality(_) | RowRef::PinLower(_) | RowRef::PinUpper(_)
        )
    }
}

/// `{h : M h >= 0, L h == 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HCone<S> {
    pub space: Arc<CoordinateSpace>,
    pub inequalities: Vec<LinearForm<S>>,
    pub equalities: Vec<LinearForm<S>>,
}

impl<S: Scalar> HCone<S> {
    pub fn new(space: Arc<CoordinateSpace>) -> Self {
        HCone {
            space,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn add_inequality(&mut self, coeffs: Vec<S>) -> Result<usize> {
        self.check_len(coeffs.len())?;
        self.inequalities.push(LinearForm::geq(coeffs));
        Ok(self.inequalities.len() - 1)
    }

    pub fn add_equality(&mut self, coeffs: Vec<S>) -> Result<usize> {
        self.check_len(coeffs.len())?;
        self.equalities.push(LinearForm::eq(coeffs));
        Ok(self.equalities.len() - 1)
    }

    /// Adds `h[k] == 0` for the empty-set coordinate when the space has one.
    pub fn with_normalization(mut self) -> Self {
        if let Some(k) = self.space.empty_index() {
            let mut e = vec![S::zero(); self.dim()];
            e[k] = S::one();
            if !self.equalities.iter().any(|f| f.coeffs == e) {
                self.equalities.push(LinearForm::eq(e));
            }
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        for f in self.inequalities.iter().chain(&self.equalities) {
            self.check_len(f.dim())?;
        }
        Ok(())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: n,
            });
        }
        Ok(())
    }

    pub fn row(&self, r: RowRef) -> Option<&LinearForm<S>> {
        match r {
            RowRef::Inequality(i) => self.inequalities.get(i),
            RowRef::Equality(i) => self.equalities.get(i),
            _ => None,
        }
    }

    /// Index of an inequality equal to `coeffs` after positive rescaling.
    pub fn find_inequality(&self, coeffs: &[S]) -> Option<usize> {
        let mut target = coeffs.to_vec();
        S::make_primitive(&mut target);
        self.inequalities.iter().position(|f| {
            let mut c = f.coeffs.clone();
            S::make_primitive(&mut c);
            c == target
        })
    }

    pub fn contains(&self, h: &[S]) -> bool {
        self.inequalities.iter().all(|f| !f.eval(h).is_neg())
            && self.equalities.iter().all(|f| f.eval(h).is_negligible())
    }

    /// Drops rows that are positive multiples of an earlier row and trivial rows.
    pub fn dedup(&mut self) {
        let mut seen: Vec<Vec<S>> = Vec::new();
        self.inequalities.retain(|f| {
            if f.is_trivial() {
                return false;
            }
            let p = f.primitive().coeffs;
            if seen.contains(&p) {
                false
            } else {
                seen.push(p);
                true
            }
        });
        let mut seen_eq: Vec<Vec<S>> = Vec::new();
        self.equalities.retain(|f| {
            if f.is_trivial() {
                return false;
            }
            let p = f.primitive().coeffs;
            let n: Vec<S> = p.iter().map(|x| -x.clone()).collect();
            if seen_eq.contains(&p) || seen_eq.contains(&n) {
                false
            } else {
                seen_eq.push(p);
                true
            }
        });
    }

    /// Same cone with every coefficient converted to another scalar type.
    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> HCone<T> {
        let conv = |l: &LinearForm<S>| LinearForm {
            coeffs: l.coeffs.iter().map(&f).collect(),
            relation: l.relation,
        };
        HCone {
            space: self.space.clone(),
            inequalities: self.inequalities.iter().map(conv).collect(),
            equalities: self.equalities.iter().map(conv).collect(),
        }
    }
}

/// Generators of a cone: extremal rays plus a basis of the lineality space.
#[derive(Clone, Debug, PartialEq)]
pub struct VCone<S> {
    pub space: Arc<CoordinateSpace>,
    pub rays: Vec<Vec<S>>,
    pub lineality: Vec<Vec<S>>,
}

impl<S: Scalar> VCone<S> {
    pub fn new(space: Arc<CoordinateSpace>, rays: Vec<Vec<S>>) -> Self {
        VCone {
            space,
            rays,
            lineality: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

/// Canonical positive scaling of a ray: coprime integers for exact scalars.
pub fn canonical_ray<S: Scalar>(ray: &[S]) -> Vec<S> {
    let mut v = ray.to_vec();
    S::make_primitive(&mut v);
    v
}

/// Canonical scaling of a line (direction up to any nonzero factor): the
/// first nonzero entry is made positive.
pub fn canonical_line<S: Scalar>(line: &[S]) -> Vec<S> {
    let mut v = canonical_ray(line);
    if let Some(first) = v.iter().find(|x| !x.is_negligible()) {
        if first.is_neg() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    v
}

pub(crate) fn lex_cmp<S: Scalar>(a: &[S], b: &[S]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}
