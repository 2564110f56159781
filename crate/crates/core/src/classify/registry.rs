use serde::{Deserialize, Serialize};

use crate::entropy::{functional, CoordinateSpace, EntropyVector, Expr};
use crate::error::{Error, Result};
use crate::exactgeom::LinearForm;
use crate::scalar::{Rational, Scalar};
use crate::scenarios::{MarginalScenario, ScenarioSpec};

/// Which side of zero the expression is claimed to stay on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    AtLeastZero,
    AtMostZero,
}

#[derive(Clone, Debug)]
pub struct NamedInequality {
    pub id: &'static str,
    pub description: &'static str,
    pub scenario: ScenarioSpec,
    pub expr: Expr,
    pub sense: Sense,
}

impl NamedInequality {
    pub fn build_scenario(&self) -> Result<MarginalScenario> {
        self.scenario.build()
    }

    /// Coefficients of the expression itself.
    pub fn expression_form(&self, space: &CoordinateSpace) -> Result<LinearForm<Rational>> {
        functional(&self.expr, space)
    }

    /// The claim as a `>= 0` form (the expression, negated when it is an
    /// upper bound).
    pub fn form(&self, space: &CoordinateSpace) -> Result<LinearForm<Rational>> {
        let f = self.expression_form(space)?;
        Ok(match self.sense {
            Sense::AtLeastZero => f,
            Sense::AtMostZero => f.negated(),
        })
    }

    /// Value of the expression on an entropy vector of any scalar type.
    pub fn value<S: Scalar>(&self, h: &EntropyVector<S>) -> Result<S> {
        let f = self.expression_form(&h.space)?;
        let coeffs: Vec<S> = f.coeffs.iter().map(crate::scalar::from_rational).collect();
        h.eval(&LinearForm::geq(coeffs))
    }

    pub fn is_violated<S: Scalar>(&self, value: &S) -> bool {
        match self.sense {
            Sense::AtLeastZero => value.is_neg(),
            Sense::AtMostZero => value.is_pos(),
        }
    }
}

fn entry(
    id: &'static str,
    description: &'static str,
    scenario: &str,
    expr: &str,
    sense: Sense,
) -> NamedInequality {
    NamedInequality {
        id,
        description,
        scenario: scenario.parse().expect("registry scenario"),
        expr: Expr::parse(expr).expect("registry expression"),
        sense,
    }
}

fn chsh_terms(b: char) -> String {
    format!(
        "I(A0:{b}0) + I(A0:{b}1) + I(A1:{b}0) - I(A1:{b}1) - H(A0) - H({b}0)"
    )
}

/// The built-in inequalities.
pub fn registry() -> Vec<NamedInequality> {
    use Sense::*;
    vec![
        entry(
            "echsh",
            "entropic CHSH",
            "bell:2x2",
            &chsh_terms('B'),
            AtMostZero,
        ),
        entry(
            "s3",
            "entropic Collins-Gisin inequality for three settings",
            "bell:3x3",
            "I(A0:B2) - I(A0:B1) + I(A1:B1) - I(A1:B0) + I(A1:B2) + I(A2:B2) + I(A2:B1) \
             + I(A2:B0) - H(A2) - 2 H(B2) - H(B1)",
            AtMostZero,
        ),
        entry(
            "m3",
            "tripartite nonlocality witness from the chain rule",
            "bell:2x2x2",
            "H(A0,B1,C1) - H(A1,B1,C1) - H(A1,B1,C0) - H(A1,B0,C1) - H(A0,B0,C0) + H(B0,C0) \
             + H(A1,C1) + H(A1,B1)",
            AtMostZero,
        ),
        entry(
            "monogamy",
            "monogamy of entropic CHSH violations",
            "bell:2x2x2",
            &format!("{} + {}", chsh_terms('B'), chsh_terms('C')),
            AtMostZero,
        ),
        entry(
            "gtnl",
            "genuine tripartite nonlocality witness (ten-term form)",
            "bell:2x2x2",
            GTNL_TEN_TERM,
            AtLeastZero,
        ),
        entry(
            "biloc_activation",
            "bilocality witness without choice for Bob and Charlie",
            "bilocal:2x1x1",
            "H(A0,B) + H(A1,B,C) - H(A1,B) - H(A0,C)",
            AtLeastZero,
        ),
        entry(
            "sbl",
            "bilocality witness with marginal terms",
            "bilocal:2x2x2",
            "-H(A0,B0,C0) + H(A1,B1,C0) + H(A0,B0,C1) + H(A1,B1,C1) - H(A1,C1) - H(A1,B1)",
            AtLeastZero,
        ),
        entry(
            "ic",
            "information causality",
            "ic",
            "I(X0:G0) + I(X1:G1) - H(M)",
            AtMostZero,
        ),
    ]
}

const GTNL_TEN_TERM: &str = "H(A1,B1,C0) + H(A1,B0,C0) + H(A1,B0,C1) + H(A0,B1,C0) + H(A0,B1,C1) \
     - H(A1,B1,C1) - H(A1,B0) - H(A1,C0) - H(A0,C1) - H(B1,C0)";

/// The nine-term variant of the tripartite witness, lacking `+H(A0,B1,C1)`.
pub fn gtnl_nine_term() -> NamedInequality {
    entry(
        "gtnl9",
        "genuine tripartite nonlocality witness (nine-term form)",
        "bell:2x2x2",
        "H(A1,B1,C0) + H(A1,B0,C0) + H(A1,B0,C1) + H(A0,B1,C0) - H(A1,B1,C1) - H(A1,B0) \
         - H(A1,C0) - H(A0,C1) - H(B1,C0)",
        Sense::AtLeastZero,
    )
}

/// Registry entry by id; `gtnl9` resolves to the nine-term variant.
pub fn named_inequality(id: &str) -> Result<NamedInequality> {
    if id == "gtnl9" {
        return Ok(gtnl_nine_term());
    }
    registry()
        .into_iter()
        .find(|n| n.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}
