//! Three-valued outcomes with checkable witnesses.

use serde::Serialize;

use crate::factor::Factorization;
use crate::ring::{LaurentPoly, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Proved,
    Refuted,
    Undecided,
}

/// The rule that certified a PROVED verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// The singular-locus system has only the trivial solution.
    Criterion,
    /// Total degree one with coprime coefficients.
    DegreeOne,
    /// A linear homogeneous system of full column rank.
    LinearRank,
    /// Univariate binomial `a x + b`: every power substitution stays
    /// irreducible by the classification of reducible binomials.
    Binomial,
    /// Degree one in some variable with trivial content in that variable.
    LinearInVariable,
    /// An irreducible univariate specialization preserving the main degree.
    Specialization,
    /// Exhaustive recombination after Kronecker substitution.
    Recombination,
    /// A strongly irreducible polynomial against one in fewer variables.
    FewerVariables,
    /// Some component of a vector is proved.
    Component,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A nontrivial factorization, optionally after the power substitution
    /// `x_i -> x_i^{t_i}`.
    Factorization {
        substitution: Option<Vec<i64>>,
        polynomial: LaurentPoly,
        factorization: Factorization,
    },
    /// Evaluations at monomial images sharing a nonunit factor.
    CommonFactor {
        images_p: Vec<Monomial>,
        images_q: Vec<Monomial>,
        p_image: LaurentPoly,
        q_image: LaurentPoly,
        gcd: LaurentPoly,
    },
    /// Per-component verdicts of a vector check.
    Components { verdicts: Vec<Verdict> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub rule: Option<Rule>,
    pub reason: String,
    /// Set when UNDECIDED because a work budget ran out.
    pub resource_exhausted: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn proved(rule: Rule, reason: impl Into<String>) -> Self {
        Verdict { status: Status::Proved, rule: Some(rule), reason: reason.into(), resource_exhausted: false, witness: None }
    }

    pub fn refuted(witness: Witness, reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Refuted,
            rule: None,
            reason: reason.into(),
            resource_exhausted: false,
            witness: Some(witness),
        }
    }

    pub fn undecided(reason: impl Into<String>) -> Self {
        Verdict { status: Status::Undecided, rule: None, reason: reason.into(), resource_exhausted: false, witness: None }
    }

    pub fn resource(reason: impl Into<String>) -> Self {
        Verdict { resource_exhausted: true, ..Verdict::undecided(reason) }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }
}
