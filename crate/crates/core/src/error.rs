use std::fmt;

use thiserror::Error;

use crate::ideal::Side;

pub type Result<T> = std::result::Result<T, Error>;

/// Which defining law of a ring or module failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Closure,
    AddAssociativity,
    AddCommutativity,
    AddIdentity,
    AddInverse,
    Associativity,
    LeftDistributivity,
    RightDistributivity,
    Identity,
    Inverse,
    Unital,
    Compatibility,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Closure => "closure",
            Axiom::AddAssociativity => "additive associativity",
            Axiom::AddCommutativity => "additive commutativity",
            Axiom::AddIdentity => "additive identity",
            Axiom::AddInverse => "additive inverse",
            Axiom::Associativity => "associativity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::Identity => "multiplicative identity",
            Axiom::Inverse => "inverse",
            Axiom::Unital => "unital action",
            Axiom::Compatibility => "bimodule compatibility",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{axiom} fails at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },

    #[error("size limit exceeded: {what} reached {size} (limit {limit})")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("element {element} is not regular: {element} * {witness} = 0 or {witness} * {element} = 0")]
    NotRegular { element: usize, witness: usize },

    #[error("element set is not multiplicative: {0} * {1} falls outside")]
    NotMultiplicative(usize, usize),

    #[error("unit set is not saturated: {0} is a unit missing from it")]
    NotSaturated(usize),

    #[error("ring has torsion on the {side} side: element {element} is annihilated by the minimal filter member")]
    TorsionWitness { side: Side, element: usize },

    #[error("not a Gabriel filter: {0}")]
    NotGabriel(crate::filter::FilterViolation),

    #[error("incompatible inputs: {0}")]
    Mismatch(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("map is not well defined: {0}")]
    NotWellDefined(String),

    #[error("structural check failed ({what}): {witness}")]
    PropositionFailure { what: String, witness: String },

    #[error("sequence is not exact at {junction}: {witness}")]
    ExactnessFailure { junction: String, witness: String },
}

impl Error {
    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    pub(crate) fn failure(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::PropositionFailure {
            what: what.into(),
            witness: witness.into(),
        }
    }
}
