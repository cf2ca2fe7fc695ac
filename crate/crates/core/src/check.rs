//! Outcome of a property check, exact or sampled.

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: String,
    pub passed: bool,
    /// True when every instance of the property was examined.
    pub exact: bool,
    pub samples: usize,
    /// A violating vertex set, always a true counterexample.
    pub witness: Option<Vec<Vertex>>,
    /// Second set of a violating pair, for two-set properties.
    pub witness_other: Option<Vec<Vertex>>,
}

impl CheckReport {
    pub fn pass(property: &str, exact: bool, samples: usize) -> Self {
        CheckReport {
            property: property.to_string(),
            passed: true,
            exact,
            samples,
            witness: None,
            witness_other: None,
        }
    }

    pub fn fail(property: &str, exact: bool, samples: usize, witness: Vec<Vertex>) -> Self {
        CheckReport {
            property: property.to_string(),
            passed: false,
            exact,
            samples,
            witness: Some(witness),
            witness_other: None,
        }
    }

    pub fn with_other(mut self, other: Vec<Vertex>) -> Self {
        self.witness_other = Some(other);
        self
    }
}
