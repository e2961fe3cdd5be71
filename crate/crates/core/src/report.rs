//! Law-by-law check results.

use serde::{Deserialize, Serialize};

/// Where two morphisms that should agree first differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    /// Finite-set tables differ at `index` of the domain. `coords` splits the
    /// index into tensor factors when the domain is a known product.
    Index {
        index: usize,
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        coords: Vec<usize>,
        left: usize,
        right: usize,
    },
    /// Matrices differ at (row, col).
    Entry {
        row: usize,
        col: usize,
        left: usize,
        right: usize,
    },
    Note(String),
}

impl Witness {
    /// Splits a flat index into mixed-radix coordinates for the given factor sizes.
    pub fn with_coords(self, sizes: &[usize]) -> Witness {
        match self {
            Witness::Index { index, left, right, .. } => Witness::Index {
                index,
                coords: split_index(index, sizes),
                left,
                right,
            },
            Witness::Entry { row, col, left, right } => Witness::Entry { row, col, left, right },
            other => other,
        }
    }
}

pub(crate) fn split_index(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &s) in out.iter_mut().zip(sizes).rev() {
        if s == 0 {
            return Vec::new();
        }
        *slot = index % s;
        index /= s;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub law: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(law: impl Into<String>) -> Self {
        Check { law: law.into(), pass: true, witness: None }
    }

    pub fn fail(law: impl Into<String>, witness: Witness) -> Self {
        Check { law: law.into(), pass: false, witness: Some(witness) }
    }

    /// A flag-style check with no witness either way.
    pub fn flag(law: impl Into<String>, pass: bool) -> Self {
        Check { law: law.into(), pass, witness: None }
    }
}

/// An ordered list of checks. Serializes as a bare JSON array.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Records `law` as passing when `diff` is `None`, failing with the witness otherwise.
    pub fn record(&mut self, law: impl Into<String>, diff: Option<Witness>) {
        match diff {
            None => self.push(Check::pass(law)),
            Some(w) => self.push(Check::fail(law, w)),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every law name prefixed.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.law = format!("{prefix}{}", c.law);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, law: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.law == law)
    }
}
