//! Uniform pass/fail records for every identity checker.

use std::fmt::{self, Display};

use serde::Serialize;

/// One checked identity instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub identity: String,
    pub indices: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

/// An ordered collection of checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record `lhs == rhs`.
    pub fn compare<T: PartialEq + Display>(
        &mut self,
        identity: &str,
        indices: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> bool {
        let holds = lhs == rhs;
        self.checks.push(Check {
            identity: identity.to_string(),
            indices: indices.into(),
            holds,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        holds
    }

    /// Record a predicate with a free-form description of both sides.
    pub fn assert(&mut self, identity: &str, indices: impl Into<String>, holds: bool, lhs: String, rhs: String) {
        self.checks.push(Check {
            identity: identity.to_string(),
            indices: indices.into(),
            holds,
            lhs,
            rhs,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    /// Checks of one named identity.
    pub fn named<'a>(&'a self, identity: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.identity == identity)
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.holds { "pass" } else { "FAIL" };
            writeln!(f, "{mark}  {}  [{}]", c.identity, c.indices)?;
            if !c.holds {
                writeln!(f, "      lhs = {}", c.lhs)?;
                writeln!(f, "      rhs = {}", c.rhs)?;
            }
        }
        Ok(())
    }
}
