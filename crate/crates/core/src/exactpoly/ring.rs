use std::fmt;
use std::sync::Arc;

use super::{PolyError, MAX_VARS};

/// Shared handle to a variable ring.
pub type RingRef = Arc<VarRing>;

/// A polynomial ring `Q[v1, …, vk]` with named, ordered variables.
///
/// Two rings are the same ring when both the name and the variable list
/// agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarRing {
    name: String,
    vars: Vec<String>,
}

impl VarRing {
    pub fn new<S: Into<String>>(name: S, vars: &[&str]) -> Result<RingRef, PolyError> {
        Self::from_names(name, vars.iter().map(|v| v.to_string()).collect())
    }

    pub fn from_names<S: Into<String>>(name: S, vars: Vec<String>) -> Result<RingRef, PolyError> {
        let name = name.into();
        if vars.len() > MAX_VARS {
            return Err(PolyError::InvalidRing(format!(
                "{name}: {} variables exceeds the limit of {MAX_VARS}",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::InvalidRing(format!("{name}: bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!("{name}: duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(VarRing { name, vars }))
    }

    /// Homogeneous coordinate ring of the plane, `Q[X0, X1, X2]`.
    pub fn plane() -> RingRef {
        Self::new("P2", &["X0", "X1", "X2"]).expect("static ring")
    }

    /// Homogeneous coordinate ring of P⁴ in the coordinates `X0, X1, X2, U, W`.
    pub fn p4() -> RingRef {
        Self::new("P4", &["X0", "X1", "X2", "U", "W"]).expect("static ring")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    pub(crate) fn require_index(&self, var: &str) -> Result<usize, PolyError> {
        self.index_of(var).ok_or_else(|| PolyError::UnknownVariable {
            name: var.to_string(),
            ring: self.name.clone(),
        })
    }
}

impl fmt::Display for VarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.name, self.vars.join(","))
    }
}
