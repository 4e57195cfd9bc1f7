use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PdKind {
    Exact,
    AtLeast,
}

/// A projective or global dimension: exact, or a lower bound from a
/// computation stopped at the cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdValue {
    pub kind: PdKind,
    pub value: usize,
}

impl PdValue {
    pub fn exact(value: usize) -> Self {
        PdValue {
            kind: PdKind::Exact,
            value,
        }
    }

    pub fn at_least(value: usize) -> Self {
        PdValue {
            kind: PdKind::AtLeast,
            value,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == PdKind::Exact
    }

    /// Whether the true value is certainly at least `n`.
    pub fn is_at_least(&self, n: usize) -> bool {
        self.value >= n
    }

    /// Whether the true value is certainly at most `n`.
    pub fn is_at_most(&self, n: usize) -> bool {
        self.is_exact() && self.value <= n
    }

    /// Supremum of two values; a lower bound absorbs anything it dominates.
    pub fn max(self, other: PdValue) -> PdValue {
        let value = self.value.max(other.value);
        if self.is_exact() && other.is_exact() {
            PdValue::exact(value)
        } else {
            PdValue::at_least(value)
        }
    }
}

impl fmt::Display for PdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PdKind::Exact => write!(f, "{}", self.value),
            PdKind::AtLeast => write!(f, ">={}", self.value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maxima() {
        assert_eq!(PdValue::exact(1).max(PdValue::exact(3)), PdValue::exact(3));
        assert_eq!(PdValue::exact(5).max(PdValue::at_least(3)), PdValue::at_least(5));
        assert_eq!(PdValue::at_least(4).to_string(), ">=4");
        let json = serde_json::to_string(&PdValue::at_least(2)).unwrap();
        assert_eq!(json, r#"{"kind":"at_least","value":2}"#);
        assert!(PdValue::at_least(2).is_at_least(2) && !PdValue::at_least(2).is_at_most(9));
    }
}
