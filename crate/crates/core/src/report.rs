use std::fmt;

use serde::Serialize;

/// One violated law, with the indices or names that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

/// Outcome of a structural check: empty means pass.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule: rule.into(),
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn into_result(self, what: &'static str) -> crate::Result<()> {
        if self.passes() {
            Ok(())
        } else {
            Err(crate::Error::Invalid { what, report: self })
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passes() {
            return write!(f, "pass");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}: {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}
