use crate::report::ValidationReport;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("invalid {what}: {report}")]
    Invalid {
        what: &'static str,
        report: ValidationReport,
    },

    #[error("budget exceeded while {what}: needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u64,
    },

    #[error("modulus {0} is not prime; this operation needs a field")]
    NotAField(u32),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("subcategory is not a strictly full subcategory of this category")]
    NotStrictlyFull,

    #[error("no strictly full subcategory D satisfies J^D = J")]
    NoMatchingSubcategory,

    #[error("module is not projective: {0}")]
    NotProjective(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Hard cap on brute-force enumerations. Exceeding it is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 1 << 20;

    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.limit as u128 {
            Err(Error::BudgetExceeded {
                what,
                needed,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Checks `base^exp` candidates against the limit without overflowing.
    pub fn check_power(&self, what: &'static str, base: u32, exp: usize) -> Result<()> {
        self.check(what, saturating_pow(base as u128, exp))
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}
