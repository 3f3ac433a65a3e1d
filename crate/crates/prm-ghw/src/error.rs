use num_bigint::BigUint;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter is outside the range an operation accepts.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An enumeration would exceed its budget. `required` is the exact number
    /// of items the full enumeration would visit; the caller can shrink the
    /// problem or raise the budget.
    #[error("budget exceeded: enumeration needs {required} {unit}, budget is {budget}")]
    BudgetExceeded {
        required: BigUint,
        budget: u64,
        unit: &'static str,
    },

    /// Co-lexicographic comparison is only defined for distinct sets.
    #[error("sets are equal; co-lexicographic comparison requires distinct sets")]
    EqualSets,

    /// Two subsets live over different ground sets.
    #[error("mismatched ground sets: [{0}] vs [{1}]")]
    MismatchedGroundSet(u32, u32),

    /// A family member does not have the cardinality the operation requires.
    #[error("family member {member} is not a {size}-element subset")]
    NotUniformSubset { member: String, size: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
