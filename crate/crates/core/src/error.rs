use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("field descriptors differ")]
    DescriptorMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic zero field has no p-th roots")]
    CharZero,
    #[error("element is not a p-th power")]
    NotAPthPower,
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero input")]
    ZeroInput,
    #[error("field has at most {size} elements but degree is {degree}")]
    FieldTooSmall { size: u128, degree: u32 },
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("degree too low: {0}")]
    DegreeTooLow(String),
    #[error("characteristic two is not supported here")]
    CharTwo,
    #[error("not a quadric")]
    NotQuadric,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unit ideal")]
    UnitIdeal,
    #[error("characteristic mismatch")]
    CharacteristicMismatch,
    #[error("generic fibre is not a regular sequence")]
    GenericNotRegular,
    #[error("no regular truncation found up to n = {0}")]
    NotFound(usize),
    #[error("stabilization violated: regular at n = {regular_at} but not at m = {failed_at}")]
    MonotonicityViolated { regular_at: usize, failed_at: usize },
    #[error("maximum iterations reached after {0} steps")]
    MaxIterations(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Budget exhaustion is reported separately from input errors by the CLI.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::MaxIterations(_))
    }
}
