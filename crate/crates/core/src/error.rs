use thiserror::Error;

/// Position of a syntax problem inside a text input, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },

    #[error("unknown generator `{name}` at {at}")]
    UnknownGenerator { name: String, at: Location },

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("relator {0} is empty after free reduction")]
    EmptyRelator(usize),

    #[error("generator index {index} out of range 1..={count}")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("division over the integers requires a monic divisor")]
    NonMonicDivisor,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{count} minors requested, above the limit of {limit}")]
    TooManyMinors { count: u128, limit: u128 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("image of generator {0} is not invertible")]
    NotInvertible(usize),

    #[error("image of generator {0} does not have determinant 1")]
    NotSpecialLinear(usize),

    #[error("relator {0} does not evaluate to the identity")]
    RelatorNotSatisfied(usize),

    #[error("det Phi(x_j - 1) vanishes for every generator j")]
    NoInvertibleColumn,

    #[error("column {0} has det Phi(x_j - 1) = 0")]
    SingularColumn(usize),

    #[error("search exceeded the node budget of {0}")]
    BudgetExceeded(u64),

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
