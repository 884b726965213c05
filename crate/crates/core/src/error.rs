use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a structure needs at least one element")]
    NotAStructure,
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry {value} at row {row}, column {column} is outside 1..{order}")]
    EntryOutOfRange { row: usize, column: usize, value: usize, order: usize },
    /// Column `column` (1-based) repeats the value `value` (1-based).
    #[error("not a right quasigroup: column {column} repeats value {value}")]
    NotRightQuasigroup { column: usize, value: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("symbol `{0}` is not available on this structure")]
    SymbolUnavailable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("f is not an automorphism of the group")]
    NotAutomorphism,
    #[error("ill-formed endomorphism: {0}")]
    IllFormedEndomorphism(String),
    #[error("Alexander condition fails: {0}")]
    AlexanderConditionsFail(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unexpected token `{token}`")]
    BadToken { line: usize, column: usize, token: String },
    #[error("arc {0} is used more than twice or twice in the same role")]
    DuplicateArcUse(u32),
    #[error("arc {0} does not close up into a strand")]
    OpenStrand(u32),
    #[error("diagram mixes signed (X+/X-) and unsigned (X) crossings")]
    MixedOrientationSyntax,
    #[error("structure fails suite {suite}: {violations} violation(s)")]
    SuiteFailure { suite: String, violations: usize },
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("fixture {id} mismatch: expected failing {expected:?}, observed {observed:?}")]
    FixtureMismatch { id: String, expected: Vec<String>, observed: Vec<String> },
}
