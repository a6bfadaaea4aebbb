use std::fmt;

use thiserror::Error;

/// A location inside a piece of source text (FOE class text, binding lists).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    /// Byte offset from the start of the text.
    pub offset: usize,
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
}

impl Position {
    pub fn locate(text: &str, offset: usize) -> Self {
        let offset = offset.min(text.len());
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        Position {
            offset,
            line,
            column,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("schema must declare at least one dimension")]
    EmptySchema,
    #[error("duplicate dimension name `{0}`")]
    DuplicateDimensionName(String),
    #[error("invalid dimension `{name}`: {reason}")]
    InvalidDimension { name: String, reason: String },
    #[error("expected {expected} coordinates, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("dimension `{dim}` expects {expected}, got {found}")]
    KindMismatch {
        dim: String,
        expected: String,
        found: String,
    },
    #[error("`{value}` is not a value of categorical dimension `{dim}`")]
    UnknownCategory { dim: String, value: String },
    #[error("dimension `{dim}`: {value} lies outside [{lo}, {hi}]")]
    OutOfBounds {
        dim: String,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("vectors belong to different schemas")]
    SchemaMismatch,
    #[error("dimension `{0}` does not support arithmetic")]
    NonArithmeticDimension(String),
    #[error("scalar {0} is not integral but the schema has integer dimensions")]
    NonIntegralScalarOnIntegerDimension(f64),
    #[error("integer overflow on dimension `{0}`")]
    IntegerOverflow(String),
    #[error("unknown dimension `{0}`")]
    UnknownDimension(String),
    #[error("projection onto an empty dimension set")]
    EmptyProjection,
    #[error("dimension `{0}` is not numeric")]
    NonNumericDimension(String),
    #[error("record {record} failed validation: {reason}")]
    ValidationFailure { record: String, reason: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),

    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Position, message: String },
    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdentifier { name: String, pos: Position },
    #[error("type error at {pos}: {message}")]
    Type { pos: Position, message: String },
    #[error("parameter `{name}` declared twice at {pos}")]
    DuplicateParameter { name: String, pos: Position },
    #[error("missing binding for parameter `{name}` (declared at {pos})")]
    MissingParameter { name: String, pos: Position },
    #[error("`{name}` is not a parameter of this class{}", fmt_pos(.pos))]
    UnknownParameter { name: String, pos: Option<Position> },
    #[error("class `{class}` takes {expected} parameters, {found} given at {pos}")]
    BindingArity {
        class: String,
        expected: usize,
        found: usize,
        pos: Position,
    },
    #[error("the function of existence has an empty extension")]
    EmptyExtension,

    #[error("a region needs at least one point")]
    EmptyPointList,
    #[error("regions span different dimensions")]
    DimensionMismatch,
    #[error("vector {0} is not a member of the existence set")]
    NotAMember(String),

    #[error("invalid Minkowski order {0}: must be >= 1")]
    InvalidOrder(f64),
    #[error("existence set is empty")]
    EmptyExistenceSet,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("at least {needed} vectors are required, got {found}")]
    TooFewVectors { needed: usize, found: usize },
    #[error("target is not in the span of the candidates (residual {residual})")]
    NotInSpan { residual: f64 },
    #[error("probability model would need {0} cells")]
    TooManyCells(u128),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn fmt_pos(pos: &Option<Position>) -> String {
    pos.map(|p| format!(" (at {p})")).unwrap_or_default()
}

impl Error {
    /// Stable machine-readable code, used by the CLI's JSON envelope.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptySchema => "EMPTY_SCHEMA",
            Error::DuplicateDimensionName(_) => "DUPLICATE_DIMENSION_NAME",
            Error::InvalidDimension { .. } => "INVALID_DIMENSION",
            Error::ArityMismatch { .. } => "ARITY_MISMATCH",
            Error::KindMismatch { .. } => "KIND_MISMATCH",
            Error::UnknownCategory { .. } => "UNKNOWN_CATEGORY",
            Error::OutOfBounds { .. } => "OUT_OF_BOUNDS",
            Error::SchemaMismatch => "SCHEMA_MISMATCH",
            Error::NonArithmeticDimension(_) => "NON_ARITHMETIC_DIMENSION",
            Error::NonIntegralScalarOnIntegerDimension(_) => {
                "NON_INTEGRAL_SCALAR_ON_INTEGER_DIMENSION"
            }
            Error::IntegerOverflow(_) => "INTEGER_OVERFLOW",
            Error::UnknownDimension(_) => "UNKNOWN_DIMENSION",
            Error::EmptyProjection => "EMPTY_PROJECTION",
            Error::NonNumericDimension(_) => "NON_NUMERIC_DIMENSION",
            Error::ValidationFailure { .. } => "VALIDATION_FAILURE",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Io(_) => "IO_ERROR",
            Error::Syntax { .. } => "SYNTAX_ERROR",
            Error::UnknownIdentifier { .. } => "UNKNOWN_IDENTIFIER",
            Error::Type { .. } => "TYPE_ERROR",
            Error::DuplicateParameter { .. } => "DUPLICATE_PARAMETER",
            Error::MissingParameter { .. } => "MISSING_PARAMETER",
            Error::UnknownParameter { .. } => "UNKNOWN_PARAMETER",
            Error::BindingArity { .. } => "BINDING_ARITY",
            Error::EmptyExtension => "EMPTY_EXTENSION",
            Error::EmptyPointList => "EMPTY_POINT_LIST",
            Error::DimensionMismatch => "DIMENSION_MISMATCH",
            Error::NotAMember(_) => "NOT_A_MEMBER",
            Error::InvalidOrder(_) => "INVALID_ORDER",
            Error::EmptyExistenceSet => "EMPTY_EXISTENCE_SET",
            Error::InvalidWeights(_) => "INVALID_WEIGHTS",
            Error::TooFewVectors { .. } => "TOO_FEW_VECTORS",
            Error::NotInSpan { .. } => "NOT_IN_SPAN",
            Error::TooManyCells(_) => "TOO_MANY_CELLS",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
        }
    }

    /// Source position, for errors raised while reading FOE text.
    pub fn position(&self) -> Option<Position> {
        match self {
            Error::Syntax { pos, .. }
            | Error::UnknownIdentifier { pos, .. }
            | Error::Type { pos, .. }
            | Error::DuplicateParameter { pos, .. }
            | Error::MissingParameter { pos, .. }
            | Error::BindingArity { pos, .. } => Some(*pos),
            Error::UnknownParameter { pos, .. } => *pos,
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
