use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("element does not belong to the model: {0}")]
    ModelMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("region is not contained in the domain of the function")]
    RegionOutsideDomain,
    #[error("invalid special cut {cut}: expected 1..={max}")]
    InvalidCut { cut: u32, max: u32 },
    #[error("extension plan is not weakly increasing")]
    NonMonotonePlan,
    #[error("gap lies between two chains; insert a Z-chain instead")]
    BetweenChains,
    #[error("successor choice violates monotonicity of chi: {0}")]
    MonotonicityViolation(String),
    #[error("element already lies in the span of the submodel")]
    ElementInSubmodel,
    #[error("invalid submodel: {0}")]
    InvalidSubmodel(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedToken(String),
    UnknownGenerator(String),
    UnknownIdentifier(String),
    InvalidDivisor,
    InvalidNumber(String),
    Unsupported(String),
    TrailingInput,
}

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected token `{t}`"),
            ParseErrorKind::UnknownGenerator(g) => write!(f, "unknown generator `{g}`"),
            ParseErrorKind::UnknownIdentifier(i) => write!(f, "unknown identifier `{i}`"),
            ParseErrorKind::InvalidDivisor => write!(f, "invalid divisor: div needs n >= 1"),
            ParseErrorKind::InvalidNumber(n) => write!(f, "invalid number `{n}`"),
            ParseErrorKind::Unsupported(what) => write!(f, "unsupported: {what}"),
            ParseErrorKind::TrailingInput => write!(f, "trailing input"),
        }
    }
}

impl core::error::Error for ParseError {}
