use std::fmt;

use serde::Serialize;

/// 1-based line and column (in characters).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Diagnostic codes; each names one class of input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Code {
    /// Unexpected character or token.
    Syntax,
    UnknownConstructor,
    UnresolvedName,
    ArityMismatch,
    DuplicateName,
    BadElement,
    /// A constructor or directive argument violates its constraint.
    Constraint,
    UnknownKeyword,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "E001",
            Code::UnknownConstructor => "E002",
            Code::UnresolvedName => "E003",
            Code::ArityMismatch => "E004",
            Code::DuplicateName => "E005",
            Code::BadElement => "E006",
            Code::Constraint => "E007",
            Code::UnknownKeyword => "E008",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: &'static str,
    pub pos: Pos,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: Code, pos: Pos, message: impl Into<String>) -> Diagnostic {
        Diagnostic { code: code.as_str(), pos, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.code, self.pos, self.message)
    }
}

impl std::error::Error for Diagnostic {}
