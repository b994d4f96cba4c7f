use std::fmt;

use crate::ident::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

/// 1-based line and inclusive 1-based column range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column_start: usize,
    pub column_end: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column_start: usize, column_end: usize) -> Self {
        debug_assert!(line >= 1 && column_start >= 1 && column_start <= column_end);
        SourceSpan {
            line,
            column_start,
            column_end,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Span(SourceSpan),
    Label(Label),
    /// Free-form pointer to a constraint or identifier.
    Item(String),
    Whole,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub location: Location,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: &'static str, location: Location, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            location,
            message: message.into(),
        }
    }

    pub fn warning(code: &'static str, location: Location, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            location,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}[{}]", self.code)?;
        match &self.location {
            Location::Span(s) => write!(f, " {}:{}-{}", s.line, s.column_start, s.column_end)?,
            Location::Label(l) => write!(f, " {l}")?,
            Location::Item(s) => write!(f, " {s}")?,
            Location::Whole => {}
        }
        write!(f, ": {}", self.message)
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
