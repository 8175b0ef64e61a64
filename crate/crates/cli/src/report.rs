//! Command output and failure classification.

use std::fmt;

use cy3kit::arrangement::ArrangementError;
use cy3kit::fixtures::LineError;
use cy3kit::formal_group::FormalGroupError;
use cy3kit::hodge_ledger::LedgerError;
use cy3kit::invariant_theory::InvariantError;
use cy3kit::multipoly::{ParseError, PolyError};
use cy3kit::ring_tower::LiftError;
use cy3kit::stienstra::StienstraError;
use cy3kit::tate_oort::TateOortError;
use serde_json::{json, Value};

/// Version of the structured output layout.
pub const OUTPUT_SCHEMA: u32 = 1;

pub const EXIT_MALFORMED: u8 = 2;
pub const EXIT_REFUSED: u8 = 3;
pub const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self { command, lines: Vec::new(), data: json!({}) }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn with(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.lines.join("\n");
                s.push('\n');
                s
            }
            Format::Json => {
                let v = json!({ "schema": OUTPUT_SCHEMA, "command": self.command, "result": self.data });
                let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn malformed(message: impl Into<String>) -> Self {
        Self { code: EXIT_MALFORMED, message: message.into() }
    }

    pub fn refused(message: impl Into<String>) -> Self {
        Self { code: EXIT_REFUSED, message: message.into() }
    }

    pub fn check(message: impl Into<String>) -> Self {
        Self { code: EXIT_CHECK_FAILED, message: message.into() }
    }

    pub fn kind(&self) -> &'static str {
        match self.code {
            EXIT_MALFORMED => "malformed input",
            EXIT_REFUSED => "refused",
            _ => "check failed",
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => format!("error ({}): {}\n", self.kind(), self.message),
            Format::Json => {
                let v = json!({ "schema": OUTPUT_SCHEMA, "error": { "code": self.code, "kind": self.kind(), "message": self.message } });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize"))
            }
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.message, self.code)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::malformed(e.to_string())
    }
}

impl From<LineError> for Failure {
    fn from(e: LineError) -> Self {
        Failure::malformed(e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::malformed(e.to_string())
    }
}

impl From<StienstraError> for Failure {
    fn from(e: StienstraError) -> Self {
        match e {
            StienstraError::EvenPrime(_) | StienstraError::NoReduction { .. } => Failure::refused(e.to_string()),
            _ => Failure::malformed(e.to_string()),
        }
    }
}

impl From<FormalGroupError> for Failure {
    fn from(e: FormalGroupError) -> Self {
        match e {
            FormalGroupError::NonIntegral { .. } => Failure::refused(e.to_string()),
            FormalGroupError::Axiom(_) | FormalGroupError::CrossCheck(_) => Failure::check(e.to_string()),
            _ => Failure::malformed(e.to_string()),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::CrossCheck { .. } => Failure::check(e.to_string()),
            InvariantError::NonIsolated { .. } => Failure::refused(e.to_string()),
            _ => Failure::malformed(e.to_string()),
        }
    }
}

impl From<ArrangementError> for Failure {
    fn from(e: ArrangementError) -> Self {
        match e {
            ArrangementError::NoReduction { .. } | ArrangementError::Degenerate { .. } => Failure::refused(e.to_string()),
            _ => Failure::malformed(e.to_string()),
        }
    }
}

impl From<LedgerError> for Failure {
    fn from(e: LedgerError) -> Self {
        match e {
            LedgerError::Malformed(m) => Failure::malformed(m),
            LedgerError::Refused { rule, reason } => Failure::refused(format!("[{rule}] {reason}")),
            LedgerError::Inconsistent(m) => Failure::check(m),
        }
    }
}

impl From<LiftError> for Failure {
    fn from(e: LiftError) -> Self {
        Failure::malformed(e.to_string())
    }
}

impl From<TateOortError> for Failure {
    fn from(e: TateOortError) -> Self {
        Failure::malformed(e.to_string())
    }
}
