//! Line-oriented `key: value` reports ending in a `VERDICT` line.

use extiso::Error;
use std::fmt::Display;
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_ISOMORPHIC: u8 = 1;
pub const EXIT_INAPPLICABLE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.field("command", command);
        r
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    /// A block of raw lines, each prefixed with `key: `.
    pub fn block(&mut self, key: &str, text: &str) {
        for l in text.lines() {
            self.field(key, l);
        }
    }

    pub fn finish(self, verdict: &str, code: u8) -> ExitCode {
        for l in &self.lines {
            println!("{l}");
        }
        println!("VERDICT: {verdict}");
        ExitCode::from(code)
    }

    /// Reports an engine error with its verdict and exit code.
    pub fn fail(mut self, e: &Error) -> ExitCode {
        match e {
            Error::StrategyInapplicable { strategy, reason } => {
                self.field("strategy", strategy);
                self.field("reason", reason);
                self.finish("inapplicable", EXIT_INAPPLICABLE)
            }
            Error::CapExceeded { what, size, cap } => {
                self.field("cap", format!("{what} needs {size}, cap is {cap}"));
                self.finish("cap-exceeded", EXIT_INAPPLICABLE)
            }
            Error::NotAGroup(reason) => {
                self.field("error", format!("not a group ({reason})"));
                self.finish("invalid", EXIT_INPUT)
            }
            Error::Parse(m) => {
                self.field("error", format!("parse: {m}"));
                self.finish("invalid", EXIT_INPUT)
            }
            other => {
                self.field("error", other);
                self.finish("error", EXIT_INPUT)
            }
        }
    }

    pub fn io_error(mut self, what: &str, e: impl Display) -> ExitCode {
        self.field("error", format!("{what}: {e}"));
        self.finish("error", EXIT_IO)
    }
}
