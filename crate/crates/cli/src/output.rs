use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    /// Only `subgroup --p` emits CSV.
    Csv,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError { code: 2, msg: msg.into() }
    }
}

impl From<cihomol_core::Error> for CliError {
    fn from(e: cihomol_core::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

/// A finished command: JSON value, text rendering and exit code. Output is
/// rendered in full before anything is written.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    /// Pre-rendered JSON that must be emitted verbatim (suite reports).
    pub raw_json: Option<String>,
    pub code: u8,
}

impl Output {
    pub fn new(json: Value, text: impl Into<String>) -> Output {
        Output {
            json,
            text: text.into(),
            csv: None,
            raw_json: None,
            code: 0,
        }
    }

    pub fn code(mut self, code: u8) -> Output {
        self.code = code;
        self
    }

    pub fn emit(self, format: Format) -> Result<u8, CliError> {
        let body = match format {
            Format::Json if self.raw_json.is_some() => self.raw_json.unwrap_or_default(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json output");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text;
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Csv => self
                .csv
                .ok_or_else(|| CliError::usage("--format csv is only available for `subgroup --p`"))?,
        };
        let mut out = std::io::stdout().lock();
        out.write_all(body.as_bytes())?;
        out.flush()?;
        Ok(self.code)
    }
}
