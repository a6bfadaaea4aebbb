//! Command-line front end for the vectont engine.
//!
//! [`run`] never prints: it returns the exit code and the text destined for
//! stdout and stderr, so tests can drive it in-process.

mod args;
mod commands;
mod input;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value as Json};

use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// Human text or a single-line JSON object, newline-terminated.
    pub stdout: String,
    pub stderr: String,
}

/// What a successful command produced.
pub(crate) struct Outcome {
    pub human: String,
    pub json: Json,
    /// Non-fatal notes for stderr.
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn new(human: impl Into<String>, json: Json) -> Self {
        Outcome {
            human: human.into(),
            json,
            warnings: Vec::new(),
        }
    }

    pub fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

#[derive(Debug)]
pub(crate) enum Failure {
    /// Malformed invocation.
    Usage(String),
    Domain(vectont::error::Error),
}

impl From<vectont::error::Error> for Failure {
    fn from(e: vectont::error::Error) -> Self {
        Failure::Domain(e)
    }
}

pub(crate) type CmdResult<T = Outcome> = Result<T, Failure>;

/// The `--json` envelope. Keys always appear as `ok`, `result`, `error`.
pub fn envelope(result: Result<Json, &str>) -> String {
    let obj = match result {
        Ok(r) => json!({ "ok": true, "result": r, "error": null }),
        Err(code) => json!({ "ok": false, "result": null, "error": code }),
    };
    serde_json::to_string(&obj).expect("JSON values serialize")
}

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandResult {
                    exit_code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let as_json = cli.global.json;
    match commands::dispatch(&cli) {
        Ok(out) => {
            let stdout = if as_json {
                envelope(Ok(out.json)) + "\n"
            } else if out.human.is_empty() || out.human.ends_with('\n') {
                out.human
            } else {
                out.human + "\n"
            };
            let stderr: String = out.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            CommandResult {
                exit_code: EXIT_OK,
                stdout,
                stderr,
            }
        }
        Err(Failure::Usage(msg)) => CommandResult {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n\nUsage: vectont [OPTIONS] <COMMAND>\n\nFor more information, try '--help'.\n"),
        },
        Err(Failure::Domain(e)) => CommandResult {
            exit_code: EXIT_DOMAIN,
            stdout: if as_json {
                envelope(Err(e.code())) + "\n"
            } else {
                String::new()
            },
            stderr: format!("error[{}]: {e}\n", e.code()),
        },
    }
}
