//! The `pf` command-line front end.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive it in-process.

pub mod commands;
pub mod elaborate;
pub mod expr;

use clap::Parser;

use crate::commands::{dispatch, Cli, ErrorReport};

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `pf` with the given arguments (including the program name).
///
/// Exit codes: 0 success, 1 mathematical negative, 2 usage, contract or budget error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    // Parsed trees may be thousands of levels deep; printing and elaboration recurse.
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(256 << 20)
            .spawn_scoped(s, || run_here(args))
            .expect("spawn worker thread")
            .join()
            .unwrap_or_else(|_| Outcome {
                code: 2,
                stdout: String::new(),
                stderr: "error: internal failure\n".into(),
            })
    })
}

fn run_here(args: Vec<std::ffi::OsString>) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) if cli.json => Outcome {
            code: r.code,
            stdout: format!("{}\n", serde_json::to_string_pretty(&r.json).expect("valid JSON")),
            stderr: String::new(),
        },
        Ok(r) => Outcome {
            code: r.code,
            stdout: format!("{}\n", r.text),
            stderr: String::new(),
        },
        Err(e) if cli.json => {
            let doc = ErrorReport {
                command: "error",
                kind: e.kind(),
                message: e.to_string(),
                position: e.position(),
            };
            Outcome {
                code: 2,
                stdout: format!("{}\n", serde_json::to_string_pretty(&doc).expect("valid JSON")),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
