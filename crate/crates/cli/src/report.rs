//! Run reports, exit statuses and batch mode.

use std::cell::{Cell, RefCell};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use clap::Parser;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::{commands, Cli, Command, Format};

/// Computed result of one command: JSON, plain text and the tags it cites.
pub struct Computed {
    pub json: Value,
    pub text: String,
    pub tags: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

/// Enough to reproduce an internal failure.
#[derive(Serialize, Debug)]
pub struct Dump {
    pub stage: String,
    pub inputs_digest: String,
}

#[derive(Serialize, Debug)]
pub struct Outcome {
    pub command: Vec<String>,
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dump: Option<Dump>,
    pub exit_status: i32,
    #[serde(skip)]
    pub text: String,
}

impl Outcome {
    pub fn status(&self) -> i32 {
        self.exit_status
    }
}

/// State of one command run: its arguments, a digest of everything read and
/// the current stage name.
pub struct Session {
    args: Vec<String>,
    hasher: RefCell<Sha256>,
    stage: Cell<&'static str>,
}

impl Session {
    pub fn new(args: Vec<String>) -> Self {
        let mut h = Sha256::new();
        for a in &args {
            h.update(a.as_bytes());
            h.update([0u8]);
        }
        Session {
            args,
            hasher: RefCell::new(h),
            stage: Cell::new("parse"),
        }
    }

    pub fn stage(&self, name: &'static str) {
        self.stage.set(name);
    }

    /// Reads a file and folds its contents into the inputs digest.
    pub fn read(&self, path: &Path) -> twistlab::Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| twistlab::Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let mut h = self.hasher.borrow_mut();
        h.update(path.to_string_lossy().as_bytes());
        h.update([0u8]);
        h.update(text.as_bytes());
        Ok(text)
    }

    fn digest(&self) -> String {
        hex::encode(self.hasher.borrow().clone().finalize())
    }

    pub fn run(self, cmd: &Command) -> Outcome {
        let res = catch_unwind(AssertUnwindSafe(|| commands::dispatch(&self, cmd)));
        let digest = self.digest();
        let mut out = Outcome {
            command: self.args.clone(),
            inputs_digest: digest.clone(),
            result: None,
            tags: Vec::new(),
            error: None,
            dump: None,
            exit_status: 0,
            text: String::new(),
        };
        let internal = |out: &mut Outcome, kind: &str, message: String| {
            out.exit_status = 2;
            out.error = Some(ErrorInfo {
                kind: kind.into(),
                message,
            });
            out.dump = Some(Dump {
                stage: self.stage.get().into(),
                inputs_digest: digest.clone(),
            });
        };
        match res {
            Ok(Ok(c)) => {
                out.result = Some(c.json);
                out.tags = c.tags;
                out.text = c.text;
            }
            Ok(Err(e)) if e.is_internal() => internal(&mut out, "Invariant", e.to_string()),
            Ok(Err(e)) => {
                out.exit_status = 1;
                out.error = Some(ErrorInfo {
                    kind: kind_of(&e),
                    message: e.to_string(),
                });
            }
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                internal(&mut out, "Panic", msg);
            }
        }
        if let Some(d) = &out.dump {
            eprintln!(
                "internal error at stage `{}`; inputs digest {}",
                d.stage, d.inputs_digest
            );
        }
        if let (1, Some(e)) = (out.exit_status, &out.error) {
            eprintln!("error: {}", e.message);
        }
        out
    }
}

fn kind_of(e: &twistlab::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

pub fn render(out: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(out).expect("report serializes") + "\n",
        Format::Text => match &out.error {
            None => {
                let mut t = out.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            Some(e) => format!("error ({}): {}\n", e.kind, e.message),
        },
    }
}

/// Runs every line of a suite file; reports come back in file order.
pub fn run_suite(path: &Path, format: Format) -> (String, i32) {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read suite {}: {e}", path.display());
            return (String::new(), 1);
        }
    };
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let outcomes = twistlab::exec::map(&lines, |line| run_line(line));
    let status = outcomes.iter().map(Outcome::status).max().unwrap_or(0);
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(&outcomes).expect("reports serialize") + "\n",
        Format::Text => outcomes
            .iter()
            .zip(&lines)
            .map(|(o, l)| format!("== {l}\n{}", render(o, format)))
            .collect(),
    };
    (rendered, status)
}

fn run_line(line: &str) -> Outcome {
    let parsed = shlex::split(line)
        .ok_or_else(|| "unbalanced quotes".to_string())
        .and_then(|words| {
            let mut argv = vec!["twistlab".to_string()];
            argv.extend(words);
            Cli::try_parse_from(&argv)
                .map(|c| (argv, c))
                .map_err(|e| e.to_string())
        });
    match parsed {
        Ok((
            argv,
            Cli {
                command: Some(cmd),
                suite: None,
                ..
            },
        )) => Session::new(argv[1..].to_vec()).run(&cmd),
        Ok(_) => rejected(line, "suite lines must be single subcommands".into()),
        Err(msg) => rejected(line, msg),
    }
}

fn rejected(line: &str, message: String) -> Outcome {
    Outcome {
        command: vec![line.to_string()],
        inputs_digest: String::new(),
        result: None,
        tags: Vec::new(),
        error: Some(ErrorInfo {
            kind: "Usage".into(),
            message,
        }),
        dump: None,
        exit_status: 1,
        text: String::new(),
    }
}
