mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Session;

/// Dehn-twist laboratory: curves, twists and twisted complexes on plumbings.
#[derive(Parser, Debug)]
#[command(name = "twistlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Run every command line in this file (one per line, `#` comments).
    #[arg(long, global = true)]
    suite: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArg {
    /// Plumbing graph JSON file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Extra curve `name=word : target`, usable wherever a curve is named.
    #[arg(long = "define", value_name = "NAME=EXPR")]
    pub defines: Vec<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Surface summary of a plumbing graph.
    Plumb {
        #[command(flatten)]
        g: GraphArg,
    },
    /// Minimal intersection number of two curve expressions.
    Imin {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Image of a curve under a twist word.
    Apply {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        word: String,
        #[arg(long)]
        curve: String,
    },
    /// Whether a twist word is the identity rel boundary.
    CheckRelation {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        word: String,
    },
    /// Transfer verdict for a word up a stabilisation tower.
    Transfer {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        word: String,
        /// Number of one-stabilisations (identity permutation at each level).
        #[arg(long, default_value_t = 1)]
        height: usize,
    },
    /// Floer dimension of two twisted complexes `"word : vertex"`.
    Hf {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "X")]
        x: String,
        #[arg(long = "Y")]
        y: String,
    },
    /// Compare the Floer dimension upstairs with minimal intersection downstairs.
    SsCompare {
        #[arg(long)]
        graph: PathBuf,
        /// Twist word; omit to sample `--samples` random words (seed from TWISTLAB_SEED).
        #[arg(long)]
        word: Option<String>,
        /// Vertex as 1-based index or name.
        #[arg(long)]
        i: Option<String>,
        #[arg(long)]
        j: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Coincidence graph of the cores (and defined curves).
    Coincidence {
        #[command(flatten)]
        g: GraphArg,
    },
    /// Free-group certificate for a subset of curves.
    FreeCert {
        #[command(flatten)]
        g: GraphArg,
        /// Whitespace-separated names; default all cores.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Right-angled Artin presentation of the coincidence graph.
    Raag {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Presentation of a wreath product with a finite group.
    Wreath {
        /// Presentation text file; or use `--free`.
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Free group on these generators.
        #[arg(long)]
        free: Option<String>,
        #[command(flatten)]
        group: GroupArg,
    },
    /// One-stabilisation record.
    Stab {
        #[command(flatten)]
        g: GraphArg,
        /// 1-based permutation, e.g. "2 1"; default identity.
        #[arg(long)]
        sigma: Option<String>,
        /// Curve names; default all cores. Repeats allowed.
        #[arg(long)]
        curves: Option<String>,
    },
    /// Equivariant vanishing-cycle sequence.
    Equivariant {
        #[command(flatten)]
        g: GraphArg,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        curves: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Group table JSON `{elements:[..], table:[[..]]}`.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Cyclic group of this order.
    #[arg(long)]
    pub cyclic: Option<usize>,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, status) = match (&cli.suite, &cli.command) {
        (Some(path), _) => report::run_suite(path, cli.format),
        (None, Some(cmd)) => {
            let out = Session::new(args[1..].to_vec()).run(cmd);
            let status = out.status();
            (report::render(&out, cli.format), status)
        }
        (None, None) => {
            eprintln!("error: a subcommand or --suite is required");
            return ExitCode::from(1);
        }
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: cannot write to stdout: {e}");
                    return ExitCode::from(1);
                }
            }
        }
    }
    ExitCode::from(status as u8)
}
