use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use formalglue::session::{parse_session_with, run, Command, Options, ReportDocument, SessionDocument};
use formalglue::{Error, Field};

/// Fiber products and gluings of formal schemes, with machine-checked invariants.
#[derive(Parser, Debug)]
#[command(name = "formalglue", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Degree bound of the linear-algebra oracles.
    #[arg(long, global = true)]
    degree_bound: Option<u32>,

    /// Truncation order of Poincaré series.
    #[arg(long, global = true)]
    poincare_n: Option<usize>,

    /// Highest truncation level for level-wise fiber product checks.
    #[arg(long, global = true)]
    truncation: Option<u32>,

    /// Coefficient field: `q` or a prime such as `F7`. Overrides the document.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    machine_output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Invariants of the named rings (all rings when none are named).
    Info { session: PathBuf, rings: Vec<String> },
    /// `R S [over T]`; runs every fiber request of the document when omitted.
    Fiber { session: PathBuf, args: Vec<String> },
    /// `X Y along Z`; runs every glue request of the document when omitted.
    Glue { session: PathBuf, args: Vec<String> },
    /// Minimal free resolution of a module, or of k over a ring.
    Resolve {
        session: PathBuf,
        name: String,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Runs every check on every request of the document.
    Verify { session: PathBuf },
}

fn usage(message: &str) -> Error {
    Error::Usage(message.to_string())
}

impl Cmd {
    fn session(&self) -> &Path {
        match self {
            Cmd::Info { session, .. }
            | Cmd::Fiber { session, .. }
            | Cmd::Glue { session, .. }
            | Cmd::Resolve { session, .. }
            | Cmd::Verify { session } => session,
        }
    }

    fn to_command(&self) -> Result<Command, Error> {
        Ok(match self {
            Cmd::Info { rings, .. } => Command::Info(rings.clone()),
            Cmd::Fiber { args, .. } => match args.as_slice() {
                [] => Command::Fiber(None),
                [r, s] => Command::Fiber(Some((r.clone(), s.clone(), None))),
                [r, s, over, t] if over == "over" => Command::Fiber(Some((r.clone(), s.clone(), Some(t.clone())))),
                _ => return Err(usage("expected `fiber <session> [R S [over T]]`")),
            },
            Cmd::Glue { args, .. } => match args.as_slice() {
                [] => Command::Glue(None),
                [x, y, along, z] if along == "along" => Command::Glue(Some((x.clone(), y.clone(), z.clone()))),
                _ => return Err(usage("expected `glue <session> [X Y along Z]`")),
            },
            Cmd::Resolve { name, steps, .. } => Command::Resolve {
                name: name.clone(),
                steps: *steps,
            },
            Cmd::Verify { .. } => Command::Verify,
        })
    }

    fn name(&self) -> &'static str {
        match self {
            Cmd::Info { .. } => "info",
            Cmd::Fiber { .. } => "fiber",
            Cmd::Glue { .. } => "glue",
            Cmd::Resolve { .. } => "resolve",
            Cmd::Verify { .. } => "verify",
        }
    }
}

fn load(cli: &Cli) -> Result<(SessionDocument, Command), Error> {
    let command = cli.command.to_command()?;
    let field = cli.field.as_deref().map(str::parse::<Field>).transpose()?;
    let path = cli.command.session();
    let text = std::fs::read_to_string(path).map_err(|e| usage(&format!("cannot read {}: {e}", path.display())))?;
    let mut doc = parse_session_with(&text, field)?;
    let o = &mut doc.options;
    o.degree_bound = cli.degree_bound.unwrap_or(o.degree_bound);
    o.poincare_n = cli.poincare_n.unwrap_or(o.poincare_n);
    o.truncation = cli.truncation.unwrap_or(o.truncation);
    if o.degree_bound == 0 || o.poincare_n == 0 || o.truncation == 0 {
        return Err(usage("option values must be positive"));
    }
    Ok((doc, command))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match load(&cli) {
        Ok((doc, command)) => run(&doc, &command),
        Err(e) => {
            eprintln!("error: {}: {e}", cli.command.session().display());
            ReportDocument::input_error(cli.command.name(), Options::default(), &e)
        }
    };
    print!("{report}");
    if let Some(path) = &cli.machine_output {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
