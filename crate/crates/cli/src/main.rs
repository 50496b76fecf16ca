//! `tautverify`: run the verification suite and inspect classes.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tautverify_core::Error;
use tautverify_core::data::DataFiles;
use tautverify_core::verify::Verifier;

#[derive(Parser)]
#[command(
    name = "tautverify",
    version,
    about = "Exact checks of tautological class computations"
)]
struct Cli {
    /// Directory whose files replace the bundled definitions of the same name.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in declaration order.
    RunAll {
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run one check.
    Check { id: String },
    /// List check ids.
    List,
    /// Print a class by name (catalog entry, derived class, `A*B` or `SPACE:label`).
    ShowClass { name: String },
    /// Evaluate a class on a test surface.
    Eval {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        class: String,
    },
}

/// Exit code 2 for configuration problems and unknown names, 1 otherwise.
fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if e.is_config() || matches!(e, Error::Unknown { .. }) {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

fn verdict(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let files = match &cli.data_dir {
        Some(dir) => DataFiles::with_overrides(dir)?,
        None => DataFiles::embedded(),
    };
    let v = Verifier::load(&files)?;
    match cli.command {
        Command::RunAll { json } => {
            let report = v.run_all();
            print!("{}", report.to_human());
            if let Some(path) = json {
                std::fs::write(&path, report.to_json(true) + "\n")
                    .map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
            }
            Ok(verdict(report.all_passed()))
        }
        Command::Check { id } => {
            let r = v.run_check(&id)?;
            print!("{}", r.to_human());
            if r.passed {
                println!("  {}", r.actual);
            }
            Ok(verdict(r.passed))
        }
        Command::List => {
            for id in v.check_ids() {
                println!("{id} ({})", v.golden().entry(id)?.anchor);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ShowClass { name } => {
            let c = v.named_class(&name)?;
            println!("{} (degree {}): {c}", c.space(), c.degree());
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { surface, class } => {
            let target = v.surfaces().get(&surface)?.target_space().to_string();
            let c = v.class_on(&target, &class)?;
            println!("{}", v.surfaces().evaluate(&surface, &c)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}
