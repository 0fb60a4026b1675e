use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spherical_forms::cli::{
    catalog_list_report, catalog_show_report, decide, exit_code, invariants_report, render_json, render_verdict,
    InputError, Problem,
};

/// Decide whether spherical homogeneous spaces and embeddings admit
/// equivariant models over real, p-adic and number fields.
#[derive(Parser)]
#[command(name = "spherical-forms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a problem file. Exit 0: a model exists, 1: it does not, 2: input error.
    Decide {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        explain: bool,
    },
    /// Print the derived invariants of a problem file.
    Invariants { file: PathBuf },
    /// Browse the catalog of forms. Extra entries come from the files in SPHERICAL_FORMS_CATALOG.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

fn fail(e: InputError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Decide { file, json, explain } => {
            let verdict = match Problem::load(&file).and_then(|p| decide(&p)) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            if json {
                println!("{}", render_json(&verdict));
            } else {
                print!("{}", render_verdict(&verdict, explain));
            }
            ExitCode::from(exit_code(&verdict) as u8)
        }
        Command::Invariants { file } => match Problem::load(&file).and_then(|p| invariants_report(&p)) {
            Ok(s) => {
                print!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Catalog { action } => {
            let r = match action {
                CatalogAction::List => catalog_list_report(),
                CatalogAction::Show { name } => catalog_show_report(&name),
            };
            match r {
                Ok(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
    }
}
