use clap::{Parser, Subcommand, ValueEnum};
use polaramp::{render_enriques_lattice, render_table, schema, to_canonical_json, RunFlags};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "polaramp",
    about = "Decide k-very ampleness, Clifford index and gonality of line bundle classes \
             on K3 and Enriques surfaces from lattice data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the queries of a surface description (JSON, or TOML by file
    /// extension); reads stdin when no file is given
    Run {
        /// Input file; stdin is parsed as JSON when omitted
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Upper bound for `scan` queries (overrides per-query bounds)
        #[arg(long = "max-k")]
        max_k: Option<i64>,
    },
    /// Inspect built-in lattices
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Print the gram matrix of a built-in lattice
    Show { name: String },
}

fn input_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            format,
            max_k,
        } => {
            let (text, input_format) = match &file {
                Some(path) => {
                    let format = if path.extension().is_some_and(|e| e == "toml") {
                        schema::InputFormat::Toml
                    } else {
                        schema::InputFormat::Json
                    };
                    match std::fs::read_to_string(path) {
                        Ok(text) => (text, format),
                        Err(e) => return input_error(format_args!("{}: {e}", path.display())),
                    }
                }
                None => {
                    let mut text = String::new();
                    if let Err(e) = std::io::stdin().read_to_string(&mut text) {
                        return input_error(e);
                    }
                    (text, schema::InputFormat::Json)
                }
            };
            let query_file = match schema::parse(&text, input_format) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let flags = RunFlags { max_k };
            match polaramp::run(&query_file, &flags) {
                Ok(report) => {
                    match format {
                        Format::Table => print!("{}", render_table(&report)),
                        Format::Json => println!("{}", to_canonical_json(&report)),
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(e),
            }
        }
        Command::Lattice { command } => match command {
            LatticeCommand::Show { name } => {
                if name == "enriques" {
                    print!("{}", render_enriques_lattice());
                    ExitCode::SUCCESS
                } else {
                    input_error(format_args!("unknown lattice {name:?}; try \"enriques\""))
                }
            }
        },
    }
}
