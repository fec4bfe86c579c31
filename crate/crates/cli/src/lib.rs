//! The `coarray` command: analyze and compare sparse linear arrays, browse
//! the built-in catalog, and export JSON and SVG.

pub mod render;
pub mod table;

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use coarray_core::{compare_analyses, Catalog, CatalogError, CoarrayAnalysis, InputFormat, ResolveError, SensorArray};
use thiserror::Error;

pub use render::{render_stem_svg, RenderError, RenderOptions, TickStep};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    Render(#[from] RenderError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
    #[error("catalog: {0}")]
    Catalog(CatalogError),
}

impl CliError {
    /// 1 for bad input or unknown ids, 2 for I/O and internal failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::NotFound(_) | CliError::Render(_) => 1,
            CliError::Io { .. } | CliError::Catalog(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "coarray", version, about = "Difference-coarray analysis of sparse linear arrays")]
pub struct Cli {
    /// Catalog file to use instead of the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    pub catalog_file: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one array.
    Analyze(AnalyzeArgs),
    /// Compare two arrays side by side.
    Compare(CompareArgs),
    /// Browse the built-in reference arrays.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Sensor positions, e.g. "0, 1, 4, 6" or "[-7 -4 0 5]".
    #[arg(long, value_name = "LIST")]
    pub positions: Option<String>,
    /// Inter-element spacings, e.g. "1, 1, 2^6" or "2*ones(1,7)".
    #[arg(long, value_name = "EXPR")]
    pub ies: Option<String>,
    /// Id of a catalog entry.
    #[arg(long, value_name = "ID")]
    pub catalog: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputA {
    #[arg(id = "a_positions", long = "a-positions", value_name = "LIST")]
    pub positions: Option<String>,
    #[arg(id = "a_ies", long = "a-ies", value_name = "EXPR")]
    pub ies: Option<String>,
    #[arg(id = "a_catalog", long = "a-catalog", value_name = "ID")]
    pub catalog: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputB {
    #[arg(id = "b_positions", long = "b-positions", value_name = "LIST")]
    pub positions: Option<String>,
    #[arg(id = "b_ies", long = "b-ies", value_name = "EXPR")]
    pub ies: Option<String>,
    #[arg(id = "b_catalog", long = "b-catalog", value_name = "ID")]
    pub catalog: Option<String>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Write a stem plot of w(m) to this SVG file.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    #[arg(long, default_value_t = 480)]
    pub height: u32,
    /// Lag spacing of x-axis ticks, or "auto".
    #[arg(long, default_value = "auto")]
    pub tick_step: TickStep,
    /// Do not mark holes on the plot.
    #[arg(long)]
    pub no_hole_highlight: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Emit the JSON document: to PATH if given, otherwise to stdout in
    /// place of the table.
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    pub json: Option<Option<PathBuf>>,
    /// Also print the full lag/weight table.
    #[arg(long)]
    pub weights: bool,
    #[command(flatten)]
    pub plot: PlotArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub a: InputA,
    #[command(flatten)]
    pub b: InputB,
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    pub json: Option<Option<PathBuf>>,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// List every entry.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Show one entry with a fresh analysis.
    Show {
        id: String,
        #[arg(long)]
        json: bool,
    },
}

fn selected(
    positions: &Option<String>,
    ies: &Option<String>,
    catalog: &Option<String>,
) -> (InputFormat, String) {
    match (positions, ies, catalog) {
        (Some(p), _, _) => (InputFormat::Positions, p.clone()),
        (_, Some(i), _) => (InputFormat::Ies, i.clone()),
        (_, _, Some(c)) => (InputFormat::CatalogId, c.clone()),
        // clap's required group guarantees one of the three
        _ => unreachable!("no input selected"),
    }
}

fn resolve(catalog: &Catalog, format: InputFormat, text: &str, label: &str) -> Result<SensorArray, CliError> {
    catalog.resolve(format, text).map_err(|e| match e {
        ResolveError::Parse(p) => CliError::Input(format!("{label}invalid input: {p}")),
        ResolveError::NotFound(id) => CliError::NotFound(format!("{label}no catalog entry with id '{id}'")),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        context: "writing output".into(),
        source,
    })
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, CliError> {
    match path {
        Some(p) => Catalog::load(p).map_err(CliError::Catalog),
        None => Ok(Catalog::builtin()),
    }
}

/// Runs a parsed command, writing normal output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let catalog = load_catalog(cli.catalog_file.as_deref())?;
    match &cli.command {
        Command::Analyze(args) => analyze_cmd(&catalog, args, out),
        Command::Compare(args) => compare_cmd(&catalog, args, out),
        Command::Catalog(cmd) => catalog_cmd(&catalog, cmd, out),
    }
}

fn analyze_cmd(catalog: &Catalog, args: &AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (format, text) = selected(&args.input.positions, &args.input.ies, &args.input.catalog);
    // validate plot options before doing any work
    let opts = RenderOptions::new(
        args.plot.width,
        args.plot.height,
        args.plot.tick_step,
        !args.plot.no_hole_highlight,
    )?;
    let array = resolve(catalog, format, &text, "")?;
    let analysis = coarray_core::analyze(&array);

    if let Some(path) = &args.plot.svg {
        write_file(path, &render_stem_svg(&analysis, &opts))?;
    }
    match &args.json {
        Some(None) => emit(out, &analysis.to_json()),
        Some(Some(path)) => {
            write_file(path, &analysis.to_json())?;
            emit(out, &table::analysis_table(&analysis, args.weights))
        }
        None => emit(out, &table::analysis_table(&analysis, args.weights)),
    }
}

fn compare_cmd(catalog: &Catalog, args: &CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (fa, ta) = selected(&args.a.positions, &args.a.ies, &args.a.catalog);
    let (fb, tb) = selected(&args.b.positions, &args.b.ies, &args.b.catalog);
    let a = resolve(catalog, fa, &ta, "array A: ")?;
    let b = resolve(catalog, fb, &tb, "array B: ")?;
    let report = compare_analyses(coarray_core::analyze(&a), coarray_core::analyze(&b));
    match &args.json {
        Some(None) => emit(out, &report.to_json()),
        Some(Some(path)) => {
            write_file(path, &report.to_json())?;
            emit(out, &table::comparison_table(&report))
        }
        None => emit(out, &table::comparison_table(&report)),
    }
}

fn catalog_cmd(catalog: &Catalog, cmd: &CatalogCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        CatalogCommand::List { json: true } => emit(out, &catalog.to_json()),
        CatalogCommand::List { json: false } => emit(out, &table::catalog_list(catalog.list_entries())),
        CatalogCommand::Show { id, json } => {
            let entry = catalog
                .get_entry(id)
                .map_err(|_| CliError::NotFound(format!("no catalog entry with id '{id}'")))?;
            if *json {
                emit(out, &entry.to_json_with_analysis())
            } else {
                let analysis: CoarrayAnalysis = entry.analyze();
                let text = format!(
                    "{}\n{}",
                    table::catalog_entry(entry),
                    table::analysis_table(&analysis, false)
                );
                emit(out, &text)
            }
        }
    }
}
