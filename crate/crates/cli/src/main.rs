//! `braidrec` command-line front end.
//!
//! Exit codes: 0 on success, 1 for I/O, schema, or validation problems,
//! 2 when a mathematical certificate (integrality, parity, bound) fails —
//! the interesting signal when screening candidate modular data.

use std::process::exit;

use clap::{Args, Parser, Subcommand, ValueEnum};

use braidrec::catalog::{self, CatalogEntry, BUILTIN_NAMES};
use braidrec::error::{Error, Result};
use braidrec::phase::ExactPhase;
use braidrec::report::{self, CatalogItemDoc, Format, FullReport};
use braidrec::rsymbol::{assemble_r, canonical_branch, y_table};
use braidrec::scalar::Tolerance;

#[derive(Parser)]
#[command(
    name = "braidrec",
    version,
    about = "Reconstructs braiding R-symbols of (pre)modular tensor categories from modular data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every structural invariant check and print the report
    Validate(InputArgs),
    /// Fusion coefficients (Verlinde on modular input, supplied block otherwise)
    Fusion(InputArgs),
    /// Second generalized Frobenius-Schur indicators with their integer certificates
    Indicators(InputArgs),
    /// Assemble the full R-symbol table in the canonical diagonal gauge
    Rsymbols(InputArgs),
    /// The integer Y-tensor with nonnegativity and parity certificates
    YTable(InputArgs),
    /// Validation, fusion, indicators, and the R-table in one document
    Report(InputArgs),
    /// List the builtin catalog
    CatalogList {
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Builtin catalog name or path to a category JSON file
    spec: Option<String>,

    /// Same as the positional argument, as a flag
    #[arg(long = "input", value_name = "PATH", conflicts_with = "spec")]
    input: Option<String>,

    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Flip the square-root branch of this label's twist (repeatable)
    #[arg(long = "sqrt-flip", value_name = "LABEL")]
    sqrt_flip: Vec<String>,

    /// Residual tolerance for matrix identities
    #[arg(long, value_name = "FLOAT")]
    eps_matrix: Option<f64>,

    /// Tolerance for rounding complex values to integers
    #[arg(long, value_name = "FLOAT")]
    eps_int: Option<f64>,
}

impl InputArgs {
    fn tolerance(&self) -> Tolerance<f64> {
        let defaults = Tolerance::<f64>::default();
        Tolerance::new(
            self.eps_matrix.unwrap_or(defaults.eps_matrix),
            self.eps_int.unwrap_or(defaults.eps_int),
        )
    }

    fn load(&self) -> Result<CatalogEntry<f64>> {
        let spec = self.spec.as_deref().or(self.input.as_deref()).ok_or_else(|| {
            Error::Unsupported("no input given: pass a builtin name, a path, or --input".into())
        })?;
        catalog::load::<f64>(spec)
    }

    /// The square-root branch: canonical halves with the requested flips.
    fn branch(&self, entry: &CatalogEntry<f64>) -> Result<Vec<ExactPhase>> {
        let mut branch = canonical_branch(entry.data.twists());
        for name in &self.sqrt_flip {
            let idx = entry.data.label_index(name).ok_or_else(|| Error::UnknownLabel {
                name: name.clone(),
                available: entry
                    .data
                    .labels()
                    .iter()
                    .map(|l| l.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })?;
            branch[idx] = branch[idx].negate();
        }
        Ok(branch)
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    exit(0);
                }
                _ => {
                    eprint!("{err}");
                    exit(1);
                }
            }
        }
    };
    match run(cli) {
        Ok(code) => exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            exit(if err.is_certificate_violation() { 2 } else { 1 });
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Validate(args) => {
            let entry = args.load()?;
            let tol = args.tolerance();
            let result = entry.validation(&tol);
            print!("{}", report::render_validation(&entry, &result, args.format.into()));
            Ok(if result.passed() { 0 } else { 1 })
        }
        Command::Fusion(args) => {
            let entry = args.load()?;
            let tol = args.tolerance();
            let fusion = entry.fusion_tensor(&tol)?;
            print!("{}", report::render_fusion(entry.data.labels(), &fusion, args.format.into()));
            Ok(0)
        }
        Command::Indicators(args) => {
            let entry = args.load()?;
            let tol = args.tolerance();
            let fusion = entry.fusion_tensor(&tol)?;
            let table = entry.indicator_table(&fusion, &tol)?;
            let doc = report::indicators_doc(
                entry.data.labels(),
                entry.data.twists(),
                &fusion,
                &table,
                &tol,
            )?;
            print!("{}", report::render_indicators(&doc, args.format.into()));
            Ok(0)
        }
        Command::Rsymbols(args) => {
            let entry = args.load()?;
            let tol = args.tolerance();
            let premod = entry.premodular(&tol)?;
            let branch = args.branch(&entry)?;
            let table = assemble_r(&premod, branch, &tol)?;
            print!(
                "{}",
                report::render_rtable(&entry.name, entry.data.labels(), &table, args.format.into())
            );
            Ok(0)
        }
        Command::YTable(args) => {
            let entry = args.load()?;
            let tol = args.tolerance();
            if !entry.is_modular(&tol) {
                return Err(Error::Validation {
                    summary: format!(
                        "y-table needs modular data; `{}` fails {:?}",
                        entry.name,
                        entry.validation(&tol).failed_names()
                    ),
                });
            }
            let fusion = entry.fusion_tensor(&tol)?;
            let entries = y_table(&entry.data, &fusion, &tol)?;
            let doc = report::y_doc(entry.data.labels(), &entries);
            print!("{}", report::render_y(&doc, args.format.into()));
            Ok(0)
        }
        Command::Report(args) => {
            let entry = args.load()?;
            let tol = args.tolerance();
            let validation = entry.validation(&tol);
            let premod = entry.premodular(&tol)?;
            let branch = args.branch(&entry)?;
            let table = assemble_r(&premod, branch, &tol)?;
            let indicators = report::indicators_doc(
                entry.data.labels(),
                entry.data.twists(),
                &premod.fusion,
                &premod.nu,
                &tol,
            )?;
            let full = FullReport {
                entry: &entry,
                report: &validation,
                fusion: &premod.fusion,
                indicators,
                rtable: &table,
            };
            print!("{}", report::render_report(&full, args.format.into()));
            Ok(0)
        }
        Command::CatalogList { format } => {
            let mut items = Vec::new();
            for name in BUILTIN_NAMES {
                let entry = catalog::builtin::<f64>(name)?;
                items.push(CatalogItemDoc {
                    name: entry.name.clone(),
                    rank: entry.data.rank(),
                    labels: entry.data.labels().iter().map(|l| l.name.clone()).collect(),
                    comment: entry.comment.clone(),
                });
            }
            print!("{}", report::render_catalog_list(&items, format.into()));
            Ok(0)
        }
    }
}
