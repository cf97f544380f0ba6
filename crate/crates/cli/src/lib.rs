//! Command-line front end for `discoloc`: argument parsing, the bundled
//! corpus, and report rendering.
//!
//! Every subcommand reads JSON and reports in text, JSON or (for the two
//! poset commands) Graphviz DOT. Exit status 0 means every verdict passed,
//! 1 means some mathematical verdict is negative and 2 means the input
//! could not be used.

use std::fs;
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
pub mod input;

use commands::{K0Source, ModelChoice, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Size limits checked before any exhaustive computation starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub max_ring: usize,
}

impl Caps {
    pub fn new(max_objects: NonZeroUsize, max_morphisms: NonZeroUsize, max_ring: NonZeroUsize) -> Self {
        Caps {
            max_objects: max_objects.get(),
            max_morphisms: max_morphisms.get(),
            max_ring: max_ring.get(),
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_objects: 8,
            max_morphisms: 64,
            max_ring: discoloc_core::ring::DEFAULT_RING_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check the category laws of a composition table.
    Validate { category: String },
    /// Terminal and initial objects, finite (co)completeness, strong monos.
    Limits { category: String },
    /// Every localization of the discrete model structure, with its poset.
    EnumerateLocalizations { category: String },
    /// Check the model axioms for one structure (discrete by default).
    VerifyModel {
        category: String,
        /// File with `cof`, `we` and `fib` lists of morphism names.
        #[arg(long, conflicts_with = "subcat")]
        model: Option<String>,
        /// Comma-separated objects; localizes at the reflector onto them.
        #[arg(long)]
        subcat: Option<String>,
        /// Colocalize at the coreflector onto `--subcat` instead.
        #[arg(long, requires = "subcat")]
        coreflective: bool,
    },
    /// Fibrant replacement and the homotopy category of a localization.
    HomotopyCategory {
        category: String,
        #[arg(long)]
        subcat: Option<String>,
    },
    /// Idempotent monads and their order, or the laws of one monad file.
    Monads {
        category: String,
        #[arg(long)]
        monad: Option<String>,
    },
    /// Round trips between reflective subcategories, localizations and
    /// idempotent monads.
    Bijections { category: String },
    /// Colocalizations, via the opposite category and directly.
    Colocalizations { category: String },
    /// Whether `- ⊗_R S` is the fibrant replacement of a localization.
    RingCheck {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        algebra: String,
        /// Element map; defaults to `k ↦ k·1`.
        #[arg(long)]
        map: Option<String>,
    },
    /// Grothendieck group of a pointed category or a truncated category of
    /// abelian p-groups.
    K0 {
        #[arg(
            long,
            required_unless_present = "truncated_abelian",
            conflicts_with = "truncated_abelian"
        )]
        category: Option<String>,
        #[arg(long, requires = "category")]
        subcat: Option<String>,
        /// `p=2,bound=3[,we=all]` or a JSON file with those keys.
        #[arg(long)]
        truncated_abelian: Option<String>,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "discoloc",
    version,
    about = "Exhaustive checks of localizations of discrete model structures"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long, default_value = "8", global = true)]
    pub max_objects: NonZeroUsize,
    #[arg(long, default_value = "64", global = true)]
    pub max_morphisms: NonZeroUsize,
    #[arg(long, default_value = "16", global = true)]
    pub max_ring: NonZeroUsize,
    /// Also write the poset as Graphviz DOT to this path.
    #[arg(long, global = true)]
    pub emit_dot: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub caps: Caps,
    pub format: Format,
    pub emit_dot: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: cli.command,
            caps: Caps::new(cli.max_objects, cli.max_morphisms, cli.max_ring),
            format: cli.format,
            emit_dot: cli.emit_dot,
        }
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            caps: Caps::default(),
            format: Format::Text,
            emit_dot: None,
        }
    }

    pub fn try_parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args).map(RunConfig::from)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Negative,
    InputError,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Negative => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    /// Rendered report, or the error message for input errors.
    pub report: String,
}

impl Outcome {
    fn input_error(err: impl std::fmt::Display) -> Self {
        Outcome {
            status: Status::InputError,
            report: format!("error: {err}\n"),
        }
    }
}

fn dispatch(command: &Command, caps: &Caps) -> anyhow::Result<Report> {
    match command {
        Command::Validate { category } => commands::validate(category, caps),
        Command::Limits { category } => commands::limits(category, caps),
        Command::EnumerateLocalizations { category } => commands::enumerate(category, caps),
        Command::VerifyModel {
            category,
            model,
            subcat,
            coreflective,
        } => commands::verify_model(
            category,
            ModelChoice {
                model: model.as_deref(),
                subcat: subcat.as_deref(),
                coreflective: *coreflective,
            },
            caps,
        ),
        Command::HomotopyCategory { category, subcat } => commands::homotopy(category, subcat.as_deref(), caps),
        Command::Monads { category, monad } => commands::monads(category, monad.as_deref(), caps),
        Command::Bijections { category } => commands::bijections(category, caps),
        Command::Colocalizations { category } => commands::colocalizations(category, caps),
        Command::RingCheck { ring, algebra, map } => commands::ring_check(ring, algebra, map.as_deref(), caps),
        Command::K0 {
            category,
            subcat,
            truncated_abelian,
        } => {
            let source = match (category, truncated_abelian) {
                (Some(path), _) => K0Source::Category {
                    path,
                    subcat: subcat.as_deref(),
                },
                (None, Some(spec)) => K0Source::Truncated(spec),
                (None, None) => anyhow::bail!("k0 needs --category or --truncated-abelian"),
            };
            commands::k0(source, caps)
        }
    }
}

fn produces_dot(command: &Command) -> bool {
    matches!(
        command,
        Command::EnumerateLocalizations { .. } | Command::Colocalizations { .. }
    )
}

/// Runs one command. Reports are deterministic: the same inputs give the
/// same bytes.
pub fn run(config: &RunConfig) -> Outcome {
    let wants_dot = config.format == Format::Dot || config.emit_dot.is_some();
    if wants_dot && !produces_dot(&config.command) {
        return Outcome::input_error("DOT output is only available for enumerate-localizations and colocalizations");
    }
    let report = match dispatch(&config.command, &config.caps) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(format!("{e:#}")),
    };
    if let (Some(path), Some(dot)) = (&config.emit_dot, &report.dot) {
        if let Err(e) = fs::write(path, dot) {
            return Outcome::input_error(format!("cannot write {}: {e}", path.display()));
        }
    }
    let rendered = match config.format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n",
        // a refused computation has no poset to draw
        Format::Dot => report.dot.unwrap_or(report.text),
    };
    Outcome {
        status: report.status,
        report: rendered,
    }
}

macro_rules! bundle {
    ($($path:literal),* $(,)?) => {
        &[$(($path, include_str!(concat!("../corpus/", $path)))),*]
    };
}

static CORPUS: &[(&str, &str)] = bundle![
    "categories/chain2.json",
    "categories/chain3.json",
    "categories/chain4.json",
    "categories/chain5.json",
    "categories/chain6.json",
    "categories/chain_dup.json",
    "categories/codiscrete2.json",
    "categories/diamond.json",
    "categories/discrete2.json",
    "categories/monoid_idem.json",
    "categories/monoid_z2.json",
    "categories/parallel_pair.json",
    "categories/pentagon.json",
    "categories/terminal.json",
    "fixtures/bad/bad_assoc.json",
    "fixtures/bad/bad_typing.json",
    "fixtures/bad/chain2_dropped_fib.json",
    "fixtures/bad/diag_z2_z2xz2.json",
    "fixtures/bad/nonassoc_mu_category.json",
    "fixtures/bad/nonassoc_mu_monad.json",
    "maps/id_z4.json",
    "maps/z2_z2_eps.json",
    "maps/z4_z2.json",
    "maps/z6_z2.json",
    "models/chain2_localized.json",
    "monads/chain3_upper.json",
    "rings/z2.json",
    "rings/z2_eps.json",
    "rings/z2xz2.json",
    "rings/z4.json",
    "rings/z6.json",
    "truncated/p2_bound1.json",
    "truncated/p2_bound2.json",
    "truncated/p2_bound3.json",
    "truncated/p3_bound1.json",
    "truncated/p3_bound2.json",
];

/// Bundled inputs as `(relative path, contents)`, sorted by path. A path
/// of the form `corpus:<relative path>` reads from here.
pub fn corpus() -> &'static [(&'static str, &'static str)] {
    CORPUS
}

pub fn corpus_file(path: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(p, _)| *p == path).map(|(_, text)| *text)
}

/// Relative paths of the bundled categories.
pub fn corpus_categories() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|(p, _)| *p).filter(|p| p.starts_with("categories/"))
}
