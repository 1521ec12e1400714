use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cayley_cca::cayley::CayleyGraph;
use cayley_cca::classify::predict_stabilizer;
use cayley_cca::colour_aut::{enumerate_stabilizer, full_automorphism_group, Mode};
use cayley_cca::decompose::{certificate, decompose_colour_permuting};
use cayley_cca::families::{build_group_with_cap, GroupSpec};
use cayley_cca::structure::is_dicyclic_type;
use cayley_cca::verify::{
    suite_classif, suite_d12, suite_decomposition, suite_lemmas, suite_normal_search, SuiteReport,
    DEFAULT_SEED,
};
use cayley_cca::{Error, FiniteGroup, GroupMap, DEFAULT_ORDER_CAP};

/// Write to stdout, exiting quietly when the reader has hung up (as when
/// output is piped into `head`).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(1);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format_args!($($arg)*))) };
}
macro_rules! out {
    ($($arg:tt)*) => { emit(&format!($($arg)*)) };
}

/// Cayley-graph colour automorphisms: construction, search, classification.
#[derive(Parser)]
#[command(name = "cayley-cca", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Maps sending every edge to an edge of the same colour.
    Preserving,
    /// Maps inducing a global permutation of the colours.
    Permuting,
    /// Plain graph automorphisms, colours ignored.
    AllGraph,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Preserving => Mode::ColourPreserving,
            ModeArg::Permuting => Mode::ColourPermuting,
            ModeArg::AllGraph => Mode::AllGraph,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemmas,
    Classif,
    Decomposition,
    D12,
    NormalSearch,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from a family expression and summarize it.
    Build {
        /// Family expression, e.g. "Z6", "D12", "Q8xZ2^2", "Dic(Z8)".
        spec: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Predict the complete-graph stabilizer and CCA verdicts.
    Classify {
        spec: String,
        /// Re-derive the stabilizer by brute force and compare.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Enumerate colour automorphisms of a Cayley graph.
    Enum {
        spec: String,
        /// Connection set as comma-separated element indices; complete graph when omitted.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = ModeArg::Preserving)]
        mode: ModeArg,
        /// Enumerate the full automorphism group instead of the identity-fixing part.
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Factor a colour-permuting map of the complete graph into a group
    /// automorphism composed with a colour-preserving automorphism.
    Decompose {
        spec: String,
        /// The map as a comma-separated image list with positions 0..order-1.
        #[arg(long, value_delimiter = ',', required = true)]
        map: Vec<usize>,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Run a named verification suite over the built-in group roster.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Largest group order included (default 32; normal-search defaults to 16).
        #[arg(long)]
        max_order: Option<usize>,
        /// Restrict the roster to one group, given as a family expression.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Write a Cayley graph in DOT or JSON form.
    Export {
        spec: String,
        /// Connection set as comma-separated element indices.
        #[arg(long, value_delimiter = ',', conflicts_with = "complete")]
        set: Option<Vec<usize>>,
        /// Use the complete graph (the default when --set is absent).
        #[arg(long)]
        complete: bool,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ParseSpec(_)
        | Error::InvalidTable(_)
        | Error::InvalidConnectionSet(_)
        | Error::InvalidWitness(_)
        | Error::InvalidPermutation(_)
        | Error::NotColourPermuting => 1,
        Error::OrderCap { .. } | Error::SearchLimit { .. } => 2,
        Error::FactorizationStep(_) => 3,
    }
}

/// Build cap: the compiled default unless CCA_MAX_ORDER overrides it.
fn order_cap() -> Result<usize, Error> {
    match std::env::var("CCA_MAX_ORDER") {
        Err(_) => Ok(DEFAULT_ORDER_CAP),
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Error::ParseSpec(format!(
                "CCA_MAX_ORDER must be a positive integer, found {raw:?}"
            ))
        }),
    }
}

fn build(spec: &str) -> Result<FiniteGroup, Error> {
    build_group_with_cap(spec, order_cap()?)
}

fn graph_for(g: &FiniteGroup, set: &Option<Vec<usize>>) -> Result<CayleyGraph, Error> {
    match set {
        None => Ok(CayleyGraph::complete(g)),
        Some(s) => CayleyGraph::new(g, s),
    }
}

fn csv(images: &[usize]) -> String {
    images
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn print_json(value: &serde_json::Value) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable value")
    );
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Build { spec, format } => run_build(&spec, format),
        Command::Classify {
            spec,
            check,
            format,
        } => run_classify(&spec, check, format),
        Command::Enum {
            spec,
            set,
            mode,
            full,
            format,
        } => run_enum(&spec, set, mode.into(), full, format),
        Command::Decompose { spec, map, format } => run_decompose(&spec, map, format),
        Command::Verify {
            suite,
            max_order,
            group,
            seed,
            format,
        } => run_verify(suite, max_order, group.as_deref(), seed, format),
        Command::Export {
            spec,
            set,
            complete: _,
            format,
            out,
        } => run_export(&spec, set, format, out),
    }
}

fn run_build(spec: &str, format: TextFormat) -> Result<ExitCode, Error> {
    let g = build(spec)?;
    let mut order_counts = std::collections::BTreeMap::new();
    for x in g.elements() {
        *order_counts.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    let witness = is_dicyclic_type(&g);
    match format {
        TextFormat::Text => {
            outln!("group: {} (order {})", g.name(), g.order());
            outln!("abelian: {}", g.is_abelian());
            let orders: Vec<String> = order_counts
                .iter()
                .map(|(k, v)| format!("{k}:{v}"))
                .collect();
            outln!("element orders (order:count): {}", orders.join(" "));
            outln!(
                "elements: {}",
                g.elements()
                    .map(|x| g.element_name(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            match &witness {
                Some(w) => outln!(
                    "dicyclic witness: abelian subgroup {:?}, z={}, q={}",
                    w.abelian, w.z, w.q
                ),
                None => outln!("dicyclic witness: none"),
            }
        }
        TextFormat::Json => {
            let orders: Vec<serde_json::Value> = order_counts
                .iter()
                .map(|(k, v)| serde_json::json!({"order": k, "count": v}))
                .collect();
            print_json(&serde_json::json!({
                "name": g.name(),
                "order": g.order(),
                "abelian": g.is_abelian(),
                "element_orders": orders,
                "elements": g.elements().map(|x| g.element_name(x)).collect::<Vec<_>>(),
                "dicyclic_witness": witness.as_ref().map(|w| serde_json::json!({
                    "abelian": w.abelian,
                    "z": w.z,
                    "q": w.q,
                })),
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_classify(spec: &str, check: bool, format: TextFormat) -> Result<ExitCode, Error> {
    let g = build(spec)?;
    let predicted = predict_stabilizer(&g);
    let agreement = if check {
        let x = CayleyGraph::complete(&g);
        let found = enumerate_stabilizer(&x, Mode::ColourPreserving)?;
        Some((found.maps == predicted.maps, found.len()))
    } else {
        None
    };
    match format {
        TextFormat::Text => {
            outln!("group: {} (order {})", g.name(), g.order());
            outln!("kind: {}", predicted.kind);
            outln!("stabilizer size: {}", predicted.stabilizer_size());
            outln!("cca: {}", predicted.cca);
            outln!("strongly cca: {}", predicted.strongly_cca);
            if let Some((agrees, n)) = agreement {
                outln!("brute-force agreement: {agrees} ({n} maps found)");
            }
        }
        TextFormat::Json => {
            let mut v = predicted.to_json();
            if let Some((agrees, n)) = agreement {
                v["check"] = serde_json::json!({"agrees": agrees, "brute_force_size": n});
            }
            print_json(&v);
        }
    }
    match agreement {
        Some((false, _)) => {
            eprintln!("error: brute-force stabilizer disagrees with the prediction");
            Ok(ExitCode::from(3))
        }
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn run_enum(
    spec: &str,
    set: Option<Vec<usize>>,
    mode: Mode,
    full: bool,
    format: TextFormat,
) -> Result<ExitCode, Error> {
    let g = build(spec)?;
    let x = graph_for(&g, &set)?;
    let found = if full {
        full_automorphism_group(&x, mode)?
    } else {
        enumerate_stabilizer(&x, mode)?
    };
    match format {
        TextFormat::Text => {
            outln!(
                "graph: Cay({}, {} elements){}",
                g.name(),
                x.connection().len(),
                if x.is_complete() { " [complete]" } else { "" }
            );
            outln!(
                "mode: {mode}, {}",
                if full {
                    "full automorphism group"
                } else {
                    "identity-fixing stabilizer"
                }
            );
            outln!("count: {}", found.len());
            for m in &found.maps {
                outln!("  {}", csv(m.images()));
            }
        }
        TextFormat::Json => print_json(&found.to_json()),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_decompose(spec: &str, map: Vec<usize>, format: TextFormat) -> Result<ExitCode, Error> {
    let g = build(spec)?;
    let x = CayleyGraph::complete(&g);
    let m = GroupMap::from_images(map)?;
    let dec = decompose_colour_permuting(&x, &m)?;
    match format {
        TextFormat::Text => {
            outln!("original: {}", csv(dec.original.images()));
            outln!("group automorphism: {}", csv(dec.beta.images()));
            outln!("colour-preserving part: {}", csv(dec.psi.images()));
            outln!("composition order: automorphism applied after the colour-preserving part");
        }
        TextFormat::Json => print_json(&certificate(&x, &dec)),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(
    suite: SuiteArg,
    max_order: Option<usize>,
    group: Option<&str>,
    seed: u64,
    format: TextFormat,
) -> Result<ExitCode, Error> {
    // Normalize a family expression to its canonical display name so the
    // roster filter matches however the group was spelled.
    let canonical = match group {
        Some(s) => Some(GroupSpec::parse(s)?.canonical_name()),
        None => None,
    };
    let only = canonical.as_deref();
    let report: SuiteReport = match suite {
        SuiteArg::Lemmas => suite_lemmas(max_order.unwrap_or(32), seed, only)?,
        SuiteArg::Classif => suite_classif(max_order.unwrap_or(32), only)?,
        SuiteArg::Decomposition => suite_decomposition(max_order.unwrap_or(32), only)?,
        SuiteArg::D12 => suite_d12()?,
        SuiteArg::NormalSearch => suite_normal_search(max_order.unwrap_or(16), only)?,
    };
    match format {
        TextFormat::Text => out!("{}", report.render()),
        TextFormat::Json => print_json(&report.to_json()),
    }
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn run_export(
    spec: &str,
    set: Option<Vec<usize>>,
    format: ExportFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode, Error> {
    let g = build(spec)?;
    let x = graph_for(&g, &set)?;
    let rendered = match format {
        ExportFormat::Dot => x.to_dot(),
        ExportFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&x.to_json()).expect("serializable value")
        ),
    };
    match out {
        Some(path) => std::fs::write(&path, rendered).map_err(|e| {
            Error::ParseSpec(format!("cannot write {}: {e}", path.display()))
        })?,
        None => out!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}
