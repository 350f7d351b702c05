//! The `tridiss` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 parse failure,
//! 4 invariant failure, 5 incomplete range, 6 unknown signature.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bitrade::text::{parse_records, write_records, BitradeRecord};
use crate::bitrade::Triple;
use crate::enumerate::{
    asymptotics_report, counts_report, enumerate_dissections, extremes_report, load_store,
    perfect_report, possible_sizes_report, read_bitrade_sizes, save_store, ClassFilter,
    DissectionStore, EnumerateConfig, EnumerateError, InputDigest, LabelledBitrade, Manifest,
    Order, PersistError, SizeMeasure, Table,
};
use crate::geometry::Signature;
use crate::ingest::{
    eulerian_triangulations, parse_planar_code, triangulation_to_bitrade, write_planar_code,
};
use crate::render::{render, FigureFormat};
use crate::solver::{pointed_integer_dissection, OverlapCheck};
use crate::verify::{verify, Scope, VerifyConfig};

pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;
pub const EXIT_INCOMPLETE: i32 = 5;
pub const EXIT_UNKNOWN_SIGNATURE: i32 = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invariant(String),
    #[error("requested sizes up to {requested}, but {covered}")]
    IncompleteRange { requested: usize, covered: String },
    #[error("unknown signature {0}")]
    UnknownSignature(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::IncompleteRange { .. } => EXIT_INCOMPLETE,
            CliError::UnknownSignature(_) => EXIT_UNKNOWN_SIGNATURE,
        }
    }
}

impl From<PersistError> for CliError {
    fn from(e: PersistError) -> Self {
        match e {
            PersistError::Io { path, source } => CliError::Io {
                path: path.display().to_string(),
                source,
            },
            e @ PersistError::Format { .. } => CliError::Parse(e.to_string()),
        }
    }
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "tridiss",
    version,
    about = "Enumerate dissections of equilateral triangles from spherical latin bitrades"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write planar Eulerian triangulations from the internal generator as planar_code.
    Generate(GenerateArgs),
    /// Convert planar_code triangulations to bitrade records.
    Convert(ConvertArgs),
    /// Run the pipeline and persist the dissection store.
    Enumerate(EnumerateArgs),
    /// Print a table from a persisted store.
    Report(ReportArgs),
    /// Draw one dissection, or every matching record of a store.
    Render(RenderArgs),
    /// Run the self-checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Largest bitrade size; triangulations have up to this many plus two vertices.
    #[arg(long)]
    pub max_size: usize,
    /// Output file; standard output when absent or `-`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    /// planar_code files; `-` reads standard input.
    #[arg(long, num_args = 1.., required = true)]
    pub input: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Separated,
    All,
}

impl From<ClassArg> for ClassFilter {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Separated => ClassFilter::Separated,
            ClassArg::All => ClassFilter::All,
        }
    }
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Largest dissection size to record.
    #[arg(long, default_value_t = 13)]
    pub max_size: usize,
    /// planar_code or bitrade record files; `-` reads standard input. The
    /// internal generator is used when absent.
    #[arg(long, num_args = 1..)]
    pub input: Vec<String>,
    /// Declare that the inputs hold every triangulation up to max-size + 2 vertices.
    #[arg(long)]
    pub inputs_complete: bool,
    #[arg(long, value_enum, default_value = "all")]
    pub class: ClassArg,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Store directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub perfect_only: bool,
    #[arg(long)]
    pub trivial_only: bool,
    /// Mark the store as carrying source counts for the `sources` report.
    #[arg(long)]
    pub with_source_counts: bool,
    /// Check every pair of triangles for overlap, not only the area sum.
    #[arg(long)]
    pub pairwise_checks: bool,
}

/// Parameters of one enumeration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub inputs: Vec<String>,
    pub inputs_complete: bool,
    pub max_size: usize,
    pub class: ClassFilter,
    pub perfect_only: bool,
    pub trivial_only: bool,
    pub source_counting: bool,
    pub pairwise_checks: bool,
    pub out: PathBuf,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(a: &EnumerateArgs) -> Result<RunConfig, CliError> {
        if a.max_size < 4 {
            return Err(CliError::Usage("--max-size must be at least 4".into()));
        }
        if a.workers < 1 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        Ok(RunConfig {
            inputs: a.input.clone(),
            inputs_complete: a.inputs_complete,
            max_size: a.max_size,
            class: a.class.into(),
            perfect_only: a.perfect_only,
            trivial_only: a.trivial_only,
            source_counting: a.with_source_counts,
            pairwise_checks: a.pairwise_checks,
            out: a.out.clone(),
            workers: a.workers,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    Counts,
    Perfect,
    Extremes,
    SizesPerBitrade,
    Asymptotics,
    Sources,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Triangles,
    Vertices,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(value_enum)]
    pub kind: ReportKind,
    /// Store directory written by `enumerate`.
    #[arg(long)]
    pub store: PathBuf,
    /// Require the store to be complete through this size and drop larger rows.
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    pub class: ClassArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    #[arg(long)]
    pub perfect_only: bool,
    #[arg(long)]
    pub trivial_only: bool,
    /// Size measure for `sizes-per-bitrade`.
    #[arg(long, value_enum, default_value = "vertices")]
    pub size_measure: MeasureArg,
    /// Restrict `sources` to one signature.
    #[arg(long)]
    pub signature: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    Svg,
    Tikz,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// A signature, or a store record line whose first field is one.
    pub target: Option<String>,
    /// Store to look the target up in, or to render matching records from.
    #[arg(long)]
    pub store: Option<PathBuf>,
    /// Bitrade record or planar_code file to solve instead of a signature.
    #[arg(long, conflicts_with = "target")]
    pub input: Option<String>,
    /// Zero-based record index within `--input`.
    #[arg(long, default_value_t = 0)]
    pub record: usize,
    /// Anchor triple `r c s` for `--input`; defaults to the least triple.
    #[arg(long)]
    pub anchor: Option<String>,
    #[arg(long, default_value = "star", value_parser = ["star", "swap"])]
    pub order: String,
    /// With `--store` and no target: only records of this size.
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long)]
    pub perfect_only: bool,
    #[arg(long)]
    pub trivial_only: bool,
    #[arg(long, value_enum, default_value = "svg")]
    pub format: FigureArg,
    /// Output file, or directory when rendering several records.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Axioms,
    Solver,
    Geometry,
    Oracle,
    Store,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SummaryFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, num_args = 1.., default_value = "all")]
    pub scope: Vec<ScopeArg>,
    /// Store directory for the `store` scope.
    #[arg(long)]
    pub store: Option<PathBuf>,
    /// Largest generated bitrade size for the axioms, solver and geometry scopes.
    #[arg(long, default_value_t = 9)]
    pub max_size: usize,
    /// Largest grid side for the grid oracle.
    #[arg(long, default_value_t = 4)]
    pub grid_side: i64,
    /// Largest vertex count for the flip-graph triangulation oracle.
    #[arg(long, default_value_t = 10)]
    pub oracle_vertices: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: SummaryFormat,
}

/// Parses the process arguments and runs; returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("tridiss: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Convert(a) => cmd_convert(&a),
        Command::Enumerate(a) => cmd_enumerate(&RunConfig::new(&a)?).map(|_| ()),
        Command::Report(a) => cmd_report(&a),
        Command::Render(a) => cmd_render(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(p) if p != Path::new("-") => fs::write(p, bytes).map_err(io_err(p)),
        _ => io::stdout()
            .write_all(bytes)
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

struct InputFile {
    name: String,
    bytes: Vec<u8>,
}

fn read_inputs(paths: &[String]) -> Result<Vec<InputFile>, CliError> {
    paths
        .iter()
        .map(|p| {
            let bytes = if p == "-" {
                let mut buf = Vec::new();
                io::stdin()
                    .read_to_end(&mut buf)
                    .map_err(io_err(Path::new("<stdin>")))?;
                buf
            } else {
                fs::read(p).map_err(io_err(Path::new(p)))?
            };
            Ok(InputFile {
                name: p.clone(),
                bytes,
            })
        })
        .collect()
}

fn is_planar_code(bytes: &[u8]) -> bool {
    bytes.starts_with(b">>planar_code") || bytes.first().is_some_and(|&b| b < 0x20 && b != b'\n')
}

/// Bitrades from one input, each labelled `file#index`.
fn bitrades_of(file: &InputFile) -> Result<Vec<LabelledBitrade>, CliError> {
    if file.bytes.is_empty() {
        return Ok(Vec::new());
    }
    if is_planar_code(&file.bytes) {
        let graphs = parse_planar_code(&file.bytes)
            .map_err(|e| CliError::Parse(format!("{}: {e}", file.name)))?;
        graphs
            .iter()
            .enumerate()
            .map(|(i, g)| {
                triangulation_to_bitrade(g)
                    .map(|bitrade| LabelledBitrade {
                        label: format!("{}#{i}", file.name),
                        bitrade,
                    })
                    .map_err(|e| CliError::Parse(format!("{}: record {i}: {e}", file.name)))
            })
            .collect()
    } else {
        let text = std::str::from_utf8(&file.bytes)
            .map_err(|e| CliError::Parse(format!("{}: {e}", file.name)))?;
        let records =
            parse_records(text).map_err(|e| CliError::Parse(format!("{}: {e}", file.name)))?;
        Ok(records
            .into_iter()
            .enumerate()
            .map(|(i, r)| LabelledBitrade {
                label: format!("{}#{i}", file.name),
                bitrade: r.bitrade,
            })
            .collect())
    }
}

fn hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<(), CliError> {
    if a.max_size < 4 {
        return Err(CliError::Usage("--max-size must be at least 4".into()));
    }
    let graphs = eulerian_triangulations(a.max_size + 2);
    write_output(a.out.as_deref(), &write_planar_code(&graphs))
}

pub fn cmd_convert(a: &ConvertArgs) -> Result<(), CliError> {
    let mut records = Vec::new();
    for file in read_inputs(&a.input)? {
        if file.bytes.is_empty() {
            continue;
        }
        let graphs = parse_planar_code(&file.bytes)
            .map_err(|e| CliError::Parse(format!("{}: {e}", file.name)))?;
        for (i, g) in graphs.iter().enumerate() {
            let bitrade = triangulation_to_bitrade(g)
                .map_err(|e| CliError::Parse(format!("{}: record {i}: {e}", file.name)))?;
            records.push(BitradeRecord {
                provenance: vec![
                    ("source".into(), file.name.clone()),
                    ("record".into(), i.to_string()),
                    ("vertices".into(), g.vertex_count().to_string()),
                ],
                bitrade,
            });
        }
    }
    write_output(a.out.as_deref(), write_records(&records).as_bytes())
}

fn class_name(c: ClassFilter) -> &'static str {
    match c {
        ClassFilter::Separated => "separated",
        ClassFilter::All => "all",
    }
}

fn filter_store(store: &mut DissectionStore, class: ClassFilter, perfect: bool, trivial: bool) {
    store.retain(|_, r| {
        (class == ClassFilter::All || r.separated)
            && (!perfect || r.perfect)
            && (!trivial || r.trivial)
    });
}

pub fn cmd_enumerate(cfg: &RunConfig) -> Result<Manifest, CliError> {
    let (bitrades, inputs, complete) = if cfg.inputs.is_empty() {
        let bitrades = eulerian_triangulations(cfg.max_size + 2)
            .iter()
            .enumerate()
            .map(|(i, g)| {
                triangulation_to_bitrade(g)
                    .map(|bitrade| LabelledBitrade {
                        label: format!("generated#{i}"),
                        bitrade,
                    })
                    .map_err(|e| CliError::Invariant(format!("generated#{i}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        (bitrades, Vec::new(), true)
    } else {
        let mut bitrades = Vec::new();
        let mut inputs = Vec::new();
        for file in read_inputs(&cfg.inputs)? {
            let found = bitrades_of(&file)?;
            inputs.push(InputDigest {
                name: file.name.clone(),
                sha256: hex(&file.bytes),
                records: found.len(),
            });
            bitrades.extend(found);
        }
        (bitrades, inputs, cfg.inputs_complete)
    };
    let config = EnumerateConfig {
        max_size: cfg.max_size,
        workers: cfg.workers,
        check: if cfg.pairwise_checks {
            OverlapCheck::Pairwise
        } else {
            OverlapCheck::AreaOnly
        },
    };
    let mut e = enumerate_dissections(&bitrades, &config)?;
    filter_store(&mut e.store, cfg.class, cfg.perfect_only, cfg.trivial_only);
    fs::create_dir_all(&cfg.out).map_err(io_err(&cfg.out))?;
    let manifest = Manifest {
        class: class_name(cfg.class).into(),
        pairwise_checks: cfg.pairwise_checks,
        source_counting: cfg.source_counting,
        complete_through: complete.then_some(cfg.max_size),
        inputs,
        ..Default::default()
    };
    Ok(save_store(&cfg.out, &e.store, &e.bitrade_sizes, manifest)?)
}

#[derive(Serialize)]
struct SourcesRow {
    signature: String,
    size: usize,
    sources: u64,
}

struct SourcesTable(Vec<SourcesRow>);

impl Table for SourcesTable {
    type Row = SourcesRow;
    const HEADER: &'static [&'static str] = &["signature", "size", "sources"];

    fn rows(&self) -> &[SourcesRow] {
        &self.0
    }

    fn cells(r: &SourcesRow) -> Vec<String> {
        vec![
            r.signature.clone(),
            r.size.to_string(),
            r.sources.to_string(),
        ]
    }
}

fn emit<T: Table>(t: &T, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => t.to_csv(),
        TableFormat::Json => t.to_json() + "\n",
    }
}

/// Fails unless `manifest` covers every size up to `requested`.
fn require_complete(manifest: &Manifest, requested: usize) -> Result<(), CliError> {
    if requested > manifest.max_size {
        return Err(CliError::IncompleteRange {
            requested,
            covered: format!("the run stopped at size {}", manifest.max_size),
        });
    }
    match manifest.complete_through {
        Some(n) if n >= requested => Ok(()),
        Some(n) => Err(CliError::IncompleteRange {
            requested,
            covered: format!("the inputs are complete only through size {n}"),
        }),
        None => Err(CliError::IncompleteRange {
            requested,
            covered: "the inputs were not declared complete".into(),
        }),
    }
}

pub fn cmd_report(a: &ReportArgs) -> Result<(), CliError> {
    let (manifest, mut store) = load_store(&a.store)?;
    let class: ClassFilter = a.class.into();
    if let Some(n) = a.max_size {
        require_complete(&manifest, n)?;
        store.retain(|_, r| r.size <= n);
    } else {
        match manifest.complete_through {
            Some(n) => eprintln!("note: complete through size {n}"),
            None => eprintln!("note: inputs not declared complete; counts are lower bounds"),
        }
    }
    if class == ClassFilter::All && manifest.class == "separated" {
        return Err(CliError::Usage(
            "the store holds separated dissections only; use --class separated".into(),
        ));
    }
    filter_store(&mut store, class, a.perfect_only, a.trivial_only);
    let text = match a.kind {
        ReportKind::Counts => emit(&counts_report(&store, class), a.format),
        ReportKind::Perfect => emit(&perfect_report(&store), a.format),
        ReportKind::Extremes => emit(&extremes_report(&store), a.format),
        ReportKind::Asymptotics => {
            if class != ClassFilter::All || a.perfect_only || a.trivial_only {
                return Err(CliError::Usage(
                    "asymptotics uses full-class totals; drop the class filters".into(),
                ));
            }
            emit(
                &asymptotics_report(&counts_report(&store, ClassFilter::All)),
                a.format,
            )
        }
        ReportKind::SizesPerBitrade => {
            let measure = match a.size_measure {
                MeasureArg::Triangles => SizeMeasure::Triangles,
                MeasureArg::Vertices => SizeMeasure::Vertices,
            };
            let mut sizes = read_bitrade_sizes(&a.store)?;
            if let Some(n) = a.max_size {
                sizes.retain(|b| b.size <= n);
            }
            emit(&possible_sizes_report(&sizes, measure), a.format)
        }
        ReportKind::Sources => {
            if !manifest.source_counting {
                return Err(CliError::Usage(
                    "the store was built without --with-source-counts".into(),
                ));
            }
            let rows = match &a.signature {
                Some(text) => {
                    let sig: Signature =
                        text.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
                    let r = store
                        .get(&sig)
                        .ok_or_else(|| CliError::UnknownSignature(sig.to_string()))?;
                    vec![SourcesRow {
                        signature: sig.to_string(),
                        size: r.size,
                        sources: r.sources,
                    }]
                }
                None => store
                    .iter()
                    .map(|(s, r)| SourcesRow {
                        signature: s.to_string(),
                        size: r.size,
                        sources: r.sources,
                    })
                    .collect(),
            };
            emit(&SourcesTable(rows), a.format)
        }
    };
    write_output(a.out.as_deref(), text.as_bytes())
}

fn parse_anchor(text: &str) -> Result<Triple, CliError> {
    let v: Vec<u32> = text
        .split_whitespace()
        .map(|x| x.parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("anchor {text:?} is not `r c s`")))?;
    match v[..] {
        [r, c, s] => Ok(Triple::new(r, c, s)),
        _ => Err(CliError::Usage(format!("anchor {text:?} is not `r c s`"))),
    }
}

pub fn cmd_render(a: &RenderArgs) -> Result<(), CliError> {
    let format = match a.format {
        FigureArg::Svg => FigureFormat::Svg,
        FigureArg::Tikz => FigureFormat::Tikz,
    };
    let ext = match a.format {
        FigureArg::Svg => "svg",
        FigureArg::Tikz => "tex",
    };
    let store = a.store.as_deref().map(load_store).transpose()?;
    if let Some(path) = &a.input {
        let file = read_inputs(std::slice::from_ref(path))?.remove(0);
        let bitrades = bitrades_of(&file)?;
        let lb = bitrades
            .get(a.record)
            .ok_or_else(|| CliError::Usage(format!("{path} has {} records", bitrades.len())))?;
        let b = match Order::parse(&a.order) {
            Some(Order::Swapped) => lb.bitrade.swap(),
            _ => lb.bitrade.clone(),
        };
        let anchor = match &a.anchor {
            Some(t) => parse_anchor(t)?,
            None => b.t_star()[0],
        };
        let d = pointed_integer_dissection(&b, anchor, OverlapCheck::Pairwise)
            .map_err(|e| CliError::Invariant(format!("{}: {e}", lb.label)))?;
        return write_output(a.out.as_deref(), render(&d, format).as_bytes());
    }
    if let Some(target) = &a.target {
        let text = target.split('\t').next().unwrap_or_default();
        let sig: Signature = text.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
        if let Some((_, store)) = &store {
            if store.get(&sig).is_none() {
                return Err(CliError::UnknownSignature(sig.to_string()));
            }
        }
        let d = Signature::parse(sig.as_str()).map_err(|e| CliError::Parse(e.to_string()))?;
        return write_output(a.out.as_deref(), render(&d, format).as_bytes());
    }
    let Some((_, store)) = store else {
        return Err(CliError::Usage(
            "give a signature, --input, or --store".into(),
        ));
    };
    let Some(dir) = &a.out else {
        return Err(CliError::Usage(
            "rendering from a store needs --out DIR".into(),
        ));
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut index = 0usize;
    for (sig, r) in store.iter() {
        if a.size.is_some_and(|n| n != r.size)
            || (a.perfect_only && !r.perfect)
            || (a.trivial_only && !r.trivial)
        {
            continue;
        }
        let d = Signature::parse(sig.as_str()).map_err(|e| CliError::Parse(e.to_string()))?;
        let path = dir.join(format!("n{:02}-{index:04}.{ext}", r.size));
        fs::write(&path, render(&d, format)).map_err(io_err(&path))?;
        index += 1;
    }
    eprintln!("wrote {index} figures to {}", dir.display());
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<(), CliError> {
    let mut scopes = Vec::new();
    for s in &a.scope {
        match s {
            ScopeArg::Axioms => scopes.push(Scope::Axioms),
            ScopeArg::Solver => scopes.push(Scope::Solver),
            ScopeArg::Geometry => scopes.push(Scope::Geometry),
            ScopeArg::Oracle => scopes.push(Scope::Oracle),
            ScopeArg::Store => scopes.push(Scope::Store),
            ScopeArg::All => {
                scopes.extend([Scope::Axioms, Scope::Solver, Scope::Geometry, Scope::Oracle]);
                if a.store.is_some() {
                    scopes.push(Scope::Store);
                }
            }
        }
    }
    scopes.sort();
    scopes.dedup();
    let cfg = VerifyConfig {
        max_size: a.max_size,
        oracle_vertices: a.oracle_vertices,
        grid_side: a.grid_side,
        workers: a.workers.max(1),
    };
    let report = verify(&scopes, &cfg, a.store.as_deref());
    let text = match a.format {
        SummaryFormat::Json => report.to_json() + "\n",
        SummaryFormat::Text => report.checks.iter().map(|c| format!("{c}\n")).collect(),
    };
    write_output(None, text.as_bytes())?;
    if report.passed() {
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        Err(CliError::Invariant(format!("{failed} checks failed")))
    }
}
