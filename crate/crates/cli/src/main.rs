//! graphsum: summarize a graph as a short list of vocabulary structures
//! (cliques, stars, bipartite cores, chains) chosen to minimize total
//! description length, with interchangeable decomposition methods.

use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphsum::assemble::{self, Heuristic, Model};
use graphsum::decompose::{self, DecomposerConfig, Method, BUILTIN_METHODS};
use graphsum::graph::load_edge_list;
use graphsum::pipeline::{self, CandidateSource};
use graphsum::report;
use graphsum::{Error, Graph, Result};

#[derive(Parser)]
#[command(
    name = "graphsum",
    version,
    about = "Graph summarization via minimum description length",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize one graph with a single method/heuristic configuration
    Summarize(SummarizeArgs),
    /// Run methods under both heuristics and overlap flags; emit one CSV
    Compare(CompareArgs),
    /// Print basic statistics for a graph file
    Stats {
        /// Edge-list file (plain or gzip; '#'/'%' comment lines allowed)
        input: PathBuf,
    },
}

#[derive(Args)]
struct SummarizeArgs {
    /// Edge-list file (plain or gzip; '#'/'%' comment lines allowed)
    input: PathBuf,

    /// Decomposition method: slashburn, kcbc, louvain, spectral,
    /// multilevel, or external (requires --partition)
    #[arg(long, default_value = "slashburn")]
    method: String,

    /// Structure selection heuristic: top10 or greedy
    #[arg(long, default_value = "greedy")]
    heuristic: String,

    /// Charge multiply-explained edges an explicit overlap cost
    #[arg(long)]
    overlap_aware: bool,

    /// Louvain resolution parameter
    #[arg(long, default_value_t = 0.0001)]
    resolution: f64,

    /// Cluster count for spectral/multilevel (default scales with n)
    #[arg(long)]
    clusters: Option<usize>,

    /// Fraction of the giant component removed as hubs per SlashBurn turn
    #[arg(long, default_value_t = 0.005)]
    hub_fraction: f64,

    /// Seed for all randomized stages
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Partition file for --method external: one community id per line,
    /// line i labeling the i-th node of the input
    #[arg(long)]
    partition: Option<PathBuf>,

    /// Output path for the selected model
    #[arg(long, default_value = "model.txt")]
    model_out: PathBuf,

    /// Output path for the run report
    #[arg(long, default_value = "report.json")]
    report_out: PathBuf,

    /// Report format: json or csv
    #[arg(long, default_value = "json")]
    report_format: String,

    /// Record wall-clock stage timings in the report (off keeps outputs
    /// byte-identical across runs)
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// Edge-list file (plain or gzip; '#'/'%' comment lines allowed)
    input: PathBuf,

    /// Run every built-in method
    #[arg(long)]
    all_methods: bool,

    /// Comma-separated method subset, e.g. kcbc,slashburn
    #[arg(long, value_delimiter = ',')]
    methods: Vec<String>,

    /// Louvain resolution parameter
    #[arg(long, default_value_t = 0.0001)]
    resolution: f64,

    /// Cluster count for spectral/multilevel (default scales with n)
    #[arg(long)]
    clusters: Option<usize>,

    /// Fraction of the giant component removed as hubs per SlashBurn turn
    #[arg(long, default_value_t = 0.005)]
    hub_fraction: f64,

    /// Seed for all randomized stages
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// CSV destination (standard output when omitted)
    #[arg(long)]
    output: Option<PathBuf>,

    /// Directory for per-configuration model files,
    /// named <method>_<heuristic>_<plain|aware>.model.txt
    #[arg(long)]
    model_dir: Option<PathBuf>,

    /// Record wall-clock stage timings in the report rows
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Summarize(args) => cmd_summarize(args).map(|()| ExitCode::SUCCESS),
        Command::Compare(args) => cmd_compare(args),
        Command::Stats { input } => cmd_stats(&input).map(|()| ExitCode::SUCCESS),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::Io(_) | Error::PartitionFormat(_) => 2,
        Error::InvalidConfig(_) | Error::NodeOutOfRange(_) => 3,
        Error::Convergence { .. } => 4,
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).map_err(|e| {
        std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))
    })?;
    load_edge_list(file)
}

fn parse_method(name: &str) -> Result<Method> {
    Method::from_name(name).ok_or_else(|| {
        Error::InvalidConfig(format!(
            "unknown method {name:?}; expected one of slashburn, kcbc, louvain, spectral, multilevel, external"
        ))
    })
}

fn parse_heuristic(name: &str) -> Result<Heuristic> {
    Heuristic::from_name(name).ok_or_else(|| {
        Error::InvalidConfig(format!(
            "unknown heuristic {name:?}; expected top10 or greedy"
        ))
    })
}

fn cmd_summarize(args: SummarizeArgs) -> Result<()> {
    let method = parse_method(&args.method)?;
    let heuristic = parse_heuristic(&args.heuristic)?;
    if !matches!(args.report_format.as_str(), "json" | "csv") {
        return Err(Error::InvalidConfig(format!(
            "unknown report format {:?}; expected json or csv",
            args.report_format
        )));
    }
    let graph = load_graph(&args.input)?;

    let cfg = DecomposerConfig {
        hub_fraction: args.hub_fraction,
        cluster_count: args.clusters,
        resolution: args.resolution,
        seed: args.seed,
        ..DecomposerConfig::default()
    };

    let source = match method {
        Method::External => {
            let path = args.partition.ok_or_else(|| {
                Error::InvalidConfig(
                    "--method external requires --partition <file>".to_string(),
                )
            })?;
            let file = File::open(&path)?;
            CandidateSource::Partition(decompose::ingest_partition_file(file, &graph)?)
        }
        _ => {
            if args.partition.is_some() {
                return Err(Error::InvalidConfig(
                    "--partition is only meaningful with --method external".to_string(),
                ));
            }
            CandidateSource::Method(method)
        }
    };

    let (model, summary) = pipeline::run(
        &graph,
        &source,
        &cfg,
        heuristic,
        args.overlap_aware,
        args.timings,
    )?;

    let model_file = File::create(&args.model_out)?;
    assemble::write_model(model_file, &graph, &model)?;

    let report_text = match args.report_format.as_str() {
        "json" => summary.to_json(),
        _ => format!("{}\n{}\n", report::csv_header(), summary.csv_row()),
    };
    fs::write(&args.report_out, report_text)?;

    let hist = &summary.type_histogram_post;
    println!(
        "total_bits={} compression={}% structures={} fc={} st={} bc={} ch={}",
        report::format_sig(summary.total_bits),
        report::format_sig(summary.compression_rate),
        hist.total(),
        hist.fc,
        hist.st,
        hist.bc,
        hist.ch,
    );
    Ok(())
}

fn model_file_name(method: &str, heuristic: Heuristic, overlap_aware: bool) -> String {
    let mode = if overlap_aware { "aware" } else { "plain" };
    format!("{method}_{}_{mode}.model.txt", heuristic.name())
}

fn write_compare_model(
    dir: &Path,
    graph: &Graph,
    method: &str,
    heuristic: Heuristic,
    overlap_aware: bool,
    model: &Model,
) -> Result<()> {
    let path = dir.join(model_file_name(method, heuristic, overlap_aware));
    let file = File::create(path)?;
    assemble::write_model(file, graph, model)
}

fn cmd_compare(args: CompareArgs) -> Result<ExitCode> {
    let methods: Vec<Method> = if args.all_methods {
        BUILTIN_METHODS.to_vec()
    } else if !args.methods.is_empty() {
        let mut requested = Vec::new();
        for name in &args.methods {
            let m = parse_method(name)?;
            if m == Method::External {
                return Err(Error::InvalidConfig(
                    "external partitions are not available under compare; use summarize --method external".to_string(),
                ));
            }
            if !requested.contains(&m) {
                requested.push(m);
            }
        }
        // Canonical row order is independent of the order names were given.
        BUILTIN_METHODS
            .iter()
            .copied()
            .filter(|m| requested.contains(m))
            .collect()
    } else {
        return Err(Error::InvalidConfig(
            "pass --all-methods or --methods <list>".to_string(),
        ));
    };

    let graph = load_graph(&args.input)?;
    let cfg = DecomposerConfig {
        hub_fraction: args.hub_fraction,
        cluster_count: args.clusters,
        resolution: args.resolution,
        seed: args.seed,
        ..DecomposerConfig::default()
    };

    if let Some(dir) = &args.model_dir {
        fs::create_dir_all(dir)?;
    }

    let mut lines = vec![report::csv_header()];
    let mut any_failed = false;
    for method in methods {
        let source = CandidateSource::Method(method);
        // Decompose and label once per method; reuse across the four
        // heuristic/overlap configurations.
        let staged = pipeline::decompose_and_label(&graph, &source, &cfg);
        for heuristic in [Heuristic::Top10, Heuristic::Greedy] {
            for overlap_aware in [false, true] {
                match &staged {
                    Ok(staged) => {
                        let (model, row) = pipeline::assemble_and_report(
                            &graph,
                            method.name(),
                            staged,
                            heuristic,
                            overlap_aware,
                            cfg.seed,
                            args.timings,
                        );
                        if let Some(dir) = &args.model_dir {
                            write_compare_model(
                                dir,
                                &graph,
                                method.name(),
                                heuristic,
                                overlap_aware,
                                &model,
                            )?;
                        }
                        lines.push(row.csv_row());
                    }
                    Err(err) => {
                        any_failed = true;
                        lines.push(report::csv_error_row(
                            method.name(),
                            heuristic.name(),
                            overlap_aware,
                            cfg.seed,
                            &err.to_string(),
                        ));
                    }
                }
            }
        }
        if let Err(err) = &staged {
            eprintln!("warning: method {} failed: {err}", method.name());
        }
    }

    let mut csv = lines.join("\n");
    csv.push('\n');
    match &args.output {
        Some(path) => fs::write(path, csv)?,
        None => print!("{csv}"),
    }

    Ok(if any_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_stats(input: &Path) -> Result<()> {
    let graph = load_graph(input)?;
    let n = graph.node_count();
    let (min_degree, max_degree) = if n == 0 {
        (0, 0)
    } else {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for v in graph.nodes() {
            let d = graph.degree(v);
            lo = lo.min(d);
            hi = hi.max(d);
        }
        (lo, hi)
    };
    let components = graph.connected_components().len();
    let max_core = decompose::core_numbers(&graph)
        .into_iter()
        .max()
        .unwrap_or(0);
    println!(
        "nodes={} edges={} min_degree={min_degree} max_degree={max_degree} components={components} max_core={max_core}",
        n,
        graph.edge_count(),
    );
    Ok(())
}
