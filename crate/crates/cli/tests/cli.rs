//! End-to-end tests of the installed binary: argument handling, exit codes,
//! output files, and the one-line summaries.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use graphsum::report::SummaryReport;
use graphsum::synth;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphsum"))
        .args(args)
        .output()
        .expect("binary should launch")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_temp(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn demo_graph_file(dir: &Path) -> PathBuf {
    let g = synth::three_overlapping_cliques();
    let mut buf = Vec::new();
    g.write_edge_list(&mut buf).unwrap();
    let path = dir.join("demo.txt");
    fs::write(&path, buf).unwrap();
    path
}

fn barbell_file(dir: &Path) -> PathBuf {
    let g = synth::barbell(10);
    let mut buf = Vec::new();
    g.write_edge_list(&mut buf).unwrap();
    let path = dir.join("barbell.txt");
    fs::write(&path, buf).unwrap();
    path
}

#[test]
fn stats_reports_basic_graph_facts() {
    let dir = tempfile::tempdir().unwrap();
    let triangle = write_temp(dir.path(), "triangle.txt", "1 2\n2 3\n1 3\n");
    let out = run(&["stats", triangle.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "nodes=3 edges=3 min_degree=2 max_degree=2 components=1 max_core=2\n"
    );

    let empty = write_temp(dir.path(), "empty.txt", "");
    let out = run(&["stats", empty.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "nodes=0 edges=0 min_degree=0 max_degree=0 components=0 max_core=0\n"
    );
}

#[test]
fn stats_accepts_comments_directed_duplicates_and_self_loops() {
    let dir = tempfile::tempdir().unwrap();
    let messy = write_temp(
        dir.path(),
        "messy.txt",
        "# a comment\n% another\n1 2\n2 1\n2 2\n2\t3\n",
    );
    let out = run(&["stats", messy.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).starts_with("nodes=3 edges=2 "));
}

#[test]
fn parse_errors_exit_2_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(dir.path(), "bad.txt", "1 2\nx y\n");
    let out = run(&["stats", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("line 2"), "diagnostic should name the line: {err}");
}

#[test]
fn missing_input_exits_2() {
    let out = run(&["summarize", "/definitely/not/here.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr_of(&out).is_empty());
}

#[test]
fn invalid_configuration_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_graph_file(dir.path());
    let input = input.to_str().unwrap();

    let out = run(&["summarize", input, "--method", "metis"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("unknown method"));

    let out = run(&["summarize", input, "--clusters", "1", "--method", "spectral"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["summarize", input, "--heuristic", "best"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["summarize", input, "--method", "external"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("--partition"));

    let out = run(&["compare", input]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("--all-methods"));
}

#[test]
fn summarize_writes_model_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_graph_file(dir.path());
    let model_out = dir.path().join("model.txt");
    let report_out = dir.path().join("report.json");

    let out = run(&[
        "summarize",
        input.to_str().unwrap(),
        "--method",
        "kcbc",
        "--heuristic",
        "greedy",
        "--overlap-aware",
        "--model-out",
        model_out.to_str().unwrap(),
        "--report-out",
        report_out.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert_eq!(
        stdout_of(&out),
        "total_bits=760.193 compression=100.000% structures=0 fc=0 st=0 bc=0 ch=0\n"
    );

    // The k-core candidate is the whole merged 40-clique region; it does not
    // pay for itself, so the model stays empty: header line only.
    let model = fs::read_to_string(&model_out).unwrap();
    assert_eq!(
        model,
        "# total_bits=760.193 model_bits=1.51857 error_bits=758.674 overlap_bits=0\n"
    );

    let report = SummaryReport::from_json(&fs::read_to_string(&report_out).unwrap()).unwrap();
    assert_eq!(report.method, "kcbc");
    assert_eq!(report.heuristic, "greedy");
    assert!(report.overlap_aware);
    assert_eq!(report.compression_rate, 100.0);
    assert_eq!(report.total_bits, 760.193);
    assert_eq!(report.type_histogram_pre.fc, 1);
    assert_eq!(report.type_histogram_post.total(), 0);
    assert_eq!(report.runtime_decompose_s, 0.0);
}

#[test]
fn summarize_louvain_splits_the_barbell_at_unit_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let input = barbell_file(dir.path());
    let model_out = dir.path().join("model.txt");

    let out = run(&[
        "summarize",
        input.to_str().unwrap(),
        "--method",
        "louvain",
        "--resolution",
        "1.0",
        "--model-out",
        model_out.to_str().unwrap(),
        "--report-out",
        dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("structures=2 fc=2"));

    let model = fs::read_to_string(&model_out).unwrap();
    let fc_lines: Vec<&str> = model
        .lines()
        .filter(|l| l.starts_with("fc "))
        .collect();
    assert_eq!(fc_lines.len(), 2, "model file:\n{model}");
    assert_eq!(fc_lines[0], "fc 0 1 2 3 4 5 6 7 8 9");
    assert_eq!(fc_lines[1], "fc 10 11 12 13 14 15 16 17 18 19");
}

#[test]
fn external_partitions_drive_summarize() {
    let dir = tempfile::tempdir().unwrap();
    let input = barbell_file(dir.path());
    let partition = write_temp(
        dir.path(),
        "parts.txt",
        &("0\n".repeat(10) + &"1\n".repeat(10)),
    );
    let report_out = dir.path().join("report.json");

    let out = run(&[
        "summarize",
        input.to_str().unwrap(),
        "--method",
        "external",
        "--partition",
        partition.to_str().unwrap(),
        "--model-out",
        dir.path().join("m.txt").to_str().unwrap(),
        "--report-out",
        report_out.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));

    let report = SummaryReport::from_json(&fs::read_to_string(&report_out).unwrap()).unwrap();
    assert_eq!(report.method, "external");
    assert_eq!(report.type_histogram_post.fc, 2);
    assert!(report.compression_rate < 100.0);

    // A partition file with the wrong number of lines is a format error.
    let short = write_temp(dir.path(), "short.txt", "0\n1\n");
    let out = run(&[
        "summarize",
        input.to_str().unwrap(),
        "--method",
        "external",
        "--partition",
        short.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_report_round_trips_through_the_report_parser() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_graph_file(dir.path());
    let report_out = dir.path().join("report.csv");

    let out = run(&[
        "summarize",
        input.to_str().unwrap(),
        "--method",
        "slashburn",
        "--report-format",
        "csv",
        "--model-out",
        dir.path().join("m.txt").to_str().unwrap(),
        "--report-out",
        report_out.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));

    let text = fs::read_to_string(&report_out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(graphsum::report::csv_header()).as_deref());
    let row = lines.next().expect("one data row");
    let parsed = SummaryReport::from_csv_row(row).unwrap();
    assert_eq!(parsed.method, "slashburn");
    assert_eq!(parsed.heuristic, "greedy");
    assert!(!parsed.overlap_aware);
    assert!(parsed.compression_rate < 100.0);
}

#[test]
fn compare_emits_one_row_per_configuration_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_graph_file(dir.path());

    let out = run(&["compare", input.to_str().unwrap(), "--methods", "kcbc"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "header plus 1 method x 4 configurations");
    assert_eq!(lines[0], graphsum::report::csv_header());

    let rows: Vec<SummaryReport> = lines[1..]
        .iter()
        .map(|l| SummaryReport::from_csv_row(l).unwrap())
        .collect();
    let shape: Vec<(&str, &str, bool)> = rows
        .iter()
        .map(|r| (r.method.as_str(), r.heuristic.as_str(), r.overlap_aware))
        .collect();
    assert_eq!(
        shape,
        vec![
            ("kcbc", "top10", false),
            ("kcbc", "top10", true),
            ("kcbc", "greedy", false),
            ("kcbc", "greedy", true),
        ]
    );
}

#[test]
fn compare_orders_methods_canonically_regardless_of_request_order() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_graph_file(dir.path());

    let out = run(&[
        "compare",
        input.to_str().unwrap(),
        "--methods",
        "kcbc,slashburn",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let methods: Vec<String> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(
        methods,
        ["slashburn"; 4]
            .iter()
            .chain(["kcbc"; 4].iter())
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
    );
}

#[test]
fn help_lists_every_flag_with_its_default() {
    let out = run(&["summarize", "--help"]);
    assert!(out.status.success());
    let help = stdout_of(&out);
    for flag in [
        "--method",
        "--heuristic",
        "--overlap-aware",
        "--resolution",
        "--clusters",
        "--hub-fraction",
        "--seed",
        "--partition",
        "--model-out",
        "--report-out",
        "--report-format",
        "--timings",
    ] {
        assert!(help.contains(flag), "help is missing {flag}");
    }
    for default in [
        "[default: slashburn]",
        "[default: greedy]",
        "[default: 0.0001]",
        "[default: 0.005]",
        "[default: 0]",
        "[default: model.txt]",
        "[default: report.json]",
        "[default: json]",
    ] {
        assert!(help.contains(default), "help is missing {default}");
    }
}
