//! End-to-end tests of the `netpart` binary: exit codes, report shapes,
//! manifest format, and output determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn netpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn check_reports_a_connected_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "triangle.txt", "0 1\n1 2\n0 2\n");
    for algorithm in ["segment", "node"] {
        let out = netpart(&["check", &file, "--algorithm", algorithm]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        let text = stdout(&out);
        assert!(text.contains("partitions: 1"), "{text}");
        assert!(text.contains("N: 3"), "{text}");
        assert!(text.contains("M: 3"), "{text}");
        assert!(text.contains("c_avg: 2.000000"), "{text}");
    }
}

#[test]
fn check_flags_a_partitioned_network() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "two.txt", "0 1\n2 3\n");
    let out = netpart(&["check", &file]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("partitions: 2"));
}

#[test]
fn check_rejects_a_self_loop_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "loop.txt", "7 7\n");
    let out = netpart(&["check", &file]);
    assert_eq!(out.status.code(), Some(2));
    let text = stderr(&out);
    assert!(text.contains("line 1"), "{text}");
    assert!(text.contains("itself"), "{text}");
}

#[test]
fn check_verify_cross_checks_the_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "net.txt", "5 9\n9 42\n100 101\n");
    let out = netpart(&["check", &file, "--verify"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verify: ok"));
}

#[test]
fn check_exit_code_2_for_missing_file() {
    let out = netpart(&["check", "/nonexistent/net.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn partitions_manifest_keeps_original_indices() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "sparse.txt", "5 9\n9 42\n100 101\n");
    let out = netpart(&["partitions", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "partition 1: nodes=3 segments=2 class=open\n\
         nodes: 5 9 42\n\
         segments(lines): 1 2\n\
         \n\
         partition 2: nodes=2 segments=1 class=open\n\
         nodes: 100 101\n\
         segments(lines): 3\n"
    );
}

#[test]
fn partitions_manifest_identical_across_algorithms() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "mixed.txt",
        "# two components, one with a cycle\n10 11\n11 12\n12 10\n20 21\n",
    );
    let by_segment = netpart(&["partitions", &file, "--algorithm", "segment"]);
    let by_node = netpart(&["partitions", &file, "--algorithm", "node"]);
    assert_eq!(stdout(&by_segment), stdout(&by_node));
    assert!(stdout(&by_segment).contains("class=closed"));
}

#[test]
fn partitions_of_generated_network_cover_all_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("gen.txt");
    let out = netpart(&[
        "generate",
        "--nodes",
        "120",
        "--cavg",
        "4",
        "--partitions",
        "4",
        "--seed",
        "9",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let manifest_path = dir.path().join("manifest.txt");
    let out = netpart(&[
        "partitions",
        file.to_str().unwrap(),
        "--out",
        manifest_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let manifest = fs::read_to_string(&manifest_path).unwrap();
    let blocks: Vec<&str> = manifest.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 4);
    let node_total: usize = blocks
        .iter()
        .map(|b| {
            let header = b.lines().next().unwrap();
            let nodes_field = header.split("nodes=").nth(1).unwrap();
            nodes_field.split(' ').next().unwrap().parse::<usize>().unwrap()
        })
        .sum();
    assert_eq!(node_total, 120);
}

#[test]
fn stats_reports_classes_and_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "pendant.txt", "0 1\n1 2\n0 2\n2 3\n");
    let out = netpart(&["stats", &file]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("N: 4"), "{text}");
    assert!(text.contains("M: 4"), "{text}");
    assert!(text.contains("c_avg: 2.000000 (= 2/1)"), "{text}");
    assert!(
        text.contains("nodes by class: boundary=1 bridge=2 bifurcation=1"),
        "{text}"
    );
    assert!(
        text.contains("connectivity histogram: c=1:1 c=2:2 c=3:1"),
        "{text}"
    );
    assert!(text.contains("partitions: 1"), "{text}");
    assert!(text.contains("class=semi-closed"), "{text}");
}

#[test]
fn generate_is_deterministic_and_sized_by_the_formula() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.txt");
    let second = dir.path().join("b.txt");
    for path in [&first, &second] {
        let out = netpart(&[
            "generate",
            "--nodes",
            "100",
            "--cavg",
            "5",
            "--partitions",
            "1",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    }
    let bytes = fs::read(&first).unwrap();
    assert_eq!(bytes, fs::read(&second).unwrap());
    // M = round(100 * 5 / 2) segments, one per line
    assert_eq!(bytes.iter().filter(|&&b| b == b'\n').count(), 250);
}

#[test]
fn generate_rejects_infeasible_configs_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.txt");
    let out = netpart(&[
        "generate",
        "--nodes",
        "4",
        "--cavg",
        "6",
        "--partitions",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("infeasible"));
}

#[test]
fn scattered_generation_compacts_back_to_dense() {
    let dir = tempfile::tempdir().unwrap();
    let scattered = dir.path().join("scattered.txt");
    let out = netpart(&[
        "generate",
        "--nodes",
        "50",
        "--cavg",
        "3",
        "--seed",
        "4",
        "--scatter",
        "--out",
        scattered.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let dense = dir.path().join("dense.txt");
    let map = dir.path().join("map.txt");
    let out = netpart(&[
        "compact",
        scattered.to_str().unwrap(),
        "--out",
        dense.to_str().unwrap(),
        "--map-out",
        map.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let map_text = fs::read_to_string(&map).unwrap();
    let mut mapped = 0usize;
    for (i, line) in map_text.lines().enumerate() {
        let fields: Vec<&str> = line.split(' ').collect();
        assert_eq!(fields.len(), 2);
        assert_eq!(fields[0].parse::<usize>().unwrap(), i);
        mapped += 1;
    }
    assert_eq!(mapped, 50);

    // compacted file checks clean and is dense: max index == N-1
    let dense_text = fs::read_to_string(&dense).unwrap();
    let max_id = dense_text
        .split_whitespace()
        .map(|t| t.parse::<usize>().unwrap())
        .max()
        .unwrap();
    assert_eq!(max_id, 49);
}

#[test]
fn bench_writes_the_expected_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = netpart(&[
        "bench",
        "--sweep",
        "partitions",
        "--values",
        "1,2,4,8",
        "--nodes",
        "2000",
        "--cavg",
        "4",
        "--repeats",
        "3",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("fit node_mapping"), "{text}");
    assert!(text.contains("fit segment_mapping"), "{text}");
    assert!(text.contains("trend:"), "{text}");

    let csv = fs::read_to_string(&csv_path).unwrap();
    let data_rows: Vec<&str> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .collect();
    assert_eq!(data_rows.len(), 8);
    assert!(csv.starts_with("sweep_variable,sweep_value,algorithm,N,M,P,"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("# fit:")).count(), 2);
    for row in data_rows {
        assert!(row.starts_with("partition_count,"), "{row}");
    }
}

#[test]
fn bench_rejects_unordered_values_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = netpart(&[
        "bench",
        "--sweep",
        "nodes",
        "--values",
        "100,100",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}
