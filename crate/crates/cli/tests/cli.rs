use std::path::{Path, PathBuf};
use std::process::Command;

use edgerees::regularity::{RegStatus, Route};
use edgerees::{ExponentVector, Graph};
use edgerees_cli::input::parse_graph;
use edgerees_cli::report::{BatchDocument, ReportDocument};
use edgerees_cli::run;
use proptest::prelude::*;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn call(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["edgerees"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The JSON document at the end of a text-plus-document output.
fn document_part(stdout: &str) -> &str {
    &stdout[stdout.find("\n{\n").map_or(0, |k| k + 1)..]
}

fn report(stdout: &str) -> ReportDocument {
    serde_json::from_str(document_part(stdout)).unwrap()
}

const C5: &str = "n 5\n1 2\n2 3\n3 4\n4 5\n1 5\n";
const SIX: &str = "1 2\n2 3\n3 4\n1 4\n2 4\n2 5\n2 6\n";
const TWO_TRIANGLES: &str = "1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n";

#[test]
fn analyze_five_cycle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c5.txt", C5);
    let r = call(&["analyze", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = report(&r.stdout);
    let route = doc.route.unwrap();
    assert_eq!(route.kind, Route::NormalFormula);
    assert_eq!(route.regularity.value, 3);
    assert_eq!(route.q0, Some(3));
    assert_eq!(doc.invariants.unwrap().matching_number, 2);
    assert!(doc.normality.unwrap().rees_normal);
    assert_eq!(doc.timing_ms, None);
}

#[test]
fn top_level_keys_are_canonical() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c5.txt", C5);
    let r = call(&["analyze", s(&f), "--timing"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let mut expected =
        vec!["tool_version", "input", "invariants", "normality", "route", "polytope", "verdicts", "timing_ms"];
    expected.sort();
    assert_eq!(keys, expected);
    assert!(v["timing_ms"].is_u64());
    let order: Vec<usize> = [
        "\"tool_version\"",
        "\"input\"",
        "\"invariants\"",
        "\"normality\"",
        "\"route\"",
        "\"polytope\"",
        "\"verdicts\"",
        "\"timing_ms\"",
    ]
    .iter()
    .map(|k| r.stdout.find(k).unwrap())
    .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn two_triangles_truncated_run() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tt.txt", TWO_TRIANGLES);
    let r = call(&["analyze", s(&f), "--jmax", "5"]);
    assert_eq!(r.code, 0);
    let doc = report(&r.stdout);
    assert!(!doc.normality.unwrap().rees_normal);
    let route = doc.route.unwrap();
    assert_eq!(route.kind, Route::BettiTable);
    assert_eq!(route.regularity.status, RegStatus::LowerBound);
    assert!(doc.betti.is_some());
    let strict = call(&["analyze", s(&f), "--jmax", "5", "--require-exact"]);
    assert_eq!(strict.code, 4);
    assert!(!strict.stdout.is_empty());
}

#[test]
#[ignore = "long-running; run with --ignored"]
fn two_triangles_at_jmax_nine() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tt.txt", TWO_TRIANGLES);
    let r = call(&["analyze", s(&f), "--jmax", "9"]);
    assert_eq!(r.code, 0);
    let doc = report(&r.stdout);
    assert_eq!(doc.route.unwrap().regularity.value, 4);
    assert!(!doc.normality.unwrap().rees_normal);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "loop.txt", "1 2\n1 1\n");
    let r = call(&["analyze", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("loop rejected"), "{}", r.stderr);
    assert!(r.stderr.contains("line 2, column 1"), "{}", r.stderr);

    let missing = call(&["analyze", s(&dir.path().join("absent.txt"))]);
    assert_eq!(missing.code, 2);

    let empty = write(&dir, "empty.txt", "n 3\n");
    assert_eq!(call(&["analyze", s(&empty)]).code, 3);

    let six = write(&dir, "six.txt", SIX);
    let capped = call(&["polytope", s(&six), "--q", "4", "--max-points", "5"]);
    assert_eq!(capped.code, 3);
    assert!(capped.stderr.contains("more than 5"), "{}", capped.stderr);
    let c5 = write(&dir, "c5.txt", C5);
    assert_eq!(call(&["betti", s(&c5), "--max-degrees", "10"]).code, 3);

    assert_eq!(call(&["analyze", s(&c5), "--field", "fp:4"]).code, 2);
    assert_eq!(call(&["frobnicate"]).code, 2);
    assert_eq!(call(&["betti", "--presentation", "2,0;1"]).code, 2);
}

#[test]
fn veronese_diagram() {
    let r = call(&["betti", "--presentation", "2,0;1,1;0,2"]);
    assert_eq!(r.code, 0);
    let expected = "        0    1\n---------------\n 0:     1    -\n 1:     -    1\n---------------\nTot:    1    1\n";
    assert!(r.stdout.starts_with(expected), "{}", r.stdout);
    let doc = report(&r.stdout);
    let b = doc.betti.unwrap();
    assert_eq!(b.diagram, expected);
    assert_eq!(b.totals, vec![1, 1]);
    assert_eq!(b.regularity.value, 1);
}

#[test]
fn betti_of_small_rees_algebras() {
    let dir = TempDir::new().unwrap();
    let edge = write(&dir, "edge.txt", "1 2\n");
    let r = call(&["betti", s(&edge), "--ring", "rees"]);
    let text = &r.stdout[..r.stdout.find("\n{\n").unwrap()];
    let rows: Vec<&str> =
        text.lines().filter(|l| l.contains(":") && l.trim_start().starts_with(|c: char| c.is_ascii_digit())).collect();
    assert_eq!(rows, vec![" 0:     1"]);

    let two = write(&dir, "2k2.txt", "1 2\n3 4\n");
    let r = call(&["betti", s(&two), "--ring", "rees", "--jmax", "4"]);
    let doc = report(&r.stdout);
    let b = doc.betti.unwrap();
    assert_eq!(b.regularity.value, 2);
    assert_eq!(b.regularity.status, RegStatus::Exact);
    assert!(r.stdout.contains(" 2:     -    1\n"));

    let r = call(&["betti", s(&two), "--ring", "edge", "--json"]);
    let doc: ReportDocument = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc.betti.unwrap().ring, "edge");
}

#[test]
fn polytope_listings() {
    let dir = TempDir::new().unwrap();
    let six = write(&dir, "six.txt", SIX);
    let r = call(&["polytope", s(&six), "--q", "4", "--positive-only"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let p = report(&r.stdout).polytope.unwrap();
    assert_eq!(p.q0, 5);
    for z in [[1, 1, 1, 1, 1, 1, 2], [1, 1, 1, 2, 1, 1, 1]] {
        assert!(p.points.contains(&ExponentVector::new(z.to_vec())));
    }
    assert!(r.stdout.contains("[fundamental set {1,3,5,6}, neighbours {2,4,7}]"));

    let c5 = write(&dir, "c5.txt", C5);
    let open3 = report(&call(&["polytope", s(&c5), "--q", "3", "--interior"]).stdout).polytope.unwrap();
    assert!(!open3.points.is_empty());
    let open2 = report(&call(&["polytope", s(&c5), "--q", "2", "--interior"]).stdout).polytope.unwrap();
    assert!(open2.points.is_empty());
}

fn batch(args: &[&str]) -> BatchDocument {
    let mut full = vec!["batch", "--json"];
    full.extend_from_slice(args);
    let r = call(&full);
    assert_eq!(r.code, 0, "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn batch_families() {
    let d = batch(&["--family", "disjoint-edges", "--from", "1", "--to", "4"]);
    let regs: Vec<usize> = d.rows.iter().map(|r| r.regularity.unwrap().value).collect();
    assert_eq!(regs, vec![0, 2, 3, 4]);

    let d = batch(&["--family", "cycles", "--from", "3", "--to", "7"]);
    assert!(d.rows.iter().all(|r| r.rees_normal));
    assert_eq!(d.rows.iter().map(|r| r.label.as_str()).collect::<Vec<_>>(), ["C3", "C4", "C5", "C6", "C7"]);

    let d = batch(&["--family", "random", "--seed", "1", "--n", "8", "--p", "0.3", "--count", "10", "--jmax", "3"]);
    assert_eq!(d.rows.len(), 10);
    for r in d.rows.iter().filter(|r| r.isolated_vertices == 0) {
        assert_eq!(r.invariants.edge_cover_number.unwrap() + r.invariants.matching_number, r.n);
    }

    let d = batch(&["--family", "disjoint-unions", "--from", "1", "--to", "2", "--jmax", "3"]);
    assert_eq!(d.rows[1].n, 6);
    assert!(!d.rows[1].rees_normal);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let six = write(&dir, "six.txt", SIX);
    for args in [
        vec!["analyze", s(&six), "--cross-check", "--jmax", "4"],
        vec!["polytope", s(&six), "--q", "3"],
        vec!["betti", s(&six), "--jmax", "4"],
        vec!["batch", "--family", "random", "--seed", "5", "--count", "6", "--jmax", "3"],
    ] {
        assert_eq!(call(&args).stdout, call(&args).stdout, "{args:?}");
    }
}

#[test]
fn reports_round_trip() {
    let dir = TempDir::new().unwrap();
    let six = write(&dir, "six.txt", SIX);
    let tt = write(&dir, "tt.txt", TWO_TRIANGLES);
    for args in [
        vec!["analyze", s(&six), "--cross-check", "--jmax", "4", "--timing"],
        vec!["analyze", s(&tt), "--jmax", "4"],
        vec!["polytope", s(&six), "--q", "4", "--json"],
        vec!["betti", "--presentation", "2,0;1,1;0,2", "--json"],
    ] {
        let text = document_part(&call(&args).stdout).to_string();
        let doc: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(edgerees_cli::report::to_json(&doc), text);
        let again: ReportDocument = serde_json::from_str(&edgerees_cli::report::to_json(&doc)).unwrap();
        assert_eq!(again, doc);
    }
}

#[test]
fn out_flag_and_json_input() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "c5.txt", C5);
    let json = write(&dir, "c5.json", "{\"n\": 5, \"edges\": [[1,2],[2,3],[3,4],[4,5],[1,5]]}");
    let target = dir.path().join("report.json");
    let r = call(&["analyze", s(&json), "--out", s(&target)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let from_file: ReportDocument = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    let mut from_text = report(&call(&["analyze", s(&text)]).stdout);
    from_text.input.source = from_file.input.source.clone();
    assert_eq!(from_file, from_text);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "1 1\n");
    let out = Command::new(env!("CARGO_BIN_EXE_edgerees")).args(["analyze", s(&bad)]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("loop rejected"));
    let c5 = write(&dir, "c5.txt", C5);
    let out = Command::new(env!("CARGO_BIN_EXE_edgerees")).args(["analyze", s(&c5)]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

fn edge_list(g: &Graph, header: bool, crlf: bool) -> String {
    let nl = if crlf { "\r\n" } else { "\n" };
    let mut s = String::new();
    if header {
        s.push_str(&format!("n {}{nl}", g.n()));
    }
    s.push_str(&format!("# {} edges{nl}", g.num_edges()));
    for (i, j) in g.edges() {
        s.push_str(&format!("{i} {j}{nl}"));
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_lists_round_trip(n in 2usize..12, coins in proptest::collection::vec(any::<bool>(), 66), crlf in any::<bool>()) {
        let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        let edges: Vec<_> = pairs.zip(&coins).filter(|(_, &c)| c).map(|(e, _)| e).collect();
        prop_assume!(!edges.is_empty());
        let g = Graph::new(n, edges).unwrap();
        prop_assert_eq!(parse_graph(&edge_list(&g, true, crlf)).unwrap(), g.clone());
        let inferred = parse_graph(&edge_list(&g, false, crlf)).unwrap();
        prop_assert_eq!(inferred.edges(), g.edges());
    }
}
