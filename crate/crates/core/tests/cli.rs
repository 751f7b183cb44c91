//! End-to-end CLI checks: exit codes, file outputs, byte-reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tricolor")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> TempDir {
        let dir = std::env::temp_dir().join(format!("tricolor-cli-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn path(&self) -> &Path {
        &self.0
    }

    fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.0.join(name)).unwrap()
    }

    fn write(&self, name: &str, text: &str) {
        std::fs::write(self.0.join(name), text).unwrap();
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\n";
const DIAMOND: &str = "p edge 4 5\ne 1 2\ne 1 3\ne 2 3\ne 2 4\ne 3 4\n";

#[test]
fn gen_writes_gn_file_and_layout() {
    let t = TempDir::new("gen");
    let out = run(t.path(), &["gen", "gn", "--k", "3", "-o", "gn.col", "--layout"]);
    assert_eq!(code(&out), 0);
    let text = t.read("gn.col");
    assert!(text.starts_with("p edge 37 "));
    let layout = t.read("gn.col.layout");
    assert!(layout.contains("role v0 1"));
}

#[test]
fn gen_rejects_small_k_with_precondition_exit() {
    let t = TempDir::new("genk2");
    let out = run(t.path(), &["gen", "gn", "--k", "2", "-o", "x.col"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn gen_hphi_from_cnf() {
    let t = TempDir::new("genhphi");
    t.write("f.cnf", "p cnf 3 1\n1 2 3 0\n");
    let out = run(t.path(), &["gen", "hphi", "--cnf", "f.cnf", "-o", "h.col", "--layout"]);
    assert_eq!(code(&out), 0);
    assert!(t.read("h.col").starts_with("p edge 137 594"));
    assert!(t.read("h.col.layout").contains("role g1_1 "));
}

#[test]
fn solve_exit_codes() {
    let t = TempDir::new("solve");
    t.write("k4.col", K4);
    t.write("c5.col", C5);
    assert_eq!(code(&run(t.path(), &["solve", "k4.col", "-o", "k4.sol"])), 20);
    assert_eq!(code(&run(t.path(), &["solve", "c5.col", "-o", "c5.sol"])), 0);
    // Emitted coloring verifies against the graph.
    assert_eq!(code(&run(t.path(), &["verify", "c5.col", "c5.sol"])), 0);
}

#[test]
fn solve_strategies_and_parallel_agree() {
    let t = TempDir::new("strategies");
    let out = run(t.path(), &["gen", "gn", "--k", "3", "-o", "gn.col"]);
    assert_eq!(code(&out), 0);
    for strategy in ["auto", "diam2", "artic", "seed", "oracle"] {
        let sol = format!("gn.{strategy}.sol");
        let out = run(t.path(), &["solve", "gn.col", "--strategy", strategy, "-o", &sol]);
        assert_eq!(code(&out), 0, "strategy {strategy}");
        assert_eq!(code(&run(t.path(), &["verify", "gn.col", &sol])), 0);
    }
    // A diameter-2 instance is out of range for the diam3 entry point's
    // precondition only when diameter exceeds 3; it must still solve.
    let out = run(t.path(), &["solve", "gn.col", "--strategy", "diam3", "-o", "gn.d3.sol"]);
    assert_eq!(code(&out), 0);
    let out = run(t.path(), &["solve", "gn.col", "--parallel", "4", "-o", "gn.par.sol"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(t.path(), &["verify", "gn.col", "gn.par.sol"])), 0);
}

#[test]
fn solve_missing_file_is_io_error() {
    let t = TempDir::new("noent");
    assert_eq!(code(&run(t.path(), &["solve", "missing.col"])), 2);
}

#[test]
fn usage_error_exit() {
    let t = TempDir::new("usage");
    assert_eq!(code(&run(t.path(), &["solve"])), 1);
    assert_eq!(code(&run(t.path(), &["frobnicate"])), 1);
}

#[test]
fn verify_detects_monochromatic_edge() {
    let t = TempDir::new("verify");
    t.write("edge.col", "p edge 2 1\ne 1 2\n");
    t.write("bad.sol", "s COLORABLE 3\nv 1 1\nv 2 1\n");
    let out = run(t.path(), &["verify", "edge.col", "bad.sol"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("IMPROPER"));
}

#[test]
fn verify_rejects_vertex_count_mismatch() {
    let t = TempDir::new("mismatch");
    t.write("c5.col", C5);
    t.write("short.sol", "s COLORABLE 3\nv 1 1\nv 2 2\n");
    assert_eq!(code(&run(t.path(), &["verify", "c5.col", "short.sol"])), 3);
}

#[test]
fn reduce_diamond_to_k3() {
    let t = TempDir::new("reduce");
    t.write("d.col", DIAMOND);
    let out = run(
        t.path(),
        &["reduce", "d.col", "-o", "red.col", "--trace", "d.trace"],
    );
    assert_eq!(code(&out), 0);
    assert!(t.read("red.col").starts_with("p edge 3 3"));
    assert_eq!(t.read("d.trace"), "M 1 4\n");
}

#[test]
fn reduce_k4_exits_20() {
    let t = TempDir::new("reducek4");
    t.write("k4.col", K4);
    assert_eq!(
        code(&run(t.path(), &["reduce", "k4.col", "--trace", "t.txt"])),
        20
    );
    assert_eq!(t.read("t.txt"), "");
}

#[test]
fn reduce_petersen_unchanged() {
    let t = TempDir::new("petersen");
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i + 1, (i + 1) % 5 + 1));
        edges.push((6 + i, 6 + (i + 2) % 5));
        edges.push((i + 1, 6 + i));
    }
    let mut text = format!("p edge 10 {}\n", edges.len());
    for (u, v) in edges {
        text.push_str(&format!("e {} {}\n", u.min(v), u.max(v)));
    }
    t.write("p.col", &text);
    let out = run(t.path(), &["reduce", "p.col", "-o", "pr.col", "--trace", "p.trace"]);
    assert_eq!(code(&out), 0);
    assert!(t.read("pr.col").starts_with("p edge 10 15"));
    assert_eq!(t.read("p.trace"), "");
}

#[test]
fn stats_reports_structure() {
    let t = TempDir::new("stats");
    t.write("c5.col", C5);
    let out = run(t.path(), &["stats", "c5.col"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("diameter 2"));
    assert!(text.contains("triangle_free true"));
    assert!(text.contains("irreducible true"));
}

#[test]
fn bench_gn_sweep_produces_schema_csv() {
    let t = TempDir::new("bench");
    let out = run(
        t.path(),
        &["bench", "--family", "gn", "--range", "3..4", "-o", "b.csv", "--deterministic"],
    );
    assert_eq!(code(&out), 0);
    let csv = t.read("b.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# schema=1"));
    assert!(lines.next().unwrap().starts_with("family,params,n,m,delta"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!(row.contains("COLORABLE"));
    }
}

#[test]
fn bench_hphi_verdicts_match_sat_oracle() {
    // Small random formulas with fewer than 8 clauses are always
    // satisfiable; the bench rows must all come back COLORABLE and agree
    // with the brute-force CNF oracle.
    let t = TempDir::new("benchhphi");
    let out = run(
        t.path(),
        &[
            "bench", "--family", "hphi", "--n", "4", "--m", "1", "--count", "10", "--seed", "7",
            "-o", "h.csv", "--deterministic",
        ],
    );
    assert_eq!(code(&out), 0);
    let csv = t.read("h.csv");
    let rows: Vec<&str> = csv.lines().skip(2).collect();
    assert_eq!(rows.len(), 10);
    for row in rows {
        assert!(row.ends_with("COLORABLE"), "{row}");
    }
}

#[test]
fn bench_timeout_marks_rows() {
    let t = TempDir::new("benchtimeout");
    let out = run(
        t.path(),
        &[
            "bench", "--family", "gnm", "--n", "3", "--range", "2..2", "--timeout-ms", "0", "-o",
            "t.csv",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(t.read("t.csv").contains("TIMEOUT"));
}

#[test]
fn deterministic_outputs_are_byte_identical() {
    let t = TempDir::new("determinism");
    t.write("f.cnf", "p cnf 4 2\n1 2 3 0\n-1 -3 4 0\n");
    assert_eq!(
        code(&run(t.path(), &["gen", "hphi", "--cnf", "f.cnf", "-o", "h.col"])),
        0
    );
    for pass in ["a", "b"] {
        let sol = format!("h.{pass}.sol");
        let csv = format!("h.{pass}.csv");
        let trace = format!("h.{pass}.trace");
        assert_eq!(
            code(&run(t.path(), &["solve", "h.col", "--deterministic", "-o", &sol])),
            0
        );
        assert_eq!(
            code(&run(
                t.path(),
                &["reduce", "h.col", "-o", &format!("h.{pass}.red"), "--trace", &trace]
            )),
            0
        );
        assert_eq!(
            code(&run(
                t.path(),
                &[
                    "bench", "--family", "gnm", "--n", "3", "--range", "1..1", "--deterministic",
                    "-o", &csv
                ]
            )),
            0
        );
    }
    assert_eq!(t.read("h.a.sol"), t.read("h.b.sol"));
    assert_eq!(t.read("h.a.trace"), t.read("h.b.trace"));
    assert_eq!(t.read("h.a.red"), t.read("h.b.red"));
    assert_eq!(t.read("h.a.csv"), t.read("h.b.csv"));
}

#[test]
fn gen_random_is_reproducible() {
    let t = TempDir::new("genrandom");
    for name in ["r1.col", "r2.col"] {
        assert_eq!(
            code(&run(
                t.path(),
                &["gen", "random", "--profile", "artic", "--seed", "7", "-o", name]
            )),
            0
        );
    }
    assert_eq!(t.read("r1.col"), t.read("r2.col"));
}
