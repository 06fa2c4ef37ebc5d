use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vecchoose(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vecchoose"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn construct_then_check_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let o = vecchoose(&["--field", "3", "--out", &out, "construct", "cycle", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = vecchoose(&[
        "check",
        &path(dir.path(), "graph.txt"),
        &path(dir.path(), "assignment.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("verdict no_choice"));
}

#[test]
fn check_over_rationals_uses_sturm() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    assert!(vecchoose(&["--field", "Q", "--out", &out, "construct", "cycle", "4"])
        .status
        .success());
    let o = vecchoose(&[
        "check",
        &path(dir.path(), "graph.txt"),
        &path(dir.path(), "assignment.txt"),
    ]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(
        text.contains("verdict no_choice") && text.contains("order cycle/sturm"),
        "{text}"
    );
}

#[test]
fn reduce_writes_graph_map_labels_and_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = path(dir.path(), "phi.cnf");
    fs::write(&cnf, "c one clause\np cnf 3 1\n1 -2 3 0\n").unwrap();
    let out = path(dir.path(), "out");
    let o = vecchoose(&["--out", &out, "--with-assignment", "--format", "dot", "reduce", &cnf]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        String::from_utf8_lossy(&o.stdout),
        "vertices 43\nedges 51\nambient 10\n"
    );
    for f in ["graph.txt", "graph.dot", "f.txt", "labels.txt", "assignment.txt"] {
        assert!(Path::new(&out).join(f).exists(), "{f} missing");
    }
    let labels = fs::read_to_string(Path::new(&out).join("labels.txt")).unwrap();
    assert!(labels.contains(" C1\n") && labels.contains(" ~x2\n"));
}

#[test]
fn verify_reports_violation() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.txt");
    let a = path(dir.path(), "a.txt");
    let c = path(dir.path(), "c.txt");
    fs::write(&g, "graph 2 1\ne 0 1\n").unwrap();
    fs::write(&a, "field 2\nambient 2\nv 0 dim 1\n1 0\nv 1 dim 2\n1 0\n0 1\n").unwrap();
    fs::write(&c, "field 2\nambient 2\nv 0\n1 0\nv 1\n1 1\n").unwrap();
    let o = vecchoose(&["verify", &g, &a, &c]);
    assert_eq!(o.status.code(), Some(1));
    fs::write(&c, "field 2\nambient 2\nv 0\n1 0\nv 1\n0 1\n").unwrap();
    assert_eq!(vecchoose(&["verify", &g, &a, &c]).status.code(), Some(0));
}

#[test]
fn budget_and_usage_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    assert!(vecchoose(&["--field", "5", "--out", &out, "construct", "cycle", "8"])
        .status
        .success());
    let o = vecchoose(&[
        "--budget-nodes",
        "1",
        "check",
        &path(dir.path(), "graph.txt"),
        &path(dir.path(), "assignment.txt"),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stdout).contains("inconclusive"));
    assert_eq!(vecchoose(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        vecchoose(&["check", "/nonexistent/g", "/nonexistent/a"]).status.code(),
        Some(2)
    );
    assert_eq!(
        vecchoose(&["--field", "4", "construct", "cycle", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(vecchoose(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_input_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.txt");
    let a = path(dir.path(), "a.txt");
    fs::write(&g, "graph 2 1\ne 0 1\n").unwrap();
    fs::write(&a, "field 3\nambient 2\nv 0 dim 1\n1 0 0\n").unwrap();
    let o = vecchoose(&["check", &g, &a]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 4"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}
