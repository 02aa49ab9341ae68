use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bpz2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpz2"))
        .args(args)
        .output()
        .expect("spawn bpz2")
}

fn bpz2_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bpz2"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn bpz2");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn plj_k1() {
    let o = bpz2(&["plj", "--k", "1", "--ell", "3", "--j", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x1^7\n");
}

#[test]
fn plj_k3_ell4_has_36_terms_of_the_six_orbits() {
    let o = bpz2(&["plj", "--k", "3", "--ell", "4", "--j", "0", "--method", "division"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let terms: Vec<&str> = text.trim().split(" + ").collect();
    assert_eq!(terms.len(), 36);
    assert!(terms.starts_with(&["x1^12*x2^2*x3", "x1^12*x2*x3^2", "x1^10*x2^4*x3"]));
}

#[test]
fn plj_methods_agree() {
    let base = stdout(&bpz2(&["plj", "--k", "3", "--ell", "3", "--j", "1"]));
    for m in ["division", "system", "thm2", "thm3"] {
        let o = bpz2(&["plj", "--k", "3", "--ell", "3", "--j", "1", "--method", m]);
        assert_eq!(o.status.code(), Some(0), "{m}");
        assert_eq!(stdout(&o), base, "{m}");
    }
    let a = stdout(&bpz2(&[
        "plj", "--k", "3", "--ell", "5", "--j", "0", "--method", "thm4",
    ]));
    let b = stdout(&bpz2(&[
        "plj", "--k", "3", "--ell", "5", "--j", "0", "--method", "system",
    ]));
    assert_eq!(a, b);
}

#[test]
fn plj_json_round_trips() {
    let o = bpz2(&["plj", "--k", "2", "--ell", "3", "--j", "1", "--format", "json"]);
    let json = stdout(&o);
    assert_eq!(
        json.trim(),
        r#"{"k":2,"terms":[[6,0],[5,1],[4,2],[3,3],[2,4],[1,5],[0,6]]}"#
    );
    let p = bpz2_core::F2Poly::from_json(json.trim()).unwrap();
    let text = stdout(&bpz2(&["plj", "--k", "2", "--ell", "3", "--j", "1"]));
    assert_eq!(format!("{p}\n"), text);
}

#[test]
fn plj_hypothesis_violations_exit_2() {
    let cases: [(&[&str], &str); 4] = [
        (
            &["plj", "--k", "4", "--ell", "4", "--j", "0", "--method", "thm2"],
            "k = 3",
        ),
        (
            &["plj", "--k", "3", "--ell", "4", "--j", "0", "--method", "thm3"],
            "ell = k",
        ),
        (
            &["plj", "--k", "3", "--ell", "4", "--j", "1", "--method", "thm4"],
            "j = 0",
        ),
        (&["plj", "--k", "3", "--ell", "4", "--j", "3"], "j"),
    ];
    for (args, needle) in cases {
        let o = bpz2(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn act_examples() {
    let o = bpz2_stdin(&["act", "--k", "3", "--j", "0"], "5,3,2\n1,1,1\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "v3 * z(1,1,1)\n0\n");
}

#[test]
fn act_k2_j1_matches_enumeration() {
    // p_{2,1} = x1^2 + x1 x2 + x2^2 lowers (3,3) to (1,3), (2,2), (3,1);
    // p_{3,1} has degree 6, above the excess 4 of (3,3).
    let o = bpz2_stdin(&["act", "--k", "2", "--j", "1"], "3,3\n");
    assert_eq!(stdout(&o), "v2 * z(1,3) + v2 * z(2,2) + v2 * z(3,1)\n");
    let o = bpz2_stdin(&["act", "--k", "2", "--j", "1", "--format", "json"], "3,3\n");
    let g = bpz2_core::zmodule::GradedElement::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(g.len(), 3);
}

#[test]
fn act_reads_file() {
    let dir = std::env::temp_dir().join(format!("bpz2-act-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.txt");
    std::fs::write(&path, "5,3,2\n").unwrap();
    let o = bpz2(&["act", "--k", "3", "--j", "0", "--input", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "v3 * z(1,1,1)\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn act_parse_error_names_line() {
    let o = bpz2_stdin(&["act", "--k", "2", "--j", "1"], "3,3\nx,1\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = bpz2_stdin(&["act", "--k", "2", "--j", "1"], "3,3,3\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
    let o = bpz2_stdin(&["act", "--k", "2", "--j", "1"], "0,3\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_thm3() {
    let o = bpz2(&["verify", "--suite", "thm3", "--k-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 15);
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_biglem_cell() {
    let o = bpz2(&["verify", "--suite", "biglem", "--k", "3", "--ell", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("6 odd tuples"));
}

#[test]
fn verify_budget_exhaustion_exits_2() {
    let o = bpz2(&[
        "verify", "--suite", "biglem", "--k", "3", "--ell", "5", "--budget", "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn verify_out_of_range_bounds_exit_2() {
    let o = bpz2(&["verify", "--suite", "thm2", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k = 3"));
}

#[test]
fn verify_all_is_deterministic() {
    let a = bpz2(&["verify", "--suite", "all"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = bpz2(&["verify", "--suite", "all"]);
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let order: Vec<&str> = out.lines().filter_map(|l| l.strip_prefix("suite ")).collect();
    let names: Vec<&str> = order.iter().map(|l| l.split(':').next().unwrap()).collect();
    assert_eq!(
        names,
        ["pdef", "system", "thm2", "thm3", "thm4", "biglem", "dickson", "steenrod"]
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bpz2(&["frob"]).status.code(), Some(2));
    assert_eq!(bpz2(&["plj", "--k", "3"]).status.code(), Some(2));
    assert_eq!(
        bpz2(&["plj", "--k", "3", "--ell", "4", "--j", "0", "--method", "magic"])
            .status
            .code(),
        Some(2)
    );
}
