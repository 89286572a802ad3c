//! End-to-end checks of the command-line contract: exit codes are
//! 0 success / 1 verification failure / 2 parse / 3 precondition, and
//! JSON output is byte-identical across runs.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatfiber"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_builtin() {
    let out = run(&["analyze", "p4g", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"point_group_order\":8"), "{text}");
    let out2 = run(&["analyze", "p4g", "--json"]);
    assert_eq!(stdout(&out2), text, "reports must be byte-identical");

    let out = run(&["analyze", "p1", "--json"]);
    assert!(stdout(&out).contains("\"first_betti\":2"));
}

#[test]
fn analyze_missing_file_exits_2() {
    let out = run(&["analyze", "/nonexistent/group.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fiber_reports() {
    let out = run(&["fiber", "it113", "--normal", "builtin", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"order\":2"));
    assert!(text.contains("\"orthogonal\":false"));

    // Table 1 row 1: the torus fibered over a circle
    let out = run(&["fiber", "p1", "--normal", "t1", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"fiber\":\"O\""));
    assert!(text.contains("\"orthogonal\":true"));
}

#[test]
fn fiber_not_normal_exits_3() {
    // <-I> is not normal in p2
    let out = run(&["fiber", "p2", "--normal", "g3"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("not normal"), "{err}");
}

#[test]
fn verify_tables_cmd() {
    let out = run(&["verify-tables", "--table", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("9 pass, 0 fail, 0 skipped"));

    let out = run(&["verify-tables", "--table", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("table 6 row 163(1): pass"));
    assert!(text.contains("18 skipped"), "{text}");

    let out = run(&["verify-tables", "--table", "99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conjclass_cmd() {
    let out = run(&["conjclass", "0,-1;1,0", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "{\"class\":\"A\",\"order\":4}");

    let out = run(&["conjclass", "1,0;0,1"]);
    assert!(stdout(&out).contains("class: \"I\""));

    let out = run(&["conjclass", "2,0;0,1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn group_file_round_trip_through_cli() {
    let dir = std::env::temp_dir().join("flatfiber-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p2group.txt");
    std::fs::write(
        &path,
        "# a hand-written p2 with a normal subgroup\n\
         dim = 2\n\
         gen:\n1 0\n0 1\nt: 1 0\n\
         gen:\n1 0\n0 1\nt: 0 1\n\
         gen:\n-1 0\n0 -1\nt: 0 0\n\
         normal:\nword: g1\n",
    )
    .unwrap();
    let out = run(&["fiber", path.to_str().unwrap(), "--normal", "builtin", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"kind\":\"C2\""));
    assert!(text.contains("\"orthogonal\":true"));
}

#[test]
fn point_group_bound_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_flatfiber"))
        .args(["analyze", "p2"])
        .env("FLATFIBER_POINTGROUP_BOUND", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("point group not finite"), "{err}");
}
