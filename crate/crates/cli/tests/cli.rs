//! End-to-end tests of the binary: documented pipelines, exit codes,
//! determinism, and the embedded verifier hashes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &[u8]) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &[u8], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tracklay"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for &(k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(stdin)
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary exits")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn ktree_pipeline_reports_bounded_crossing_free_layout() {
    let env = stdout_of(&run(
        &["generate", "--family", "ktree", "--k", "2", "--n", "100", "--seed", "1"],
        b"",
    ));
    let env = stdout_of(&run(&["layout", "track"], env.as_bytes()));
    let env = stdout_of(&run(&["draw", "balanced"], env.as_bytes()));
    let csv = stdout_of(&run(&["stats"], env.as_bytes()));
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().expect("header row").split(',').collect();
    let row: Vec<&str> = lines.next().expect("data row").split(',').collect();
    let col = |name: &str| {
        let i = header.iter().position(|h| *h == name).expect("known column");
        row[i]
    };
    assert!(col("tracks").parse::<usize>().expect("track count") <= 54);
    assert_eq!(col("track_crossings"), "0");
    assert_eq!(col("drawing_defects"), "0");
    assert_eq!(col("capacity_ok"), "true");
    assert_eq!(col("all_pass"), "true");
}

#[test]
fn extremal_tree_has_track_number_three() {
    let env = stdout_of(&run(&["generate", "--family", "gk", "--k", "1"], b""));
    let value = stdout_of(&run(&["oracle", "track-number"], env.as_bytes()));
    assert_eq!(value, "3\n");
}

#[test]
fn moment_obj_lists_curve_points_translated_to_origin() {
    let obj = stdout_of(&run(
        &["draw", "moment", "--family", "complete", "--n", "3", "--format", "obj"],
        b"",
    ));
    let lines: Vec<&str> = obj.lines().collect();
    assert_eq!(
        lines,
        ["v 0 0 0", "v 1 3 7", "v 2 8 26", "l 1 2", "l 1 3", "l 2 3"]
    );
}

#[test]
fn identical_invocations_yield_identical_bytes() {
    let once = || {
        let env = stdout_of(&run(
            &["generate", "--family", "ktree", "--k", "2", "--n", "100", "--seed", "9"],
            b"",
        ));
        let env = stdout_of(&run(&["layout", "track"], env.as_bytes()));
        let env = stdout_of(&run(&["draw", "aspect", "--r", "2"], env.as_bytes()));
        let csv = stdout_of(&run(&["stats"], env.as_bytes()));
        (env, csv)
    };
    assert_eq!(once(), once());
}

#[test]
fn emitted_layouts_embed_verifier_report_hashes() {
    let env = stdout_of(&run(
        &["layout", "queue", "--family", "tree", "--n", "15", "--seed", "4"],
        b"",
    ));
    let env: serde_json::Value = serde_json::from_str(&env).expect("envelope parses");
    let hash = env["verifier_hashes"]["queue_layout"]
        .as_str()
        .expect("hash present");
    assert_eq!(hash.len(), 64);
    assert!(hash.chars().all(|c| c.is_ascii_hexdigit()));

    let report = stdout_of(&run(&["verify", "queue"], env.to_string().as_bytes()));
    assert!(report.contains("stored report hash: match"), "{report}");
    assert!(report.trim_end().ends_with("verdict: pass"), "{report}");
}

#[test]
fn exit_codes_separate_usage_verification_and_limits() {
    // Randomized family without a seed: usage error.
    let out = run(&["generate", "--family", "tree", "--n", "10"], b"");
    assert_eq!(out.status.code(), Some(2));

    // Unknown subcommand: usage error from the parser.
    let out = run(&["no-such-command"], b"");
    assert_eq!(out.status.code(), Some(2));

    // Stack layouts exist for forests only.
    let env = stdout_of(&run(&["generate", "--family", "cycle", "--n", "5"], b""));
    let out = run(&["layout", "stack"], env.as_bytes());
    assert_eq!(out.status.code(), Some(2));

    // A layout with an X-crossing fails verification.
    let bad = br#"{"graph":{"edges":[[0,3],[1,2]],"n":4},"track_layout":{"mode":"proper","tracks":[[0,1],[2,3]]}}"#;
    let out = run(&["verify", "track"], bad);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("x-crossings: 1 (FAIL)"));

    // Exhaustive search refuses oversized instances.
    let env = stdout_of(&run(&["generate", "--family", "complete", "--n", "12"], b""));
    let out = run(&["oracle", "track-number"], env.as_bytes());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_limit_env_var_gates_and_admits() {
    let k4 = stdout_of(&run(&["generate", "--family", "complete", "--n", "4"], b""));
    let out = run_env(
        &["oracle", "queue-number"],
        k4.as_bytes(),
        &[("TRACKLAY_ORACLE_LIMIT", "3")],
    );
    assert_eq!(out.status.code(), Some(3));

    let out = run_env(
        &["oracle", "queue-number"],
        k4.as_bytes(),
        &[("TRACKLAY_ORACLE_LIMIT", "4")],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2\n");
}

#[test]
fn stale_stored_hashes_are_caught() {
    // A valid layout whose stored hash no longer matches its report: the
    // envelope was edited after emission, so verification must fail even
    // though the layout itself is crossing-free.
    let stale = br#"{"graph":{"edges":[[0,1]],"n":2},"track_layout":{"mode":"proper","tracks":[[0],[1]]},"verifier_hashes":{"track_layout":"0000000000000000000000000000000000000000000000000000000000000000"}}"#;
    let out = run(&["verify", "track"], stale);
    assert_eq!(out.status.code(), Some(1));
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(report.contains("x-crossings: 0 (ok)"), "{report}");
    assert!(report.contains("stored report hash: MISMATCH"), "{report}");
}

#[test]
fn drawing_stages_compose_and_invert() {
    // A non-chordal graph exercises the pathwidth fallback inside
    // `layout track`; the drawing then verifies and round-trips.
    let env = stdout_of(&run(
        &["layout", "track", "--family", "grid", "--rows", "2", "--cols", "4"],
        b"",
    ));
    let env = stdout_of(&run(&["draw", "track"], env.as_bytes()));
    let report = stdout_of(&run(&["verify", "drawing"], env.as_bytes()));
    assert!(report.trim_end().ends_with("verdict: pass"), "{report}");

    let svg = stdout_of(&run(
        &["draw", "cohen", "--family", "grid", "--rows", "2", "--cols", "4", "--format", "svg"],
        b"",
    ));
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}
