use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pointfree-lab"));
    cmd.args(args).env_remove("PFLAB_MAX_GRID");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn run(args: &[&str]) -> (String, i32) {
    run_env(args, &[])
}

fn last_line(s: &str) -> &str {
    s.lines().last().unwrap_or("")
}

#[test]
fn demo_omega_transcript() {
    let (out, code) = run(&["demo-omega"]);
    assert_eq!(code, 0);
    assert_eq!(last_line(&out), "POINTWISE=no FAILING_RAY=1/2 LHS=natcofin{} RHS=TOP");
    assert!(out.contains("\nUPPER_BOUND=yes\n"));
    assert!(out.contains("FAILING_POINT=omega AGREE=yes"));
    assert!(out.contains("SEPARATION=separated"));
}

#[test]
fn cor1_suite_by_seed() {
    let (out, code) = run(&["rl-cor1", "--seed", "7", "--cases", "500"]);
    assert_eq!(code, 0);
    assert_eq!(out, "SUITE=cor1 SEED=7\nPASS=500 FAIL=0\n");
}

#[test]
fn named_suites() {
    let (out, code) = run(&["suite-run", "lift-vs-arith"]);
    assert_eq!(
        (out.as_str(), code),
        ("SUITE=lift-vs-arith SEED=0\nPASS=200 FAIL=0\n", 0)
    );
    let (out, code) = run(&["suite-run", "kernels-exhaustive-3"]);
    assert_eq!(
        (out.as_str(), code),
        ("SUITE=kernels-exhaustive-3 SEED=0\nPASS=8 FAIL=0\n", 0)
    );
}

#[test]
fn same_seed_same_bytes() {
    let args = ["suite-run", "separation", "--seed", "11", "--cases", "40"];
    let (a, ca) = run(&args);
    let (b, cb) = run(&args);
    assert_eq!((a, ca), (b, cb));
}

#[test]
fn unknown_verbs_and_suites_are_input_errors() {
    assert_eq!(run(&["bogus"]).1, 2);
    let (out, code) = run(&["suite-run", "nope"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("ERROR=UnknownSuite"));
}

#[test]
fn missing_files_and_parse_errors() {
    let (out, code) = run(&["frame-check", "/nonexistent/x.frame"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("ERROR=Io"));
    let dir = std::env::temp_dir().join(format!("pflab-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.frame");
    std::fs::write(&bad, "frame F\npoints a\norder a<z\n").unwrap();
    let (out, code) = run(&["frame-check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.starts_with("ERROR=ParseError LINE=3 COL="), "{out}");
}

#[test]
fn classify_chain_and_v() {
    let (out, code) = run(&["frame-classify", &data("chain3.frame")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("FRAME=C BOOLEAN=no ED=yes BD=yes PFRAME=no "), "{out}");
    let (out, code) = run(&["frame-classify", &data("v.frame")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("FRAME=V BOOLEAN=no ED=no BD=no PFRAME=no "), "{out}");
    assert!(out.contains("ED_WITNESS="));
}

#[test]
fn frame_laws_hold() {
    let (out, code) = run(&["frame-check", &data("v.frame")]);
    assert_eq!(
        (out.as_str(), code),
        (
            "FRAME=V KIND=finite POINTS=3 ELEMENTS=5 COZERO=5 CHECKED=125 LAWS=ok\n",
            0
        )
    );
    let (out, code) = run(&["frame-check", &data("omega.rl")]);
    assert_eq!(code, 0);
    assert!(out.ends_with("LAWS=ok\n"));
}

#[test]
fn booleanize_v() {
    let (out, code) = run(&["frame-booleanize", &data("v.frame")]);
    assert_eq!(code, 0);
    assert!(out.contains("ELEM={a,b} IMAGE=TOP REGULAR=no\n"));
    assert_eq!(last_line(&out), "FRAME_MAP=yes INJECTIVE=no SURJECTIVE=yes BOOLEAN=yes");
}

#[test]
fn validate_steps() {
    let (out, code) = run(&["rl-validate", &data("steps.rl")]);
    assert_eq!(code, 1);
    assert!(out.contains("STEP=f FRAME=F VALID=yes VALUE=\"TOP | 0 {a} | 1 BOT\"\n"));
    assert!(last_line(&out).starts_with("STEP=bad FRAME=F VALID=no ERROR=Malformed"));
    let (out, code) = run(&["rl-validate", &data("steps.rl"), "--step", "g"]);
    assert_eq!(
        (out.as_str(), code),
        ("STEP=g FRAME=F VALID=yes VALUE=\"TOP | 1/2 {b} | 2 BOT\"\n", 0)
    );
}

#[test]
fn arithmetic_agrees_with_lift() {
    let (out, code) = run(&["rl-arith", &data("steps.rl"), "add", "f", "g"]);
    assert_eq!(code, 0);
    assert_eq!(out, "OP=add F=f G=g RESULT=\"TOP | 3/2 {b} | 2 BOT\"\nLIFT=agree\n");
    let (out, code) = run(&["rl-arith", &data("steps.rl"), "sub", "f", "h"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("OP=sub F=f G=h RESULT=\"TOP | -1 {a} | 0 BOT\""));
}

#[test]
fn max_grid_is_read_from_the_environment() {
    let (out, code) = run_env(
        &["rl-arith", &data("steps.rl"), "join", "f", "g"],
        &[("PFLAB_MAX_GRID", "zero")],
    );
    assert_eq!(code, 2);
    assert!(out.starts_with("ERROR=BadEnvironment"));
}

#[test]
fn pointwise_omega() {
    let (out, code) = run(&["pw-check", &data("omega.rl"), "--f0", "one", "--family", "P"]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "F0=one FAMILY=P MODE=sup\nUPPER_BOUND=yes\nPOINTWISE=no FAILING_RAY=1/2 LHS=natcofin{} RHS=TOP\n"
    );
}

#[test]
fn pointwise_not_an_upper_bound() {
    let (out, code) = run(&["pw-check", &data("steps.rl"), "--f0", "h", "--family", "K"]);
    assert_eq!(code, 1);
    assert!(out.contains("UPPER_BOUND=no\n"));
}

#[test]
fn pointwise_with_the_coordinate_oracle() {
    let (out, code) = run(&["pw-check", &data("spatial.pw"), "--f0", "f0", "--members", "k1,k2"]);
    assert_eq!(code, 0);
    assert!(out.contains("COORD_UPPER=yes COORD_POINTWISE=yes FAILING_POINT=none AGREE=yes\n"));
    assert_eq!(last_line(&out), "POINTWISE=yes");
    let (out, code) = run(&["pw-check", &data("spatial.pw"), "--f0", "up", "--members", "k1,k2"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAILING_POINT=x1 AGREE=yes"));
    let (out, code) = run(&["pw-check", &data("spatial.pw"), "--f0", "c", "--family", "P"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAILING_POINT=omega AGREE=yes"));
}

#[test]
fn separation_certificate() {
    let (out, code) = run(&["pw-separate", &data("omega.rl"), "--f0", "one", "--family", "P"]);
    assert_eq!(code, 0);
    assert!(out.contains("KIND=separated R=-1/2 A=natcofin{} B={w}\n"));
    assert!(!out.contains("OK=no"));
    assert_eq!(last_line(&out), "VALID=yes");
}

#[test]
fn chi_needs_a_boolean_frame() {
    let (out, code) = run(&["pw-chi", &data("omega.rl"), "--f0", "one", "--family", "P"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("ERROR=HypothesisFailed"));
}

#[test]
fn truncate_sequences() {
    let (out, code) = run(&["trunc-validate", &data("trunc.ts")]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "SEQ=G VALID=yes CHECKED_TO=3 SETTLE=2\n\
         SEQ=Swapped VALID=no CONDITION=1 WITNESS=1\n\
         SEQ=Ramp VALID=no CONDITION=2 WITNESS=1\n"
    );
    let (out, code) = run(&["trunc-reconstruct", &data("trunc.ts"), "--seq", "G"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("SEQ=G H=\"TOP | 0 {a} | 3/2 BOT\" VALID=yes\n"));
}

#[test]
fn mobility() {
    let (out, code) = run(&["mobile-check", &data("downsets.ds")]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "DOWNSET=B MOBILE=yes SIMULATION=none\nDOWNSET=Z MOBILE=no WITNESS=(0,1) VERIFIED=yes SIMULATION=(0,1/2)\n"
    );
}

#[test]
fn json_lines_share_keys_with_text() {
    let (text, _) = run(&["demo-omega"]);
    let (json, code) = run(&["--json", "demo-omega"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), json.lines().count());
    for (t, j) in text.lines().zip(json.lines()) {
        let obj: serde_json::Map<String, serde_json::Value> = serde_json::from_str(j).unwrap();
        let keys: Vec<&str> = t
            .split(' ')
            .filter_map(|kv| kv.split_once('=').map(|(k, _)| k))
            .collect();
        for k in obj.keys() {
            assert!(keys.contains(&k.as_str()), "{k} missing from {t}");
        }
    }
}
