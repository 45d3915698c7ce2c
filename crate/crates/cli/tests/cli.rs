use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("{e}: stdout {:?} stderr {:?}", self.stdout, self.stderr))
    }
}

fn crossing(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_crossing"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn single_gate_has_zero_slack() {
    let r = crossing(&[
        "slalom",
        "verify",
        "--gates",
        &fixture("single_gate.json"),
        "--band",
        "0,1",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["result"]["slack"], "0");
    assert_eq!(v["result"]["lhs"], "1");
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn empty_config_is_trivial() {
    let r = crossing(&[
        "slalom",
        "verify",
        "--gates",
        &fixture("empty.json"),
        "--band",
        "-1/2,3",
    ]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["result"]["lhs"], "0");
    assert_eq!(v["result"]["rhs"], "0");
}

#[test]
fn staggered_gates_are_strict() {
    let r = crossing(&[
        "slalom",
        "verify",
        "--gates",
        &fixture("staggered.json"),
        "--band",
        "0,1",
    ]);
    assert_eq!(r.code, 0);
    let slack = r.json()["result"]["slack"].as_str().unwrap().to_string();
    assert!(slack != "0" && !slack.starts_with('-'), "{slack}");
}

#[test]
fn dp_vs_oracle_sweep() {
    let r = crossing(&[
        "sweep",
        "--suite",
        "dp-vs-oracle",
        "--cases",
        "500",
        "--seed",
        "7",
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["result"]["passed"], 500);
    assert_eq!(v["result"]["cases"], 500);
}

#[test]
fn reports_are_deterministic() {
    let runs = [
        vec!["sweep", "--suite", "bishop", "--cases", "20", "--seed", "3"],
        vec![
            "slalom", "solve", "--gates", "F", "--band", "1/3,2", "--query", "-1,1/2",
        ],
        vec![
            "blp",
            "test",
            "--pair",
            "P",
            "--band",
            "1,2",
            "--samples",
            "32",
        ],
    ];
    let (gates, pair) = (fixture("staggered.json"), fixture("oscillator.json"));
    for args in runs {
        let args: Vec<&str> = args
            .iter()
            .map(|a| match *a {
                "F" => gates.as_str(),
                "P" => pair.as_str(),
                other => other,
            })
            .collect();
        let a = crossing(&args);
        let b = crossing(&args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(
            without_timing(a.json()),
            without_timing(b.json()),
            "{args:?}"
        );
    }
}

#[test]
fn solve_and_oracle_agree() {
    let g = fixture("staggered.json");
    let solve = crossing(&[
        "slalom", "solve", "--gates", &g, "--band", "0,1", "--query", "-1/2,1/2",
    ]);
    let oracle = crossing(&[
        "slalom", "oracle", "--gates", &g, "--band", "0,1", "--query", "-1/2,1/2",
    ]);
    assert_eq!(solve.code, 0);
    assert_eq!(oracle.code, 0);
    let (s, o) = (solve.json(), oracle.json());
    assert_eq!(s["result"]["query"]["t"], o["result"]["oracle"]);
    assert_eq!(o["result"]["agree"], true);
    assert_eq!(s["result"]["field"]["x_dead"], "-1");
}

#[test]
fn curve_commands() {
    let c = fixture("zigzag.json");
    let r = crossing(&[
        "curve", "gapcount", "--curve", &c, "--band", "0,1", "--apex", "0,0",
    ]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["result"]["total"], 4);
    assert_eq!(v["result"]["upcrossings"], 2);
    assert_eq!(v["result"]["downcrossings"], 2);

    let r = crossing(&[
        "curve",
        "verify",
        "--curve",
        &c,
        "--band",
        "-1,2",
        "--samples",
        "40",
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json()["result"]["holds"], true);
}

#[test]
fn svg_figures_are_written() {
    let dir = std::env::temp_dir().join(format!("crossing-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let slalom = dir.join("slalom.svg");
    let curve = dir.join("curve.svg");
    let r = crossing(&[
        "slalom",
        "solve",
        "--gates",
        &fixture("staggered.json"),
        "--band",
        "0,1",
        "--query",
        "-1,0",
        "--svg",
        slalom.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    let r = crossing(&[
        "curve",
        "gapcount",
        "--curve",
        &fixture("zigzag.json"),
        "--band",
        "0,1",
        "--apex",
        "0,0",
        "--svg",
        curve.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    for p in [slalom, curve] {
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(
            text.starts_with("<svg") && text.contains("</svg>"),
            "{}",
            p.display()
        );
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn pair_commands() {
    let osc = fixture("oscillator.json");
    let r = crossing(&["blp", "crossings", "--pair", &osc, "--band", "1,2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["result"]["total"], 6);

    let r = crossing(&["blp", "test", "--pair", &osc, "--band", "1,2"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json()["result"]["chain_holds"], true);

    let r = crossing(&["blp", "trace", "--pair", &fixture("explicit_pair.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["result"]["ratios"][0], "2");

    let scaled = fixture("scaled.json");
    let r = crossing(&["blp", "cover", "--pair", &scaled, "--eps", "1/8"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["result"]["length_ok"], true);

    let r = crossing(&[
        "blp",
        "transfer",
        "--pair",
        &scaled,
        "--c",
        "2",
        "--interval",
        "3/4,9/8",
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["result"]["covers_B"], true);
    assert_eq!(v["result"]["length_ok"], true);

    let r = crossing(&[
        "blp",
        "accelerate",
        "--pair",
        &fixture("twice_as_fast.json"),
        "--c",
        "1/2",
        "--precision",
        "1/1048576",
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert!(v["result"]["rounds"].as_u64().unwrap() <= 20);
}

#[test]
fn input_errors_exit_two_with_a_field_path() {
    let r = crossing(&[
        "slalom",
        "verify",
        "--gates",
        &fixture("single_gate.json"),
        "--band",
        "1,1",
    ]);
    assert_eq!(r.code, 2);

    let r = crossing(&[
        "slalom",
        "verify",
        "--gates",
        &fixture("bad_rational.json"),
        "--band",
        "0,1",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("gates[1].m"), "{}", r.stderr);

    let r = crossing(&[
        "slalom",
        "verify",
        "--gates",
        &fixture("numeric.json"),
        "--band",
        "0,1",
    ]);
    assert_eq!(r.code, 2);
    assert!(
        r.stderr.contains("gates[0].m") && r.stderr.contains("strings"),
        "{}",
        r.stderr
    );

    let r = crossing(&[
        "slalom",
        "verify",
        "--gates",
        &fixture("zigzag.json"),
        "--band",
        "0,1",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("gates"), "{}", r.stderr);

    let r = crossing(&["sweep", "--suite", "nope"]);
    assert_eq!(r.code, 2);

    let r = crossing(&[
        "blp",
        "accelerate",
        "--pair",
        &fixture("explicit_pair.json"),
        "--c",
        "1/2",
        "--precision",
        "1/8",
    ]);
    assert_eq!(r.code, 2);
}
