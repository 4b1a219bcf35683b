use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.json"))
}

fn pfa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pfa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_examples() {
    for (file, word, expected) in [
        ("program3", "ab", "6"),
        ("program3", "aa", "0"),
        ("fibonacci", "", "1"),
        ("fibonacci", "aaaa", "8"),
        ("program1", "aaa", "1"),
        ("program1", "aaaa", "2"),
        ("halving", "a", "1/2"),
    ] {
        let o = pfa(&["eval", &path(file), word]);
        assert_eq!(o.status.code(), Some(0), "{file} {word}");
        assert_eq!(stdout(&o).trim(), expected, "{file} {word}");
    }
}

#[test]
fn eval_json() {
    let o = pfa(&["--json", "eval", &path("program3"), "ba"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "6");
    assert_eq!(v["word"], serde_json::json!(["b", "a"]));
}

#[test]
fn exit_codes() {
    assert_eq!(
        pfa(&["eval", &path("program3"), "abc"]).status.code(),
        Some(3)
    );
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"kind\": \"q-weighted\"}").unwrap();
    assert_eq!(
        pfa(&["eval", bad.to_str().unwrap(), ""]).status.code(),
        Some(2)
    );
    assert_eq!(
        pfa(&["eval", "/nonexistent/file.json", ""]).status.code(),
        Some(2)
    );
    assert_eq!(pfa(&["seq", &path("program3")]).status.code(), Some(4));
    let o = pfa(&[
        "learn",
        "--target",
        &path("involutions"),
        "--max-queries",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(5));
    let o = pfa(&["learn", "--target", &path("program1"), "--z-mode"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn equiv_and_zeroness() {
    let o = pfa(&["equiv", &path("program3"), &path("program3")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "equivalent");

    let o = pfa(&["equiv", &path("fibonacci"), &path("involutions")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert!(lines[0].starts_with("witness: "));
    assert!(lines[1].starts_with("left: "));
    assert!(lines[2].starts_with("right: "));
    assert_ne!(&lines[1][6..], &lines[2][7..]);

    let o = pfa(&["--json", "equiv", &path("fibonacci"), &path("involutions")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let w: Vec<String> = serde_json::from_value(v["witness"].clone()).unwrap();
    let word = w.concat();
    let left = stdout(&pfa(&["eval", &path("fibonacci"), &word]));
    let right = stdout(&pfa(&["eval", &path("involutions"), &word]));
    assert_eq!(v["left"], left.trim());
    assert_eq!(v["right"], right.trim());

    let o = pfa(&["zeroness", &path("program3")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("witness: "));
}

#[test]
fn minimized_program_one_is_equivalent() {
    let out = tmp("min.json");
    let o = pfa(&[
        "minimize",
        &path("program1"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = pfa(&["equiv", out.to_str().unwrap(), &path("program1")]);
    assert_eq!(stdout(&o).trim(), "equivalent");
}

#[test]
fn seq_involutions() {
    let o = pfa(&["seq", &path("involutions"), "--count", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let terms: Vec<u64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    let mut expected = vec![1u64, 1];
    for k in 2..8u64 {
        expected.push(expected[k as usize - 1] + (k - 1) * expected[k as usize - 2]);
    }
    assert_eq!(terms, expected[1..7]);
}

#[test]
fn to_z() {
    let out = tmp("z.json");
    let o = pfa(&["to-z", &path("program1"), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"kind\": \"z-weighted\""));
    for k in 0..8 {
        let w = "a".repeat(k);
        let z = stdout(&pfa(&["eval", out.to_str().unwrap(), &w]));
        let q = stdout(&pfa(&["eval", &path("program1"), &w]));
        assert_eq!(z, q);
    }

    let o = pfa(&["to-z", &path("halving")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("witness: a"));
    assert!(text.contains("value: 1/2"));
}

#[test]
fn learn_then_compare() {
    for (target, z) in [
        ("fibonacci", false),
        ("fibonacci", true),
        ("program3", false),
        ("involutions", false),
    ] {
        let out = tmp(&format!("learned-{target}-{z}.json"));
        let transcript = tmp(&format!("transcript-{target}-{z}.json"));
        let mut args = vec![
            "learn",
            "--target",
            fixture(target).to_str().unwrap().to_owned().leak(),
            "--output",
            out.to_str().unwrap(),
            "--transcript",
            transcript.to_str().unwrap(),
        ];
        if z {
            args.push("--z-mode");
        }
        let o = pfa(&args);
        assert_eq!(o.status.code(), Some(0), "{target}");
        let o = pfa(&["equiv", out.to_str().unwrap(), &path(target)]);
        assert_eq!(stdout(&o).trim(), "equivalent", "{target}");

        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&transcript).unwrap()).unwrap();
        let events = report["transcript"].as_array().unwrap();
        let count = |name: &str| events.iter().filter(|e| e["event"] == name).count() as u64;
        assert_eq!(report["membership_queries"], count("membership"));
        assert_eq!(report["equivalence_queries"], count("equivalence"));
        if z {
            let learned = std::fs::read_to_string(&out).unwrap();
            assert!(learned.contains("z-weighted"));
            assert_eq!(report["dimension"], 2);
        }
    }
}

#[test]
fn fixtures_round_trip() {
    for name in [
        "program1",
        "fibonacci",
        "involutions",
        "program3",
        "halving",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let a = pfa_core::io::Automaton::from_json(&text).unwrap();
        assert_eq!(a.to_json(), text, "{name}");
        let out = tmp(&format!("{name}-min.json"));
        if a.to_q().is_some() {
            pfa(&["minimize", &path(name), "--output", out.to_str().unwrap()]);
            let again = std::fs::read_to_string(&out).unwrap();
            let b = pfa_core::io::Automaton::from_json(&again).unwrap();
            assert_eq!(b.to_json(), again);
        }
    }
}
