use std::process::Command;

use rimcert::cli::{run, CertificationReport, Verdict, MAX_COSETS_ENV};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rimcert"))
}

#[test]
fn alexander_text() {
    let out = run(["rimcert", "alexander", "sum(torus:2,3,torus:2,3)"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "t^2 - 2t + 3 - 2t^-1 + t^-2\ndegree span: 4\n");
    let out = run(["rimcert", "alexander", "torus:2,3"]);
    assert!(out.stdout.starts_with("t - 1 + t^-1\n"));
}

#[test]
fn alexander_parse_error_is_input_error() {
    let out = run(["rimcert", "alexander", "torus:2;3"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("error"), "{}", out.stderr);
}

#[test]
fn genus() {
    assert_eq!(run(["rimcert", "genus", "5"]).stdout, "6\n");
    assert_eq!(run(["rimcert", "genus", "6"]).stdout, "10\n");
    assert_eq!(run(["rimcert", "genus", "1"]).stdout, "0\n");
    assert_eq!(run(["rimcert", "genus", "0"]).code, 3);
}

#[test]
fn exit_codes_match_json_verdicts() {
    let cases: [(&[&str], i32); 6] = [
        (&["pi1", "5"], 0),
        (&["pi1", "4"], 1),
        (&["pi1", "9", "--max-cosets", "3"], 2),
        (&["sw-family", "--family", "3"], 0),
        (&["sw-family", "unknot", "unknot"], 1),
        (&["x9", "--window-lo", "0.5", "--window-hi", "0.6", "--resolution", "128"], 1),
    ];
    for (args, code) in cases {
        let argv: Vec<&str> = ["rimcert", "--json"].iter().chain(args.iter()).copied().collect();
        let out = run(argv);
        assert_eq!(out.code, code, "{args:?}: {}", out.stderr);
        let report: CertificationReport = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(report.exit_code(), code);
        let expected = match code {
            0 => Verdict::Pass,
            1 => Verdict::Fail,
            _ => Verdict::Inconclusive,
        };
        assert_eq!(report.verdict, expected);
    }
}

#[test]
fn input_errors_exit_3() {
    for args in [
        &["pi1", "3"][..],
        &["pi1", "6", "--membrane", "3"],
        &["x9", "--resolution", "16"],
        &["x9", "--delta", "0.01"],
        &["sw-family", "--cover-degree", "1", "unknot"],
        &["sw-family", "--base", "{not json", "unknot"],
        &["sw-family"],
        &["no-such-command"],
    ] {
        let argv: Vec<&str> = ["rimcert"].iter().chain(args.iter()).copied().collect();
        assert_eq!(run(argv).code, 3, "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical_without_timing() {
    let args = ["rimcert", "--json", "sw-family", "--cover-degree", "3", "--family", "3"];
    let a: CertificationReport = serde_json::from_str(&run(args).stdout).unwrap();
    let b: CertificationReport = serde_json::from_str(&run(args).stdout).unwrap();
    assert!(a.wall_time_ms.is_some());
    assert_eq!(a.to_json(false), b.to_json(false));
}

#[test]
fn binary_exit_codes_and_env_default() {
    let st = bin().args(["pi1", "7"]).output().unwrap().status;
    assert_eq!(st.code(), Some(0));
    let st = bin().args(["pi1", "7"]).env(MAX_COSETS_ENV, "2").output().unwrap().status;
    assert_eq!(st.code(), Some(2));
    let st = bin().args(["pi1", "2"]).output().unwrap().status;
    assert_eq!(st.code(), Some(3));
}

#[test]
fn svg_output() {
    let dir = std::env::temp_dir().join(format!("rimcert-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ovals.svg");
    let out = run(["rimcert", "x9", "--resolution", "128", "--svg", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sw_family_base_from_file_and_verbose_cross_check() {
    let dir = std::env::temp_dir().join(format!("rimcert-base-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("base.json");
    std::fs::write(&path, r#"[{"class": [0], "coeff": 1}]"#).unwrap();
    let base = format!("@{}", path.display());
    let out = run(["rimcert", "--json", "--verbose", "sw-family", "--base", &base, "--family", "4"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["certificate"]["counts"], serde_json::json!([5, 9, 13, 17]));
    assert_eq!(v["certificate"]["double_application_agrees"], serde_json::json!([true, true, true, true]));
    assert_eq!(v["certificate"]["distinctness"]["verdict"], "pass");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_command() {
    let out = run(["rimcert", "selftest", "--seed", "3", "--cases", "20"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.starts_with("selftest: pass"));
}
