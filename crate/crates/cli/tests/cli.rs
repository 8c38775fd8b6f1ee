use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sicfair_core::scenario::parse_scenario;
use sicfair_core::RankFunctionSet;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sicfair"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn toml_of(o: &Output) -> toml::Table {
    stdout(o).parse().expect("structured output is TOML")
}

#[test]
fn solve_two_user_example() {
    let path = scenario("two_user.toml");
    let out = run(&["solve", "--scenario", path.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = toml_of(&out);
    let min = doc["min_rate"].as_float().unwrap();
    assert!((min - (21.0f64 / 11.0).log2()).abs() < 1e-12);
    assert_eq!(doc["bottleneck_users"].as_array().unwrap()[0].as_integer(), Some(2));

    let human = run(&["solve", "--scenario", path.to_str().unwrap()]);
    let text = stdout(&human);
    assert!(text.contains("1: [] 2, 1"), "{text}");
    assert!(text.contains("2: [1] 2"), "{text}");
    assert!(text.contains("bottleneck users [2]"), "{text}");
}

#[test]
fn solve_single_user() {
    let out = run(&[
        "solve",
        "--scenario",
        scenario("single_user.toml").to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(toml_of(&out)["min_rate"].as_float(), Some(1.0));
}

#[test]
fn malformed_gains_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    let text = fs::read_to_string(scenario("two_user.toml"))
        .unwrap()
        .replace("[[1.0, 2.0], [0.1, 1.0]]", "[[1.0, 2.0]]");
    fs::write(&path, text).unwrap();
    let out = run(&["solve", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gains"));

    let missing = run(&["solve", "--scenario", "/nonexistent/scenario.toml"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn rates_for_user_profiles() {
    let path = scenario("two_user.toml");
    let p = path.to_str().unwrap();
    let out = run(&["rates", "--scenario", p, "--profile", "1:2,1;2:2", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let rates = toml_of(&out)["rates"].as_array().unwrap().clone();
    assert!((rates[0].as_float().unwrap() - 1.0).abs() < 1e-12);
    assert!((rates[1].as_float().unwrap() - (21.0f64 / 11.0).log2()).abs() < 1e-12);

    let out = run(&["rates", "--scenario", p, "--profile", "1:1;2:2", "--format", "structured"]);
    let r1 = toml_of(&out)["rates"].as_array().unwrap()[0].as_float().unwrap();
    assert!((r1 - (4.0f64 / 3.0).log2()).abs() < 1e-12);

    let bad = run(&["rates", "--scenario", p, "--profile", "1:2;2:2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn solve_output_feeds_rates_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    for seed in ["1", "2", "3"] {
        let scen = dir.path().join(format!("g{seed}.toml"));
        let gen = run(&["gen", "--kind", "gaussian", "--k", "4", "--seed", seed, "--out", scen.to_str().unwrap()]);
        assert_eq!(gen.status.code(), Some(0));
        let solved = run(&["solve", "--scenario", scen.to_str().unwrap(), "--format", "structured"]);
        let report = dir.path().join("report.toml");
        fs::write(&report, &solved.stdout).unwrap();
        let again = run(&[
            "rates",
            "--scenario",
            scen.to_str().unwrap(),
            "--profile-file",
            report.to_str().unwrap(),
            "--format",
            "structured",
        ]);
        assert_eq!(again.status.code(), Some(0));
        assert_eq!(toml_of(&solved)["rates"], toml_of(&again)["rates"]);
        let bits = |t: &toml::Table| -> Vec<u64> {
            t["rates"].as_array().unwrap().iter().map(|v| v.as_float().unwrap().to_bits()).collect()
        };
        assert_eq!(bits(&toml_of(&solved)), bits(&toml_of(&again)));
    }
}

#[test]
fn certify_exit_codes() {
    let ok = run(&["certify", "--scenario", scenario("two_user.toml").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    let single = run(&["certify", "--scenario", scenario("single_user.toml").to_str().unwrap()]);
    assert_eq!(single.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("k5.toml");
    run(&["gen", "--kind", "gaussian", "--k", "5", "--seed", "9", "--out", big.to_str().unwrap()]);
    let out = run(&["certify", "--scenario", big.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let ns = scenario("not_submodular.toml");
    let refused = run(&["certify", "--scenario", ns.to_str().unwrap()]);
    assert_eq!(refused.status.code(), Some(1));
    let forced = run(&["certify", "--scenario", ns.to_str().unwrap(), "--force", "--format", "structured"]);
    assert_eq!(forced.status.code(), Some(4));
    assert!(toml_of(&forced).contains_key("counterexample"));
}

#[test]
fn validate_reports() {
    let ok = run(&["validate", "--scenario", scenario("two_user.toml").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = run(&[
        "validate",
        "--scenario",
        scenario("not_submodular.toml").to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let doc = toml_of(&bad);
    let rx = &doc["receivers"].as_array().unwrap()[0];
    assert_eq!(rx["submodularity"]["worst_violation"].as_float(), Some(1.0));
    assert_eq!(rx["normalization"]["passed"].as_bool(), Some(true));

    let dir = tempfile::tempdir().unwrap();
    let shifted = dir.path().join("shifted.toml");
    let text = fs::read_to_string(scenario("not_submodular.toml"))
        .unwrap()
        .replacen("{ users = [], value = 0.0 }", "{ users = [], value = 0.5 }", 1);
    fs::write(&shifted, text).unwrap();
    let out = run(&["validate", "--scenario", shifted.to_str().unwrap(), "--format", "structured"]);
    let doc = toml_of(&out);
    let rx = &doc["receivers"].as_array().unwrap()[0];
    assert_eq!(rx["normalization"]["passed"].as_bool(), Some(false));
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    for kind in ["gaussian", "dmc", "tabulated-submodular"] {
        let a = run(&["gen", "--kind", kind, "--k", "3", "--seed", "17"]);
        let b = run(&["gen", "--kind", kind, "--k", "3", "--seed", "17"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        let rs = parse_scenario(&stdout(&a)).unwrap();
        let expected = sicfair_core::generate::generate(
            match kind {
                "gaussian" => sicfair_core::generate::GenKind::Gaussian,
                "dmc" => sicfair_core::generate::GenKind::Dmc,
                _ => sicfair_core::generate::GenKind::TabulatedSubmodular,
            },
            &sicfair_core::generate::GenParams::new(3, 17),
        )
        .unwrap();
        // exact float equality, field for field
        assert_eq!(rs, expected);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.toml");
        fs::write(&path, &a.stdout).unwrap();
        let v = run(&["validate", "--scenario", path.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{kind}");
        if kind == "tabulated-submodular" {
            assert!(matches!(rs, RankFunctionSet::Tabulated(_)));
        }
    }
    let missing_seed = run(&["gen", "--kind", "gaussian"]);
    assert_eq!(missing_seed.status.code(), Some(2));
}
