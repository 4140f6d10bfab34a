use std::process::{Command, Output};

use jantzen_core::dmodules::{act, Element, ModuleFamily, Monomial, OpName, WeightWindow};
use jantzen_core::filtration::{maxext_monodromy_profile, MonodromyProfile};
use jantzen_core::jantzen::{compare_filtrations, ComparisonReport};
use jantzen_core::render::{build_diagram, figure_spec, structural_equal, Diagram};

fn jantzen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jantzen"))
        .args(args)
        .env_remove("JANTZEN_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn act_on_deformed_dual_verma() {
    let o = jantzen(&[
        "act",
        "--family",
        "defplus",
        "--op",
        "Lf",
        "--monomial",
        "0,0,0",
        "--n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-1·(1,-1,1)");
}

#[test]
fn act_json_round_trips() {
    let o = jantzen(&[
        "--json",
        "act",
        "--family",
        "defshriek",
        "--op",
        "Le",
        "--monomial",
        "2,-1,0",
        "--n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let got: Element = serde_json::from_str(&stdout(&o)).unwrap();
    let v = Element::monomial(ModuleFamily::DefShriek(3), Monomial::new(2, -1, 0)).unwrap();
    assert_eq!(got, act(OpName::Le, &v));
}

#[test]
fn verify_relations_prints_six_brackets() {
    let o = jantzen(&["verify", "--relations"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains("] = ")).count(), 6);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_all_passes() {
    let o = jantzen(&["verify", "--all", "--samples", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn jantzen_compare_is_aligned() {
    let o = jantzen(&[
        "--json",
        "jantzen",
        "--slice",
        "0",
        "--n",
        "4",
        "--compare",
        "--wmin",
        "-6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let got: ComparisonReport = serde_json::from_value(v["comparison"].clone()).unwrap();
    assert_eq!(
        got,
        compare_filtrations(0, 4, WeightWindow::new(-6, 0)).unwrap()
    );
    assert!(got.weights.iter().all(|w| w.verdict == "aligned"));
}

#[test]
fn monodromy_json_round_trips() {
    let o = jantzen(&["--json", "monodromy", "--slice", "1", "--wmin", "-7"]);
    assert_eq!(o.status.code(), Some(0));
    let got: MonodromyProfile = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        got,
        maxext_monodromy_profile(1, WeightWindow::new(-7, 1)).unwrap()
    );
}

#[test]
fn figure_json_matches_library() {
    let o = jantzen(&["figure", "--which", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let got: Diagram = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(structural_equal(
        &got,
        &build_diagram(&figure_spec(8).unwrap()).unwrap()
    ));
}

#[test]
fn figure_writes_out_file() {
    let path = std::env::temp_dir().join(format!("jantzen-fig-{}.dot", std::process::id()));
    let o = jantzen(&["figure", "--which", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn figure_is_deterministic() {
    let a = stdout(&jantzen(&["figure", "--which", "3"]));
    let b = stdout(&jantzen(&["figure", "--which", "3"]));
    assert_eq!(a, b);
}

#[test]
fn normal_order_moves_derivatives_right() {
    let o = jantzen(&["normal-order", "d1*x1^2"]);
    assert_eq!(stdout(&o).trim(), "x1^2*d1 + 2*x1");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["verify"],
        &[
            "act",
            "--family",
            "nope",
            "--op",
            "Le",
            "--monomial",
            "0,0,0",
        ],
        &[
            "act",
            "--family",
            "plus",
            "--op",
            "Le",
            "--monomial",
            "0,0,1",
        ],
        &["weights", "--family", "plus", "--wmin", "3", "--wmax", "1"],
        &["jantzen", "--slice", "-1", "--sum-formula"],
        &["jantzen", "--n", "1"],
        &["figure", "--which", "9"],
        &["figure", "--kind", "verma", "--slices", "2..1"],
        &["normal-order", "x1 +"],
    ] {
        assert_eq!(jantzen(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn seed_env_overrides_flag() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_jantzen"));
        c.args([
            "--json",
            "verify",
            "--random",
            "--samples",
            "3",
            "--seed",
            "7",
        ]);
        match env {
            Some(v) => c.env("JANTZEN_SEED", v),
            None => c.env_remove("JANTZEN_SEED"),
        };
        let o = c.output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["random"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None), 7);
    assert_eq!(run(Some("11")), 11);
}
