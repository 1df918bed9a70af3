use std::path::Path;
use std::process::{Command, Output};

use dshier::pva::{functional_eq, DiffPoly, LocalFunctional, VarSet};
use dshier::rational::parse_rational;
use serde_json::Value;

fn dshier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dshier")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = dshier(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!(v["version"], dshier::VERSION);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["config_hash"].as_str().map(str::len), Some(64));
    v
}

fn code(args: &[&str]) -> i32 {
    dshier(args).status.code().expect("exit code")
}

#[test]
fn classify_so7() {
    let r = report(&["classify", "--algebra", "so7", "--partition", "3,2,2"]);
    assert_eq!(r["result"]["depth"], "3/2");
    assert_eq!(r["result"]["nilpotent_type"], true);
    assert_eq!(r["result"]["cyclic_probe"]["non_nilpotent_found"], false);
    assert_eq!(r["result"]["quasicyclic_exists"], true);
    assert_eq!(r["result"]["quasicyclic_search"]["found"]["classification"]["element_type"], "mixed");
}

#[test]
fn classify_g2_short_root() {
    let r = report(&["classify", "--algebra", "g2", "--nilpotent-label", "~A1"]);
    assert_eq!(r["result"]["depth"], "3/2");
    assert_eq!(r["result"]["quasicyclic_exists"], false);
    assert_eq!(r["result"]["table1_row"]["status"], "never-quasicyclic");
}

#[test]
fn classify_sl2() {
    let r = report(&["classify", "--algebra", "sl2"]);
    assert_eq!(r["result"]["depth"], "1");
    assert_eq!(r["result"]["nilpotent_type"], false);
    assert_eq!(r["result"]["cyclic_search"]["found"]["classification"]["element_type"], "semisimple");
}

fn poly(s: &str) -> DiffPoly {
    DiffPoly::parse(s, &VarSet::named(["u"])).unwrap()
}

#[test]
fn sl2_densities_match_golden_kdv_chain() {
    let golden: Value = serde_json::from_str(include_str!("golden/sl2_kdv.json")).unwrap();
    let lenard = report(&["lenard", "run", "--densities", "3"]);
    assert_eq!(lenard["result"]["functionals"], golden["lenard"]);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sl2");
    let args = ["hierarchy", "run", "--algebra", "sl2", "--max-degree", "5", "--densities", "3"];
    let status = dshier(&[&args[..], &["--out", out.to_str().unwrap()]].concat()).status;
    assert!(status.success());
    for f in ["report.json", "hierarchy.json", "densities.txt"] {
        assert!(out.join(f).is_file(), "{f} missing");
    }
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let cmp = &r["result"]["verification"]["involution"]["comparison"];
    assert_eq!(cmp["slices"], golden["slices"]);
    assert_eq!(cmp["matches_oracle"], true);
    assert_eq!(cmp["involutive"], true);

    // slice_n = μ^n h_n at c = c*, checked here independently of the binary
    let mu = parse_rational(golden["mu"].as_str().unwrap()).unwrap();
    let c = parse_rational(golden["c_star"].as_str().unwrap()).unwrap();
    let at_c = [(0u16, c)].into();
    let mut scale = parse_rational("1").unwrap();
    for (s, h) in golden["slices"].as_array().unwrap().iter().zip(golden["lenard"].as_array().unwrap()) {
        let h = LocalFunctional::new(poly(h.as_str().unwrap()).eval_params(&at_c)).scale(&scale);
        assert!(functional_eq(&LocalFunctional::new(poly(s.as_str().unwrap())), &h));
        scale = &scale * &mu;
    }

    let hier: Value = serde_json::from_str(&std::fs::read_to_string(out.join("hierarchy.json")).unwrap()).unwrap();
    assert_eq!(hier["variables"].as_array().unwrap().len(), 2);
    let listing = std::fs::read_to_string(out.join("densities.txt")).unwrap();
    assert!(listing.contains("g2 at u_H1 = 0, u = u_E21: -1/16*u[0]*u[2] + 1/8*u[0]^3"));
}

#[test]
fn so7_hierarchy_completes() {
    let r = report(&["hierarchy", "run", "--algebra", "so7", "--partition", "3,2,2", "--max-degree", "2"]);
    let v = &r["result"]["verification"];
    assert_eq!(v["residual_zero"], true);
    assert_eq!(v["flatness"]["nonzero_terms"], 0);
    assert_eq!(v["gauge_invariance"][0]["densities_agree"], true);
    assert!(!r["result"]["densities"].as_array().unwrap().is_empty());
}

#[test]
fn window_errors_exit_5() {
    assert_eq!(code(&["hierarchy", "run", "--algebra", "sl2", "--max-degree", "1", "--densities", "50"]), 5);
    // the third sl2 density needs degree 5
    assert_eq!(code(&["hierarchy", "run", "--algebra", "sl2", "--max-degree", "4", "--densities", "3"]), 5);
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(code(&["classify"]), 2);
    assert_eq!(code(&["classify", "--algebra", "e8"]), 2);
    assert_eq!(code(&["hierarchy", "run", "--algebra", "sl2", "--max-degree", "0"]), 2);
    assert_eq!(code(&["hierarchy", "run", "--algebra", "sl2", "--densities", "0"]), 2);
    assert_eq!(code(&["classify", "--algebra", "so7", "--partition", "3,2"]), 2);
    assert_eq!(code(&["triple", "check", "--algebra", "sl2", "--triple", "/nonexistent.json"]), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"algebra": "sl2", "max_dgree": "3"}"#).unwrap();
    assert_eq!(code(&["classify", "--config", bad.to_str().unwrap()]), 2);
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    std::fs::write(&cfg, r#"{"algebra": "sl2", "max_degree": "5", "densities": 2}"#).unwrap();
    let a = report(&["hierarchy", "run", "--config", cfg.to_str().unwrap(), "--densities", "3"]);
    assert_eq!(a["config"]["densities"], 3);
    assert_eq!(a["result"]["densities"].as_array().unwrap().len(), 3);
    let b = report(&["hierarchy", "run", "--algebra", "sl2", "--max-degree", "5", "--densities", "3"]);
    assert_eq!(a["config_hash"], b["config_hash"]);
    let c = report(&["hierarchy", "run", "--config", cfg.to_str().unwrap()]);
    assert_ne!(a["config_hash"], c["config_hash"]);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["hierarchy", "run", "--algebra", "sl2", "--max-degree", "5", "--seed", "1,2"][..],
        &["classify", "--algebra", "so7", "--partition", "3,2,2", "--seed", "4"][..],
        &["triple", "build", "--algebra", "sl3", "--partition", "2,1"][..],
    ] {
        let a = dshier(args);
        let b = dshier(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn triple_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&["triple", "build", "--algebra", "so7", "--partition", "3,2,2"]);
    assert_eq!(r["result"]["check"]["failures"].as_array().unwrap().len(), 0);
    let path = dir.path().join("t.json");
    std::fs::write(&path, r["result"]["triple"].to_string()).unwrap();
    let p = path.to_str().unwrap();
    let c = report(&["triple", "check", "--algebra", "so7", "--partition", "3,2,2", "--triple", p]);
    assert_eq!(c["result"]["triple"]["p"], r["result"]["triple"]["p"]);
    assert_eq!(c["result"]["classification"]["kind"], "quasicyclic");

    let mut broken = r["result"]["triple"].clone();
    let n = broken["f2"].as_array().unwrap().len();
    broken["f2"] = Value::from(vec!["0"; n]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, broken.to_string()).unwrap();
    assert_eq!(code(&["triple", "check", "--algebra", "so7", "--partition", "3,2,2", "--triple", bad.to_str().unwrap()]), 4);
}

#[test]
fn sl3_minimal_triple_by_search() {
    let r = report(&["triple", "build", "--algebra", "sl3", "--partition", "2,1"]);
    assert_eq!(r["result"]["provenance"]["source"], "search");
    assert_eq!(r["result"]["classification"]["element_type"], "semisimple");
}

#[test]
fn pva_tables_pass() {
    for args in [
        &["pva", "check"][..],
        &["pva", "check", "--table", "derivation"][..],
        &["pva", "check", "--table", "affine", "--algebra", "so7", "--partition", "3,2,2"][..],
    ] {
        assert_eq!(report(args)["result"]["passed"], true, "{args:?}");
    }
}

#[test]
fn lenard_and_table() {
    let l = report(&["lenard", "run", "--densities", "4"]);
    assert_eq!(l["result"]["completed"], true);
    assert_eq!(l["result"]["in_involution"], true);
    assert_eq!(report(&["table1", "show"])["result"]["rows"].as_array().unwrap().len(), 15);
    assert_eq!(report(&["table1", "show", "--algebra", "E8"])["result"]["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alg.txt");
    let out = dshier(&["algebra", "build", "--algebra", "sl2", "--format", "text", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("command: algebra build\n"));
    assert!(text.contains(&format!("version: {}\n", dshier::VERSION)));
    assert!(Path::new(&path).is_file());
}
