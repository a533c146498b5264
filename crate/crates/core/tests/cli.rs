use std::io::Write as _;
use std::process::{Command, Stdio};

use agband::cli::run;
use agband::constructions::{gbar_derived, limit_product, standard_g, tower_level};
use agband::morphisms::{iso_search, Mapping};
use agband::FiniteGroupoid;
use tempfile::TempDir;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn agband(args: &[&str], stdin: &str) -> Output {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("agband").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, g: &FiniteGroupoid) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, g.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn build_matches_library() {
    let o = agband(&["build", "gn", "--n", "2"], "");
    assert_eq!(o.code, 0);
    assert_eq!(FiniteGroupoid::from_json(&o.out).unwrap(), tower_level(2));
    assert_eq!(agband(&["build", "g"], "").out.trim(), standard_g().to_json());
    let text = agband(&["build", "g", "--format", "text"], "").out;
    assert!(text.lines().nth(1).unwrap().split_whitespace().eq(["a", "a", "ab", "ba", "b"]));
    let j = FiniteGroupoid::from_json(&agband(&["build", "j", "--n", "1"], "").out).unwrap();
    assert_eq!(j.order(), 4);
}

#[test]
fn check_reads_stdin_and_reports_failures() {
    let g = standard_g().to_json();
    assert_eq!(agband(&["check", "--variety", "ARAGB"], &g).code, 0);
    assert_eq!(agband(&["check", "-", "--variety", "(x y) = (y x)"], &g).code, 1);

    let dir = TempDir::new().unwrap();
    let gbar = write(&dir, "gbar.json", &gbar_derived());
    let o = agband(&["check", "--variety", "ARAGB", &gbar], "");
    assert_eq!(o.code, 1);
    assert!(o.out.contains("FAILS  ((x y) x) = y"), "{}", o.out);

    let o = agband(&["check", "--variety", "ARAGB", "--format", "json", &gbar], "");
    let report: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(report["results"][2]["holds"], false);
}

#[test]
fn iso_witness_and_not_found() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &standard_g());
    let opp = write(&dir, "opp.json", &standard_g().opposite());
    let o = agband(&["iso", &opp, &g], "");
    assert_eq!(o.code, 0);
    let m: Mapping = serde_json::from_str(&o.out).unwrap();
    assert_eq!(m, iso_search(&standard_g().opposite(), &standard_g(), false).unwrap());

    let g2 = write(&dir, "g2.json", &tower_level(2));
    let gbar = write(&dir, "gbar.json", &gbar_derived());
    let o = agband(&["iso", &g2, &gbar], "");
    assert_eq!((o.code, o.out.trim()), (1, "NOT_FOUND"));
}

#[test]
fn census_and_canonical_iso() {
    let g = standard_g().to_json();
    let o = agband(&["classify-bijections"], &g);
    assert!(o.out.starts_with("24 bijections: 12 ISO, 12 ANTI_ISO, 0 NEITHER"), "{}", o.out);
    let o = agband(&["classify-bijections", "--format", "json"], &g);
    let census: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(census["totals"]["iso"], 12);

    let o = agband(&["canonical-iso", "--enumeration", "3,1,2,0"], &g);
    assert_eq!(o.code, 0, "{}", o.err);
    let m: Mapping = serde_json::from_str(&o.out).unwrap();
    assert_eq!(m.images[3], 0);
    assert_eq!(agband(&["canonical-iso", "--enumeration", "0,1"], &g).code, 2);
    let gbar = gbar_derived().to_json();
    assert_eq!(agband(&["canonical-iso"], &gbar).code, 1);
}

#[test]
fn decompositions() {
    let g2 = tower_level(2).to_json();
    let o = agband(&["decompose", "blocks", "--partition", "[[0,1,2,3],[4,5,6,7],[8,9,10,11],[12,13,14,15]]"], &g2);
    assert_eq!(o.code, 0);
    let d: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(d["quotient"]["order"], 4);
    let o = agband(&["decompose", "blocks", "--partition", "[[0,1],[2,3]]"], &standard_g().to_json());
    assert_eq!(o.code, 1);
    assert_eq!(agband(&["decompose", "blocks", "--partition", "[[0,1]]"], &g2).code, 2);
    let o = agband(&["decompose", "gcopies"], &g2);
    let p: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(p["partition"]["blocks"].as_array().unwrap().len(), 4);
    assert_eq!(agband(&["decompose", "extension", "--n", "2"], "").code, 0);
    assert_eq!(agband(&["decompose", "audit"], &g2).code, 0);
}

#[test]
fn spectrum_and_models() {
    let o = agband(&["spectrum", "--variety", "ARAGB", "--max-order", "4", "--oracle"], "");
    assert_eq!(o.code, 0, "{}", o.err);
    let rows: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    let counts: Vec<_> = rows.as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 0, 0, 1]);
    assert_eq!(rows[3]["oracle"], 1);

    let dir = TempDir::new().unwrap();
    let emit = dir.path().join("models");
    let o = agband(&["models", "--variety", "ARAGB", "--order", "4", "--emit", emit.to_str().unwrap()], "");
    assert_eq!(o.code, 0);
    let model = FiniteGroupoid::from_json(&std::fs::read_to_string(emit.join("model-4-0.json")).unwrap()).unwrap();
    assert!(iso_search(&model, &standard_g(), false).is_some());
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(emit.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["count"], 1);

    assert_eq!(agband(&["models", "--variety", "ARAGB", "--order", "9"], "").code, 2);
    assert_eq!(agband(&["spectrum", "--variety", "NOPE", "--max-order", "2"], "").code, 2);
}

#[test]
fn diff_and_limit_product() {
    let dir = TempDir::new().unwrap();
    let derived = agband(&["build", "gbar"], "").out;
    let printed = agband(&["build", "gbar", "--from-table3"], "").out;
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, derived).unwrap();
    std::fs::write(&b, printed).unwrap();
    let o = agband(&["diff", a.to_str().unwrap(), b.to_str().unwrap()], "");
    assert_eq!(o.code, 1);
    assert!(o.out.starts_with("row 3 col 10: 14 vs 11"), "{}", o.out);
    assert_eq!(agband(&["diff", a.to_str().unwrap(), a.to_str().unwrap()], "").code, 0);

    let o = agband(&["limit-product", "5", "1000"], "");
    assert_eq!(o.out.trim(), limit_product(5, 1000).to_string());
}

#[test]
fn verify_paper_single_claim_and_usage_errors() {
    let o = agband(&["verify-paper", "--only", "corollary-2", "--format", "json"], "");
    assert_eq!(o.code, 0);
    let report: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(report["overall"], "PASS");
    assert_eq!(report["claims"][0]["reference"], "Corollary 2");
    assert_eq!(agband(&["verify-paper", "--only", "result-99"], "").code, 2);
    assert_eq!(agband(&["frobnicate"], "").code, 2);
    assert_eq!(agband(&["build", "gn"], "").code, 2);
    assert_eq!(agband(&["--help"], "").code, 0);
    assert_eq!(agband(&["check", "--variety", "ARAGB"], "not json").code, 2);
}

#[test]
fn binary_pipeline() {
    let exe = env!("CARGO_BIN_EXE_agband");
    let built = Command::new(exe).args(["build", "g"]).output().unwrap();
    assert!(built.status.success());
    let mut check = Command::new(exe)
        .args(["check", "--variety", "ARAGB"])
        .env("AGBAND_THREADS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    check.stdin.take().unwrap().write_all(&built.stdout).unwrap();
    assert!(check.wait_with_output().unwrap().status.success());

    let bad = Command::new(exe).arg("verify-paper").env("AGBAND_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
