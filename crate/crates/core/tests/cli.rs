use orbibraid::braid::{BraidWord, OrbifoldSignature};
use orbibraid::cli::run;
use orbibraid::coxeter::CoxeterDiagram;
use orbibraid::embeddings::{equal_zk, table1_embedding, Table1Row};
use orbibraid::render::{render_ascii, render_svg, RenderOptions};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["orbibraid"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, out, err) = cli(&a);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn eq_and_nf() {
    assert_eq!(cli(&["eq", "A", "2", "g1 g2 g1", "--", "g2 g1 g2"]).0, 0);
    assert_eq!(cli(&["eq", "A", "2", "g1", "--", "g2"]).0, 1);
    assert_eq!(cli(&["eq", "B", "2", "g1 g2 g1 g2", "--", "g2 g1 g2 g1"]).0, 0);
    // The normal form word parses back to an equal element.
    let w = "g2 g1' g3 g2 g2 g1 g3'";
    let (code, v) = json(&["nf", "D", "4", w]);
    assert_eq!(code, 0);
    let back = v["word"].as_str().unwrap();
    assert_eq!(cli(&["eq", "D", "4", w, "--", back]).0, 0);
}

#[test]
fn delta_round_trip() {
    let (_, v) = json(&["delta", "D", "5"]);
    let word = v["word"].as_str().unwrap();
    assert_eq!(word.split_whitespace().count(), 20);
    let (_, nf) = json(&["nf", "D", "5", word]);
    assert_eq!(nf["nf"]["inf"], 1);
    assert!(nf["nf"]["factors"].as_array().unwrap().is_empty());
}

#[test]
fn embed_round_trip() {
    let (code, v) = json(&["embed", "D", "3", "g1 g3 g2'"]);
    assert_eq!(code, 0);
    let sig: OrbifoldSignature = v["signature"].as_str().unwrap().parse().unwrap();
    let b = BraidWord::parse(sig, v["word"].as_str().unwrap()).unwrap();
    let spec = table1_embedding(Table1Row::D, 3).unwrap();
    let expected = spec.apply(&spec.diagram.parse_word("g1 g3 g2'").unwrap()).unwrap();
    assert!(equal_zk(&b, &expected).unwrap());
}

#[test]
fn present() {
    let (code, v) = json(&["present", "Dt3"]);
    assert_eq!(code, 0);
    let d: CoxeterDiagram = "Dt3".parse().unwrap();
    assert_eq!(v, d.to_json());
    let (_, out, _) = cli(&["present", "--sig", "n=3;left=cone2;right=cone2"]);
    assert_eq!(out.lines().count(), 1 + 8);
    assert!(out.contains("R4L: s1 tL s1 tL = tL s1 tL s1"));
    assert!(out.contains("R6R(p=2): tR tR = 1\n"));
}

#[test]
fn verify_and_verify_all() {
    let (code, v) = json(&["verify", "B", "3"]);
    assert_eq!(code, 0);
    assert!(v.as_array().unwrap().iter().all(|r| r["certified"] == true));
    let (code, out, _) = cli(&["verify-all", "--nmax", "3", "--depth", "14"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 1 + 2 + 2 + 1 + 2 + 1 + 1 + 2);
    assert!(out.lines().skip(1).all(|l| l.ends_with("yes")));
    // D̃_3 needs more than twelve steps for one relation.
    let (code, out, _) = cli(&["verify", "Dt", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn coset_weyl_map() {
    let (code, v) = json(&["coset", "--row", "Dt", "--n", "4", "tL s1 tR"]);
    assert_eq!(code, 0);
    assert_eq!(v["class"], v["via_weyl"]);
    assert_eq!(v["in_subgroup"], false);
    let (_, v) = json(&["weyl", "--row", "D", "--n", "3", "tL s1"]);
    assert!(v.get("Finite").is_some());
    let (code, v) = json(&["map", "fill", "left", "--sig", "n=3;left=puncture", "tL s1 tL'"]);
    assert_eq!(code, 0);
    assert_eq!(v["signature"], "n=3;left=cone2");
    let sig: OrbifoldSignature = v["signature"].as_str().unwrap().parse().unwrap();
    assert_eq!(BraidWord::parse(sig, v["word"].as_str().unwrap()).unwrap().len(), 3);
    let (_, v) = json(&["map", "erase", "left", "--sig", "n=3;left=puncture", "tL s1 tL'"]);
    assert_eq!(v["word"], "s1");
}

#[test]
fn act_and_distinct() {
    let (code, out, _) = cli(&["act", "--sig", "n=2", "s1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "x1 -> x1 x2 x1^-1\nx2 -> x1\n");
    let (code, out, _) = cli(&["distinct", "--sig", "n=3;left=puncture", "s1", "--", "s2"]);
    assert_eq!((code, out.as_str()), (0, "proven distinct\n"));
    let (code, _, _) = cli(&["distinct", "--sig", "n=3;left=puncture", "tL s1 tL s1", "--", "s1 tL s1 tL"]);
    assert_eq!(code, 1);
    let (code, out, _) = cli(&["distinct", "--sig", "n=3;left=cone2", "tL", "--", "tL'"]);
    assert_eq!(code, 1);
    assert!(out.contains("not well defined"));
}

#[test]
fn render_golden() {
    let sig: OrbifoldSignature = "n=2;left=cone2".parse().unwrap();
    let w = BraidWord::parse(sig, "tL s1 tL").unwrap();
    assert_eq!(render_ascii(&w), include_str!("golden/k2_tl_s1_tl.txt"));
    assert_eq!(render_svg(&w, &RenderOptions::default()), include_str!("golden/k2_tl_s1_tl.svg"));
    let (code, out, _) = cli(&["render", "--sig", "n=2;left=cone2", "tL s1 tL"]);
    assert_eq!((code, out.as_str()), (0, include_str!("golden/k2_tl_s1_tl.txt")));
    let path = std::env::temp_dir().join(format!("orbibraid-{}.svg", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(cli(&["render", "--sig", "n=2;left=cone2", "tL s1 tL", "--svg", p]).0, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), include_str!("golden/k2_tl_s1_tl.svg"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn check_commands() {
    let (code, out, _) = cli(&["thm21", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("Delta h1 Delta^-1: = h2"));
    assert!(out.contains("Delta^2 central"));
    assert_eq!(cli(&["thm22", "3"]).0, 0);
    assert_eq!(cli(&["thm22", "4"]).0, 1);
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["eq", "A", "2", "g9", "--", "g1"]).0, 2);
    assert_eq!(cli(&["weyl", "s1"]).0, 2);
    assert_eq!(cli(&["nf", "At", "3", "g1"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_orbibraid");
    let st = std::process::Command::new(bin).args(["eq", "A", "2", "g1 g2 g1", "--", "g2 g1 g2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&st.stdout), "equal\n");
    let st = std::process::Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}
