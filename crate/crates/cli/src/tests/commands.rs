use std::path::{Path, PathBuf};

use crate::args::main_with;
use crate::problem::{eval_affine, parse_param};
use crate::report::{emit, Format};
use crate::{exit_code, run, CliError, Command, ProblemSpec, RunArgs, SpecError};
use gkzf_core::exact::parse_rat;
use gkzf_core::GkzError;
use serde_json::{json, Value};

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(format!("{}.toml", name))
}

fn load(name: &str) -> ProblemSpec {
    ProblemSpec::load(&problem(name), &[]).unwrap()
}

fn doc(name: &str, cmd: Command) -> Value {
    run(cmd, &load(name), &RunArgs::default()).unwrap()
}

fn gkzf(args: &[&str]) -> (i32, String) {
    let out = main_with(std::iter::once("gkzf").chain(args.iter().copied()), 1);
    (out.code as i32, out.stdout)
}

#[test]
fn second_hexagon_weight_theorem_pattern() {
    let d = doc("hexagon-ex33", Command::Exponents);
    let ex = d["exponents"].as_array().unwrap();
    assert_eq!(ex.len(), 3);
    let pattern: Vec<bool> = ex.iter().map(|e| e["theorem"].as_bool().unwrap()).collect();
    assert_eq!(pattern, [true, true, false]);
    assert_eq!(ex[0]["v"], json!(["0", "0", "0", "0", "0", "-1"]));
    assert_eq!(ex[1]["v"], json!(["0", "1", "-3/2", "1", "0", "-3/2"]));
    assert_eq!(ex[2]["v"], json!(["0", "0", "1/2", "-1", "1", "-3/2"]));
}

#[test]
fn case_three_has_empty_core() {
    let d = doc("grid-case3", Command::Triangulation);
    assert_eq!(d["c_w"], json!([]));
    assert_eq!(d["core_basis"], json!([]));
    assert_eq!(d["unimodular"], json!(true));
}

#[test]
fn k3_case_one_exponents() {
    let d = doc("k3-case1", Command::Exponents);
    assert_eq!(d["beta_in_core"], json!(false));
    let ex = d["exponents"].as_array().unwrap();
    assert_eq!(ex.len(), 3);
    let v3 = ex.iter().find(|e| e["v"] == json!(["0", "0", "1/2", "0", "1/2", "0", "1/2", "0", "0"])).unwrap();
    assert_eq!(v3["multiplicity"], json!(4));
    assert_eq!(v3["nsupp"], json!([]));
}

#[test]
fn polygon_pulls_from_first_vertex() {
    let d = doc("pentagon", Command::Exponents);
    assert_eq!(d["c_w"], json!([1]));
    let e = &d["exponents"][0];
    assert_eq!(e["v"], json!(["-1", "0", "0", "0", "0"]));
    assert_eq!(e["nsupp"], json!([1]));
    assert_eq!(e["theorem"], json!(true));
    let spec = ProblemSpec::load(&problem("pentagon"), &[("m".into(), parse_rat("3").unwrap())]).unwrap();
    let d = run(Command::Exponents, &spec, &RunArgs::default()).unwrap();
    assert_eq!(d["exponents"][0]["v"], json!(["-3", "0", "0", "0", "0"]));
    assert_eq!(d["exponents"][0]["theorem"], json!(true));
}

#[test]
fn solve_output_reverifies() {
    for name in ["hexagon-ex32", "hexagon-ex33", "grid-case1", "k3-case5", "pentagon"] {
        let spec = load(name);
        let solved = run(Command::Solve, &spec, &RunArgs::default()).unwrap();
        let text = emit(&solved, Format::JsonLike);
        let args = RunArgs { solutions: Some(text), ..RunArgs::default() };
        let v = run(Command::Verify, &spec, &args).unwrap();
        assert_eq!(v["passed"], json!(true), "{}", name);
        for e in v["exponents"].as_array().unwrap() {
            assert_eq!(e["toric_residuals"], json!(0));
            assert!(e["toric_checked"].as_u64().unwrap() > 0);
        }
    }
}

#[test]
fn tampered_solutions_fail_verification() {
    let spec = load("hexagon-ex32");
    let mut solved = run(Command::Solve, &spec, &RunArgs::default()).unwrap();
    let terms = solved["exponents"][1]["solutions"][0]["terms"].as_array_mut().unwrap();
    let origin = terms.iter_mut().find(|t| t["shift"].as_array().unwrap().iter().all(|x| x == 0)).unwrap();
    origin["coeff"] = json!("12345");
    let args = RunArgs { solutions: Some(solved.to_string()), ..RunArgs::default() };
    match run(Command::Verify, &spec, &args) {
        Err(CliError::Unverified(d)) => assert_eq!(d["passed"], json!(false)),
        other => panic!("expected a verification failure, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let spec = load("hexagon-ex33");
    let one = run(Command::Solve, &spec, &RunArgs { threads: 1, ..RunArgs::default() }).unwrap();
    let four = run(Command::Solve, &spec, &RunArgs { threads: 4, ..RunArgs::default() }).unwrap();
    assert_eq!(emit(&one, Format::JsonLike), emit(&four, Format::JsonLike));
    assert_eq!(emit(&one, Format::Text), emit(&run(Command::Solve, &spec, &RunArgs::default()).unwrap(), Format::Text));
}

#[test]
fn parse_errors_carry_a_position() {
    let text = "format = \"gkzf-problem/1\"\nA = [[1, 1]\nw = [0, 1]\nbeta = [1]\n";
    match ProblemSpec::parse(text, &[]) {
        Err(SpecError::Syntax(m)) => assert!(m.contains("line 2") || m.contains("line 3"), "{}", m),
        other => panic!("{:?}", other.map(|_| ())),
    }
    let no_header = "A = [[1, 1]]\nw = [0, 1]\nbeta = [1]\nformat = \"gkzf-problem/1\"\n";
    assert!(matches!(ProblemSpec::parse(no_header, &[]), Err(SpecError::Invalid(_))));
    let unknown = "format = \"gkzf-problem/1\"\nA = [[1, 1]]\nw = [0, 1]\nbeta = [1]\nextra = 1\n";
    assert!(matches!(ProblemSpec::parse(unknown, &[]), Err(SpecError::Syntax(_))));
}

#[test]
fn dimension_mismatches_are_rejected() {
    let text = "format = \"gkzf-problem/1\"\nA = [[1, 1, 1], [0, 1, 2]]\nw = [0, 1]\nbeta = [1, 0]\n";
    assert!(matches!(ProblemSpec::parse(text, &[]), Err(SpecError::Gkz(GkzError::DimensionMismatch(_)))));
    let text = "format = \"gkzf-problem/1\"\nA = [[1, 1, 1], [0, 1, 2]]\nw = [0, 1, 3]\nbeta = [1]\n";
    assert!(ProblemSpec::parse(text, &[]).is_err());
}

#[test]
fn affine_parameters() {
    let params = [("c".to_string(), parse_rat("1/3").unwrap())].into_iter().collect();
    assert_eq!(eval_affine("c", &params).unwrap(), parse_rat("1/3").unwrap());
    assert_eq!(eval_affine("2*c - 1/2", &params).unwrap(), parse_rat("1/6").unwrap());
    assert_eq!(eval_affine("-c+1", &params).unwrap(), parse_rat("2/3").unwrap());
    assert!(eval_affine("d", &params).is_err());
    assert_eq!(parse_param("c=1/3").unwrap(), ("c".to_string(), parse_rat("1/3").unwrap()));
    assert!(parse_param("c").is_err());
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&CliError::Gkz(GkzError::NonGenericWeight("x".into()))), 2);
    assert_eq!(exit_code(&CliError::Gkz(GkzError::PoleAtOrigin(vec![0]))), 3);
    assert_eq!(exit_code(&CliError::Gkz(GkzError::DegreeCapReached(1))), 4);

    let p = problem("hexagon-ex32");
    let p = p.to_str().unwrap();
    let (code, out) = gkzf(&["exponents", p, "--param", "c=1/3"]);
    assert_eq!(code, 0);
    assert!(out.contains("v: [0, 0, 0, 1/3, 0, 0]"));
    let (code, out) = gkzf(&["pairs", p, "--format", "json-like"]);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<Value>(&out).is_ok());
    let (code, _) = gkzf(&["solve", problem("grid-case1").to_str().unwrap(), "--dual-cap", "1"]);
    assert_eq!(code, 4);
    let (code, _) = gkzf(&["frobnicate", p]);
    assert_eq!(code, 1);
    let (code, out) = gkzf(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("--check-window"));

    let dir = std::env::temp_dir().join(format!("gkzf-frontend-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let flat = dir.join("flat.toml");
    std::fs::write(&flat, "format = \"gkzf-problem/1\"\nA = [[1, 1, 1], [0, 1, 2]]\nw = [0, 0, 0]\nbeta = [1, 0]\n").unwrap();
    let (code, _) = gkzf(&["initial", flat.to_str().unwrap()]);
    assert_eq!(code, 2);
}
