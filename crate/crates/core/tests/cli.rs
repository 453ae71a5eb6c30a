use std::io::Write;
use std::process::{Command, Stdio};

use graphvar::cli::run;
use graphvar::graph::Graph;
use graphvar::poly::MultilinearPoly;
use serde_json::Value;

const K4: &str = "1 2, 1 3, 1 4, 2 3, 2 4, 3 4";

fn invoke(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("graphvar").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = invoke(args, "");
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn treepoly_on_k4() {
    let v = json_of(&["treepoly", "--json", "--edges", K4]);
    let terms = v["polynomial"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 12);
    for t in terms {
        assert_eq!(t["edges"].as_array().unwrap().len(), 3);
        assert_eq!(t["coeff"].as_i64().unwrap().abs(), 1);
    }
    assert!(v["pretty"]
        .as_str()
        .unwrap()
        .starts_with("m_{12} m_{14} m_{23}"));
}

#[test]
fn emitted_polynomial_round_trips() {
    let (_, out, _) = invoke(&["treepoly", "--json", "--edges", K4], "");
    let v: Value = serde_json::from_str(&out).unwrap();
    let g = Graph::parse(&K4.replace(',', "\n")).unwrap();
    let p = MultilinearPoly::from_json(&g, &v["polynomial"]).unwrap();
    assert_eq!(p.to_json(&g).to_string(), v["polynomial"].to_string());
}

#[test]
fn components_on_k4() {
    let v = json_of(&["components", "--json", "--edges", K4]);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|c| c["dim"] == 8));
    assert_eq!(v["cm_certificate"], false);
}

#[test]
fn rigidity_on_four_gon() {
    let v = json_of(&["rigidity", "--json", "--edges", "1 2, 2 3, 3 4, 4 1"]);
    assert_eq!(v["independent"], true);
    assert_eq!(v["rigid"], false);
    assert_eq!(v["rank"], 4);
    assert_eq!(v["circuits"].as_array().unwrap().len(), 0);
}

#[test]
fn circuits_and_cpl_and_ideal() {
    let k5: String = (1..=5)
        .flat_map(|a| (a + 1..=5).map(move |b| format!("{a} {b}")))
        .collect::<Vec<_>>()
        .join(",");
    let v = json_of(&["circuits", "--json", "--edges", &k5]);
    assert_eq!(v["circuits"].as_array().unwrap().len(), 20);
    let v = json_of(&["cpl", "--json", "--edges", K4]);
    assert_eq!(v["coupled_trees"].as_array().unwrap().len(), 12);
    let v = json_of(&["ideal", "--json", "--edges", &k5]);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 20);
    assert!(gens.iter().all(|g| g["degree"] == 3 || g["degree"] == 4));
}

#[test]
fn verify_is_reproducible() {
    let args = [
        "verify",
        "--json",
        "--seed",
        "17",
        "--prime",
        "1000003",
        "--samples",
        "10",
        "--edges",
        K4,
    ];
    let (c1, a, _) = invoke(&args, "");
    let (c2, b, _) = invoke(&args, "");
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["vanishing"], true);
    assert_eq!(v["seed"], 17);
    assert_eq!(v["prime"], 1_000_003);
    assert_eq!(v["ranks"]["slope"], 5);
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["bogus", "--edges", K4], "").0, 2);
    assert_eq!(invoke(&["rigidity"], "").0, 2);
    assert_eq!(invoke(&["rigidity", "/no/such/file"], "").0, 2);
    assert_eq!(invoke(&["rigidity", "--edges", "1 1"], "").0, 2);
    let (code, _, err) = invoke(&["treepoly", "--edges", "1 2, 2 3"], "");
    assert_eq!(code, 1);
    assert!(err.contains("tree polynomial undefined"));
    let (code, _, err) = invoke(&["circuits", "--max-edges", "5", "--edges", K4], "");
    assert_eq!(code, 1);
    assert!(err.contains("cap 5"), "{err}");
    let (code, _, err) = invoke(&["verify", "--prime", "65536", "--edges", K4], "");
    assert_eq!(code, 1);
    assert!(err.contains("65536"));
    assert_eq!(invoke(&["--help"], "").0, 0);
}

#[test]
fn reads_standard_input() {
    let (code, out, _) = invoke(&["rigidity", "-"], "# K4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    assert_eq!(code, 0);
    assert!(out.contains("rank: 5"));
    assert!(out.contains("rigid: true"));
}

#[test]
fn binary_end_to_end() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_graphvar"))
        .args(["treepoly", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"1 2\n2 3\n3 4\n4 5\n1 3\n1 4\n2 4\n3 5\n")
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("24 terms"), "{text}");

    let status = Command::new(env!("CARGO_BIN_EXE_graphvar"))
        .args(["nonsense"])
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
