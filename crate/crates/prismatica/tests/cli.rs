use std::process::Command;

use serde_json::Value;

use prismatica::cli::main_with_args;

fn run(args: &str) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut argv = vec!["prismatica".to_string(), "--output".to_string(), out.display().to_string()];
    argv.extend(args.split_whitespace().map(String::from));
    let code = main_with_args(argv);
    let report = std::fs::read_to_string(&out).map(|t| serde_json::from_str(&t).unwrap()).unwrap_or(Value::Null);
    (code, report)
}

#[test]
fn reports_carry_the_envelope() {
    let (code, r) = run("validate --fixture torus7");
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "validate");
    assert_eq!(r["ok"], true);
    assert_eq!(r["input"]["fixture"], "torus7");
    assert_eq!(r["nondegenerate_counts"].as_array().unwrap()[..3], [7, 21, 14]);
}

#[test]
fn homology_of_the_projective_plane() {
    let (code, r) = run("homology --fixture rp2_6 --construction Pbar --max-degree 2");
    assert_eq!(code, 0);
    let h = r["homology"].as_array().unwrap();
    assert_eq!((h[0]["betti"].as_u64(), h[1]["betti"].as_u64()), (Some(1), Some(0)));
    assert_eq!(h[1]["torsion"], serde_json::json!([2]));
    assert_eq!(h[2]["reliable"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run("gauge check --fixture triangle --gauge z5").0, 0);
    assert_eq!(run("classify --fixture triangle --gauge s3 --deg 1,0,0").0, 0);
    assert_eq!(run("gauge transport --fixture triangle --gauge z5").0, 1);
    assert_eq!(run("star --fixture circle").0, 1);
    assert_eq!(run("validate --fixture nowhere").0, 2);
    assert_eq!(run("gauge check --fixture triangle --gauge missing.json").0, 2);
    assert_eq!(run("prism enumerate --fixture circle --construction simplicial").0, 2);
    assert_eq!(run("homology --fixture circle --construction Q").0, 2);
}

#[test]
fn input_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    std::fs::write(&path, r#"{"vertices":["a","b","c","d"],"simplices":[[0,1],[1,2],[2,3],[0,3]]}"#).unwrap();
    let (code, r) = run(&format!("homology --input {} --construction P --max-degree 2", path.display()));
    assert_eq!(code, 0);
    let betti: Vec<u64> = r["homology"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti[..2], [1, 1]);
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(run(&format!("validate --input {}", path.display())).0, 2);
}

#[test]
fn seeded_runs_repeat() {
    for args in ["gauge transport --fixture triangle --gauge so2 --seed 7", "classify --fixture triangle --gauge z5 --deg 1,1,0 --seed 3"] {
        assert_eq!(run(args), run(args));
    }
    let a = run("gauge transport --fixture triangle --gauge so2 --seed 1").1;
    let b = run("gauge transport --fixture triangle --gauge so2 --seed 2").1;
    assert_ne!(a["transport"], b["transport"]);
}

#[test]
fn binary_writes_to_stdout() {
    let bin = env!("CARGO_BIN_EXE_prismatica");
    let out = Command::new(bin).args(["validate", "--fixture", "circle"]).env("PRISMATICA_THREADS", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["command"], "validate");
    let bad = Command::new(bin).args(["validate", "--fixture", "circle"]).env("PRISMATICA_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let err = Command::new(bin).args(["validate", "--fixture", "nowhere"]).output().unwrap();
    assert_eq!(err.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&err.stderr).unwrap();
    assert!(e["error"].as_str().unwrap().contains("nowhere"));
}
