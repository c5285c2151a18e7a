use envlab::cli::run_with;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_with(std::iter::once("envlab").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn counts_report() {
    let (code, out) = run(&["counts", "--a", "5", "--b", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("cusps 1/1"), "{out}");
    assert!(out.contains("tangencies 1/1"), "{out}");
    assert!(out.contains("crossings 3/3"), "{out}");
}

#[test]
fn classify_report() {
    let (code, out) = run(&["classify", "--a", "3", "--b", "4", "--r", "2.5"]);
    assert_eq!(code, 0);
    assert!(out.contains("Butterfly") && out.contains("SimpleCusp"), "{out}");
}

#[test]
fn svg_and_json_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("e.svg");
    let json = dir.path().join("e.json");
    let (code, _) = run(&["envelope", "--a", "-2", "--b", "3", "--r", "1.2", "--svg", svg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
    let (code, _) = run(&["envelope", "--a", "-2", "--b", "3", "--r", "1.2", "--json", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["cuts"].as_array().unwrap().len(), 10);
    let clock = dir.path().join("c.svg");
    let (code, out) = run(&["clock", "--n", "256", "--svg", clock.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(clock.exists());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["envelope", "--a", "1", "--b", "1", "--json", "/dev/null"]).0, 2);
    assert_eq!(run(&["envelope", "--a", "3", "--b", "1"]).0, 2);
    assert_eq!(run(&["envelope", "--a", "3", "--b", "1", "--svg", "/dev/null", "--json", "/dev/null"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn unwritable_output_exits_1() {
    let (code, _) = run(&["envelope", "--a", "3", "--b", "1", "--svg", "/nonexistent/dir/x.svg"]);
    assert_eq!(code, 1);
}

#[test]
fn standard_and_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    let (code, out) = run(&["standard", "--model", "swallowtail", "--z", "-1", "--json", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(run(&["standard", "--model", "swallowtail", "--z", "-1"]).0, 2);
    assert!(out.contains("cusps 2 crossings 1"), "{out}");
    let (code, out) = run(&["crossings", "--a", "5", "--b", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("crossings 3"), "{out}");
}
