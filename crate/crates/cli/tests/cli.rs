use serde_json::Value;
use takiff::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["takiff"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn documented_examples() {
    let (code, out, _) = call(&["borel-count", "--type", "G", "--rank", "2"]);
    assert_eq!((code, out.as_str()), (0, "{\"classes\":16}\n"));
    let (code, out, _) = call(&["blocks", "--type", "A", "--rank", "2"]);
    assert_eq!((code, out.as_str()), (0, "{\"num_blocks\":3}\n"));
    let (code, out, _) = call(&["ext", "--type", "A", "--rank", "1", "--i", "1", "--source", "0,0", "--target", "0,1"]);
    assert_eq!((code, out.as_str()), (0, "{\"dim\":1}\n"));
    let (_, out, _) = call(&["ext", "--type", "A", "--rank", "1", "--i", "1", "--source", "0;0", "--target", "0;1"]);
    assert_eq!(out, "{\"dim\":1}\n");
}

#[test]
fn exit_codes() {
    let (code, out, err) = call(&["blocks", "--type", "H", "--rank", "2"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert_eq!(err.lines().count(), 1);
    let (code, _, err) = call(&["dual", "--type", "A", "--rank", "2", "--weight", "1,x;0"]);
    assert_eq!(code, 1);
    assert!(err.contains("malformed"));
    let (code, _, err) = call(&["dual", "--type", "A", "--rank", "2", "--weight", "1;0"]);
    assert_eq!(code, 1);
    assert!(err.contains("coordinates"));
    let (code, _, _) = call(&["delta-mult", "--type", "A", "--rank", "1", "--x", "-1;0", "--y", "1;0"]);
    assert_eq!(code, 1);
    let (code, _, err) = call(&["commutant", "--n", "3", "--r", "6"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);
    let (code, _, _) = call(&["no-such-command"]);
    assert_eq!(code, 1);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn tsv_output() {
    let (code, out, _) = call(&["--format", "tsv", "commutant", "--n", "2", "--r", "2", "--algebra", "gl"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "algebra\teven\tn\todd\tr\ttotal");
    assert_eq!(lines[1], "gl\t2\t2\t0\t2\t2");
}

#[test]
fn multiplicities_and_blocks() {
    let (_, out, _) = call(&["delta-mult", "--type", "A", "--rank", "1", "--x", "3;0"]);
    let ys: Vec<String> = json_lines(&out).iter().map(|v| v["y"].as_str().unwrap().to_string()).collect();
    assert_eq!(ys.len(), 4);
    for y in ["3;0", "5;-1", "1;-1", "3;-2"] {
        assert!(ys.iter().any(|z| z == y), "{y}");
    }
    let (_, out, _) = call(&["proj-mult", "--type", "A", "--rank", "1", "--x", "0;-1", "--y", "2;-2"]);
    assert_eq!(json_lines(&out)[0]["multiplicity"], 1);
    let (_, out, _) = call(&["block-label", "--type", "A", "--rank", "1", "--weight", "3;1"]);
    assert_eq!(json_lines(&out)[0]["label"], "odd_a");
    let (_, out, _) = call(&["dual", "--type", "A", "--rank", "2", "--weight", "1,0;0"]);
    assert_eq!(json_lines(&out)[0]["dual"], "0,1;1");
    let (_, out, _) = call(&["blocks", "--type", "A", "--rank", "1", "--labels"]);
    assert_eq!(json_lines(&out).len(), 3);
}

#[test]
fn linkage_chain_output() {
    let (code, out, _) = call(&["linkage", "--type", "A", "--rank", "2", "--weight", "2,0;1"]);
    assert_eq!(code, 0);
    let steps = json_lines(&out);
    assert!(!steps.is_empty());
    assert_eq!(steps[0]["from"], "2,0;1");
    assert_eq!(steps.last().unwrap()["to"], "0,1;0");
    for w in steps.windows(2) {
        assert_eq!(w[0]["to"], w[1]["from"]);
    }
    assert!(steps.iter().all(|s| s["multiplicity"].as_i64().unwrap() > 0));
}

#[test]
fn ideals_and_witnesses() {
    let (_, out, _) = call(&["ideals", "--type", "A", "--rank", "2"]);
    assert_eq!(json_lines(&out).len(), 5);
    let (_, out, _) = call(&["borel-classify", "--type", "A", "--rank", "2"]);
    assert_eq!(json_lines(&out).len(), 10);
    let (code, out, _) = call(&["shi-witness", "--type", "A", "--rank", "1", "--ideal", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["h"][0], "3/2");
    let (code, _, _) = call(&["shi-witness", "--type", "A", "--rank", "2", "--ideal", "0"]);
    assert_eq!(code, 1);
    let (_, out, _) = call(&["borel-count", "--type", "E", "--rank", "8", "--detail"]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["classes"], 50160);
    assert!(v["enumerated"].is_null());
}

#[test]
fn quivers_and_koszul() {
    let (_, out, _) = call(&["quiver", "--type", "A", "--rank", "2", "--block", "1,0;0", "--kind", "compare"]);
    assert_eq!(json_lines(&out)[0]["agree"], true);
    let (_, out, _) = call(&["quiver", "--type", "A", "--rank", "1", "--block", "0;0", "--kind", "compare"]);
    assert_eq!(json_lines(&out)[0]["agree"], false);
    let (code, out, _) = call(&["koszul-check", "--type", "A", "--rank", "2", "--block", "1,0;0", "--pairs", "5"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["diagonal"], true);
    let (code, _, _) = call(&["koszul-check", "--type", "A", "--rank", "2", "--block", "0,0;0"]);
    assert_eq!(code, 1);
}

#[test]
fn invariant_commands() {
    let (code, out, _) = call(&["thmIT", "--n", "2", "--r", "2"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["surjective"], false);
    assert_eq!(v["injective"], true);
    let (_, out, _) = call(&["phi-image", "--n", "2", "--r", "3"]);
    assert_eq!(json_lines(&out)[0]["image"], 6);
}

#[test]
fn dimension_cap_from_environment() {
    assert_eq!(takiff::limits_from_env(Some("17".into())).unwrap().dim_cap, 17);
    assert!(takiff::limits_from_env(Some("lots".into())).is_err());
    assert_eq!(takiff::limits_from_env(None).unwrap(), takiff_core::Limits::default());
}

#[test]
fn selftest_subset() {
    let (code, out, _) = call(&["selftest", "--only", "2,3"]);
    assert_eq!(code, 0);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["passed"] == true));
}

#[test]
fn byte_stable_output() {
    let args = ["borel-classify", "--type", "B", "--rank", "2"];
    assert_eq!(call(&args), call(&args));
}
