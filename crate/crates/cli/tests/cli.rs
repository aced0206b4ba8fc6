use std::process::Command;

fn adinkra(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_adinkra")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn enumerate_counts_and_limits() {
    assert_eq!(adinkra(&["enumerate", "4"]).1, "990\n");
    assert_eq!(adinkra(&["enumerate", "5", "--count-only"]).1, "395094\n");
    let (code, out, err) = adinkra(&["enumerate", "7"]);
    assert_ne!(code, 0);
    assert!(out.is_empty());
    assert!(err.contains("not supported"));
    let (code, _, err) = adinkra(&["enumerate", "6", "--count-only"]);
    assert_ne!(code, 0);
    assert!(err.contains("--force"));
}

#[test]
fn enumerate_writes_json_lines() {
    let path = std::env::temp_dir().join(format!("adinkra-enum-{}.jsonl", std::process::id()));
    let (code, out, _) = adinkra(&["enumerate", "3", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "38\n"));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 38);
    let first: adinkra::HeightFn = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first.n(), 3);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn image_of_worked_heights() {
    let (code, out, _) = adinkra(&["image", "--pins", "all-white@1"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches(": O  (0,0,0)").count(), 5);

    let (_, out, _) = adinkra(&["image", "--preset", "fully-extended"]);
    assert_eq!(out.matches(": O  (0,0,0)").count(), 5);

    let (_, out, _) = adinkra(&["image", "--pins", "30@4,29@4,27@4,23@4,15@4"]);
    assert_eq!(out.matches("e∞ - e4  (1,3,0)").count(), 5);
    assert!(out.contains("degree 8"));
}

#[test]
fn image_reads_height_files_and_reports_bad_edges() {
    let dir = std::env::temp_dir();
    let good = dir.join(format!("adinkra-good-{}.json", std::process::id()));
    let values: Vec<u32> = (0..32u32).map(|b| b.count_ones()).collect();
    std::fs::write(&good, serde_json::json!({"n": 5, "values": values}).to_string()).unwrap();
    let (code, out, _) = adinkra(&["image", "--height", good.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["divisor"]["degree"], 8);

    let bad = dir.join(format!("adinkra-bad-{}.json", std::process::id()));
    let mut values = values;
    values[31] = 2;
    std::fs::write(&bad, serde_json::to_string(&values).unwrap()).unwrap();
    let (code, _, err) = adinkra(&["image", "--height", bad.to_str().unwrap()]);
    assert_ne!(code, 0);
    assert!(err.contains("edge"), "{err}");
    std::fs::remove_file(good).unwrap();
    std::fs::remove_file(bad).unwrap();
}

#[test]
fn census_table_and_stability() {
    let (code, csv, _) = adinkra(&["census", "--curve", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("k,a,count\n"));
    assert!(csv.contains("\n1,0,83830\n"));
    assert!(csv.contains("\n1,-8,24\n"));
    assert_eq!(csv.lines().count(), 18);
    assert_eq!(adinkra(&["census", "--curve", "1", "--format", "csv"]).1, csv);

    let (_, json, _) = adinkra(&["census", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert!(v.as_array().unwrap().iter().all(|t| t["total"] == 395_094));
}

#[test]
fn classes_and_gamma() {
    let (_, out, _) = adinkra(&["classes", "4"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 24);
    assert_eq!(adinkra(&["classes", "4"]).1, out);

    let (_, dot, _) = adinkra(&["gamma", "3", "--format", "dot"]);
    assert!(dot.starts_with("digraph gamma3"));
    let (_, json, _) = adinkra(&["gamma", "4", "--reduced"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 24);
    assert_eq!(v["edges"].as_array().unwrap().len(), 40);
}

#[test]
fn verify_reports_and_exit_codes() {
    for suite in ["counts", "geometry"] {
        let (code, out, _) = adinkra(&["verify", "--suite", suite]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(adinkra(&["verify", "--suite", suite]).1, out);
    }
    let (code, out, _) = adinkra(&["verify", "--suite", "theorem"]);
    assert_eq!(code, 0);
    assert!(out.contains("a = 8: 24, a = -8: 24"));
    let (code, _, _) = adinkra(&["verify", "--suite", "nonsense"]);
    assert_ne!(code, 0);
}
