use std::process::{Command, Output};

fn crossmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossmap"))
        .args(args)
        .output()
        .unwrap()
}

fn lines(o: &Output) -> Vec<String> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn enumerate() {
    assert_eq!(lines(&crossmap(&["enumerate", "--n", "3"])).len(), 5);
    assert_eq!(
        lines(&crossmap(&["enumerate", "--n", "2", "--partial"])).len(),
        5
    );
    assert_eq!(lines(&crossmap(&["enumerate", "--n", "0"])), vec!["0:"]);
    assert_eq!(
        lines(&crossmap(&["enumerate", "--n", "6", "--limit", "4"])).len(),
        4
    );
    assert_eq!(
        lines(&crossmap(&["enumerate", "--n", "2", "--partial"])),
        vec!["2:", "2:2", "2:1", "2:1,2", "2:1/2"]
    );
}

#[test]
fn count() {
    let one = |args: &[&str]| lines(&crossmap(args)).join("");
    assert_eq!(
        one(&["count", "--k", "3", "--n", "6", "--family", "C"]),
        "202"
    );
    assert_eq!(
        one(&["count", "--k", "2", "--n", "5", "--family", "E"]),
        "21"
    );
    assert_eq!(
        one(&["count", "--k", "1", "--n", "4", "--family", "C"]),
        "1"
    );
    assert_eq!(
        one(&["count", "--k", "3", "--n", "5", "--family", "partial-E"]),
        "202"
    );
}

#[test]
fn verify_identity() {
    let o = crossmap(&["verify-identity", "--k", "3", "--n-max", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let l = lines(&o);
    assert_eq!(l.len(), 8);
    assert!(l.iter().all(|x| x.ends_with("OK")));

    let o = crossmap(&["verify-identity", "--k", "1", "--n-max", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(lines(&o).iter().all(|x| x.ends_with("OK")));
}

#[test]
fn verify_identity_fault_path() {
    let o = crossmap(&[
        "verify-identity",
        "--k",
        "2",
        "--n-max",
        "3",
        "--inject-fault",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(lines(&o).iter().all(|x| x.ends_with("FAIL")));
    let o = crossmap(&["bell-check", "--n-max", "2", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn map() {
    let o = crossmap(&["map", "--input", "9:1,4,7,9/2,5/3/6"]);
    assert_eq!(lines(&o), vec!["10:1,5/2,6,7,10/3,4,8/9"]);
    let o = crossmap(&["map", "--input", "10:1,5/2,6,7,10/3,4,8/9", "--reverse"]);
    assert_eq!(lines(&o), vec!["9:1,4,7,9/2,5/3/6"]);
    let o = crossmap(&["map", "--input", "3:"]);
    assert_eq!(lines(&o), vec!["4:1/2/3/4"]);
}

#[test]
fn map_witness_table() {
    let o = crossmap(&["map", "--input", "9:1,4,7,9/2,5/3/6", "--witnesses", "3"]);
    let l = lines(&o);
    assert_eq!(l[1], "kind,k,enhanced_source,classical_image");
    assert!(l.contains(&"crossing,3,1,1".to_string()));
    assert!(l.contains(&r#"{"kind":"crossing","mode":"enhanced","arcs":[[1,4],[2,5],[4,7]]} -> {"kind":"crossing","mode":"classical","arcs":[[1,5],[2,6],[4,8]]}"#.to_string()));
    for row in &l[2..8] {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[2], f[3], "{row}");
    }
}

#[test]
fn oeis_and_bell_checks() {
    let o = crossmap(&["oeis-check", "--id", "A108307"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o), vec!["OK (10 terms compared)"]);
    let o = crossmap(&["bell-check", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o).len(), 9);
    assert!(lines(&o).iter().all(|x| x.ends_with("OK")));
}

#[test]
fn render_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.svg");
    let o = crossmap(&[
        "render",
        "--input",
        "9:1,4,7,9/2,5/3/6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    let o = crossmap(&["render", "--input", "1:1", "--pi-color", "red"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("stroke=\"red\""));
}

#[test]
fn table_and_distribution() {
    let o = crossmap(&["table", "--family", "E", "--k", "2", "--n-max", "4"]);
    assert_eq!(
        lines(&o),
        vec![
            "family,k,n,value",
            "E,2,0,1",
            "E,2,1,1",
            "E,2,2,2",
            "E,2,3,4",
            "E,2,4,9"
        ]
    );
    let o = crossmap(&[
        "table", "--family", "Bell", "--n-max", "3", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][3]["value"], 5);
    assert_eq!(v["rows"][3]["family"], "Bell");
    let o = crossmap(&["distribution", "--n", "4", "--k-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_reports_round_trip() {
    let o = crossmap(&["verify-identity", "--k", "2", "--n-max", "3", "--json"]);
    let reports: Vec<crossmap::counting::IdentityReport> =
        serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports.len(), 4);
    assert_eq!(reports[2].rhs_terms, vec![1, 2, 2]);
    let again = serde_json::to_string_pretty(&reports).unwrap();
    assert_eq!(again.trim(), String::from_utf8_lossy(&o.stdout).trim());
}

#[test]
fn exit_codes() {
    assert_eq!(crossmap(&["count", "--k", "2"]).status.code(), Some(2));
    assert_eq!(
        crossmap(&["map", "--input", "3:1,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        crossmap(&["map", "--input", "3:1", "--reverse"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        crossmap(&["count", "--k", "2", "--n", "13", "--family", "C"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        crossmap(&["count", "--k", "0", "--n", "3", "--family", "C"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        crossmap(&["oeis-check", "--id", "A999999"]).status.code(),
        Some(2)
    );
    let cache = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_crossmap"))
        .args([
            "oeis-check",
            "--id",
            "A000108",
            "--fetch",
            "--base-url",
            "http://127.0.0.1:1",
        ])
        .env("CROSSMAP_CACHE_DIR", cache.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(crossmap(&["--help"]).status.code(), Some(0));
}
