use std::process::{Command, Output};

fn apnlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apnlab"))
        .args(args)
        .env_remove("APNLAB_MAX_N")
        .output()
        .expect("spawn apnlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table3_csv() {
    let o = apnlab(&["table3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "4,0");
    assert_eq!(lines[5], "1344,1560,1792,1612,1344,0");
    for (i, l) in lines.iter().enumerate() {
        assert!(l.ends_with(",0") || i == 0);
    }
}

#[test]
fn hexanomial_count() {
    let o = apnlab(&["hexanomial", "count", "--m", "5", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "330\n");
    let o = apnlab(&[
        "hexanomial",
        "count",
        "--n",
        "12",
        "--k",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count_formula"], 1792);
}

#[test]
fn trinomial_apn_exit_codes() {
    let o = apnlab(&[
        "trinomial",
        "--m",
        "4",
        "--k",
        "1",
        "--check-apn",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["differential_uniformity"], 2);

    let o = apnlab(&["trinomial", "--m", "3", "--k", "1", "--check-apn"]);
    assert_eq!(o.status.code(), Some(1));

    let o = apnlab(&[
        "trinomial",
        "--m",
        "2",
        "--k",
        "1",
        "--all",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bent_components"], 10);
    assert_eq!(v["closed_form_ok"], true);
}

#[test]
fn lemmas_pass_on_n6() {
    let o = apnlab(&["lemmas", "--m", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["field", "info", "--n", "8", "--m", "4"][..],
        &["field", "info"],
        &["field", "info", "--n", "7"],
        &["hexanomial", "build", "--m", "2", "--k", "1", "--C", "zz"],
        &[
            "hexanomial",
            "build",
            "--m",
            "2",
            "--k",
            "1",
            "--C",
            "2",
            "--A",
            "1",
        ],
        &["hexanomial", "enumerate", "--m", "2", "--k", "4"],
        &["trinomial", "--m", "3", "--k", "1", "--hyperplanes"],
        &["bogus"],
        &["table3", "--format", "xml"],
    ] {
        assert_eq!(apnlab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn degree_cap_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_apnlab"))
        .args(["field", "info", "--n", "6"])
        .env("APNLAB_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("6"));
    assert_eq!(
        apnlab(&["field", "info", "--n", "26"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic_across_threads() {
    let base = [
        "hexanomial",
        "verify",
        "--m",
        "3",
        "--k",
        "2",
        "--format",
        "json",
    ];
    let one = apnlab(&[&base[..], &["--threads", "1"]].concat());
    let four = apnlab(&[&base[..], &["--threads", "4"]].concat());
    let again = apnlab(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["count_formula"], 18);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 18);
}

#[test]
fn out_flag_and_vbf_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let lut = dir.path().join("f.json");
    let report = dir.path().join("r.csv");
    let o = apnlab(&[
        "trinomial",
        "--m",
        "2",
        "--k",
        "1",
        "--lut-out",
        lut.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = apnlab(&[
        "vbf",
        "analyze",
        lut.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&report).unwrap();
    assert_eq!(csv, "value,multiplicity\n-8,5\n-4,60\n0,60\n4,100\n8,15\n");

    let o = apnlab(&[
        "vbf",
        "analyze",
        lut.to_str().unwrap(),
        "--spectrum",
        "hyperplane",
        "--format",
        "csv",
    ]);
    let spec = apnlab::io::parse_hyperplane_csv(&stdout(&o)).unwrap();
    assert!(spec.iter().all(|(_, c)| c == 3));
    assert_eq!(spec.distinct(), 5);
}

#[test]
fn enumerate_json_is_a_set_file() {
    let o = apnlab(&[
        "hexanomial",
        "enumerate",
        "--m",
        "2",
        "--k",
        "1",
        "--format",
        "json",
    ]);
    let set = apnlab::io::parse_set_json(&stdout(&o)).unwrap();
    assert_eq!(set.n, 4);
    assert_eq!(set.elements.len(), 4);
}

#[test]
fn build_good_c_meets_uniformity() {
    let o = apnlab(&["hexanomial", "enumerate", "--m", "3", "--k", "2"]);
    let c = stdout(&o).lines().next().unwrap().to_string();
    let o = apnlab(&["hexanomial", "build", "--m", "3", "--k", "2", "--C", &c]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("c_good                   true"), "{out}");
    assert!(out.contains("differential_uniformity  2"), "{out}");
}
