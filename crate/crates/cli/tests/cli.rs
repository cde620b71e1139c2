//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn umeb(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umeb"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn construct(dir: &Path, args: &[&str], name: &str) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.push("--out");
    let path_str = path.to_str().unwrap().to_string();
    full.push(&path_str);
    let out = umeb(dir, &full);
    assert_eq!(
        exit_code(&out),
        0,
        "construct failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

/// Truncates a basis file to its first `keep` members and relabels the
/// claim, producing a deliberately extendible candidate.
fn truncate_file(src: &Path, dst: &Path, keep: usize) {
    let mut v = read_json(src);
    let members = v["members"].as_array().unwrap()[..keep].to_vec();
    v["members"] = Value::Array(members);
    v["claim"] = Value::String("NONE".into());
    std::fs::write(dst, serde_json::to_vec(&v).unwrap()).unwrap();
}

#[test]
fn construct_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct(dir.path(), &["theorem2", "--d", "2", "--dprime", "3", "--i", "1"], "a.json");
    let b = construct(dir.path(), &["theorem2", "--d", "2", "--dprime", "3", "--i", "1"], "b.json");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let builtin = construct(dir.path(), &["bravyi33"], "b33.json");
    let from_builtin = construct(dir.path(), &["theorem1", "--q", "2", "--base", "bravyi33"], "t1a.json");
    let from_file = construct(
        dir.path(),
        &["theorem1", "--q", "2", "--base", builtin.to_str().unwrap()],
        "t1b.json",
    );
    assert_eq!(
        std::fs::read(&from_builtin).unwrap(),
        std::fs::read(&from_file).unwrap()
    );
}

#[test]
fn construct_member_counts_match_the_contracts() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], usize, [u64; 2]); 5] = [
        (&["theorem2", "--d", "2", "--dprime", "3", "--i", "1"], 4, [2, 3]),
        (&["theorem1", "--q", "2", "--base", "bravyi33"], 30, [6, 6]),
        (&["example1", "--p", "3", "--base", "bravyi33"], 30, [6, 6]),
        (&["prop2", "--d", "3", "--dprime", "6", "--base", "bravyi33"], 15, [3, 6]),
        (&["sv1b", "--d", "2", "--dprime", "4"], 8, [2, 4]),
    ];
    for (idx, (args, count, dims)) in cases.iter().enumerate() {
        let path = construct(dir.path(), args, &format!("c{idx}.json"));
        let v = read_json(&path);
        assert_eq!(v["members"].as_array().unwrap().len(), *count, "{args:?}");
        assert_eq!(v["dims"][0].as_u64().unwrap(), dims[0]);
        assert_eq!(v["dims"][1].as_u64().unwrap(), dims[1]);
        assert_eq!(v["formatVersion"].as_u64().unwrap(), 1);
    }
}

#[test]
fn theorem1_stacks_on_its_own_output() {
    let dir = tempfile::tempdir().unwrap();
    let first = construct(dir.path(), &["theorem1", "--q", "2", "--base", "bravyi33"], "t1.json");
    let second = construct(
        dir.path(),
        &["theorem1", "--q", "2", "--base", first.to_str().unwrap()],
        "t1t1.json",
    );
    let v = read_json(&second);
    assert_eq!(v["members"].as_array().unwrap().len(), 132);
    assert_eq!(v["dims"][0].as_u64().unwrap(), 12);
}

#[test]
fn certify_exit_codes_encode_verdicts() {
    let dir = tempfile::tempdir().unwrap();

    let umeb_file = construct(dir.path(), &["theorem2", "--d", "2", "--dprime", "3", "--i", "1"], "u.json");
    let out = umeb(
        dir.path(),
        &["certify", umeb_file.to_str().unwrap(), "--out", "u.report.json"],
    );
    assert_eq!(exit_code(&out), 0);
    let report = read_json(&dir.path().join("u.report.json"));
    assert_eq!(report["verdict"], "certifiedUMEB");
    assert_eq!(report["unextendibility"]["kind"], "structuralRankCertificate");
    assert_eq!(report["unextendibility"]["maxRank"].as_u64().unwrap(), 1);
    assert!(report.get("witness").is_none());
    assert!(report["inputDigest"].as_str().unwrap().starts_with("sha256:"));

    let complete = construct(dir.path(), &["weyl", "--d", "2"], "w2.json");
    let out = umeb(
        dir.path(),
        &["certify", complete.to_str().unwrap(), "--out", "w2.report.json"],
    );
    assert_eq!(exit_code(&out), 0);
    assert_eq!(read_json(&dir.path().join("w2.report.json"))["verdict"], "completeBasis");

    let partial = dir.path().join("w2partial.json");
    truncate_file(&complete, &partial, 3);
    let out = umeb(
        dir.path(),
        &["certify", partial.to_str().unwrap(), "--restarts", "16", "--out", "p.report.json"],
    );
    assert_eq!(exit_code(&out), 2);
    let report = read_json(&dir.path().join("p.report.json"));
    assert_eq!(report["verdict"], "extendible");
    let witness = &report["witness"]["matrix"];
    assert_eq!(witness.as_array().unwrap().len(), 2);
}

#[test]
fn certify_rejects_a_product_state_family() {
    let dir = tempfile::tempdir().unwrap();
    let product = serde_json::json!({
        "formatVersion": 1,
        "dims": [2, 2],
        "claim": "NONE",
        "provenance": {"construction": "manual", "params": {}},
        "members": [
            {"label": "product", "matrix": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}
        ]
    });
    let path = dir.path().join("product.json");
    std::fs::write(&path, serde_json::to_vec(&product).unwrap()).unwrap();
    let out = umeb(
        dir.path(),
        &["certify", path.to_str().unwrap(), "--out", "r.json"],
    );
    assert_eq!(exit_code(&out), 1);
    let report = read_json(&dir.path().join("r.json"));
    assert_eq!(report["verdict"], "failedBasicChecks");
    assert_eq!(report["entanglement"]["pass"], false);
}

#[test]
fn certify_report_bytes_are_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let b33 = construct(dir.path(), &["bravyi33"], "b33.json");
    for run in ["r1.json", "r2.json"] {
        let out = umeb(
            dir.path(),
            &[
                "certify",
                b33.to_str().unwrap(),
                "--restarts",
                "8",
                "--seed",
                "42",
                "--out",
                run,
            ],
        );
        assert_eq!(exit_code(&out), 0);
    }
    let r1 = std::fs::read(dir.path().join("r1.json")).unwrap();
    let r2 = std::fs::read(dir.path().join("r2.json")).unwrap();
    assert_eq!(r1, r2);
    let report: Value = serde_json::from_slice(&r1).unwrap();
    assert_eq!(report["verdict"], "evidenceUMEB");
    assert_eq!(report["searchConfig"]["seed"].as_u64().unwrap(), 42);
    assert_eq!(report["searchConfig"]["restarts"].as_u64().unwrap(), 8);
}

#[test]
fn spectra_classifies_pair_orders() {
    let dir = tempfile::tempdir().unwrap();
    let b33 = construct(dir.path(), &["bravyi33"], "b33.json");
    let out = umeb(
        dir.path(),
        &["spectra", b33.to_str().unwrap(), "--out", "b33.spectra.json"],
    );
    assert_eq!(exit_code(&out), 0);
    let v = read_json(&dir.path().join("b33.spectra.json"));
    assert_eq!(v["dim"].as_u64().unwrap(), 3);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 36);
    let kinds: Vec<&str> = v["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|p| p["orders"].as_array().unwrap())
        .map(|o| o["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"infiniteByNiven"));

    let w2 = construct(dir.path(), &["weyl", "--d", "2"], "w2.json");
    let out = umeb(
        dir.path(),
        &["spectra", w2.to_str().unwrap(), "--out", "w2.spectra.json"],
    );
    assert_eq!(exit_code(&out), 0);
    let v = read_json(&dir.path().join("w2.spectra.json"));
    for pair in v["pairs"].as_array().unwrap() {
        for order in pair["orders"].as_array().unwrap() {
            assert_eq!(order["kind"], "finite");
            assert!(order["n"].as_u64().unwrap() <= 4);
        }
    }
}

#[test]
fn spectra_handles_the_trivial_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let one = serde_json::json!({
        "formatVersion": 1,
        "dims": [1, 1],
        "claim": "MEB",
        "provenance": {"construction": "manual", "params": {}},
        "members": [{"label": "id", "matrix": [[[1.0, 0.0]]]}]
    });
    let path = dir.path().join("one.json");
    std::fs::write(&path, serde_json::to_vec(&one).unwrap()).unwrap();
    let out = umeb(
        dir.path(),
        &["spectra", path.to_str().unwrap(), "--out", "one.spectra.json"],
    );
    assert_eq!(exit_code(&out), 0);
    let v = read_json(&dir.path().join("one.spectra.json"));
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    assert_eq!(pairs[0]["eigenphases"].as_array().unwrap().len(), 1);
    assert_eq!(pairs[0]["eigenphases"][0].as_f64().unwrap(), 0.0);
    assert_eq!(pairs[0]["orders"][0]["kind"], "finite");
    assert_eq!(pairs[0]["orders"][0]["n"].as_u64().unwrap(), 1);
}

#[test]
fn compare_reports_the_obstruction_only_when_present() {
    let dir = tempfile::tempdir().unwrap();
    let b33 = construct(dir.path(), &["bravyi33"], "b33.json");
    let w3 = construct(dir.path(), &["weyl", "--d", "3"], "w3.json");
    let w3sub = dir.path().join("w3sub.json");
    truncate_file(&w3, &w3sub, 6);

    let out = umeb(
        dir.path(),
        &[
            "compare",
            b33.to_str().unwrap(),
            w3sub.to_str().unwrap(),
            "--out",
            "cmp.json",
        ],
    );
    assert_eq!(exit_code(&out), 0);
    let v = read_json(&dir.path().join("cmp.json"));
    assert_eq!(v["obstruction"], true);
    assert_eq!(v["aHasInfiniteOrder"], true);
    assert_eq!(v["bHasInfiniteOrder"], false);
    assert_eq!(v["verdict"], "inequivalent (spectral order obstruction)");

    let out = umeb(
        dir.path(),
        &[
            "compare",
            b33.to_str().unwrap(),
            b33.to_str().unwrap(),
            "--out",
            "same.json",
        ],
    );
    assert_eq!(exit_code(&out), 0);
    let v = read_json(&dir.path().join("same.json"));
    assert_eq!(v["obstruction"], false);
    assert_eq!(v["verdict"], "no obstruction found");
}

#[test]
fn malformed_inputs_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, b"{\"not json").unwrap();
    let out = umeb(
        dir.path(),
        &["certify", broken.to_str().unwrap(), "--out", "x.json"],
    );
    assert_eq!(exit_code(&out), 64);

    let out = umeb(dir.path(), &["certify", "missing.json", "--out", "x.json"]);
    assert_eq!(exit_code(&out), 64);

    let out = umeb(dir.path(), &["construct", "weyl", "--out", "x.json"]);
    assert_eq!(exit_code(&out), 64);
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires --d"));

    let wrong_version = serde_json::json!({
        "formatVersion": 2,
        "dims": [1, 1],
        "claim": "MEB",
        "provenance": {"construction": "manual", "params": {}},
        "members": [{"label": "id", "matrix": [[[1.0, 0.0]]]}]
    });
    let path = dir.path().join("v2.json");
    std::fs::write(&path, serde_json::to_vec(&wrong_version).unwrap()).unwrap();
    let out = umeb(
        dir.path(),
        &["certify", path.to_str().unwrap(), "--out", "x.json"],
    );
    assert_eq!(exit_code(&out), 64);
    assert!(String::from_utf8_lossy(&out.stderr).contains("formatVersion"));

    let out = umeb(dir.path(), &["nonsense"]);
    assert_eq!(exit_code(&out), 64);
}

#[test]
fn domain_violations_exit_65() {
    let dir = tempfile::tempdir().unwrap();
    let out = umeb(
        dir.path(),
        &["construct", "theorem2", "--d", "3", "--dprime", "4", "--i", "2", "--out", "x.json"],
    );
    assert_eq!(exit_code(&out), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("case (ii) requires 1 <= i <= r"));

    let rect = construct(dir.path(), &["theorem2", "--d", "2", "--dprime", "3", "--i", "1"], "rect.json");
    let out = umeb(
        dir.path(),
        &["spectra", rect.to_str().unwrap(), "--out", "x.json"],
    );
    assert_eq!(exit_code(&out), 65);

    let b33 = construct(dir.path(), &["bravyi33"], "b33.json");
    let w2 = construct(dir.path(), &["weyl", "--d", "2"], "w2.json");
    let out = umeb(
        dir.path(),
        &[
            "compare",
            b33.to_str().unwrap(),
            w2.to_str().unwrap(),
            "--out",
            "x.json",
        ],
    );
    assert_eq!(exit_code(&out), 65);
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = umeb(dir.path(), &["--help"]);
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("construct"));
    let out = umeb(dir.path(), &["--version"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn output_failures_exit_74() {
    let dir = tempfile::tempdir().unwrap();
    let out = umeb(
        dir.path(),
        &["construct", "bravyi33", "--out", "no/such/dir/x.json"],
    );
    assert_eq!(exit_code(&out), 74);
}
