//! End-to-end tests of the `pinrank` binary: exit codes, machine/text
//! output, determinism, and round-tripping of the shipped input documents.

use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pinrank"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("machine output is JSON")
}

fn sample_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("sample-inputs")
}

fn ranks(doc: &serde_json::Value) -> (u64, u64) {
    let main = &doc["report"]["main"];
    (
        main["rank_k0"].as_u64().unwrap(),
        main["rank_k1"].as_u64().unwrap(),
    )
}

#[test]
fn z2_reflection_builtin() {
    let out = run(&[
        "compute",
        "cyclic",
        "--m",
        "2",
        "--action",
        "reflection",
        "--ambient",
        "1",
        "--format",
        "machine",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(ranks(&doc), (1, 0));
    assert_eq!(doc["schema_version"], 1);
    // cyclic builtins assert Pin^c automatically and must agree
    assert_eq!(doc["report"]["agreement"], true);
}

#[test]
fn sym3_with_cross_checks() {
    let out = run(&[
        "compute", "sym", "--n", "3", "--check", "--format", "machine",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(ranks(&doc), (1, 1));
    assert_eq!(doc["report"]["agreement"], true);
    let subs = doc["report"]["sub_reports"].as_array().unwrap();
    assert_eq!(subs.len(), 2); // karoubi + partition formula
}

#[test]
fn trivial_group_baseline() {
    let out = run(&[
        "compute",
        "trivial",
        "--ambient",
        "2",
        "--format",
        "machine",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(ranks(&doc), (1, 0));
}

#[test]
fn file_input_and_stdin_agree() {
    let path = sample_dir().join("s3_permutation.json");
    let from_file = run(&[
        "compute",
        "file",
        path.to_str().unwrap(),
        "--format",
        "machine",
    ]);
    let doc = stdout_json(&from_file);
    assert_eq!(ranks(&doc), (1, 1));

    let text = std::fs::read_to_string(&path).unwrap();
    let mut child = bin()
        .args(["compute", "file", "-", "--format", "machine"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let stdin_doc = stdout_json(&out);
    assert_eq!(ranks(&stdin_doc), (1, 1));
    assert_eq!(stdin_doc["input_echo"]["kind"], "stdin");
}

#[test]
fn exact_entry_document_computes() {
    let path = sample_dir().join("z4_rotation_exact.json");
    let out = run(&[
        "compute",
        "file",
        path.to_str().unwrap(),
        "--format",
        "machine",
    ]);
    let doc = stdout_json(&out);
    // Z4 rotations: rank 4 in K^0 (dim 2), Pin^c sub-report present.
    assert_eq!(ranks(&doc), (4, 0));
    assert_eq!(doc["report"]["agreement"], true);
}

#[test]
fn dihedral_document_with_roots() {
    let path = sample_dir().join("d8_with_roots.json");
    let out = run(&[
        "compute",
        "file",
        path.to_str().unwrap(),
        "--check",
        "--format",
        "machine",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["main"]["group_order"], 16);
    assert_eq!(doc["report"]["agreement"], true);
}

#[test]
fn shipped_documents_round_trip() {
    for name in [
        "z2_reflection_line.json",
        "z4_rotation_exact.json",
        "s3_permutation.json",
        "d8_with_roots.json",
    ] {
        let text = std::fs::read_to_string(sample_dir().join(name)).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        // parse into the typed document and back
        let out = run(&[
            "compute",
            "file",
            sample_dir().join(name).to_str().unwrap(),
            "--format",
            "machine",
        ]);
        let doc = stdout_json(&out);
        assert_eq!(
            doc["input_echo"]["document"], parsed,
            "document echo must round-trip for {name}"
        );
    }
}

#[test]
fn output_is_deterministic_modulo_timing() {
    for format in ["machine", "text"] {
        let mut docs = Vec::new();
        for _ in 0..2 {
            let out = run(&["compute", "sym", "--n", "4", "--check", "--format", format]);
            assert!(out.status.success());
            let text = String::from_utf8(out.stdout).unwrap();
            let stripped: String = text
                .lines()
                .filter(|l| !l.contains("timing_ms"))
                .collect::<Vec<_>>()
                .join("\n");
            docs.push(stripped);
        }
        assert_eq!(docs[0], docs[1], "{format} output must be byte-identical");
    }
}

#[test]
fn verify_small_suite_passes() {
    let out = run(&["verify", "--suite", "small", "--format", "machine"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["passed"], true);
    assert!(doc["checks"].as_array().unwrap().len() >= 20);
}

#[test]
#[ignore = "slow: includes the S_7 triple-agreement check"]
fn verify_full_suite_passes() {
    let out = run(&["verify", "--suite", "full", "--format", "machine"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["passed"], true);
    let names: Vec<&str> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"s7_triple_agreement"));
}

#[test]
fn partitions_table() {
    let out = run(&["partitions", "6", "--format", "machine"]);
    let doc = stdout_json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5); // n = 2..=6
    let row6 = &rows[4];
    assert_eq!(
        (
            row6["a"].as_u64(),
            row6["b"].as_u64(),
            row6["p"].as_u64(),
            row6["i"].as_u64()
        ),
        (Some(2), Some(2), Some(2), Some(2))
    );
}

#[test]
fn gl_table_rows() {
    let out = run(&["gl-table", "4", "--format", "machine"]);
    let doc = stdout_json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["k0"]["kind"], "finite_free");
    assert_eq!(rows[0]["k1"]["kind"], "countably_infinite");
}

#[test]
fn builtin_list_names_everything() {
    let out = run(&["builtin", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "trivial",
        "cyclic",
        "dihedral",
        "sym",
        "alt",
        "hyperoctahedral",
    ] {
        assert!(text.contains(name), "{name} missing from listing");
    }
}

#[test]
fn exit_codes() {
    // usage error -> 1
    let out = run(&["compute", "no-such-builtin"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    // computation/domain error -> 2
    let out = run(&["partitions", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["compute", "cyclic", "--m", "3", "--action", "reflection"]);
    assert_eq!(out.status.code(), Some(2));

    // non-orthogonal generator in a document -> 2
    let dir = std::env::temp_dir().join("pinrank-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dimension": 2, "generators": [[[1, 1], [0, 1]]]}"#,
    )
    .unwrap();
    let out = run(&["compute", "file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn group_cap_flag_is_enforced() {
    let out = run(&["compute", "sym", "--n", "4", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(
        msg.contains("cap"),
        "diagnostic should mention the cap: {msg}"
    );
}
