//! Byte-for-byte golden-file checks over the documented command set.
//! Regenerate a fixture by running the listed command and saving stdout.

use std::path::Path;
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    ("weak", &["weak", "--pre", "+", "--post", "0", "--op", "sigma_y"]),
    (
        "weak_op_json",
        &[
            "weak",
            "--pre",
            "+",
            "--post",
            "0",
            "--op-json",
            r#"{"trace": 0, "bloch": [0, 0, 1]}"#,
        ],
    ),
    (
        "decompose",
        &["decompose", "--pre", "+", "--post", "0", "--op", "sigma_z"],
    ),
    ("extremal", &["extremal", "--pre", "+", "--post", "0"]),
    (
        "noise_apply",
        &["noise-apply", "--kind", "depolarizing", "--p", "0.2", "--pre", "+"],
    ),
    (
        "noise_infer",
        &[
            "noise-infer",
            "--kind",
            "depolarizing",
            "--pre",
            "+",
            "--post",
            "0",
            "--probe",
            "gamma",
            "--observed-im",
            "0.3",
        ],
    ),
    ("probe", &["probe", "--pre", "+", "--post", "0"]),
    ("scan", &["scan", "--dim", "3", "--trials", "50", "--seed", "42"]),
    (
        "sweep_p",
        &[
            "sweep", "--pre", "+", "--post", "0", "--param", "p", "--min", "0", "--max",
            "0.5", "--step", "0.05",
        ],
    ),
    (
        "sweep_s",
        &[
            "sweep", "--pre", "+", "--post", "0", "--param", "s", "--min", "-2", "--max",
            "2", "--step", "1",
        ],
    ),
];

#[test]
fn goldens_match() {
    let bin = env!("CARGO_BIN_EXE_weakgeo");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args) in CASES {
        let out = Command::new(bin).args(*args).output().unwrap();
        assert!(
            out.status.success(),
            "{name} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let expected = std::fs::read(dir.join(format!("{name}.txt")))
            .unwrap_or_else(|e| panic!("missing fixture for {name}: {e}"));
        assert_eq!(
            out.stdout,
            expected,
            "{name} drifted from its fixture:\n{}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn validation_errors_use_the_envelope() {
    let bin = env!("CARGO_BIN_EXE_weakgeo");
    let out = Command::new(bin)
        .args(["weak", "--pre", "0", "--post", "1", "--op", "sigma_x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "degenerate_ensemble");

    // Usage errors keep clap's exit code 2.
    let out = Command::new(bin).args(["weak", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // An empty sweep grid is a validation error, not a usage error.
    let out = Command::new(bin)
        .args([
            "sweep", "--pre", "+", "--post", "0", "--param", "s", "--min", "1", "--max",
            "0", "--step", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "empty_range");
}
