use std::path::Path;
use std::process::{Command, Output};

fn arcring(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_arcring"));
    cmd.args(args).env_remove("ARCRING_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("ARCRING_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 6] = [
        (&["matchings", "--n", "2", "--arrows"], "matchings_n2_arrows.json"),
        (&["betti", "--n", "3", "--format", "csv"], "betti_n3.csv"),
        (&["center", "--n", "2", "--format", "csv"], "center_n2.csv"),
        (&["verify", "--n", "2", "--all", "--format", "csv"], "verify_n2_all.csv"),
        (&["homotopy", "--n", "2", "--format", "csv"], "homotopy_n2.csv"),
        (&["matchings", "--n", "3", "--order", "--format", "text"], "matchings_n3_order.txt"),
    ];
    for (args, file) in cases {
        let out = arcring(args, None);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(file), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(arcring(&["verify", "--n", "1", "--homotopy"], None).status.code(), Some(0));
    assert_eq!(arcring(&["verify", "--n", "9"], None).status.code(), Some(2));
    assert_eq!(arcring(&["matchings"], None).status.code(), Some(2));
    assert_eq!(arcring(&["cache", "--n", "2"], None).status.code(), Some(2));
    let out = arcring(&["matchings", "--n", "0"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
}

#[test]
fn iso_at_three() {
    let out = arcring(&["verify", "--n", "3", "--iso"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["iso"]["center_graded_ranks"], serde_json::json!([1, 5, 9, 5]));
}

#[test]
fn cache_through_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = |out: Output| {
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        (v["results"]["status"].as_str().unwrap().to_string(), String::from_utf8(out.stderr).unwrap())
    };
    assert_eq!(status(arcring(&["cache", "--n", "2"], Some(dir.path()))), ("built".into(), String::new()));
    assert_eq!(status(arcring(&["cache", "--n", "2"], Some(dir.path()))), ("loaded".into(), String::new()));
    std::fs::write(dir.path().join("arcring-n2.json"), b"\x00garbage").unwrap();
    let (s, err) = status(arcring(&["cache", "--n", "2"], Some(dir.path())));
    assert_eq!(s, "rebuilt");
    assert!(err.starts_with("warning: rebuilding cache"));
    let cached = arcring(&["center", "--n", "2"], Some(dir.path())).stdout;
    assert_eq!(cached, arcring(&["center", "--n", "2"], None).stdout);
}
