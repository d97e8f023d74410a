use std::process::Command;

fn multireg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_multireg")).args(args).output().unwrap()
}

#[test]
fn headline_value_and_exit_status() {
    let out = multireg(&["reg", "P2", "O(1)", "--kind", "cm", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "-1\n");
    let out = multireg(&["cohom", "P1xP1", "O(1,)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 5"));
}

#[test]
fn manifest_batches() {
    let path = std::env::temp_dir().join(format!("multireg-manifest-{}.txt", std::process::id()));
    std::fs::write(&path, "O(0,0)\n\nO(-1,0) + O(2,2)\nO(-1,-1)\n").unwrap();
    let out = multireg(&["reg", "P1xP1", "--kind", "hw", "--manifest", path.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\n1\n1\n");
    std::fs::write(&path, "O(0,0)\nO(1)\n").unwrap();
    let out = multireg(&["cohom", "P1xP1", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_all_on_two_factor_space() {
    let out = multireg(&["verify", "P2xP1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
