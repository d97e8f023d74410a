//! Byte-for-byte output of representative invocations. Set
//! `MULTIREG_BLESS=1` to rewrite the expected files.

mod common;

use common::{golden_path, run_cli, GOLDEN};

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("MULTIREG_BLESS").is_some();
    for (stem, args, status) in GOLDEN {
        let (code, out, err) = run_cli(args);
        assert_eq!(code, status, "{stem}: {}", String::from_utf8_lossy(&err));
        let path = golden_path(stem);
        if bless {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(String::from_utf8_lossy(&out), String::from_utf8_lossy(&want), "{stem}");
    }
}

#[test]
fn json_outputs_share_a_schema() {
    for (stem, args, _) in GOLDEN {
        if !args.contains(&"--json") {
            continue;
        }
        let (_, out, _) = run_cli(args);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["inputs", "result", "witnesses"], "{stem}");
        assert!(v["witnesses"].is_array());
    }
}
