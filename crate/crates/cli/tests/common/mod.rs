use std::path::PathBuf;

/// Golden invocations: file stem, arguments, expected exit status.
pub const GOLDEN: [(&str, &[&str], i32); 12] = [
    ("cohom_text", &["cohom", "P1xP1", "O(-2,-2)"], 0),
    ("cohom_json", &["cohom", "P1xP1", "O(-2,-2)", "--json"], 0),
    ("verify_equivalence", &["verify", "P1xP1", "--suite", "thm55", "--max-degree", "4"], 0),
    ("blocks_json", &["blocks", "P1xP1", "--json"], 0),
    ("blocks_helix_index", &["blocks", "P2", "--index", "7"], 0),
    ("gram_text", &["gram", "P1xP1"], 0),
    ("dual_projective", &["dual", "P3", "--k", "1"], 0),
    ("dual_k0_json", &["dual", "P1xP1", "--k0", "--window", "1", "--json"], 0),
    ("reg_cm", &["reg", "P2", "O(1)", "--kind", "cm"], 0),
    ("reg_block_json", &["reg", "P1xP1", "O(-1,-1)", "--kind", "block", "--json"], 0),
    ("reg_hw_base", &["reg", "P1xP1", "O(-1,0)", "--kind", "hw", "--base", "0,0"], 0),
    ("beilinson_json", &["beilinson", "P1xP1", "O(1,1)", "--m", "-2", "--json"], 0),
];

pub fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(format!("{stem}.txt"))
}

pub fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("multireg").chain(args.iter().copied());
    let code = multireg_cli::run(argv, &mut out, &mut err);
    (code, out, err)
}
