//! CLI golden cases: name, arguments (run from the package root), expected exit code.

use std::path::Path;
use std::process::Command;

pub const CASES: &[(&str, &[&str], i32)] = &[
    ("seq_defect_one", &["seq-defect", "tests/fixtures/inv_i.seq", "--a", "1"], 0),
    ("seq_defect_half", &["seq-defect", "tests/fixtures/inv_i.seq", "--a", "1/2", "--r", "1/2", "--scale", "2"], 0),
    ("seq_defect_set", &["seq-defect", "tests/fixtures/three.set", "--a", "1", "--r", "1"], 0),
    ("seq_defect_mixed", &["seq-defect", "tests/fixtures/mixed.seq", "--a", "-0.25"], 0),
    ("seq_defect_diverging", &["seq-defect", "tests/fixtures/diverge.seq", "--a", "0"], 0),
    ("seq_rlimits", &["seq-rlimits", "tests/fixtures/mixed.seq", "--r", "2"], 0),
    ("seq_interleave", &["seq-interleave", "tests/fixtures/three.set"], 0),
    ("seq_bad_mode", &["seq-defect", "tests/fixtures/bad_mode.seq", "--a", "0"], 4),
    ("fn_qrlimit_ok", &["fn-qrlimit", "tests/fixtures/id_int.fn", "--a", "3", "--q", "1", "--r", "1", "--b", "3"], 0),
    ("fn_qrlimit_refuted", &["fn-qrlimit", "tests/fixtures/id_int.fn", "--a", "3", "--q", "1", "--r", "1/2", "--b", "3"], 2),
    ("fn_qrlimit_empty", &["fn-qrlimit", "tests/fixtures/id_int.fn", "--a", "5", "--q", "1/2", "--r", "1", "--b", "5"], 3),
    ("fn_qrlimit_weak", &["fn-qrlimit", "tests/fixtures/id_int.fn", "--a", "3", "--q", "1", "--r", "0", "--b", "4", "--weak"], 0),
    ("fn_qrlimit_sign", &["fn-qrlimit", "tests/fixtures/sign.fn", "--a", "0", "--q", "1", "--r", "2", "--b", "1"], 0),
    ("fn_region_sign", &["--format", "full", "fn-region", "tests/fixtures/sign.fn", "--lo", "0", "--hi", "0", "--b", "0"], 0),
    ("fn_region_floor", &["fn-region", "tests/fixtures/floor.fn", "--lo", "3", "--hi", "3", "--b", "5/2"], 0),
    ("fn_region_unit", &["--format", "full", "fn-region", "tests/fixtures/id_unit.fn", "--lo", "0", "--hi", "1", "--b", "2", "--schedule", "tests/fixtures/coarse.sched"], 0),
    ("fn_cluster_floor", &["--format", "full", "fn-cluster", "tests/fixtures/floor.fn", "--lo", "3", "--hi", "3", "--schedule", "tests/fixtures/coarse.sched"], 0),
    ("fn_cluster_flat", &["fn-cluster", "tests/fixtures/floor.fn", "--lo", "1/4", "--hi", "3/4"], 0),
    ("fn_spread", &["fn-spread", "tests/fixtures/floor.fn", "--a", "5/2", "--radius", "1/4"], 0),
    ("cert_check_sum", &["cert-check", "--model", "sign=tests/fixtures/sign.fn", "--model", "five=tests/fixtures/five.fn", "--ref", "sum(sign, five)", "--a", "0", "--q", "0", "--r", "1", "--b", "5"], 0),
    ("cert_derive_plus", &["--format", "full", "cert-derive", "--model", "sign=tests/fixtures/sign.fn", "--model", "five=tests/fixtures/five.fn", "--rule", "plus", "--cert", "tests/fixtures/sign_at_0.cert", "--cert", "tests/fixtures/five_at_0.cert"], 0),
    ("cert_derive_scale", &["cert-derive", "--model", "sign=tests/fixtures/sign.fn", "--rule", "scale", "--k", "-2", "--cert", "tests/fixtures/sign_at_0.cert"], 0),
    ("cert_derive_widen_bad", &["cert-derive", "--model", "id=tests/fixtures/id_int.fn", "--rule", "widen", "--u", "2", "--v", "2", "--cert", "tests/fixtures/id_at_3.cert"], 1),
    ("cert_derive_squeeze", &["cert-derive", "--model", "lo=tests/fixtures/below_id.fn", "--model", "hi=tests/fixtures/above_id.fn", "--model", "id=tests/fixtures/id_int.fn", "--rule", "squeeze", "--target", "id", "--cert", "tests/fixtures/lo_at_3.cert", "--cert", "tests/fixtures/hi_at_3.cert"], 0),
    ("cert_derive_cov", &["cert-derive", "--model", "floor=tests/fixtures/floor.fn", "--rule", "cov", "--map", "pl(intercept=5, slopes=[1])", "--cert", "tests/fixtures/floor_at_3.cert"], 0),
    ("cert_derive_lower_bound", &["cert-derive", "--model", "floor=tests/fixtures/floor.fn", "--rule", "lower-bound", "--d", "19/10", "--cert", "tests/fixtures/floor_at_3.cert"], 0),
    ("cert_derive_bound_boundary", &["cert-derive", "--model", "floor=tests/fixtures/floor.fn", "--rule", "lower-bound", "--d", "2", "--cert", "tests/fixtures/floor_at_3.cert"], 1),
    ("cert_verify_ok", &["--format", "full", "cert-verify", "--model", "id=tests/fixtures/id_int.fn", "--cert", "tests/fixtures/id_at_3.cert"], 0),
    ("cert_verify_forged", &["cert-verify", "--model", "sign=tests/fixtures/sign.fn", "--cert", "tests/fixtures/sign_forged.cert"], 2),
    ("cert_verify_unknown_model", &["cert-verify", "--model", "other=tests/fixtures/sign.fn", "--cert", "tests/fixtures/sign_at_0.cert"], 1),
    ("aut_buchi_accept", &["aut-accept", "tests/fixtures/toggle_buchi.aut", "--word", "| a b"], 0),
    ("aut_buchi_reject", &["--format", "full", "aut-accept", "tests/fixtures/toggle_buchi.aut", "--word", "b | a"], 0),
    ("aut_muller", &["aut-accept", "tests/fixtures/toggle_muller.aut", "--word", "a"], 0),
    ("aut_bad_symbol", &["aut-accept", "tests/fixtures/toggle_buchi.aut", "--word", "| c"], 4),
    ("oracle_seq_defect", &["oracle-seq-defect", "tests/fixtures/inv_i.seq", "--a", "1"], 0),
    ("oracle_seq_too_long", &["oracle-seq-defect", "tests/fixtures/inv_i.seq", "--a", "1", "--n", "100001"], 5),
    ("oracle_fn_qrlimit", &["oracle-fn-qrlimit", "tests/fixtures/id_grid.fn", "--a", "1/2", "--q", "1/4", "--r", "1/4", "--b", "1/2"], 0),
    ("oracle_fn_too_big", &["oracle-fn-qrlimit", "tests/fixtures/id_int.fn", "--a", "3", "--q", "1", "--r", "1", "--b", "3"], 5),
    ("oracle_aut_accept", &["oracle-aut-accept", "tests/fixtures/toggle_buchi.aut", "--word", "| a b"], 0),
];

/// Runs the built binary from the package root; returns stdout and exit code.
pub fn run_case(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_fuzzylim"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 report"), out.status.code().unwrap_or(-1))
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}
