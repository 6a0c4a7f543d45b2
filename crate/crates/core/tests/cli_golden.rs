//! Byte-for-byte CLI reports. Set `UPDATE_GOLDEN=1` to rewrite the expected files.

mod common;

use common::golden::{golden_path, run_case, CASES};

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, args, code) in CASES {
        let (text, got_code) = run_case(args);
        assert_eq!(got_code, *code, "{name}: exit code\n{text}");
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == text => {}
            Ok(expected) => failures.push(format!("{name}: report differs\n--- expected\n{expected}--- got\n{text}")),
            Err(_) => failures.push(format!("{name}: missing {}", path.display())),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn repeated_runs_are_identical() {
    for (name, args, _) in CASES {
        assert_eq!(run_case(args), run_case(args), "{name}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("fuzzylim-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("report.txt");
    let args = ["seq-defect", "tests/fixtures/inv_i.seq", "--a", "1", "--out", target.to_str().unwrap()];
    let (stdout, code) = run_case(&args);
    assert_eq!((stdout.as_str(), code), ("", 0));
    let (direct, _) = run_case(&args[..4]);
    assert_eq!(std::fs::read_to_string(&target).unwrap(), direct);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_parse_code() {
    let (_, code) = run_case(&["seq-defect", "tests/fixtures/inv_i.seq", "--a", "one"]);
    assert_eq!(code, 4);
    let (_, code) = run_case(&["no-such-verb"]);
    assert_eq!(code, 4);
    let (_, code) = run_case(&["seq-defect", "tests/fixtures/missing.seq", "--a", "0"]);
    assert_eq!(code, 1);
}
