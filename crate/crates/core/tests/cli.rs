use std::process::Command;

fn cubic3(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cubic3")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn scan_csv() {
    let (code, out, err) = cubic3(&["scan", "--min", "55", "--max", "70"]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "p,p_mod_9,cube3,case,hF,AF,AK,AM_cert,thm2,norm_eq,verdict");
    assert_eq!(lines.len(), 4, "{out}");
    assert!(lines[1].starts_with("59,5,"));
    assert!(lines.iter().any(|l| l.starts_with("61,7,true,CaseMain,")));
}

#[test]
fn json_report_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let json = json.to_str().unwrap();
    let (code, _, err) = cubic3(&["scan", "--min", "60", "--max", "62", "--format", "json", "--out", json]);
    assert_eq!(code, 0, "{err}");
    assert!(!dir.path().join("r.partial.jsonl").exists());
    let (code, out, err) = cubic3(&["report", json, "--recheck"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.lines().nth(1).unwrap().ends_with(",pass"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(cubic3(&["scan", "--effort", "lots"]).0, 1);
    assert_eq!(cubic3(&["report", "/nonexistent/r.json"]).0, 1);
    assert_ne!(cubic3(&["frobnicate"]).0, 0);
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = cubic3(&["scan", "--min", "7", "--max", "7", "--with-class-groups", "--cache-dir", d]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().contains("[3]"), "{out}");
    let (_, shown, _) = cubic3(&["cache", "show", "--cache-dir", d]);
    assert!(shown.contains("Q(cbrt 7)") && shown.contains("certified=true"), "{shown}");
    let (_, verified, _) = cubic3(&["cache", "verify", "--cache-dir", d]);
    assert!(verified.contains("1 entries valid, 0 evicted"), "{verified}");
    let (_, cleared, _) = cubic3(&["cache", "clear", "--cache-dir", d]);
    assert!(cleared.contains("removed 1"));
}
