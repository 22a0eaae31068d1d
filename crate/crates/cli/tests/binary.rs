// SPDX-License-Identifier: Apache-2.0

//! The installed binary: exit codes and stream separation.

use std::process::Command;

fn ptower(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ptower")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn success_writes_json_to_stdout() {
    let (code, stdout, stderr) = ptower(&["prank", "-D", "-3299", "-p", "3"]);
    assert_eq!((code, stdout.as_str(), stderr.as_str()), (0, "{\"p_rank\": 2}\n", ""));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let (code, stdout, stderr) = ptower(&["prank", "-D", "-3299"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("-p"), "{stderr}");
    let (code, _, stderr) = ptower(&["gs-check", "-d", "2", "--levels", "3:x"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--levels"), "{stderr}");
}

#[test]
fn domain_errors_exit_1_with_the_error_kind() {
    let (code, stdout, stderr) = ptower(&["classgroup", "-D", "-5"]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.starts_with("{\"error\": \"BadDiscriminant\""), "{stderr}");
    let (code, _, stderr) = ptower(&["gs-check", "-d", "2", "--levels", "1"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("\"InvalidLevel\""), "{stderr}");
    let (code, _, stderr) =
        ptower(&["decide", "-D", "-3299", "-p", "3", "--dim-g3g4", "7", "--assume-33"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("\"InconsistentDimension\""), "{stderr}");
}

#[test]
fn relation_files_and_positions() {
    let dir = std::env::temp_dir().join(format!("ptower-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "# relations\n[x,y,x]\n[x,y,y]\n").unwrap();
    let (code, stdout, _) =
        ptower(&["massey-matrix", "--relations", good.to_str().unwrap(), "-p", "5"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"determinant\": 1"), "{stdout}");
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "[x,y,x]\n[x,y,,y]\n").unwrap();
    let (code, _, stderr) =
        ptower(&["massey-matrix", "--relations", bad.to_str().unwrap(), "-p", "5"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("SyntaxError") && stderr.contains("line 2"), "{stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn group_files() {
    let dir = std::env::temp_dir().join(format!("ptower-groups-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let c3 = dir.join("c3.json");
    std::fs::write(&c3, r#"{"p": 3, "order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
    let (code, stdout, _) = ptower(&["filtration", "--group", c3.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"dimension_factors\": [1]"), "{stdout}");
    let broken = dir.join("broken.json");
    std::fs::write(&broken, r#"{"p": 3, "order": 3, "table": [[0,1,2],[1,1,0],[2,0,1]]}"#).unwrap();
    let (code, _, stderr) = ptower(&["filtration", "--group", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("GroupAxiomError"), "{stderr}");
    std::fs::remove_dir_all(&dir).ok();
}
