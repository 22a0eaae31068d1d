// SPDX-License-Identifier: Apache-2.0

//! Recorded outputs of representative invocations, compared byte for byte.
//! Run with `PTOWER_BLESS=1` to rewrite the files after a deliberate change.

mod common;

use common::{golden_path, invoke, CASES};

#[test]
fn outputs_match_goldens() {
    let bless = std::env::var_os("PTOWER_BLESS").is_some();
    let mut mismatches = Vec::new();
    for (stem, args) in CASES {
        let out = invoke(args);
        assert_eq!(out.code, 0, "ptower {args}: {}", out.stderr);
        let path = golden_path(stem);
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing golden {}: {e}", path.display()));
        if expected != out.stdout {
            mismatches
                .push(format!("ptower {args}\n  expected {expected}  actual   {}", out.stdout));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn every_golden_file_has_a_case() {
    let dir = golden_path("x").parent().unwrap().to_path_buf();
    for entry in std::fs::read_dir(dir).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        let stem = name.trim_end_matches(".json");
        assert!(CASES.iter().any(|(s, _)| *s == stem), "stray golden file {name}");
    }
}
