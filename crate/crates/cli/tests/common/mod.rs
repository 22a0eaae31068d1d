// SPDX-License-Identifier: Apache-2.0

//! Shared between the golden-file and README tests.

use std::path::PathBuf;

use ptower_cli::run;

/// `(golden file stem, arguments after the program name)`.
pub const CASES: &[(&str, &str)] = &[
    ("prank_3299", "prank -D -3299 -p 3"),
    ("prank_radicand", "prank -m -3321607 -p 3"),
    ("classgroup_23", "classgroup -D -23"),
    ("classgroup_84", "classgroup -D -84"),
    ("decide_trivial", "decide -D -4 -p 3"),
    ("decide_rank_one", "decide -D -23 -p 3"),
    ("decide_3299", "decide -D -3299 -p 3"),
    ("decide_rank_three", "decide -D -3321607 -p 3"),
    ("decide_vanishing", "decide -D -3299 -p 3 --relations [x,y,x,y];[x,y,y,y]"),
    ("decide_g4_conjectural", "decide -D -3299 -p 3 --dim-g3g4 2 --assume-33"),
    ("decide_g4_group", "decide -D -3299 -p 3 --g4-group C9xC9 --assume-33"),
    ("gs_check_witness", "gs-check -d 2 --levels 5:2 --at 2/3"),
    ("gs_check_positive", "gs-check -d 2 --levels 3,7"),
    ("gs_admissible", "gs-admissible -d 2"),
    ("filtration_q8", "filtration --group Q8"),
    ("filtration_heisenberg", "filtration --group heisenberg_27"),
    ("magnus_level", "magnus-level [x,y,x] [x,y,y] x^3 -p 3"),
    ("massey_matrix", "massey-matrix --relations [x,y,x];[x,y,y] -p 5"),
];

pub fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{stem}.json"))
}

pub fn invoke(args: &str) -> ptower_cli::Outcome {
    let words = shlex::split(args).expect("balanced quoting");
    run(std::iter::once("ptower".to_string()).chain(words))
}
