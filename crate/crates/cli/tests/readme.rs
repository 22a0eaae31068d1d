// SPDX-License-Identifier: Apache-2.0

//! Every `$ ptower ...` example in the README must be a recorded golden
//! case, and the output shown beneath it must be exactly that golden file.

mod common;

use common::{golden_path, invoke, CASES};

/// `(arguments, displayed output)` for each console example.
fn examples(readme: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut lines = readme.lines().peekable();
    while let Some(line) = lines.next() {
        let Some(args) = line.strip_prefix("$ ptower ") else { continue };
        let mut shown = String::new();
        while let Some(next) = lines.peek() {
            if next.starts_with("```") || next.starts_with("$ ") {
                break;
            }
            shown.push_str(next);
            shown.push('\n');
            lines.next();
        }
        out.push((args.to_string(), shown));
    }
    out
}

#[test]
fn readme_examples_match_goldens() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md");
    let readme = std::fs::read_to_string(path).expect("README.md at the workspace root");
    let examples = examples(&readme);
    assert!(!examples.is_empty(), "README has no console examples");
    for (args, shown) in examples {
        let stem = CASES
            .iter()
            .find(|(_, a)| shlex::split(a) == shlex::split(&args))
            .map(|(s, _)| *s)
            .unwrap_or_else(|| panic!("README example `ptower {args}` has no golden case"));
        let golden = std::fs::read_to_string(golden_path(stem)).unwrap();
        assert_eq!(shown, golden, "README output for `ptower {args}` differs from {stem}.json");
        let actual = invoke(&args);
        assert_eq!(actual.code, 0);
        assert_eq!(actual.stdout, golden, "`ptower {args}` no longer matches {stem}.json");
    }
}

#[test]
fn example_extraction() {
    let text = "intro\n```console\n$ ptower prank -D -23 -p 3\n{\"p_rank\": 1}\n```\n";
    assert_eq!(
        examples(text),
        vec![("prank -D -23 -p 3".to_string(), "{\"p_rank\": 1}\n".to_string())]
    );
}
