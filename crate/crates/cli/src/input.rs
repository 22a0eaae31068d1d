// SPDX-License-Identifier: Apache-2.0

//! Turning command-line text into library values: integers of any size,
//! relation lists given inline or in a file, and group tables given by
//! builtin name or JSON file.

use std::path::Path;

use num_bigint::BigInt;
use ptower_core::groupcore::{library, GroupError, GroupTable};
use ptower_core::magnus::{parse_word, MagnusError, Word};

/// Parses a decimal integer of arbitrary length.
pub fn parse_bigint(text: &str) -> Result<BigInt, String> {
    text.trim().parse::<BigInt>().map_err(|_| format!("{text:?} is not an integer"))
}

/// Parses a relation list: words separated by `;` or newlines. Blank lines
/// and lines starting with `#` are skipped. Syntax errors report positions
/// within the whole text.
pub fn parse_relations(text: &str) -> Result<Vec<Word>, MagnusError> {
    let mut words = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut offset = 0;
        for chunk in line.split(';') {
            if !chunk.trim().is_empty() {
                let word = parse_word(chunk).map_err(|e| match e {
                    MagnusError::Syntax { column, message, .. } => MagnusError::Syntax {
                        line: line_no + 1,
                        column: column + line[..offset].chars().count(),
                        message,
                    },
                    other => other,
                })?;
                words.push(word);
            }
            offset += chunk.len() + 1;
        }
    }
    Ok(words)
}

/// Reads relations from `arg`, treated as a file path when such a file
/// exists and as inline text otherwise.
pub fn read_relations(arg: &str) -> Result<Vec<Word>, ptower_core::Error> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path)
            .map_err(|e| GroupError::Schema(format!("cannot read relations file {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    Ok(parse_relations(&text)?)
}

/// Loads a group by builtin name, or from a JSON file
/// `{"p": …, "order": …, "table": [[…]]}`.
pub fn load_group(spec: &str) -> Result<GroupTable, GroupError> {
    if library::NAMES.contains(&spec) {
        return library::builtin(spec);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Schema(format!("cannot read {spec}: {e}")))?;
        return GroupTable::from_json_str(&text);
    }
    Err(GroupError::UnknownGroup(spec.to_string()))
}
