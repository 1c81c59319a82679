//! Examples files: one `<individual> <label>` pair per line, label 1 for
//! positive, -1 for negative, 0 for unlabelled. `#` starts a comment line.
//! Individuals absent from the file count as unlabelled.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::kb::Label;

/// Parse an examples document.
pub fn parse_examples(text: &str) -> Result<BTreeMap<String, Label>> {
    let mut labels = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [name, flag] = tokens[..] else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `<individual> <1|-1|0>`, got `{line}`"),
            });
        };
        let label = match flag {
            "1" => Label::Positive,
            "-1" => Label::Negative,
            "0" => Label::Unlabelled,
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("label must be 1, -1 or 0, got `{other}`"),
                })
            }
        };
        if labels.insert(name.to_string(), label).is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("individual `{name}` labelled twice"),
            });
        }
    }
    Ok(labels)
}

/// Read an examples file from disk.
pub fn load_examples(path: impl AsRef<Path>) -> Result<BTreeMap<String, Label>> {
    parse_examples(&std::fs::read_to_string(path)?)
}

/// Render labels back into the examples grammar, sorted by individual.
pub fn write_examples(labels: &BTreeMap<String, Label>) -> String {
    let mut out = String::new();
    for (name, label) in labels {
        let flag = match label {
            Label::Positive => "1",
            Label::Negative => "-1",
            Label::Unlabelled => "0",
        };
        out.push_str(name);
        out.push(' ');
        out.push_str(flag);
        out.push('\n');
    }
    out
}
