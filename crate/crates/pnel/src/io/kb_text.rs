//! The native line-oriented knowledge-base format.
//!
//! ```text
//! class Person
//! subclass Student Person
//! objprop knows
//! dataprop age numeric
//! dataprop enrolled boolean
//! individual ann
//! instance ann Student
//! rel ann knows bob
//! val ann age 23
//! ```
//!
//! `#` starts a comment line; blank lines are ignored; declarations must
//! precede the assertions that use them. Loader errors carry line numbers.

use std::path::Path;

use crate::error::{Error, Result};
use crate::kb::{DataKind, KbBuilder, KnowledgeBase, Value};

fn parse_literal(token: &str, line: usize) -> Result<Value> {
    match token {
        "true" => Ok(Value::Bool(true)),
        "false" => Ok(Value::Bool(false)),
        other => {
            let number: f64 = other.parse().map_err(|_| Error::Parse {
                line,
                message: format!("expected a number, `true` or `false`, got `{other}`"),
            })?;
            if !number.is_finite() {
                return Err(Error::Parse {
                    line,
                    message: format!("literal `{other}` is not finite"),
                });
            }
            Ok(Value::Num(number))
        }
    }
}

/// Parse a knowledge-base document.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase> {
    let mut builder = KbBuilder::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let wrong_arity = |expected: &str| Error::Parse {
            line: line_no,
            message: format!("expected `{expected}`, got `{line}`"),
        };
        match tokens[0] {
            "class" => {
                let [_, name] = tokens[..] else {
                    return Err(wrong_arity("class <name>"));
                };
                builder.declare_class(name);
            }
            "subclass" => {
                let [_, sub, sup] = tokens[..] else {
                    return Err(wrong_arity("subclass <sub> <super>"));
                };
                builder.add_subclass(sub, sup).map_err(|e| e.at_line(line_no))?;
            }
            "objprop" => {
                let [_, name] = tokens[..] else {
                    return Err(wrong_arity("objprop <name>"));
                };
                builder.declare_object_property(name);
            }
            "dataprop" => {
                let [_, name, kind] = tokens[..] else {
                    return Err(wrong_arity("dataprop <name> numeric|boolean"));
                };
                let kind = match kind {
                    "numeric" => DataKind::Numeric,
                    "boolean" => DataKind::Boolean,
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("datatype must be numeric or boolean, got `{other}`"),
                        })
                    }
                };
                builder.declare_data_property(name, kind);
            }
            "individual" => {
                let [_, name] = tokens[..] else {
                    return Err(wrong_arity("individual <name>"));
                };
                builder.declare_individual(name);
            }
            "instance" => {
                let [_, ind, class] = tokens[..] else {
                    return Err(wrong_arity("instance <individual> <class>"));
                };
                builder.assert_class(ind, class).map_err(|e| e.at_line(line_no))?;
            }
            "rel" => {
                let [_, subject, prop, object] = tokens[..] else {
                    return Err(wrong_arity("rel <individual> <objprop> <individual>"));
                };
                builder
                    .assert_role(subject, prop, object)
                    .map_err(|e| e.at_line(line_no))?;
            }
            "val" => {
                let [_, ind, prop, literal] = tokens[..] else {
                    return Err(wrong_arity("val <individual> <dataprop> <literal>"));
                };
                let value = parse_literal(literal, line_no)?;
                builder
                    .assert_value(ind, prop, value)
                    .map_err(|e| e.at_line(line_no))?;
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown statement `{other}`"),
                })
            }
        }
    }
    Ok(builder.build())
}

/// Read a knowledge-base file from disk.
pub fn load_kb(path: impl AsRef<Path>) -> Result<KnowledgeBase> {
    parse_kb(&std::fs::read_to_string(path)?)
}

/// Render a knowledge base back into the native grammar: declarations
/// first, then assertions, everything in the store's sorted order.
pub fn write_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for name in kb.classes() {
        out.push_str(&format!("class {name}\n"));
    }
    for (sub, sup) in kb.subclass_axioms() {
        out.push_str(&format!("subclass {sub} {sup}\n"));
    }
    for name in kb.object_properties() {
        out.push_str(&format!("objprop {name}\n"));
    }
    for (name, kind) in kb.data_properties() {
        let kind = match kind {
            DataKind::Numeric => "numeric",
            DataKind::Boolean => "boolean",
        };
        out.push_str(&format!("dataprop {name} {kind}\n"));
    }
    for name in kb.individuals() {
        out.push_str(&format!("individual {name}\n"));
    }
    for (ind, class) in kb.class_assertion_pairs() {
        out.push_str(&format!("instance {ind} {class}\n"));
    }
    for (subject, prop, object) in kb.role_assertions() {
        out.push_str(&format!("rel {subject} {prop} {object}\n"));
    }
    for (ind, prop, value) in kb.data_assertion_triples() {
        out.push_str(&format!("val {ind} {prop} {value}\n"));
    }
    out
}
