//! Classifier documents in a fuzzy-OWL-style textual syntax.
//!
//! ```text
//! # target: Severe
//! (define-fuzzy-concept hasBiRads_medium triangular(1,6,2.780,3.997,5.022))
//! (implies (some hasBiRads hasBiRads_medium) Severe 0.874000)
//! (implies (and A (some r B)) FALSEP_Severe 1.000000)
//! ```
//!
//! One `define-fuzzy-concept` line per fuzzy set — shape arguments are the
//! family range followed by the shape parameters — then one `implies` line
//! per rule, positive rules first, each in learned order, degrees with six
//! decimals. Set definitions precede the rules that mention them, so the
//! document can be re-parsed without the knowledge base.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fuzzify::FuzzySetFamily;
use crate::fuzzy::{FuzzyDatatype, FuzzySet};
use crate::kb::{Concept, Hypothesis, WeightedRule};

/// One exported fuzzy set: its family's range plus its own shape.
#[derive(Debug, Clone, PartialEq)]
pub struct ExportedSet {
    pub label: String,
    pub range: (f64, f64),
    pub shape: FuzzyDatatype,
}

/// A parsed classifier document.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDocument {
    pub target: String,
    pub sets: Vec<ExportedSet>,
    pub hypothesis: Hypothesis,
}

/// Integral values print bare (`6`, not `6.000`); everything else with
/// three decimals.
fn format_bound(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.3}")
    }
}

fn define_line(set: &ExportedSet) -> String {
    let mut args: Vec<String> = vec![format_bound(set.range.0), format_bound(set.range.1)];
    args.extend(set.shape.params().iter().map(|p| format!("{p:.3}")));
    format!(
        "(define-fuzzy-concept {} {}({}))",
        set.label,
        set.shape.shape_name(),
        args.join(",")
    )
}

fn rule_line(rule: &WeightedRule) -> String {
    format!(
        "(implies {} {} {:.6})",
        rule.body.render(),
        rule.head,
        rule.degree
    )
}

/// Flatten families into exported sets, families in sorted property order,
/// sets in their family order (low anchor to high).
pub fn exported_sets(families: &BTreeMap<String, FuzzySetFamily>) -> Vec<ExportedSet> {
    families
        .values()
        .flat_map(|family| {
            family.sets.iter().map(|set| ExportedSet {
                label: set.label.clone(),
                range: family.range,
                shape: set.shape.clone(),
            })
        })
        .collect()
}

/// Render a document from pre-flattened sets.
pub fn write_document(target: &str, sets: &[ExportedSet], hypothesis: &Hypothesis) -> String {
    let mut out = format!("# target: {target}\n");
    if hypothesis.is_empty() {
        return out;
    }
    for set in sets {
        out.push_str(&define_line(set));
        out.push('\n');
    }
    for rule in hypothesis.p_rules.iter().chain(&hypothesis.n_rules) {
        out.push_str(&rule_line(rule));
        out.push('\n');
    }
    out
}

/// Render a learnt hypothesis with its fuzzy-set families.
pub fn write_model(hypothesis: &Hypothesis, families: &BTreeMap<String, FuzzySetFamily>) -> String {
    write_document(&hypothesis.target, &exported_sets(families), hypothesis)
}

#[derive(Debug, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(line: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in line.chars() {
        match ch {
            '(' | ')' => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
                tokens.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
            }
            c => current.push(c),
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

fn parse_sexp(tokens: &[String], pos: &mut usize) -> Option<Sexp> {
    match tokens.get(*pos)?.as_str() {
        "(" => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos)?.as_str() {
                    ")" => {
                        *pos += 1;
                        return Some(Sexp::List(items));
                    }
                    _ => items.push(parse_sexp(tokens, pos)?),
                }
            }
        }
        ")" => None,
        atom => {
            *pos += 1;
            Some(Sexp::Atom(atom.to_string()))
        }
    }
}

fn parse_statement(line: &str, line_no: usize) -> Result<Sexp> {
    let tokens = tokenize(line);
    let mut pos = 0;
    let parsed = parse_sexp(&tokens, &mut pos);
    match parsed {
        Some(sexp @ Sexp::List(_)) if pos == tokens.len() => Ok(sexp),
        _ => Err(Error::Parse {
            line: line_no,
            message: format!("malformed statement `{line}`"),
        }),
    }
}

fn parse_define(items: &[Sexp], line_no: usize) -> Result<ExportedSet> {
    let bad = |message: String| Error::Parse { line: line_no, message };
    let [_, Sexp::Atom(label), Sexp::Atom(shape), Sexp::List(args)] = items else {
        return Err(bad("expected `(define-fuzzy-concept <label> <shape>(<args>))`".into()));
    };
    let [Sexp::Atom(arg_text)] = &args[..] else {
        return Err(bad("expected a comma-separated argument list".into()));
    };
    let numbers: Vec<f64> = arg_text
        .split(',')
        .map(|a| {
            a.parse::<f64>()
                .map_err(|_| bad(format!("cannot parse `{a}` as a number")))
        })
        .collect::<Result<_>>()?;
    if numbers.len() < 2 {
        return Err(bad("argument list needs the range plus shape parameters".into()));
    }
    let (range, params) = ((numbers[0], numbers[1]), &numbers[2..]);
    let shape = match (shape.as_str(), params) {
        ("left-shoulder", [a, b]) => FuzzyDatatype::left_shoulder(*a, *b),
        ("right-shoulder", [a, b]) => FuzzyDatatype::right_shoulder(*a, *b),
        ("triangular", [a, b, c]) => FuzzyDatatype::triangular(*a, *b, *c),
        ("trapezoidal", [a, b, c, d]) => FuzzyDatatype::trapezoidal(*a, *b, *c, *d),
        (name, params) => {
            return Err(bad(format!(
                "unknown shape `{name}` with {} parameters",
                params.len()
            )))
        }
    }
    .map_err(|e| bad(e.to_string()))?;
    Ok(ExportedSet {
        label: label.clone(),
        range,
        shape,
    })
}

fn parse_concept(
    sexp: &Sexp,
    sets: &BTreeMap<String, FuzzyDatatype>,
    line_no: usize,
) -> Result<Concept> {
    let bad = |message: String| Error::Parse { line: line_no, message };
    match sexp {
        Sexp::Atom(a) if a == "*top*" => Ok(Concept::Top),
        Sexp::Atom(a) => Ok(Concept::atomic(a)),
        Sexp::List(items) => match items.split_first() {
            Some((Sexp::Atom(op), rest)) if op == "and" => {
                if rest.len() < 2 {
                    return Err(bad("conjunction needs at least two parts".into()));
                }
                let parts = rest
                    .iter()
                    .map(|s| parse_concept(s, sets, line_no))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Concept::and(parts))
            }
            Some((Sexp::Atom(op), rest)) if op == "some" => {
                let [Sexp::Atom(property), filler] = rest else {
                    return Err(bad("expected `(some <property> <filler>)`".into()));
                };
                match filler {
                    Sexp::Atom(name) if name == "true" || name == "false" => {
                        Ok(Concept::some_data(property, FuzzySet::boolean(name == "true")))
                    }
                    Sexp::Atom(name) if sets.contains_key(name) => Ok(Concept::some_data(
                        property,
                        FuzzySet::new(name, sets[name].clone()),
                    )),
                    other => Ok(Concept::some_object(
                        property,
                        parse_concept(other, sets, line_no)?,
                    )),
                }
            }
            _ => Err(bad("expected `and`, `some`, a class name or `*top*`".into())),
        },
    }
}

/// Parse a classifier document.
pub fn parse_model(text: &str) -> Result<ModelDocument> {
    let mut target: Option<String> = None;
    let mut sets: Vec<ExportedSet> = Vec::new();
    let mut set_shapes: BTreeMap<String, FuzzyDatatype> = BTreeMap::new();
    let mut p_rules: Vec<WeightedRule> = Vec::new();
    let mut n_rules: Vec<WeightedRule> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(name) = rest.trim().strip_prefix("target:") {
                if target.is_none() {
                    target = Some(name.trim().to_string());
                }
            }
            continue;
        }
        let Some(target_name) = target.clone() else {
            return Err(Error::Parse {
                line: line_no,
                message: "document must start with a `# target: <name>` header".into(),
            });
        };
        let Sexp::List(items) = parse_statement(line, line_no)? else {
            unreachable!("parse_statement only returns lists");
        };
        match items.first() {
            Some(Sexp::Atom(head)) if head == "define-fuzzy-concept" => {
                let set = parse_define(&items, line_no)?;
                set_shapes.insert(set.label.clone(), set.shape.clone());
                sets.push(set);
            }
            Some(Sexp::Atom(head)) if head == "implies" => {
                let [_, body, Sexp::Atom(rule_head), Sexp::Atom(degree)] = &items[..] else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected `(implies <body> <head> <degree>)`".into(),
                    });
                };
                let degree: f64 = degree.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("cannot parse degree `{degree}`"),
                })?;
                if !(0.0..=1.0).contains(&degree) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("degree {degree} out of [0, 1]"),
                    });
                }
                let rule = WeightedRule {
                    body: parse_concept(body, &set_shapes, line_no)?,
                    head: rule_head.clone(),
                    degree,
                };
                if *rule_head == target_name {
                    p_rules.push(rule);
                } else {
                    if let Some(first) = n_rules.first() {
                        if first.head != *rule_head {
                            return Err(Error::Parse {
                                line: line_no,
                                message: format!(
                                    "conflicting veto heads `{}` and `{rule_head}`",
                                    first.head
                                ),
                            });
                        }
                    }
                    n_rules.push(rule);
                }
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown statement `{line}`"),
                })
            }
        }
    }

    let target = target.ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing `# target: <name>` header".into(),
    })?;
    Ok(ModelDocument {
        hypothesis: Hypothesis {
            target: target.clone(),
            p_rules,
            n_rules,
        },
        target,
        sets,
    })
}

/// Read a classifier document from disk.
pub fn load_model(path: impl AsRef<Path>) -> Result<ModelDocument> {
    parse_model(&std::fs::read_to_string(path)?)
}
