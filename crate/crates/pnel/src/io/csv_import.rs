//! CSV ingestion: one row per individual, one feature per column.
//!
//! Numeric columns become numeric data properties, boolean columns boolean
//! ones, and a categorical column `c` becomes one class `c_<value>` per
//! distinct value. Column kinds are inferred from the data unless
//! overridden. The target column is turned into example labels (and
//! excluded from the features); empty cells are skipped.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kb::{DataKind, KbBuilder, KnowledgeBase, Label, Value};

/// Which target-column values count as positive.
#[derive(Debug, Clone, PartialEq)]
pub enum PositiveFlag {
    /// Cell equals this string exactly.
    Equals(String),
    /// Cell parses to a number ≥ this bound.
    AtLeast(f64),
    /// Cell parses to a number ≤ this bound.
    AtMost(f64),
}

impl PositiveFlag {
    /// Parse the `--positive` argument: `>=N` and `<=N` compare
    /// numerically, anything else matches literally.
    pub fn parse(text: &str) -> Result<PositiveFlag> {
        if let Some(bound) = text.strip_prefix(">=") {
            let n: f64 = bound.trim().parse().map_err(|_| {
                Error::Config(format!("positive flag: cannot parse `{bound}` as a number"))
            })?;
            return Ok(PositiveFlag::AtLeast(n));
        }
        if let Some(bound) = text.strip_prefix("<=") {
            let n: f64 = bound.trim().parse().map_err(|_| {
                Error::Config(format!("positive flag: cannot parse `{bound}` as a number"))
            })?;
            return Ok(PositiveFlag::AtMost(n));
        }
        Ok(PositiveFlag::Equals(text.to_string()))
    }

    fn matches(&self, cell: &str, row: usize, column: &str) -> Result<bool> {
        match self {
            PositiveFlag::Equals(v) => Ok(cell == v),
            PositiveFlag::AtLeast(n) | PositiveFlag::AtMost(n) => {
                let x: f64 = cell.parse().map_err(|_| {
                    Error::Csv(format!(
                        "row {row}, column `{column}`: cannot compare `{cell}` numerically"
                    ))
                })?;
                Ok(match self {
                    PositiveFlag::AtLeast(_) => x >= *n,
                    _ => x <= *n,
                })
            }
        }
    }
}

/// How to encode a feature column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Numeric,
    Boolean,
    Categorical,
}

/// Conversion settings.
#[derive(Debug, Clone)]
pub struct CsvOptions {
    /// Column holding the class label.
    pub target: String,
    pub positive: PositiveFlag,
    /// Column holding individual names; rows are named `row<i>` without it.
    pub id: Option<String>,
    /// Per-column kind overrides; everything else is inferred.
    pub kinds: BTreeMap<String, ColumnKind>,
}

/// Replace whitespace so column values can serve as single-token names.
fn tokenize_name(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join("_")
}

fn infer_kind(cells: &[&str]) -> ColumnKind {
    let filled: Vec<&&str> = cells.iter().filter(|c| !c.is_empty()).collect();
    if !filled.is_empty()
        && filled
            .iter()
            .all(|c| c.eq_ignore_ascii_case("true") || c.eq_ignore_ascii_case("false"))
    {
        return ColumnKind::Boolean;
    }
    if filled
        .iter()
        .all(|c| c.parse::<f64>().map(|x| x.is_finite()).unwrap_or(false))
    {
        return ColumnKind::Numeric;
    }
    ColumnKind::Categorical
}

/// Convert CSV text into a knowledge base plus example labels.
pub fn csv_to_kb(text: &str, options: &CsvOptions) -> Result<(KnowledgeBase, BTreeMap<String, Label>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Csv(e.to_string()))?
        .iter()
        .map(tokenize_name)
        .collect();
    {
        let mut seen = BTreeSet::new();
        for name in &headers {
            if name.is_empty() || !seen.insert(name) {
                return Err(Error::Csv(format!("empty or duplicate column name `{name}`")));
            }
        }
    }
    let column = |name: &str| -> Result<usize> {
        let wanted = tokenize_name(name);
        headers
            .iter()
            .position(|h| *h == wanted)
            .ok_or_else(|| Error::Csv(format!("no column named `{name}`")))
    };
    let target_col = column(&options.target)?;
    let id_col = options.id.as_deref().map(column).transpose()?;

    let rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| {
            r.map(|rec| rec.iter().map(|c| c.trim().to_string()).collect())
                .map_err(|e| Error::Csv(e.to_string()))
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Csv("no data rows".to_string()));
    }

    let feature_cols: Vec<usize> = (0..headers.len())
        .filter(|&i| i != target_col && Some(i) != id_col)
        .collect();
    let mut kinds: BTreeMap<usize, ColumnKind> = BTreeMap::new();
    for &i in &feature_cols {
        let kind = match options.kinds.get(&headers[i]) {
            Some(&k) => k,
            None => {
                let cells: Vec<&str> = rows.iter().map(|r| r[i].as_str()).collect();
                infer_kind(&cells)
            }
        };
        kinds.insert(i, kind);
    }

    // Individual names first, so assertion errors can use them.
    let mut names: Vec<String> = Vec::with_capacity(rows.len());
    let mut seen = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        let name = match id_col {
            Some(i) => tokenize_name(&row[i]),
            None => format!("row{}", r + 1),
        };
        if name.is_empty() {
            return Err(Error::Csv(format!("row {}: empty individual name", r + 1)));
        }
        if !seen.insert(name.clone()) {
            return Err(Error::Csv(format!(
                "row {}: duplicate individual name `{name}`",
                r + 1
            )));
        }
        names.push(name);
    }

    let mut builder = KbBuilder::default();
    for (&i, &kind) in &kinds {
        match kind {
            ColumnKind::Numeric => {
                builder.declare_data_property(&headers[i], DataKind::Numeric);
            }
            ColumnKind::Boolean => {
                builder.declare_data_property(&headers[i], DataKind::Boolean);
            }
            ColumnKind::Categorical => {
                let values: BTreeSet<String> = rows
                    .iter()
                    .map(|r| r[i].as_str())
                    .filter(|c| !c.is_empty())
                    .map(tokenize_name)
                    .collect();
                for v in values {
                    builder.declare_class(format!("{}_{v}", headers[i]));
                }
            }
        }
    }
    for name in &names {
        builder.declare_individual(name);
    }

    let mut labels = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        let row_no = r + 1;
        let name = &names[r];
        for &i in &feature_cols {
            let cell = row[i].as_str();
            if cell.is_empty() {
                continue;
            }
            let column = headers[i].as_str();
            match kinds[&i] {
                ColumnKind::Numeric => {
                    let x: f64 = cell.parse().map_err(|_| {
                        Error::Csv(format!(
                            "row {row_no}, column `{column}`: cannot parse `{cell}` as a number"
                        ))
                    })?;
                    if !x.is_finite() {
                        return Err(Error::Csv(format!(
                            "row {row_no}, column `{column}`: `{cell}` is not finite"
                        )));
                    }
                    builder.assert_value(name, column, Value::Num(x))?;
                }
                ColumnKind::Boolean => {
                    let b = if cell.eq_ignore_ascii_case("true") {
                        true
                    } else if cell.eq_ignore_ascii_case("false") {
                        false
                    } else {
                        return Err(Error::Csv(format!(
                            "row {row_no}, column `{column}`: expected true/false, got `{cell}`"
                        )));
                    };
                    builder.assert_value(name, column, Value::Bool(b))?;
                }
                ColumnKind::Categorical => {
                    let class = format!("{column}_{}", tokenize_name(cell));
                    builder.assert_class(name, &class)?;
                }
            }
        }
        let target_cell = row[target_col].as_str();
        if target_cell.is_empty() {
            return Err(Error::Csv(format!(
                "row {row_no}, column `{}`: empty label cell",
                headers[target_col]
            )));
        }
        let positive = options
            .positive
            .matches(target_cell, row_no, &headers[target_col])?;
        labels.insert(
            name.clone(),
            if positive { Label::Positive } else { Label::Negative },
        );
    }
    Ok((builder.build(), labels))
}
