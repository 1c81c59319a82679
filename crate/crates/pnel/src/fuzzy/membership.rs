//! Membership functions over concrete values.
//!
//! Numeric restrictions are the usual piecewise-linear shapes (shoulders,
//! triangles, trapezoids) plus crisp threshold tests; boolean restrictions
//! are crisp equality. Every shape grades a value into `[0, 1]`.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// One membership function.
///
/// Shapes are compared, hashed and ordered by structure so they can live
/// inside concept terms; parameter comparison uses the IEEE total order
/// (construction normalises `-0.0` to `0.0`, and rejects NaN).
#[derive(Debug, Clone)]
pub enum FuzzyDatatype {
    /// 1 up to `a`, falling linearly to 0 at `b`.
    LeftShoulder { a: f64, b: f64 },
    /// 0 up to `a`, rising linearly to 1 at `b`.
    RightShoulder { a: f64, b: f64 },
    /// 0 outside `(a, c)`, peaking at 1 in `b`.
    Triangular { a: f64, b: f64, c: f64 },
    /// 0 outside `(a, d)`, plateau at 1 on `[b, c]`.
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
    /// Crisp equality on booleans.
    EqualsBool(bool),
    /// Crisp `x >= v`. Housed for completeness; never minted by fuzzification.
    AtLeast(f64),
    /// Crisp `x <= v`. Housed for completeness; never minted by fuzzification.
    AtMost(f64),
}

fn finite(params: &[f64]) -> Result<()> {
    for p in params {
        if !p.is_finite() {
            return Err(Error::InvalidShape(format!("non-finite parameter {p}")));
        }
    }
    Ok(())
}

fn norm_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl FuzzyDatatype {
    pub fn left_shoulder(a: f64, b: f64) -> Result<Self> {
        finite(&[a, b])?;
        if a < b {
            Ok(FuzzyDatatype::LeftShoulder {
                a: norm_zero(a),
                b: norm_zero(b),
            })
        } else {
            Err(Error::InvalidShape(format!("left-shoulder needs a < b, got ({a}, {b})")))
        }
    }

    pub fn right_shoulder(a: f64, b: f64) -> Result<Self> {
        finite(&[a, b])?;
        if a < b {
            Ok(FuzzyDatatype::RightShoulder {
                a: norm_zero(a),
                b: norm_zero(b),
            })
        } else {
            Err(Error::InvalidShape(format!("right-shoulder needs a < b, got ({a}, {b})")))
        }
    }

    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self> {
        finite(&[a, b, c])?;
        if a < b && b < c {
            Ok(FuzzyDatatype::Triangular {
                a: norm_zero(a),
                b: norm_zero(b),
                c: norm_zero(c),
            })
        } else {
            Err(Error::InvalidShape(format!("triangular needs a < b < c, got ({a}, {b}, {c})")))
        }
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        finite(&[a, b, c, d])?;
        if a < b && b <= c && c < d {
            Ok(FuzzyDatatype::Trapezoidal {
                a: norm_zero(a),
                b: norm_zero(b),
                c: norm_zero(c),
                d: norm_zero(d),
            })
        } else {
            Err(Error::InvalidShape(format!(
                "trapezoidal needs a < b <= c < d, got ({a}, {b}, {c}, {d})"
            )))
        }
    }

    pub fn at_least(v: f64) -> Result<Self> {
        finite(&[v])?;
        Ok(FuzzyDatatype::AtLeast(norm_zero(v)))
    }

    pub fn at_most(v: f64) -> Result<Self> {
        finite(&[v])?;
        Ok(FuzzyDatatype::AtMost(norm_zero(v)))
    }

    /// Grade a numeric value. Boolean shapes grade numbers as 0.
    pub fn grade_numeric(&self, x: f64) -> f64 {
        match *self {
            FuzzyDatatype::LeftShoulder { a, b } => {
                if x <= a {
                    1.0
                } else if x >= b {
                    0.0
                } else {
                    (b - x) / (b - a)
                }
            }
            FuzzyDatatype::RightShoulder { a, b } => {
                if x <= a {
                    0.0
                } else if x >= b {
                    1.0
                } else {
                    (x - a) / (b - a)
                }
            }
            FuzzyDatatype::Triangular { a, b, c } => {
                if x <= a || x >= c {
                    0.0
                } else if x <= b {
                    (x - a) / (b - a)
                } else {
                    (c - x) / (c - b)
                }
            }
            FuzzyDatatype::Trapezoidal { a, b, c, d } => {
                if x <= a || x >= d {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else if x <= c {
                    1.0
                } else {
                    (d - x) / (d - c)
                }
            }
            FuzzyDatatype::AtLeast(v) => {
                if x >= v {
                    1.0
                } else {
                    0.0
                }
            }
            FuzzyDatatype::AtMost(v) => {
                if x <= v {
                    1.0
                } else {
                    0.0
                }
            }
            FuzzyDatatype::EqualsBool(_) => 0.0,
        }
    }

    /// Grade a boolean value. Numeric shapes grade booleans as 0.
    pub fn grade_boolean(&self, b: bool) -> f64 {
        match *self {
            FuzzyDatatype::EqualsBool(v) => {
                if v == b {
                    1.0
                } else {
                    0.0
                }
            }
            _ => 0.0,
        }
    }

    /// Shape keyword used in the textual export.
    pub fn shape_name(&self) -> &'static str {
        match self {
            FuzzyDatatype::LeftShoulder { .. } => "left-shoulder",
            FuzzyDatatype::RightShoulder { .. } => "right-shoulder",
            FuzzyDatatype::Triangular { .. } => "triangular",
            FuzzyDatatype::Trapezoidal { .. } => "trapezoidal",
            FuzzyDatatype::EqualsBool(_) => "boolean",
            FuzzyDatatype::AtLeast(_) => "at-least",
            FuzzyDatatype::AtMost(_) => "at-most",
        }
    }

    /// Numeric parameters in declaration order.
    pub fn params(&self) -> Vec<f64> {
        match *self {
            FuzzyDatatype::LeftShoulder { a, b } | FuzzyDatatype::RightShoulder { a, b } => {
                vec![a, b]
            }
            FuzzyDatatype::Triangular { a, b, c } => vec![a, b, c],
            FuzzyDatatype::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
            FuzzyDatatype::EqualsBool(_) => vec![],
            FuzzyDatatype::AtLeast(v) | FuzzyDatatype::AtMost(v) => vec![v],
        }
    }

    fn tag(&self) -> u8 {
        match self {
            FuzzyDatatype::LeftShoulder { .. } => 0,
            FuzzyDatatype::RightShoulder { .. } => 1,
            FuzzyDatatype::Triangular { .. } => 2,
            FuzzyDatatype::Trapezoidal { .. } => 3,
            FuzzyDatatype::EqualsBool(false) => 4,
            FuzzyDatatype::EqualsBool(true) => 5,
            FuzzyDatatype::AtLeast(_) => 6,
            FuzzyDatatype::AtMost(_) => 7,
        }
    }

    /// Key giving a total order consistent with equality.
    fn key(&self) -> (u8, [u64; 4]) {
        let mut bits = [0u64; 4];
        for (i, p) in self.params().iter().enumerate() {
            // Monotone bit mapping: orders like f64::total_cmp.
            let raw = p.to_bits();
            bits[i] = if raw >> 63 == 1 { !raw } else { raw | (1 << 63) };
        }
        (self.tag(), bits)
    }
}

impl PartialEq for FuzzyDatatype {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for FuzzyDatatype {}

impl Hash for FuzzyDatatype {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for FuzzyDatatype {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FuzzyDatatype {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// A membership function together with the label it was minted under,
/// e.g. `hasBiRads_medium` for family sets or `true` for boolean equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzySet {
    pub label: String,
    pub shape: FuzzyDatatype,
}

impl FuzzySet {
    pub fn new(label: impl Into<String>, shape: FuzzyDatatype) -> Self {
        FuzzySet {
            label: label.into(),
            shape,
        }
    }

    /// Boolean equality set labelled `true` or `false`.
    pub fn boolean(value: bool) -> Self {
        FuzzySet {
            label: value.to_string(),
            shape: FuzzyDatatype::EqualsBool(value),
        }
    }
}
