//! Turning observed numeric values into families of fuzzy sets.
//!
//! A family covers one data property with shoulder/triangle shapes laid out
//! around anchor points; anchors come either from an equal-width partition
//! of the observed range or from fuzzy c-means centroids. Methods implement
//! [`Fuzzifier`] and are looked up by registry name, so the choice is a
//! plain config key.

mod cmeans;
mod uniform;

pub use cmeans::{cmeans_centroids, CMeansConfig, CMeansIteration, CMeansRun, FuzzyCMeans};
pub use uniform::{uniform_partition, UniformPartition};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyDatatype, FuzzySet};
use crate::kb::KnowledgeBase;

/// The fuzzy sets minted for one numeric property.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySetFamily {
    pub property: String,
    /// Observed value range, recorded for the textual export.
    pub range: (f64, f64),
    pub sets: Vec<FuzzySet>,
}

/// Linguistic labels by set count. Families grow symmetrically around
/// `medium`; the two-set layout exists for hand-built families only.
pub fn set_labels(k: usize) -> Result<&'static [&'static str]> {
    match k {
        2 => Ok(&["low", "high"]),
        3 => Ok(&["low", "medium", "high"]),
        5 => Ok(&["veryLow", "low", "medium", "high", "veryHigh"]),
        7 => Ok(&[
            "extremelyLow",
            "veryLow",
            "low",
            "medium",
            "high",
            "veryHigh",
            "extremelyHigh",
        ]),
        other => Err(Error::Fuzzification {
            property: String::new(),
            message: format!("no label scheme for {other} sets"),
        }),
    }
}

/// Lay out a family around sorted anchor points: a left shoulder, interior
/// triangles, then a right shoulder. `range` records the observed extremes.
pub fn centroids_to_family(
    property: &str,
    centroids: &[f64],
    range: (f64, f64),
) -> Result<FuzzySetFamily> {
    let err = |message: String| Error::Fuzzification {
        property: property.to_string(),
        message,
    };
    if centroids.len() < 2 {
        return Err(err(format!("need at least 2 anchors, got {}", centroids.len())));
    }
    let mut anchors = centroids.to_vec();
    anchors.sort_by(f64::total_cmp);
    if anchors.windows(2).any(|w| w[0] == w[1]) {
        return Err(err("duplicate anchors".to_string()));
    }
    let labels = set_labels(anchors.len()).map_err(|_| {
        err(format!("no label scheme for {} sets", anchors.len()))
    })?;
    let k = anchors.len();
    let mut sets = Vec::with_capacity(k);
    for (i, label) in labels.iter().enumerate() {
        let shape = if i == 0 {
            FuzzyDatatype::left_shoulder(anchors[0], anchors[1])?
        } else if i == k - 1 {
            FuzzyDatatype::right_shoulder(anchors[k - 2], anchors[k - 1])?
        } else {
            FuzzyDatatype::triangular(anchors[i - 1], anchors[i], anchors[i + 1])?
        };
        sets.push(FuzzySet::new(format!("{property}_{label}"), shape));
    }
    Ok(FuzzySetFamily {
        property: property.to_string(),
        range,
        sets,
    })
}

/// A fuzzification method, selectable by name at run time.
pub trait Fuzzifier: Send + Sync {
    /// Registry name, lower case.
    fn name(&self) -> &'static str;
    /// Build the family for one property from its observed values.
    fn build(&self, property: &str, values: &[f64]) -> Result<FuzzySetFamily>;
}

/// Look a fuzzification method up by name.
pub fn fuzzifier(name: &str, sets: usize, cfg: CMeansConfig) -> Option<Box<dyn Fuzzifier>> {
    match name {
        "uniform" => Some(Box::new(UniformPartition { sets })),
        "cmeans" => Some(Box::new(FuzzyCMeans { sets, config: cfg })),
        _ => None,
    }
}

/// Registry names of all fuzzification methods.
pub const FUZZIFIER_NAMES: [&str; 2] = ["uniform", "cmeans"];

/// Build families for every numeric property of the KB. Properties whose
/// values cannot support a family (no values, a degenerate range, or too
/// few distinct values for the method) are skipped with a warning instead
/// of failing the run.
pub fn build_families(
    kb: &KnowledgeBase,
    method: &dyn Fuzzifier,
) -> (BTreeMap<String, FuzzySetFamily>, Vec<String>) {
    let mut families = BTreeMap::new();
    let mut warnings = Vec::new();
    for (prop, kind) in kb.data_properties() {
        if kind != crate::kb::DataKind::Numeric {
            continue;
        }
        let values = match kb.datatype_values(prop) {
            Ok(v) => v,
            Err(e) => {
                warnings.push(format!("skipping `{prop}`: {e}"));
                continue;
            }
        };
        if values.is_empty() {
            warnings.push(format!("skipping `{prop}`: no asserted values"));
            continue;
        }
        match method.build(prop, &values) {
            Ok(f) => {
                families.insert(prop.to_string(), f);
            }
            Err(e) => warnings.push(format!("skipping `{prop}`: {e}")),
        }
    }
    (families, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_schemes() {
        assert_eq!(set_labels(3).unwrap(), ["low", "medium", "high"]);
        assert_eq!(
            set_labels(5).unwrap(),
            ["veryLow", "low", "medium", "high", "veryHigh"]
        );
        assert_eq!(set_labels(7).unwrap().len(), 7);
        assert_eq!(set_labels(7).unwrap()[0], "extremelyLow");
        assert_eq!(set_labels(7).unwrap()[6], "extremelyHigh");
        assert!(set_labels(4).is_err());
    }

    #[test]
    fn family_layout_around_anchors() {
        let f = centroids_to_family("hasBiRads", &[2.780, 3.997, 5.022], (1.0, 6.0)).unwrap();
        assert_eq!(f.sets.len(), 3);
        assert_eq!(f.sets[0].label, "hasBiRads_low");
        assert_eq!(
            f.sets[0].shape,
            FuzzyDatatype::left_shoulder(2.780, 3.997).unwrap()
        );
        assert_eq!(f.sets[1].label, "hasBiRads_medium");
        assert_eq!(
            f.sets[1].shape,
            FuzzyDatatype::triangular(2.780, 3.997, 5.022).unwrap()
        );
        assert_eq!(
            f.sets[2].shape,
            FuzzyDatatype::right_shoulder(3.997, 5.022).unwrap()
        );
    }

    #[test]
    fn two_anchor_family_is_a_shoulder_pair() {
        let f = centroids_to_family("p", &[1.0, 5.0], (0.0, 6.0)).unwrap();
        assert_eq!(f.sets.len(), 2);
        assert!(matches!(f.sets[0].shape, FuzzyDatatype::LeftShoulder { .. }));
        assert!(matches!(f.sets[1].shape, FuzzyDatatype::RightShoulder { .. }));
    }

    #[test]
    fn anchors_are_sorted_and_deduplicated() {
        let f = centroids_to_family("p", &[5.0, 1.0, 3.0], (0.0, 6.0)).unwrap();
        assert_eq!(
            f.sets[1].shape,
            FuzzyDatatype::triangular(1.0, 3.0, 5.0).unwrap()
        );
        assert!(centroids_to_family("p", &[1.0, 1.0, 3.0], (0.0, 6.0)).is_err());
        assert!(centroids_to_family("p", &[1.0], (0.0, 6.0)).is_err());
    }

    #[test]
    fn registry_resolves_methods() {
        let cfg = CMeansConfig::default();
        assert_eq!(fuzzifier("uniform", 3, cfg).unwrap().name(), "uniform");
        assert_eq!(fuzzifier("cmeans", 3, cfg).unwrap().name(), "cmeans");
        assert!(fuzzifier("kmeans", 3, cfg).is_none());
    }
}
