//! Equal-width fuzzification.

use super::{centroids_to_family, Fuzzifier, FuzzySetFamily};
use crate::error::{Error, Result};

/// Anchors spread evenly across the observed range, giving a Ruspini
/// partition (memberships sum to 1 inside the range).
#[derive(Debug, Clone, Copy)]
pub struct UniformPartition {
    pub sets: usize,
}

impl Fuzzifier for UniformPartition {
    fn name(&self) -> &'static str {
        "uniform"
    }

    fn build(&self, property: &str, values: &[f64]) -> Result<FuzzySetFamily> {
        uniform_partition(property, values, self.sets)
    }
}

/// Build an equal-width family of `k` sets over the observed values.
pub fn uniform_partition(property: &str, values: &[f64], k: usize) -> Result<FuzzySetFamily> {
    let err = |message: String| Error::Fuzzification {
        property: property.to_string(),
        message,
    };
    if k < 2 {
        return Err(err(format!("need at least 2 sets, got {k}")));
    }
    if values.is_empty() {
        return Err(err("no values".to_string()));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !min.is_finite() || !max.is_finite() {
        return Err(err("non-finite values".to_string()));
    }
    if min == max {
        return Err(err(format!("degenerate range [{min}, {max}]")));
    }
    let anchors: Vec<f64> = (0..k)
        .map(|i| min + i as f64 * (max - min) / (k - 1) as f64)
        .collect();
    centroids_to_family(property, &anchors, (min, max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FuzzyDatatype;

    #[test]
    fn three_sets_over_unit_range() {
        let f = uniform_partition("p", &[0.0, 10.0, 4.0], 3).unwrap();
        assert_eq!(f.range, (0.0, 10.0));
        assert_eq!(f.sets[0].shape, FuzzyDatatype::left_shoulder(0.0, 5.0).unwrap());
        assert_eq!(
            f.sets[1].shape,
            FuzzyDatatype::triangular(0.0, 5.0, 10.0).unwrap()
        );
        assert_eq!(
            f.sets[2].shape,
            FuzzyDatatype::right_shoulder(5.0, 10.0).unwrap()
        );
    }

    #[test]
    fn five_sets_space_anchors_evenly() {
        let f = uniform_partition("p", &[0.0, 100.0], 5).unwrap();
        let expected = [0.0, 25.0, 50.0, 75.0, 100.0];
        // Recover anchors from the shapes: each interior triangle peaks at
        // its anchor.
        for (i, set) in f.sets.iter().enumerate().take(4).skip(1) {
            match set.shape {
                FuzzyDatatype::Triangular { b, .. } => assert_eq!(b, expected[i]),
                ref other => panic!("expected a triangle, got {other:?}"),
            }
        }
    }

    /// Memberships of an equal-width family sum to 1 across the range.
    #[test]
    fn partition_of_unity_across_sweep() {
        for k in [2, 3, 5, 7] {
            let f = uniform_partition("p", &[-3.0, 12.5], k).unwrap();
            for i in 0..=1000 {
                let x = -3.0 + i as f64 * 15.5 / 1000.0;
                let total: f64 = f.sets.iter().map(|s| s.shape.grade_numeric(x)).sum();
                assert!(
                    (total - 1.0).abs() < 1e-9,
                    "k={k}: sum at {x} was {total}"
                );
            }
        }
    }

    #[test]
    fn degenerate_inputs_error() {
        assert!(uniform_partition("p", &[], 3).is_err());
        assert!(uniform_partition("p", &[4.0, 4.0, 4.0], 3).is_err());
        assert!(uniform_partition("p", &[0.0, 1.0], 1).is_err());
    }
}
