//! Axiom reports shared by every checker.

use std::cmp::Ordering;

use serde::Serialize;

use crate::ext::ExtValue;
use crate::scalar::Scalar;

/// Identifiers of the properties the checkers sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    /// `w_t(x, x) = 0`.
    QM1,
    /// Split-scale additive triangle.
    QM2,
    /// Nonincreasing in the scale.
    QM3,
    /// `w(x, x, t) = 0`.
    W1Diagonal,
    /// `w(x, y, t) = 0` only when `x = y`.
    W1Separation,
    /// `w(x, y, t) < 1`.
    W1Bound,
    /// Split-scale conorm triangle.
    W3,
    /// Nonincreasing in the scale (conorm regime).
    W4,
    /// `t * w_t` nonincreasing.
    ConvexScaling,
    /// `w_mu <= (lambda / mu) * w_lambda` for `lambda <= mu`.
    ScaleRatio,
    /// The gauge claims symmetry but is not symmetric.
    ClaimedSymmetry,
    /// The gauge claims convexity but fails the convexity sweep.
    ClaimedConvexity,
    /// `W(x, z) <= W(x, y) * W(y, z)` under profile convolution.
    EnrichedTriangle,
    /// `d(x, x) = 0`.
    Reflexivity,
    /// `d(x, z) <= d(x, y) + d(y, z)`.
    Triangle,
    /// Diagonal contained in every basic entourage.
    QN1,
    /// Upward closure (holds by representation).
    QN2,
    /// Base refinement under finite intersections.
    QN3,
    /// Small composites.
    QN4,
}

/// One failed instance of an axiom.
///
/// `points` lists the witnessing points in the order the axiom mentions them;
/// `params` lists the scales and radii involved (documented per checker).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation<T: Scalar> {
    pub axiom: Axiom,
    pub points: Vec<usize>,
    pub params: Vec<T>,
    pub lhs: ExtValue<T>,
    pub rhs: ExtValue<T>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport<T: Scalar> {
    pub checked: Vec<Axiom>,
    pub violations: Vec<Violation<T>>,
    /// Informational: whether the swept values were symmetric.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
}

impl<T: Scalar> AxiomReport<T> {
    pub fn new(checked: Vec<Axiom>) -> Self {
        AxiomReport {
            checked,
            violations: Vec::new(),
            symmetric: None,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, axiom: Axiom) -> impl Iterator<Item = &Violation<T>> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }

    pub fn push(&mut self, axiom: Axiom, points: Vec<usize>, params: Vec<T>, lhs: ExtValue<T>, rhs: ExtValue<T>) {
        self.violations.push(Violation {
            axiom,
            points,
            params,
            lhs,
            rhs,
        });
    }

    /// Merges another report, keeping `checked` free of duplicates.
    pub fn merge(&mut self, other: AxiomReport<T>) {
        for a in other.checked {
            if !self.checked.contains(&a) {
                self.checked.push(a);
            }
        }
        self.violations.extend(other.violations);
        self.symmetric = match (self.symmetric, other.symmetric) {
            (Some(a), Some(b)) => Some(a && b),
            (a, b) => a.or(b),
        };
    }

    /// Lexicographic order on (axiom, points, params).
    pub fn sort(&mut self) {
        self.violations.sort_by(|a, b| {
            a.axiom
                .cmp(&b.axiom)
                .then_with(|| a.points.cmp(&b.points))
                .then_with(|| {
                    a.params
                        .iter()
                        .zip(&b.params)
                        .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
                        .find(|o| *o != Ordering::Equal)
                        .unwrap_or_else(|| a.params.len().cmp(&b.params.len()))
                })
        });
    }
}
