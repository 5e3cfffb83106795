use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use super::PointSet;
use crate::error::{Error, Result};

/// Largest carrier for which open families are enumerated.
pub const MAX_TOPOLOGY_POINTS: usize = 24;

/// Topology on a finite carrier, stored as its full family of open sets.
///
/// Opens are sorted by size and then by their sorted member lists, so two
/// topologies are equal exactly when their families are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    carrier: PointSet,
    opens: Vec<PointSet>,
}

impl FiniteTopology {
    pub fn discrete(carrier: PointSet) -> Result<Self> {
        let singletons: Vec<_> = carrier.iter().map(PointSet::singleton).collect();
        generate_topology(&singletons, carrier)
    }

    pub fn indiscrete(carrier: PointSet) -> Result<Self> {
        generate_topology(&[carrier], carrier)
    }

    pub fn carrier(&self) -> PointSet {
        self.carrier
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.opens.binary_search_by(|o| canonical_cmp(o, &set)).is_ok()
    }

    /// Smallest open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> Option<PointSet> {
        if !self.carrier.contains(x) {
            return None;
        }
        Some(
            self.opens
                .iter()
                .filter(|o| o.contains(x))
                .fold(self.carrier, |acc, o| acc.intersection(*o)),
        )
    }

    pub fn is_closed_under_union(&self) -> bool {
        self.opens
            .iter()
            .all(|a| self.opens.iter().all(|b| self.is_open(a.union(*b))))
    }

    pub fn is_closed_under_intersection(&self) -> bool {
        self.opens
            .iter()
            .all(|a| self.opens.iter().all(|b| self.is_open(a.intersection(*b))))
    }

    /// Every open of `self` is open in `other`.
    pub fn is_coarser_than(&self, other: &FiniteTopology) -> bool {
        self.carrier == other.carrier && self.opens.iter().all(|o| other.is_open(*o))
    }
}

impl Serialize for FiniteTopology {
    /// The canonical list of opens.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.opens.serialize(s)
    }
}

fn canonical_cmp(a: &PointSet, b: &PointSet) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().collect::<Vec<_>>().cmp(&b.iter().collect::<Vec<_>>()))
}

/// Topology generated by `base` on `carrier`.
///
/// The family is used as a subbase: each point's minimal neighbourhood is the
/// intersection of the members containing it, and the opens are all unions of
/// minimal neighbourhoods together with the empty set and the carrier.
pub fn generate_topology(base: &[PointSet], carrier: PointSet) -> Result<FiniteTopology> {
    if carrier.len() > MAX_TOPOLOGY_POINTS {
        return Err(Error::TooManyPoints {
            max: MAX_TOPOLOGY_POINTS,
            got: carrier.len(),
        });
    }
    for b in base {
        if !b.is_subset(carrier) {
            return Err(Error::InvalidValue(format!(
                "base set {b:?} is not inside the carrier {carrier:?}"
            )));
        }
    }
    let minimal: BTreeSet<PointSet> = carrier
        .iter()
        .map(|x| {
            base.iter()
                .filter(|b| b.contains(x))
                .fold(carrier, |acc, b| acc.intersection(*b))
        })
        .collect();
    let mut opens: BTreeSet<PointSet> = BTreeSet::new();
    opens.insert(PointSet::empty());
    opens.insert(carrier);
    for u in &minimal {
        let grown: Vec<PointSet> = opens.iter().map(|o| o.union(*u)).collect();
        opens.extend(grown);
    }
    let mut opens: Vec<PointSet> = opens.into_iter().collect();
    opens.sort_by(canonical_cmp);
    Ok(FiniteTopology { carrier, opens })
}

/// Least topology finer than both inputs.
pub fn join_topologies(t1: &FiniteTopology, t2: &FiniteTopology) -> Result<FiniteTopology> {
    if t1.carrier != t2.carrier {
        return Err(Error::PointSetMismatch(t1.carrier.len(), t2.carrier.len()));
    }
    // Pairwise intersections of opens form a base; their minimal members are
    // the intersections of the two minimal neighbourhoods.
    let base: Vec<PointSet> = t1
        .carrier
        .iter()
        .map(|x| {
            let a = t1.minimal_open(x).unwrap_or(t1.carrier);
            let b = t2.minimal_open(x).unwrap_or(t2.carrier);
            a.intersection(b)
        })
        .collect();
    generate_topology(&base, t1.carrier)
}
