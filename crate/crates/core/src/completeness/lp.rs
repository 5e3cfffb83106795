use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::scalar::Scalar;

/// Finite family of sequences truncated to a common length `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSequenceFamily<T> {
    p: T,
    len: usize,
    members: Vec<Vec<T>>,
}

impl<T: Scalar> TruncatedSequenceFamily<T> {
    /// Pads every member with zeros to the longest length (at least one).
    pub fn new(p: T, members: Vec<Vec<T>>) -> Result<Self> {
        if !(p >= T::one()) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "exponent must be finite and >= 1, got {p}"
            )));
        }
        if members.iter().flatten().any(|v| v.is_nan()) {
            return Err(Error::InvalidValue("sequence entries must not be NaN".into()));
        }
        let len = members.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let members = members
            .into_iter()
            .map(|mut m| {
                m.resize(len, T::zero());
                m
            })
            .collect();
        Ok(TruncatedSequenceFamily { p, len, members })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vec<T>] {
        &self.members
    }

    /// `sum_{k > n} |x_k|^p` for member `i` (coordinates are 1-based).
    pub fn tail_sum(&self, i: usize, n: usize) -> ExtValue<T> {
        let s = self.members[i][n.min(self.len)..]
            .iter()
            .fold(T::zero(), |acc, v| acc + v.abs().powf(self.p));
        ExtValue::saturating(s)
    }

    /// `l^p` distance between two equal-length vectors.
    pub fn distance(&self, a: &[T], b: &[T]) -> ExtValue<T> {
        let s = a
            .iter()
            .zip(b)
            .fold(T::zero(), |acc, (x, y)| acc + (*x - *y).abs().powf(self.p));
        ExtValue::saturating(s.powf(T::one() / self.p))
    }
}

/// Minimality witness: at `n - 1` member `member` still has `tail_sum >= eps^p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailWitness<T: Scalar> {
    pub index: usize,
    pub member: usize,
    pub tail_sum: ExtValue<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpTailReport<T: Scalar> {
    pub pointwise_bounded: bool,
    /// Coordinatewise supremum of `|x_k|` over the family.
    pub sup: Vec<ExtValue<T>>,
    /// Least `n <= L` with `sum_{k > n} |x_k|^p < eps^p` for every member.
    pub tail_index: Option<usize>,
    pub totally_bounded_verdict: bool,
    /// For `tail_index = n > 0`: a member whose tail from `n - 1` is too large.
    pub minimality: Option<TailWitness<T>>,
    /// When unbounded: a `(member, coordinate)` with an infinite entry.
    pub unbounded_entry: Option<(usize, usize)>,
}

/// Uniform-tail criterion for relative compactness in `l^p`.
pub fn lp_tail_criterion<T: Scalar>(fam: &TruncatedSequenceFamily<T>, eps: T) -> Result<LpTailReport<T>> {
    if !(eps > T::zero()) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let len = fam.len();
    let sup: Vec<ExtValue<T>> = (0..len)
        .map(|k| {
            fam.members()
                .iter()
                .fold(ExtValue::zero(), |acc, m| acc.max(ExtValue::saturating(m[k].abs())))
        })
        .collect();
    let unbounded_entry = fam
        .members()
        .iter()
        .enumerate()
        .find_map(|(i, m)| m.iter().position(|v| !v.is_finite()).map(|k| (i, k + 1)));
    let pointwise_bounded = unbounded_entry.is_none();
    let bound = ExtValue::saturating(eps.powf(fam.p()));
    let holds = |n: usize| (0..fam.members().len()).all(|i| fam.tail_sum(i, n) < bound);
    let tail_index = (0..=len).find(|&n| holds(n));
    let minimality = tail_index.filter(|&n| n > 0).map(|n| {
        let member = (0..fam.members().len())
            .find(|&i| fam.tail_sum(i, n - 1) >= bound)
            .expect("n is minimal");
        TailWitness {
            index: n - 1,
            member,
            tail_sum: fam.tail_sum(member, n - 1),
        }
    });
    Ok(LpTailReport {
        pointwise_bounded,
        sup,
        tail_index,
        totally_bounded_verdict: pointwise_bounded && tail_index.is_some(),
        minimality,
        unbounded_entry,
    })
}

/// Net of a family under the `l^p` metric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpNet<T: Scalar> {
    pub radius: T,
    pub centers: Vec<Vec<T>>,
    /// Index of the covering centre of each member.
    pub assignment: Vec<usize>,
    pub verified: bool,
}

/// `2 eps`-net from a valid tail index `n`: heads truncated after `n`
/// coordinates, greedily netted at radius `eps`, and every member checked
/// against its centre at radius `2 eps`.
pub fn lp_two_eps_net<T: Scalar>(fam: &TruncatedSequenceFamily<T>, eps: T, tail_index: usize) -> Result<LpNet<T>> {
    if tail_index > fam.len() {
        return Err(Error::InvalidParameter(format!(
            "tail index {tail_index} exceeds length {}",
            fam.len()
        )));
    }
    let heads: Vec<Vec<T>> = fam
        .members()
        .iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .map(|(k, &v)| if k < tail_index { v } else { T::zero() })
                .collect()
        })
        .collect();
    let eps_ext = ExtValue::saturating(eps);
    let mut centers: Vec<Vec<T>> = Vec::new();
    for h in &heads {
        if !centers.iter().any(|c| fam.distance(c, h) < eps_ext) {
            centers.push(h.clone());
        }
    }
    let radius = eps + eps;
    let radius_ext = ExtValue::saturating(radius);
    let mut assignment = Vec::with_capacity(heads.len());
    let mut verified = true;
    for m in fam.members() {
        match centers.iter().position(|c| fam.distance(c, m) < radius_ext) {
            Some(c) => assignment.push(c),
            None => {
                verified = false;
                assignment.push(usize::MAX);
            }
        }
    }
    Ok(LpNet {
        radius,
        centers,
        assignment,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(k: usize, len: usize) -> Vec<f64> {
        let mut v = vec![0.0; len];
        v[k] = 1.0;
        v
    }

    #[test]
    fn unit_basis_vectors() {
        let k = 5;
        let fam = TruncatedSequenceFamily::new(2.0, (0..k).map(|i| basis(i, k)).collect()).unwrap();
        let rep = lp_tail_criterion(&fam, 0.5).unwrap();
        assert_eq!(rep.tail_index, Some(k));
        assert!(rep.totally_bounded_verdict);
        let w = rep.minimality.unwrap();
        assert_eq!((w.index, w.member), (k - 1, k - 1));
        let net = lp_two_eps_net(&fam, 0.5, k).unwrap();
        assert!(net.verified);
    }

    #[test]
    fn shifted_spikes_need_largest_position() {
        let len = 40;
        let positions = [3, 17, 9];
        let fam = TruncatedSequenceFamily::new(1.0, positions.iter().map(|&p| basis(p - 1, len)).collect()).unwrap();
        let rep = lp_tail_criterion(&fam, 0.5).unwrap();
        assert_eq!(rep.tail_index, Some(17));
    }

    #[test]
    fn zero_family() {
        let fam = TruncatedSequenceFamily::new(3.0, vec![vec![0.0; 4]; 3]).unwrap();
        let rep = lp_tail_criterion(&fam, 0.1).unwrap();
        assert_eq!(rep.tail_index, Some(0));
        assert!(rep.totally_bounded_verdict);
        assert!(rep.minimality.is_none());
    }

    #[test]
    fn infinite_entry_is_unbounded() {
        let fam = TruncatedSequenceFamily::new(2.0, vec![vec![1.0, f64::INFINITY], vec![0.0]]).unwrap();
        let rep = lp_tail_criterion(&fam, 0.5).unwrap();
        assert!(!rep.pointwise_bounded);
        assert!(!rep.totally_bounded_verdict);
        assert_eq!(rep.unbounded_entry, Some((0, 2)));
    }

    #[test]
    fn bad_exponent() {
        assert!(TruncatedSequenceFamily::new(0.5, vec![vec![1.0]]).is_err());
    }
}
