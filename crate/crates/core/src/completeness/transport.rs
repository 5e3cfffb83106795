use serde::Serialize;

use crate::distance::DistanceTable;
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::scalar::Scalar;

/// Nets produced by [`transport_total_boundedness`]. Entries are positions in
/// the paired lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportResult {
    pub verified: bool,
    /// Centres of the greedy `delta`-net of the image sample.
    pub image_net: Vec<usize>,
    /// One preimage per net cell: the cell centre's partner.
    pub source_net: Vec<usize>,
}

/// Pulls a `delta`-net of the image back to an `eps`-net of the source.
///
/// `source_points[i]` maps to `image_points[i]`. Balls are forward:
/// `c` covers `p` when `d(c, p) < radius`. The modulus condition
/// `d_image(f(x), f(y)) < delta => d_source(x, y) < eps` is checked on every
/// ordered pair first; a failure is [`Error::ModulusViolated`] with the two
/// positions.
pub fn transport_total_boundedness<T: Scalar>(
    source_points: &[usize],
    image_points: &[usize],
    source_metric: &DistanceTable<T>,
    image_metric: &DistanceTable<T>,
    eps: T,
    delta: T,
) -> Result<TransportResult> {
    if source_points.len() != image_points.len() {
        return Err(Error::InvalidValue(format!(
            "paired lists differ in length ({} vs {})",
            source_points.len(),
            image_points.len()
        )));
    }
    for (name, v) in [("eps", eps), ("delta", delta)] {
        if !(v > T::zero()) {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
        }
    }
    for (&p, table) in source_points
        .iter()
        .map(|p| (p, source_metric))
        .chain(image_points.iter().map(|p| (p, image_metric)))
    {
        if p >= table.len() {
            return Err(Error::UnknownPoint(p.to_string()));
        }
    }
    let (eps, delta) = (ExtValue::saturating(eps), ExtValue::saturating(delta));
    let n = source_points.len();
    let src = |i: usize, j: usize| source_metric.get(source_points[i], source_points[j]);
    let img = |i: usize, j: usize| image_metric.get(image_points[i], image_points[j]);
    for i in 0..n {
        for j in 0..n {
            if img(i, j) < delta && src(i, j) >= eps {
                return Err(Error::ModulusViolated(i, j));
            }
        }
    }
    let mut covered = vec![false; n];
    let mut image_net = Vec::new();
    while let Some(c) = covered.iter().position(|c| !c) {
        image_net.push(c);
        covered[c] = true;
        for (p, cov) in covered.iter_mut().enumerate() {
            if img(c, p) < delta {
                *cov = true;
            }
        }
    }
    let source_net = image_net.clone();
    let verified = (0..n).all(|p| source_net.iter().any(|&c| src(c, p) < eps));
    Ok(TransportResult {
        verified,
        image_net,
        source_net,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> DistanceTable<f64> {
        DistanceTable::from_fn(xs.len(), |i, j| ExtValue::saturating((xs[i] - xs[j]).abs()))
    }

    #[test]
    fn identity_transports_verbatim() {
        let d = line(&[0.0, 0.2, 1.0, 1.1, 3.0]);
        let pts: Vec<usize> = (0..5).collect();
        let r = transport_total_boundedness(&pts, &pts, &d, &d, 0.5, 0.5).unwrap();
        assert!(r.verified);
        assert_eq!(r.image_net, r.source_net);
        assert_eq!(r.image_net, vec![0, 2, 4]);
    }

    #[test]
    fn coarsening_map_pulls_back() {
        // Source clusters near 0, 1, 2 map to cluster labels 0, 1, 2.
        let source = line(&[0.0, 0.05, 1.0, 1.02, 2.0, 2.1]);
        let image = line(&[0.0, 1.0, 2.0]);
        let src: Vec<usize> = (0..6).collect();
        let img = [0, 0, 1, 1, 2, 2];
        let r = transport_total_boundedness(&src, &img, &source, &image, 0.2, 0.5).unwrap();
        assert!(r.verified);
        assert_eq!(r.source_net, vec![0, 2, 4]);
    }

    #[test]
    fn modulus_violation_is_witnessed() {
        let source = line(&[0.0, 5.0]);
        let image = line(&[0.0, 0.1]);
        let pts = [0, 1];
        assert!(matches!(
            transport_total_boundedness(&pts, &pts, &source, &image, 1.0, 0.5),
            Err(Error::ModulusViolated(0, 1))
        ));
    }
}
