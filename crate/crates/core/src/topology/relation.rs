use serde::Serialize;

use super::PointSet;
use crate::error::{Error, Result};

/// Binary relation on the first `n` points of a universe, one bitmask per row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    n: usize,
    rows: Vec<PointSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Result<Self> {
        PointSet::check_size(n)?;
        Ok(Relation {
            n,
            rows: vec![PointSet::empty(); n],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for x in 0..n {
            r.insert(x, x);
        }
        Ok(r)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for x in 0..n {
            for y in 0..n {
                if f(x, y) {
                    r.insert(x, y);
                }
            }
        }
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    /// Image of `x`.
    pub fn row(&self, x: usize) -> PointSet {
        self.rows[x]
    }

    pub fn transpose(&self) -> Relation {
        let mut out = Relation {
            n: self.n,
            rows: vec![PointSet::empty(); self.n],
        };
        for x in 0..self.n {
            for y in self.rows[x].iter() {
                out.insert(y, x);
            }
        }
        out
    }

    /// `(x, z)` related iff some `y` has `self(x, y)` and `other(y, z)`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.same_size(other)?;
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().fold(PointSet::empty(), |acc, y| acc.union(other.rows[y])))
            .collect();
        Ok(Relation { n: self.n, rows })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_size(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.intersection(*b))
            .collect();
        Ok(Relation { n: self.n, rows })
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.same_size(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b)))
    }

    /// First pair of `self` missing from `other`, in row-major order.
    pub fn first_excess(&self, other: &Relation) -> Result<Option<(usize, usize)>> {
        self.same_size(other)?;
        for x in 0..self.n {
            if let Some(y) = self.rows[x].difference(other.rows[x]).iter().next() {
                return Ok(Some((x, y)));
            }
        }
        Ok(None)
    }

    pub fn contains_diagonal(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    /// Related pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| self.rows[x].iter().map(move |y| (x, y)))
            .collect()
    }

    fn same_size(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            return Err(Error::PointSetMismatch(self.n, other.n));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_relation(rng: &mut ChaCha8Rng, n: usize) -> Relation {
        Relation::from_fn(n, |_, _| rng.gen_bool(0.3)).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = random_relation(&mut rng, 5);
        let id = Relation::identity(5).unwrap();
        assert_eq!(id.compose(&r).unwrap(), r);
        assert_eq!(r.compose(&id).unwrap(), r);
    }

    #[test]
    fn chain_links_ends() {
        let r = Relation::from_fn(3, |x, y| y == x + 1).unwrap();
        let rr = r.compose(&r).unwrap();
        assert_eq!(rr.pairs(), vec![(0, 2)]);
    }

    #[test]
    fn composition_matches_brute_force_and_associates() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=7);
            let a = random_relation(&mut rng, n);
            let b = random_relation(&mut rng, n);
            let c = random_relation(&mut rng, n);
            let ab = a.compose(&b).unwrap();
            for x in 0..n {
                for z in 0..n {
                    let brute = (0..n).any(|y| a.contains(x, y) && b.contains(y, z));
                    assert_eq!(ab.contains(x, z), brute);
                }
            }
            assert_eq!(ab.compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
            assert_eq!(a.transpose().transpose(), a);
        }
    }

    #[test]
    fn mismatched_sizes_are_rejected() {
        let a = Relation::identity(2).unwrap();
        let b = Relation::identity(3).unwrap();
        assert!(matches!(a.compose(&b), Err(Error::PointSetMismatch(2, 3))));
    }
}
