//! Permutations of `0..n` stored as image arrays.
//!
//! Composition follows function application: `a.compose(&b)` maps `v` to
//! `a(b(v))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `0..n`; `images[v]` is the image of `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting anything that is
    /// not a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (v, &w) in images.iter().enumerate() {
            if w >= n {
                return Err(Error::NotAPermutation(format!(
                    "image {w} of {v} is out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[w], true) {
                return Err(Error::NotAPermutation(format!("{w} is hit twice")));
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAPermutation(format!("{v} out of range 0..{n}")));
                }
                images[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// The transposition `(a b)` on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &w)| v == w)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&w| self.images[w]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (v, &w) in self.images.iter().enumerate() {
            images[w] = v;
        }
        Self { images }
    }

    /// Smallest point moved by the permutation, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(v, &w)| v != w)
    }

    /// Support size (number of moved points).
    pub fn support_len(&self) -> usize {
        self.images.iter().enumerate().filter(|&(v, &w)| v != w).count()
    }

    /// True iff `labels[self(v)] == labels[v]` for every `v`.
    pub fn preserves_labels<T: PartialEq>(&self, labels: &[T]) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(v, &w)| labels[v] == labels[w])
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.images[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v];
            }
            out.push(cycle);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, v) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    #[test]
    fn transposition_moves_zero_to_one() {
        let t = Permutation::transposition(3, 0, 1);
        assert_eq!(t.apply(0), 1);
        assert_eq!(t.apply(2), 2);
        assert_eq!(t.to_string(), "(0 1)");
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // a(b(1)) = a(2) = 2, a(b(2)) = a(1) = 0
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.images(), &[1, 2, 0]);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn non_bijections_are_rejected() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn serializes_as_image_array() {
        let p = Permutation::from_images(vec![2, 0, 1]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,0,1]");
        let q: Permutation = serde_json::from_str("[2,0,1]").unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    proptest! {
        #[test]
        fn inverse_cancels(a in arb_perm(12)) {
            let id = Permutation::identity(a.degree());
            prop_assert_eq!(a.compose(&a.inverse()).unwrap(), id.clone());
            prop_assert_eq!(a.inverse().compose(&a).unwrap(), id.clone());
            prop_assert_eq!(id.compose(&a).unwrap(), a);
        }
    }
}
