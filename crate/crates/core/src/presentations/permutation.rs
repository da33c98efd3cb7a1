use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Subset;
use crate::error::{Error, Result};

/// A permutation of `[1, size]`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation((1..=size).collect())
    }

    /// `images[k]` is the image of `k + 1`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let size = images.len();
        let mut seen = vec![false; size + 1];
        for &x in &images {
            if x == 0 || x > size || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a permutation of 1..={size}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn transposition(size: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > size || j > size {
            return Err(Error::OutOfRange { index: i.max(j), max: size });
        }
        let mut images: Vec<usize> = (1..=size).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation(images))
    }

    /// The adjacent transposition `(i, i+1)`.
    pub fn adjacent(size: usize, i: usize) -> Result<Self> {
        Self::transposition(size, i, i + 1)
    }

    pub fn random<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (1..=size).collect();
        images.shuffle(rng);
        Permutation(images)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x - 1]
    }

    pub fn apply_subset(&self, s: Subset) -> Subset {
        Subset::from_elements(s.elements().into_iter().map(|x| self.apply(x)))
            .expect("permutation images stay in range")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Permutation(inv)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.0
    }
}
