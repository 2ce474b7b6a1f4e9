//! Partitions of a population of `N` individuals and the conditional-mean projection.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::vector::NumericVector;

/// Assignment of each individual to a class.
///
/// Labels are canonical: they are numbered `0..q` in order of first
/// occurrence, so two partitions with the same classes compare equal.
/// Every class is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<u32>,
    num_classes: usize,
}

impl Partition {
    /// The trivial partition with a single class holding everyone.
    pub fn trivial(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(Self {
            class_of: vec![0; len],
            num_classes: 1,
        })
    }

    /// Groups individuals with equal codes.
    pub fn from_codes<T: Eq + Hash>(codes: &[T]) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::EmptyVector);
        }
        let mut seen: HashMap<&T, u32> = HashMap::new();
        let class_of = codes
            .iter()
            .map(|code| {
                let next = seen.len() as u32;
                *seen.entry(code).or_insert(next)
            })
            .collect();
        Ok(Self {
            class_of,
            num_classes: seen.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_of(&self) -> &[u32] {
        &self.class_of
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes];
        for &c in &self.class_of {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Coarsest common refinement of `self` and `other`: individuals share a
    /// class iff they share a class in both.
    pub fn product(&self, other: &Partition) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let n = self.len();
        let cells = self.num_classes.saturating_mul(other.num_classes);
        let mut class_of = Vec::with_capacity(n);
        let mut next = 0u32;
        if cells <= 4 * n + 64 {
            let mut table = vec![u32::MAX; cells];
            for (&a, &b) in self.class_of.iter().zip(&other.class_of) {
                let slot = &mut table[a as usize * other.num_classes + b as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                class_of.push(*slot);
            }
        } else {
            let mut table: HashMap<(u32, u32), u32> = HashMap::new();
            for (&a, &b) in self.class_of.iter().zip(&other.class_of) {
                let label = *table.entry((a, b)).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                class_of.push(label);
            }
        }
        Ok(Self {
            class_of,
            num_classes: next as usize,
        })
    }

    /// True when every class of `self` lies inside a single class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut parent = vec![u32::MAX; self.num_classes];
        for (&fine, &coarse) in self.class_of.iter().zip(&coarser.class_of) {
            let slot = &mut parent[fine as usize];
            if *slot == u32::MAX {
                *slot = coarse;
            } else if *slot != coarse {
                return false;
            }
        }
        true
    }

    /// `E_π(X)`: each entry replaced by the mean of its class.
    pub fn conditional_mean(&self, x: &NumericVector) -> Result<NumericVector> {
        if x.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: x.len(),
            });
        }
        let mut sums = vec![0.0; self.num_classes];
        let mut counts = vec![0usize; self.num_classes];
        for (&c, &v) in self.class_of.iter().zip(x.values()) {
            sums[c as usize] += v;
            counts[c as usize] += 1;
        }
        let means: Vec<f64> = sums.iter().zip(&counts).map(|(s, &n)| s / n as f64).collect();
        NumericVector::new(self.class_of.iter().map(|&c| means[c as usize]).collect())
    }
}

pub fn conditional_mean(x: &NumericVector, p: &Partition) -> Result<NumericVector> {
    p.conditional_mean(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(labels: &[u32]) -> Partition {
        Partition::from_codes(labels).unwrap()
    }

    #[test]
    fn from_codes_canonicalizes() {
        let a = Partition::from_codes(&["a", "a", "b", "b"]).unwrap();
        assert_eq!(a.class_of(), &[0, 0, 1, 1]);
        assert_eq!(a.num_classes(), 2);
        let b = Partition::from_codes(&["u", "v", "u", "v"]).unwrap();
        assert_eq!(b.class_of(), &[0, 1, 0, 1]);
        let c = Partition::from_codes(&["x", "y", "z"]).unwrap();
        assert_eq!(c.class_of(), &[0, 1, 2]);
        assert_eq!(c.num_classes(), 3);
        assert_eq!(p(&[7, 3, 7]).class_of(), &[0, 1, 0]);
    }

    #[test]
    fn product_examples() {
        let base = p(&[0, 0, 1, 1]);
        let fine = base.product(&p(&[0, 1, 0, 1])).unwrap();
        assert_eq!(fine.class_of(), &[0, 1, 2, 3]);
        assert_eq!(fine.num_classes(), 4);
        assert_eq!(base.product(&base).unwrap(), base);
        let discrete = p(&[0, 1, 2, 3]);
        assert_eq!(discrete.product(&p(&[5, 5, 6, 5])).unwrap(), discrete);
        assert!(fine.refines(&base));
        assert!(!base.refines(&fine));
    }

    #[test]
    fn product_large_uses_sparse_table() {
        let n = 50;
        let a = Partition::from_codes(&(0..n).collect::<Vec<_>>()).unwrap();
        let b = Partition::from_codes(&(0..n).map(|i| n - i).collect::<Vec<_>>()).unwrap();
        let ab = a.product(&b).unwrap();
        assert_eq!(ab.num_classes(), n);
        assert_eq!(ab, a);
    }

    #[test]
    fn product_length_mismatch() {
        assert!(matches!(
            p(&[0, 1]).product(&p(&[0, 1, 2])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn conditional_mean_examples() {
        let x = NumericVector::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let e = p(&[0, 0, 1, 1]).conditional_mean(&x).unwrap();
        assert_eq!(e.values(), &[1.5, 1.5, 3.5, 3.5]);
        let e0 = Partition::trivial(4).unwrap().conditional_mean(&x).unwrap();
        assert_eq!(e0.values(), &[2.5; 4]);
        let id = p(&[0, 1, 2, 3]).conditional_mean(&x).unwrap();
        assert_eq!(id, x);
        assert!(p(&[0, 1]).conditional_mean(&x).is_err());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(p(&[0, 1, 0, 0, 2]).class_sizes(), vec![3, 1, 1]);
    }
}
