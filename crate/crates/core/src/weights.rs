//! Subsets of the weight ring `Z_q`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A subset of `Z_q`, `q <= 256`, as a 256-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSet {
    q: u32,
    bits: [u64; 4],
}

impl WeightSet {
    pub fn empty(q: u32) -> Self {
        assert!(q.is_power_of_two() && q <= 256, "q must be a power of two <= 256");
        WeightSet { q, bits: [0; 4] }
    }

    pub fn full(q: u32) -> Self {
        Self::empty(q).complement()
    }

    pub fn new(q: u32, weights: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut set = Self::empty(q);
        for w in weights {
            if w >= q {
                return Err(Error::WeightOutOfRange { weight: w, q });
            }
            set.insert(w);
        }
        Ok(set)
    }

    /// Parses a comma-separated list such as `0,1`. The empty string is
    /// the empty set.
    pub fn parse(text: &str, q: u32) -> Result<Self> {
        let weights = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>().map_err(|_| Error::Precondition(format!(
                    "not a weight: {s:?}"
                )))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, weights)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn insert(&mut self, w: u32) {
        self.bits[(w / 64) as usize] |= 1 << (w % 64);
    }

    #[inline]
    pub fn contains(&self, w: u32) -> bool {
        w < self.q && self.bits[(w / 64) as usize] >> (w % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.q).filter(|&w| self.contains(w))
    }

    /// `Z_q \ X`.
    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.q);
        for w in 0..self.q {
            if !self.contains(w) {
                out.insert(w);
            }
        }
        out
    }

    /// `q - 1 - X`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::empty(self.q);
        for w in self.iter() {
            out.insert(self.q - 1 - w);
        }
        out
    }

    pub fn is_disjoint(&self, other: &WeightSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn first_common(&self, other: &WeightSet) -> Option<u32> {
        self.iter().find(|&w| other.contains(w))
    }

    /// `|X| = q/2`.
    pub fn is_half(&self) -> bool {
        self.len() * 2 == self.q as usize
    }

    /// All subsets of `Z_q` of a given size, in lexicographic order.
    pub fn subsets_of_size(q: u32, size: usize) -> Vec<WeightSet> {
        fn go(q: u32, start: u32, left: usize, current: &mut Vec<u32>, out: &mut Vec<WeightSet>) {
            if left == 0 {
                out.push(WeightSet::new(q, current.iter().copied()).unwrap());
                return;
            }
            for w in start..q {
                current.push(w);
                go(q, w + 1, left - 1, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        go(q, 0, size, &mut Vec::new(), &mut out);
        out
    }

    /// Every subset of `Z_q`; only sensible for small `q`.
    pub fn all_subsets(q: u32) -> Vec<WeightSet> {
        assert!(q <= 16, "too many subsets");
        (0u32..1 << q)
            .map(|mask| WeightSet::new(q, (0..q).filter(|w| mask >> w & 1 == 1)).unwrap())
            .collect()
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for WeightSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let x = WeightSet::parse("0, 1", 4).unwrap();
        assert!(x.contains(0) && x.contains(1) && !x.contains(2));
        assert_eq!(x.complement(), WeightSet::new(4, [2, 3]).unwrap());
        assert_eq!(x.reflect(), WeightSet::new(4, [2, 3]).unwrap());
        assert_eq!(WeightSet::new(4, [0, 3]).unwrap().reflect(), WeightSet::new(4, [0, 3]).unwrap());
        assert!(x.is_half());
        assert_eq!(x.to_string(), "{0,1}");
        assert!(WeightSet::parse("", 4).unwrap().is_empty());
        assert!(WeightSet::parse("4", 4).is_err());
        assert!(WeightSet::parse("a", 4).is_err());
        assert_eq!(serde_json::to_string(&x).unwrap(), "[0,1]");
        let big = WeightSet::new(256, [0, 63, 64, 200, 255]).unwrap();
        assert_eq!(big.iter().collect::<Vec<_>>(), vec![0, 63, 64, 200, 255]);
        assert_eq!(big.complement().len(), 251);
    }

    #[test]
    fn enumeration() {
        assert_eq!(WeightSet::subsets_of_size(4, 2).len(), 6);
        assert_eq!(WeightSet::subsets_of_size(8, 4).len(), 70);
        assert_eq!(WeightSet::all_subsets(4).len(), 16);
    }
}
