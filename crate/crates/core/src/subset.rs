//! Index sets over `{1..n}` and families of them.
//!
//! Indices are 1-based throughout. Internally sets are also available as `u64`
//! bitmasks (bit `i-1` for element `i`), which caps `n` at 64.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 64;

/// A strictly increasing list of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SubsetIndex(Vec<usize>);

impl SubsetIndex {
    pub fn new(elements: Vec<usize>) -> Result<Self> {
        if elements.first() == Some(&0) {
            return Err(Error::Argument("subset indices are 1-based".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument(format!(
                "subset {elements:?} is not strictly increasing"
            )));
        }
        if elements.last().is_some_and(|&e| e > MAX_GROUND) {
            return Err(Error::Argument(format!("element exceeds {MAX_GROUND}")));
        }
        Ok(Self(elements))
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements)
    }

    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &e| m | 1 << (e - 1))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubsetIndex) -> bool {
        self.mask() & !other.mask() == 0
    }

    pub fn max_element(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl<'de> Deserialize<'de> for SubsetIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        SubsetIndex::from_unsorted(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `size`-subsets of `{1..n}` in dictionary order.
pub fn k_subsets(n: usize, size: usize) -> Vec<SubsetIndex> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<SubsetIndex>) {
        if cur.len() == size {
            out.push(SubsetIndex(cur.clone()));
            return;
        }
        for e in start..=n {
            if n - e + 1 < size - cur.len() {
                break;
            }
            cur.push(e);
            rec(e + 1, n, size, cur, out);
            cur.pop();
        }
    }
    if size <= n {
        rec(1, n, size, &mut cur, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// A finite collection of distinct subsets of `{1..n}`, with the uniform
/// matroid rank `k` carried as context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetFamily {
    pub n: usize,
    pub k: usize,
    pub members: Vec<SubsetIndex>,
}

impl SubsetFamily {
    pub fn new(n: usize, k: usize, members: Vec<SubsetIndex>) -> Result<Self> {
        let family = Self { n, k, members };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_GROUND {
            return Err(Error::Argument(format!("ground set larger than {MAX_GROUND}")));
        }
        if let Some(s) = self
            .members
            .iter()
            .find(|s| s.max_element().is_some_and(|e| e > self.n))
        {
            return Err(Error::Argument(format!("member {s} leaves {{1..{}}}", self.n)));
        }
        let mut masks: Vec<u64> = self.members.iter().map(SubsetIndex::mask).collect();
        masks.sort_unstable();
        if masks.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Argument("family members must be distinct".into()));
        }
        Ok(())
    }

    pub fn from_lists(n: usize, k: usize, lists: &[&[usize]]) -> Result<Self> {
        let members = lists
            .iter()
            .map(|l| SubsetIndex::from_unsorted(l.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, members)
    }

    pub fn from_masks(n: usize, k: usize, masks: impl IntoIterator<Item = u64>) -> Self {
        let mut members: Vec<SubsetIndex> = masks.into_iter().map(SubsetIndex::from_mask).collect();
        members.sort();
        Self { n, k, members }
    }

    pub fn masks(&self) -> Vec<u64> {
        self.members.iter().map(SubsetIndex::mask).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members sorted into dictionary order (by size-independent lexicographic
    /// comparison of the element lists).
    pub fn canonical(&self) -> Self {
        let mut members = self.members.clone();
        members.sort();
        Self {
            n: self.n,
            k: self.k,
            members,
        }
    }
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_order() {
        let s = k_subsets(4, 3);
        let lists: Vec<&[usize]> = s.iter().map(SubsetIndex::elements).collect();
        assert_eq!(lists, vec![&[1, 2, 3][..], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert_eq!(k_subsets(6, 3).len(), 20);
        assert_eq!(binomial(6, 3), 20);
        assert!(k_subsets(2, 3).is_empty());
    }

    #[test]
    fn masks_round_trip() {
        let s = SubsetIndex::new(vec![1, 4, 6]).unwrap();
        assert_eq!(s.mask(), 0b101001);
        assert_eq!(SubsetIndex::from_mask(s.mask()), s);
    }

    #[test]
    fn rejects_bad_subsets() {
        assert!(SubsetIndex::new(vec![2, 1]).is_err());
        assert!(SubsetIndex::new(vec![0, 1]).is_err());
        assert!(SubsetFamily::from_lists(3, 2, &[&[1, 2, 3], &[3, 2, 1]]).is_err());
        assert!(SubsetFamily::from_lists(3, 2, &[&[1, 2, 4]]).is_err());
    }
}
