//! Finite integer domains stored as sorted, duplicate-free value vectors.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite set of integer values.
///
/// Values are kept sorted ascending with no duplicates, so membership is a
/// binary search and ordered iteration is free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Domain {
    values: Vec<i64>,
}

impl Domain {
    pub fn new(mut values: Vec<i64>) -> Self {
        values.sort_unstable();
        values.dedup();
        Domain { values }
    }

    /// The closed interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        Domain {
            values: (lo..=hi).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.values.last().copied()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().copied()
    }

    pub fn contains(&self, v: i64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    /// Inserts `v`; returns false when it was already present.
    pub fn insert(&mut self, v: i64) -> bool {
        match self.values.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.values.insert(pos, v);
                true
            }
        }
    }

    /// Removes `v`; returns false when it was absent.
    pub fn remove(&mut self, v: i64) -> bool {
        match self.values.binary_search(&v) {
            Ok(pos) => {
                self.values.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Keeps only values accepted by `keep`; returns how many were dropped.
    pub fn retain(&mut self, keep: impl FnMut(&i64) -> bool) -> usize {
        let before = self.values.len();
        self.values.retain(keep);
        before - self.values.len()
    }

    /// Intersects with the closed interval `[lo, hi]`; returns how many
    /// values were dropped. Values strictly inside the interval are kept
    /// as they are, so interior holes survive.
    pub fn restrict_to_interval(&mut self, lo: i64, hi: i64) -> usize {
        let before = self.values.len();
        let end = self.values.partition_point(|&v| v <= hi);
        self.values.truncate(end);
        let start = self.values.partition_point(|&v| v < lo);
        self.values.drain(..start);
        before - self.values.len()
    }

    /// True when some member lies in the closed interval `[lo, hi]`.
    pub fn intersects_interval(&self, lo: i64, hi: i64) -> bool {
        let start = self.values.partition_point(|&v| v < lo);
        start < self.values.len() && self.values[start] <= hi
    }
}

impl FromIterator<i64> for Domain {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        Domain::new(iter.into_iter().collect())
    }
}

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Domain::new(Vec::<i64>::deserialize(deserializer)?))
    }
}
