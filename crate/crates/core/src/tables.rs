//! Sparse multigraded tables of group classes.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactla::{AbelianGroupClass, Coeffs};

/// Sparse map from an index tuple to a group class; absent entries are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedTable<K: Ord> {
    pub coeffs: Coeffs,
    entries: BTreeMap<K, AbelianGroupClass>,
}

/// Two integer indices, whose meaning depends on the producer.
pub type BigradedTable = GradedTable<(isize, isize)>;
/// Indices `(j, k, i)`: cube level, weight, dimension.
pub type TriGradedTable = GradedTable<(isize, isize, isize)>;

impl<K: Ord + Copy> GradedTable<K> {
    pub fn new(coeffs: Coeffs) -> Self {
        GradedTable { coeffs, entries: BTreeMap::new() }
    }

    pub fn get(&self, key: K) -> AbelianGroupClass {
        self.entries.get(&key).cloned().unwrap_or_else(|| AbelianGroupClass::zero(self.coeffs))
    }

    /// Stores `g`, dropping zero groups.
    pub fn set(&mut self, key: K, g: AbelianGroupClass) {
        if g.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, g);
        }
    }

    /// Adds `g` to the entry at `key` as a direct summand.
    pub fn add(&mut self, key: K, g: &AbelianGroupClass) {
        if g.is_zero() {
            return;
        }
        let sum = self.get(key).direct_sum(g);
        self.entries.insert(key, sum);
    }

    pub fn iter(&self) -> impl Iterator<Item = (K, &AbelianGroupClass)> {
        self.entries.iter().map(|(&k, g)| (k, g))
    }

    pub fn keys(&self) -> impl Iterator<Item = K> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.entries.values().map(|g| g.rank).sum()
    }

    /// Entries whose key satisfies `keep`, reindexed by `f`.
    pub fn map_keys<K2: Ord + Copy>(&self, mut f: impl FnMut(K) -> Option<K2>) -> GradedTable<K2> {
        let mut out = GradedTable::new(self.coeffs);
        for (k, g) in self.iter() {
            if let Some(k2) = f(k) {
                out.add(k2, g);
            }
        }
        out
    }

    /// The free ranks as a plain map, for comparisons in tests and reports.
    pub fn ranks(&self) -> BTreeMap<K, usize> {
        self.entries.iter().map(|(&k, g)| (k, g.rank)).collect()
    }
}

impl<K: Ord + Copy + fmt::Debug> fmt::Debug for GradedTable<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

/// Keys at which two tables differ, with both values.
pub fn table_mismatches<K: Ord + Copy>(a: &GradedTable<K>, b: &GradedTable<K>) -> Vec<(K, AbelianGroupClass, AbelianGroupClass)> {
    let mut keys: Vec<K> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let (x, y) = (a.get(k), b.get(k));
            (x != y).then_some((k, x, y))
        })
        .collect()
}
