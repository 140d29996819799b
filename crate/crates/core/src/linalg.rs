//! Incremental row echelon form over `RatFunc`, keyed by an ordered column
//! type. Each stored row has its largest column as pivot, normalized to 1.

use std::collections::BTreeMap;

use crate::lin::Lin;
use crate::scalars::RatFunc;

#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, RatFunc>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone + std::hash::Hash> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    fn to_map(v: &Lin<K>) -> BTreeMap<K, RatFunc> {
        v.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
    }

    /// Fully reduces `v` against the stored rows. The result is supported on
    /// non-pivot columns only, so it is a canonical representative of the
    /// coset `v + span(rows)`.
    fn reduce_map(&self, mut v: BTreeMap<K, RatFunc>) -> BTreeMap<K, RatFunc> {
        let mut upper: Option<K> = None;
        loop {
            let next = {
                let mut it: Box<dyn Iterator<Item = (&K, &RatFunc)>> = match &upper {
                    None => Box::new(v.iter().rev()),
                    Some(u) => Box::new(v.range(..u.clone()).rev()),
                };
                it.find(|(k, _)| self.rows.contains_key(*k)).map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((col, c)) = next else { break };
            let row = &self.rows[&col];
            for (k, rc) in row {
                let delta = &c * rc;
                let entry = v.entry(k.clone()).or_insert_with(RatFunc::zero);
                *entry -= &delta;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
            upper = Some(col);
        }
        v
    }

    pub fn rows(&self) -> impl Iterator<Item = Lin<K>> + '_ {
        self.rows.values().map(|r| r.iter().map(|(k, c)| (k.clone(), c.clone())).collect())
    }

    /// Whether both echelon forms span the same space.
    pub fn same_span(&self, other: &Self) -> bool {
        self.rank() == other.rank() && other.rows().all(|r| self.reduce(&r).is_zero())
    }

    pub fn reduce(&self, v: &Lin<K>) -> Lin<K> {
        self.reduce_map(Self::to_map(v)).into_iter().collect()
    }

    /// Inserts `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: &Lin<K>) -> bool {
        let r = self.reduce_map(Self::to_map(v));
        let Some((piv, lead)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let mut row: BTreeMap<K, RatFunc> = r.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        // Keep stored rows fully reduced against each other so that
        // `reduce` stays a single descending sweep.
        let others: Vec<K> = self.rows.keys().cloned().collect();
        for k in others {
            if let Some(c) = self.rows[&k].get(&piv).cloned() {
                let r2 = self.rows.get_mut(&k).unwrap();
                for (col, rc) in &row {
                    let delta = &c * rc;
                    let e = r2.entry(col.clone()).or_insert_with(RatFunc::zero);
                    *e -= &delta;
                    if e.is_zero() {
                        r2.remove(col);
                    }
                }
            }
        }
        row.retain(|_, c| !c.is_zero());
        self.rows.insert(piv, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(terms: &[(u32, i64)]) -> Lin<u32> {
        terms.iter().map(|(k, c)| (*k, RatFunc::from_int(*c))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(e.insert(&v(&[(2, 1), (3, 1)])));
        assert!(!e.insert(&v(&[(1, 1), (3, -1)])));
        assert!(!e.insert(&v(&[(1, 2), (2, 2)])));
        assert_eq!(e.rank(), 2);
        assert!(e.reduce(&v(&[(1, 1), (2, 2), (3, 1)])).is_zero());
        assert!(!e.reduce(&v(&[(1, 1)])).is_zero());
    }

    #[test]
    fn reduction_is_canonical() {
        let mut e = Echelon::new();
        e.insert(&v(&[(5, 1), (1, 3)]));
        e.insert(&v(&[(4, 1), (5, 2)]));
        let a = e.reduce(&v(&[(5, 1)]));
        let b = e.reduce(&v(&[(1, -3)]));
        assert_eq!(a, b);
    }
}
