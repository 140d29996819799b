//! Sparse linear combinations with `RatFunc` coefficients.

use std::collections::HashMap;
use std::hash::Hash;

use crate::scalars::RatFunc;

/// A finite formal sum `sum c_k * k`. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct Lin<K: Eq + Hash> {
    terms: HashMap<K, RatFunc>,
}

impl<K: Eq + Hash> PartialEq for Lin<K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<K: Eq + Hash> Eq for Lin<K> {}

impl<K: Eq + Hash> Default for Lin<K> {
    fn default() -> Self {
        Self { terms: HashMap::new() }
    }
}

impl<K: Eq + Hash + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: RatFunc) -> Self {
        let mut out = Self::zero();
        out.add_term(k, &c);
        out
    }

    pub fn basis(k: K) -> Self {
        Self::single(k, RatFunc::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> Option<&RatFunc> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &RatFunc)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, RatFunc)> {
        self.terms.into_iter()
    }

    pub fn add_term(&mut self, k: K, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Lin<K>, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (k, v) in other.iter() {
            if unit {
                self.add_term(k.clone(), v);
            } else {
                self.add_term(k.clone(), &(v * c));
            }
        }
    }

    pub fn add_assign(&mut self, other: &Lin<K>) {
        self.add_scaled(other, &RatFunc::one());
    }

    pub fn sub_assign(&mut self, other: &Lin<K>) {
        self.add_scaled(other, &RatFunc::from_int(-1));
    }

    pub fn scaled(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&RatFunc::from_int(-1))
    }

    pub fn sub(&self, other: &Lin<K>) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn add(&self, other: &Lin<K>) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Applies `f` to every key, summing coefficients of colliding images.
    pub fn map_keys<K2: Eq + Hash + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Lin<K2> {
        let mut out = Lin::zero();
        for (k, c) in self.iter() {
            out.add_term(f(k), c);
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RatFunc) -> RatFunc) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }
}

impl<K: Eq + Hash + Clone + Ord> Lin<K> {
    /// Terms sorted by key, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&K, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

impl<K: Eq + Hash + Clone> FromIterator<(K, RatFunc)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, RatFunc)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut a: Lin<u8> = Lin::basis(1);
        a.add_term(2, &RatFunc::q());
        a.add_term(1, &RatFunc::from_int(-1));
        assert_eq!(a.len(), 1);
        assert_eq!(a.get(&2), Some(&RatFunc::q()));
        assert!(a.sub(&a).is_zero());
    }
}
