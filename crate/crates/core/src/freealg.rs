//! Free associative algebra on the `E_i` (or `F_i`) generators with
//! `RatFunc` coefficients, graded by the root lattice.

use std::fmt;

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::scalars::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    E,
    F,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::E => 'E',
            Family::F => 'F',
        }
    }
}

/// A word in the generators of one family; letters are indices in `[n-1]`.
pub type Word = Vec<u8>;

/// Root-lattice weight of a word, as multiplicities of `alpha_1..alpha_{n-1}`.
pub fn word_weight(n: usize, w: &[u8]) -> Vec<i32> {
    let mut v = vec![0; n.saturating_sub(1)];
    for &a in w {
        v[a as usize - 1] += 1;
    }
    v
}

/// Symmetrized Cartan pairing `(alpha_a, alpha_b)` for type A.
pub fn cartan(a: u8, b: u8) -> i32 {
    if a == b {
        2
    } else if a.abs_diff(b) == 1 {
        -1
    } else {
        0
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FreeElt {
    n: usize,
    family: Family,
    terms: Lin<Word>,
}

impl FreeElt {
    pub fn zero(n: usize, family: Family) -> Self {
        Self { n, family, terms: Lin::zero() }
    }

    pub fn one(n: usize, family: Family) -> Self {
        Self { n, family, terms: Lin::basis(Vec::new()) }
    }

    pub fn scalar(n: usize, family: Family, c: RatFunc) -> Self {
        Self { n, family, terms: Lin::single(Vec::new(), c) }
    }

    pub fn gen(n: usize, family: Family, i: usize) -> Result<Self> {
        Self::word(n, family, &[i as u8])
    }

    pub fn word(n: usize, family: Family, w: &[u8]) -> Result<Self> {
        Self::from_lin(n, family, Lin::basis(w.to_vec()))
    }

    pub fn from_lin(n: usize, family: Family, terms: Lin<Word>) -> Result<Self> {
        for w in terms.keys() {
            if let Some(&a) = w.iter().find(|&&a| a == 0 || a as usize >= n) {
                return Err(Error::OutOfRange(format!("generator {a} for n={n}")));
            }
        }
        Ok(Self { n, family, terms })
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, RatFunc)>>(n: usize, family: Family, it: I) -> Result<Self> {
        Self::from_lin(n, family, it.into_iter().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn lin(&self) -> &Lin<Word> {
        &self.terms
    }

    pub fn into_lin(self) -> Lin<Word> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, w: &[u8]) -> RatFunc {
        self.terms.get(&w.to_vec()).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch);
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!("n={} vs n={}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { n: self.n, family: self.family, terms: self.terms.add(&other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { n: self.n, family: self.family, terms: self.terms.sub(&other.terms) })
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self { n: self.n, family: self.family, terms: self.terms.scaled(c) }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Lin::zero();
        for (u, a) in self.terms.iter() {
            for (v, b) in other.terms.iter() {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        Ok(Self { n: self.n, family: self.family, terms: out })
    }

    /// `[a, b] = ab - q^{-1} ba`.
    pub fn qcomm(&self, other: &Self) -> Result<Self> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        Ok(Self {
            n: self.n,
            family: self.family,
            terms: ab.terms.sub(&ba.terms.scaled(&RatFunc::qpow(-1))),
        })
    }

    /// Splits into homogeneous components keyed by weight.
    pub fn components(&self) -> Vec<(Vec<i32>, Lin<Word>)> {
        let mut out: std::collections::BTreeMap<Vec<i32>, Lin<Word>> = Default::default();
        for (w, c) in self.terms.iter() {
            out.entry(word_weight(self.n, w)).or_default().add_term(w.clone(), c);
        }
        out.into_iter().collect()
    }

    /// The weight if the element is nonzero and homogeneous.
    pub fn weight(&self) -> Option<Vec<i32>> {
        let comps = self.components();
        if comps.len() == 1 {
            Some(comps[0].0.clone())
        } else {
            None
        }
    }
}

/// Left-nested `q^{-1}`-commutator `[[..[X_{a_1}, X_{a_2}], ..], X_{a_m}]`.
pub fn nested(n: usize, family: Family, indices: &[usize]) -> Result<FreeElt> {
    let (&first, rest) = indices
        .split_first()
        .ok_or_else(|| Error::OutOfRange("empty commutator".into()))?;
    let mut acc = FreeElt::gen(n, family, first)?;
    for &a in rest {
        acc = acc.qcomm(&FreeElt::gen(n, family, a)?)?;
    }
    Ok(acc)
}

pub fn nested_e(n: usize, indices: &[usize]) -> Result<FreeElt> {
    nested(n, Family::E, indices)
}

pub fn free_mul(a: &FreeElt, b: &FreeElt) -> Result<FreeElt> {
    a.mul(b)
}

pub fn qcomm(a: &FreeElt, b: &FreeElt) -> Result<FreeElt> {
    a.qcomm(b)
}

pub fn format_word(family: Family, w: &[u8]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|a| format!("{}{}", family.letter(), a)).collect::<Vec<_>>().join("*")
}

pub fn format_lin(family: Family, l: &Lin<Word>) -> String {
    if l.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = l
        .sorted_terms()
        .into_iter()
        .map(|(w, c)| format!("({})*{}", c, format_word(family, w)))
        .collect();
    parts.join(" + ")
}

impl fmt::Display for FreeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_lin(self.family, &self.terms))
    }
}

impl fmt::Debug for FreeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> FreeElt {
        FreeElt::gen(4, Family::E, i).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(e(1).mul(&e(2)).unwrap().coeff(&[1, 2]), RatFunc::one());
        let s = e(1).add(&e(2)).unwrap().mul(&e(1)).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(FreeElt::one(4, Family::E).mul(&e(3)).unwrap(), e(3));
        let f = FreeElt::gen(4, Family::F, 1).unwrap();
        assert_eq!(e(1).mul(&f), Err(Error::FamilyMismatch));
    }

    #[test]
    fn commutators() {
        let c = e(1).qcomm(&e(2)).unwrap();
        assert_eq!(c.coeff(&[1, 2]), RatFunc::one());
        assert_eq!(c.coeff(&[2, 1]), -RatFunc::qpow(-1));
        let aa = e(1).qcomm(&e(1)).unwrap();
        assert_eq!(aa.coeff(&[1, 1]), RatFunc::one() - RatFunc::qpow(-1));
        let n21 = nested_e(4, &[2, 1]).unwrap();
        assert_eq!(n21.coeff(&[2, 1]), RatFunc::one());
        assert_eq!(n21.coeff(&[1, 2]), -RatFunc::qpow(-1));
    }

    #[test]
    fn nested_three_expands() {
        // Independent expansion: [[a,b],c] = abc - q^-1 bac - q^-1 cab + q^-2 cba.
        let x = nested_e(4, &[1, 2, 3]).unwrap();
        assert_eq!(x.len(), 4);
        assert_eq!(x.coeff(&[1, 2, 3]), RatFunc::one());
        assert_eq!(x.coeff(&[2, 1, 3]), -RatFunc::qpow(-1));
        assert_eq!(x.coeff(&[3, 1, 2]), -RatFunc::qpow(-1));
        assert_eq!(x.coeff(&[3, 2, 1]), RatFunc::qpow(-2));
    }

    #[test]
    fn grading() {
        let x = nested_e(4, &[1, 2, 3]).unwrap();
        assert_eq!(x.weight(), Some(vec![1, 1, 1]));
        assert_eq!(e(1).add(&e(2)).unwrap().weight(), None);
        assert!(FreeElt::gen(3, Family::E, 3).is_err());
    }
}
