//! Exact equality tests in `U_q^+` (equivalently `U_q^-`), i.e. membership
//! in the two-sided ideal generated by the q-Serre relations.
//!
//! Two independent engines are provided:
//!
//! * `Engine::Echelon` enumerates a whole weight space, spans the ideal slice
//!   by all products `u * s * v` with `s` a Serre element, and echelonizes it.
//!   Coordinates of a word are its canonical remainder.
//! * `Engine::Shuffle` maps words into the quantum shuffle algebra via the
//!   algebra map sending `E_i` to the one-letter word `[i]`. Its kernel is
//!   exactly the Serre ideal, so coordinates are shuffle images.
//!
//! Both are linear maps from words to `Lin<Word>` whose kernel is the ideal.
//! They do not share code paths and are used to cross-check each other.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::freealg::{cartan, FreeElt, Word};
use crate::lin::Lin;
use crate::linalg::Echelon;
use crate::scalars::RatFunc;

pub const DEFAULT_CAP: usize = 200_000;
pub const CAP_ENV: &str = "QSC_ORACLE_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Shuffle,
    Echelon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub cap: usize,
    pub engine: Engine,
}

impl Default for Oracle {
    fn default() -> Self {
        let cap = std::env::var(CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CAP);
        Self { cap, engine: Engine::Shuffle }
    }
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Self { cap, engine: Engine::Shuffle }
    }

    pub fn with_engine(self, engine: Engine) -> Self {
        Self { engine, ..self }
    }

    pub fn budget(&self, what: impl Into<String>, size: u128) -> Result<()> {
        if size > self.cap as u128 {
            Err(Error::BudgetExceeded { what: what.into(), size, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Image of a single word under the engine's coordinate map.
    pub fn word_coords(&self, w: &[u8]) -> Result<Arc<Lin<Word>>> {
        match self.engine {
            Engine::Shuffle => omega_word(w, self.cap),
            Engine::Echelon => echelon_word_coords(w, self.cap),
        }
    }

    pub fn coords(&self, l: &Lin<Word>) -> Result<Lin<Word>> {
        let mut out = Lin::zero();
        for (w, c) in l.iter() {
            let wc = self.word_coords(w)?;
            out.add_scaled(&wc, c);
            self.budget("coordinate vector", out.len() as u128)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self, l: &Lin<Word>) -> Result<bool> {
        Ok(self.coords(l)?.is_zero())
    }

    pub fn equals(&self, a: &FreeElt, b: &FreeElt) -> Result<bool> {
        self.is_zero(a.sub(b)?.lin())
    }

    /// Decides whether `sum c * (f ⊗ e)` vanishes in `U^- ⊗ U^+`.
    pub fn tensor_is_zero<'a, I>(&self, terms: I) -> Result<bool>
    where
        I: IntoIterator<Item = (&'a Word, &'a Word, &'a RatFunc)>,
    {
        // Apply the coordinate map on the right leg first, then regroup by
        // right coordinate and test each left-leg combination.
        let mut by_f: HashMap<&Word, Lin<Word>> = HashMap::new();
        for (f, e, c) in terms {
            by_f.entry(f).or_default().add_term(e.clone(), c);
        }
        let mut by_coord: HashMap<Word, Lin<Word>> = HashMap::new();
        for (f, es) in by_f {
            for (k, c) in self.coords(&es)?.into_terms() {
                by_coord.entry(k).or_default().add_term(f.clone(), &c);
            }
        }
        for fs in by_coord.values() {
            if !self.is_zero(fs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

type Cache<K, V> = OnceLock<RwLock<HashMap<K, Arc<V>>>>;

static OMEGA: Cache<Word, Lin<Word>> = OnceLock::new();
static ECHELON: Cache<Vec<i32>, Echelon<Word>> = OnceLock::new();
static ECHELON_COORDS: Cache<Word, Lin<Word>> = OnceLock::new();

fn lookup<K: std::hash::Hash + Eq, V>(cache: &Cache<K, V>, k: &K) -> Option<Arc<V>> {
    cache.get_or_init(Default::default).read().unwrap().get(k).cloned()
}

fn store<K: std::hash::Hash + Eq, V>(cache: &Cache<K, V>, k: K, v: V) -> Arc<V> {
    let mut map = cache.get_or_init(Default::default).write().unwrap();
    map.entry(k).or_insert_with(|| Arc::new(v)).clone()
}

/// Drops all memoized oracle data.
pub fn clear_caches() {
    for c in [&OMEGA, &ECHELON_COORDS] {
        if let Some(m) = c.get() {
            m.write().unwrap().clear();
        }
    }
    if let Some(m) = ECHELON.get() {
        m.write().unwrap().clear();
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Number of words with the given letter multiplicities.
pub fn weight_word_count(weight: &[i32]) -> u128 {
    let mut total: u128 = 0;
    let mut r: u128 = 1;
    for &m in weight {
        let m = m.max(0) as u128;
        total += m;
        r = r.saturating_mul(binomial(total, m));
    }
    r
}

/// Quantum shuffle of two words: sum over interleavings, each weighted by
/// `q^{sum (x, y)}` over pairs where a letter `y` of `v` precedes a letter
/// `x` of `u`.
pub fn shuffle_words(u: &[u8], v: &[u8]) -> Lin<Word> {
    // suf[i][j] = sum_{k >= i} (u_k, v_j)
    let mut suf = vec![vec![0i32; v.len()]; u.len() + 1];
    for i in (0..u.len()).rev() {
        for j in 0..v.len() {
            suf[i][j] = suf[i + 1][j] + cartan(u[i], v[j]);
        }
    }
    let mut acc: HashMap<Word, HashMap<i32, i64>> = HashMap::new();
    let mut cur = Vec::with_capacity(u.len() + v.len());
    fn rec(
        u: &[u8],
        v: &[u8],
        i: usize,
        j: usize,
        e: i32,
        suf: &[Vec<i32>],
        cur: &mut Word,
        acc: &mut HashMap<Word, HashMap<i32, i64>>,
    ) {
        if i == u.len() && j == v.len() {
            *acc.entry(cur.clone()).or_default().entry(e).or_default() += 1;
            return;
        }
        if i < u.len() {
            cur.push(u[i]);
            rec(u, v, i + 1, j, e, suf, cur, acc);
            cur.pop();
        }
        if j < v.len() {
            cur.push(v[j]);
            rec(u, v, i, j + 1, e + suf[i][j], suf, cur, acc);
            cur.pop();
        }
    }
    rec(u, v, 0, 0, 0, &suf, &mut cur, &mut acc);
    let mut out = Lin::zero();
    for (w, coeffs) in acc {
        let mut c = RatFunc::zero();
        for (e, m) in coeffs {
            c += &RatFunc::int_qpow(m, e);
        }
        out.add_term(w, &c);
    }
    out
}

/// Bilinear extension of `shuffle_words`.
pub fn shuffle(a: &Lin<Word>, b: &Lin<Word>, cap: usize) -> Result<Lin<Word>> {
    let mut out = Lin::zero();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            let size = binomial((u.len() + v.len()) as u128, u.len() as u128);
            Oracle::new(cap).budget("shuffle product", size)?;
            out.add_scaled(&shuffle_words(u, v), &(x * y));
        }
    }
    Oracle::new(cap).budget("shuffle product", out.len() as u128)?;
    Ok(out)
}

/// Image of a word in the quantum shuffle algebra, memoized on all prefixes.
pub fn omega_word(w: &[u8], cap: usize) -> Result<Arc<Lin<Word>>> {
    if w.len() <= 1 {
        return Ok(Arc::new(Lin::basis(w.to_vec())));
    }
    if let Some(v) = lookup(&OMEGA, &w.to_vec()) {
        return Ok(v);
    }
    // Find the longest cached prefix, then extend one letter at a time.
    let mut k = w.len() - 1;
    let mut base = loop {
        if k <= 1 {
            break Arc::new(Lin::basis(w[..k].to_vec()));
        }
        if let Some(v) = lookup(&OMEGA, &w[..k].to_vec()) {
            break v;
        }
        k -= 1;
    };
    while k < w.len() {
        let a = w[k];
        let mut next = Lin::zero();
        for (u, c) in base.iter() {
            // Insert `a` before u[p..]; weight q^{(wt u[p..], alpha_a)}.
            let mut e = 0;
            for p in (0..=u.len()).rev() {
                if p < u.len() {
                    e += cartan(u[p], a);
                }
                let mut x = Vec::with_capacity(u.len() + 1);
                x.extend_from_slice(&u[..p]);
                x.push(a);
                x.extend_from_slice(&u[p..]);
                next.add_term(x, &c.shift(e));
            }
        }
        Oracle::new(cap).budget(format!("shuffle image of a length-{} word", k + 1), next.len() as u128)?;
        k += 1;
        base = store(&OMEGA, w[..k].to_vec(), next);
    }
    Ok(base)
}

/// Shuffle image of a linear combination of words.
pub fn omega(l: &Lin<Word>, cap: usize) -> Result<Lin<Word>> {
    Oracle::new(cap).with_engine(Engine::Shuffle).coords(l)
}

fn trim(weight: &[i32]) -> Vec<i32> {
    let mut v = weight.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// All words with the given multiplicities, in lexicographic order.
pub fn words_of_weight(weight: &[i32]) -> Vec<Word> {
    let mut rem: Vec<i32> = weight.to_vec();
    let len: i32 = weight.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len as usize);
    fn rec(rem: &mut Vec<i32>, left: i32, cur: &mut Word, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in 0..rem.len() {
            if rem[a] > 0 {
                rem[a] -= 1;
                cur.push(a as u8 + 1);
                rec(rem, left - 1, cur, out);
                cur.pop();
                rem[a] += 1;
            }
        }
    }
    rec(&mut rem, len, &mut cur, &mut out);
    out
}

/// The Serre elements as `(weight, combination)` over the letters `1..=m`.
fn serre_elements(m: usize) -> Vec<Lin<Word>> {
    let mut out = Vec::new();
    let qq = RatFunc::q() + RatFunc::qpow(-1);
    for i in 1..=m as u8 {
        for j in 1..=m as u8 {
            if i.abs_diff(j) == 1 {
                let mut s = Lin::basis(vec![i, i, j]);
                s.add_term(vec![i, j, i], &-qq.clone());
                s.add_term(vec![j, i, i], &RatFunc::one());
                out.push(s);
            } else if i + 1 < j {
                let mut s = Lin::basis(vec![i, j]);
                s.add_term(vec![j, i], &RatFunc::from_int(-1));
                out.push(s);
            }
        }
    }
    out
}

/// Echelon basis of (Serre ideal ∩ weight space), memoized per weight.
pub fn serre_echelon(weight: &[i32], cap: usize) -> Result<Arc<Echelon<Word>>> {
    let key = trim(weight);
    if let Some(e) = lookup(&ECHELON, &key) {
        return Ok(e);
    }
    Oracle::new(cap).budget(format!("weight space {key:?}"), weight_word_count(&key))?;
    let mut ech = Echelon::new();
    for s in serre_elements(key.len()) {
        let sw = crate::freealg::word_weight(key.len() + 1, s.keys().next().unwrap());
        let rest: Vec<i32> = key.iter().zip(&sw).map(|(a, b)| a - b).collect();
        if rest.iter().any(|&x| x < 0) {
            continue;
        }
        for x in words_of_weight(&rest) {
            for p in 0..=x.len() {
                let v: Lin<Word> = s
                    .iter()
                    .map(|(w, c)| {
                        let mut y = x[..p].to_vec();
                        y.extend_from_slice(w);
                        y.extend_from_slice(&x[p..]);
                        (y, c.clone())
                    })
                    .collect();
                ech.insert(&v);
            }
        }
    }
    Ok(store(&ECHELON, key, ech))
}

fn echelon_word_coords(w: &[u8], cap: usize) -> Result<Arc<Lin<Word>>> {
    if let Some(v) = lookup(&ECHELON_COORDS, &w.to_vec()) {
        return Ok(v);
    }
    let m = w.iter().copied().max().unwrap_or(0) as usize;
    let weight = crate::freealg::word_weight(m + 1, w);
    let ech = serre_echelon(&weight, cap)?;
    let r = ech.reduce(&Lin::basis(w.to_vec()));
    Ok(store(&ECHELON_COORDS, w.to_vec(), r))
}

/// Canonical remainder of `elt` modulo the Serre ideal; zero iff `elt` lies
/// in the ideal.
pub fn serre_reduce(elt: &FreeElt, cap: usize) -> Result<Lin<Word>> {
    let mut out = Lin::zero();
    for (weight, comp) in elt.components() {
        let ech = serre_echelon(&weight, cap)?;
        out.add_assign(&ech.reduce(&comp));
    }
    Ok(out)
}

pub fn equals_mod_serre(a: &FreeElt, b: &FreeElt, oracle: &Oracle) -> Result<bool> {
    oracle.equals(a, b)
}

/// Dimension of the weight space of `U_q^+` computed from the ideal slice.
pub fn complement_dim(weight: &[i32], cap: usize) -> Result<usize> {
    let total = weight_word_count(weight) as usize;
    Ok(total - serre_echelon(weight, cap)?.rank())
}

/// Number of multisets of positive roots of `sl(n)` summing to `weight`.
pub fn kostant_dim(n: usize, weight: &[i32]) -> u128 {
    if weight.iter().any(|&x| x < 0) {
        return 0;
    }
    let roots: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let mut memo = HashMap::new();
    fn rec(
        idx: usize,
        rem: &mut Vec<i32>,
        roots: &[(usize, usize)],
        memo: &mut HashMap<(usize, Vec<i32>), u128>,
    ) -> u128 {
        if rem.iter().all(|&x| x == 0) {
            return 1;
        }
        if idx == roots.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(idx, rem.clone())) {
            return v;
        }
        let (i, j) = roots[idx];
        let mut total = rec(idx + 1, rem, roots, memo);
        if (i - 1..j - 1).all(|k| rem[k] > 0) {
            for k in i - 1..j - 1 {
                rem[k] -= 1;
            }
            total += rec(idx, rem, roots, memo);
            for k in i - 1..j - 1 {
                rem[k] += 1;
            }
        }
        memo.insert((idx, rem.clone()), total);
        total
    }
    let mut w = weight.to_vec();
    w.resize(n.saturating_sub(1).max(w.len()), 0);
    if w.len() > n.saturating_sub(1) && w[n - 1..].iter().any(|&x| x != 0) {
        return 0;
    }
    w.truncate(n.saturating_sub(1));
    rec(0, &mut w, &roots, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{nested_e, Family};

    fn serre12(n: usize) -> FreeElt {
        let qq = RatFunc::q() + RatFunc::qpow(-1);
        FreeElt::from_terms(
            n,
            Family::E,
            [(vec![1, 1, 2], RatFunc::one()), (vec![1, 2, 1], -qq), (vec![2, 1, 1], RatFunc::one())],
        )
        .unwrap()
    }

    #[test]
    fn serre_elements_vanish() {
        for engine in [Engine::Shuffle, Engine::Echelon] {
            let o = Oracle::new(DEFAULT_CAP).with_engine(engine);
            assert!(o.is_zero(serre12(3).lin()).unwrap());
            let c = FreeElt::from_terms(4, Family::E, [(vec![1, 3], RatFunc::one()), (vec![3, 1], RatFunc::from_int(-1))])
                .unwrap();
            assert!(o.is_zero(c.lin()).unwrap());
            let e12 = FreeElt::word(3, Family::E, &[1, 2]).unwrap();
            let e21 = FreeElt::word(3, Family::E, &[2, 1]).unwrap();
            assert!(!o.equals(&e12, &e21).unwrap());
            // E1 [E1,E2] = q [E1,E2] E1, and not the other way round.
            let x = nested_e(3, &[1, 2]).unwrap();
            let e1 = FreeElt::gen(3, Family::E, 1).unwrap();
            let lhs = e1.mul(&x).unwrap();
            let rhs = x.mul(&e1).unwrap().scale(&RatFunc::q());
            assert!(o.equals(&lhs, &rhs).unwrap());
            let swapped = e1.mul(&x).unwrap().scale(&RatFunc::q());
            assert!(!o.equals(&x.mul(&e1).unwrap(), &swapped).unwrap());
        }
    }

    #[test]
    fn serre_reduce_examples() {
        assert!(serre_reduce(&serre12(3), DEFAULT_CAP).unwrap().is_zero());
        assert_eq!(complement_dim(&[1, 1], DEFAULT_CAP).unwrap(), 2);
    }

    #[test]
    fn kostant_examples() {
        assert_eq!(kostant_dim(3, &[1, 0]), 1);
        assert_eq!(kostant_dim(3, &[1, 1]), 2);
        // a*alpha_1 + b*alpha_2 + c*(alpha_1+alpha_2) with c in {0,1,2}
        assert_eq!(kostant_dim(3, &[2, 2]), 3);
    }

    #[test]
    fn kostant_brute_force() {
        // Enumerate multisets of intervals directly.
        fn brute(n: usize, w: &[i32]) -> u128 {
            let roots: Vec<Vec<i32>> = (1..n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .map(|(i, j)| (1..n).map(|k| i32::from(i <= k && k < j)).collect())
                .collect();
            fn go(idx: usize, rem: Vec<i32>, roots: &[Vec<i32>]) -> u128 {
                if rem.iter().all(|&x| x == 0) {
                    return 1;
                }
                if idx == roots.len() {
                    return 0;
                }
                let mut t = go(idx + 1, rem.clone(), roots);
                let mut r = rem;
                loop {
                    for (a, b) in r.iter_mut().zip(&roots[idx]) {
                        *a -= b;
                    }
                    if r.iter().any(|&x| x < 0) {
                        break;
                    }
                    t += go(idx + 1, r.clone(), roots);
                }
                t
            }
            go(0, w.to_vec(), &roots)
        }
        for w in [[1, 1, 1], [2, 1, 1], [2, 2, 1], [1, 2, 1], [2, 2, 2]] {
            assert_eq!(kostant_dim(4, &w), brute(4, &w));
        }
    }

    #[test]
    fn engines_agree_with_kostant() {
        for w in [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 1, 1], vec![2, 1, 1], vec![1, 2, 1]] {
            let n = w.len() + 1;
            let k = kostant_dim(n, &w) as usize;
            assert_eq!(complement_dim(&w, DEFAULT_CAP).unwrap(), k);
            let mut ech = Echelon::new();
            for x in words_of_weight(&w) {
                ech.insert(&omega_word(&x, DEFAULT_CAP).unwrap());
            }
            assert_eq!(ech.rank(), k, "shuffle rank for {w:?}");
        }
    }

    #[test]
    fn budget_is_reported() {
        let o = Oracle::new(3).with_engine(Engine::Echelon);
        let e = o.word_coords(&[1, 2, 1, 2]).unwrap_err();
        assert!(e.is_budget());
    }

    #[test]
    fn tensor_zero() {
        let o = Oracle::default();
        let qq = RatFunc::q() + RatFunc::qpow(-1);
        let f = vec![3u8];
        let (a, b, c) = (vec![1u8, 1, 2], vec![1u8, 2, 1], vec![2u8, 1, 1]);
        let one = RatFunc::one();
        let mq = -qq;
        let terms = [(&f, &a, &one), (&f, &b, &mq), (&f, &c, &one)];
        assert!(o.tensor_is_zero(terms).unwrap());
        let terms = [(&f, &a, &one)];
        assert!(!o.tensor_is_zero(terms).unwrap());
    }
}
