//! `U_q(sl(n))` in triangular form: linear combinations of words
//! `F_{f} K_mu E_{e}`. Products are rewritten into this shape using the
//! defining relations; equality is decided through the Serre oracle on both
//! legs, since triangular words are not canonical modulo the Serre ideal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::freealg::{cartan, format_word, word_weight, Family, FreeElt, Word};
use crate::lin::Lin;
use crate::oracle::Oracle;
use crate::scalars::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriWord {
    pub f: Word,
    pub k: Vec<i32>,
    pub e: Word,
}

impl TriWord {
    pub fn new(f: Word, k: Vec<i32>, e: Word) -> Self {
        Self { f, k, e }
    }

    pub fn is_pure_e(&self) -> bool {
        self.f.is_empty() && self.k.iter().all(|&x| x == 0)
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        if !self.f.is_empty() {
            parts.push(format_word(Family::F, &self.f));
        }
        if self.k.iter().any(|&x| x != 0) {
            parts.push(format!("K{:?}", self.k));
        }
        if !self.e.is_empty() {
            parts.push(format_word(Family::E, &self.e));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// `<mu, nu>` for root-lattice vectors in simple-root coordinates.
pub fn pairing(mu: &[i32], nu: &[i32]) -> i32 {
    let mut s = 0;
    for (a, &x) in mu.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (b, &y) in nu.iter().enumerate() {
            if y != 0 {
                s += x * y * cartan(a as u8 + 1, b as u8 + 1);
            }
        }
    }
    s
}

/// `s_i(mu) = mu - <mu, alpha_i> alpha_i`.
pub fn reflect(i: usize, mu: &[i32]) -> Vec<i32> {
    let mut a = vec![0; mu.len()];
    a[i - 1] = 1;
    let c = pairing(mu, &a);
    let mut out = mu.to_vec();
    out[i - 1] -= c;
    out
}

pub fn simple_root(n: usize, i: usize) -> Vec<i32> {
    let mut v = vec![0; n - 1];
    v[i - 1] = 1;
    v
}

fn add_vec(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct UqElt {
    n: usize,
    terms: Lin<TriWord>,
}

type EfResult = Arc<Vec<(TriWord, RatFunc)>>;
static EF_CACHE: OnceLock<RwLock<HashMap<(usize, Word, Word), EfResult>>> = OnceLock::new();

/// `E_e * F_f` rewritten as a sum of triangular words, with the K-part
/// vectors of length `n - 1`.
fn ef(n: usize, e: &[u8], f: &[u8]) -> EfResult {
    if e.is_empty() || f.is_empty() {
        return Arc::new(vec![(TriWord::new(f.to_vec(), vec![0; n - 1], e.to_vec()), RatFunc::one())]);
    }
    let key = (n, e.to_vec(), f.to_vec());
    let cache = EF_CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&key) {
        return v.clone();
    }
    let (&a, rest) = e.split_last().unwrap();
    let qhat_inv = RatFunc::qhat().inv().expect("qhat is nonzero");
    let alpha = simple_root(n, a as usize);
    let neg_alpha: Vec<i32> = alpha.iter().map(|x| -x).collect();

    // E_a F_f = F_f E_a + sum_{f_p = a} F_{f<p} F_{f>p} (q^{-c} K_a - q^{c} K_{-a}) / qhat
    let mut single: Vec<(TriWord, RatFunc)> =
        vec![(TriWord::new(f.to_vec(), vec![0; n - 1], vec![a]), RatFunc::one())];
    let mut c = 0;
    for p in (0..f.len()).rev() {
        if f[p] == a {
            let mut w = f[..p].to_vec();
            w.extend_from_slice(&f[p + 1..]);
            single.push((TriWord::new(w.clone(), alpha.clone(), vec![]), qhat_inv.shift(-c)));
            single.push((TriWord::new(w, neg_alpha.clone(), vec![]), -qhat_inv.shift(c)));
        }
        c += cartan(a, f[p]);
    }

    let mut acc: Lin<TriWord> = Lin::zero();
    for (t, coeff) in single {
        // E_rest * F_{t.f} K_{t.k} E_{t.e}
        for (u, d) in ef(n, rest, &t.f).iter() {
            // u = F'' K'' E''; move E'' past K_{t.k}.
            let ex = -pairing(&t.k, &word_weight(n, &u.e));
            let mut e2 = u.e.clone();
            e2.extend_from_slice(&t.e);
            let w = TriWord::new(u.f.clone(), add_vec(&u.k, &t.k), e2);
            acc.add_term(w, &(d * &coeff).shift(ex));
        }
    }
    let mut v: Vec<(TriWord, RatFunc)> = acc.into_terms().collect();
    v.sort_by(|x, y| x.0.cmp(&y.0));
    let v = Arc::new(v);
    cache.write().unwrap().insert(key, v.clone());
    v
}

impl UqElt {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: Lin::zero() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, RatFunc::one())
    }

    pub fn scalar(n: usize, c: RatFunc) -> Self {
        Self { n, terms: Lin::single(TriWord::new(vec![], vec![0; n - 1], vec![]), c) }
    }

    pub fn e(n: usize, i: usize) -> Self {
        Self { n, terms: Lin::basis(TriWord::new(vec![], vec![0; n - 1], vec![i as u8])) }
    }

    pub fn f(n: usize, i: usize) -> Self {
        Self { n, terms: Lin::basis(TriWord::new(vec![i as u8], vec![0; n - 1], vec![])) }
    }

    pub fn k(n: usize, mu: &[i32]) -> Self {
        Self { n, terms: Lin::basis(TriWord::new(vec![], mu.to_vec(), vec![])) }
    }

    pub fn from_lin(n: usize, terms: Lin<TriWord>) -> Result<Self> {
        for t in terms.keys() {
            if t.k.len() != n - 1 {
                return Err(Error::SizeMismatch(format!("K-part {:?} for n={n}", t.k)));
            }
            if t.f.iter().chain(&t.e).any(|&a| a == 0 || a as usize >= n) {
                return Err(Error::OutOfRange(format!("generator in {t:?} for n={n}")));
            }
        }
        Ok(Self { n, terms })
    }

    /// Embeds an element of the free algebra on `E` (or `F`).
    pub fn from_free(x: &FreeElt) -> Self {
        let n = x.n();
        let terms = x.lin().map_keys(|w| match x.family() {
            Family::E => TriWord::new(vec![], vec![0; n - 1], w.clone()),
            Family::F => TriWord::new(w.clone(), vec![0; n - 1], vec![]),
        });
        Self { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lin(&self) -> &Lin<TriWord> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!("n={} vs n={}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { n: self.n, terms: self.terms.add(&other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { n: self.n, terms: self.terms.sub(&other.terms) })
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self { n: self.n, terms: self.terms.scaled(c) }
    }

    /// Product with the intermediate term count bounded by `cap`.
    pub fn mul_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let mut out = Lin::zero();
        for (a, x) in self.terms.iter() {
            for (b, y) in other.terms.iter() {
                let xy = x * y;
                for (t, c) in ef(n, &a.e, &b.f).iter() {
                    let ex = -pairing(&a.k, &word_weight(n, &t.f)) - pairing(&b.k, &word_weight(n, &t.e));
                    let mut f = a.f.clone();
                    f.extend_from_slice(&t.f);
                    let mut e = t.e.clone();
                    e.extend_from_slice(&b.e);
                    let k = add_vec(&add_vec(&a.k, &t.k), &b.k);
                    out.add_term(TriWord::new(f, k, e), &(c * &xy).shift(ex));
                }
                Oracle::new(cap).budget("triangular product", out.len() as u128)?;
            }
        }
        Ok(Self { n, terms: out })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_capped(other, usize::MAX)
    }

    /// Weight `wt(E-part) - wt(F-part)` of each term; `None` if mixed.
    pub fn weight(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys().map(|t| tri_weight(self.n, t));
        let first = it.next()?;
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Splits off the terms that are pure `E` words.
    pub fn split_pure_e(&self) -> (FreeElt, UqElt) {
        let mut pure = Lin::zero();
        let mut rest = Lin::zero();
        for (t, c) in self.terms.iter() {
            if t.is_pure_e() {
                pure.add_term(t.e.clone(), c);
            } else {
                rest.add_term(t.clone(), c);
            }
        }
        let pure = FreeElt::from_lin(self.n, Family::E, pure).expect("indices already validated");
        (pure, UqElt { n: self.n, terms: rest })
    }
}

pub fn tri_weight(n: usize, t: &TriWord) -> Vec<i32> {
    let e = word_weight(n, &t.e);
    let f = word_weight(n, &t.f);
    e.iter().zip(&f).map(|(a, b)| a - b).collect()
}

/// Generators accepted by `tri_normalize`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gen {
    E(usize),
    F(usize),
    K(Vec<i32>),
}

/// Multiplies out a raw word in the generators.
pub fn tri_normalize(n: usize, coeff: &RatFunc, letters: &[Gen]) -> Result<UqElt> {
    let mut acc = UqElt::scalar(n, coeff.clone());
    for g in letters {
        let x = match g {
            Gen::E(i) => UqElt::e(n, *i),
            Gen::F(i) => UqElt::f(n, *i),
            Gen::K(mu) => UqElt::k(n, mu),
        };
        acc = acc.mul(&UqElt::from_lin(n, x.terms)?)?;
    }
    Ok(acc)
}

pub fn uq_mul(a: &UqElt, b: &UqElt) -> Result<UqElt> {
    a.mul(b)
}

/// Equality in `U_q(sl(n))`: for each K-part, the `F ⊗ E` tensor of the
/// difference must vanish modulo the Serre ideals.
pub fn uq_equals(a: &UqElt, b: &UqElt, oracle: &Oracle) -> Result<bool> {
    uq_is_zero(&a.sub(b)?, oracle)
}

pub fn uq_is_zero(x: &UqElt, oracle: &Oracle) -> Result<bool> {
    let mut groups: BTreeMap<&Vec<i32>, Vec<(&Word, &Word, &RatFunc)>> = BTreeMap::new();
    for (t, c) in x.terms.iter() {
        groups.entry(&t.k).or_default().push((&t.f, &t.e, c));
    }
    for g in groups.into_values() {
        if !oracle.tensor_is_zero(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for UqElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.sorted_terms().into_iter().map(|(t, c)| format!("({})*{}", c, t.render())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UqElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
