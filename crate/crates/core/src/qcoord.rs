//! Quantized coordinate rings: `O_q(M_n)`, `O_q(SL_n)`, and the quotients
//! `O_q(P_J)`, `O_q(L_J)` of `O_q(SL_n)` by the ideals of killed entries.
//!
//! Elements are sums `c * m * D^{-d}` where `m` is a lexicographically
//! ordered monomial in the surviving generators `x_ij` and `D^{-d}` is a
//! product of inverse block minors `[C_b | C_b]^{-d_b}` in block order.
//! Equality modulo `det_q - 1` is decided by clearing denominators and
//! homogenizing with respect to the central element `det_q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::scalars::{Param, RatFunc};
use crate::weyl::{ParabolicData, Perm};

pub type Entry = (usize, usize);
/// Variable indices `(i-1) n + (j-1)`, sorted.
pub type QMono = Vec<u16>;
/// A monomial together with its denominator exponents, one per block.
pub type Term = (QMono, Vec<u16>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ctx {
    M,
    SL,
    P,
    L,
}

/// Right-hand side of `x_hi x_lo` for entries `lo < hi` in row-major
/// order, in `O_p(M_n)`.
pub fn matrix_rule(lo: Entry, hi: Entry, p: Param) -> Vec<(RatFunc, Vec<Entry>)> {
    let ((i, j), (l, m)) = (lo, hi);
    if i == l || j == m {
        vec![(p.pow(-1), vec![lo, hi])]
    } else if m < j {
        vec![(RatFunc::one(), vec![lo, hi])]
    } else {
        vec![(RatFunc::one(), vec![lo, hi]), (-p.hat(), vec![(i, m), (l, j)])]
    }
}

type MulCache = RwLock<HashMap<(QMono, u16), Arc<Lin<QMono>>>>;

pub struct QCoord {
    pub n: usize,
    pub ctx: Ctx,
    pub param: Param,
    pub pd: Option<ParabolicData>,
    pub cap: usize,
    killed: Vec<bool>,
    mul_cache: MulCache,
    normality: RwLock<HashMap<(usize, u16), i32>>,
    det_powers: RwLock<HashMap<u32, Arc<Lin<QMono>>>>,
    block_powers: RwLock<HashMap<Vec<u16>, Arc<Lin<QMono>>>>,
}

impl fmt::Debug for QCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QCoord({:?}, n={}, {:?})", self.ctx, self.n, self.param)
    }
}

impl QCoord {
    pub fn new(n: usize, ctx: Ctx, pd: Option<&ParabolicData>, param: Param, cap: usize) -> Result<Arc<Self>> {
        if n == 0 || n > 16 {
            return Err(Error::OutOfRange(format!("n={n}")));
        }
        let pd = match (ctx, pd) {
            (Ctx::P | Ctx::L, None) => return Err(Error::InvalidKind(format!("{ctx:?} needs parabolic data"))),
            (Ctx::P | Ctx::L, Some(pd)) if pd.n != n => {
                return Err(Error::SizeMismatch(format!("n={n} vs parabolic n={}", pd.n)))
            }
            (Ctx::P | Ctx::L, Some(pd)) => Some(pd.clone()),
            _ => None,
        };
        let mut killed = vec![false; n * n];
        if let Some(pd) = &pd {
            for i in 1..=n {
                for j in 1..=n {
                    let k = match ctx {
                        Ctx::P => pd.contains(j, i),
                        Ctx::L => pd.contains(j, i) || pd.contains(i, j),
                        _ => false,
                    };
                    killed[(i - 1) * n + (j - 1)] = k;
                }
            }
        }
        Ok(Arc::new(Self {
            n,
            ctx,
            param,
            pd,
            cap,
            killed,
            mul_cache: Default::default(),
            normality: Default::default(),
            det_powers: Default::default(),
            block_powers: Default::default(),
        }))
    }

    pub fn matrices(n: usize, param: Param, cap: usize) -> Result<Arc<Self>> {
        Self::new(n, Ctx::M, None, param, cap)
    }

    pub fn sl(n: usize, param: Param, cap: usize) -> Result<Arc<Self>> {
        Self::new(n, Ctx::SL, None, param, cap)
    }

    pub fn parabolic(pd: &ParabolicData, param: Param, cap: usize) -> Result<Arc<Self>> {
        Self::new(pd.n, Ctx::P, Some(pd), param, cap)
    }

    pub fn levi(pd: &ParabolicData, param: Param, cap: usize) -> Result<Arc<Self>> {
        Self::new(pd.n, Ctx::L, Some(pd), param, cap)
    }

    pub fn var_index(&self, (i, j): Entry) -> u16 {
        ((i - 1) * self.n + (j - 1)) as u16
    }

    pub fn entry(&self, v: u16) -> Entry {
        (v as usize / self.n + 1, v as usize % self.n + 1)
    }

    pub fn is_killed(&self, e: Entry) -> bool {
        self.killed[self.var_index(e) as usize]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.pd.as_ref().map(|p| p.blocks.as_slice()).unwrap_or(&[])
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks().len()
    }

    fn mono_killed(&self, m: &[u16]) -> bool {
        m.iter().any(|&v| self.killed[v as usize])
    }

    fn budget(&self, size: usize) -> Result<()> {
        if size > self.cap {
            Err(Error::BudgetExceeded { what: "coordinate ring term count".into(), size: size as u128, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Normal form of `mono * x_v` with `mono` ordered.
    fn mul_mono_var(&self, mono: &[u16], v: u16) -> Result<Arc<Lin<QMono>>> {
        if self.killed[v as usize] {
            return Ok(Arc::new(Lin::zero()));
        }
        if mono.last().is_none_or(|&u| u <= v) {
            let mut m = mono.to_vec();
            m.push(v);
            return Ok(Arc::new(Lin::basis(m)));
        }
        let key = (mono.to_vec(), v);
        if let Some(r) = self.mul_cache.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let (&u, prefix) = mono.split_last().unwrap();
        let mut out = Lin::zero();
        for (c, w) in matrix_rule(self.entry(v), self.entry(u), self.param) {
            let vars: Vec<u16> = w.iter().map(|&e| self.var_index(e)).collect();
            out.add_scaled(&self.mul_mono_word(prefix, &vars)?, &c);
        }
        self.budget(out.len())?;
        let out = Arc::new(out);
        self.mul_cache.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn mul_mono_word(&self, mono: &[u16], w: &[u16]) -> Result<Lin<QMono>> {
        let mut acc: Lin<QMono> = Lin::basis(mono.to_vec());
        for &v in w {
            let mut next = Lin::zero();
            for (m, c) in acc.iter() {
                let r = self.mul_mono_var(m, v)?;
                next.add_scaled(&r, c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Product of two polynomials (no denominators).
    pub fn poly_mul(&self, a: &Lin<QMono>, b: &Lin<QMono>) -> Result<Lin<QMono>> {
        let mut out = Lin::zero();
        for (u, x) in a.iter() {
            for (v, y) in b.iter() {
                out.add_scaled(&self.mul_mono_word(u, v)?, &(x * y));
                self.budget(out.len())?;
            }
        }
        Ok(out)
    }

    /// `[A | B]` as a polynomial; its monomials are already ordered.
    pub fn minor_poly(&self, rows: &[usize], cols: &[usize]) -> Result<Lin<QMono>> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(format!("rows {rows:?} vs cols {cols:?}")));
        }
        let mut rs = rows.to_vec();
        let mut cs = cols.to_vec();
        rs.sort_unstable();
        cs.sort_unstable();
        if rs.iter().chain(&cs).any(|&x| x == 0 || x > self.n) {
            return Err(Error::OutOfRange(format!("minor [{rows:?}|{cols:?}] for n={}", self.n)));
        }
        let m = rs.len();
        let mut out = Lin::zero();
        for sigma in Perm::all(m) {
            let mono: QMono = (0..m).map(|k| self.var_index((rs[k], cs[sigma.apply(k + 1) - 1]))).collect();
            if self.mono_killed(&mono) {
                continue;
            }
            out.add_term(mono, &self.param.neg_pow(sigma.length() as i32));
        }
        Ok(out)
    }

    fn det_poly(&self) -> Result<Lin<QMono>> {
        let all: Vec<usize> = (1..=self.n).collect();
        self.minor_poly(&all, &all)
    }

    fn det_power(&self, e: u32) -> Result<Arc<Lin<QMono>>> {
        if let Some(r) = self.det_powers.read().unwrap().get(&e) {
            return Ok(r.clone());
        }
        let v = if e == 0 {
            Lin::basis(Vec::new())
        } else {
            {
                let prev = self.det_power(e - 1)?;
                self.poly_mul(&prev, &self.det_poly()?)?
            }
        };
        let v = Arc::new(v);
        self.det_powers.write().unwrap().insert(e, v.clone());
        Ok(v)
    }

    pub fn block_minor_poly(&self, b: usize) -> Result<Lin<QMono>> {
        let blk = self.blocks().get(b).ok_or_else(|| Error::OutOfRange(format!("block {b}")))?.clone();
        self.minor_poly(&blk, &blk)
    }

    /// `D_1^{k_1} ... D_t^{k_t}` as a polynomial.
    fn block_power(&self, k: &[u16]) -> Result<Arc<Lin<QMono>>> {
        if let Some(r) = self.block_powers.read().unwrap().get(k) {
            return Ok(r.clone());
        }
        let mut acc: Lin<QMono> = Lin::basis(Vec::new());
        for (b, &e) in k.iter().enumerate() {
            let d = self.block_minor_poly(b)?;
            for _ in 0..e {
                acc = self.poly_mul(&acc, &d)?;
            }
        }
        let acc = Arc::new(acc);
        self.block_powers.write().unwrap().insert(k.to_vec(), acc.clone());
        Ok(acc)
    }

    /// The exponent `c` with `D_b x_v = p^c x_v D_b`.
    pub fn normality_exponent(&self, b: usize, e: Entry) -> Result<i32> {
        let v = self.var_index(e);
        if let Some(&c) = self.normality.read().unwrap().get(&(b, v)) {
            return Ok(c);
        }
        if self.killed[v as usize] {
            return Err(Error::NonNormal(format!("x{e:?} is killed")));
        }
        let d = self.block_minor_poly(b)?;
        let x = Lin::basis(vec![v]);
        let left = self.poly_mul(&d, &x)?;
        let right = self.poly_mul(&x, &d)?;
        let c = proportionality_exponent(&left, &right, self.param)
            .ok_or_else(|| Error::NonNormal(format!("[C|C] for block {b} and x{e:?}")))?;
        self.normality.write().unwrap().insert((b, v), c);
        Ok(c)
    }

    fn mono_exponent(&self, b: usize, m: &[u16]) -> Result<i32> {
        let mut s = 0;
        for &v in m {
            s += self.normality_exponent(b, self.entry(v))?;
        }
        Ok(s)
    }

    /// `c(b, a)` with `D_b D_a = p^{c} D_a D_b`.
    pub fn block_exponent(&self, b: usize, a: usize) -> Result<i32> {
        let d = self.block_minor_poly(a)?;
        let mut c = None;
        for m in d.keys() {
            let x = self.mono_exponent(b, m)?;
            if c.is_some_and(|c| c != x) {
                return Err(Error::NonNormal(format!("blocks {b} and {a}")));
            }
            c = Some(x);
        }
        Ok(c.unwrap_or(0))
    }

    /// Product of two terms.
    pub fn mul_terms(&self, (m1, e): &Term, (m2, f): &Term) -> Result<Lin<Term>> {
        let mut ex = 0;
        if e.iter().any(|&x| x > 0) {
            for (b, &eb) in e.iter().enumerate() {
                if eb > 0 {
                    ex -= eb as i32 * self.mono_exponent(b, m2)?;
                }
            }
            for (b, &eb) in e.iter().enumerate() {
                for (a, &fa) in f.iter().enumerate().take(b) {
                    if eb > 0 && fa > 0 {
                        ex += self.block_exponent(b, a)? * eb as i32 * fa as i32;
                    }
                }
            }
        }
        let c = self.param.pow(ex);
        let denom: Vec<u16> = e.iter().zip(f).map(|(x, y)| x + y).collect();
        let prod = self.mul_mono_word(m1, m2)?;
        Ok(prod.into_terms().map(|(m, k)| ((m, denom.clone()), &k * &c)).collect())
    }

    /// `x * D^{target}` for `x = m D^{-d}` with `target >= d`.
    fn clear_term(&self, (m, d): &Term, target: &[u16]) -> Result<Lin<QMono>> {
        // D^{-d} D^{t} = p^{sum_{a<b} c(b,a) (-d_b) t_a} D^{t-d}
        let mut ex = 0;
        for (b, &db) in d.iter().enumerate() {
            for (a, &ta) in target.iter().enumerate().take(b) {
                if db > 0 && ta > 0 {
                    ex -= self.block_exponent(b, a)? * db as i32 * ta as i32;
                }
            }
        }
        let rest: Vec<u16> = target.iter().zip(d).map(|(t, x)| t - x).collect();
        let pw = self.block_power(&rest)?;
        Ok(self.poly_mul(&Lin::basis(m.clone()), &pw)?.scaled(&self.param.pow(ex)))
    }

    fn max_denoms<'a>(&self, terms: impl Iterator<Item = &'a Vec<u16>>) -> Vec<u16> {
        let mut dmax = vec![0u16; self.num_blocks()];
        for d in terms {
            for (x, &y) in dmax.iter_mut().zip(d) {
                *x = (*x).max(y);
            }
        }
        dmax
    }

    /// Polynomial `x * D^{dmax}` with `dmax` the largest denominator.
    pub fn clear(&self, x: &Lin<Term>) -> Result<Lin<QMono>> {
        let dmax = self.max_denoms(x.keys().map(|t| &t.1));
        let mut out = Lin::zero();
        for (t, c) in x.iter() {
            out.add_scaled(&self.clear_term(t, &dmax)?, c);
            self.budget(out.len())?;
        }
        Ok(out)
    }

    /// Whether a polynomial lies in `<det - 1>` (or is zero, in `O_q(M_n)`).
    pub fn poly_is_zero(&self, h: &Lin<QMono>) -> Result<bool> {
        if self.ctx == Ctx::M {
            return Ok(h.is_zero());
        }
        let n = self.n;
        let mut classes: BTreeMap<usize, BTreeMap<usize, Lin<QMono>>> = BTreeMap::new();
        for (m, c) in h.iter() {
            classes.entry(m.len() % n).or_default().entry(m.len()).or_default().add_term(m.clone(), c);
        }
        for comps in classes.values() {
            let top = *comps.keys().next_back().unwrap();
            let mut acc = Lin::zero();
            for (&k, hk) in comps {
                let pw = self.det_power(((top - k) / n) as u32)?;
                acc.add_assign(&self.poly_mul(hk, &pw)?);
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl QCoord {
    /// Linear coordinates of several elements modulo `det - 1`: all are
    /// cleared by a common denominator and homogenized to common top degrees,
    /// so `x in span(ys) + <det - 1>` becomes plain linear algebra.
    pub fn linear_coords(&self, elts: &[&QElt]) -> Result<Vec<Lin<QMono>>> {
        let dmax = self.max_denoms(elts.iter().flat_map(|e| e.terms.keys().map(|t| &t.1)));
        let mut cleared = Vec::with_capacity(elts.len());
        for e in elts {
            let mut out = Lin::zero();
            for (t, c) in e.terms.iter() {
                out.add_scaled(&self.clear_term(t, &dmax)?, c);
            }
            cleared.push(out);
        }
        if self.ctx == Ctx::M {
            return Ok(cleared);
        }
        let n = self.n;
        let mut top: BTreeMap<usize, usize> = BTreeMap::new();
        for h in &cleared {
            for m in h.keys() {
                let e = top.entry(m.len() % n).or_insert(0);
                *e = (*e).max(m.len());
            }
        }
        let mut out = Vec::with_capacity(cleared.len());
        for h in cleared {
            let mut by_deg: BTreeMap<usize, Lin<QMono>> = BTreeMap::new();
            for (m, c) in h.iter() {
                by_deg.entry(m.len()).or_default().add_term(m.clone(), c);
            }
            let mut acc = Lin::zero();
            for (k, hk) in by_deg {
                let pw = self.det_power(((top[&(k % n)] - k) / n) as u32)?;
                acc.add_assign(&self.poly_mul(&hk, &pw)?);
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// `Some(c)` if `left = p^c * right` (both nonzero), `Some(0)` if both zero.
fn proportionality_exponent(left: &Lin<QMono>, right: &Lin<QMono>, p: Param) -> Option<i32> {
    let Some((m, rc)) = right.iter().next() else { return left.is_zero().then_some(0) };
    let lc = left.get(m)?;
    let ratio = lc.checked_div(rc).ok()?;
    let (coef, k) = ratio.as_monomial()?;
    if !num_traits::One::is_one(coef) {
        return None;
    }
    let c = k * p.sign();
    (left.sub(&right.scaled(&p.pow(c)))).is_zero().then_some(c)
}

#[derive(Clone)]
pub struct QElt {
    alg: Arc<QCoord>,
    terms: Lin<Term>,
}

impl QElt {
    pub fn zero(alg: &Arc<QCoord>) -> Self {
        Self { alg: alg.clone(), terms: Lin::zero() }
    }

    pub fn scalar(alg: &Arc<QCoord>, c: RatFunc) -> Self {
        Self { alg: alg.clone(), terms: Lin::single((Vec::new(), vec![0; alg.num_blocks()]), c) }
    }

    pub fn one(alg: &Arc<QCoord>) -> Self {
        Self::scalar(alg, RatFunc::one())
    }

    pub fn from_poly(alg: &Arc<QCoord>, p: Lin<QMono>) -> Self {
        let nb = alg.num_blocks();
        Self { alg: alg.clone(), terms: p.map_keys(|m| (m.clone(), vec![0; nb])) }
    }

    pub fn from_terms(alg: &Arc<QCoord>, terms: Lin<Term>) -> Self {
        Self { alg: alg.clone(), terms }
    }

    pub fn var(alg: &Arc<QCoord>, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > alg.n || j > alg.n {
            return Err(Error::OutOfRange(format!("x{i}{j} for n={}", alg.n)));
        }
        if alg.is_killed((i, j)) {
            return Ok(Self::zero(alg));
        }
        Ok(Self::from_poly(alg, Lin::basis(vec![alg.var_index((i, j))])))
    }

    pub fn minor(alg: &Arc<QCoord>, rows: &[usize], cols: &[usize]) -> Result<Self> {
        Ok(Self::from_poly(alg, alg.minor_poly(rows, cols)?))
    }

    pub fn det(alg: &Arc<QCoord>) -> Result<Self> {
        Ok(Self::from_poly(alg, alg.det_poly()?))
    }

    pub fn block_minor(alg: &Arc<QCoord>, b: usize) -> Result<Self> {
        Ok(Self::from_poly(alg, alg.block_minor_poly(b)?))
    }

    /// `[C_b | C_b]^{-1}`.
    pub fn block_minor_inv(alg: &Arc<QCoord>, b: usize) -> Result<Self> {
        let nb = alg.num_blocks();
        if b >= nb {
            return Err(Error::OutOfRange(format!("block {b}")));
        }
        let mut d = vec![0; nb];
        d[b] = 1;
        Ok(Self { alg: alg.clone(), terms: Lin::basis((Vec::new(), d)) })
    }

    pub fn alg(&self) -> &Arc<QCoord> {
        &self.alg
    }

    pub fn lin(&self) -> &Lin<Term> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.alg, &other.alg) {
            return Err(Error::SizeMismatch("elements of different coordinate rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { alg: self.alg.clone(), terms: self.terms.add(&other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { alg: self.alg.clone(), terms: self.terms.sub(&other.terms) })
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self { alg: self.alg.clone(), terms: self.terms.scaled(c) }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Lin::zero();
        for (s, a) in self.terms.iter() {
            for (t, b) in other.terms.iter() {
                out.add_scaled(&self.alg.mul_terms(s, t)?, &(a * b));
                self.alg.budget(out.len())?;
            }
        }
        Ok(Self { alg: self.alg.clone(), terms: out })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.alg);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn has_denominators(&self) -> bool {
        self.terms.keys().any(|t| t.1.iter().any(|&x| x > 0))
    }

    /// The polynomial part; errors if denominators are present.
    pub fn poly(&self) -> Result<Lin<QMono>> {
        if self.has_denominators() {
            return Err(Error::InvalidKind("element has denominators".into()));
        }
        Ok(self.terms.map_keys(|t| t.0.clone()))
    }

    /// Zero test in the ring (modulo `det - 1` outside `O_q(M_n)`).
    pub fn is_zero(&self) -> Result<bool> {
        if self.terms.is_zero() {
            return Ok(true);
        }
        let h = self.alg.clear(&self.terms)?;
        self.alg.poly_is_zero(&h)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.sub(other)?.is_zero()
    }

    /// Rewrites `D^{-d} * y` (left denominator) as an element with right
    /// denominators; `y` must be a polynomial.
    pub fn left_divide(alg: &Arc<QCoord>, d: &[u16], y: &QElt) -> Result<QElt> {
        let mut inv = QElt::one(alg);
        for (b, &k) in d.iter().enumerate() {
            for _ in 0..k {
                inv = inv.mul(&QElt::block_minor_inv(alg, b)?)?;
            }
        }
        inv.mul(y)
    }

    /// Drops the terms containing variables killed in `target`.
    pub fn project(&self, target: &Arc<QCoord>) -> Result<QElt> {
        if self.has_denominators() || target.n != self.alg.n {
            return Err(Error::InvalidKind("projection needs a polynomial of the same size".into()));
        }
        let p = self.poly()?;
        let mut out = Lin::zero();
        for (m, c) in p.iter() {
            if !target.mono_killed(m) {
                out.add_term(m.clone(), c);
            }
        }
        Ok(QElt::from_poly(target, out))
    }

    /// Reinterprets a polynomial in another ring of the same size by
    /// multiplying out its monomials there.
    pub fn transport(&self, target: &Arc<QCoord>) -> Result<QElt> {
        let p = self.poly()?;
        let mut out = Lin::zero();
        for (m, c) in p.iter() {
            out.add_scaled(&target.mul_mono_word(&[], m)?, c);
        }
        Ok(QElt::from_poly(target, out))
    }

    pub fn counit(&self) -> Result<RatFunc> {
        let p = self.poly()?;
        let mut s = RatFunc::zero();
        for (m, c) in p.iter() {
            if m.iter().all(|&v| {
                let (i, j) = self.alg.entry(v);
                i == j
            }) {
                s += c;
            }
        }
        Ok(s)
    }

    /// The antipode: `S(x_ij) = (-p)^{i-j} [[n]\{j} | [n]\{i}]`, extended
    /// anti-multiplicatively.
    pub fn antipode(&self) -> Result<QElt> {
        let alg = &self.alg;
        if !matches!(alg.ctx, Ctx::SL | Ctx::L) {
            return Err(Error::InvalidKind(format!("antipode in {:?}", alg.ctx)));
        }
        let p = self.poly()?;
        let n = alg.n;
        let mut out = QElt::zero(alg);
        for (m, c) in p.iter() {
            let mut acc = QElt::one(alg);
            for &v in m.iter().rev() {
                let (i, j) = alg.entry(v);
                let rows: Vec<usize> = (1..=n).filter(|&x| x != j).collect();
                let cols: Vec<usize> = (1..=n).filter(|&x| x != i).collect();
                let s = QElt::minor(alg, &rows, &cols)?.scale(&alg.param.neg_pow(i as i32 - j as i32));
                acc = acc.mul(&s)?;
            }
            out = out.add(&acc.scale(c))?;
        }
        Ok(out)
    }

    pub fn comult(&self) -> Result<QTensor> {
        let alg = &self.alg;
        let p = self.poly()?;
        let mut out = QTensor::zero(alg, alg);
        for (m, c) in p.iter() {
            let mut acc = QTensor::one(alg, alg);
            for &v in m {
                let (i, j) = alg.entry(v);
                let mut d = QTensor::zero(alg, alg);
                for k in 1..=alg.n {
                    d = d.add(&QTensor::pure(&QElt::var(alg, i, k)?, &QElt::var(alg, k, j)?)?)?;
                }
                acc = acc.mul(&d)?;
            }
            out = out.add(&acc.scale(c))?;
        }
        Ok(out)
    }

    pub fn sorted_terms(&self) -> Vec<(Term, RatFunc)> {
        self.terms.sorted_terms().into_iter().map(|(t, c)| (t.clone(), c.clone())).collect()
    }
}

pub fn format_term(alg: &QCoord, (m, d): &Term, letter: char) -> String {
    let mut parts: Vec<String> = m
        .iter()
        .map(|&v| {
            let (i, j) = alg.entry(v);
            format!("{letter}{i}{j}")
        })
        .collect();
    for (b, &k) in d.iter().enumerate() {
        if k > 0 {
            parts.push(format!("D{}^-{}", b + 1, k));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for QElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let letter = if self.alg.ctx == Ctx::L { 'y' } else { 'x' };
        let parts: Vec<String> = self
            .sorted_terms()
            .iter()
            .map(|(t, c)| format!("({c})*{}", format_term(&self.alg, t, letter)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of `A ⊗ B` for two coordinate rings, multiplied leg-wise.
#[derive(Clone)]
pub struct QTensor {
    left: Arc<QCoord>,
    right: Arc<QCoord>,
    terms: Lin<(Term, Term)>,
}

impl QTensor {
    pub fn zero(left: &Arc<QCoord>, right: &Arc<QCoord>) -> Self {
        Self { left: left.clone(), right: right.clone(), terms: Lin::zero() }
    }

    pub fn one(left: &Arc<QCoord>, right: &Arc<QCoord>) -> Self {
        Self::pure(&QElt::one(left), &QElt::one(right)).expect("same rings")
    }

    pub fn pure(a: &QElt, b: &QElt) -> Result<Self> {
        let mut terms = Lin::zero();
        for (s, x) in a.terms.iter() {
            for (t, y) in b.terms.iter() {
                terms.add_term((s.clone(), t.clone()), &(x * y));
            }
        }
        Ok(Self { left: a.alg.clone(), right: b.alg.clone(), terms })
    }

    pub fn lin(&self) -> &Lin<(Term, Term)> {
        &self.terms
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.left, &other.left) || !Arc::ptr_eq(&self.right, &other.right) {
            return Err(Error::SizeMismatch("tensors over different rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { left: self.left.clone(), right: self.right.clone(), terms: self.terms.add(&other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { left: self.left.clone(), right: self.right.clone(), terms: self.terms.sub(&other.terms) })
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self { left: self.left.clone(), right: self.right.clone(), terms: self.terms.scaled(c) }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Lin::zero();
        for ((s1, t1), a) in self.terms.iter() {
            for ((s2, t2), b) in other.terms.iter() {
                let l = self.left.mul_terms(s1, s2)?;
                let r = self.right.mul_terms(t1, t2)?;
                let ab = a * b;
                for (x, c) in l.iter() {
                    for (y, d) in r.iter() {
                        out.add_term((x.clone(), y.clone()), &(&(c * d) * &ab));
                    }
                }
                self.left.budget(out.len())?;
            }
        }
        Ok(Self { left: self.left.clone(), right: self.right.clone(), terms: out })
    }

    /// Applies linear maps to each leg.
    pub fn map_legs(
        &self,
        f: impl Fn(&QElt) -> Result<QElt>,
        g: impl Fn(&QElt) -> Result<QElt>,
    ) -> Result<QTensor> {
        let mut out: Option<QTensor> = None;
        for ((s, t), c) in self.terms.iter() {
            let a = f(&QElt::from_terms(&self.left, Lin::basis(s.clone())))?;
            let b = g(&QElt::from_terms(&self.right, Lin::basis(t.clone())))?;
            let x = QTensor::pure(&a, &b)?.scale(c);
            out = Some(match out {
                None => x,
                Some(o) => {
                    o.check(&x)?;
                    o.add(&x)?
                }
            });
        }
        match out {
            Some(o) => Ok(o),
            None => Err(Error::InvalidKind("map_legs of zero tensor needs target rings".into())),
        }
    }

    /// Zero test in `A ⊗ B`, each leg taken modulo its own `det - 1`.
    pub fn is_zero(&self) -> Result<bool> {
        if self.terms.is_zero() {
            return Ok(true);
        }
        let (l, r) = (&self.left, &self.right);
        let dl = l.max_denoms(self.terms.keys().map(|t| &t.0 .1));
        let dr = r.max_denoms(self.terms.keys().map(|t| &t.1 .1));
        let mut cleared: Lin<(QMono, QMono)> = Lin::zero();
        for ((s, t), c) in self.terms.iter() {
            let a = l.clear_term(s, &dl)?;
            let b = r.clear_term(t, &dr)?;
            for (x, u) in a.iter() {
                for (y, v) in b.iter() {
                    cleared.add_term((x.clone(), y.clone()), &(&(u * v) * c));
                }
            }
            l.budget(cleared.len())?;
        }
        let nl = if l.ctx == Ctx::M { usize::MAX } else { l.n };
        let nr = if r.ctx == Ctx::M { usize::MAX } else { r.n };
        let modl = |k: usize| if nl == usize::MAX { k } else { k % nl };
        let modr = |k: usize| if nr == usize::MAX { k } else { k % nr };
        type Graded = BTreeMap<(usize, usize), Lin<(QMono, QMono)>>;
        let mut classes: BTreeMap<(usize, usize), Graded> = BTreeMap::new();
        for ((x, y), c) in cleared.iter() {
            classes
                .entry((modl(x.len()), modr(y.len())))
                .or_default()
                .entry((x.len(), y.len()))
                .or_default()
                .add_term((x.clone(), y.clone()), c);
        }
        for comps in classes.values() {
            let kl = comps.keys().map(|k| k.0).max().unwrap();
            let kr = comps.keys().map(|k| k.1).max().unwrap();
            let mut acc: Lin<(QMono, QMono)> = Lin::zero();
            for (&(a, b), h) in comps {
                let pl = if nl == usize::MAX { Arc::new(Lin::basis(Vec::new())) } else { l.det_power(((kl - a) / nl) as u32)? };
                let pr = if nr == usize::MAX { Arc::new(Lin::basis(Vec::new())) } else { r.det_power(((kr - b) / nr) as u32)? };
                for ((x, y), c) in h.iter() {
                    let xs = l.poly_mul(&Lin::basis(x.clone()), &pl)?;
                    let ys = r.poly_mul(&Lin::basis(y.clone()), &pr)?;
                    for (x2, u) in xs.iter() {
                        for (y2, v) in ys.iter() {
                            acc.add_term((x2.clone(), y2.clone()), &(&(u * v) * c));
                        }
                    }
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.sub(other)?.is_zero()
    }
}

impl fmt::Display for QTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let ll = if self.left.ctx == Ctx::L { 'y' } else { 'x' };
        let rl = if self.right.ctx == Ctx::L { 'y' } else { 'x' };
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|((s, t), c)| format!("({c})*{} ⊗ {}", format_term(&self.left, s, ll), format_term(&self.right, t, rl)))
            .collect();
        parts.sort();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Searches `c` in `[-10, 10]` with `[C_b|C_b] * p^c prod_{a != b} D_a = 1`
/// on both sides in `O_q(P_J)`. Returns the exponent found.
pub fn block_minor_inverse(alg: &Arc<QCoord>, b: usize) -> Result<Option<i32>> {
    let nb = alg.num_blocks();
    let d = QElt::block_minor(alg, b)?;
    let mut prod = QElt::one(alg);
    for a in (0..nb).filter(|&a| a != b) {
        prod = prod.mul(&QElt::block_minor(alg, a)?)?;
    }
    let one = QElt::one(alg);
    for c in -10..=10 {
        let cand = prod.scale(&alg.param.pow(c));
        if d.mul(&cand)?.equals(&one)? && cand.mul(&d)?.equals(&one)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Quotient soundness of "drop killed monomials": every straightening rule
/// `x_u x_v -> ...` with a killed factor only produces terms with a killed
/// factor. Returns the offending rules.
pub fn quotient_soundness(pd: &ParabolicData) -> Result<Vec<String>> {
    let n = pd.n;
    let mut bad = Vec::new();
    for ctx in [Ctx::P, Ctx::L] {
        let alg = QCoord::new(n, ctx, Some(pd), Param::Q, usize::MAX)?;
        let entries: Vec<Entry> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        for &lo in &entries {
            for &hi in &entries {
                if lo >= hi || !(alg.is_killed(lo) || alg.is_killed(hi)) {
                    continue;
                }
                for (_, w) in matrix_rule(lo, hi, Param::Q) {
                    if !w.iter().any(|&e| alg.is_killed(e)) {
                        bad.push(format!("{ctx:?}: x{hi:?} x{lo:?} produces {w:?}"));
                    }
                }
            }
        }
    }
    Ok(bad)
}

/// Hopf-algebra checks on the generators of `O_q(SL_n)`. Returns the list of
/// failed checks (empty when all hold).
pub fn hopf_axioms(n: usize, param: Param, cap: usize) -> Result<Vec<String>> {
    let alg = QCoord::sl(n, param, cap)?;
    let mut bad = Vec::new();
    let one = QElt::one(&alg);
    for i in 1..=n {
        for j in 1..=n {
            let x = QElt::var(&alg, i, j)?;
            let d = x.comult()?;
            // counit on either leg
            let left = d.lin().iter().try_fold(QElt::zero(&alg), |acc, ((s, t), c)| -> Result<QElt> {
                let e = QElt::from_terms(&alg, Lin::basis(s.clone())).counit()?;
                acc.add(&QElt::from_terms(&alg, Lin::basis(t.clone())).scale(&(&e * c)))
            })?;
            let right = d.lin().iter().try_fold(QElt::zero(&alg), |acc, ((s, t), c)| -> Result<QElt> {
                let e = QElt::from_terms(&alg, Lin::basis(t.clone())).counit()?;
                acc.add(&QElt::from_terms(&alg, Lin::basis(s.clone())).scale(&(&e * c)))
            })?;
            if !left.equals(&x)? || !right.equals(&x)? {
                bad.push(format!("counit on x{i}{j}"));
            }
            // coassociativity
            let mut a = QTensor3::zero();
            let mut b = QTensor3::zero();
            for k in 1..=n {
                for l in 1..=n {
                    a.add((i, k), (k, l), (l, j));
                    b.add((i, l), (l, k), (k, j));
                }
            }
            if a.normalized() != b.normalized() {
                bad.push(format!("coassociativity on x{i}{j}"));
            }
            // antipode
            let eps = if i == j { one.clone() } else { QElt::zero(&alg) };
            let mut s1 = QElt::zero(&alg);
            let mut s2 = QElt::zero(&alg);
            for k in 1..=n {
                let xik = QElt::var(&alg, i, k)?;
                let xkj = QElt::var(&alg, k, j)?;
                s1 = s1.add(&xik.antipode()?.mul(&xkj)?)?;
                s2 = s2.add(&xik.mul(&xkj.antipode()?)?)?;
            }
            if !s1.equals(&eps)? {
                bad.push(format!("S(x_ik) x_kj on ({i},{j})"));
            }
            if !s2.equals(&eps)? {
                bad.push(format!("x_ik S(x_kj) on ({i},{j})"));
            }
        }
    }
    Ok(bad)
}

/// Triple tensors of generators, used only for the coassociativity check.
struct QTensor3(BTreeMap<(Entry, Entry, Entry), i64>);

impl QTensor3 {
    fn zero() -> Self {
        Self(BTreeMap::new())
    }
    fn add(&mut self, a: Entry, b: Entry, c: Entry) {
        *self.0.entry((a, b, c)).or_default() += 1;
    }
    fn normalized(&self) -> Vec<((Entry, Entry, Entry), i64)> {
        self.0.iter().filter(|(_, &v)| v != 0).map(|(k, &v)| (*k, v)).collect()
    }
}

/// `det_q` is central in `O_q(M_n)`: checks `det x_ij = x_ij det` for all
/// generators.
pub fn det_central(n: usize, param: Param, cap: usize) -> Result<bool> {
    let alg = QCoord::matrices(n, param, cap)?;
    let det = QElt::det(&alg)?;
    for i in 1..=n {
        for j in 1..=n {
            let x = QElt::var(&alg, i, j)?;
            if !det.mul(&x)?.equals(&x.mul(&det)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Δ(det_q) = det_q ⊗ det_q` in `O_q(M_n) ⊗ O_q(M_n)`.
pub fn det_grouplike(n: usize, param: Param, cap: usize) -> Result<bool> {
    let alg = QCoord::matrices(n, param, cap)?;
    let det = QElt::det(&alg)?;
    let d = det.comult()?;
    d.equals(&QTensor::pure(&det, &det)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::build_parabolic;

    const CAP: usize = 200_000;

    fn m(n: usize) -> Arc<QCoord> {
        QCoord::matrices(n, Param::Q, CAP).unwrap()
    }

    #[test]
    fn straightening_examples() {
        let a = m(2);
        let x = |i, j| QElt::var(&a, i, j).unwrap();
        let p = x(1, 2).mul(&x(1, 1)).unwrap();
        assert!(p.equals(&x(1, 1).mul(&x(1, 2)).unwrap().scale(&RatFunc::qpow(-1))).unwrap());
        assert_eq!(p.len(), 1);
        let p = x(1, 2).mul(&x(2, 1)).unwrap();
        assert!(p.equals(&x(2, 1).mul(&x(1, 2)).unwrap()).unwrap());
        let p = x(2, 2).mul(&x(1, 1)).unwrap();
        let expect = x(1, 1)
            .mul(&x(2, 2))
            .unwrap()
            .sub(&x(1, 2).mul(&x(2, 1)).unwrap().scale(&RatFunc::qhat()))
            .unwrap();
        assert!(p.equals(&expect).unwrap());
    }

    #[test]
    fn minors() {
        let a = m(2);
        let x = |i, j| QElt::var(&a, i, j).unwrap();
        let d = QElt::det(&a).unwrap();
        let expect = x(1, 1).mul(&x(2, 2)).unwrap().sub(&x(1, 2).mul(&x(2, 1)).unwrap().scale(&RatFunc::q())).unwrap();
        assert!(d.equals(&expect).unwrap());
        assert!(QElt::minor(&a, &[1], &[2]).unwrap().equals(&x(1, 2)).unwrap());
        assert!(QElt::minor(&a, &[1, 2], &[1]).is_err());
        let one = m(1);
        assert!(QElt::det(&one).unwrap().equals(&QElt::var(&one, 1, 1).unwrap()).unwrap());
    }

    #[test]
    fn sl_equality() {
        let a = QCoord::sl(2, Param::Q, CAP).unwrap();
        let d = QElt::det(&a).unwrap();
        assert!(d.equals(&QElt::one(&a)).unwrap());
        let x11 = QElt::var(&a, 1, 1).unwrap();
        let x22 = QElt::var(&a, 2, 2).unwrap();
        assert!(!x11.equals(&x22).unwrap());
        // x11 det = x11 but x11 x11 != x11
        assert!(x11.mul(&d).unwrap().equals(&x11).unwrap());
        assert!(!x11.mul(&x11).unwrap().equals(&x11).unwrap());
    }

    #[test]
    fn antipode_examples() {
        let a = QCoord::sl(2, Param::Q, CAP).unwrap();
        let x = |i, j| QElt::var(&a, i, j).unwrap();
        assert!(x(1, 2).antipode().unwrap().equals(&x(1, 2).scale(&RatFunc::int_qpow(-1, -1))).unwrap());
        assert!(x(1, 1).antipode().unwrap().equals(&x(2, 2)).unwrap());
    }

    #[test]
    fn comult_examples() {
        let a = m(2);
        let x = |i, j| QElt::var(&a, i, j).unwrap();
        let d = x(1, 1).comult().unwrap();
        let expect = QTensor::pure(&x(1, 1), &x(1, 1)).unwrap().add(&QTensor::pure(&x(1, 2), &x(2, 1)).unwrap()).unwrap();
        assert!(d.equals(&expect).unwrap());
        assert!(det_grouplike(2, Param::Q, CAP).unwrap());
    }

    #[test]
    fn projections() {
        let pd = build_parabolic(2, &[1]).unwrap();
        let p = QCoord::parabolic(&pd, Param::Q, CAP).unwrap();
        let l = QCoord::levi(&pd, Param::Q, CAP).unwrap();
        assert!(QElt::var(&p, 2, 1).unwrap().lin().is_zero());
        assert!(QElt::var(&l, 1, 2).unwrap().lin().is_zero());
        assert!(!QElt::var(&l, 1, 1).unwrap().lin().is_zero());
        let sl = QCoord::sl(2, Param::Q, CAP).unwrap();
        let d = QElt::det(&sl).unwrap().project(&p).unwrap();
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn normality_small() {
        let pd = build_parabolic(2, &[1]).unwrap();
        let p = QCoord::parabolic(&pd, Param::Q, CAP).unwrap();
        assert_eq!(p.normality_exponent(0, (1, 1)).unwrap(), 0);
        // x11 x12 = q x12 x11
        assert_eq!(p.normality_exponent(0, (1, 2)).unwrap(), 1);
        let inv = QElt::block_minor_inv(&p, 0).unwrap();
        let d = QElt::block_minor(&p, 0).unwrap();
        assert!(inv.mul(&d).unwrap().equals(&QElt::one(&p)).unwrap());
        assert!(d.mul(&inv).unwrap().equals(&QElt::one(&p)).unwrap());
    }

    #[test]
    fn hopf_sl2() {
        assert!(hopf_axioms(2, Param::Q, CAP).unwrap().is_empty());
        assert!(det_central(2, Param::Q, CAP).unwrap());
    }
}
