//! The quantized nilradical `U_q(n_J)` presented by generators `X_ij`,
//! `(i, j)` in `Phi_J`, and one commutation relation per pair of generators.
//!
//! Elements are kept in PBW normal form: monomials list generators by
//! non-increasing position in the convex order, which is the shape the
//! commutation relations produce. An out-of-order adjacent pair is replaced
//! by the right-hand side of its relation until no such pair remains.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::braid::lemma1_indices;
use crate::error::{Error, Result};
use crate::freealg::Word;
use crate::lin::Lin;
use crate::linalg::Echelon;
use crate::oracle::{shuffle, Oracle};
use crate::report::{Report, ReportEntry};
use crate::scalars::{Param, RatFunc};
use crate::weyl::ParabolicData;

pub type Pair = (usize, usize);
/// Positions in the convex order, non-increasing.
pub type Mono = Vec<u16>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationCase {
    QCommute,
    Commute,
    QHat,
    Paren,
    Ordered,
}

impl RelationCase {
    pub fn tag(self) -> &'static str {
        match self {
            RelationCase::QCommute => "Q_COMMUTE",
            RelationCase::Commute => "COMMUTE",
            RelationCase::QHat => "QHAT",
            RelationCase::Paren => "PAREN",
            RelationCase::Ordered => "ORDERED",
        }
    }
}

/// Result of classifying the product `X_a X_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classified {
    pub case: RelationCase,
    /// `false` if the relation is stated for `X_a X_b` itself, `true` if it
    /// is stated for `X_b X_a`.
    pub reversed: bool,
}

/// All theorem cases whose conditions hold with `(i,j) = a`, `(l,m) = b`.
pub fn matching_cases(pd: &ParabolicData, a: Pair, b: Pair) -> Vec<RelationCase> {
    let ((i, j), (l, m)) = (a, b);
    let r = |x: usize| pd.r[x];
    let winv = |x: usize| pd.wj_inv.apply(x);
    let w0j = |x: usize| pd.w0j.apply(x);
    let mut out = Vec::new();
    if (l < i && j == m) || (l == i && winv(j) < winv(m)) {
        out.push(RelationCase::QCommute);
    }
    if (l < i && i < w0j(j) && w0j(j) < w0j(m))
        || (l < m && m < i && i < j)
        || (l <= r(m) && r(m) < i && i < m && m < j)
    {
        out.push(RelationCase::Commute);
    }
    if (l < i && i <= r(m) && r(m) < j && j < m) || (l < i && i <= r(m) && r(m) < m && m <= r(j) && r(j) < j) {
        out.push(RelationCase::QHat);
    }
    if l < m && m == i && i < j {
        out.push(RelationCase::Paren);
    }
    out
}

/// A formal linear combination of words in the generators.
pub type PairWords = Vec<(RatFunc, Vec<Pair>)>;

/// `X_{(l j), m}` with parameter `p`.
pub fn x_paren_terms(pd: &ParabolicData, p: Param, l: usize, j: usize, m: usize) -> Result<PairWords> {
    let rm = pd.r[m];
    if !pd.contains(l, j) {
        return Err(Error::NotInPhi(l, j));
    }
    let mut out = vec![(p.neg_pow((m - rm - 1) as i32), vec![(l, j)])];
    for k in rm + 1..m {
        if !pd.contains(k, j) {
            return Err(Error::NotInPhi(k, j));
        }
        if !pd.contains(l, k) {
            return Err(Error::NotInPhi(l, k));
        }
        out.push((&p.hat() * &p.neg_pow((m - k - 1) as i32), vec![(k, j), (l, k)]));
    }
    Ok(out)
}

/// Right-hand side of the relation for `X_{ij} X_{lm}` in the given case.
pub fn relation_rhs(pd: &ParabolicData, p: Param, case: RelationCase, a: Pair, b: Pair) -> Result<PairWords> {
    let ((i, j), (l, m)) = (a, b);
    let one = RatFunc::one();
    Ok(match case {
        RelationCase::QCommute => vec![(p.pow(1), vec![b, a])],
        RelationCase::Commute => vec![(one, vec![b, a])],
        RelationCase::QHat => vec![(one, vec![b, a]), (p.hat(), vec![(l, j), (i, m)])],
        RelationCase::Paren => {
            let mut v = vec![(p.pow(-1), vec![b, a])];
            v.extend(x_paren_terms(pd, p, l, j, m)?);
            v
        }
        RelationCase::Ordered => vec![(one, vec![a, b])],
    })
}

pub fn classify_pair(pd: &ParabolicData, a: Pair, b: Pair) -> Result<Classified> {
    let pa = pd.position(a.0, a.1)?;
    let pb = pd.position(b.0, b.1)?;
    if pa == pb {
        return Err(Error::Classification(format!("{a:?} paired with itself")));
    }
    if pa > pb {
        return Ok(Classified { case: RelationCase::Ordered, reversed: false });
    }
    let direct = matching_cases(pd, a, b);
    let rev = matching_cases(pd, b, a);
    match (direct.as_slice(), rev.as_slice()) {
        ([c], []) => Ok(Classified { case: *c, reversed: false }),
        ([], [c]) => Ok(Classified { case: *c, reversed: true }),
        _ => Err(Error::Classification(format!(
            "X{a:?} X{b:?} for n={}, J={:?}: direct {:?}, reversed {:?}",
            pd.n, pd.j, direct, rev
        ))),
    }
}

type RuleCache = RwLock<HashMap<(u16, u16), Arc<Vec<(Mono, RatFunc)>>>>;
type MulCache = RwLock<HashMap<(Mono, u16), Arc<Lin<Mono>>>>;

/// `U_p(n_J)` with `p` either `q` or `q^{-1}`.
pub struct Nilrad {
    pub pd: ParabolicData,
    pub param: Param,
    rules: RuleCache,
    mul_cache: MulCache,
}

impl fmt::Debug for Nilrad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nilrad(n={}, J={:?}, {:?})", self.pd.n, self.pd.j, self.param)
    }
}

const MAX_DEPTH: usize = 10_000;

impl Nilrad {
    pub fn new(pd: &ParabolicData, param: Param) -> Arc<Self> {
        Arc::new(Self { pd: pd.clone(), param, rules: Default::default(), mul_cache: Default::default() })
    }

    pub fn pos(&self, a: Pair) -> Result<u16> {
        Ok(self.pd.position(a.0, a.1)? as u16)
    }

    pub fn pair(&self, p: u16) -> Pair {
        self.pd.phi[p as usize]
    }

    fn word_to_positions(&self, w: &[Pair]) -> Result<Vec<u16>> {
        w.iter().map(|&a| self.pos(a)).collect()
    }

    /// `X_x X_y` for positions `x < y`, as combinations of position words.
    fn rule(&self, x: u16, y: u16) -> Result<Arc<Vec<(Mono, RatFunc)>>> {
        if let Some(r) = self.rules.read().unwrap().get(&(x, y)) {
            return Ok(r.clone());
        }
        let (a, b) = (self.pair(x), self.pair(y));
        let cl = classify_pair(&self.pd, a, b)?;
        let mut out = Vec::new();
        if !cl.reversed {
            for (c, w) in relation_rhs(&self.pd, self.param, cl.case, a, b)? {
                out.push((self.word_to_positions(&w)?, c));
            }
        } else {
            // X_b X_a = c X_a X_b + R, so X_a X_b = c^{-1} (X_b X_a - R).
            let rel = relation_rhs(&self.pd, self.param, cl.case, b, a)?;
            let c = rel
                .iter()
                .find(|(_, w)| w.as_slice() == [a, b])
                .map(|(c, _)| c.clone())
                .ok_or_else(|| Error::Classification(format!("no swap term for {a:?} {b:?}")))?;
            let cinv = c.inv()?;
            out.push((vec![y, x], cinv.clone()));
            for (d, w) in rel {
                if w.as_slice() != [a, b] {
                    out.push((self.word_to_positions(&w)?, -(&d * &cinv)));
                }
            }
        }
        let out = Arc::new(out);
        self.rules.write().unwrap().insert((x, y), out.clone());
        Ok(out)
    }

    fn mul_mono_gen(&self, mono: &[u16], g: u16, depth: usize) -> Result<Arc<Lin<Mono>>> {
        if mono.last().is_none_or(|&x| x >= g) {
            let mut m = mono.to_vec();
            m.push(g);
            return Ok(Arc::new(Lin::basis(m)));
        }
        if depth > MAX_DEPTH {
            return Err(Error::InternalConsistency("normal ordering does not terminate".into()));
        }
        let key = (mono.to_vec(), g);
        if let Some(r) = self.mul_cache.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let (&x, prefix) = mono.split_last().unwrap();
        let mut out = Lin::zero();
        for (w, c) in self.rule(x, g)?.iter() {
            out.add_scaled(&self.mul_word(prefix, w, depth + 1)?, c);
        }
        let out = Arc::new(out);
        self.mul_cache.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Normal form of `mono * X_{w_1} * ... * X_{w_k}` for a normal `mono`.
    fn mul_word(&self, mono: &[u16], w: &[u16], depth: usize) -> Result<Lin<Mono>> {
        let mut acc: Lin<Mono> = Lin::basis(mono.to_vec());
        for &g in w {
            let mut next = Lin::zero();
            for (m, c) in acc.iter() {
                let r = self.mul_mono_gen(m, g, depth)?;
                next.add_scaled(&r, c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of an arbitrary word of positions.
    pub fn normalize_positions(&self, w: &[u16]) -> Result<Lin<Mono>> {
        self.mul_word(&[], w, 0)
    }
}

#[derive(Clone)]
pub struct NilradElt {
    alg: Arc<Nilrad>,
    terms: Lin<Mono>,
}

impl PartialEq for NilradElt {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl NilradElt {
    pub fn zero(alg: &Arc<Nilrad>) -> Self {
        Self { alg: alg.clone(), terms: Lin::zero() }
    }

    pub fn one(alg: &Arc<Nilrad>) -> Self {
        Self::scalar(alg, RatFunc::one())
    }

    pub fn scalar(alg: &Arc<Nilrad>, c: RatFunc) -> Self {
        Self { alg: alg.clone(), terms: Lin::single(Vec::new(), c) }
    }

    pub fn gen(alg: &Arc<Nilrad>, i: usize, j: usize) -> Result<Self> {
        Ok(Self { alg: alg.clone(), terms: Lin::basis(vec![alg.pos((i, j))?]) })
    }

    pub fn alg(&self) -> &Arc<Nilrad> {
        &self.alg
    }

    pub fn lin(&self) -> &Lin<Mono> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.alg, &other.alg) {
            return Err(Error::SizeMismatch("elements of different algebras".into()));
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
        for (u, a) in self.terms.iter() {
            for (v, b) in other.terms.iter() {
                out.add_scaled(&self.alg.mul_word(u, v, 0)?, &(a * b));
            }
        }
        Ok(Self { alg: self.alg.clone(), terms: out })
    }

    /// Coefficient of the monomial given as a list of pairs in normal order.
    pub fn coeff(&self, mono: &[Pair]) -> Result<RatFunc> {
        let m = self.alg.word_to_positions(mono)?;
        Ok(self.terms.get(&m).cloned().unwrap_or_default())
    }

    /// Terms as `(coefficient, [pairs])`, sorted for stable output.
    pub fn terms_as_pairs(&self) -> Vec<(RatFunc, Vec<Pair>)> {
        self.terms
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| (c.clone(), m.iter().map(|&p| self.alg.pair(p)).collect()))
            .collect()
    }
}

pub fn format_pairs(w: &[Pair]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|(i, j)| format!("X{i}{j}")).collect::<Vec<_>>().join("*")
}

impl fmt::Display for NilradElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms_as_pairs().into_iter().map(|(c, w)| format!("({c})*{}", format_pairs(&w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for NilradElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Normal form of `sum c * X_{w_1} ... X_{w_k}`.
pub fn pbw_normalize(alg: &Arc<Nilrad>, expr: &[(RatFunc, Vec<Pair>)]) -> Result<NilradElt> {
    let mut out = Lin::zero();
    for (c, w) in expr {
        let pos = alg.word_to_positions(w)?;
        out.add_scaled(&alg.normalize_positions(&pos)?, c);
    }
    Ok(NilradElt { alg: alg.clone(), terms: out })
}

pub fn nilrad_mul(a: &NilradElt, b: &NilradElt) -> Result<NilradElt> {
    a.mul(b)
}

pub fn x_paren(alg: &Arc<Nilrad>, l: usize, j: usize, m: usize) -> Result<NilradElt> {
    pbw_normalize(alg, &x_paren_terms(&alg.pd, alg.param, l, j, m)?)
}

/// Shuffle-algebra images of the generators, built from their nested
/// commutator form without expanding words in the free algebra.
pub struct ShuffleImages {
    pub pd: ParabolicData,
    images: Vec<Lin<Word>>,
    cap: usize,
}

impl ShuffleImages {
    pub fn new(pd: &ParabolicData, oracle: &Oracle) -> Result<Self> {
        let qinv = RatFunc::qpow(-1);
        let mut images = Vec::with_capacity(pd.phi.len());
        for &(i, j) in &pd.phi {
            let idx = lemma1_indices(pd, i, j)?;
            let mut acc: Lin<Word> = Lin::basis(vec![idx[0] as u8]);
            for &a in &idx[1..] {
                let e = Lin::basis(vec![a as u8]);
                let mut next = shuffle(&acc, &e, oracle.cap)?;
                next.sub_assign(&shuffle(&e, &acc, oracle.cap)?.scaled(&qinv));
                acc = next;
            }
            images.push(acc);
        }
        Ok(Self { pd: pd.clone(), images, cap: oracle.cap })
    }

    pub fn gen(&self, a: Pair) -> Result<&Lin<Word>> {
        Ok(&self.images[self.pd.position(a.0, a.1)?])
    }

    pub fn word(&self, w: &[Pair]) -> Result<Lin<Word>> {
        let mut acc = Lin::basis(Vec::new());
        for &a in w {
            acc = shuffle(&acc, self.gen(a)?, self.cap)?;
        }
        Ok(acc)
    }

    pub fn positions(&self, w: &[u16]) -> Result<Lin<Word>> {
        let pairs: Vec<Pair> = w.iter().map(|&p| self.pd.phi[p as usize]).collect();
        self.word(&pairs)
    }

    pub fn combination(&self, expr: &[(RatFunc, Vec<Pair>)]) -> Result<Lin<Word>> {
        let mut out = Lin::zero();
        for (c, w) in expr {
            out.add_scaled(&self.word(w)?, c);
        }
        Ok(out)
    }

    pub fn elt(&self, x: &NilradElt) -> Result<Lin<Word>> {
        let mut out = Lin::zero();
        for (m, c) in x.terms.iter() {
            out.add_scaled(&self.positions(m)?, c);
        }
        Ok(out)
    }
}

fn pair_json(a: Pair) -> Value {
    json!([a.0, a.1])
}

/// Checks every relation of the presentation through the shuffle embedding
/// of the nested-commutator root vectors. One entry per unordered pair.
pub fn verify_theorem_relations(pd: &ParabolicData, oracle: &Oracle) -> Result<Report> {
    let imgs = match ShuffleImages::new(pd, oracle) {
        Ok(x) => x,
        Err(e) if e.is_budget() => {
            return Ok(Report::new(vec![ReportEntry::skipped(
                "theorem_relations",
                json!({"n": pd.n, "J": pd.j}),
                format!("budget: {e}"),
            )]))
        }
        Err(e) => return Err(e),
    };
    let mut pairs = Vec::new();
    for x in 0..pd.phi.len() {
        for y in x + 1..pd.phi.len() {
            pairs.push((pd.phi[x], pd.phi[y]));
        }
    }
    let entries: Vec<ReportEntry> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let forms: Vec<(Pair, Pair, RelationCase)> = matching_cases(pd, a, b)
                .into_iter()
                .map(|c| (a, b, c))
                .chain(matching_cases(pd, b, a).into_iter().map(|c| (b, a, c)))
                .collect();
            let inst = json!({
                "n": pd.n,
                "J": pd.j,
                "pair": [pair_json(a), pair_json(b)],
                "cases": forms.iter().map(|(x, y, c)| json!({"lhs": [pair_json(*x), pair_json(*y)], "case": c.tag()})).collect::<Vec<_>>(),
            });
            ReportEntry::run("theorem_relations", inst, || {
                if forms.is_empty() {
                    return Ok(Some("no case of the theorem applies to this pair".into()));
                }
                let mut bad = Vec::new();
                for (x, y, c) in &forms {
                    let lhs = imgs.word(&[*x, *y])?;
                    let rhs = imgs.combination(&relation_rhs(pd, Param::Q, *c, *x, *y)?)?;
                    if !lhs.sub(&rhs).is_zero() {
                        bad.push(format!("{} for X{:?}X{:?}", c.tag(), x, y));
                    }
                }
                Ok(if bad.is_empty() { None } else { Some(bad.join("; ")) })
            })
        })
        .collect();
    Ok(Report::new(entries))
}

/// `<beta, gamma>` for roots `e_i - e_j` in the standard form on `e`.
pub fn root_pairing(a: Pair, b: Pair) -> i32 {
    let d = |x: usize, y: usize| i32::from(x == y);
    d(a.0, b.0) - d(a.0, b.1) - d(a.1, b.0) + d(a.1, b.1)
}

fn weight_of(n: usize, w: &[Pair]) -> Vec<i32> {
    let mut v = vec![0; n + 1];
    for &(i, j) in w {
        v[i] += 1;
        v[j] -= 1;
    }
    v
}

/// Straightening shape: `X_{b_s} X_{b_t}` (s < t) normalizes to
/// `p^{<b_s,b_t>} X_{b_t} X_{b_s}` plus monomials in roots strictly between
/// positions `s` and `t` of total weight `b_s + b_t`.
pub fn ls_straighten_check(alg: &Arc<Nilrad>) -> Report {
    let pd = &alg.pd;
    let t = pd.phi.len();
    let mut entries = Vec::new();
    for s in 0..t {
        for u in s + 1..t {
            let (a, b) = (pd.phi[s], pd.phi[u]);
            let inst = json!({"n": pd.n, "J": pd.j, "positions": [s, u], "pair": [pair_json(a), pair_json(b)]});
            entries.push(ReportEntry::run("ls_straighten", inst, || {
                let nf = pbw_normalize(alg, &[(RatFunc::one(), vec![a, b])])?;
                let lead = nf.coeff(&[b, a])?;
                let expect = alg.param.pow(root_pairing(a, b));
                if lead != expect {
                    return Ok(Some(format!("leading coefficient {lead}, expected {expect}")));
                }
                let target = weight_of(pd.n, &[a, b]);
                for (m, _) in nf.lin().iter() {
                    if m.as_slice() == [u as u16, s as u16] {
                        continue;
                    }
                    if m.iter().any(|&p| p as usize <= s || p as usize >= u) {
                        return Ok(Some(format!("non-interior monomial {m:?}")));
                    }
                    let pairs: Vec<Pair> = m.iter().map(|&p| alg.pair(p)).collect();
                    if weight_of(pd.n, &pairs) != target {
                        return Ok(Some(format!("weight mismatch in {m:?}")));
                    }
                }
                Ok(None)
            }));
        }
    }
    Report::new(entries)
}

/// All monomials of the given degree with non-increasing (or, if
/// `ascending`, non-decreasing) positions.
pub fn ordered_monomials(t: usize, degree: usize, ascending: bool) -> Vec<Mono> {
    fn rec(t: usize, left: usize, max: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 0..=max.min(t.saturating_sub(1)) {
            cur.push(p as u16);
            rec(t, left - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(t, degree, t - 1, &mut Vec::new(), &mut out);
    if ascending {
        for m in out.iter_mut() {
            m.reverse();
        }
    }
    out
}

/// Linear independence modulo the Serre ideal of all ordered monomials of
/// degree at most `max_degree`, checked weight by weight.
pub fn pbw_independence(pd: &ParabolicData, max_degree: usize, ascending: bool, oracle: &Oracle) -> Result<Report> {
    let imgs = ShuffleImages::new(pd, oracle)?;
    let mut by_weight: BTreeMap<Vec<i32>, Vec<Mono>> = BTreeMap::new();
    for d in 1..=max_degree {
        for m in ordered_monomials(pd.phi.len(), d, ascending) {
            let pairs: Vec<Pair> = m.iter().map(|&p| pd.phi[p as usize]).collect();
            by_weight.entry(weight_of(pd.n, &pairs)).or_default().push(m);
        }
    }
    let entries = by_weight
        .into_iter()
        .map(|(w, monos)| {
            let inst = json!({"n": pd.n, "J": pd.j, "weight": w[1..].to_vec(), "monomials": monos.len(), "ascending": ascending});
            ReportEntry::run("pbw_independence", inst, || {
                let mut ech: Echelon<Word> = Echelon::new();
                for m in &monos {
                    if !ech.insert(&imgs.positions(m)?) {
                        return Ok(Some(format!("monomial {m:?} is dependent on earlier ones")));
                    }
                }
                Ok(None)
            })
        })
        .collect();
    Ok(Report::new(entries))
}

/// The presentation as JSON: generators in convex order and one relation
/// per out-of-order pair.
pub fn presentation(pd: &ParabolicData, p: Param) -> Result<Value> {
    let mut rels = Vec::new();
    for x in 0..pd.phi.len() {
        for y in x + 1..pd.phi.len() {
            let (a, b) = (pd.phi[x], pd.phi[y]);
            let cl = classify_pair(pd, a, b)?;
            let (l, r) = if cl.reversed { (b, a) } else { (a, b) };
            let rhs: Vec<Value> = relation_rhs(pd, p, cl.case, l, r)?
                .into_iter()
                .map(|(c, w)| json!({"monomial": w.iter().map(|&a| pair_json(a)).collect::<Vec<_>>(), "coeff": c.to_string()}))
                .collect();
            rels.push(json!({"lhs": [pair_json(l), pair_json(r)], "case": cl.case.tag(), "rhs": rhs}));
        }
    }
    Ok(json!({
        "n": pd.n,
        "J": pd.j,
        "generators": pd.phi.iter().map(|&a| pair_json(a)).collect::<Vec<_>>(),
        "relations": rels,
    }))
}

pub fn presentation_text(pd: &ParabolicData, p: Param) -> Result<String> {
    let v = presentation(pd, p)?;
    let mut out = format!("U(n_J) for n={}, J={:?}\n", pd.n, pd.j);
    let fmt_pair = |v: &Value| format!("X{}{}", v[0], v[1]);
    out.push_str(&format!(
        "generators: {}\n",
        v["generators"].as_array().unwrap().iter().map(fmt_pair).collect::<Vec<_>>().join(", ")
    ));
    for r in v["relations"].as_array().unwrap() {
        let lhs: Vec<String> = r["lhs"].as_array().unwrap().iter().map(fmt_pair).collect();
        let rhs: Vec<String> = r["rhs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                let m: Vec<String> = t["monomial"].as_array().unwrap().iter().map(fmt_pair).collect();
                format!("({})*{}", t["coeff"].as_str().unwrap(), m.join("*"))
            })
            .collect();
        out.push_str(&format!("{} = {}    [{}]\n", lhs.join("*"), rhs.join(" + "), r["case"].as_str().unwrap()));
    }
    Ok(out)
}

/// Relabelings of `Phi_{{p}}` onto the `p x (n-p)` grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relabel {
    Shift,
    RowReversed,
    ColReversed,
    BothReversed,
}

impl Relabel {
    pub const ALL: [Relabel; 4] = [Relabel::Shift, Relabel::RowReversed, Relabel::ColReversed, Relabel::BothReversed];

    pub fn apply(self, n: usize, p: usize, (i, j): Pair) -> Pair {
        match self {
            Relabel::Shift => (i, j - p),
            Relabel::RowReversed => (p + 1 - i, j - p),
            Relabel::ColReversed => (i, n + 1 - j),
            Relabel::BothReversed => (p + 1 - i, n + 1 - j),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relabel::Shift => "(i,j) -> (i, j-p)",
            Relabel::RowReversed => "(i,j) -> (p+1-i, j-p)",
            Relabel::ColReversed => "(i,j) -> (i, n+1-j)",
            Relabel::BothReversed => "(i,j) -> (p+1-i, n+1-j)",
        }
    }
}

fn rel_element(lhs: Vec<Pair>, rhs: PairWords) -> Lin<Vec<Pair>> {
    let mut r = Lin::basis(lhs);
    for (c, w) in rhs {
        r.add_term(w, &-c);
    }
    r
}

/// Compares the presentation of `U_q(n_{{p}})` with the quantum matrix
/// relations for every relabeling and both matrix parameters. The two
/// quadratic relation spaces are compared in degree 2. Returns
/// `(relabel, matrix parameter, whether the spans agree)`.
pub fn quantum_matrix_comparison(n: usize, p: usize) -> Result<Vec<(Relabel, Param, bool)>> {
    let pd = ParabolicData::new(n, &[p])?;
    let mut out = Vec::new();
    for rl in Relabel::ALL {
        let mut ours = Echelon::new();
        for x in 0..pd.phi.len() {
            for y in x + 1..pd.phi.len() {
                let (a, b) = (pd.phi[x], pd.phi[y]);
                let cl = classify_pair(&pd, a, b)?;
                let (l, r) = if cl.reversed { (b, a) } else { (a, b) };
                let rel = rel_element(vec![l, r], relation_rhs(&pd, Param::Q, cl.case, l, r)?);
                ours.insert(&rel.map_keys(|w| w.iter().map(|&z| rl.apply(n, p, z)).collect::<Vec<_>>()));
            }
        }
        for mp in [Param::Q, Param::QInv] {
            let mut theirs = Echelon::new();
            let cells: Vec<Pair> = (1..=p).flat_map(|i| (1..=n - p).map(move |j| (i, j))).collect();
            for x in 0..cells.len() {
                for y in x + 1..cells.len() {
                    let (lo, hi) = (cells[x], cells[y]);
                    theirs.insert(&rel_element(vec![hi, lo], crate::qcoord::matrix_rule(lo, hi, mp)));
                }
            }
            let same = ours.same_span(&theirs);
            out.push((rl, mp, same));
        }
    }
    Ok(out)
}
