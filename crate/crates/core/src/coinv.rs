//! Left coinvariants of `O_q(P_J)` under the coaction of `O_q(L_J)`, the
//! generators `u_ij`, their relations, and the smash product decomposition.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::nilrad::{Pair, PairWords};
use crate::qcoord::{block_minor_inverse, QCoord, QElt, QTensor};
use crate::report::{Report, ReportEntry};
use crate::scalars::{Param, RatFunc};
use crate::weyl::ParabolicData;

pub struct Coinv {
    pub pd: ParabolicData,
    pub param: Param,
    pub p: Arc<QCoord>,
    pub l: Arc<QCoord>,
    u_cache: RwLock<HashMap<Pair, QElt>>,
}

impl Coinv {
    pub fn new(pd: &ParabolicData, param: Param, cap: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(Self {
            pd: pd.clone(),
            param,
            p: QCoord::parabolic(pd, param, cap)?,
            l: QCoord::levi(pd, param, cap)?,
            u_cache: Default::default(),
        }))
    }

    pub fn x(&self, i: usize, j: usize) -> Result<QElt> {
        QElt::var(&self.p, i, j)
    }

    pub fn y(&self, i: usize, j: usize) -> Result<QElt> {
        QElt::var(&self.l, i, j)
    }

    /// Surviving generators `y_ij` of `O_q(L_J)`.
    pub fn levi_generators(&self) -> Vec<Pair> {
        let n = self.pd.n;
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&e| !self.l.is_killed(e))
            .collect()
    }

    /// `θ(x_ij) = Σ_{k ∈ C_i} y_ik ⊗ x_kj`.
    pub fn theta_gen(&self, i: usize, j: usize) -> Result<QTensor> {
        let mut t = QTensor::zero(&self.l, &self.p);
        for &k in self.pd.block(i) {
            t = t.add(&QTensor::pure(&self.y(i, k)?, &self.x(k, j)?)?)?;
        }
        Ok(t)
    }

    fn theta_block_inv(&self, b: usize) -> Result<QTensor> {
        QTensor::pure(&QElt::block_minor_inv(&self.l, b)?, &QElt::block_minor_inv(&self.p, b)?)
    }

    /// The coaction, extended multiplicatively; on denominators through
    /// `θ([C_b|C_b]^{-1}) = [C_b|C_b]^{-1} ⊗ [C_b|C_b]^{-1}`.
    pub fn theta(&self, x: &QElt) -> Result<QTensor> {
        let mut out = QTensor::zero(&self.l, &self.p);
        for ((m, d), c) in x.lin().iter() {
            let mut acc = QTensor::one(&self.l, &self.p);
            for &v in m {
                let (i, j) = self.p.entry(v);
                acc = acc.mul(&self.theta_gen(i, j)?)?;
            }
            for (b, &k) in d.iter().enumerate() {
                for _ in 0..k {
                    acc = acc.mul(&self.theta_block_inv(b)?)?;
                }
            }
            out = out.add(&acc.scale(c))?;
        }
        Ok(out)
    }

    pub fn is_coinvariant(&self, x: &QElt) -> Result<bool> {
        let t = self.theta(x)?;
        t.equals(&QTensor::pure(&QElt::one(&self.l), x)?)
    }

    /// `u_ij = [C_i|C_i]^{-1} [C_i | C_i \ {i} ∪ {j}]`.
    pub fn u(&self, i: usize, j: usize) -> Result<QElt> {
        if !self.pd.contains(i, j) {
            return Err(Error::NotInPhi(i, j));
        }
        if let Some(u) = self.u_cache.read().unwrap().get(&(i, j)) {
            return Ok(u.clone());
        }
        let rows = self.pd.block(i).to_vec();
        let mut cols: Vec<usize> = rows.iter().copied().filter(|&k| k != i).collect();
        cols.push(j);
        let minor = QElt::minor(&self.p, &rows, &cols)?;
        let b = self.pd.block_of[i];
        let mut d = vec![0; self.p.num_blocks()];
        d[b] = 1;
        let u = QElt::left_divide(&self.p, &d, &minor)?;
        self.u_cache.write().unwrap().insert((i, j), u.clone());
        Ok(u)
    }

    pub fn u_word(&self, w: &[Pair]) -> Result<QElt> {
        let mut acc = QElt::one(&self.p);
        for &(i, j) in w {
            acc = acc.mul(&self.u(i, j)?)?;
        }
        Ok(acc)
    }

    pub fn combination(&self, expr: &PairWords) -> Result<QElt> {
        let mut acc = QElt::zero(&self.p);
        for (c, w) in expr {
            acc = acc.add(&self.u_word(w)?.scale(c))?;
        }
        Ok(acc)
    }

    /// `γ(y_ij) = x_ij` on a polynomial of `O_q(L_J)`.
    pub fn gamma(&self, h: &QElt) -> Result<QElt> {
        h.transport(&self.p)
    }

    pub fn gamma_bar(&self, h: &QElt) -> Result<QElt> {
        self.gamma(&h.antipode()?)
    }

    /// `a ◁ h = Σ γ̄(h_1) a γ(h_2)`.
    pub fn triangle(&self, a: &QElt, h: &QElt) -> Result<QElt> {
        let d = h.comult()?;
        let mut out = QElt::zero(&self.p);
        for ((s, t), c) in d.lin().iter() {
            let h1 = QElt::from_terms(&self.l, crate::lin::Lin::basis(s.clone()));
            let h2 = QElt::from_terms(&self.l, crate::lin::Lin::basis(t.clone()));
            let x = self.gamma_bar(&h1)?.mul(a)?.mul(&self.gamma(&h2)?)?;
            out = out.add(&x.scale(c))?;
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoinvCase {
    QCommute,
    Commute,
    QHat,
    Paren,
}

impl CoinvCase {
    pub fn tag(self) -> &'static str {
        match self {
            CoinvCase::QCommute => "q-commute",
            CoinvCase::Commute => "commute",
            CoinvCase::QHat => "qhat",
            CoinvCase::Paren => "paren",
        }
    }
}

/// Cases of the coinvariant relation table matching `u_a u_b`, as printed.
pub fn coinv_matching_cases(pd: &ParabolicData, (i, j): Pair, (l, m): Pair) -> Vec<CoinvCase> {
    let r = |x: usize| pd.r[x];
    let winv = |x: usize| pd.wj_inv.apply(x);
    let w0j = |x: usize| pd.w0j.apply(x);
    let mut out = Vec::new();
    if (l == i && i < j && j < m) || (j == m && winv(l) < winv(i)) {
        out.push(CoinvCase::QCommute);
    }
    if (w0j(l) < w0j(i) && w0j(i) < j && j < m)
        || (i < j && j < l && l < m)
        || (i <= r(j) && r(j) < l && l < j && j < m)
    {
        out.push(CoinvCase::Commute);
    }
    if (r(i) < l && l < i && i < j && j < m) || (i <= r(l) && r(l) < l && l <= r(j) && r(j) < j && j < m) {
        out.push(CoinvCase::QHat);
    }
    if i < j && j == l && l < m {
        out.push(CoinvCase::Paren);
    }
    out
}

/// `u_{(im),ℓ}` as printed.
pub fn u_paren_terms(pd: &ParabolicData, p: Param, i: usize, m: usize, l: usize) -> PairWords {
    let w0j = |x: usize| pd.w0j.apply(x);
    let (r, wl) = (pd.r[l] as i32, w0j(l) as i32);
    let mut out = vec![(p.neg_pow(r - wl), vec![(i, m)])];
    for k in pd.r[l] + 1..w0j(l) {
        let wk = w0j(k);
        out.push((p.neg_pow(l as i32 - wk as i32), vec![(wk, m), (i, wk)]));
    }
    out
}

/// Right-hand side of `u_a u_b` for a matching case.
pub fn coinv_relation_rhs(pd: &ParabolicData, p: Param, case: CoinvCase, a: Pair, b: Pair) -> PairWords {
    let ((i, j), (l, m)) = (a, b);
    match case {
        CoinvCase::QCommute => vec![(p.pow(1), vec![b, a])],
        CoinvCase::Commute => vec![(RatFunc::one(), vec![b, a])],
        CoinvCase::QHat => vec![(RatFunc::one(), vec![b, a]), (p.hat(), vec![(l, j), (i, m)])],
        CoinvCase::Paren => {
            let mut out = vec![(p.pow(-1), vec![b, a])];
            let h = -p.hat();
            for (c, w) in u_paren_terms(pd, p, i, m, l) {
                out.push((&c * &h, w));
            }
            out
        }
    }
}

fn pj(a: Pair) -> serde_json::Value {
    json!([a.0, a.1])
}

/// The coinvariant relation table as JSON: generators `u_ij` in the order of
/// `Phi_J` and every matching case for every ordered pair.
pub fn coinv_presentation(pd: &ParabolicData, p: Param) -> serde_json::Value {
    let mut rels = Vec::new();
    for &a in &pd.phi {
        for &b in &pd.phi {
            if a == b {
                continue;
            }
            for case in coinv_matching_cases(pd, a, b) {
                let rhs: Vec<_> = coinv_relation_rhs(pd, p, case, a, b)
                    .into_iter()
                    .map(|(c, w)| json!({"monomial": w.iter().map(|&x| pj(x)).collect::<Vec<_>>(), "coeff": c.to_string()}))
                    .collect();
                rels.push(json!({"lhs": [pj(a), pj(b)], "case": case.tag(), "rhs": rhs}));
            }
        }
    }
    json!({
        "n": pd.n,
        "J": pd.j,
        "generators": pd.phi.iter().map(|&a| pj(a)).collect::<Vec<_>>(),
        "relations": rels,
    })
}

/// Checks every printed relation on every unordered pair of generators.
pub fn verify_coinv_relations(co: &Coinv) -> Report {
    let pd = &co.pd;
    let mut pairs = Vec::new();
    for x in 0..pd.phi.len() {
        for y in x + 1..pd.phi.len() {
            pairs.push((pd.phi[x], pd.phi[y]));
        }
    }
    let entries: Vec<ReportEntry> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let forms: Vec<(Pair, Pair, CoinvCase)> = coinv_matching_cases(pd, a, b)
                .into_iter()
                .map(|c| (a, b, c))
                .chain(coinv_matching_cases(pd, b, a).into_iter().map(|c| (b, a, c)))
                .collect();
            let inst = json!({
                "n": pd.n,
                "J": pd.j,
                "pair": [pj(a), pj(b)],
                "cases": forms.iter().map(|(x, y, c)| json!({"lhs": [pj(*x), pj(*y)], "case": c.tag()})).collect::<Vec<_>>(),
            });
            ReportEntry::run("coinv_relations", inst, || {
                if forms.is_empty() {
                    return Ok(Some("no case of the relation table applies to this pair".into()));
                }
                let mut bad = Vec::new();
                for (x, y, c) in &forms {
                    let lhs = co.u_word(&[*x, *y])?;
                    let rhs = co.combination(&coinv_relation_rhs(pd, co.param, *c, *x, *y))?;
                    let diff = lhs.sub(&rhs)?;
                    if !diff.is_zero()? {
                        bad.push(format!("{} for u{:?}u{:?}: lhs - rhs = {}", c.tag(), x, y, diff));
                    }
                }
                Ok(if bad.is_empty() { None } else { Some(bad.join("; ")) })
            })
        })
        .collect();
    Report::new(entries)
}

/// Generators sorted by `u_ij ≺ u_ℓm` iff `w_0^J(i) < w_0^J(ℓ)`, or `i = ℓ`
/// and `j < m`.
pub fn ore_order(pd: &ParabolicData) -> Vec<Pair> {
    let mut g = pd.phi.clone();
    g.sort_by_key(|&(i, j)| (pd.w0j.apply(i), i, j));
    g
}

fn pair_weight(n: usize, w: &[Pair]) -> Vec<i32> {
    let mut v = vec![0; n + 1];
    for &(i, j) in w {
        v[j] += 1;
        v[i] -= 1;
    }
    v
}

/// For each `k` and `j < k` in the `≺` order, looks for `a` in `[-4, 4]`
/// with `t_k t_j - q^a t_j t_k` in the span of the same-weight monomials of
/// degree at most 2 in `t_1, …, t_{k-1}`.
pub fn ore_order_check(co: &Coinv) -> Report {
    let pd = &co.pd;
    let t = ore_order(pd);
    let mut tasks = Vec::new();
    for k in 1..t.len() {
        for j in 0..k {
            tasks.push((j, k));
        }
    }
    let entries: Vec<ReportEntry> = tasks
        .into_par_iter()
        .map(|(j, k)| {
            let inst = json!({"n": pd.n, "J": pd.j, "t_j": pj(t[j]), "t_k": pj(t[k]), "j": j + 1, "k": k + 1});
            ReportEntry::run("ore_order", inst, || {
                let wt = pair_weight(pd.n, &[t[j], t[k]]);
                let mut span: Vec<Vec<Pair>> = Vec::new();
                for x in 0..k {
                    if pair_weight(pd.n, &[t[x]]) == wt {
                        span.push(vec![t[x]]);
                    }
                    for y in 0..k {
                        if pair_weight(pd.n, &[t[x], t[y]]) == wt {
                            span.push(vec![t[x], t[y]]);
                        }
                    }
                }
                let mut elts = Vec::new();
                for w in &span {
                    elts.push(co.u_word(w)?);
                }
                let kj = co.u_word(&[t[k], t[j]])?;
                let jk = co.u_word(&[t[j], t[k]])?;
                elts.push(kj);
                elts.push(jk);
                let refs: Vec<&QElt> = elts.iter().collect();
                let mut coords = co.p.linear_coords(&refs)?;
                let jk = coords.pop().unwrap();
                let kj = coords.pop().unwrap();
                let mut ech = Echelon::new();
                for v in &coords {
                    ech.insert(v);
                }
                for a in -4..=4 {
                    if ech.reduce(&kj.sub(&jk.scaled(&co.param.pow(a)))).is_zero() {
                        return Ok(None);
                    }
                }
                Ok(Some("no q-power in [-4, 4] gives the skew-polynomial shape".into()))
            })
        })
        .collect();
    Report::new(entries)
}

/// Coaction axioms on generators, checked on generator triples:
/// `(Δ_L ⊗ id)θ = (id ⊗ θ)θ` and `(ε_L ⊗ id)θ = id`.
pub fn coaction_axioms(co: &Coinv) -> Report {
    let pd = &co.pd;
    let n = pd.n;
    let alive_l = |a: usize, b: usize| !co.l.is_killed((a, b));
    let alive_p = |a: usize, b: usize| !co.p.is_killed((a, b));
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if !alive_p(i, j) {
                continue;
            }
            let inst = json!({"n": n, "J": pd.j, "gen": [i, j]});
            entries.push(ReportEntry::run("coaction", inst, || {
                let mut lhs: BTreeMap<(Pair, Pair, Pair), i32> = BTreeMap::new();
                let mut rhs: BTreeMap<(Pair, Pair, Pair), i32> = BTreeMap::new();
                for &k in pd.block(i) {
                    // Δ_L(y_ik) = Σ_t y_it ⊗ y_tk
                    for t in 1..=n {
                        if alive_l(i, t) && alive_l(t, k) && alive_p(k, j) {
                            *lhs.entry(((i, t), (t, k), (k, j))).or_default() += 1;
                        }
                    }
                    for &t in pd.block(k) {
                        if alive_l(i, k) && alive_l(k, t) && alive_p(t, j) {
                            *rhs.entry(((i, k), (k, t), (t, j))).or_default() += 1;
                        }
                    }
                }
                if lhs != rhs {
                    return Ok(Some("coassociativity of the coaction".into()));
                }
                let theta = co.theta_gen(i, j)?;
                let mut back = QElt::zero(&co.p);
                for ((s, t), c) in theta.lin().iter() {
                    let e = QElt::from_terms(&co.l, crate::lin::Lin::basis(s.clone())).counit()?;
                    back = back.add(&QElt::from_terms(&co.p, crate::lin::Lin::basis(t.clone())).scale(&(&e * c)))?;
                }
                Ok((!back.equals(&co.x(i, j)?)?).then(|| "counit of the coaction".into()))
            }));
        }
    }
    for b in 0..co.p.num_blocks() {
        let inst = json!({"n": n, "J": pd.j, "block": b + 1});
        entries.push(ReportEntry::run("coaction_block_minor", inst, || {
            let d = QElt::block_minor(&co.p, b)?;
            let t = co.theta(&d)?;
            let expect = QTensor::pure(&QElt::block_minor(&co.l, b)?, &d)?;
            Ok((!t.equals(&expect)?).then(|| format!("θ([C|C]) = {t}")))
        }));
    }
    Report::new(entries)
}

/// Every `u_ij` is coinvariant.
pub fn coinvariance_check(co: &Coinv) -> Report {
    let pd = &co.pd;
    pd.phi
        .par_iter()
        .map(|&(i, j)| {
            ReportEntry::run("u_coinvariant", json!({"n": pd.n, "J": pd.j, "u": [i, j]}), || {
                let u = co.u(i, j)?;
                Ok((!co.is_coinvariant(&u)?).then(|| format!("θ(u) - 1⊗u != 0 for u = {u}")))
            })
        })
        .collect::<Vec<_>>()
        .into()
}

/// Existence of a two-sided inverse `q^c Π_{a≠b} [C_a|C_a]` for each block.
pub fn block_inverse_check(co: &Coinv) -> Report {
    let pd = &co.pd;
    (0..co.p.num_blocks())
        .map(|b| {
            ReportEntry::run("block_minor_inverse", json!({"n": pd.n, "J": pd.j, "block": b + 1}), || {
                Ok(match block_minor_inverse(&co.p, b)? {
                    Some(_) => None,
                    None => Some("no q-power in [-10, 10] inverts the block minor".into()),
                })
            })
        })
        .collect()
}

/// An element `Σ c h ⊗ a` of `O_q(L_J) # O_q(P_J)^{coθ}` kept as a list of
/// pure tensors.
#[derive(Clone, Debug)]
pub struct SmashElt {
    pub terms: Vec<(RatFunc, QElt, QElt)>,
}

impl SmashElt {
    pub fn pure(h: QElt, a: QElt) -> Self {
        Self { terms: vec![(RatFunc::one(), h, a)] }
    }
}

/// `(h ⊗ a)(h' ⊗ a') = Σ h h'_1 ⊗ (a ◁ h'_2) a'`.
pub fn smash_mul(co: &Coinv, x: &SmashElt, y: &SmashElt) -> Result<SmashElt> {
    let mut out = Vec::new();
    for (c, h, a) in &x.terms {
        for (c2, h2, a2) in &y.terms {
            let d = h2.comult()?;
            for ((s, t), k) in d.lin().iter() {
                let h21 = QElt::from_terms(&co.l, crate::lin::Lin::basis(s.clone()));
                let h22 = QElt::from_terms(&co.l, crate::lin::Lin::basis(t.clone()));
                let left = h.mul(&h21)?;
                let right = co.triangle(a, &h22)?.mul(a2)?;
                out.push((&(c * c2) * k, left, right));
            }
        }
    }
    Ok(SmashElt { terms: out })
}

/// `h ⊗ a ↦ γ(h) a`.
pub fn smash_map(co: &Coinv, x: &SmashElt) -> Result<QElt> {
    let mut out = QElt::zero(&co.p);
    for (c, h, a) in &x.terms {
        out = out.add(&co.gamma(h)?.mul(a)?.scale(c))?;
    }
    Ok(out)
}

/// The map `y_ij ⊗ u ↦ x_ij u` respects products of all pairs of generators
/// `y_ij ⊗ 1`, `1 ⊗ u_ij`.
pub fn smash_iso_check(co: &Coinv) -> Report {
    let pd = &co.pd;
    let mut gens: Vec<(String, SmashElt)> = Vec::new();
    let one_l = QElt::one(&co.l);
    let one_p = QElt::one(&co.p);
    gens.push(("1#1".into(), SmashElt::pure(one_l.clone(), one_p.clone())));
    for (i, j) in co.levi_generators() {
        gens.push((format!("y{i}{j}#1"), SmashElt::pure(co.y(i, j).expect("in range"), one_p.clone())));
    }
    let mut entries = Vec::new();
    for &(i, j) in &pd.phi {
        match co.u(i, j) {
            Ok(u) => gens.push((format!("1#u{i}{j}"), SmashElt::pure(one_l.clone(), u))),
            Err(e) => entries.push(ReportEntry::run("smash_iso", json!({"n": pd.n, "J": pd.j, "u": [i, j]}), || Err(e))),
        }
    }
    let mut tasks = Vec::new();
    for x in 0..gens.len() {
        for y in 0..gens.len() {
            tasks.push((x, y));
        }
    }
    entries.extend(tasks.into_par_iter().map(|(x, y)| {
        let (nx, gx) = &gens[x];
        let (ny, gy) = &gens[y];
        ReportEntry::run("smash_iso", json!({"n": pd.n, "J": pd.j, "left": nx, "right": ny}), || {
            let prod = smash_map(co, &smash_mul(co, gx, gy)?)?;
            let expect = smash_map(co, gx)?.mul(&smash_map(co, gy)?)?;
            let diff = prod.sub(&expect)?;
            Ok((!diff.is_zero()?).then(|| format!("Φ(xy) - Φ(x)Φ(y) = {diff}")))
        })
    }).collect::<Vec<_>>());
    Report::new(entries)
}

/// `Σ γ̄(h_1) γ(h_2) = ε(h)` on the generators of `O_q(L_J)`.
pub fn convolution_inverse_check(co: &Coinv) -> Report {
    let pd = &co.pd;
    co.levi_generators()
        .into_iter()
        .map(|(i, j)| {
            ReportEntry::run("gamma_convolution", json!({"n": pd.n, "J": pd.j, "gen": [i, j]}), || {
                let h = co.y(i, j)?;
                let d = h.comult()?;
                let mut acc = QElt::zero(&co.p);
                for ((s, t), c) in d.lin().iter() {
                    let h1 = QElt::from_terms(&co.l, crate::lin::Lin::basis(s.clone()));
                    let h2 = QElt::from_terms(&co.l, crate::lin::Lin::basis(t.clone()));
                    acc = acc.add(&co.gamma_bar(&h1)?.mul(&co.gamma(&h2)?)?.scale(c))?;
                }
                let eps = QElt::scalar(&co.p, h.counit()?);
                Ok((!acc.equals(&eps)?).then(|| format!("Σ γ̄(h1)γ(h2) = {acc}")))
            })
        })
        .collect()
}

/// The full coinvariant suite for one parabolic.
pub fn coinv_suite(pd: &ParabolicData, cap: usize) -> Result<Report> {
    let co = Coinv::new(pd, Param::Q, cap)?;
    let mut r = coaction_axioms(&co);
    r.extend(coinvariance_check(&co));
    r.extend(verify_coinv_relations(&co));
    r.extend(ore_order_check(&co));
    r.extend(block_inverse_check(&co));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::build_parabolic;

    const CAP: usize = 200_000;

    fn co(n: usize, j: &[usize]) -> Arc<Coinv> {
        Coinv::new(&build_parabolic(n, j).unwrap(), Param::Q, CAP).unwrap()
    }

    #[test]
    fn theta_examples() {
        let c = co(2, &[1]);
        let t = c.theta_gen(1, 2).unwrap();
        assert!(t.equals(&QTensor::pure(&c.y(1, 1).unwrap(), &c.x(1, 2).unwrap()).unwrap()).unwrap());
        let t = c.theta_gen(2, 2).unwrap();
        assert!(t.equals(&QTensor::pure(&c.y(2, 2).unwrap(), &c.x(2, 2).unwrap()).unwrap()).unwrap());
        let one = c.theta(&QElt::one(&c.p)).unwrap();
        assert!(one.equals(&QTensor::one(&c.l, &c.p)).unwrap());
    }

    #[test]
    fn u_examples() {
        let c = co(2, &[1]);
        let u = c.u(1, 2).unwrap();
        let x11inv = QElt::block_minor_inv(&c.p, 0).unwrap();
        assert!(u.equals(&x11inv.mul(&c.x(1, 2).unwrap()).unwrap()).unwrap());
        assert!(c.is_coinvariant(&u).unwrap());
        assert!(!c.is_coinvariant(&c.x(1, 1).unwrap()).unwrap());
        assert!(c.is_coinvariant(&QElt::one(&c.p)).unwrap());
        assert!(matches!(c.u(2, 1), Err(Error::NotInPhi(2, 1))));
    }

    #[test]
    fn gamma_examples() {
        let c = co(2, &[1]);
        let y11 = c.y(1, 1).unwrap();
        assert!(c.gamma(&y11).unwrap().equals(&c.x(1, 1).unwrap()).unwrap());
        let y22 = c.y(2, 2).unwrap();
        let prod = c.gamma(&y11.mul(&y22).unwrap()).unwrap();
        assert!(prod.equals(&c.x(1, 1).unwrap().mul(&c.x(2, 2).unwrap()).unwrap()).unwrap());
        let u = c.u(1, 2).unwrap();
        assert!(c.triangle(&u, &QElt::one(&c.l)).unwrap().equals(&u).unwrap());
        assert!(convolution_inverse_check(&c).all_pass());
    }

    #[test]
    fn suite_n3() {
        for j in [vec![1], vec![2], vec![1, 2]] {
            let r = coinv_suite(&build_parabolic(3, &j).unwrap(), CAP).unwrap();
            assert!(r.all_pass(), "{}", r.to_text());
        }
    }

    #[test]
    fn wrong_relations_are_detected() {
        let c = co(3, &[1, 2]);
        let (a, b) = ((1, 2), (1, 3));
        assert_eq!(coinv_matching_cases(&c.pd, a, b), vec![CoinvCase::QCommute]);
        let lhs = c.u_word(&[a, b]).unwrap();
        let good = c.u_word(&[b, a]).unwrap().scale(&RatFunc::q());
        let bad = c.u_word(&[b, a]).unwrap().scale(&RatFunc::qpow(-1));
        assert!(lhs.equals(&good).unwrap());
        assert!(!lhs.equals(&bad).unwrap());
        // dropping the correction term of the paren case breaks it
        let (a, b) = ((1, 2), (2, 3));
        assert_eq!(coinv_matching_cases(&c.pd, a, b), vec![CoinvCase::Paren]);
        let lhs = c.u_word(&[a, b]).unwrap();
        let rhs = c.combination(&coinv_relation_rhs(&c.pd, Param::Q, CoinvCase::Paren, a, b)).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
        let partial = c.u_word(&[b, a]).unwrap().scale(&RatFunc::qpow(-1));
        assert!(!lhs.equals(&partial).unwrap());
    }
}
