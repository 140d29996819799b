//! Generator-level isomorphisms between the presentations: the reflection
//! `U_q(n_J) → U_q(n_J̃)^op`, the inversion `U_q(n_J) → U_{q^{-1}}(n_J)^op`,
//! the map into `O_{q^{-1}}(P_J)^{coθ}`, and `Ψ: U_q(n_J̃) → O_q(P_J)^{coθ}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::coinv::Coinv;
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::nilrad::{classify_pair, ordered_monomials, pbw_normalize, relation_rhs, Nilrad, Pair, PairWords};
use crate::qcoord::QElt;
use crate::report::{Report, ReportEntry};
use crate::scalars::{Param, RatFunc};
use crate::weyl::ParabolicData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Reflect,
    NegQ,
    QscToCoinv,
    Psi,
}

impl MapKind {
    pub const ALL: [MapKind; 4] = [MapKind::Reflect, MapKind::NegQ, MapKind::QscToCoinv, MapKind::Psi];

    pub fn tag(self) -> &'static str {
        match self {
            MapKind::Reflect => "reflect",
            MapKind::NegQ => "neg_q",
            MapKind::QscToCoinv => "qsc_to_coinv",
            MapKind::Psi => "psi",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::InvalidKind(format!("unknown map kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetKind {
    Nilrad,
    Coinv,
}

/// A map sending each generator `X_a` of the source to `c_a` times a single
/// generator of the target.
#[derive(Clone, Debug)]
pub struct GenMap {
    pub kind: MapKind,
    pub source: ParabolicData,
    pub target: ParabolicData,
    pub target_kind: TargetKind,
    pub target_param: Param,
    /// Target multiplication is reversed.
    pub op: bool,
    pub images: BTreeMap<Pair, (RatFunc, Pair)>,
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Builds the map. For `Psi` the given data is the target's: the source is
/// `U_q(n_J̃)`. For the other kinds `pd` is the source.
pub fn build_map(kind: MapKind, pd: &ParabolicData) -> Result<GenMap> {
    let n = pd.n;
    let tilde = ParabolicData::new(n, &pd.jtilde)?;
    let qhat_inv = RatFunc::qhat().inv()?;
    let (source, target, target_kind, target_param, op) = match kind {
        MapKind::Reflect => (pd.clone(), tilde.clone(), TargetKind::Nilrad, Param::Q, true),
        MapKind::NegQ => (pd.clone(), pd.clone(), TargetKind::Nilrad, Param::QInv, true),
        MapKind::QscToCoinv => (pd.clone(), pd.clone(), TargetKind::Coinv, Param::QInv, false),
        MapKind::Psi => (tilde.clone(), pd.clone(), TargetKind::Coinv, Param::Q, false),
    };
    let mut images = BTreeMap::new();
    for &(i, j) in &source.phi {
        let img = match kind {
            MapKind::Reflect => {
                let w = &target.wj;
                (RatFunc::one(), (w.apply(j), w.apply(i)))
            }
            MapKind::NegQ => (RatFunc::int_qpow(-1, 1), (i, j)),
            MapKind::QscToCoinv => {
                let w = &pd.w0j;
                let e = w.apply(j) as i64 - w.apply(i) as i64;
                (qhat_inv.scale_int(sign(e) as i32), (w.apply(i), w.apply(j)))
            }
            MapKind::Psi => {
                let w = &pd.w0;
                let c = &RatFunc::q() * &qhat_inv;
                (c.scale_int(sign((i + j) as i64) as i32), (w.apply(j), w.apply(i)))
            }
        };
        if !target.contains(img.1 .0, img.1 .1) {
            return Err(Error::InternalConsistency(format!(
                "{}: image of X{:?} is {:?}, not in Phi of the target",
                kind.tag(),
                (i, j),
                img.1
            )));
        }
        images.insert((i, j), img);
    }
    Ok(GenMap { kind, source, target, target_kind, target_param, op, images })
}

impl GenMap {
    /// Whether the index map is a bijection onto `Phi` of the target.
    pub fn index_bijective(&self) -> bool {
        let img: BTreeSet<Pair> = self.images.values().map(|x| x.1).collect();
        let tgt: BTreeSet<Pair> = self.target.phi.iter().copied().collect();
        img.len() == self.images.len() && img == tgt
    }

    /// Image of a linear combination of source words, as target words.
    pub fn image_words(&self, expr: &PairWords) -> Result<PairWords> {
        let mut out = Vec::new();
        for (c, w) in expr {
            let mut coef = c.clone();
            let mut word = Vec::with_capacity(w.len());
            for a in w {
                let (k, b) = self.images.get(a).ok_or(Error::NotInPhi(a.0, a.1))?;
                coef = &coef * k;
                word.push(*b);
            }
            if self.op {
                word.reverse();
            }
            out.push((coef, word));
        }
        Ok(out)
    }

    fn engine(&self, cap: usize) -> Result<Engine> {
        Ok(match self.target_kind {
            TargetKind::Nilrad => Engine::Nil(Nilrad::new(&self.target, self.target_param)),
            TargetKind::Coinv => Engine::Co(Coinv::new(&self.target, self.target_param, cap)?),
        })
    }
}

impl fmt::Display for GenMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.target_kind == TargetKind::Coinv { "u" } else { "X" };
        for (a, (c, b)) in &self.images {
            writeln!(f, "X{}{} -> ({c})*{letter}{}{}", a.0, a.1, b.0, b.1)?;
        }
        Ok(())
    }
}

enum Engine {
    Nil(Arc<Nilrad>),
    Co(Arc<Coinv>),
}

impl Engine {
    fn is_zero(&self, expr: &PairWords) -> Result<bool> {
        match self {
            Engine::Nil(alg) => Ok(pbw_normalize(alg, expr)?.is_zero()),
            Engine::Co(co) => co.combination(expr)?.is_zero(),
        }
    }

    /// Linear coordinates of several combinations.
    fn coords(&self, exprs: &[PairWords]) -> Result<Vec<crate::lin::Lin<Vec<u16>>>> {
        match self {
            Engine::Nil(alg) => exprs.iter().map(|e| Ok(pbw_normalize(alg, e)?.lin().clone())).collect(),
            Engine::Co(co) => {
                let elts: Vec<QElt> = exprs.iter().map(|e| co.combination(e)).collect::<Result<_>>()?;
                let refs: Vec<&QElt> = elts.iter().collect();
                co.p.linear_coords(&refs)
            }
        }
    }
}

/// The defining relations of the source: one `X_a X_b - rhs` per unordered
/// pair, oriented as the classifier returns it.
pub fn source_relations(pd: &ParabolicData) -> Result<Vec<(Pair, Pair, PairWords)>> {
    let mut out = Vec::new();
    for x in 0..pd.phi.len() {
        for y in x + 1..pd.phi.len() {
            let (a, b) = (pd.phi[x], pd.phi[y]);
            let cl = classify_pair(pd, a, b)?;
            let (l, r) = if cl.reversed { (b, a) } else { (a, b) };
            let mut rel = vec![(RatFunc::one(), vec![l, r])];
            for (c, w) in relation_rhs(pd, Param::Q, cl.case, l, r)? {
                rel.push((-c, w));
            }
            out.push((l, r, rel));
        }
    }
    Ok(out)
}

/// Substitutes the images into every defining relation of the source.
pub fn verify_hom(map: &GenMap, cap: usize) -> Result<Report> {
    let engine = map.engine(cap)?;
    let base = json!({"map": map.kind.tag(), "n": map.source.n, "J_source": map.source.j, "J_target": map.target.j});
    let mut entries = vec![ReportEntry::run("hom_bijective", base.clone(), || {
        Ok((!map.index_bijective()).then(|| "index map is not a bijection onto the target generators".into()))
    })];
    let rels = source_relations(&map.source)?;
    entries.extend(
        rels.par_iter()
            .map(|(l, r, rel)| {
                let mut inst = base.clone();
                inst["relation"] = json!([[l.0, l.1], [r.0, r.1]]);
                ReportEntry::run("hom_relation", inst, || {
                    let img = map.image_words(rel)?;
                    Ok((!engine.is_zero(&img)?).then(|| format!("image of relation for X{l:?}X{r:?} is nonzero")))
                })
            })
            .collect::<Vec<_>>(),
    );
    Ok(Report::new(entries))
}

/// Images of the ordered monomials of degree at most `max_degree` are
/// linearly independent in the target.
pub fn injectivity_check(map: &GenMap, max_degree: usize, cap: usize) -> Report {
    let inst = json!({"map": map.kind.tag(), "n": map.source.n, "J_source": map.source.j, "max_degree": max_degree});
    let r = ReportEntry::run("hom_injective_low_degree", inst, || {
        let engine = map.engine(cap)?;
        let t = map.source.phi.len();
        let mut exprs = Vec::new();
        for d in 0..=max_degree {
            for m in ordered_monomials(t, d, false) {
                let w: Vec<Pair> = m.iter().map(|&p| map.source.phi[p as usize]).collect();
                exprs.push(map.image_words(&vec![(RatFunc::one(), w)])?);
            }
        }
        let coords = engine.coords(&exprs)?;
        let mut ech = Echelon::new();
        let mut dependent = 0;
        for v in &coords {
            if !ech.insert(v) {
                dependent += 1;
            }
        }
        Ok((dependent > 0).then(|| format!("{dependent} of {} basis images are dependent", coords.len())))
    });
    Report::new(vec![r])
}

/// Composes generator maps: `first` then `second`, where `second` is read
/// over the parameter of `first`'s target (its scalars inverted in `q` when
/// that target is a `q^{-1}` algebra).
pub fn compose(first: &GenMap, second: &GenMap) -> Result<BTreeMap<Pair, (RatFunc, Pair)>> {
    let mut out = BTreeMap::new();
    for (a, (c1, b)) in &first.images {
        let (c2, z) = second.images.get(b).ok_or(Error::NotInPhi(b.0, b.1))?;
        let c2 = if first.target_param == Param::QInv { c2.subst_q_inverse() } else { c2.clone() };
        out.insert(*a, (c1 * &c2, *z));
    }
    Ok(out)
}

/// `Ψ` against the composite `U_q(n_J̃) → U_q(n_J)^op → U_{q^{-1}}(n_J)
/// → O_q(P_J)^{coθ}` on generators.
pub fn composition_check(pd: &ParabolicData) -> Result<Report> {
    let tilde = ParabolicData::new(pd.n, &pd.jtilde)?;
    let reflect = build_map(MapKind::Reflect, &tilde)?;
    let negq = build_map(MapKind::NegQ, pd)?;
    let to_coinv = build_map(MapKind::QscToCoinv, pd)?;
    let psi = build_map(MapKind::Psi, pd)?;
    let first = compose(&reflect, &negq)?;
    let mut step = reflect.clone();
    step.images = first;
    step.target_param = negq.target_param;
    let composite = compose(&step, &to_coinv)?;
    let entries = psi
        .images
        .iter()
        .map(|(a, (c, b))| {
            let inst = json!({"n": pd.n, "J": pd.j, "gen": [a.0, a.1]});
            ReportEntry::run("psi_composition", inst, || {
                let (c2, b2) = composite.get(a).ok_or(Error::NotInPhi(a.0, a.1))?;
                if b2 != b {
                    return Ok(Some(format!("composite sends X{a:?} to u{b2:?}, Ψ to u{b:?}")));
                }
                if c2 != c {
                    let ratio = c2.checked_div(c)?;
                    return Ok(Some(format!("scalars differ: composite/Ψ = {ratio}")));
                }
                Ok(None)
            })
        })
        .collect();
    Ok(Report::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{all_subsets, build_parabolic};

    const CAP: usize = 200_000;

    #[test]
    fn map_examples() {
        let pd = build_parabolic(2, &[1]).unwrap();
        let psi = build_map(MapKind::Psi, &pd).unwrap();
        let (c, b) = &psi.images[&(1, 2)];
        assert_eq!(*b, (1, 2));
        assert_eq!(*c, (&RatFunc::q() * &RatFunc::qhat().inv().unwrap()).scale_int(-1));
        let pd = build_parabolic(3, &[1, 2]).unwrap();
        let neg = build_map(MapKind::NegQ, &pd).unwrap();
        assert_eq!(neg.images[&(1, 3)], (RatFunc::int_qpow(-1, 1), (1, 3)));
        let pd = build_parabolic(3, &[2]).unwrap();
        let refl = build_map(MapKind::Reflect, &pd).unwrap();
        assert_eq!(refl.target.j, vec![1]);
        let w = &refl.target.wj;
        assert_eq!(refl.images[&(1, 3)].1, (w.apply(3), w.apply(1)));
        assert!(MapKind::parse("nope").is_err());
    }

    #[test]
    fn bijective_indices() {
        for n in 2..=5 {
            for j in all_subsets(n) {
                let pd = build_parabolic(n, &j).unwrap();
                for k in MapKind::ALL {
                    assert!(build_map(k, &pd).unwrap().index_bijective(), "{k:?} n={n} J={j:?}");
                }
            }
        }
    }

    #[test]
    fn negq_twice_is_identity() {
        let pd = build_parabolic(3, &[1, 2]).unwrap();
        let m = build_map(MapKind::NegQ, &pd).unwrap();
        let comp = compose(&m, &m).unwrap();
        assert!(comp.iter().all(|(a, (c, b))| a == b && c.is_one()));
    }

    #[test]
    fn homs_n3() {
        for j in all_subsets(3) {
            let pd = build_parabolic(3, &j).unwrap();
            for k in MapKind::ALL {
                let r = verify_hom(&build_map(k, &pd).unwrap(), CAP).unwrap();
                assert!(r.all_pass(), "{}", r.to_text());
            }
            assert!(composition_check(&pd).unwrap().all_pass());
        }
    }

    #[test]
    fn broken_map_fails() {
        let pd = build_parabolic(3, &[1, 2]).unwrap();
        let mut m = build_map(MapKind::NegQ, &pd).unwrap();
        m.op = false;
        let r = verify_hom(&m, CAP).unwrap();
        assert!(!r.all_pass());
    }
}
