use qschubert::braid::reduced_word_independence;
use qschubert::coinv::Coinv;
use qschubert::nilrad::{presentation, verify_theorem_relations};
use qschubert::oracle::Oracle;
use qschubert::qcoord::{quotient_soundness, QCoord, QElt};
use qschubert::scalars::{Param, RatFunc};
use qschubert::weyl::{all_subsets, build_parabolic};

const CAP: usize = 200_000;

#[test]
fn root_vectors_do_not_depend_on_the_reduced_word() {
    let o = Oracle::default();
    let mut checked = 0;
    for n in 2..=4 {
        for j in all_subsets(n) {
            let pd = build_parabolic(n, &j).unwrap();
            let r = reduced_word_independence(&pd, &o).unwrap();
            assert!(r.all_pass(), "n={n} J={j:?}\n{}", r.to_text());
            checked += r.entries.len();
        }
    }
    assert!(checked > 20, "only {checked} instances");
}

#[test]
fn dropping_killed_variables_is_sound() {
    for n in 2..=4 {
        for j in all_subsets(n) {
            let pd = build_parabolic(n, &j).unwrap();
            let bad = quotient_soundness(&pd).unwrap();
            assert!(bad.is_empty(), "n={n} J={j:?}: {bad:?}");
        }
    }
}

#[test]
fn empty_j_is_trivial() {
    for n in 2..=5 {
        let pd = build_parabolic(n, &[]).unwrap();
        assert!(pd.phi.is_empty());
        let v = presentation(&pd, Param::Q).unwrap();
        assert!(v["generators"].as_array().unwrap().is_empty());
        assert!(v["relations"].as_array().unwrap().is_empty());
    }
}

#[test]
fn full_j_covers_all_positive_roots() {
    let o = Oracle::default();
    for n in 2..=4 {
        let j: Vec<usize> = (1..n).collect();
        let pd = build_parabolic(n, &j).unwrap();
        let mut roots = pd.phi.clone();
        roots.sort();
        let all: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        assert_eq!(roots, all);
        let v = presentation(&pd, Param::Q).unwrap();
        let t = all.len();
        assert_eq!(v["relations"].as_array().unwrap().len(), t * (t - 1) / 2);
        assert!(verify_theorem_relations(&pd, &o).unwrap().all_pass());
    }
}

#[test]
fn block_minor_is_normal_n3() {
    let pd = build_parabolic(3, &[2]).unwrap();
    let p = QCoord::parabolic(&pd, Param::Q, CAP).unwrap();
    let d = QElt::block_minor(&p, 0).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            if p.is_killed((i, j)) {
                continue;
            }
            let x = QElt::var(&p, i, j).unwrap();
            let c = p.normality_exponent(0, (i, j)).unwrap();
            let lhs = d.mul(&x).unwrap();
            let rhs = x.mul(&d).unwrap().scale(&RatFunc::qpow(c));
            assert!(lhs.equals(&rhs).unwrap(), "x{i}{j}: exponent {c}");
        }
    }
}

#[test]
fn coinvariant_generators_n3() {
    let pd = build_parabolic(3, &[2]).unwrap();
    let co = Coinv::new(&pd, Param::Q, CAP).unwrap();
    let inv = QElt::block_minor_inv(&co.p, 0).unwrap();
    let u13 = inv.mul(&QElt::minor(&co.p, &[1, 2], &[2, 3]).unwrap()).unwrap();
    let u23 = inv.mul(&QElt::minor(&co.p, &[1, 2], &[1, 3]).unwrap()).unwrap();
    assert!(co.u(1, 3).unwrap().equals(&u13).unwrap());
    assert!(co.u(2, 3).unwrap().equals(&u23).unwrap());
    assert!(co.is_coinvariant(&u13).unwrap());
    assert!(!co.is_coinvariant(&co.x(1, 3).unwrap()).unwrap());
}

#[test]
fn presentation_counts() {
    for n in 2..=5 {
        for j in all_subsets(n) {
            let pd = build_parabolic(n, &j).unwrap();
            let v = presentation(&pd, Param::Q).unwrap();
            let t = pd.phi.len();
            assert_eq!(v["generators"].as_array().unwrap().len(), t);
            assert_eq!(v["relations"].as_array().unwrap().len(), t * t.saturating_sub(1) / 2);
            // |Phi_J| = sum over pairs of blocks of the product of their sizes
            let sizes: Vec<usize> = pd.blocks.iter().map(|b| b.len()).collect();
            let expect: usize = (0..sizes.len()).flat_map(|a| (a + 1..sizes.len()).map(move |b| (a, b))).map(|(a, b)| sizes[a] * sizes[b]).sum();
            assert_eq!(t, expect);
        }
    }
}
