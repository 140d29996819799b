use std::str::FromStr;

use proptest::prelude::*;

use qschubert::braid::apply_t;
use qschubert::coinv::Coinv;
use qschubert::freealg::{nested_e, Family, FreeElt};
use qschubert::nilrad::{pbw_normalize, Nilrad, NilradElt};
use qschubert::oracle::{equals_mod_serre, Oracle};
use qschubert::qcoord::{QCoord, QElt};
use qschubert::scalars::{Param, RatFunc};
use qschubert::uqtri::{reflect, tri_normalize, uq_equals, Gen, UqElt};
use qschubert::weyl::{all_subsets, build_parabolic, is_reduced, Perm};

fn laurent() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(-3i64..=3, 1..4), -2i32..=2).prop_map(|(cs, low)| {
        cs.iter()
            .enumerate()
            .fold(RatFunc::zero(), |acc, (k, &c)| &acc + &RatFunc::int_qpow(c, low + k as i32))
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { a.checked_div(&b).unwrap() })
}

fn parabolic(max_n: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2..=max_n).prop_flat_map(|n| {
        let subsets = all_subsets(n);
        (Just(n), 0..subsets.len()).prop_map(move |(n, k)| (n, all_subsets(n)[k].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!((&a - &b).is_zero(), a == b);
    }

    #[test]
    fn q_inversion_is_an_involutive_homomorphism(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a.subst_q_inverse().subst_q_inverse(), a.clone());
        prop_assert_eq!((&a * &b).subst_q_inverse(), &a.subst_q_inverse() * &b.subst_q_inverse());
        prop_assert_eq!((&a + &b).subst_q_inverse(), &a.subst_q_inverse() + &b.subst_q_inverse());
    }

    #[test]
    fn render_parse_roundtrip(a in ratfunc()) {
        let s = a.to_string();
        prop_assert_eq!(RatFunc::from_str(&s).unwrap(), a);
    }

    #[test]
    fn reduced_words_of_permutations(window in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let w = Perm::from_window(window).unwrap();
        let word = w.reduced_word();
        prop_assert_eq!(word.len(), w.length());
        prop_assert!(is_reduced(6, &word).unwrap());
        prop_assert_eq!(Perm::from_word(6, &word).unwrap(), w.clone());
        prop_assert_eq!(w.compose(&w.inverse()), Perm::identity(6));
    }

    #[test]
    fn parabolic_factorization((n, j) in parabolic(7)) {
        let pd = build_parabolic(n, &j).unwrap();
        prop_assert_eq!(pd.wj.length(), pd.phi.len());
        prop_assert_eq!(pd.w0j.compose(&pd.wj), pd.w0.clone());
        prop_assert_eq!(pd.w0j.length() + pd.wj.length(), pd.w0.length());
        prop_assert!(is_reduced(n, &pd.wj_word).unwrap());
    }

    #[test]
    fn q_commutativity(seq in prop::collection::vec(1usize..=4, 3..=5), pos in 0usize..4) {
        let o = Oracle::default();
        let k = pos % (seq.len() - 1);
        prop_assume!(seq[k].abs_diff(seq[k + 1]) > 1);
        let mut swapped = seq.clone();
        swapped.swap(k, k + 1);
        let a = nested_e(5, &seq).unwrap();
        let b = nested_e(5, &swapped).unwrap();
        prop_assert!(equals_mod_serre(&a, &b, &o).unwrap());
    }

    #[test]
    fn q_associativity(x in 1usize..=4, z in 1usize..=4, y in prop::collection::vec(1u8..=4, 1..=3)) {
        prop_assume!(x.abs_diff(z) > 1);
        let o = Oracle::default();
        let n = 5;
        let (x, z) = (FreeElt::gen(n, Family::E, x).unwrap(), FreeElt::gen(n, Family::E, z).unwrap());
        let y = FreeElt::word(n, Family::E, &y).unwrap();
        let lhs = x.qcomm(&y).unwrap().qcomm(&z).unwrap();
        let rhs = x.qcomm(&y.qcomm(&z).unwrap()).unwrap();
        prop_assert!(equals_mod_serre(&lhs, &rhs, &o).unwrap());
    }

    #[test]
    fn uq_associativity(letters in prop::collection::vec(0usize..9, 3..=3)) {
        let n = 4;
        let o = Oracle::default();
        let gen = |k: usize| -> UqElt {
            match k % 3 {
                0 => UqElt::e(n, k / 3 + 1),
                1 => UqElt::f(n, k / 3 + 1),
                _ => UqElt::k(n, &[0, 1, -1, 0, 0][..n + 1]),
            }
        };
        let (a, b, c) = (gen(letters[0]), gen(letters[1]), gen(letters[2]));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(uq_equals(&left, &right, &o).unwrap());
    }

    #[test]
    fn tri_normalize_idempotent(letters in prop::collection::vec((0usize..2, 1usize..=3), 0..=4)) {
        let n = 4;
        let gens: Vec<Gen> = letters.iter().map(|&(t, i)| if t == 0 { Gen::E(i) } else { Gen::F(i) }).collect();
        let once = tri_normalize(n, &RatFunc::one(), &gens).unwrap();
        let twice = once.mul(&UqElt::one(n)).unwrap();
        prop_assert_eq!(once.lin(), twice.lin());
    }

    #[test]
    fn braid_automorphism(i in 1usize..=3, a in 0usize..6, b in 0usize..6) {
        let n = 4;
        let o = Oracle::default();
        let gen = |k: usize| if k < 3 { UqElt::e(n, k + 1) } else { UqElt::f(n, k - 2) };
        let (x, y) = (gen(a), gen(b));
        let lhs = apply_t(i, &x.mul(&y).unwrap(), &o).unwrap();
        let rhs = apply_t(i, &x, &o).unwrap().mul(&apply_t(i, &y, &o).unwrap()).unwrap();
        prop_assert!(uq_equals(&lhs, &rhs, &o).unwrap());
        // weight equivariance
        let w = x.weight().unwrap();
        prop_assert_eq!(apply_t(i, &x, &o).unwrap().weight().unwrap(), reflect(i, &w));
    }

    #[test]
    fn nilrad_confluence((n, j) in parabolic(4), picks in prop::collection::vec(0usize..64, 3)) {
        let pd = build_parabolic(n, &j).unwrap();
        prop_assume!(!pd.phi.is_empty());
        let alg = Nilrad::new(&pd, Param::Q);
        let g: Vec<NilradElt> = picks
            .iter()
            .map(|&k| { let (a, b) = pd.phi[k % pd.phi.len()]; NilradElt::gen(&alg, a, b).unwrap() })
            .collect();
        let left = g[0].mul(&g[1]).unwrap().mul(&g[2]).unwrap();
        let right = g[0].mul(&g[1].mul(&g[2]).unwrap()).unwrap();
        prop_assert_eq!(left.lin(), right.lin());
        let word: Vec<_> = picks.iter().map(|&k| pd.phi[k % pd.phi.len()]).collect();
        let direct = pbw_normalize(&alg, &[(RatFunc::one(), word)]).unwrap();
        prop_assert_eq!(direct.lin(), left.lin());
    }

    #[test]
    fn matrix_pbw_uniqueness(n in 2usize..=4, picks in prop::collection::vec((1usize..=4, 1usize..=4), 3)) {
        let alg = QCoord::matrices(n, Param::Q, 200_000).unwrap();
        let x: Vec<QElt> = picks.iter().map(|&(i, j)| QElt::var(&alg, (i - 1) % n + 1, (j - 1) % n + 1).unwrap()).collect();
        let left = x[0].mul(&x[1]).unwrap().mul(&x[2]).unwrap();
        let right = x[0].mul(&x[1].mul(&x[2]).unwrap()).unwrap();
        prop_assert_eq!(left.lin(), right.lin());
    }

    #[test]
    fn projection_is_multiplicative((n, j) in parabolic(4), picks in prop::collection::vec((1usize..=4, 1usize..=4), 2)) {
        let pd = build_parabolic(n, &j).unwrap();
        let m = QCoord::matrices(n, Param::Q, 200_000).unwrap();
        let sl = QCoord::sl(n, Param::Q, 200_000).unwrap();
        let p = QCoord::parabolic(&pd, Param::Q, 200_000).unwrap();
        let e = |(i, j): (usize, usize)| ((i - 1) % n + 1, (j - 1) % n + 1);
        let (a, b) = (e(picks[0]), e(picks[1]));
        let prod = QElt::var(&m, a.0, a.1).unwrap().mul(&QElt::var(&m, b.0, b.1).unwrap()).unwrap();
        let prod = QElt::from_poly(&sl, prod.poly().unwrap()).project(&p).unwrap();
        let direct = QElt::var(&p, a.0, a.1).unwrap().mul(&QElt::var(&p, b.0, b.1).unwrap()).unwrap();
        prop_assert!(prod.equals(&direct).unwrap());
    }

    #[test]
    fn products_of_u_are_coinvariant((n, j) in parabolic(3), a in 0usize..8, b in 0usize..8) {
        let pd = build_parabolic(n, &j).unwrap();
        prop_assume!(!pd.phi.is_empty());
        let co = Coinv::new(&pd, Param::Q, 200_000).unwrap();
        let (x, y) = (pd.phi[a % pd.phi.len()], pd.phi[b % pd.phi.len()]);
        let prod = co.u_word(&[x, y]).unwrap();
        prop_assert!(co.is_coinvariant(&prod).unwrap());
        let y11 = co.y(1, 1).unwrap();
        let act = co.triangle(&co.u(x.0, x.1).unwrap(), &y11).unwrap();
        prop_assert!(co.is_coinvariant(&act).unwrap());
    }
}
