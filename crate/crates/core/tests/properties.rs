//! Property tests for the algebraic invariants.

mod common;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sl3z::cohomology::{
    heisenberg_normal_form, involution_generators, mapping_torus_betti, mapping_torus_complex, top_class_action,
    Gen, HeisElem, HeisenbergAutomorphism, HeisenbergWord, Letter,
};
use sl3z::commensurator::{
    bounded_power_search, centralizer_enum, commensurable, in_commensurator, normalizer_descriptor,
    tr3_involutions, witness_is_valid, Commensurability, CyclicSubgroup, SearchBound,
};
use sl3z::exact::{charpoly, e12, e13, e23, smith_normal_form, IntMatrix, RatMatrix};
use sl3z::hypotheses::{integral_char_check, GeneratorSet, IntegralCharVerdict, RatPoly};
use sl3z::report::{dimension_certificate, ClassBounds};
use sl3z::spectra::{is_finite_order, power_normalize, spectral_type_of, Cyclotomic};
use sl3z::vcyc::{
    classify, conjugate_unipotent, exp_nilpotent, hirsch_length_unipotent, is_center_conjugable, is_central_form,
    nilpotent_log,
};

use common::{elementary_product, exemplars, extra_exemplars, rat, random_unipotent, rng};

fn steps(max: usize) -> impl Strategy<Value = Vec<(usize, usize, bool)>> {
    prop::collection::vec((0usize..3, 0usize..2, any::<bool>()), 1..max)
}

fn unimodular(max: usize) -> impl Strategy<Value = IntMatrix> {
    steps(max).prop_map(|s| elementary_product(&s))
}

fn infinite_order() -> impl Strategy<Value = IntMatrix> {
    prop_oneof![
        unimodular(12).prop_filter("infinite order", |m| !is_finite_order(m)),
        (0usize..13).prop_map(|i| exemplars().into_iter().chain(extra_exemplars()).nth(i).unwrap().1),
    ]
}

fn small_int_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        IntMatrix::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    })
}

fn unitriangular() -> impl Strategy<Value = IntMatrix> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c)| IntMatrix::lit([[1, a, c], [0, 1, b], [0, 0, 1]]))
}

fn sl2(max: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((any::<bool>(), any::<bool>()), 0..max).prop_map(|s| {
        s.into_iter().fold(IntMatrix::identity(2), |acc, (upper, neg)| {
            let c = BigInt::from(if neg { -1 } else { 1 });
            let e = if upper { IntMatrix::elementary(2, 0, 1, c) } else { IntMatrix::elementary(2, 1, 0, c) };
            &acc * &e
        })
    })
}

fn unipotent() -> impl Strategy<Value = IntMatrix> {
    any::<u64>().prop_map(|seed| random_unipotent(&mut rng(seed), 3, 5))
}

fn letter() -> impl Strategy<Value = Letter> {
    (prop_oneof![Just(Gen::X), Just(Gen::Y), Just(Gen::Z)], any::<bool>()).prop_map(|(g, i)| Letter::new(g, i))
}

fn letter_matrix(l: Letter) -> IntMatrix {
    let s = if l.inverse { -1 } else { 1 };
    match l.gen {
        Gen::X => e12(s),
        Gen::Y => e23(s),
        Gen::Z => e13(s),
    }
}

/// Automorphism with a random action on `H1` in GL(2,Z) and random central
/// corrections, built from normal forms.
fn automorphism() -> impl Strategy<Value = HeisenbergAutomorphism> {
    (sl2(8), any::<bool>(), -3i64..=3, -3i64..=3).prop_map(|(m, flip, cx, cy)| {
        let g = |i: usize, j: usize| -> i64 { m.get(i, j).try_into().unwrap() };
        let (mut a, mut b, c, d) = (g(0, 0), g(0, 1), g(1, 0), g(1, 1));
        if flip {
            // a determinant -1 action
            (a, b) = (-a, -b);
        }
        let det = a * d - b * c;
        let x = HeisElem::new(a, b, cx).to_word();
        let y = HeisElem::new(c, d, cy).to_word();
        let z = HeisElem::new(0, 0, det).to_word();
        HeisenbergAutomorphism::new("random", x, y, z).expect("determinant ±1 action")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn charpoly_is_similarity_invariant(a in small_int_matrix(3), p in unimodular(10)) {
        prop_assert_eq!(charpoly(&a.conjugate_by(&p).unwrap()).unwrap(), charpoly(&a).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in small_int_matrix(3), b in small_int_matrix(3)) {
        prop_assert_eq!((&a * &b).det(), a.det() * b.det());
        let (_, inv) = a.to_rat().det_inv();
        if let Some(inv) = inv {
            prop_assert!((&a.to_rat() * &inv).is_identity());
        }
    }

    #[test]
    fn smith_form_reconstructs(a in small_int_matrix(3)) {
        let (u, d, v) = smith_normal_form(&a);
        prop_assert_eq!(&(&u * &a) * &v, d.clone());
        prop_assert!(u.det().abs().is_one() && v.det().abs().is_one());
        let diag: Vec<BigInt> = (0..3).map(|i| d.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn powers_add(a in unimodular(6), j in -4i64..=4, k in -4i64..=4) {
        prop_assert_eq!(a.pow(j + k).unwrap(), &a.pow(j).unwrap() * &a.pow(k).unwrap());
    }

    #[test]
    fn spectral_type_is_conjugation_invariant(a in unimodular(10), p in unimodular(10)) {
        prop_assert_eq!(spectral_type_of(&a.conjugate_by(&p).unwrap()).unwrap(), spectral_type_of(&a).unwrap());
    }

    #[test]
    fn normalized_power_has_only_eigenvalue_one_as_root_of_unity(a in infinite_order()) {
        let (_, ak) = power_normalize(&a).unwrap();
        let p = charpoly(&ak).unwrap();
        for c in [Cyclotomic::Phi2, Cyclotomic::Phi3, Cyclotomic::Phi4, Cyclotomic::Phi6] {
            prop_assert!(p.poly().exact_div(&c.poly()).is_none(), "{:?} divides {}", c, p.poly());
        }
    }

    #[test]
    fn class_is_invariant_under_conjugation_and_powers(a in infinite_order(), p in unimodular(10)) {
        let tag = classify(&a).unwrap().tag;
        prop_assert_eq!(classify(&a.conjugate_by(&p).unwrap()).unwrap().tag, tag);
        for m in [2, 3, 5, -1] {
            prop_assert_eq!(classify(&a.pow(m).unwrap()).unwrap().tag, tag);
        }
    }

    #[test]
    fn log_and_exp_are_inverse(a in unipotent(), k in -4i64..=4) {
        let log = nilpotent_log(&a).unwrap().log;
        prop_assert_eq!(exp_nilpotent(&log).unwrap(), a.to_rat());
        if k != 0 {
            let log_k = nilpotent_log(&a.pow(k).unwrap()).unwrap().log;
            prop_assert_eq!(log_k, log.scale(&rat(k, 1)));
        }
    }

    #[test]
    fn conjugate_unipotent_is_exact(a in unipotent()) {
        let (p, t) = conjugate_unipotent(&a).unwrap();
        prop_assert!(p.det().is_one());
        prop_assert!(t.is_upper_unitriangular());
        prop_assert_eq!(a.conjugate_by(&p).unwrap(), t.clone());
        if is_center_conjugable(&a).unwrap() {
            prop_assert!(is_central_form(&t));
        }
    }

    #[test]
    fn hirsch_length_is_monotone_and_conjugation_invariant(
        t in unitriangular(), u in unitriangular(), q in unimodular(6), p in unimodular(8)
    ) {
        let (a, b) = (t.conjugate_by(&q).unwrap(), u.conjugate_by(&q).unwrap());
        let h1 = hirsch_length_unipotent(&[a.to_rat()]).unwrap();
        let h2 = hirsch_length_unipotent(&[a.to_rat(), b.to_rat()]).unwrap();
        prop_assert!(h1 <= h2 && h2 <= 3);
        let conj: Vec<RatMatrix> =
            [&a, &b].iter().map(|m| m.conjugate_by(&p).unwrap().to_rat()).collect();
        prop_assert_eq!(hirsch_length_unipotent(&conj).unwrap(), h2);
    }

    #[test]
    fn normal_form_matches_matrix_model(word in prop::collection::vec(letter(), 0..40)) {
        let w = HeisenbergWord(word.clone());
        let (a, b, c) = heisenberg_normal_form(&w);
        let direct = word.iter().fold(IntMatrix::identity(3), |acc, &l| &acc * &letter_matrix(l));
        prop_assert_eq!(&(&e12(a) * &e23(b)) * &e13(c), direct);
    }

    #[test]
    fn top_class_action_is_multiplicative(f in automorphism(), g in automorphism()) {
        prop_assert_eq!(top_class_action(&f.compose(&g)), top_class_action(&f) * top_class_action(&g));
    }

    #[test]
    fn mapping_torus_duality(mut m in sl2(10), negate in any::<bool>()) {
        if negate {
            m = m.scale(&BigInt::from(-1));
        }
        let complex = mapping_torus_complex(&m).unwrap();
        prop_assert_eq!(complex.euler_characteristic(), 0);
        let (b0, b1, b2, b3) = mapping_torus_betti(&m).unwrap();
        prop_assert_eq!((b0, b1), (b3, b2));
    }

    #[test]
    fn mapping_torus_euler_characteristic_vanishes_for_reflections(n in sl2(8)) {
        let m = &IntMatrix::lit([[0, 1], [1, 0]]) * &n;
        prop_assert_eq!(mapping_torus_complex(&m).unwrap().euler_characteristic(), 0);
    }

    #[test]
    fn dimension_certificate_is_minimal(
        rows in prop::collection::vec((0u32..6, 0u32..6), 0..6), ambient in 0u32..6
    ) {
        let classes: Vec<ClassBounds> =
            rows.iter().map(|&(proper, family)| ClassBounds { label: "c".into(), proper, family }).collect();
        let cert = dimension_certificate(&classes, ambient);
        prop_assert!(cert.satisfied_by(cert.d));
        prop_assert!(cert.d == 0 || !cert.satisfied_by(cert.d - 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn unipotent_decision_matches_power_search(seed in any::<u64>(), i in 1i64..=5, j in -5i64..=5, related in any::<bool>()) {
        let mut r = rng(seed);
        let base = random_unipotent(&mut r, 2, 4);
        let (a, b) = if related && j != 0 {
            (base.pow(i).unwrap(), base.pow(j).unwrap())
        } else {
            (base, random_unipotent(&mut r, 2, 4))
        };
        let bound = SearchBound::default();
        let exact = commensurable(&a, &b, bound).unwrap();
        let decided = !matches!(exact, Commensurability::Unknown { .. });
        prop_assert!(decided);
        prop_assert_eq!(exact.is_yes(), bounded_power_search(&a, &b, bound.power_bound).unwrap().is_some());
    }

    #[test]
    fn commensurable_is_symmetric_and_transitive(
        seed in any::<u64>(), p in 1i64..=4, q in -4i64..=4, s in -4i64..=4
    ) {
        prop_assume!(q != 0 && s != 0);
        let base = random_unipotent(&mut rng(seed), 2, 4);
        let (a, b, c) = (base.pow(p).unwrap(), base.pow(q).unwrap(), base.pow(s).unwrap());
        let bound = SearchBound::default();
        prop_assert!(commensurable(&a, &a, bound).unwrap().is_yes());
        let ab = commensurable(&a, &b, bound).unwrap();
        let ba = commensurable(&b, &a, bound).unwrap();
        prop_assert_eq!(ab.is_yes(), ba.is_yes());
        let bc = commensurable(&b, &c, bound).unwrap();
        let ((n, m), (pp, qq)) = (ab.witness().unwrap(), bc.witness().unwrap());
        prop_assert!(witness_is_valid(&a, &b, n, m).unwrap());
        prop_assert!(witness_is_valid(&a, &c, n * pp, m * qq).unwrap());
        prop_assert!(commensurable(&a, &c, bound).unwrap().is_yes());
    }

    #[test]
    fn commensurable_pairs_share_a_class(a in infinite_order(), k in 1i64..=3, p in unimodular(4)) {
        let b = a.pow(k).unwrap();
        let c = a.conjugate_by(&p).unwrap();
        let bound = SearchBound::default();
        for other in [&b, &c] {
            let v = commensurable(&a, other, bound).unwrap();
            if v.is_yes() {
                prop_assert_eq!(classify(&a).unwrap().tag, classify(other).unwrap().tag);
            }
        }
        prop_assert!(commensurable(&a, &b, bound).unwrap().is_yes());
    }

    #[test]
    fn dedup_matches_plain_enumeration(
        entries in prop::collection::vec((-2i64..=2, prop_oneof![Just(1i64), Just(2)]), 8),
        length in 0usize..=4,
    ) {
        let mk = |e: &[(i64, i64)]| {
            RatMatrix::from_rows(vec![
                vec![rat(e[0].0, e[0].1), rat(e[1].0, e[1].1)],
                vec![rat(e[2].0, e[2].1), rat(e[3].0, e[3].1)],
            ]).unwrap()
        };
        let gens: Vec<RatMatrix> = entries.chunks(4).map(mk).filter(|m| !m.det().is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gs = GeneratorSet::new(2, gens).unwrap();
        let verdict = integral_char_check(&gs, length);
        prop_assert_eq!(verdict.is_pass(), common::integral_char_naive(&gs, length));
        if let IntegralCharVerdict::Violation { word, matrix, charpoly, .. } = &verdict {
            let recomputed = gs.eval_word(word);
            prop_assert_eq!(&recomputed, matrix);
            prop_assert_eq!(&RatPoly::charpoly(&recomputed), charpoly);
            prop_assert!(!charpoly.is_integral());
        }
        if verdict.is_pass() {
            for shorter in 0..length {
                prop_assert!(integral_char_check(&gs, shorter).is_pass());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn centralizer_is_closed_within_bound(idx in 0usize..3, p in unimodular(3)) {
        let a = [e13(1), IntMatrix::lit([[1, 1, 0], [0, 1, 1], [0, 0, 1]]), e12(2)][idx].conjugate_by(&p).unwrap();
        let bound = SearchBound::new(12, 2).unwrap();
        let elems = centralizer_enum(&a, bound).unwrap();
        let set: HashSet<&IntMatrix> = elems.iter().collect();
        let within = |m: &IntMatrix| m.max_abs_entry() <= BigInt::from(2);
        for g in &elems {
            prop_assert!(g.commutes_with(&a) && g.det().is_one());
            let inv = g.inverse_unimodular().unwrap();
            if within(&inv) {
                prop_assert!(set.contains(&inv));
            }
        }
        for g in elems.iter().take(20) {
            for h in elems.iter().take(20) {
                let gh = g * h;
                if within(&gh) {
                    prop_assert!(set.contains(&gh));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn normalizer_witnesses_are_in_the_commensurator(i in 0usize..5, p in unimodular(3)) {
        let a = exemplars()[i].1.conjugate_by(&p).unwrap();
        let bound = SearchBound::default();
        let d = normalizer_descriptor(&a, bound).unwrap();
        let h = CyclicSubgroup::new(a.clone()).unwrap();
        for w in d.witnesses_in_input_frame().unwrap() {
            prop_assert!(in_commensurator(&w, &h, bound).unwrap().is_yes());
        }
        prop_assert!(d.all_relations_verified());
    }
}

#[test]
fn unit_root_counts_over_the_coefficient_box() {
    // every cubic x^3 + b x^2 + c x - 1 with |b|, |c| <= 10
    for b in -10i64..=10 {
        for c in -10i64..=10 {
            let companion = IntMatrix::lit([[0, 0, 1], [1, 0, -c], [0, 1, -b]]);
            let st = spectral_type_of(&companion).unwrap();
            assert!([0, 1, 3].contains(&st.unit_root_count), "b = {b}, c = {c}");
            if st.unit_root_count == 0 {
                let f = |x: i64| x * x * x + b * x * x + c * x - 1;
                assert!(f(1) != 0 && f(-1) != 0);
                assert!(!st.discriminant.is_zero());
            }
        }
    }
}

#[test]
fn involution_generators_are_commuting_involutions() {
    let [f, g] = involution_generators();
    assert!(f.compose(&f).is_identity() && g.compose(&g).is_identity());
    assert!(f.compose(&g).same_map(&g.compose(&f)));
    let [d1, d2] = tr3_involutions();
    assert!((&d1 * &d1).is_identity() && (&d2 * &d2).is_identity() && d1.commutes_with(&d2));
}
