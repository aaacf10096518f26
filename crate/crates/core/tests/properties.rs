use proptest::prelude::*;

use zariski::group::literal::{parse_aut, parse_sd, parse_word};
use zariski::group::{conjugacy_solve, cyclic_reduce, word_root, Alphabet, Backend, Element, Moduli, Word};
use zariski::monomial::{monomials_over, Monomial, Sign};
use zariski::tree::{SdElement, TreeAut, TreeNode};

fn word(gens: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, -3i64..=3), 0..max_len).prop_map(Word::reduce)
}

fn node(max_depth: usize) -> impl Strategy<Value = TreeNode> {
    prop::collection::vec(any::<bool>(), 0..=max_depth).prop_map(|b| TreeNode::from_bits(&b).unwrap())
}

fn aut() -> impl Strategy<Value = TreeAut> {
    prop::collection::vec(node(4), 0..4).prop_map(TreeAut::swap)
}

fn sd() -> impl Strategy<Value = SdElement> {
    (word(15, 5), aut()).prop_map(|(w, f)| SdElement::new(w, f))
}

fn abelian_backend() -> Backend {
    Backend::Abelian(Moduli::List(vec![0, 3, 4, 0]))
}

fn element(backend: &Backend) -> BoxedStrategy<Element> {
    match backend.clone() {
        Backend::Free(_) => word(3, 6).prop_map(Element::Free).boxed(),
        Backend::Abelian(m) => prop::collection::vec((0u32..4, -5i64..=5), 0..5)
            .prop_map(move |raw| Element::Abelian(m.element(raw)))
            .boxed(),
        Backend::TreeSd => sd().prop_map(Element::Sd).boxed(),
    }
}

fn monomial(backend: Backend) -> BoxedStrategy<Monomial> {
    let b = backend.clone();
    (0usize..4)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(element(&b), n + 1),
                prop::collection::vec(prop_oneof![Just(Sign::Pos), Just(Sign::Neg)], n),
            )
        })
        .prop_map(move |(c, s)| Monomial::new(&backend, c, s).unwrap())
        .boxed()
}

fn backends() -> [Backend; 3] {
    [Backend::free(3), abelian_backend(), Backend::TreeSd]
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in word(3, 10)) {
        let again = Word::reduce(w.letters().iter().map(|l| (l.gen, l.exp as i64)));
        prop_assert_eq!(&again, &w);
        prop_assert!(w.letters().windows(2).all(|p| p[0].gen != p[1].gen));
    }

    #[test]
    fn free_group_laws(a in word(3, 6), b in word(3, 6), c in word(3, 6)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.mul(&b).inverse(), b.inverse().mul(&a.inverse()));
    }

    #[test]
    fn cyclic_reduction_decomposes(w in word(3, 10)) {
        let (core, conj) = cyclic_reduce(&w);
        prop_assert_eq!(core.conjugate_by(&conj), w);
        let units: Vec<_> = core.units().collect();
        if units.len() > 1 {
            let (first, last) = (units[0], units[units.len() - 1]);
            prop_assert!(!(first.0 == last.0 && first.1 != last.1));
        }
    }

    #[test]
    fn roots_are_primitive(w in word(2, 6), k in 1i64..4) {
        prop_assume!(!w.is_identity());
        let p = w.pow(k);
        let (r, e) = word_root(&p).unwrap();
        prop_assert_eq!(r.pow(e as i64), p);
        prop_assert_eq!(word_root(&r).unwrap().1, 1);
        prop_assert!(e as i64 % k == 0);
    }

    #[test]
    fn conjugacy_finds_short_conjugators(u in word(2, 6), g in word(2, 5)) {
        let v = u.conjugate_by(&g);
        let h = conjugacy_solve(&u, &v).unwrap();
        prop_assert_eq!(u.conjugate_by(&h), v);
        prop_assert!(h.weight() <= g.weight());
    }

    #[test]
    fn tree_action_is_a_group_action(f in aut(), g in aut(), t in node(6)) {
        prop_assert_eq!(f.compose(&g).apply(t), f.apply(g.apply(t)));
        prop_assert_eq!(f.apply_inverse(f.apply(t)), t);
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert_eq!(f.apply(t).depth(), t.depth());
        if let Some(p) = t.parent() {
            prop_assert_eq!(f.apply(t).parent(), Some(f.apply(p)));
        }
    }

    #[test]
    fn semidirect_group_laws(x in sd(), y in sd(), z in sd()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert!(x.inverse().mul(&x).is_identity());
        prop_assert_eq!(x.mul(&SdElement::identity()), x.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(idx in 0usize..3, seed in any::<u64>()) {
        let backend = backends()[idx].clone();
        let mut runner = proptest::test_runner::TestRunner::new_with_rng(
            Default::default(),
            proptest::test_runner::TestRng::from_seed(proptest::test_runner::RngAlgorithm::ChaCha, &seed_bytes(seed)),
        );
        let m1 = monomial(backend.clone()).new_tree(&mut runner).unwrap().current();
        let m2 = monomial(backend.clone()).new_tree(&mut runner).unwrap().current();
        let g = element(&backend).new_tree(&mut runner).unwrap().current();
        let b = element(&backend).new_tree(&mut runner).unwrap().current();
        let lhs = m1.concat(&m2).unwrap().eval(&g).unwrap();
        let rhs = backend.mul(&m1.eval(&g).unwrap(), &m2.eval(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(m1.normalize().eval(&g).unwrap(), m1.eval(&g).unwrap());
        prop_assert_eq!(m1.shift(&b).unwrap().eval(&g).unwrap(), m1.eval(&backend.mul(&b, &g).unwrap()).unwrap());
        prop_assert_eq!(m1.invert_var().eval(&g).unwrap(), m1.eval(&backend.inv(&g).unwrap()).unwrap());
    }

    #[test]
    fn normal_form_has_no_cancelling_letters(m in monomial(Backend::free(3))) {
        let n = m.normalize();
        for (i, pair) in n.signs().windows(2).enumerate() {
            prop_assert!(!(pair[0] != pair[1] && n.coefficients()[i + 1].is_identity()));
        }
        prop_assert_eq!(n.normalize(), n);
    }

    #[test]
    fn literals_round_trip(w in word(4, 8), f in aut(), x in sd(), m in monomial(Backend::free(3))) {
        prop_assert_eq!(parse_word(&w.to_literal(Alphabet::Free), Alphabet::Free).unwrap(), w);
        prop_assert_eq!(parse_aut(&f.to_string()).unwrap(), f);
        prop_assert_eq!(parse_sd(&x.to_string()).unwrap(), x);
        prop_assert_eq!(Monomial::parse(&m.to_string(), m.backend()).unwrap(), m);
    }
}

fn seed_bytes(seed: u64) -> [u8; 32] {
    let mut out = [0u8; 32];
    out[..8].copy_from_slice(&seed.to_le_bytes());
    out
}

#[test]
fn monomial_sets_are_nested() {
    let b = Backend::free(2);
    let a: Vec<Element> = ["1", "g0", "g1^-1"].iter().map(|s| b.parse_element(s).unwrap()).collect();
    for n in 0..3 {
        let small = monomials_over(&b, &a, n).unwrap();
        let big = monomials_over(&b, &a, n + 1).unwrap();
        assert!(small.iter().all(|m| big.contains(m)));
        assert!(big.len() > small.len());
    }
}
