use csp_core::words::{
    artin_generator, conjugate_test, delta, inner_aut, pmod_lift_generators, push_aut, ClassMarkedFreeGroup, Word,
};
use proptest::prelude::*;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=rank as i32, any::<bool>()), 0..max_len)
        .prop_map(move |v| Word::reduce(&v.iter().map(|&(g, s)| if s { g } else { -g }).collect::<Vec<_>>(), rank).unwrap())
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in word(3, 12), b in word(3, 12), c in word(3, 12)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn inverse_cancels(a in word(3, 20)) {
        prop_assert!(a.mul(&a.inverse()).is_empty());
        prop_assert!(a.inverse().mul(&a).is_empty());
    }

    #[test]
    fn reduction_is_idempotent(a in word(4, 20)) {
        prop_assert_eq!(Word::reduce(a.letters(), 4).unwrap(), a);
    }

    #[test]
    fn conjugates_are_detected(u in word(3, 8), w in word(3, 8)) {
        prop_assume!(!u.is_empty());
        let v = w.mul(&u).mul(&w.inverse());
        let c = conjugate_test(&u, &v).expect("conjugate");
        prop_assert_eq!(c.mul(&u).mul(&c.inverse()), v);
    }

    #[test]
    fn automorphisms_invert(w in word(3, 12), i in 1usize..3) {
        let a = artin_generator(i, 3, 4).unwrap();
        prop_assert_eq!(a.inverse().apply(&a.apply(&w)), w.clone());
        prop_assert_eq!(a.compose(&a.inverse()).apply(&w), w);
    }

    #[test]
    fn composition_is_functional(w in word(3, 10)) {
        let gens = pmod_lift_generators(4).unwrap();
        let (s, t) = (&gens[0].1, &gens[3].1);
        prop_assert_eq!(s.compose(t).apply(&w), s.apply(&t.apply(&w)));
    }
}

#[test]
fn lift_generators_preserve_marked_classes() {
    for n in 4..=6 {
        let g = ClassMarkedFreeGroup::punctured_sphere(n).unwrap();
        for (name, t) in pmod_lift_generators(n).unwrap() {
            assert!(t.is_class_preserving(&g), "{name} for n = {n}");
        }
    }
}

#[test]
fn delta_of_push_is_conjugation() {
    for n in 4..=6 {
        let g = ClassMarkedFreeGroup::punctured_sphere(n).unwrap();
        for j in 1..=n - 2 {
            let d = delta(&push_aut(j, n).unwrap(), &g).unwrap();
            assert_eq!(d, inner_aut(&Word::generator(j), n - 2), "j = {j}, n = {n}");
        }
    }
}
