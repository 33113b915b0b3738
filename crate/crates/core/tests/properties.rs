use proptest::prelude::*;

use gentle_silt::curves::StringModel;
use gentle_silt::fixtures::{type_a, type_a_tilde, TILDE_FIXTURES};
use gentle_silt::silting::{is_2term_silting, Mode, SiltingEngine, DEFAULT_STRING_BOUND};
use gentle_silt::surface::{surface_from_algebra, MarkedRibbonSurface};

fn word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::bool::ANY, 1..5).prop_map(|v| v.into_iter().map(|b| if b { 'r' } else { 'l' }).collect())
}

fn tilde() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(TILDE_FIXTURES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pair_silting_round_trip(w in word(), k in any::<prop::sample::Index>()) {
        let mut e = SiltingEngine::new(&type_a(&w)).unwrap();
        let pairs = e.enumerate_stau_tilt(Mode::Exhaustive).unwrap();
        let p = &pairs[k.index(pairs.len())];
        let s = e.silting_of_pair(p).unwrap();
        prop_assert!(is_2term_silting(&e.alg, &s));
        prop_assert_eq!(&e.h0_of_silting(&s).unwrap(), p);
    }

    #[test]
    fn mutation_is_an_involution(w in word(), k in any::<prop::sample::Index>(), slot in any::<prop::sample::Index>()) {
        let mut e = SiltingEngine::new(&type_a(&w)).unwrap();
        let pairs = e.enumerate_stau_tilt(Mode::Exhaustive).unwrap();
        let p = pairs[k.index(pairs.len())].clone();
        let i = slot.index(p.len());
        let target = p.summands()[i].clone();
        let q = e.mutate_pair(&p, i, DEFAULT_STRING_BOUND).unwrap();
        prop_assert!(pairs.contains(&q));
        prop_assert_ne!(&q, &p);
        let back = q.summands().iter().position(|s| !p.summands().contains(s)).unwrap();
        prop_assert!(!q.summands().contains(&target));
        prop_assert_eq!(e.mutate_pair(&q, back, DEFAULT_STRING_BOUND).unwrap(), p);
    }

    #[test]
    fn tilde_mutation_is_an_involution(f in tilde(), k in any::<prop::sample::Index>(), slot in any::<prop::sample::Index>()) {
        let mut e = SiltingEngine::new(&type_a_tilde(f.0, f.1)).unwrap();
        let pairs = e.enumerate_stau_tilt(Mode::MutationDepth { depth: 3, string_bound: DEFAULT_STRING_BOUND }).unwrap();
        let p = pairs[k.index(pairs.len())].clone();
        let i = slot.index(p.len());
        if let Ok(q) = e.mutate_pair(&p, i, DEFAULT_STRING_BOUND) {
            let back = q.summands().iter().position(|s| !p.summands().contains(s)).unwrap();
            prop_assert_eq!(e.mutate_pair(&q, back, DEFAULT_STRING_BOUND).unwrap(), p);
        }
    }

    #[test]
    fn algebra_surface_round_trip(w in word()) {
        let p = type_a(&w);
        let s = surface_from_algebra(&p).unwrap();
        prop_assert_eq!(&s.algebra().unwrap(), &p);
        let back = MarkedRibbonSurface::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(&back.algebra().unwrap(), &p);
    }

    #[test]
    fn curve_encodings_round_trip(f in tilde(), k in any::<prop::sample::Index>()) {
        let m = StringModel::from_algebra(&type_a_tilde(f.0, f.1)).unwrap();
        let curves = m.curves_up_to(8);
        let c = &curves[k.index(curves.len())];
        prop_assert_eq!(&m.canonical(c), c);
        prop_assert_eq!(&m.reverse(&m.reverse(c)), c);
        prop_assert!(m.equivalent(c, &m.reverse(c)));
        let back = m.curve_from_json(&m.curve_to_json(c)).unwrap();
        prop_assert!(m.equivalent(&back, c));
        let w = m.walk(c);
        prop_assert!(m.equivalent(&m.curve_of_walk(&w).unwrap(), c));
    }

    #[test]
    fn presentation_recovers_module(f in tilde(), k in any::<prop::sample::Index>()) {
        let mut e = SiltingEngine::new(&type_a_tilde(f.0, f.1)).unwrap();
        let curves = e.model.curves_up_to(6);
        let c = curves[k.index(curves.len())].clone();
        let m = e.model.module_of_curve(&c).unwrap();
        let x = e.alg.min_projective_presentation(&m);
        prop_assert!(e.alg.modules_isomorphic(&e.alg.h0(&x), &m).unwrap());
        let s = e.summand_of_complex(&x).unwrap();
        prop_assert_eq!(s, gentle_silt::silting::Summand::Module(e.model.canonical(&c)));
    }
}
