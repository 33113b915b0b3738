use gentle_silt::curves::StringModel;
use gentle_silt::fixtures::{type_a, type_a_orientations, type_a_tilde, TILDE_FIXTURES};
use gentle_silt::oracle::PathAlgebra;
use gentle_silt::GentlePresentation;

fn check(p: &GentlePresentation, bound: usize) -> usize {
    let m = StringModel::from_algebra(p).unwrap();
    let alg = PathAlgebra::new(&m.pres);
    let curves = m.curves_up_to(bound);
    let mut modules = Vec::new();
    for c in &curves {
        let module = m.module_of_curve(c).unwrap();
        alg.validate(&module).unwrap();
        let oracle = alg.min_projective_presentation(&module);
        let emb = m.complex_of_admissible(&alg, &m.embed_curve(c).unwrap()).unwrap();
        assert!(emb.is_minimal());
        assert!(alg.complexes_isomorphic(&emb, &oracle), "embedding {:?}", c.ends);
        let lemma = m.projective_presentation_curve(&alg, c).unwrap();
        assert!(alg.complexes_isomorphic(&lemma, &oracle), "lemma {:?}", c.ends);
        let (t, s) = m.top_socle_positions(c);
        let mut top = vec![0; p.vertex_count()];
        let mut soc = vec![0; p.vertex_count()];
        t.iter().for_each(|&i| top[c.arcs()[i]] += 1);
        s.iter().for_each(|&i| soc[c.arcs()[i]] += 1);
        assert_eq!(top, alg.top_dims(&module));
        assert_eq!(soc, alg.socle_dims(&module));
        modules.push(module);
    }
    for i in 0..modules.len() {
        for j in 0..i {
            if modules[i].dims == modules[j].dims {
                assert!(!alg.modules_isomorphic(&modules[i], &modules[j]).unwrap());
            }
        }
    }
    curves.len()
}

#[test]
fn type_a_curves_match_oracle() {
    for n in 1..=5 {
        for w in type_a_orientations(n) {
            assert_eq!(check(&type_a(&w), n), n * (n + 1) / 2, "{w}");
        }
    }
}

#[test]
fn tilde_curves_match_oracle() {
    for (p, q) in TILDE_FIXTURES {
        check(&type_a_tilde(p, q), 8);
    }
}

#[test]
fn tilde_curve_counts() {
    let counts: Vec<usize> = TILDE_FIXTURES.iter().map(|&(p, q)| check(&type_a_tilde(p, q), 6)).collect();
    assert_eq!(counts, vec![12, 18, 24, 24]);
}
