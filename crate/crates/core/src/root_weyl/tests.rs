use proptest::prelude::*;

use super::oracle::{bfs_ball, bfs_words, check_length_formula, omega_generators_oracle};
use super::*;

fn datum(name: &str) -> std::sync::Arc<RootDatum> {
    load_datum(name, None).unwrap()
}

#[test]
fn preset_shapes() {
    for (name, order, naff) in [("SL2", 2, 2), ("PGL2", 2, 2), ("GL1", 1, 0), ("GL2", 2, 2), ("GL3", 6, 3), ("GL4", 24, 4)] {
        let d = datum(name);
        assert_eq!(d.weyl_order(), order, "{name}");
        assert_eq!(d.affine_reflections().len(), naff, "{name}");
    }
    let levi = datum("GL(2,1)");
    assert_eq!(levi.weyl_order(), 2);
    assert_eq!(levi.affine_labels(), vec![0, 1]);
    let levi = datum("GL(2,2)");
    assert_eq!(levi.affine_labels(), vec![0, 1, 2, 3]);
    assert_eq!(levi.omega_generators().len(), 2);
}

#[test]
fn cartan_mismatch_rejected() {
    let mut spec: RootDatumSpec = serde_json::from_str(include_str!("../../data/presets/SL2.json")).unwrap();
    spec.simple_coroots = vec![vec![2]];
    assert!(matches!(RootDatum::new(spec), Err(crate::Error::InvalidDatum(_))));
}

#[test]
fn multiplication_examples() {
    let d = datum("SL2");
    let s = d.finite(d.simple_reflection_index(0));
    let x = ExtAffineElement { lambda: vec![3], w: s.w };
    assert_eq!(d.mul(&d.identity(), &x), x);
    let t = d.translation(&[1]);
    let tm = d.translation(&[-1]);
    assert_eq!(d.mul(&t, &tm), d.identity());
    let conj = d.mul(&d.mul(&s, &t), &s);
    assert_eq!(conj, d.translation(&[-1]));
    let other = datum("GL2");
    assert!(d.wa_multiply(&t, &other.translation(&[1, 0])).is_err());
}

#[test]
fn length_examples() {
    let d = datum("SL2");
    assert_eq!(d.length(&d.identity()), 0);
    for a in d.affine_reflections() {
        assert_eq!(d.length(&a.element), 1);
    }
    assert_eq!(d.length(&d.translation(&[1])), 2);
    let ball = bfs_ball(&d, 4);
    assert_eq!(ball[&d.translation(&[1])], 2);
}

#[test]
fn reduced_word_examples() {
    let d = datum("SL2");
    let rw = d.reduced_word(&d.identity());
    assert!(rw.word.is_empty());
    assert_eq!(rw.omega, d.identity());
    for a in d.affine_reflections() {
        assert_eq!(d.reduced_word(&a.element).word, vec![a.label]);
    }
    let t = d.translation(&[1]);
    assert_eq!(d.reduced_word(&t).word, vec![0, 1]);
    assert_eq!(bfs_words(&d, 3)[&t], vec![0, 1]);
}

#[test]
fn reduced_words_match_bfs_lex_minimum() {
    for name in ["SL2", "GL2", "GL3"] {
        let d = datum(name);
        for (x, w) in bfs_words(&d, 5) {
            let rw = d.reduced_word(&x);
            assert_eq!(rw.omega, d.identity());
            assert_eq!(rw.word, w, "{name} {x:?}");
        }
    }
}

#[test]
fn dominant_split_examples() {
    let gl2 = datum("GL2");
    assert_eq!(gl2.dominant_split(&[2, 1]).unwrap(), (vec![2, 1], vec![0, 0]));
    // (0,-1) is already dominant for GL2
    assert_eq!(gl2.dominant_split(&[0, -1]).unwrap(), (vec![0, -1], vec![0, 0]));
    assert_eq!(gl2.dominant_split(&[-1, 0]).unwrap(), (vec![0, 0], vec![1, 0]));
    let sl2 = datum("SL2");
    assert_eq!(sl2.dominant_split(&[-1]).unwrap(), (vec![0], vec![1]));
    let gl3 = datum("GL3");
    for l in [[-2, 5, 1], [0, 0, 3], [1, -1, 1]] {
        let (a, b) = gl3.dominant_split(&l).unwrap();
        assert!(gl3.is_dominant(&a) && gl3.is_dominant(&b));
        let diff: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        assert_eq!(diff, l.to_vec());
        assert_eq!(b[2], 0);
    }
}

#[test]
fn omega_has_length_zero_and_permutes_reflections() {
    for name in ["PGL2", "GL1", "GL2", "GL3", "GL4", "GL(2,1)"] {
        let d = datum(name);
        let gens = d.omega_generators().to_vec();
        assert_eq!(gens, omega_generators_oracle(&d), "{name}");
        for om in gens {
            assert_eq!(d.length(&om), 0);
            let perm = d.omega_permutation(&om).expect("normalizes");
            assert_eq!(perm.len(), d.affine_reflections().len());
        }
    }
    assert!(datum("SL2").omega_generators().is_empty());
}

#[test]
fn non_extended_filter() {
    let d = datum("GL2");
    assert!(d.in_affine_coxeter_group(&d.translation(&[1, -1])));
    assert!(!d.in_affine_coxeter_group(&d.translation(&[1, 0])));
    let p = datum("PGL2");
    assert!(p.in_affine_coxeter_group(&p.translation(&[2])));
    assert!(!p.in_affine_coxeter_group(&p.translation(&[1])));
}

#[test]
fn length_formula_matches_bfs() {
    for (name, len) in [("SL2", 8), ("PGL2", 8), ("GL2", 8), ("GL3", 6)] {
        let d = datum(name);
        let checked = check_length_formula(&d, len, 2).unwrap_or_else(|e| panic!("{name}: {e:?}"));
        assert!(checked > 0);
    }
}

#[test]
fn braid_orders() {
    let gl3 = datum("GL3");
    assert_eq!(gl3.braid_order(1, 2), Some(3));
    assert_eq!(gl3.braid_order(0, 1), Some(3));
    let gl4 = datum("GL4");
    assert_eq!(gl4.braid_order(1, 3), Some(2));
    assert_eq!(gl4.braid_order(0, 2), Some(2));
    assert_eq!(datum("SL2").braid_order(0, 1), None);
}

fn element(d: &RootDatum) -> impl Strategy<Value = ExtAffineElement> {
    let n = d.cochar_rank();
    let nw = d.weyl_order();
    (prop::collection::vec(-3i64..=3, n), 0..nw).prop_map(|(lambda, w)| ExtAffineElement { lambda, w })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms_gl3(x in element(&datum("GL3")), y in element(&datum("GL3")), z in element(&datum("GL3"))) {
        let d = datum("GL3");
        prop_assert_eq!(d.mul(&d.mul(&x, &y), &z), d.mul(&x, &d.mul(&y, &z)));
        prop_assert_eq!(d.mul(&x, &d.inverse(&x)), d.identity());
        prop_assert_eq!(d.mul(&d.identity(), &x), x.clone());
    }

    #[test]
    fn length_inverse_and_subadditive(x in element(&datum("GL3")), y in element(&datum("GL3"))) {
        let d = datum("GL3");
        prop_assert_eq!(d.length(&x), d.length(&d.inverse(&x)));
        prop_assert!(d.length(&d.mul(&x, &y)) <= d.length(&x) + d.length(&y));
        let rw = d.reduced_word(&x);
        prop_assert_eq!(rw.word.len(), d.length(&x));
        prop_assert_eq!(d.compose_word(&rw.word, &rw.omega).unwrap(), x.clone());
    }

    #[test]
    fn translation_length_weyl_invariant(l in prop::collection::vec(-4i64..=4, 3), w in 0usize..6) {
        let d = datum("GL3");
        let wl = d.act(w, &l);
        prop_assert_eq!(d.length(&d.translation(&l)), d.length(&d.translation(&wl)));
    }
}

#[test]
fn additivity_iff_words_concatenate() {
    let d = datum("GL2");
    let ball = bfs_ball(&d, 4);
    let big = bfs_ball(&d, 8);
    for (x, lx) in &ball {
        for (y, ly) in &ball {
            let xy = d.mul(x, y);
            let oracle = big[&xy];
            let additive = d.length(&xy) == lx + ly;
            assert_eq!(additive, oracle == lx + ly);
        }
    }
}
