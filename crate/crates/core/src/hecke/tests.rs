use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::exact_arith::rat;
use crate::root_weyl::load_datum;
use crate::root_weyl::oracle::{bfs_ball, omega_ball};

fn datum(name: &str) -> Arc<RootDatum> {
    load_datum(name, None).unwrap()
}

fn ts(d: &Arc<RootDatum>, label: usize) -> HeckeElement {
    HeckeElement::simple(d, label).unwrap()
}

/// Basis elements of length ≤ `max_len`, times small Ω powers.
fn small_basis(d: &Arc<RootDatum>, max_len: usize) -> Vec<ExtAffineElement> {
    let omegas = omega_ball(d, d.omega_generators(), 1);
    let mut out: Vec<ExtAffineElement> = bfs_ball(d, max_len)
        .into_keys()
        .flat_map(|w| omegas.iter().map(move |o| (w.clone(), o.clone())).collect::<Vec<_>>())
        .map(|(w, o)| d.mul(&w, &o))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn unit_and_quadratic_relation() {
    let d = datum("SL2");
    let one = HeckeElement::one(&d);
    for l in d.affine_labels() {
        let s = ts(&d, l);
        assert_eq!(one.mul(&s).unwrap(), s);
        let expected = s.scale(&(&q() - &laurent_int(1))).add(&one.scale(&q())).unwrap();
        assert_eq!(s.mul(&s).unwrap(), expected);
    }
}

#[test]
fn length_additive_product() {
    let d = datum("SL2");
    let p = ts(&d, 0).mul(&ts(&d, 1)).unwrap();
    let x = d.mul(d.affine_reflection(0).unwrap(), d.affine_reflection(1).unwrap());
    assert_eq!(d.length(&x), 2);
    assert_eq!(p, HeckeElement::basis(&d, &x));
    assert_eq!(x, d.translation(&[1]));
}

#[test]
fn mismatched_data_rejected() {
    let a = HeckeElement::one(&datum("SL2"));
    let b = HeckeElement::one(&datum("GL2"));
    assert!(matches!(a.mul(&b), Err(crate::Error::RootDatumMismatch(_, _))));
}

#[test]
fn inverses() {
    for name in ["SL2", "GL2", "GL3"] {
        let d = datum(name);
        let one = HeckeElement::one(&d);
        assert_eq!(HeckeElement::invert_basis(&d, &d.identity()), one);
        for w in small_basis(&d, 3) {
            let inv = HeckeElement::invert_basis(&d, &w);
            assert_eq!(HeckeElement::basis(&d, &w).mul(&inv).unwrap(), one, "{name} {w:?}");
            assert_eq!(inv.mul(&HeckeElement::basis(&d, &w)).unwrap(), one);
        }
    }
    let d = datum("SL2");
    let s = d.affine_reflection(1).unwrap();
    let inv = HeckeElement::invert_basis(&d, s);
    let expected = HeckeElement::monomial(&d, s, v_pow(-2))
        .add(&HeckeElement::one(&d).scale(&(&v_pow(-2) - &laurent_int(1))))
        .unwrap();
    assert_eq!(inv, expected);
}

#[test]
fn braid_relations() {
    for name in ["GL2", "GL3", "GL4", "GL(2,1)"] {
        let d = datum(name);
        let labels = d.affine_labels();
        for &a in &labels {
            for &b in &labels {
                if a >= b {
                    continue;
                }
                let Some(m) = d.braid_order(a, b) else { continue };
                let word = |first: usize, second: usize| {
                    let mut h = HeckeElement::one(&d);
                    for k in 0..m {
                        h = h.mul(&ts(&d, if k % 2 == 0 { first } else { second })).unwrap();
                    }
                    h
                };
                assert_eq!(word(a, b), word(b, a), "{name} {a} {b}");
            }
        }
    }
}

#[test]
fn theta_examples() {
    let d = datum("SL2");
    assert_eq!(HeckeElement::theta(&d, &[0]).unwrap().expansion, HeckeElement::one(&d));
    let th = HeckeElement::theta(&d, &[1]).unwrap().expansion;
    assert_eq!(th, HeckeElement::monomial(&d, &d.translation(&[1]), v_pow(-2)));
    let thm = HeckeElement::theta(&d, &[-1]).unwrap().expansion;
    assert_eq!(th.mul(&thm).unwrap(), HeckeElement::one(&d));
}

#[test]
fn theta_split_independence() {
    let d = datum("GL3");
    let lam = [1, -2, 0];
    let (l1, l2) = d.dominant_split(&lam).unwrap();
    let a = HeckeElement::theta_with_split(&d, &l1, &l2).unwrap();
    let shift = [2, 1, 1];
    let add = |x: &[i64]| x.iter().zip(&shift).map(|(a, b)| a + b).collect::<Vec<i64>>();
    let b = HeckeElement::theta_with_split(&d, &add(&l1), &add(&l2)).unwrap();
    assert_eq!(a, b);
    assert!(HeckeElement::theta_with_split(&d, &[0, 1, 0], &[0, 0, 0]).is_err());
}

#[test]
fn center_examples() {
    let d = datum("SL2");
    assert_eq!(HeckeElement::center_element(&d, &[0]).unwrap(), HeckeElement::one(&d));
    let z = HeckeElement::center_element(&d, &[1]).unwrap();
    assert!(z.is_central().unwrap());
    assert!(matches!(HeckeElement::center_element(&d, &[-1]), Err(crate::Error::NotDominant(_))));
    let g = datum("GL2");
    assert!(HeckeElement::center_element(&g, &[1, 0]).unwrap().is_central().unwrap());
    // a non-central θ for contrast
    assert!(!HeckeElement::theta(&g, &[1, 0]).unwrap().expansion.is_central().unwrap());
}

#[test]
fn centers_with_short_translations_are_central() {
    for name in ["SL2", "PGL2", "GL2", "GL3"] {
        let d = datum(name);
        let n = d.cochar_rank();
        let mut lam = vec![-2i64; n];
        loop {
            if d.is_dominant(&lam) && d.length(&d.translation(&lam)) <= 6 {
                let r = HeckeElement::center_report(&d, &lam).unwrap();
                assert!(r.central, "{name} {lam:?}");
            }
            let mut k = 0;
            while k < n && lam[k] == 2 {
                lam[k] = -2;
                k += 1;
            }
            if k == n {
                break;
            }
            lam[k] += 1;
        }
    }
}

#[test]
fn bernstein_relation() {
    for (name, lams) in [
        ("SL2", vec![vec![-2], vec![-1], vec![0], vec![1], vec![3]]),
        ("GL2", vec![vec![1, 0], vec![0, 2], vec![-1, 1], vec![2, -1]]),
        ("GL3", vec![vec![1, 0, 0], vec![0, 1, -1], vec![-1, 2, 0]]),
    ] {
        let d = datum(name);
        for i in 0..d.rank() {
            for l in &lams {
                assert!(bernstein_relation_holds(&d, i, l).unwrap(), "{name} s{} {l:?}", i + 1);
            }
        }
    }
}

#[test]
fn specialization_examples() {
    let d = datum("SL2");
    let s = ts(&d, 1);
    let sq = s.mul(&s).unwrap();
    let at1 = sq.specialize(&Specialization::Q(rat(1))).unwrap();
    assert_eq!(at1, SpecializedElement::basis(&d, &d.identity()));
    let at4 = sq.specialize(&Specialization::Q(rat(4))).unwrap();
    let sx = d.affine_reflection(1).unwrap().clone();
    assert_eq!(at4.terms[&sx], rat(3));
    assert_eq!(at4.terms[&d.identity()], rat(4));
    let th = HeckeElement::theta(&d, &[1]).unwrap().expansion;
    assert!(th.specialize(&Specialization::Q(rat(4))).is_ok());
    let odd = HeckeElement::monomial(&d, &d.identity(), v_pow(1));
    assert!(matches!(odd.specialize(&Specialization::Q(rat(4))), Err(crate::Error::NeedsSquareRoot)));
    assert_eq!(odd.specialize(&Specialization::V(rat(2))).unwrap().terms[&d.identity()], rat(2));
}

#[test]
fn q_equals_one_is_group_algebra() {
    for (name, len) in [("SL2", 4), ("PGL2", 3), ("GL2", 3)] {
        let d = datum(name);
        let basis = small_basis(&d, len);
        for x in &basis {
            for y in &basis {
                let h = HeckeElement::basis(&d, x).mul(&HeckeElement::basis(&d, y)).unwrap();
                let spec = h.specialize(&Specialization::Q(rat(1))).unwrap();
                let oracle =
                    group_algebra_product(&SpecializedElement::basis(&d, x), &SpecializedElement::basis(&d, y))
                        .unwrap();
                assert_eq!(spec, oracle, "{name} {x:?} {y:?}");
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let d = datum("GL2");
    let h = HeckeElement::theta(&d, &[-1, 2]).unwrap().expansion;
    let s = serde_json::to_string(&h.to_json()).unwrap();
    let back: HeckeJson = serde_json::from_str(&s).unwrap();
    assert_eq!(HeckeElement::from_json(&back, None).unwrap(), h);
}

fn element_strategy(name: &'static str, max_len: usize) -> impl Strategy<Value = HeckeElement> {
    let d = datum(name);
    let basis = small_basis(&d, max_len);
    prop::collection::vec((0..basis.len(), -2i32..=2, -2i64..=2), 1..3).prop_map(move |parts| {
        let mut h = HeckeElement::zero(&d);
        for (i, e, c) in parts {
            let coeff = v_pow(e).scale(&rat(c));
            h = h.add(&HeckeElement::monomial(&d, &basis[i], coeff)).unwrap();
        }
        h
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity_sl2(a in element_strategy("SL2", 5), b in element_strategy("SL2", 5), c in element_strategy("SL2", 5)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn associativity_gl2(a in element_strategy("GL2", 5), b in element_strategy("GL2", 5), c in element_strategy("GL2", 5)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn associativity_gl3(a in element_strategy("GL3", 5), b in element_strategy("GL3", 5), c in element_strategy("GL3", 5)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn theta_is_homomorphism(l in prop::collection::vec(-3i64..=3, 2), m in prop::collection::vec(-3i64..=3, 2)) {
        let d = datum("GL2");
        let sum: Vec<i64> = l.iter().zip(&m).map(|(a, b)| a + b).collect();
        let tl = HeckeElement::theta(&d, &l).unwrap().expansion;
        let tm = HeckeElement::theta(&d, &m).unwrap().expansion;
        let ts = HeckeElement::theta(&d, &sum).unwrap().expansion;
        prop_assert_eq!(tl.mul(&tm).unwrap(), ts.clone());
        prop_assert_eq!(tm.mul(&tl).unwrap(), ts);
    }
}
