use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::exact_arith::{rat, ratio};

fn binom(n: i64, k: i64) -> usize {
    if k < 0 || k > n || n < 0 {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
}

/// `Sym(V[-2]) ⊗ Λ(V[-1])` with `dim V = r`, generators of weight 1:
/// dimension in weight `w` and degree `d`.
fn hkr_rank(r: i64, w: i64, d: i64) -> usize {
    // p symmetric factors of degree 2, m exterior factors of degree 1
    let m = 2 * w - d;
    let p = w - m;
    if p < 0 || m < 0 {
        return 0;
    }
    binom(p + r - 1, r - 1) * binom(r, m)
}

fn plain(alg: &GradedAlgebra, n: usize, w: i64) -> MixedComplexTruncation {
    build_bg_complex(alg, &BgParams::new(BgMode::Plain, n, w)).unwrap()
}

#[test]
fn ground_field_all_modes() {
    let k = GradedAlgebra::ground();
    let mut p = BgParams::new(BgMode::Equivariant, 4, 0);
    p.z_window = 3;
    let cx = build_bg_complex(&k, &p).unwrap();
    assert_eq!(cx.slices.len(), 7);
    for s in &cx.slices {
        assert_eq!(s.dim(0, 0), 1);
        assert!((1..=4).all(|n| s.dim(n, 0) == 0));
    }
    for table in hh_ranks(&cx).unwrap() {
        assert_eq!(table.support(), vec![(0, 1)]);
    }
    let hn = cyclic_ranks(&cx, CyclicVariant::Negative).unwrap();
    for t in hn {
        let expected: Vec<(i64, usize)> = (0..=3).map(|k| (2 * k, 1)).collect();
        assert_eq!(t.support(), expected);
        assert!(t.ranks.iter().all(|r| r.certified));
    }
}

#[test]
fn unnormalized_ground_field_matches_bar_oracle() {
    // every face of k^{⊗n+1} is the identity, so b is 0 or 1 alternately
    let k = GradedAlgebra::ground();
    let mut p = BgParams::new(BgMode::Plain, 6, 0);
    p.normalized = false;
    let cx = build_bg_complex(&k, &p).unwrap();
    let s = &cx.slices[0];
    for n in 0..=6 {
        assert_eq!(s.dim(n, 0), 1);
    }
    for n in 1..=6usize {
        let b = s.b_matrix(n, 0);
        let expected = if n % 2 == 0 { rat(1) } else { rat(0) };
        assert_eq!(b.get(0, 0), expected);
    }
    let ranks = hh_ranks(&cx).unwrap();
    assert_eq!(ranks[0].support(), vec![(0, 1)]);
    assert!(!ranks[0].ranks[0].certified);
}

#[test]
fn equivariant_sym_is_concentrated_in_degree_zero() {
    for rank in [1, 2] {
        let a = GradedAlgebra::sym(rank, 6).unwrap();
        let mut p = BgParams::new(BgMode::Equivariant, 8, 6);
        p.z_window = 2;
        let cx = build_bg_complex(&a, &p).unwrap();
        for s in &cx.slices {
            // invariant tensors have total weight zero, hence are scalars
            assert_eq!(s.dim(0, 0), 1);
            assert!((1..=8).all(|n| s.internal_degrees().iter().all(|&i| s.dim(n, i) == 0)));
            assert!(s.exhausted);
        }
        let hh = hh_ranks(&cx).unwrap();
        assert_eq!(hh.len(), 5);
        for t in &hh {
            assert_eq!(t.support(), vec![(0, 1)]);
        }
        let hn = cyclic_ranks(&cx, CyclicVariant::Negative).unwrap();
        for (t, h) in hn.iter().zip(&hh) {
            // degeneration: HN is HH[u]
            for k in 0..=cx.u_bound as i64 {
                assert_eq!(t.rank(2 * k), h.rank(0));
            }
        }
    }
}

#[test]
fn plain_sym_matches_hkr() {
    for (rank, n, w) in [(1, 7, 6), (2, 5, 4)] {
        let cx = plain(&GradedAlgebra::sym(rank, w).unwrap(), n, w);
        for t in hh_ranks(&cx).unwrap() {
            let SliceLabel::Weight(wt) = t.slice else { panic!() };
            for r in &t.ranks {
                assert!(r.certified);
                assert_eq!(r.rank, hkr_rank(rank as i64, wt, r.degree), "rank {rank} weight {wt} degree {}", r.degree);
            }
        }
    }
}

#[test]
fn plain_sym_rank_one_in_every_degree() {
    let w = 5;
    let cx = plain(&GradedAlgebra::sym(1, w).unwrap(), 6, w);
    let mut total: BTreeMap<i64, usize> = BTreeMap::new();
    for t in hh_ranks(&cx).unwrap() {
        for (d, r) in t.support() {
            *total.entry(d).or_default() += r;
        }
    }
    // slices of weight > w only reach degrees > w
    for d in 0..=w {
        assert_eq!(total[&d], 1, "degree {d}");
    }
}

#[test]
fn twisted_sym_is_ground_field() {
    for rank in [1, 2] {
        let a = GradedAlgebra::sym(rank, 5).unwrap();
        let cx = build_bg_complex(&a, &BgParams::new(BgMode::Twisted(rat(2)), 6, 5)).unwrap();
        for t in hh_ranks(&cx).unwrap() {
            let expected = if t.slice == SliceLabel::Weight(0) { vec![(0, 1)] } else { vec![] };
            assert_eq!(t.support(), expected, "rank {rank} {}", t.slice);
        }
        assert!(cx.slices[0].connes.is_some());
        assert!(cx.slices[1].connes.is_none());
    }
}

#[test]
fn twisted_at_one_is_plain() {
    let a = GradedAlgebra::sym(1, 4).unwrap();
    let t = hh_ranks(&build_bg_complex(&a, &BgParams::new(BgMode::Twisted(rat(1)), 5, 4)).unwrap()).unwrap();
    assert_eq!(t, hh_ranks(&plain(&a, 5, 4)).unwrap());
}

#[test]
fn connes_pairs_the_two_classes() {
    let cx = plain(&GradedAlgebra::sym(1, 4).unwrap(), 5, 4);
    for w in 1..=4usize {
        let s = &cx.slices[w];
        let i = 2 * w as i64;
        // x^w in simplicial degree 0 maps to w·x^{w-1}dx
        assert_eq!(connes_induced_rank(s, 0, i).unwrap(), 1, "weight {w}");
        assert_eq!(connes_induced_rank(s, 1, i).unwrap(), 0);
    }
    assert_eq!(connes_induced_rank(&cx.slices[0], 0, 0).unwrap(), 0);
}

#[test]
fn periodic_plain_collapses_to_weight_zero() {
    let mut p = BgParams::new(BgMode::Plain, 5, 4);
    p.u_bound = 3;
    let cx = build_bg_complex(&GradedAlgebra::sym(1, 4).unwrap(), &p).unwrap();
    let hp = cyclic_ranks(&cx, CyclicVariant::Periodic).unwrap();
    for t in &hp {
        for r in t.ranks.iter().filter(|r| r.certified) {
            let expected = usize::from(t.slice == SliceLabel::Weight(0) && r.degree % 2 == 0);
            assert_eq!(r.rank, expected, "{} degree {}", t.slice, r.degree);
        }
    }
    let zero = &hp[0];
    let evens: Vec<i64> = zero.support().into_iter().map(|(d, _)| d).collect();
    assert_eq!(evens, vec![-6, -4, -2, 0, 2, 4, 6]);
    // the truncation leaves uncertified edge classes in positive weight
    assert!(hp[1].ranks.iter().any(|r| r.rank > 0 && !r.certified));
    let hn = cyclic_ranks(&cx, CyclicVariant::Negative).unwrap();
    for t in &hn[1..] {
        let certified: Vec<(i64, usize)> =
            t.ranks.iter().filter(|r| r.certified && r.rank > 0).map(|r| (r.degree, r.rank)).collect();
        let SliceLabel::Weight(w) = t.slice else { panic!() };
        assert_eq!(certified, vec![(2 * w - 1, 1)]);
    }
}

#[test]
fn kunneth_rank_two() {
    let w = 4;
    let one = GradedAlgebra::sym(1, w).unwrap();
    let two = one.tensor(&one).unwrap();
    let a = hh_ranks(&plain(&one, 5, w)).unwrap();
    let b = hh_ranks(&plain(&two, 5, w)).unwrap();
    for (wt, table) in b.iter().enumerate() {
        for r in &table.ranks {
            let mut conv = 0;
            for w1 in 0..=wt {
                for r1 in &a[w1].ranks {
                    conv += r1.rank * a[wt - w1].rank(r.degree - r1.degree);
                }
            }
            assert_eq!(r.rank, conv, "weight {wt} degree {}", r.degree);
        }
    }
}

#[test]
fn odd_generators_satisfy_axioms() {
    let e = GradedAlgebra::exterior(1, 1).unwrap();
    let alg = e.tensor(&GradedAlgebra::sym(1, 3).unwrap()).unwrap();
    assert!(hh_ranks(&plain(&alg, 4, 3)).is_ok());
    let ext = plain(&GradedAlgebra::exterior(1, 1).unwrap(), 5, 4);
    for t in hh_ranks(&ext).unwrap() {
        let SliceLabel::Weight(w) = t.slice else { panic!() };
        // HH(Λ[e]) = Λ[e] ⊗ k[de] with de in degree 0: two classes per positive weight
        let total: usize = t.support().iter().map(|(_, r)| r).sum();
        assert_eq!(total, if w == 0 { 1 } else { 2 }, "weight {w}");
    }
}

#[test]
fn stabilization_in_simplicial_bound() {
    let a = GradedAlgebra::sym(2, 3).unwrap();
    let small = hh_ranks(&plain(&a, 3, 3)).unwrap();
    let big = hh_ranks(&plain(&a, 4, 3)).unwrap();
    for (s, b) in small.iter().zip(&big) {
        for r in s.ranks.iter().filter(|r| r.certified) {
            assert_eq!(r.rank, b.rank(r.degree));
        }
    }
    let trunc = hh_ranks(&plain(&a, 2, 3)).unwrap();
    assert!(!trunc[3].ranks.iter().all(|r| r.certified));
}

#[test]
fn window_beyond_truncation_rejected() {
    let a = GradedAlgebra::sym(1, 3).unwrap();
    let r = build_bg_complex(&a, &BgParams::new(BgMode::Plain, 4, 5));
    assert!(matches!(r, Err(crate::Error::TruncationTooSmall(_))));
}

#[test]
fn dg_shifted_dual_numbers() {
    let window = DgWindow { min_degree: -2, max_degree: 2, max_weight: 5 };
    let acyclic = dg_cohomology(&shifted_dual_numbers(1), window).unwrap();
    for ((d, w), r) in &acyclic {
        assert_eq!(*r, usize::from(*d == 0 && *w == 0), "({d},{w})");
    }
    let free = dg_cohomology(&shifted_dual_numbers(0), window).unwrap();
    for ((d, w), r) in &free {
        let expected = usize::from((*d == 0) || (*d == -1 && *w >= 1));
        assert_eq!(*r, expected, "({d},{w})");
    }
    let empty = dg_cohomology(&DgAlgebraSpec::default(), window).unwrap();
    for ((d, w), r) in &empty {
        assert_eq!(*r, usize::from(*d == 0 && *w == 0));
    }
}

#[test]
fn dg_rejects_bad_differentials() {
    let mut spec = DgAlgebraSpec::default();
    for (name, degree) in [("x", 0), ("y", 1), ("z", 2)] {
        spec.generators.push(DgGenerator { name: name.into(), degree, weight: 1 });
    }
    let term = |v: &str| vec![DgTerm { coeff: "1".into(), monomial: BTreeMap::from([(v.to_string(), 1)]) }];
    spec.differential.insert("x".into(), term("y"));
    spec.differential.insert("y".into(), term("z"));
    let window = DgWindow { min_degree: 0, max_degree: 2, max_weight: 2 };
    assert!(matches!(dg_cohomology(&spec, window), Err(crate::Error::DifferentialNotSquareZero(_))));
    spec.differential.insert("y".into(), term("x"));
    assert!(matches!(dg_cohomology(&spec, window), Err(crate::Error::InvalidAlgebra(_))));
}

#[test]
fn dg_json_round_trip() {
    let spec = shifted_dual_numbers(3);
    let s = serde_json::to_string(&spec).unwrap();
    assert_eq!(serde_json::from_str::<DgAlgebraSpec>(&s).unwrap(), spec);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn twisted_generic_q(
        (num, den) in (2i64..6, 1i64..4).prop_filter("q = ±1 is untwisted", |(n, d)| n != d),
        neg in any::<bool>(),
        rank in 1usize..=2,
    ) {
        let q = ratio(if neg { -num } else { num }, den);
        let a = GradedAlgebra::sym(rank, 3).unwrap();
        let cx = build_bg_complex(&a, &BgParams::new(BgMode::Twisted(q), 4, 3)).unwrap();
        for t in hh_ranks(&cx).unwrap() {
            let expected = if t.slice == SliceLabel::Weight(0) { vec![(0, 1)] } else { vec![] };
            prop_assert_eq!(t.support(), expected);
        }
    }

    #[test]
    fn axioms_on_mixed_parity_tensors(d1 in 0i64..3, w1 in 1i64..3, w2 in 1i64..3) {
        let e = GradedAlgebra::exterior(2 * d1 + 1, w1).unwrap();
        let s = GradedAlgebra::sym_with(1, 2, w2, 4).unwrap();
        let alg = e.tensor(&s).unwrap().tensor(&GradedAlgebra::exterior(1, 1).unwrap()).unwrap();
        // build_bg_complex verifies b² = 0, B² = 0 and bB + Bb = 0
        prop_assert!(build_bg_complex(&alg, &BgParams::new(BgMode::Plain, 4, 4)).is_ok());
    }
}
