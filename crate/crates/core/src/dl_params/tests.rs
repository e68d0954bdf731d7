use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::oracle::quiver_orbits;
use super::*;
use crate::exact_arith::{rat, ratio, Rational};
use crate::Error;

fn ev(list: &[(&str, i64)]) -> EigenvalueData {
    EigenvalueData::Multiset(list.iter().map(|&(o, k)| Eigenvalue::symbol(o, k)).collect())
}

fn generic() -> QValue {
    QValue::Generic
}

#[test]
fn gl1_has_one_class() {
    let c = enumerate_gln(1, &generic(), &ev(&[("a", 0)])).unwrap();
    assert_eq!(c.len(), 1);
    assert!(c[0].is_semisimple());
    assert_eq!(count_irreducibles_gln(1, &generic(), &ev(&[("a", 0)])).unwrap(), 1);
}

#[test]
fn gl2_single_orbit() {
    let c = enumerate_gln(2, &generic(), &ev(&[("a", 0), ("a", 1)])).unwrap();
    let shown: Vec<String> = c.iter().map(|p| p.to_string()).collect();
    assert_eq!(shown, ["{[a;1], [a*q;1]}", "{[a;2]}"]);
    assert_eq!(count_irreducibles_gln(2, &generic(), &ev(&[("a", 0), ("a", 1)])).unwrap(), 2);
    // unrelated eigenvalues leave only N = 0
    assert_eq!(count_irreducibles_gln(2, &generic(), &ev(&[("a", 0), ("b", 0)])).unwrap(), 1);
    // same orbit but not adjacent
    assert_eq!(count_irreducibles_gln(2, &generic(), &ev(&[("a", 0), ("a", 2)])).unwrap(), 1);
}

#[test]
fn gl3_chain_has_four_classes() {
    let data = ev(&[("a", 0), ("a", 1), ("a", 2)]);
    let c = enumerate_gln(3, &generic(), &data).unwrap();
    let shown: BTreeSet<String> = c.iter().map(|p| p.to_string()).collect();
    let expected: BTreeSet<String> =
        ["{[a;1], [a*q;1], [a*q^2;1]}", "{[a;2], [a*q^2;1]}", "{[a;1], [a*q;2]}", "{[a;3]}"]
            .into_iter()
            .map(String::from)
            .collect();
    assert_eq!(shown, expected);
}

#[test]
fn repeated_eigenvalues() {
    // {a, a, qa}: [a][a][qa] and [a;2][a]
    let c = enumerate_gln(3, &generic(), &ev(&[("a", 0), ("a", 0), ("a", 1)])).unwrap();
    assert_eq!(c.len(), 2);
    // {a, qa, qa, q²a}
    let c = enumerate_gln(4, &generic(), &ev(&[("a", 0), ("a", 1), ("a", 1), ("a", 2)])).unwrap();
    assert_eq!(c.len(), 5);
}

#[test]
fn root_of_unity_rejected() {
    for q in ["1", "-1"] {
        let q: QValue = q.parse().unwrap();
        assert!(matches!(enumerate_gln(2, &q, &EigenvalueData::Budget(1)), Err(Error::RootOfUnityQ(_))));
        assert!(matches!(count_irreducibles_gln(2, &q, &EigenvalueData::Budget(1)), Err(Error::RootOfUnityQ(_))));
    }
    assert!(enumerate_gln(2, &"0".parse().unwrap(), &EigenvalueData::Budget(1)).is_err());
    assert!(enumerate_gln(2, &"-2".parse().unwrap(), &EigenvalueData::Budget(1)).is_ok());
    assert!(matches!(
        enumerate_gln(3, &generic(), &ev(&[("a", 0)])),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn exact_eigenvalues_group_into_orbits() {
    let q = QValue::Exact(rat(2));
    let parse = |v: &[&str]| EigenvalueData::Multiset(v.iter().map(|s| s.parse().unwrap()).collect());
    // 3 and 6 differ by q
    assert_eq!(count_irreducibles_gln(2, &q, &parse(&["6", "3"])).unwrap(), 2);
    assert_eq!(count_irreducibles_gln(2, &q, &parse(&["3", "5"])).unwrap(), 1);
    assert_eq!(count_irreducibles_gln(3, &q, &parse(&["3/4", "3*q^-1", "3"])).unwrap(), 4);
    let c = enumerate_gln(2, &q, &parse(&["6", "3"])).unwrap();
    assert!(c.iter().any(|p| p.to_string() == "{[3;2]}"));
    // with a formal q the same rationals are unrelated
    assert_eq!(count_irreducibles_gln(2, &generic(), &parse(&["6", "3"])).unwrap(), 1);
    assert_eq!(count_irreducibles_gln(2, &generic(), &parse(&["3", "3*q"])).unwrap(), 2);
}

#[test]
fn eigenvalue_strings_round_trip() {
    for s in ["a", "a*q", "b*q^-3", "3/2*q^2", "-5"] {
        let e: Eigenvalue = s.parse().unwrap();
        assert_eq!(e.to_string(), s);
        let j = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<Eigenvalue>(&j).unwrap(), e);
    }
    assert!("0".parse::<Eigenvalue>().is_err());
    assert!("a*x".parse::<Eigenvalue>().is_err());
}

fn chain_count(n: usize) -> usize {
    // c(n) = Σ_{ℓ=1..n} c(n − ℓ): the first segment takes the first ℓ points
    let mut c = vec![1usize];
    for m in 1..=n {
        c.push((1..=m).map(|l| c[m - l]).sum());
    }
    c[n]
}

#[test]
fn single_chain_matches_segment_recursion() {
    for n in 1..=8 {
        let data = EigenvalueData::Multiset((0..n as i64).map(|k| Eigenvalue::symbol("a", k)).collect());
        assert_eq!(count_irreducibles_gln(n, &generic(), &data).unwrap(), chain_count(n), "n = {n}");
    }
}

/// Every eigenvalue multiset of size n on orbits `a, b` with exponents in `[0, n)`.
fn small_multisets(n: usize) -> Vec<Vec<Eigenvalue>> {
    let points: Vec<Eigenvalue> =
        ["a", "b"].iter().flat_map(|o| (0..n as i64).map(move |k| Eigenvalue::symbol(o, k))).collect();
    let mut out = Vec::new();
    fn rec(points: &[Eigenvalue], from: usize, left: usize, acc: &mut Vec<Eigenvalue>, out: &mut Vec<Vec<Eigenvalue>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in from..points.len() {
            acc.push(points[i].clone());
            rec(points, i, left - 1, acc, out);
            acc.pop();
        }
    }
    rec(&points, 0, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn enumeration_matches_orbit_oracle() {
    for n in 1..=3 {
        for ms in small_multisets(n) {
            let classes = enumerate_gln(n, &generic(), &EigenvalueData::Multiset(ms.clone())).unwrap();
            let mut dims: BTreeMap<(String, i64), usize> = BTreeMap::new();
            for e in &ms {
                if let EigenBase::Symbol(s) = &e.base {
                    *dims.entry((s.clone(), e.qpow)).or_insert(0) += 1;
                }
            }
            let vertices: Vec<_> = dims.into_iter().collect();
            let orbits = quiver_orbits(&vertices, 2);
            let ours: BTreeSet<_> = classes.iter().map(|c| c.rank_data()).collect();
            let theirs: BTreeSet<_> = orbits.iter().cloned().collect();
            assert_eq!(orbits.len(), theirs.len(), "rank data fails to separate orbits for {ms:?}");
            assert_eq!(classes.len(), ours.len(), "duplicate classes for {ms:?}");
            assert_eq!(ours, theirs, "{ms:?}");
        }
    }
}

#[test]
fn oracle_over_f3_agrees() {
    let v = |k: i64, d: usize| (("a".to_string(), k), d);
    let cases: [(&[(i64, usize)], usize); 3] = [(&[(0, 1), (1, 2), (2, 1)], 5), (&[(0, 2), (1, 2)], 3), (&[(0, 2), (1, 1)], 2)];
    for (dims, expected) in cases {
        let vertices: Vec<_> = dims.iter().map(|&(k, d)| v(k, d)).collect();
        let data = EigenvalueData::Multiset(
            dims.iter().flat_map(|&(k, d)| std::iter::repeat_n(Eigenvalue::symbol("a", k), d)).collect(),
        );
        let n = dims.iter().map(|d| d.1).sum();
        assert_eq!(enumerate_gln(n, &generic(), &data).unwrap().len(), expected);
        assert_eq!(quiver_orbits(&vertices, 3).len(), expected);
        assert_eq!(quiver_orbits(&vertices, 2).len(), expected);
    }
}

#[test]
fn budget_counts() {
    let count = |n, k| enumerate_gln(n, &generic(), &EigenvalueData::Budget(k)).unwrap().len();
    assert_eq!(count(1, 1), 1);
    // {a,a}, {a,qa} with N = 0 or not
    assert_eq!(count(2, 1), 3);
    assert_eq!(count(2, 2), 4);
}

#[test]
fn budget_matches_fixed_multisets() {
    for n in 1..=4 {
        for k in 1..=2 {
            let budget = enumerate_gln(n, &generic(), &EigenvalueData::Budget(k)).unwrap();
            let budget_shapes = shapes(&budget);
            assert_eq!(budget_shapes.len(), budget.len(), "shape collision n={n} k={k}");
            let mut expected = BTreeSet::new();
            for ms in small_multisets(n) {
                for c in enumerate_gln(n, &generic(), &EigenvalueData::Multiset(ms)).unwrap() {
                    let s = c.shape();
                    if s.len() <= k {
                        expected.insert(s);
                    }
                }
            }
            assert_eq!(budget_shapes, expected, "n={n} k={k}");
        }
    }
}

#[test]
fn gl2_stabilizers_are_connected() {
    let q = rat(2);
    let m = |v: [i64; 4]| v.map(rat);
    let s = m([2, 0, 0, 1]);
    let r = gl2_pair_stabilizer(&s, &m([0, 1, 0, 0]), &q).unwrap();
    // scalars only
    assert_eq!(r.dimension, 1);
    assert!(r.unital_subalgebra && r.connected);
    let r = gl2_pair_stabilizer(&s, &m([0, 0, 0, 0]), &q).unwrap();
    assert_eq!(r.dimension, 2);
    assert!(r.connected);
    let r = gl2_pair_stabilizer(&m([1, 0, 0, 1]), &m([0, 0, 0, 0]), &rat(3)).unwrap();
    assert_eq!(r.dimension, 4);
    assert!(matches!(gl2_pair_stabilizer(&s, &m([0, 0, 1, 0]), &q), Err(Error::NotQCommuting(_))));
    assert!(matches!(gl2_pair_stabilizer(&m([2, 0, 0, 1]), &m([1, 1, 0, 0]), &q), Err(Error::NotQCommuting(_))));
}

fn lam(s: &str) -> Lambda {
    s.parse().unwrap()
}

fn q_of(s: &str) -> QValue {
    s.parse().unwrap()
}

fn summary(rows: &[SL2ParameterRow]) -> Vec<(NStratum, ComponentGroup, Geometry, Centralizer)> {
    rows.iter().map(|r| (r.n_stratum, r.component_group, r.geometry_label, r.centralizer)).collect()
}

#[test]
fn sl2_table_rows() {
    use ComponentGroup::*;
    use NStratum::*;
    let rows = sl2_table(&lam("1"), &q_of("1")).unwrap();
    assert_eq!(
        summary(&rows),
        [(Zero, Trivial, Geometry::SpringerResolution, Centralizer::G), (Nonzero, Z2, Geometry::SpringerResolution, Centralizer::G)]
    );
    assert_eq!(rows[0].q, QDescriptor::One);

    let rows = sl2_table(&lam("i"), &q_of("-1")).unwrap();
    assert_eq!(
        summary(&rows),
        [
            (Zero, Trivial, Geometry::NodalNormalization, Centralizer::T),
            (NonzeroUpper, Z2, Geometry::NodalNormalization, Centralizer::T),
            (NonzeroLower, Z2, Geometry::NodalNormalization, Centralizer::T)
        ]
    );

    for q in ["2", "-1", "generic"] {
        let rows = sl2_table(&lam("-1"), &q_of(q)).unwrap();
        assert_eq!(summary(&rows), [(Zero, Trivial, Geometry::ProjectiveLine, Centralizer::G)]);
    }

    for (l, q) in [("sqrt(q)", "generic"), ("-sqrt(q)", "generic"), ("sqrt(3)", "3"), ("2", "4"), ("1/2", "4")] {
        let rows = sl2_table(&lam(l), &q_of(q)).unwrap();
        assert_eq!(
            summary(&rows),
            [(Zero, Trivial, Geometry::LinePlusPoint, Centralizer::T), (Nonzero, Z2, Geometry::LinePlusPoint, Centralizer::T)],
            "{l}, {q}"
        );
        assert_eq!(rows[0].q, QDescriptor::LambdaMatched);
    }

    for (l, q) in [("2", "generic"), ("3", "1"), ("i", "2"), ("i", "1"), ("2", "-1"), ("q", "generic")] {
        let rows = sl2_table(&lam(l), &q_of(q)).unwrap();
        assert_eq!(summary(&rows), [(Zero, Trivial, Geometry::TwoPoints, Centralizer::T)], "{l}, {q}");
    }
    assert!(rows_all_tilde_trivial());
}

fn rows_all_tilde_trivial() -> bool {
    let cases = [("1", "1"), ("i", "-1"), ("1", "2"), ("sqrt(q)", "generic"), ("2", "generic")];
    cases
        .iter()
        .flat_map(|(l, q)| sl2_table(&lam(l), &q_of(q)).unwrap())
        .all(|r| r.component_group_tilde == ComponentGroup::Trivial)
}

#[test]
fn component_groups() {
    let z = Sl2Nilpotent::zero();
    for (l, q) in [("1", "1"), ("i", "-1"), ("5", "generic"), ("sqrt(q)", "generic")] {
        let g = component_group_sl2(&lam(l), &q_of(q), &z).unwrap();
        assert_eq!(g.g, ComponentGroup::Trivial);
    }
    // a non-upper-triangular nilpotent with s central
    let n = Sl2Nilpotent { a: rat(2), x: rat(4), y: rat(-1) };
    let g = component_group_sl2(&lam("-1"), &q_of("1"), &n).unwrap();
    assert_eq!((g.g, g.g_tilde), (ComponentGroup::Z2, ComponentGroup::Trivial));
    let e = Sl2Nilpotent::upper(rat(1));
    assert!(matches!(component_group_sl2(&lam("2"), &q_of("1"), &e), Err(Error::NotQCommuting(_))));
    assert!(matches!(component_group_sl2(&lam("1"), &q_of("1"), &n_bad()), Err(Error::NotQCommuting(_))));
    assert!(sl2_table(&lam("1"), &q_of("0")).is_err());
    assert!("0".parse::<Lambda>().is_err());
}

fn n_bad() -> Sl2Nilpotent {
    Sl2Nilpotent { a: rat(1), x: rat(0), y: rat(0) }
}

#[test]
fn row_json_round_trip() {
    for r in sl2_table(&lam("sqrt(q)"), &q_of("generic")).unwrap() {
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<SL2ParameterRow>(&j).unwrap(), r);
    }
}

/// The table's row conditions read off directly, independent of the
/// eigenspace computation.
fn regimes_by_conditions(l2: &Rational, q: &Rational) -> Vec<Regime> {
    let one = rat(1);
    let mut out = Vec::new();
    if *q == one && *l2 == one {
        out.push(Regime::CentralUnipotent);
    }
    if *q == -&one && *l2 == -&one {
        out.push(Regime::NodalMinusOne);
    }
    if *q != one && *l2 == one {
        out.push(Regime::CentralRigid);
    }
    if *q != one && *q != -&one && (l2 == q || l2 * q == one) {
        out.push(Regime::SqrtQ);
    }
    if *l2 != one && l2 != q && l2 * q != one {
        out.push(Regime::Regular);
    }
    out
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #[test]
    fn every_parameter_lands_in_one_regime(q in small_rational(), l in small_rational(), form in 0..5u8) {
        let (lambda, l2) = match form {
            0 => (Lambda::from_square("x", QMonomial::constant(&l * &l)).unwrap(), &l * &l),
            1 => (lam("i"), rat(-1)),
            2 => (Lambda::from_square("sqrt(q)", QMonomial::constant(q.clone())).unwrap(), q.clone()),
            3 => (Lambda::from_square("1/sqrt(q)", QMonomial::constant(q.recip())).unwrap(), q.recip()),
            _ => (lam("1"), rat(1)),
        };
        let hits = regimes_by_conditions(&l2, &q);
        prop_assert_eq!(hits.len(), 1);
        let rows = sl2_table(&lambda, &QValue::Exact(q)).unwrap();
        prop_assert!(rows.iter().all(|r| r.regime == hits[0]));
        prop_assert!(rows.iter().all(|r| r.component_group_tilde == ComponentGroup::Trivial));
    }

    #[test]
    fn component_group_is_conjugation_invariant(t in small_rational(), u in small_rational(), x in small_rational(), mu in small_rational()) {
        // central s: conjugate e-multiples by g = [[1, t], [0, 1]]·[[1, 0], [u, 1]]
        let g = [&t * &u + rat(1), t.clone(), u.clone(), rat(1)];
        let n = Sl2Nilpotent::upper(x.clone());
        let m = n.conjugate(&g);
        let (l, q) = (lam("-1"), q_of("1"));
        prop_assert_eq!(component_group_sl2(&l, &q, &n).unwrap(), component_group_sl2(&l, &q, &m).unwrap());
        // non-central s: torus rescaling and the Weyl flip λ ↦ λ⁻¹
        let (l, q) = (lam("sqrt(q)"), q_of("generic"));
        let scaled = n.conjugate(&[mu.clone(), rat(0), rat(0), mu.recip()]);
        let flipped = n.conjugate(&[rat(0), rat(1), rat(-1), rat(0)]);
        let base = component_group_sl2(&l, &q, &n).unwrap();
        prop_assert_eq!(base, component_group_sl2(&l, &q, &scaled).unwrap());
        prop_assert_eq!(base, component_group_sl2(&l.inverse(), &q, &flipped).unwrap());
    }
}
