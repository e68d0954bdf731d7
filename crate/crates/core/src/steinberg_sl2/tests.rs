use super::class::tv;
use super::*;
use crate::exact_arith::{rat, MultiLaurent, RationalFunction};
use crate::hecke::{v_pow, HeckeElement};
use crate::root_weyl::load_datum;

fn model() -> SteinbergModel {
    SteinbergModel::frozen()
}

#[test]
fn euler_class_examples() {
    let td = TangentData::new(QConvention::A);
    let one = tv(0, 0);
    let expected = &(&one - &tv(-2, 0)) * &(&one - &tv(2, -2));
    assert_eq!(td.euler_class(FixedPoint::E), expected);
    assert_eq!(td.euler_class(FixedPoint::S), expected.invert_var("t"));
    let at_q1 = td.euler_class(FixedPoint::E).substitute_values(&[("v", rat(1))]).unwrap();
    assert!(!at_q1.is_zero());
    let [base, fiber] = td.weights(FixedPoint::E);
    assert_eq!(&base * &fiber, tv(0, 2));
}

#[test]
fn unit_and_theta() {
    let m = model();
    let u = m.unit();
    assert_eq!(m.class_theta(0), u);
    let ts = m.class_Ts();
    assert_eq!(m.convolve(&u, &ts), ts);
    assert_eq!(m.convolve(&m.class_theta(1), &m.class_theta(-1)), u);
    assert_eq!(m.convolve(&m.class_theta(2), &m.class_theta(3)), m.class_theta(5));
}

#[test]
fn quadratic_relation() {
    let m = model();
    let ts = m.class_Ts();
    let q = tv(0, 2);
    let rhs = ts.scale(&(&q - &tv(0, 0))).add(&m.unit().scale(&q));
    assert_eq!(m.convolve(&ts, &ts), rhs);
    assert_eq!(m.convolve(&ts, &m.class_Ts_inverse()), m.unit());
}

#[test]
fn symmetrized_theta_is_central() {
    let m = model();
    let ts = m.class_Ts();
    let z = m.class_theta(1).add(&m.class_theta(-1));
    assert_eq!(m.convolve(&z, &ts), m.convolve(&ts, &z));
    // a single θ is not
    let th = m.class_theta(1);
    assert_ne!(m.convolve(&th, &ts), m.convolve(&ts, &th));
}

#[test]
fn associativity_example() {
    let m = model();
    let (ts, th) = (m.class_Ts(), m.class_theta(1));
    let left = m.convolve(&m.convolve(&ts, &ts), &th);
    let right = m.convolve(&ts, &m.convolve(&ts, &th));
    assert_eq!(left, right);
    assert!(left.is_integral());
}

#[test]
fn frozen_convention_passes_every_check() {
    let report = hecke_model_check(QConvention::A).unwrap();
    for c in &report.checks {
        assert!(c.passed, "{}: {:?}", c.name, c.detail);
        assert!(c.checked > 0);
    }
    assert!(report.require().is_ok());
}

#[test]
fn other_convention_fails_with_frozen_twist() {
    let report = hecke_model_check(QConvention::B).unwrap();
    assert!(!report.all_passed);
    assert!(matches!(report.require(), Err(crate::Error::ModelInconsistent(_))));
}

#[test]
fn twist_search() {
    let a = search_ts_twists(QConvention::A);
    let mut passing: Vec<(i32, i32)> =
        a.iter().filter(|c| c.bernstein && c.c == tv(0, 2).to_string()).map(|c| c.twist).collect();
    passing.sort();
    // twists differing by conjugation with theta(1) are indistinguishable
    assert_eq!(passing, vec![(-2, 0), (-1, -1), (0, -2)]);
    // with fiber weight q⁻¹t⁻² only the normalization c = d = −1 survives
    let b: Vec<(i32, i32, String, String)> = search_ts_twists(QConvention::B)
        .into_iter()
        .filter(|c| c.bernstein)
        .map(|c| (c.twist.0, c.twist.1, c.c, c.d))
        .collect();
    assert_eq!(b.len(), 3);
    assert!(b.iter().all(|(x, y, c, d)| x + y == -2 && *c == "-1" && *d == "-1"));
}

#[test]
fn other_convention_with_its_own_normalization() {
    let m = SteinbergModel::new(QConvention::B, (-1, -1), -tv(0, 0), -tv(0, 0));
    let report = check_model(&m).unwrap();
    for c in &report.checks {
        assert!(c.passed, "{}: {:?}", c.name, c.detail);
    }
}

#[test]
fn twists_are_conjugate_by_theta() {
    let m = model();
    let shifted = SteinbergModel::new(QConvention::A, (0, -2), tv(0, 2), tv(0, 2));
    let conj = m.convolve(&m.convolve(&m.class_theta(1), &m.class_Ts()), &m.class_theta(-1));
    assert_eq!(conj, shifted.class_Ts());
}

#[test]
fn affine_generator_images() {
    let d = load_datum("SL2", None).unwrap();
    // T_{s0} = v² θ_{α∨} T_{s1}⁻¹ in the Hecke algebra itself
    let s0 = HeckeElement::simple(&d, 0).unwrap();
    let th = HeckeElement::theta(&d, &[1]).unwrap().expansion;
    let inv = HeckeElement::invert_basis(&d, d.affine_reflection(1).unwrap());
    assert_eq!(s0, th.mul(&inv).unwrap().scale(&v_pow(2)));
    let p = load_datum("PGL2", None).unwrap();
    let om = HeckeElement::basis(&p, &p.omega_generators()[0]);
    let th = HeckeElement::theta(&p, &[1]).unwrap().expansion;
    let inv = HeckeElement::invert_basis(&p, p.affine_reflection(1).unwrap());
    assert_eq!(om, th.mul(&inv).unwrap().scale(&v_pow(1)));
}

#[test]
fn hecke_map_on_central_elements() {
    let m = model();
    let d = load_datum("SL2", None).unwrap();
    let mut map = m.hecke_map(&d).unwrap();
    let z = HeckeElement::center_element(&d, &[1]).unwrap();
    let img = map.image(&z);
    assert_eq!(img, m.class_theta(2).add(&m.class_theta(-2)));
    assert!(img.is_integral());
}

#[test]
fn weyl_involution_fixes_generators() {
    let m = model();
    for c in [m.class_Ts(), m.class_theta(3), m.unit()] {
        assert_eq!(c.weyl_involution(), c);
    }
    let y = m.y_class(1, -2);
    assert_eq!(y.weyl_involution().weyl_involution(), y);
}

#[test]
fn non_laurent_entries_detected() {
    let m = model();
    let mut c = m.unit();
    let den = &tv(0, 0) - &tv(1, 0);
    c.entries[0][1] = RationalFunction::new(MultiLaurent::one(&VARS), den).unwrap();
    assert!(!c.is_integral());
}

