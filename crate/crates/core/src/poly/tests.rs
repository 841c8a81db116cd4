use super::*;
use crate::field::FieldDescriptor;
use proptest::prelude::*;

fn ring(field: &Field, n: usize) -> Ring {
    RingCtx::standard(field, n)
}

fn p(r: &Ring, s: &str) -> Poly {
    Poly::parse(r, s).unwrap()
}

#[test]
fn arithmetic_examples() {
    let q = ring(&Field::rationals(), 2);
    assert_eq!(&p(&q, "x1+x2") * &p(&q, "x1-x2"), p(&q, "x1^2-x2^2"));
    let f2 = ring(&Field::prime(2).unwrap(), 2);
    assert_eq!(p(&f2, "x1+x2").pow(2), p(&f2, "x1^2+x2^2"));
    assert!((&p(&q, "x1") * &Poly::zero(&q)).is_zero());
    let other = ring(&Field::prime(3).unwrap(), 2);
    assert_eq!(p(&q, "x1").arith(&p(&other, "x1"), PolyOp::Add), Err(Error::RingMismatch));
}

#[test]
fn homogeneous_degree_examples() {
    let q = ring(&Field::rationals(), 2);
    assert_eq!(p(&q, "x1*x2").homogeneous_degree(), HomDegree::Homogeneous(2));
    assert_eq!(p(&q, "x1+x2^2").homogeneous_degree(), HomDegree::NotHomogeneous);
    assert_eq!(Poly::zero(&q).homogeneous_degree(), HomDegree::ZeroPoly);
    let w = RingCtx::new(
        Field::rationals(),
        vec![Var { name: "y1".into(), degree: 2 }, Var { name: "x1".into(), degree: 1 }],
    )
    .unwrap();
    assert_eq!(p(&w, "y1*x1").homogeneous_degree(), HomDegree::Homogeneous(3));
}

#[test]
fn apply_hom_examples() {
    let q = ring(&Field::rationals(), 2);
    let gamma = GradedHom::new(&q, &q, vec![p(&q, "x1"), p(&q, "x2-x1")]).unwrap();
    assert_eq!(gamma.apply(&p(&q, "x1*x2")).unwrap(), p(&q, "x1*x2-x1^2"));
    let f = p(&q, "3*x1^2 - x1*x2 + 7*x2^2");
    assert_eq!(GradedHom::identity(&q).apply(&f).unwrap(), f);
    let q4 = ring(&Field::rationals(), 4);
    let kill = GradedHom::kill_after(&q4, 3);
    assert_eq!(kill.apply(&p(&q4, "x1*x2+x3*x4")).unwrap(), p(&q4, "x1*x2"));
    assert!(GradedHom::new(&q, &q, vec![p(&q, "x1^2"), p(&q, "x2")]).is_err());
}

/// Independent oracle: enumerate a2 over F_3 and keep the first shift whose
/// substituted form has a nonzero x1^2 coefficient.
fn first_shift_f3(f: &Poly) -> (u64, Poly) {
    let r = f.ring();
    let k = r.field();
    for a in 0..3u64 {
        let img = GradedHom::new(r, r, vec![p(r, "x1"), &p(r, "x2") - &p(r, "x1").scale(&FieldElem::Mod(a))])
            .unwrap()
            .apply(f)
            .unwrap();
        let c = img.coeff(&Monomial::new(vec![2, 0]));
        if !k.is_zero(&c) {
            return (a, img);
        }
    }
    unreachable!()
}

#[test]
fn monicize_examples() {
    let f3 = ring(&Field::prime(3).unwrap(), 2);
    let f = p(&f3, "x2^2");
    let m = monicize(&f, 0).unwrap();
    let (a, img) = first_shift_f3(&f);
    assert_eq!(a, 1);
    assert_eq!(m.shifts[1], FieldElem::Mod(1));
    assert_eq!(m.image, img);
    assert_eq!(m.image, p(&f3, "x1^2 - 2*x1*x2 + x2^2"));
    assert_eq!(m.unit, FieldElem::Mod(1));

    let g = p(&f3, "x1*x2");
    let m = monicize(&g, 0).unwrap();
    let (a, img) = first_shift_f3(&g);
    assert_eq!(a, 1);
    assert_eq!(m.image, img);
    assert_eq!(m.image, p(&f3, "x1*x2 - x1^2"));
    assert_eq!(m.unit, FieldElem::Mod(2));
    assert_eq!(m.monic, p(&f3, "x1^2 + 2*x1*x2"));

    let q = ring(&Field::rationals(), 3);
    let h = p(&q, "5*x1^3 + x2*x3^2");
    let m = monicize(&h, 0).unwrap();
    assert_eq!(m.hom, GradedHom::identity(&q));
    assert_eq!(m.unit, Field::rationals().from_i64(5));
}

#[test]
fn monicize_errors() {
    let f2 = ring(&Field::prime(2).unwrap(), 2);
    assert!(matches!(monicize(&p(&f2, "x1*x2"), 0), Err(Error::FieldTooSmall { size: 2, degree: 2 })));
    assert_eq!(monicize(&Poly::zero(&f2), 0).unwrap_err(), Error::ZeroInput);
    assert_eq!(monicize(&p(&f2, "x1+x2^2"), 0).unwrap_err(), Error::NotHomogeneous);
    assert_eq!(monicize(&p(&f2, "x1"), 5).unwrap_err(), Error::IndexOutOfRange(5));
    // F_4 is large enough for quadrics
    let f4 = ring(&Field::f4(), 2);
    let m = monicize(&p(&f4, "x1*x2"), 0).unwrap();
    assert!(m.monic.field().is_one(&m.monic.coeff(&Monomial::new(vec![2, 0]))));
}

#[test]
fn truncate_examples() {
    let q = ring(&Field::rationals(), 5);
    assert_eq!(p(&q, "x1*x2+x3*x4").truncate_vars(3), p(&q.truncated(3), "x1*x2"));
    assert_eq!(p(&q, "x1^2").truncate_vars(5), p(&q, "x1^2"));
    assert!(p(&q, "x4^2").truncate_vars(3).is_zero());
    assert_eq!(p(&q, "x4^2").truncate_vars(3).ring().nvars(), 3);
}

#[test]
fn random_homogeneous_contract() {
    let f2 = ring(&Field::prime(2).unwrap(), 2);
    let a = random_homogeneous(&f2, 2, 7).unwrap();
    assert_eq!(a, random_homogeneous(&f2, 2, 7).unwrap());
    assert!(matches!(a.homogeneous_degree(), HomDegree::Homogeneous(2) | HomDegree::ZeroPoly));
    let f1 = ring(&Field::prime(5).unwrap(), 1);
    let l = random_homogeneous(&f1, 1, 3).unwrap();
    assert!(l.terms().all(|(m, _)| m.exps() == [1]));
    let empty = ring(&Field::prime(5).unwrap(), 0);
    assert!(random_homogeneous(&empty, 3, 1).unwrap().is_zero());
    let qt = Field::new(FieldDescriptor::rational_functions(&["t"], FieldDescriptor::Rationals)).unwrap();
    assert!(matches!(random_homogeneous(&ring(&qt, 2), 2, 1), Err(Error::UnsupportedField(_))));
}

#[test]
fn monomials_of_weighted_degree() {
    let w = RingCtx::weighted(&Field::rationals(), &[1, 2, 3]);
    let ms = w.monomials_of_degree(3);
    let exps: Vec<Vec<u32>> = ms.iter().map(|m| m.exps().to_vec()).collect();
    assert_eq!(exps, vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
    assert_eq!(ring(&Field::rationals(), 3).monomials_of_degree(2).len(), 6);
}

#[test]
fn json_round_trip_and_order() {
    let k = Field::new(FieldDescriptor::rational_functions(&["t"], FieldDescriptor::prime(5))).unwrap();
    let r = ring(&k, 3);
    let f = p(&r, "t*x1^2 + (t+1)/(t^2)*x2*x3 - x3^2");
    let j = f.to_json();
    let s = serde_json::to_string(&j).unwrap();
    let back: PolyJson = serde_json::from_str(&s).unwrap();
    assert_eq!(back.to_poly().unwrap(), f);
    let exps: Vec<Vec<u32>> = j.terms.iter().map(|t| t.exps.clone()).collect();
    assert_eq!(exps, vec![vec![2, 0, 0], vec![0, 1, 1], vec![0, 0, 2]]);
    assert!(s.contains(r#""kind":"RationalFunctions""#));
}

fn arb_poly(r: Ring, deg: u32) -> impl Strategy<Value = Poly> {
    any::<u64>().prop_map(move |s| random_homogeneous(&r, deg, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_is_ring_hom(f in arb_poly(ring(&Field::prime(5).unwrap(), 3), 2),
                       g in arb_poly(ring(&Field::prime(5).unwrap(), 3), 2),
                       s in any::<u64>()) {
        let r = f.ring().clone();
        let images: Vec<Poly> = (0..3).map(|i| random_homogeneous(&r, 1, s.wrapping_add(i)).unwrap()).collect();
        let phi = GradedHom::new(&r, &r, images).unwrap();
        prop_assert_eq!(phi.apply(&(&f + &g)).unwrap(), &phi.apply(&f).unwrap() + &phi.apply(&g).unwrap());
        prop_assert_eq!(phi.apply(&(&f * &g)).unwrap(), &phi.apply(&f).unwrap() * &phi.apply(&g).unwrap());
    }

    #[test]
    fn monicize_postconditions(f in arb_poly(ring(&Field::prime(7).unwrap(), 3), 3), pivot in 0usize..3) {
        prop_assume!(!f.is_zero());
        let m = monicize(&f, pivot).unwrap();
        let mut e = vec![0; 3];
        e[pivot] = 3;
        prop_assert!(f.field().is_one(&m.monic.coeff(&Monomial::new(e))));
        prop_assert_eq!(m.inverse.apply(&m.image).unwrap(), f.clone());
        prop_assert_eq!(m.inverse.compose(&m.hom).unwrap(), GradedHom::identity(f.ring()));
    }

    #[test]
    fn truncation_tower(f in arb_poly(ring(&Field::rationals(), 6), 2), a in 0usize..7, b in 0usize..7) {
        let (m, n) = (a.min(b), a.max(b));
        prop_assert_eq!(f.truncate_vars(n).truncate_vars(m), f.truncate_vars(m));
    }
}
