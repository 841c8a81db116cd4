use super::*;
use proptest::prelude::*;

fn ext(p: u64, min_poly: Vec<u64>) -> Field {
    let e = min_poly.len() as u32 - 1;
    Field::new(FieldDescriptor::ExtField { p, e, min_poly }).unwrap()
}

fn qt() -> Field {
    Field::new(FieldDescriptor::rational_functions(&["t"], FieldDescriptor::Rationals)).unwrap()
}

fn finite_fields() -> Vec<Field> {
    vec![
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::prime(5).unwrap(),
        Field::prime(7).unwrap(),
        Field::f4(),
        ext(2, vec![1, 1, 0, 1]),
        ext(2, vec![1, 1, 0, 0, 1]),
        ext(3, vec![1, 0, 1]),
        ext(3, vec![1, 2, 0, 1]),
        ext(5, vec![3, 0, 1]),
        ext(7, vec![1, 0, 1]),
        ext(3, vec![2, 0, 0, 1, 1]),
    ]
}

#[test]
fn rational_addition() {
    let q = Field::rationals();
    let a = Scalar::parse(&q, "1/2").unwrap();
    let b = Scalar::parse(&q, "1/3").unwrap();
    assert_eq!(a.arith(&b, ArithOp::Add).unwrap().to_string(), "5/6");
}

#[test]
fn prime_field_product() {
    let f3 = Field::prime(3).unwrap();
    let two = Scalar::parse(&f3, "2").unwrap();
    assert_eq!(two.arith(&two, ArithOp::Mul).unwrap().value, FieldElem::Mod(1));
}

#[test]
fn rational_function_inverse_pair() {
    let k = qt();
    let inv_t = Scalar::parse(&k, "1/t").unwrap();
    let t = Scalar::parse(&k, "t").unwrap();
    let prod = inv_t.arith(&t, ArithOp::Mul).unwrap();
    assert_eq!(prod.value, k.one());
}

#[test]
fn mismatched_descriptors_and_zero_division() {
    let a = Scalar::parse(&Field::prime(3).unwrap(), "1").unwrap();
    let b = Scalar::parse(&Field::prime(5).unwrap(), "1").unwrap();
    assert_eq!(a.arith(&b, ArithOp::Add), Err(Error::DescriptorMismatch));
    let z = Scalar::parse(&Field::prime(3).unwrap(), "0").unwrap();
    assert_eq!(a.arith(&z, ArithOp::Div), Err(Error::DivisionByZero));
}

#[test]
fn descriptor_validation() {
    assert!(Field::prime(4).is_err());
    assert!(Field::new(FieldDescriptor::ExtField { p: 2, e: 2, min_poly: vec![1, 0, 1] }).is_err());
    assert!(Field::new(FieldDescriptor::ExtField { p: 2, e: 4, min_poly: vec![1, 1, 1, 0, 1] }).is_err());
    assert!(Field::new(FieldDescriptor::ExtField { p: 2, e: 5, min_poly: vec![1, 0, 1, 0, 0, 1] }).is_err());
    let nested = FieldDescriptor::rational_functions(
        &["s"],
        FieldDescriptor::rational_functions(&["t"], FieldDescriptor::Rationals),
    );
    assert!(Field::new(nested).is_err());
}

#[test]
fn pth_root_examples() {
    let f3 = Field::prime(3).unwrap();
    assert_eq!(f3.pth_root(&FieldElem::Mod(2)).unwrap(), FieldElem::Mod(2));
    let f4 = Field::f4();
    // squaring table of F_4, inverted
    let omega = FieldElem::Ext(vec![0, 1]);
    let squares: Vec<(FieldElem, FieldElem)> =
        f4.elements().unwrap().into_iter().map(|x| (f4.mul(&x, &x), x)).collect();
    let expected = squares.iter().find(|(sq, _)| *sq == omega).unwrap().1.clone();
    assert_eq!(expected, FieldElem::Ext(vec![1, 1]));
    assert_eq!(f4.pth_root(&omega).unwrap(), expected);

    let f2t = Field::new(FieldDescriptor::rational_functions(&["t"], FieldDescriptor::prime(2))).unwrap();
    let t2 = f2t.parse("t^2").unwrap();
    assert_eq!(f2t.pth_root(&t2).unwrap(), f2t.parse("t").unwrap());
    assert_eq!(f2t.pth_root(&f2t.parse("t").unwrap()), Err(Error::NotAPthPower));
    assert_eq!(Field::rationals().pth_root(&Field::rationals().one()), Err(Error::CharZero));
}

#[test]
fn pth_root_exhaustive_small_fields() {
    for k in finite_fields() {
        let p = k.characteristic();
        for a in k.elements().unwrap() {
            let r = k.pth_root(&a).unwrap();
            assert_eq!(k.pow(&r, p), a, "{k:?}");
        }
    }
}

#[test]
fn inverses_exhaustive_small_fields() {
    for k in finite_fields() {
        for a in k.elements().unwrap().into_iter().skip(1) {
            let b = k.inv(&a).unwrap();
            assert!(k.is_one(&k.mul(&a, &b)), "{k:?} {a:?}");
        }
    }
}

#[test]
fn element_order_is_a_bijection() {
    for k in finite_fields() {
        for (i, a) in k.elements().unwrap().iter().enumerate() {
            assert_eq!(k.element_index(a), Some(i as u128));
        }
    }
}

#[test]
fn clear_denominators_examples() {
    let k = qt();
    let names = vec!["t".to_string()];
    let (base, _) = k.frac_parts().unwrap();
    let fmt = |p: &ParamPoly| p.format(base, &names);

    let (out, g) = clear_denominators(&k, &[k.parse("1/t").unwrap(), k.one()]).unwrap();
    assert_eq!(out.iter().map(fmt).collect::<Vec<_>>(), vec!["1", "t"]);
    assert_eq!(fmt(&g), "t");

    let (out, g) = clear_denominators(&k, &[k.parse("1/t").unwrap(), k.parse("1/(t+1)").unwrap()]).unwrap();
    assert_eq!(out.iter().map(fmt).collect::<Vec<_>>(), vec!["t+1", "t"]);
    assert_eq!(fmt(&g), "t^2+t");

    let (out, g) = clear_denominators(&k, &[k.parse("t/(t^2)").unwrap(), k.one()]).unwrap();
    assert_eq!(out.iter().map(fmt).collect::<Vec<_>>(), vec!["1", "t"]);
    assert_eq!(fmt(&g), "t");
}

#[test]
fn rational_function_normal_form_is_syntactic() {
    let k = Field::new(FieldDescriptor::rational_functions(&["s", "t"], FieldDescriptor::Rationals)).unwrap();
    let a = k.parse("(s^2-t^2)/(2*s+2*t)").unwrap();
    let b = k.parse("1/2*s-1/2*t").unwrap();
    assert_eq!(a, b);
    assert_eq!(k.format(&a), "1/2*s-1/2*t");
    let c = k.parse("(s*t+t)/(s^2*t-t)").unwrap();
    assert_eq!(k.format(&c), "(1)/(s-1)");
    assert_eq!(k.parse(&k.format(&c)).unwrap(), c);
}

#[test]
fn coefficient_strings_round_trip() {
    let f9 = ext(3, vec![1, 0, 1]);
    let a = f9.parse("[2,1]").unwrap();
    assert_eq!(f9.format(&a), "[2,1]");
    assert_eq!(f9.parse("[1]").unwrap(), f9.one());
    let q = Field::rationals();
    assert_eq!(q.format(&q.parse("-6/4").unwrap()), "-3/2");
    assert!(q.parse("1/0").is_err());
    assert!(q.parse("t").is_err());
}

fn arb_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::rationals()),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(5).unwrap()),
        Just(Field::f4()),
        Just(ext(3, vec![1, 0, 1])),
        Just(qt()),
        Just(Field::new(FieldDescriptor::rational_functions(&["t"], FieldDescriptor::prime(3))).unwrap()),
    ]
}

fn arb_elem(k: &Field, seed: (i64, i64, u8, i64)) -> FieldElem {
    let (a, b, kind, c) = seed;
    match k.frac_parts() {
        Some(_) => {
            let s = match kind % 3 {
                0 => format!("({a}*t^2+{b})/(t+{c})"),
                1 => format!("{a}*t-{b}"),
                _ => format!("({a})/(t^2+{c}*t+1)"),
            };
            k.parse(&s).unwrap_or_else(|_| k.from_i64(a))
        }
        None if k.is_finite() => k.element_at((a.unsigned_abs() as u128) % k.size().unwrap()),
        None => k.from_rational(&BigRational::new(BigInt::from(a), BigInt::from(b.abs() + 1))).unwrap(),
    }
}

proptest! {
    #[test]
    fn field_axioms(k in arb_field(), s1 in any::<(i64, i64, u8, i64)>(), s2 in any::<(i64, i64, u8, i64)>(), s3 in any::<(i64, i64, u8, i64)>()) {
        let small = |s: (i64, i64, u8, i64)| (s.0 % 50, s.1 % 50, s.2, s.3 % 7);
        let (a, b, c) = (arb_elem(&k, small(s1)), arb_elem(&k, small(s2)), arb_elem(&k, small(s3)));
        prop_assert_eq!(k.add(&k.add(&a, &b), &c), k.add(&a, &k.add(&b, &c)));
        prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
        prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
        prop_assert_eq!(k.add(&a, &k.neg(&a)), k.zero());
        if !k.is_zero(&a) {
            prop_assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
        }
    }
}
