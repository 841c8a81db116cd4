use super::*;
use crate::ideal::{is_regular_sequence, RegSeqMethod};
use crate::resolution::betti;

fn q() -> Field {
    Field::rationals()
}

fn fam(base: &Field, n: usize) -> FamilyRing {
    FamilyRing::new(base, &["t"], &vec![1; n]).unwrap()
}

fn is_power_of_t(u: &DistinguishedOpen) -> bool {
    let p = u.polynomial();
    p.num_terms() == 1 && p.lead().is_some_and(|(e, _)| e[0] > 0)
}

fn table(entries: &[(usize, u32, usize)]) -> BettiTable {
    let mut t = BettiTable::default();
    for &(i, j, c) in entries {
        t.add(i, j, c);
    }
    t
}

#[test]
fn truncation_examples() {
    let k = q();
    let e = LimitElement::power_sum(&k, k.one(), 2).unwrap();
    let r3 = RingCtx::standard(&k, 3);
    assert_eq!(truncate_limit(&e, 3), Poly::parse(&r3, "x1^2+x2^2+x3^2").unwrap());

    let r2 = RingCtx::standard(&k, 2);
    let e = LimitElement::polynomial(Poly::parse(&r2, "x1*x2").unwrap()).unwrap();
    assert_eq!(truncate_limit(&e, 5), Poly::parse(&RingCtx::standard(&k, 5), "x1*x2").unwrap());
    assert_eq!(truncate_limit(&e, 1), Poly::zero(&RingCtx::standard(&k, 1)));

    let f2 = Field::prime(2).unwrap();
    let r1 = RingCtx::standard(&f2, 1);
    let tail = PowerSumTail { c: f2.one(), d: 3, start: 2, weight: TailWeight::Constant };
    let e = LimitElement::new(&f2, Poly::parse(&r1, "x1^3").unwrap(), Some(tail)).unwrap();
    assert_eq!(truncate_limit(&e, 2), Poly::parse(&RingCtx::standard(&f2, 2), "x1^3+x2^3").unwrap());
}

#[test]
fn limit_element_validation() {
    let k = q();
    let r1 = RingCtx::standard(&k, 1);
    let bad = PowerSumTail { c: k.one(), d: 3, start: 2, weight: TailWeight::Constant };
    let e = LimitElement::new(&k, Poly::parse(&r1, "x1^2").unwrap(), Some(bad.clone()));
    assert!(matches!(e, Err(Error::NotHomogeneous)));
    let early = PowerSumTail { start: 1, ..bad };
    assert!(LimitElement::new(&k, Poly::parse(&r1, "x1^3").unwrap(), Some(early)).is_err());
}

#[test]
fn truncation_tower() {
    let k = Field::prime(3).unwrap();
    let r2 = RingCtx::standard(&k, 2);
    let tail = PowerSumTail { c: k.from_i64(2), d: 2, start: 3, weight: TailWeight::Index };
    let e = LimitElement::new(&k, Poly::parse(&r2, "x1*x2+x2^2").unwrap(), Some(tail)).unwrap();
    for n in 0..7 {
        for m in 0..=n {
            assert_eq!(truncate_limit(&e, n).truncate_vars(m), truncate_limit(&e, m), "n={n} m={m}");
        }
    }
}

#[test]
fn stabilization_examples() {
    let k = q();
    let a = LimitElement::power_sum(&k, k.one(), 2).unwrap();
    let head = Poly::zero(&RingCtx::standard(&k, 0));
    let w = PowerSumTail { c: k.one(), d: 2, start: 1, weight: TailWeight::Index };
    let b = LimitElement::new(&k, head, Some(w)).unwrap();
    let s = regseq_stabilization(&[a, b], 5).unwrap();
    assert_eq!(s.n, 2);
    assert_eq!(s.levels[0], (1, false));

    let r1 = RingCtx::standard(&k, 1);
    let x1 = LimitElement::polynomial(Poly::var(&r1, 0)).unwrap();
    assert_eq!(regseq_stabilization(std::slice::from_ref(&x1), 4).unwrap().n, 1);
    assert!(matches!(regseq_stabilization(&[x1.clone(), x1], 4), Err(Error::NotFound(4))));
}

#[test]
fn specialize_examples() {
    let k = q();
    let r = fam(&k, 2);
    let f = r.parse("t*x1^2 + x2^2").unwrap();
    let y = SpecPoint::from_i64(&k, &[0]);
    assert_eq!(specialize(&f, &y).unwrap().to_string(), "x2^2");

    let f3 = Field::prime(3).unwrap();
    let r3 = FamilyRing::new(&f3, &["t"], &[1, 1]).unwrap();
    let f = r3.parse("x1 + t*x2").unwrap();
    let y = SpecPoint::from_i64(&f3, &[1]);
    let expected = Poly::parse(&fibre_ring(r3.ring(), &y).unwrap(), "x1+x2").unwrap();
    assert_eq!(specialize(&f, &y).unwrap(), expected);

    let f5 = Field::prime(5).unwrap();
    let r5 = FamilyRing::new(&f5, &["t"], &[1]).unwrap();
    let phi = GradedMap::cyclic(r5.ring(), &[r5.parse("t*x1").unwrap()]).unwrap();
    let y = SpecPoint::from_i64(&f5, &[2]);
    let s = specialize_map(&phi, &y).unwrap();
    assert_eq!(s.entry(0, 0).to_string(), "2*x1");

    // F3 parameters cannot be sent into a field of characteristic 5
    let y = SpecPoint::from_i64(&f5, &[1]);
    assert!(matches!(specialize(&f, &y), Err(Error::CharacteristicMismatch)));
    // F3 into F9 is allowed
    let f9 = Field::new(FieldDescriptor::ExtField { p: 3, e: 2, min_poly: vec![1, 0, 1] }).unwrap();
    let y = SpecPoint::from_i64(&f9, &[1]);
    assert!(specialize(&f, &y).is_ok());
}

#[test]
fn family_ring_rejects_rational_coefficients() {
    let r = fam(&q(), 2);
    let p = Poly::parse(r.ring(), "x1").unwrap();
    let inv_t = r.ring().field().inv(&r.ring().field().param(0)).unwrap();
    assert!(r.check(&p.scale(&inv_t)).is_err());
    assert!(r.parse("x1 + t^2*x2").is_ok());
}

fn regular_at(fs: &[Poly], n: usize, y: &SpecPoint) -> bool {
    let s: Vec<Poly> = fs.iter().map(|f| specialize(&f.truncate_vars(n), y).unwrap()).collect();
    is_regular_sequence(&s, RegSeqMethod::Codim).unwrap()
}

#[test]
fn regular_locus_examples() {
    let k = q();
    let r = fam(&k, 2);
    let fs = [r.parse("x1").unwrap(), r.parse("x1 + t*x2").unwrap()];
    let u = regular_locus(&fs, 2).unwrap();
    assert_eq!(u.to_string(), "t");
    let (y0, y1) = (SpecPoint::from_i64(&k, &[0]), SpecPoint::from_i64(&k, &[1]));
    assert!(u.contains(&y1).unwrap() && regular_at(&fs, 2, &y1));
    assert!(!u.contains(&y0).unwrap() && !regular_at(&fs, 2, &y0));

    let fs = [r.parse("x1").unwrap(), r.parse("x2").unwrap()];
    assert!(regular_locus(&fs, 2).unwrap().is_whole_space());

    let fs = [r.parse("x1^2").unwrap(), r.parse("t*x1*x2 + x2^2").unwrap()];
    let u = regular_locus(&fs, 2).unwrap();
    // (x1^2, x2^2 + t x1 x2) is regular for every t: nothing needs to be excluded
    for v in -3..4 {
        let y = SpecPoint::from_i64(&k, &[v]);
        assert!(regular_at(&fs, 2, &y));
        assert!(!u.contains(&y).unwrap() || regular_at(&fs, 2, &y));
    }

    let fs = [r.parse("x1^2").unwrap(), r.parse("x1*x2 + t*x2^2").unwrap()];
    let u = regular_locus(&fs, 2).unwrap();
    assert!(!u.contains(&y0).unwrap() && !regular_at(&fs, 2, &y0));
    assert!(regular_at(&fs, 2, &SpecPoint::from_i64(&k, &[5])));

    let fs = [r.parse("x1").unwrap(), r.parse("t*x1").unwrap()];
    assert!(matches!(regular_locus(&fs, 2), Err(Error::GenericNotRegular)));
    // truncation to one variable kills the second generator's independence
    let fs = [r.parse("x1").unwrap(), r.parse("x1 + t*x2").unwrap()];
    assert!(matches!(regular_locus(&fs, 1), Err(Error::GenericNotRegular)));
}

#[test]
fn constant_betti_examples() {
    let k = q();
    let r = fam(&k, 2);
    let phi = GradedMap::cyclic(r.ring(), &[r.parse("x1^2").unwrap(), r.parse("x1*x2 + t*x2^2").unwrap()]).unwrap();
    let cb = constant_betti_open(&phi).unwrap();
    assert_eq!(cb.table, table(&[(0, 0, 1), (1, 2, 2), (2, 4, 1)]));
    assert!(is_power_of_t(&cb.open));
    let y0 = SpecPoint::from_i64(&k, &[0]);
    assert!(!cb.open.contains(&y0).unwrap());
    assert_eq!(betti(&specialize_map(&phi, &y0).unwrap()).unwrap(), table(&[(0, 0, 1), (1, 2, 2), (2, 3, 1)]));
    for v in [1, 2, -1, 7] {
        let y = SpecPoint::from_i64(&k, &[v]);
        assert_eq!(betti(&specialize_map(&phi, &y).unwrap()).unwrap(), cb.table);
    }

    let r1 = fam(&k, 1);
    let phi = GradedMap::cyclic(r1.ring(), &[r1.parse("x1^2").unwrap()]).unwrap();
    let cb = constant_betti_open(&phi).unwrap();
    assert!(cb.open.is_whole_space());
    assert_eq!(cb.table, table(&[(0, 0, 1), (1, 2, 1)]));

    let phi = GradedMap::cyclic(r1.ring(), &[r1.parse("t*x1").unwrap()]).unwrap();
    let cb = constant_betti_open(&phi).unwrap();
    assert_eq!(cb.table, table(&[(0, 0, 1), (1, 1, 1)]));
    assert_eq!(cb.open.to_string(), "t");
    assert_eq!(betti(&specialize_map(&phi, &y0).unwrap()).unwrap(), table(&[(0, 0, 1)]));
    let json = serde_json::to_value(&cb).unwrap();
    assert_eq!(json["open"], "t");
    assert_eq!(json["method"], "traced-specialization");
}
