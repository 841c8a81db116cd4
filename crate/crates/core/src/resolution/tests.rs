use std::collections::HashMap;

use super::*;
use crate::field::FieldElem;
use crate::ideal::{is_regular_sequence, series_expansion, RegSeqMethod};
use crate::poly::{random_homogeneous, Monomial, RingCtx};
use crate::Field;

fn ring(p: u64, n: usize) -> Ring {
    RingCtx::standard(&Field::prime(p).unwrap(), n)
}

fn polys(r: &Ring, xs: &[&str]) -> Vec<Poly> {
    xs.iter().map(|s| Poly::parse(r, s).unwrap()).collect()
}

fn table(entries: &[(usize, u32, usize)]) -> BettiTable {
    let mut t = BettiTable::default();
    for &(i, j, c) in entries {
        t.add(i, j, c);
    }
    t
}

#[test]
fn syzygy_examples() {
    let r = ring(7, 3);
    let phi = GradedMap::cyclic(&r, &polys(&r, &["x1*x2", "x1*x3"])).unwrap();
    let s = syzygies(&phi).unwrap();
    assert_eq!(s.source().twists(), &[3]);
    let col = &s.columns()[0];
    let c = r.field().inv(&col[0].coeff(&Monomial::var(3, 2))).unwrap();
    assert_eq!(col[0].scale(&c), Poly::parse(&r, "x3").unwrap());
    assert_eq!(col[1].scale(&c), Poly::parse(&r, "-x2").unwrap());
    let s = syzygies(&GradedMap::cyclic(&r, &polys(&r, &["x1", "x2"])).unwrap()).unwrap();
    assert_eq!(s.source().twists(), &[2]);
    let id = GradedMap::new(FreeModule::new(&r, vec![0]), FreeModule::new(&r, vec![0]), vec![polys(&r, &["1"])]).unwrap();
    assert_eq!(syzygies(&id).unwrap().source().rank(), 0);
}

#[test]
fn resolution_examples() {
    let r = ring(5, 3);
    let b = betti_of_quotient(&polys(&r, &["x1", "x2"])).unwrap();
    assert_eq!(b, table(&[(0, 0, 1), (1, 1, 2), (2, 2, 1)]));
    let b = betti_of_quotient(&polys(&r, &["x1^2", "x2^2"])).unwrap();
    assert_eq!(b, table(&[(0, 0, 1), (1, 2, 2), (2, 4, 1)]));
    let pres = GradedMap::cyclic(&r, &polys(&r, &["x1*x2", "x1*x3"])).unwrap();
    let res = minimal_free_resolution(&pres).unwrap();
    let twists: Vec<Vec<u32>> = res.modules().iter().map(|f| f.twists().to_vec()).collect();
    assert_eq!(twists, vec![vec![0], vec![2, 2], vec![3]]);
    assert_eq!(res.betti(), table(&[(0, 0, 1), (1, 2, 2), (2, 3, 1)]));
    assert_eq!(projective_dimension(&pres).unwrap(), 2);
    assert_eq!(projective_dimension(&GradedMap::cyclic(&r, &polys(&r, &["x1", "x2", "x3"])).unwrap()).unwrap(), 3);
    let free = GradedMap::new(FreeModule::new(&r, vec![]), FreeModule::new(&r, vec![0, 1]), vec![]).unwrap();
    assert_eq!(projective_dimension(&free).unwrap(), 0);
    assert_eq!(betti(&free).unwrap(), table(&[(0, 0, 1), (0, 1, 1)]));
}

#[test]
fn non_minimal_presentation_is_pruned() {
    let r = ring(3, 2);
    // R^2 / ((1, x1), (0, x2^2)) is R / (x2^2) shifted to the second generator
    let src = FreeModule::new(&r, vec![0, 2]);
    let tgt = FreeModule::new(&r, vec![0, 1]);
    let cols = vec![polys(&r, &["1", "0"]), polys(&r, &["0", "x2"])];
    let phi = GradedMap::new(src, tgt, cols).unwrap();
    let res = minimal_free_resolution(&phi).unwrap();
    assert_eq!(res.betti(), table(&[(0, 1, 1), (1, 2, 1)]));
    // e0 = -x1 e1 in the cokernel, leaving R / (x2^2) on e1
    let cols = vec![polys(&r, &["1", "x1"]), polys(&r, &["0", "x2^2"])];
    let src = FreeModule::new(&r, vec![1, 2]);
    let phi = GradedMap::new(src, FreeModule::new(&r, vec![1, 0]), cols).unwrap();
    let res = minimal_free_resolution(&phi).unwrap();
    assert_eq!(res.betti(), table(&[(0, 0, 1), (1, 2, 1)]));
    assert!(res.is_complex().unwrap());
}

#[test]
fn subalgebra_examples() {
    let k = Field::prime(3).unwrap();
    let y = RingCtx::new(
        k.clone(),
        vec![crate::poly::Var { name: "Y1".into(), degree: 1 }, crate::poly::Var { name: "Y2".into(), degree: 1 }],
    )
    .unwrap();
    let b = betti_over_subalgebra(&polys(&y, &["Y1^2", "Y1*Y2"]), &[1, 1]).unwrap();
    assert_eq!(b, table(&[(0, 0, 1), (1, 2, 2), (2, 3, 1)]));
    let b = betti_over_subalgebra(&polys(&y, &["Y1"]), &[1, 1]).unwrap();
    assert_eq!(b, table(&[(0, 0, 1), (1, 1, 1)]));
    let w = RingCtx::weighted(&k, &[2, 3]);
    let b = betti_over_subalgebra(&polys(&w, &["x1", "x2"]), &[2, 3]).unwrap();
    assert_eq!(b, table(&[(0, 0, 1), (1, 2, 1), (1, 3, 1), (2, 5, 1)]));
    assert_eq!(betti_over_subalgebra(&polys(&w, &["x1"]), &[1, 1]).unwrap_err(), Error::RingMismatch);
}

#[test]
fn text_and_csv_layout() {
    let t = table(&[(0, 0, 1), (1, 2, 2), (2, 3, 1)]);
    assert_eq!(t.to_text(true), "       0 1 2\ntotal: 1 2 1\n    0: 1 . .\n    1: . 2 1\n");
    assert_eq!(t.to_csv(), "i,0,1,2,3\n0,1,0,0,0\n1,0,0,2,0\n2,0,0,0,1\n");
    assert_eq!(t.canonical(), "0,0:1;1,2:2;2,3:1");
    assert_eq!(t.hash().len(), 16);
}

fn as_u64(e: &FieldElem) -> u64 {
    match e {
        FieldElem::Mod(v) => *v,
        _ => unreachable!("prime field only"),
    }
}

/// Rank of a dense matrix modulo p.
fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    let ncols = rows.first().map_or(0, |r| r.len());
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let f = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * f % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let m = rows[r][c];
                for k in 0..ncols {
                    rows[r][k] = (rows[r][k] + p * p - m * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Coordinates of a vector of polynomials in the degree-`d` basis of `⊕ R(-tw)`.
fn coords(v: &[Poly], tw: &[u32], d: u32, r: &Ring) -> Vec<u64> {
    let mut out = Vec::new();
    for (c, &t) in tw.iter().enumerate() {
        if d < t {
            continue;
        }
        for m in r.monomials_of_degree(d - t) {
            out.push(as_u64(&v[c].coeff(&m)));
        }
    }
    out
}

/// Checks, degree by degree up to `upto`, that the columns of `syz` span
/// exactly the kernel of `phi`.
fn kernel_matches_linear_algebra(phi: &GradedMap, syz: &GradedMap, upto: u32, p: u64) {
    let r = phi.ring();
    assert!(phi.compose(syz).unwrap().is_zero());
    for d in 0..=upto {
        let src = phi.source().twists();
        // image of each basis element of source_d
        let mut images = Vec::new();
        for (j, &t) in src.iter().enumerate() {
            if d < t {
                continue;
            }
            for m in r.monomials_of_degree(d - t) {
                let v: Vec<Poly> = phi.columns()[j].iter().map(|e| e.mul_monomial(&m, &r.field().one())).collect();
                images.push(coords(&v, phi.target().twists(), d, r));
            }
        }
        let dim_src = images.len();
        let rank = if images.is_empty() || images[0].is_empty() { 0 } else { rank_mod(images, p) };
        let kernel_dim = dim_src - rank;
        let mut span = Vec::new();
        for (c, col) in syz.columns().iter().enumerate() {
            let t = syz.source().twists()[c];
            if d < t {
                continue;
            }
            for m in r.monomials_of_degree(d - t) {
                let v: Vec<Poly> = col.iter().map(|e| e.mul_monomial(&m, &r.field().one())).collect();
                span.push(coords(&v, src, d, r));
            }
        }
        let got = if span.is_empty() || span[0].is_empty() { 0 } else { rank_mod(span, p) };
        assert_eq!(got, kernel_dim, "degree {d}");
    }
}

#[test]
fn syzygies_agree_with_graded_linear_algebra() {
    for (p, n) in [(2u64, 3usize), (3, 3), (5, 4)] {
        let r = ring(p, n);
        for seed in 0..6u64 {
            let fs: Vec<Poly> = (0..3).map(|i| random_homogeneous(&r, 1 + (i as u32 + seed as u32) % 2 + 1, seed * 11 + i).unwrap()).collect();
            let phi = GradedMap::cyclic(&r, &fs).unwrap();
            let s = syzygies(&phi).unwrap();
            kernel_matches_linear_algebra(&phi, &s, 6, p);
            let s2 = syzygies(&s).unwrap();
            kernel_matches_linear_algebra(&s, &s2, 6, p);
        }
    }
}

#[test]
fn resolutions_are_minimal_complexes_with_right_hilbert_series() {
    for (p, n) in [(2u64, 3usize), (3, 4)] {
        let r = ring(p, n);
        for seed in 0..8u64 {
            let fs: Vec<Poly> = (0..3).map(|i| random_homogeneous(&r, 2, seed * 5 + i + 1000).unwrap()).collect();
            let pres = GradedMap::cyclic(&r, &fs).unwrap();
            let res = minimal_free_resolution(&pres).unwrap();
            assert!(res.is_complex().unwrap());
            assert!(res.has_no_unit_entries());
            let b = res.betti();
            let direct = cokernel_hilbert_numerator(&pres).unwrap();
            assert_eq!(series_expansion(&r, &b.alternating_numerator(), 10), series_expansion(&r, &direct, 10));
            assert!(res.length() <= n);
        }
    }
}

#[test]
fn koszul_betti_for_regular_sequences() {
    let r = ring(3, 4);
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for seed in 0..30u64 {
        let len = 1 + seed as usize % 3;
        let degs: Vec<u32> = (0..len).map(|i| 1 + ((seed as u32 + i as u32) % 3)).collect();
        let fs: Vec<Poly> = degs.iter().enumerate().map(|(i, &d)| random_homogeneous(&r, d, seed * 13 + i as u64).unwrap()).collect();
        if !is_regular_sequence(&fs, RegSeqMethod::Codim).unwrap() {
            continue;
        }
        *seen.entry(len).or_default() += 1;
        let b = betti_of_quotient(&fs).unwrap();
        let mut want = BettiTable::default();
        for mask in 0u32..1 << len {
            let j: u32 = (0..len).filter(|&i| mask & (1 << i) != 0).map(|i| degs[i]).sum();
            want.add(mask.count_ones() as usize, j, 1);
        }
        assert_eq!(b, want);
    }
    assert!(seen.len() == 3);
}
