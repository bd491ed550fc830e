use std::time::Instant;

use proptest::prelude::*;
use quadriclab_core::exactalg::{Field, Scalar};
use quadriclab_core::fano_lines::{classify_fiber, PlaneSign};
use quadriclab_core::homcx::cohomology::{euler_characteristic, f1_riemann_roch, serre_duality_holds};
use quadriclab_core::homcx::complex::DEFAULT_SAMPLE_PRIME;
use quadriclab_core::homcx::*;
use quadriclab_core::quadric_family::QuadricFamily;
use quadriclab_core::Error;

fn running() -> QuadricFamily {
    QuadricFamily::from_strings(
        "running",
        Field::Rational,
        &["y1", "y2", "y3"],
        &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "y1", "y2"], ["0", "0", "y2", "y3"]],
    )
    .unwrap()
}

fn split() -> QuadricFamily {
    QuadricFamily::from_strings(
        "split",
        Field::Rational,
        &["y1", "y2", "y3"],
        &[["0", "1/2", "0", "0"], ["1/2", "0", "0", "0"], ["0", "0", "y1", "y2"], ["0", "0", "y2", "y3"]],
    )
    .unwrap()
}

fn pt(f: &Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

#[test]
fn koszul_symbolic_identities() {
    let cx = build_koszul(&running(), 0).unwrap();
    assert_eq!(cx.ranks, vec![1, 3, 3, 1]);
    assert_eq!(cx.ring.nvars(), 7);
    assert!(cx.shapes_consistent());
    assert_eq!(cx.euler_characteristic(), 0);
    assert_eq!(cx.d_squared_witness().unwrap(), None);
    assert_eq!(cx.homotopy_witness().unwrap(), None);
}

#[test]
fn clifford_symbolic_identities_all_parities() {
    for fam in [running(), split()] {
        for k in 0..4 {
            let cx = build_clifford_resolution(&fam, 0, k).unwrap();
            assert_eq!(cx.ranks, vec![8, 16, 16, 8]);
            assert_eq!(cx.d_squared_witness().unwrap(), None, "k={k}");
            assert_eq!(cx.homotopy_witness().unwrap(), None, "k={k}");
            let f = filtration_check(&cx).unwrap();
            assert!(f.block_triangular);
            let even = if k % 2 == 0 { vec![1, 6, 1] } else { vec![4, 4] };
            assert_eq!(f.term_blocks[3], even);
        }
    }
}

#[test]
fn koszul_homology_at_points() {
    let t = Instant::now();
    for chart in 0..6 {
        let c = certify_complex(&running(), chart, ComplexKind::Koszul, 25, 42, DEFAULT_SAMPLE_PRIME).unwrap();
        assert!(c.passed, "chart {chart}");
        assert_eq!(c.points.len(), 50);
        for p in &c.points {
            if p.on_m {
                assert_eq!(p.local_homology, vec![0, 0, 0, 1]);
                // all differentials vanish on M: fiberwise Tor is the full exterior algebra
                assert_eq!(p.fiber_homology, vec![1, 3, 3, 1]);
            } else {
                assert_eq!(p.fiber_homology, vec![0, 0, 0, 0]);
            }
        }
    }
    eprintln!("koszul certification: {:?}", t.elapsed());
}

#[test]
fn clifford_homology_at_points() {
    let t = Instant::now();
    for k in 0..4 {
        let c = certify_complex(&running(), 0, ComplexKind::Clifford { k }, 25, 42, DEFAULT_SAMPLE_PRIME).unwrap();
        assert!(c.passed, "k={k}");
        assert_eq!(c.generic_map_ranks, vec![8, 8, 8]);
        for p in c.points.iter().filter(|p| p.on_m) {
            assert_eq!(p.local_homology, vec![0, 0, 0, 2]);
            assert_eq!(p.fiber_homology, vec![2, 6, 6, 2]);
            assert_eq!(p.last_spot_model, Some(true));
        }
    }
    eprintln!("clifford certification: {:?}", t.elapsed());
}

#[test]
fn certification_is_seeded() {
    let a = certify_complex(&split(), 3, ComplexKind::Clifford { k: 1 }, 5, 9, 13).unwrap();
    let b = certify_complex(&split(), 3, ComplexKind::Clifford { k: 1 }, 5, 9, 13).unwrap();
    assert_eq!(a, b);
    assert!(a.passed);
    let c = certify_complex(&split(), 3, ComplexKind::Clifford { k: 1 }, 5, 10, 13).unwrap();
    assert_ne!(a.points, c.points);
}

#[test]
fn complex_json_lists_ranks_and_matrices() {
    let cx = build_koszul(&running(), 0).unwrap();
    let v = cx.to_json();
    assert_eq!(v["ranks"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(v["differentials"][0].as_array().unwrap().len(), 3);
    assert_eq!(v["sections"][0], "y1*b11^2 + 2*y2*b11*b12 + y3*b12^2 + 1");
}

#[test]
fn plane_restrictions() {
    let q = Field::Rational;
    let fam = split();
    let fiber = classify_fiber(&fam.matrix_at(&pt(&q, &[0, 0, 0])).unwrap()).unwrap();
    for k in 0..4 {
        for which in [PlaneSign::Plus, PlaneSign::Minus] {
            let r = restriction_type_on_plane(k, &fiber, which).unwrap();
            assert_eq!(r.splitting, [0, 1]);
            assert!(r.passed, "k={k} {which:?}");
            assert_eq!(r.cocycles.len(), 6);
            assert!(r.cocycles.iter().all(|c| c.degree == 1));
        }
    }
    // planes over Q(sqrt(-1)) for the running family
    let fr = classify_fiber(&running().matrix_at(&pt(&q, &[0, 0, 0])).unwrap()).unwrap();
    assert!(restriction_type_on_plane(0, &fr, PlaneSign::Plus).unwrap().passed);
    let smooth = classify_fiber(&running().matrix_at(&pt(&q, &[1, 0, 1])).unwrap()).unwrap();
    assert_eq!(restriction_type_on_plane(1, &smooth, PlaneSign::Plus), Err(Error::WrongCorank { expected: 2, found: 0 }));
}

#[test]
fn conic_restrictions() {
    for k in 0..4 {
        let c = restriction_type_on_conic(k).unwrap();
        assert!(c.passed, "k={k}");
        assert_eq!(c.splitting, [1, 1]);
        assert_eq!(c.g_degree, 2);
    }
}

#[test]
fn pushforward_proxies() {
    let q = Field::Rational;
    let smooth = pushforward_rank_proxy(&running(), &pt(&q, &[1, 0, 1]), 0).unwrap();
    assert_eq!(smooth.chi_sum, 8);
    assert!(smooth.chi_matches_rank_bk && smooth.twisted_vanishes && smooth.splitting_certified);
    let sm = smooth.split_model.unwrap();
    assert_eq!(sm.twisted_h0_sum, 2);
    assert!(sm.contradiction);
    for fam in [running(), split()] {
        for k in [0, 1] {
            let r = pushforward_rank_proxy(&fam, &pt(&q, &[0, 0, 0]), k).unwrap();
            assert!(r.splitting_certified, "k={k}");
            assert_eq!((r.h0_sum, r.chi_sum), (8, 8));
            assert_eq!(r.gluing.as_ref().unwrap().rank, 2);
            assert_eq!(r.glued_h0, 6);
            assert_eq!(r.twisted_h0_sum, 2);
            assert_eq!(r.twisted_gluing.as_ref().unwrap().rank, 2);
            assert_eq!(r.twisted_glued_h0, 0);
            assert!(r.twisted_vanishes);
        }
    }
    assert_eq!(pushforward_rank_proxy(&running(), &pt(&q, &[1, 0, 0]), 0).unwrap_err(), Error::WrongCorank { expected: 2, found: 1 });
}

#[test]
fn fixed_tables() {
    let e = exceptionality_table();
    assert_eq!(e.ext, vec![1, 0, 0, 0, 0]);
    assert_eq!(e.contributions[0], vec![1, 0, 0]);
    assert_eq!(e.contributions[1], vec![0, 0, 0]);
    let a = adjunction_checks().unwrap();
    assert_eq!(a.omega_m_on_sigma, -1);
    assert_eq!(a.omega_m_plus_on_sigma_tilde, (-1, -1));
    assert!(a.passed);
    let b = bplus_restriction_type();
    assert_eq!(b.pushforward_degrees, vec![0, 1, -1, 0]);
    assert_eq!(b.solutions, vec![Vec::<i64>::new()]);
}

/// Monomials `x^i y^j z^k` of degree `a` vanishing to order `m` at `[0:0:1]`.
fn plane_curves(a: i64, m: i64) -> u64 {
    if a < 0 {
        return 0;
    }
    let mut n = 0;
    for i in 0..=a {
        for j in 0..=(a - i) {
            if i + j >= m {
                n += 1;
            }
        }
    }
    n
}

fn monomials(vars: u32, deg: i64) -> u64 {
    if deg < 0 {
        return 0;
    }
    if vars == 1 {
        return 1;
    }
    (0..=deg).map(|d| monomials(vars - 1, deg - d)).sum()
}

#[test]
fn h0_matches_monomial_counts() {
    for a in -4..=6 {
        assert_eq!(lb_cohomology(VarietyTag::P2, &DivisorClass::new(&[a])).unwrap()[0], monomials(3, a));
        assert_eq!(lb_cohomology(VarietyTag::P3, &DivisorClass::new(&[a])).unwrap()[0], monomials(4, a));
        for b in -6..=6 {
            let h = lb_cohomology(VarietyTag::F1, &DivisorClass::new(&[a, b])).unwrap();
            // l is a fixed component of a·h + b·l when b > 0
            assert_eq!(h[0], plane_curves(a, (-b).max(0)), "a={a} b={b}");
            let pp = lb_cohomology(VarietyTag::P2xP1, &DivisorClass::new(&[a, b])).unwrap();
            assert_eq!(pp[0], monomials(3, a) * monomials(2, b));
        }
    }
}

#[test]
fn riemann_roch_on_f1() {
    for a in -5..=5 {
        for b in -5..=5 {
            let h = lb_cohomology(VarietyTag::F1, &DivisorClass::new(&[a, b])).unwrap();
            assert_eq!(euler_characteristic(&h), f1_riemann_roch(a, b), "a={a} b={b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn serre_duality(a in -12i64..12, b in -12i64..12) {
        for v in VarietyTag::ALL {
            let d = if v.class_len() == 1 { DivisorClass::new(&[a]) } else { DivisorClass::new(&[a, b]) };
            prop_assert!(serre_duality_holds(v, &d).unwrap(), "{:?} {:?}", v, d);
        }
    }

    #[test]
    fn kunneth_euler_characteristic(a in -8i64..8, b in -8i64..8) {
        let chi = |v, d: &[i64]| euler_characteristic(&lb_cohomology(v, &DivisorClass::new(d)).unwrap());
        prop_assert_eq!(chi(VarietyTag::P1xP1, &[a, b]), chi(VarietyTag::P1, &[a]) * chi(VarietyTag::P1, &[b]));
        prop_assert_eq!(chi(VarietyTag::P2xP1, &[a, b]), chi(VarietyTag::P2, &[a]) * chi(VarietyTag::P1, &[b]));
        // χ(ℙ², 𝓞(a)) = (a+1)(a+2)/2 for every a
        prop_assert_eq!(chi(VarietyTag::P2, &[a]), (a + 1) * (a + 2) / 2);
    }
}
