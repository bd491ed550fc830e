use std::time::Instant;

use quadriclab_core::clifford::*;
use quadriclab_core::exactalg::{Field, MultiPoly, PolyMatrix, PolyRing, Scalar, ScalarMatrix};
use quadriclab_core::quadric_family::{random_symmetric_of_corank, QuadricFamily};
use quadriclab_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diag(field: &Field, d: [i64; 4]) -> PolyMatrix {
    point_form(&ScalarMatrix::diagonal(field, &d.map(|x| field.from_i64(x))))
}

fn running() -> QuadricFamily {
    QuadricFamily::from_strings(
        "running",
        Field::Rational,
        &["y1", "y2", "y3"],
        &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "y1", "y2"], ["0", "0", "y2", "y3"]],
    )
    .unwrap()
}

/// (1/24) Σ_σ sgn(σ) e_σ1 e_σ2 e_σ3 e_σ4 computed in the full algebra.
fn antisymmetrized_top(full: &CliffordAlgebra) -> Vec<MultiPoly> {
    let ring = full.ring().clone();
    let mut acc = vec![MultiPoly::zero(&ring); 16];
    let perms = permutations(4);
    for p in &perms {
        let mut w = full.generator(p[0]);
        for &g in &p[1..] {
            w = full.mul(&w, &full.generator(g));
        }
        let s = sign(p);
        for (a, b) in acc.iter_mut().zip(&w) {
            *a = if s > 0 { &*a + b } else { &*a - b };
        }
    }
    let inv = ring.field().from_i64(24).inv();
    acc.iter().map(|p| p.scale(&inv)).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

#[test]
fn symbolic_algebra_is_associative_and_central_element_matches_oracle() {
    let t = Instant::now();
    let (_, a) = generic_symmetric(&Field::Rational);
    let (alg, odd) = build_clifford_pair(&a).unwrap();
    assert!(alg.associativity_witness().is_none());
    assert!(alg.is_unital());
    assert!(odd.bimodule_witness().is_none());
    assert!(odd.balanced_witness().is_none());
    let c = center(&alg).unwrap();
    assert_eq!(c.unit, 1);
    assert_eq!(c.c, a.det().unwrap());
    // independent oracle: antisymmetrized product of the four generators
    let full = CliffordAlgebra::new(&a).unwrap();
    let top = antisymmetrized_top(&full);
    for (k, &mask) in EVEN_BASIS.iter().enumerate() {
        let want = if k == 0 { &top[0] } else { &top[mask as usize] };
        assert_eq!(&c.z[k], want, "coordinate {}", EVEN_NAMES[k]);
    }
    for &m in &ODD_BASIS {
        assert!(top[m as usize].is_zero());
    }
    eprintln!("symbolic clifford checks: {:?}", t.elapsed());
}

#[test]
fn random_specializations_are_associative_with_central_z() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = Field::Rational;
    for _ in 0..10 {
        let m = (0..4)
            .map(|_| (0..4).map(|_| quadriclab_core::quadric_family::random_scalar(&mut rng, &q)).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        let mut s = ScalarMatrix::from_rows(&q, m);
        for i in 0..4 {
            for j in 0..i {
                let v = s.get(j, i).clone();
                s.set(i, j, v);
            }
        }
        let alg = build_even_clifford(&point_form(&s)).unwrap();
        assert!(alg.associativity_witness().is_none());
        let c = center(&alg).unwrap();
        assert_eq!(c.c.constant_value().unwrap(), s.det().unwrap());
    }
}

#[test]
fn asymmetric_hook_breaks_associativity() {
    let q = Field::Rational;
    let mut s = ScalarMatrix::identity(&q, 4);
    s.set(0, 1, q.from_i64(1));
    let a = point_form(&s);
    assert!(matches!(build_even_clifford(&a), Err(Error::Validation(_))));
    let alg = build_even_clifford_asymmetric_hook(&a).unwrap();
    assert!(alg.associativity_witness().is_some());
}

#[test]
fn radical_dimensions_follow_corank() {
    let q = Field::Rational;
    let fam = running();
    let dims: Vec<usize> = [[1, 0, 1], [1, 0, 0], [0, 0, 0]]
        .iter()
        .map(|p| semisimple_type_at(&fam, &p.map(|x| q.from_i64(x))).unwrap().radical_dim)
        .collect();
    // oracle: dim B0 - dim of the even Clifford algebra of the nondegenerate part, 8 - 2^(3-r)
    assert_eq!(dims, vec![0, 4, 6]);
    let t = semisimple_type_at(&fam, &[q.zero(), q.zero(), q.zero()]).unwrap();
    assert_eq!(t.center_fiber, CenterFiber::DualNumbers);
    let t1 = semisimple_type_of(&build_even_clifford(&diag(&q, [1, 1, 1, 0])).unwrap(), 1).unwrap();
    assert_eq!(t1.semisimple_dim, 4);
    let f5 = Field::prime(5).unwrap();
    let t0 = semisimple_type_of(&build_even_clifford(&diag(&f5, [1, 1, 1, 1])).unwrap(), 0).unwrap();
    assert_eq!(t0.radical_dim, 0);
    assert_eq!(t0.center_dim, 2);
    assert_eq!(t0.block_dims, Some([4, 4]));
    assert_eq!(t0.blocks_central_simple, Some(true));
}

#[test]
fn random_radicals_over_fp() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [3u64, 5, 7] {
        let f = Field::prime(p).unwrap();
        for r in 0..3usize {
            for _ in 0..3 {
                let s = random_symmetric_of_corank(&mut rng, &f, r);
                let alg = build_even_clifford(&point_form(&s)).unwrap();
                let t = semisimple_type_of(&alg, r).unwrap();
                assert_eq!(t.radical_dim, 8 - (1usize << (3 - r)), "p={p} r={r}");
            }
        }
    }
}

#[test]
fn periodicity_at_points() {
    let t = Instant::now();
    let q = Field::Rational;
    for (f, d) in [(q.clone(), [1, 1, 1, 1]), (Field::prime(7).unwrap(), [1, 1, 1, 5])] {
        let (alg, odd) = build_clifford_pair(&diag(&f, d)).unwrap();
        let r = verify_periodicity(&alg, &odd).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.balanced_dim, 8);
        assert_eq!(r.hom_dim, Some(8));
    }
    let (alg, odd) = build_clifford_pair(&diag(&q, [1, 1, 1, 0])).unwrap();
    assert_eq!(verify_periodicity(&alg, &odd), Err(Error::DegeneratePoint));
    eprintln!("point periodicity: {:?}", t.elapsed());
}

#[test]
fn periodicity_at_generic_point() {
    let t = Instant::now();
    let fam = running();
    let (_, odd) = build_clifford_pair(fam.matrix()).unwrap();
    let q = Field::Rational;
    let pts: Vec<Vec<Scalar>> = vec![[1, 0, 1], [2, 1, 3]].into_iter().map(|p: [i64; 3]| p.map(|x| q.from_i64(x)).to_vec()).collect();
    let r = verify_periodicity_generic(&odd, &pts).unwrap();
    assert!(r.holds, "{r:?}");
    eprintln!("generic periodicity: {:?}", t.elapsed());
    let _ = PolyRing::new(q, vec![]);
}
