use std::collections::BTreeSet;

use quadriclab_core::exactalg::{Field, PolyMatrix, PolyRing, Scalar, ScalarMatrix};
use quadriclab_core::fano_lines::*;
use quadriclab_core::quadric_family::{random_symmetric_of_corank, QuadricFamily};
use quadriclab_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn running() -> QuadricFamily {
    QuadricFamily::from_strings(
        "running",
        Field::Rational,
        &["y1", "y2", "y3"],
        &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "y1", "y2"], ["0", "0", "y2", "y3"]],
    )
    .unwrap()
}

fn pt(f: &Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

#[test]
fn predicted_counts_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = BTreeSet::new();
    for p in [3u64, 5, 7] {
        let f = Field::prime(p).unwrap();
        for corank in 0..3 {
            for _ in 0..12 {
                let a = random_symmetric_of_corank(&mut rng, &f, corank);
                let fiber = classify_fiber(&a).unwrap();
                let rational = fiber.components_rational();
                let expected = predicted_line_count(fiber.tag, rational, p).unwrap();
                let got = enumerate_lines_fp(&a).unwrap();
                assert_eq!(got.count as u64, expected, "p={p} corank={corank} tag={:?} rational={rational}", fiber.tag);
                seen.insert((fiber.tag, rational));
            }
        }
    }
    // every row of the table was exercised
    assert_eq!(seen.len(), 5, "{seen:?}");
}

#[test]
fn plucker_points_satisfy_relation_and_are_distinct() {
    let f = Field::prime(5).unwrap();
    let e = enumerate_lines_fp(&ScalarMatrix::identity(&f, 4)).unwrap();
    let set: BTreeSet<_> = e.plucker.iter().collect();
    assert_eq!(set.len(), e.count);
    for pl in &e.plucker {
        let s: [Scalar; 6] = pl.map(|x| f.from_i64(x as i64));
        assert!(plucker_relation(&s).is_zero());
    }
}

#[test]
fn enumeration_rejects_large_primes() {
    let f = Field::prime(17).unwrap();
    assert!(matches!(enumerate_lines_fp(&ScalarMatrix::identity(&f, 4)), Err(Error::Validation(_))));
}

/// Points of the chart scheme over `F_p` are exactly the enumerated lines with nonzero chart coordinate.
#[test]
fn chart_points_match_enumeration() {
    let p = 5u64;
    let f = Field::prime(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for corank in 0..3 {
        let a = random_symmetric_of_corank(&mut rng, &f, corank);
        let lines = enumerate_lines_fp(&a).unwrap();
        let ring = PolyRing::new(f.clone(), vec![]);
        let pa = PolyMatrix::from_scalar(&ring, &a);
        for chart in 0..6 {
            let sec = fiber_equations(&pa, chart).unwrap();
            let mut count = 0;
            for code in 0..p.pow(4) {
                let b: Vec<Scalar> = (0..4).map(|k| f.from_i64((code / p.pow(k)) as i64 % p as i64)).collect();
                if sec.entries.iter().all(|e| e.eval(&b).is_zero()) {
                    count += 1;
                }
            }
            let expected = lines.plucker.iter().filter(|pl| pl[chart] != 0).count();
            assert_eq!(count, expected, "corank {corank} chart {chart}");
        }
    }
}

#[test]
fn smooth_fiber_scheme_is_a_curve() {
    // Jacobian of (s11, s12, s22) in the chart variables has rank 3 at every point: dimension 4 - 3 = 1
    let f = Field::prime(5).unwrap();
    let ring = PolyRing::new(f.clone(), vec![]);
    let sec = fiber_equations(&PolyMatrix::identity(&ring, 4), 0).unwrap();
    let mut found = 0;
    for code in 0..625u64 {
        let b: Vec<Scalar> = (0..4).map(|k| f.from_i64((code / 5u64.pow(k)) as i64 % 5)).collect();
        if !sec.entries.iter().all(|e| e.eval(&b).is_zero()) {
            continue;
        }
        found += 1;
        let jac: Vec<Vec<Scalar>> = sec.entries.iter().map(|e| (0..4).map(|k| e.partial(k).eval(&b)).collect()).collect();
        assert_eq!(ScalarMatrix::from_rows(&f, jac).rank(), 3);
    }
    assert!(found > 0);
}

#[test]
fn family_chart_equations_specialize() {
    let fam = running();
    let sec = fiber_equations(fam.matrix(), 0).unwrap();
    assert_eq!(sec.ring.nvars(), 7);
    let s: Vec<String> = sec.entries.iter().map(ToString::to_string).collect();
    assert_eq!(s[0], "y1*b11^2 + 2*y2*b11*b12 + y3*b12^2 + 1");
    let last = fiber_equations(fam.matrix(), 5).unwrap();
    // chart 34 with rows (b11, b12, 1, 0), (b21, b22, 0, 1)
    assert_eq!(last.entries[1].to_string(), "b11*b21 + b12*b22 + y2");
    assert!(fiber_equations(fam.matrix(), 6).is_err());
    assert_eq!(parse_chart("34").unwrap(), 5);
    assert!(parse_chart("31").is_err());
}

#[test]
fn vertex_report_at_origin() {
    let fam = running();
    let q = Field::Rational;
    let r = vertex_and_planes_report(&fam, &pt(&q, &[0, 0, 0]), PlaneSign::Plus).unwrap();
    assert_eq!(r.d.as_deref(), Some("-1"));
    assert_eq!(r.field, "Q(sqrt(-1))");
    assert_eq!(r.w0, vec![vec!["0", "0", "1", "0"], vec!["0", "0", "0", "1"]]);
    assert_eq!(r.vertex_plucker, vec!["0", "0", "0", "0", "0", "1"]);
    assert_eq!(r.kappa_rank, 3);
    assert_eq!(r.w_plus.gr23_charts.len(), 3);
    assert_eq!(vertex_and_planes_report(&fam, &pt(&q, &[1, 0, 1]), PlaneSign::Minus), Err(Error::WrongCorank { expected: 2, found: 0 }));
    assert_eq!(vertex_and_planes_report(&fam, &pt(&q, &[1, 0, 0]), PlaneSign::Minus), Err(Error::WrongCorank { expected: 2, found: 1 }));
}

#[test]
fn split_planes_over_ground_field() {
    let fam = QuadricFamily::from_strings(
        "split",
        Field::Rational,
        &["y1", "y2", "y3"],
        &[["0", "1/2", "0", "0"], ["1/2", "0", "0", "0"], ["0", "0", "y1", "y2"], ["0", "0", "y2", "y3"]],
    )
    .unwrap();
    let q = Field::Rational;
    let r = vertex_and_planes_report(&fam, &pt(&q, &[0, 0, 0]), PlaneSign::Minus).unwrap();
    assert_eq!(r.d, None);
    assert_eq!(r.field, "Q");
    let fiber = classify_fiber(&fam.matrix_at(&pt(&q, &[0, 0, 0])).unwrap()).unwrap();
    let planes = fiber.planes.unwrap();
    // the extracted planes are the hyperplanes x1 = 0 and x2 = 0
    for (w, zero_coord) in [(&planes.w_plus, 0), (&planes.w_minus, 1)] {
        assert!(w.iter().all(|v| v[zero_coord].is_zero()));
        assert_eq!(ScalarMatrix::from_rows(&q, w.clone()).rank(), 3);
    }
}

#[test]
fn conjugate_planes_over_fp_extension() {
    // -1 is a non-square mod 7
    let f = Field::prime(7).unwrap();
    let a = ScalarMatrix::diagonal(&f, &pt(&f, &[1, 1, 0, 0]));
    let fiber = classify_fiber(&a).unwrap();
    let planes = fiber.planes.as_ref().unwrap();
    assert_eq!(planes.d, Some(f.from_i64(-1)));
    assert!(!fiber.components_rational());
    assert_eq!(enumerate_lines_fp(&a).unwrap().count, 1);
    // over F_5, -1 = 4 is a square
    let f5 = Field::prime(5).unwrap();
    let b = ScalarMatrix::diagonal(&f5, &pt(&f5, &[1, 1, 0, 0]));
    assert!(classify_fiber(&b).unwrap().components_rational());
    assert_eq!(enumerate_lines_fp(&b).unwrap().count, 2 * 31 - 1);
}
