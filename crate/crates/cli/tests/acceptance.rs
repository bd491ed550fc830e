//! End-to-end acceptance suite: one PASS/FAIL line per criterion, each under its time budget.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadriclab_core::clifford::{
    build_clifford_pair, build_even_clifford, center, generic_diagonal, generic_symmetric, point_form, verify_periodicity,
    verify_periodicity_generic,
};
use quadriclab_core::exactalg::{parse_poly, Field, Scalar, ScalarMatrix};
use quadriclab_core::fano_lines::{classify_fiber, enumerate_lines_fp, predicted_line_count, FanoTag};
use quadriclab_core::homcx::cohomology::serre_duality_holds;
use quadriclab_core::homcx::complex::DEFAULT_SAMPLE_PRIME;
use quadriclab_core::homcx::{
    adjunction_checks, certify_complex, exceptionality_table, lb_cohomology, pushforward_rank_proxy, ComplexKind, DivisorClass,
    VarietyTag,
};
use quadriclab_core::quadric_family::{random_scalar, random_symmetric_of_corank, QuadricFamily};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
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

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn criterion_1() -> Check {
    let fam = running();
    let q = Field::Rational;
    let want = parse_poly("y1*y3 - y2^2", fam.ring()).map_err(err)?;
    ensure!(fam.discriminant() == want, "discriminant is {}", fam.discriminant());
    // the ten 3x3 minors contain y1, y2, y3 up to units, so the corank-2 locus is at most the origin
    let gens = fam.corank_locus_generators(2).map_err(err)?;
    ensure!(gens.len() == 10, "{} generators", gens.len());
    for v in ["y1", "y2", "y3"] {
        let y = parse_poly(v, fam.ring()).map_err(err)?;
        ensure!(gens.iter().any(|g| g == &y || g == &-&y), "{v} is not among the corank-2 generators");
    }
    let o = pt(&q, &[0, 0, 0]);
    ensure!(gens.iter().all(|g| g.eval(&o).is_zero()), "origin is not in the corank-2 locus");
    ensure!(fam.corank_at(&o).map_err(err)?.0 == 2, "corank at origin");
    ensure!(fam.kappa_at(&o).map_err(err)?.rank() == 3, "kappa not invertible");
    ensure!(fam.odp_test(&o).map_err(err)?, "odp test false");
    ensure!(fam.q_smooth_at(&o).map_err(err)?, "Q not smooth");
    ensure!(fam.m_smooth_at(&o).map_err(err)?, "M not smooth");
    Ok(())
}

/// A linear family `A0 + y1 A1 + y2 A2 + y3 A3` with `A0` of corank 2.
fn corank2_instance(rng: &mut ChaCha8Rng, f: &Field) -> QuadricFamily {
    let a0 = random_symmetric_of_corank(rng, f, 2);
    let mut terms: Vec<ScalarMatrix> = vec![a0];
    for _ in 0..3 {
        let mut s = ScalarMatrix::zeros(f, 4, 4);
        for i in 0..4 {
            for j in i..4 {
                let v = random_scalar(rng, f);
                s.set(i, j, v.clone());
                s.set(j, i, v);
            }
        }
        terms.push(s);
    }
    let names = ["", "*y1", "*y2", "*y3"];
    let entry = |i: usize, j: usize| -> String {
        terms.iter().zip(names).map(|(m, n)| format!("({}){n}", m.get(i, j))).collect::<Vec<_>>().join(" + ")
    };
    let e: Vec<[String; 4]> = (0..4).map(|i| [entry(i, 0), entry(i, 1), entry(i, 2), entry(i, 3)]).collect();
    let refs: Vec<[&str; 4]> = e.iter().map(|r| [r[0].as_str(), r[1].as_str(), r[2].as_str(), r[3].as_str()]).collect();
    QuadricFamily::from_strings("instance", f.clone(), &["y1", "y2", "y3"], &[refs[0], refs[1], refs[2], refs[3]]).unwrap()
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tested = 0;
    let mut nodes = 0;
    for p in [3u64, 5, 7] {
        let f = Field::prime(p).map_err(err)?;
        let o = pt(&f, &[0, 0, 0]);
        let mut found = 0;
        for _ in 0..400 {
            if found == 10 {
                break;
            }
            let fam = corank2_instance(&mut rng, &f);
            if !fam.q_smooth_at(&o).map_err(err)? {
                continue;
            }
            let odp = match fam.odp_test(&o) {
                Ok(b) => b,
                Err(e) => return Err(format!("odp_test failed on a corank-2 point: {e}")),
            };
            let inv = fam.kappa_at(&o).map_err(err)?.rank() == 3;
            ensure!(odp == inv, "disagreement over F_{p}: odp={odp} kappa_invertible={inv}");
            nodes += odp as usize;
            found += 1;
            tested += 1;
        }
    }
    ensure!(tested >= 20, "only {tested} instances");
    ensure!(nodes > 0 && nodes < tested, "only one side exercised: {nodes} nodes of {tested}");
    Ok(())
}

fn criterion_3() -> Check {
    let q = Field::Rational;
    let (_, a) = generic_symmetric(&q);
    let (alg, odd) = build_clifford_pair(&a).map_err(err)?;
    ensure!(alg.associativity_witness().is_none(), "symbolic associativity");
    ensure!(odd.bimodule_witness().is_none(), "bimodule axioms");
    let c = center(&alg).map_err(err)?;
    ensure!(c.unit == 1 && c.c == a.det().map_err(err)?, "z^2 = {} * det", c.unit);
    let (_, d) = generic_diagonal(&q);
    let cd = center(&build_even_clifford(&d).map_err(err)?).map_err(err)?;
    ensure!(cd.c == parse_poly("a*b*c*d", d.ring()).map_err(err)?, "diagonal z^2 = {}", cd.c);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let mut s = ScalarMatrix::zeros(&q, 4, 4);
        for i in 0..4 {
            for j in i..4 {
                let v = q.from_i64(rng.gen_range(-5..=5));
                s.set(i, j, v.clone());
                s.set(j, i, v);
            }
        }
        let alg = build_even_clifford(&point_form(&s)).map_err(err)?;
        ensure!(alg.associativity_witness().is_none(), "specialization associativity");
        let c = center(&alg).map_err(err)?;
        ensure!(c.c.constant_value() == Some(s.det().map_err(err)?), "specialized z^2");
    }
    Ok(())
}

fn criterion_4() -> Check {
    let fam = running();
    let q = Field::Rational;
    let (_, odd) = build_clifford_pair(fam.matrix()).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut points = Vec::new();
    while points.len() < 10 {
        let p: Vec<Scalar> = (0..3).map(|_| q.from_i64(rng.gen_range(-4..=4))).collect();
        if fam.corank_at(&p).map_err(err)?.0 == 0 {
            points.push(p);
        }
    }
    let g = verify_periodicity_generic(&odd, &points).map_err(err)?;
    ensure!(g.holds && g.balanced_dim == 8 && g.multiplication_rank == 8, "generic point: {g:?}");
    for p in &points {
        let (alg, odd) = build_clifford_pair(&point_form(&fam.matrix_at(p).map_err(err)?)).map_err(err)?;
        let r = verify_periodicity(&alg, &odd).map_err(err)?;
        ensure!(r.holds && r.balanced_dim == 8 && r.multiplication_rank == 8, "at {p:?}: {r:?}");
    }
    Ok(())
}

fn criterion_5() -> Check {
    let fam = running();
    let kinds = [ComplexKind::Koszul, ComplexKind::Clifford { k: 0 }, ComplexKind::Clifford { k: 1 }, ComplexKind::Clifford { k: 2 }, ComplexKind::Clifford { k: 3 }];
    for chart in 0..6 {
        for kind in kinds {
            let c = certify_complex(&fam, chart, kind, 25, 5, DEFAULT_SAMPLE_PRIME).map_err(err)?;
            let (ranks, top) = match kind {
                ComplexKind::Koszul => (vec![1, 3, 3, 1], 1),
                ComplexKind::Clifford { .. } => (vec![8, 16, 16, 8], 2),
            };
            ensure!(c.ranks == ranks, "{} ranks {:?}", c.kind, c.ranks);
            ensure!(c.d_squared_zero, "{} chart {chart}: d^2 != 0", c.kind);
            ensure!(c.points.iter().filter(|p| p.on_m).count() == 25, "on-M sample count");
            ensure!(c.points.iter().filter(|p| !p.on_m).count() == 25, "off-M sample count");
            for p in &c.points {
                if p.on_m {
                    ensure!(p.local_homology == vec![0, 0, 0, top], "{} chart {chart} at {:?}: {:?}", c.kind, p.point, p.local_homology);
                } else {
                    ensure!(p.fiber_homology.iter().all(|&h| h == 0), "{} off M at {:?}: {:?}", c.kind, p.point, p.fiber_homology);
                }
            }
            ensure!(c.passed, "{} chart {chart} certificate failed", c.kind);
        }
    }
    Ok(())
}

/// Tag read off from the number of rational lines alone.
fn tag_from_count(count: u64, p: u64) -> Option<(FanoTag, bool)> {
    [(FanoTag::TwoConics, true), (FanoTag::TwoConics, false), (FanoTag::DoubleConic, true), (FanoTag::TwoPlanes, true), (FanoTag::TwoPlanes, false)]
        .into_iter()
        .find(|&(t, r)| predicted_line_count(t, r, p) == Some(count))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for p in [3u64, 5] {
        let f = Field::prime(p).map_err(err)?;
        for n in 0..25 {
            let a = random_symmetric_of_corank(&mut rng, &f, n % 3);
            let fiber = classify_fiber(&a).map_err(err)?;
            let lines = enumerate_lines_fp(&a).map_err(err)?;
            let from_oracle = tag_from_count(lines.count as u64, p);
            ensure!(from_oracle == Some((fiber.tag, fiber.components_rational())), "F_{p}: tag {:?} but {} lines", fiber.tag, lines.count);
        }
    }
    let f3 = Field::prime(3).map_err(err)?;
    let a = split().over_field(&f3).map_err(err)?.matrix_at(&pt(&f3, &[0, 0, 0])).map_err(err)?;
    ensure!(classify_fiber(&a).map_err(err)?.tag == FanoTag::TwoPlanes, "split fiber tag");
    ensure!(enumerate_lines_fp(&a).map_err(err)?.count == 25, "split fiber count");
    let f5 = Field::prime(5).map_err(err)?;
    let id = ScalarMatrix::identity(&f5, 4);
    ensure!(classify_fiber(&id).map_err(err)?.tag == FanoTag::TwoConics, "identity tag");
    ensure!(enumerate_lines_fp(&id).map_err(err)?.count == 12, "identity count");
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for v in [VarietyTag::P1, VarietyTag::P2, VarietyTag::F1, VarietyTag::P1xP1, VarietyTag::P2xP1] {
        for _ in 0..100 {
            let d: Vec<i64> = (0..v.class_len()).map(|_| rng.gen_range(-15..=15)).collect();
            ensure!(serre_duality_holds(v, &DivisorClass::new(&d)).map_err(err)?, "Serre duality fails on {v:?} {d:?}");
        }
    }
    let h = lb_cohomology(VarietyTag::F1, &DivisorClass::new(&[-1, -1])).map_err(err)?;
    ensure!(h == vec![0, 1, 0], "h(F1, -h-l) = {h:?}");
    let e = exceptionality_table();
    ensure!(e.ext == vec![1, 0, 0, 0, 0], "exceptionality {:?}", e.ext);
    Ok(())
}

fn criterion_8() -> Check {
    let a = adjunction_checks().map_err(err)?;
    ensure!(a.omega_m_on_sigma == -1, "omega_M on Sigma = {}", a.omega_m_on_sigma);
    ensure!(a.omega_m_plus_on_sigma_tilde == (-1, -1), "omega_M+ on Sigma~ = {:?}", a.omega_m_plus_on_sigma_tilde);
    ensure!(a.passed, "adjunction report failed");
    Ok(())
}

fn criterion_9() -> Check {
    let q = Field::Rational;
    let smooth = pushforward_rank_proxy(&running(), &pt(&q, &[1, 0, 1]), 0).map_err(err)?;
    let sm = smooth.split_model.as_ref().ok_or("no split model on the smooth fiber")?;
    ensure!(sm.twisted_h0_sum > 0 && sm.contradiction, "split model: {sm:?}");
    ensure!(smooth.twisted_h0_sum == 0 && smooth.twisted_vanishes, "certified twist has sections");
    ensure!(smooth.chi_sum == 8 && smooth.chi_matches_rank_bk, "smooth chi {}", smooth.chi_sum);
    for fam in [running(), split()] {
        for k in 0..4 {
            let r = pushforward_rank_proxy(&fam, &pt(&q, &[0, 0, 0]), k).map_err(err)?;
            ensure!(r.corank == 2 && r.chi_sum == 8 && r.chi_matches_rank_bk, "{} k={k}: chi {}", fam.label(), r.chi_sum);
            ensure!(r.splitting_certified, "{} k={k}: splitting not certified", fam.label());
        }
    }
    Ok(())
}

fn criterion_10() -> Check {
    let input = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/running.json");
    let mut bodies = Vec::new();
    for threads in ["1", "2"] {
        let dir = tempfile::tempdir().map_err(err)?;
        let out = Command::new(env!("CARGO_BIN_EXE_quadriclab"))
            .args(["verify", "--input", input.to_str().unwrap(), "--seed", "10", "--out", dir.path().to_str().unwrap()])
            .env("QUADRICLAB_THREADS", threads)
            .output()
            .map_err(err)?;
        ensure!(out.status.code() == Some(0), "verify exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
        bodies.push(fs::read(dir.path().join("verify.json")).map_err(err)?);
    }
    ensure!(bodies[0] == bodies[1], "reports differ between runs");
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn() -> Check); 10] = [
        ("1 running-example geometry", Duration::from_secs(1), criterion_1),
        ("2 node criterion equivalence", Duration::from_secs(10), criterion_2),
        ("3 Clifford integrity", Duration::from_secs(30), criterion_3),
        ("4 periodicity", Duration::from_secs(30), criterion_4),
        ("5 resolution certification", Duration::from_secs(120), criterion_5),
        ("6 Fano oracle equivalence", Duration::from_secs(20), criterion_6),
        ("7 cohomology calculator", Duration::from_secs(5), criterion_7),
        ("8 adjunction arithmetic", Duration::from_secs(5), criterion_8),
        ("9 pushforward proxies", Duration::from_secs(30), criterion_9),
        ("10 reproducibility", Duration::from_secs(300), criterion_10),
    ];
    let suite = Instant::now();
    let mut failures = Vec::new();
    let mut stdout = std::io::stdout().lock();
    for (name, budget, f) in criteria {
        let t = Instant::now();
        let mut res = f();
        let took = t.elapsed();
        if res.is_ok() && took > budget {
            res = Err(format!("took {took:?}, budget {budget:?}"));
        }
        let line = match &res {
            Ok(()) => format!("PASS criterion {name} ({} ms)\n", took.as_millis()),
            Err(e) => format!("FAIL criterion {name}: {e}\n"),
        };
        stdout.write_all(line.as_bytes()).unwrap();
        if let Err(e) = res {
            failures.push(format!("{name}: {e}"));
        }
    }
    let total = suite.elapsed();
    let line = format!("{} full acceptance suite in {} ms\n", if total < Duration::from_secs(300) { "PASS" } else { "FAIL" }, total.as_millis());
    stdout.write_all(line.as_bytes()).unwrap();
    assert!(total < Duration::from_secs(300), "suite took {total:?}");
    assert!(failures.is_empty(), "{failures:#?}");
}
