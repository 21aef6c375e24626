//! Acceptance suite: the quantitative claims the library is built around,
//! each as one criterion with its stated time budget. Run with
//! `cargo test --test acceptance -- --nocapture` to see one line per
//! criterion.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use palatini::algebra::{DenseMatrix, Domain, MultiPoly, Scalar};
use palatini::chern;
use palatini::classify::{classify, CaseLabel, ClassifyConfig, ZStatus};
use palatini::fixtures;
use palatini::grass::ComplexPoint;
use palatini::schubert::{sigma1_power, SchubertCycle};
use palatini::skew::{congruence, SkewConst, UPPER_PAIRS};
use palatini::web::{
    c4_line_through, degree_from_hilbert, four_secant_check, hilbert_function, SecantIntersection,
    Web,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qf(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn up_to_sign(got: &MultiPoly, want: &MultiPoly) -> bool {
    got == want || got == &(-want)
}

fn budget(name: &str, elapsed: Duration, limit: Duration) {
    assert!(
        elapsed <= limit,
        "{name} took {elapsed:?}, over the {limit:?} budget"
    );
}

/// The Hilbert polynomial of the scroll, as exact integers.
fn chi(t: i64) -> usize {
    ((7 * t * t * t + 12 * t * t + 11 * t + 6) / 6) as usize
}

const FROZEN_SEEDS: [u64; 3] = [1, 2, 3];
const WINDOW: std::ops::RangeInclusive<u32> = 4..=7;
const PRIMES: [u64; 2] = [31991, 65521];

#[test]
fn criterion_1_t1_pfaffian() {
    let start = Instant::now();
    let pf = fixtures::t1_web().pencil().pfaffian();
    let target = fixtures::t1_cubic();
    assert!(up_to_sign(&pf, &target), "pf(T1) = {pf}");
    budget("criterion 1", start.elapsed(), Duration::from_secs(1));
    println!("PASS criterion 1: pfaffian of the T1 matrix is +-(x0 x1^2 + x1 x3^2 + x2^3)");
}

#[test]
fn criterion_2_sigma1_fourth_power() {
    let c = sigma1_power(4);
    let want = SchubertCycle::from_terms(&[((4, 0), 1), ((3, 1), 3), ((2, 2), 2)]).unwrap();
    assert_eq!(c, want);
    assert_eq!(c.order(), 1);
    println!("PASS criterion 2: sigma1^4 = sigma4 + 3 sigma31 + 2 sigma22, order 1");
}

#[test]
fn criterion_3_riemann_roch_pipeline() {
    let t = chern::IntersectionTable::palatini_scroll();
    let s = chern::chi_normal_summands(&t).unwrap();
    assert_eq!(s[0], qf(29, 3));
    assert_eq!(s[1], qf(47, 2));
    assert_eq!(s[2], qf(53, 6));
    assert_eq!(s[3], q(2));
    assert_eq!(chern::chi_normal(&t).unwrap(), q(44));
    assert_eq!(
        chern::hilbert_coefficients(&t),
        [qf(7, 6), q(2), qf(11, 6), q(1)]
    );
    let c2h = chern::derive_c2h(&t.kh2, &t.k2h, &qf(11, 6), &q(2)).unwrap();
    assert_eq!(c2h, q(15));
    assert_eq!(chern::degree(&t).unwrap(), 7);
    println!(
        "PASS criterion 3: chi(N) = 29/3 + 47/2 + 53/6 + 2 = 44; hilbert coefficients (7/6, 2, 11/6, 1); c2H = 15; degree = 7"
    );
}

#[test]
fn criterion_4_hilbert_window() {
    for seed in FROZEN_SEEDS {
        let start = Instant::now();
        let w = fixtures::random_web(seed);
        let sys = w.degeneracy_system();
        for p in PRIMES {
            let mut values = Vec::new();
            for t in WINDOW {
                let h = hilbert_function(&sys, t, p).unwrap();
                assert_eq!(h, chi(t as i64), "seed {seed}, p = {p}, t = {t}");
                values.push(h);
            }
            assert_eq!(degree_from_hilbert(&values).unwrap(), 7);
        }
        budget(
            &format!("criterion 4 (seed {seed})"),
            start.elapsed(),
            Duration::from_secs(60),
        );
    }
    println!(
        "PASS criterion 4: hilbert function equals 7/6 t^3 + 2 t^2 + 11/6 t + 1 on t = 4..=7 over F_31991 and F_65521 for 3 frozen webs; third difference 7"
    );
}

#[test]
fn criterion_5_c4_lines_are_4_secants() {
    for seed in FROZEN_SEEDS {
        let start = Instant::now();
        let w = fixtures::random_web(seed);
        let p = PRIMES[seed as usize % 2];
        let gens = w.generators_mod(p).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let mut done = 0;
        let mut attempts = 0;
        while done < 20 {
            attempts += 1;
            assert!(attempts < 640, "too many degenerate draws");
            let qpt: Vec<Scalar> = (0..6)
                .map(|_| Scalar::fp(rng.gen_range(0..p as i64), p))
                .collect();
            if qpt.iter().all(Scalar::is_zero) {
                continue;
            }
            // Exactly one congruence line through a generic point: the
            // direction system has a 2-dimensional kernel.
            let line = match c4_line_through(&gens, &qpt) {
                Ok(line) => line,
                Err(palatini::error::Error::NonGenericDirection { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            for g in &gens {
                assert!(ComplexPoint::new(g.clone()).unwrap().contains_line(&line));
            }
            match four_secant_check(&w, &qpt, p).unwrap() {
                SecantIntersection::Length { length, .. } => assert_eq!(length, 4),
                SecantIntersection::Contained { .. } => {
                    panic!("line through a generic point lies inside the locus")
                }
            }
            done += 1;
        }
        budget(
            &format!("criterion 5 (seed {seed})"),
            start.elapsed(),
            Duration::from_secs(10),
        );
    }
    println!(
        "PASS criterion 5: unique congruence line through 20 generic points per web, contained in all four complexes, intersection length exactly 4"
    );
}

#[test]
fn criterion_6_classifier_verdicts() {
    let start = Instant::now();
    let cfg = ClassifyConfig {
        probe_primes: vec![53, 101],
        ..ClassifyConfig::default()
    };
    let params = fixtures::FixtureParams::default();

    // alpha1-canonical: wholly degenerate, with the exact minor list.
    let w = fixtures::web_by_name("alpha1-canonical", &params).unwrap();
    let sys = w.degeneracy_system();
    for (k, &(c1, c2)) in UPPER_PAIRS.iter().enumerate() {
        let m = &sys.minors()[k];
        if c1 == 0 {
            let want = if c2 == 5 {
                MultiPoly::from_int_terms(6, &[(&[0, 0, 0, 0, 0, 4], 1)])
            } else {
                let mut e = [0u16; 6];
                e[5] = 3;
                e[c2] = 1;
                MultiPoly::from_int_terms(6, &[(&e, 1)])
            };
            assert!(up_to_sign(m, &want), "minor ({c1},{c2}) = {m}");
        } else {
            assert!(m.is_zero(), "minor ({c1},{c2}) should vanish");
        }
    }
    let r = classify(&w, &cfg).unwrap();
    assert_eq!((r.case, r.regular), (CaseLabel::Alpha1, false));

    // t4: regular, with the unique singular point verified exactly.
    let r = classify(&fixtures::web_by_name("t4", &params).unwrap(), &cfg).unwrap();
    assert_eq!((r.case, r.regular), (CaseLabel::Beta1, true));
    let probe = r.surface_probe.unwrap();
    assert_eq!(probe.rational_points.len(), 1);
    assert_eq!(probe.rational_points[0].point, vec!["0", "0", "0", "1"]);
    assert_eq!(probe.rational_points[0].pencil_rank, Some(4));
    let cubic = fixtures::t4_cubic();
    let sp = fixtures::t4_singular_point();
    for v in 0..4 {
        assert!(cubic.partial_derivative(v).eval(&sp).unwrap().is_zero());
    }

    // es2i: Z positive-dimensional, containing the line x0 = x1 = 0 in P^3.
    let r = classify(&fixtures::web_by_name("es2i", &params).unwrap(), &cfg).unwrap();
    assert_eq!((r.case, r.regular), (CaseLabel::Beta2, false));
    assert_eq!(r.z_status, Some(ZStatus::PositiveDimensional));
    assert!(!r.evidence.z_points.is_empty());
    for zp in &r.evidence.z_points {
        assert_eq!(
            (zp.point[0], zp.point[1]),
            (0, 0),
            "Z point off the double line"
        );
    }

    // es2ii: Z contains the conic (quadric) cut by the plane.
    let r = classify(&fixtures::web_by_name("es2ii", &params).unwrap(), &cfg).unwrap();
    assert_eq!((r.case, r.regular), (CaseLabel::Beta2, false));
    assert_eq!(r.z_status, Some(ZStatus::PositiveDimensional));
    assert!(!r.evidence.z_points.is_empty());
    let p53 = 53i64;
    for zp in &r.evidence.z_points {
        let s = |v: u64| v as i64;
        let on_plane =
            (s(zp.point[0]) + s(zp.point[1]) + s(zp.point[2]) + s(zp.point[3])).rem_euclid(p53);
        let on_quadric =
            (s(zp.point[0]) * s(zp.point[2]) - s(zp.point[1]) * s(zp.point[3])).rem_euclid(p53);
        assert_eq!((on_plane, on_quadric), (0, 0), "Z point off the conic");
    }

    // Constructed alpha sub-cases.
    let r = classify(
        &fixtures::web_by_name("alpha21-constructed", &params).unwrap(),
        &cfg,
    )
    .unwrap();
    assert_eq!((r.case, r.regular), (CaseLabel::Alpha21, false));
    assert_eq!(r.generic_fiber_dimension, Some(3));
    let r = classify(
        &fixtures::web_by_name("alpha24-constructed", &params).unwrap(),
        &cfg,
    )
    .unwrap();
    assert_eq!((r.case, r.regular), (CaseLabel::Alpha24, false));
    assert_eq!(r.generic_fiber_dimension, Some(0));

    budget("criterion 6", start.elapsed(), Duration::from_secs(30));
    println!("PASS criterion 6: classifier verdicts on the whole fixture catalogue");
}

#[test]
fn criterion_7_property_suites() {
    let start = Instant::now();
    let p = 31991u64;
    let mut rng = StdRng::seed_from_u64(2026);

    // pf^2 = det on 200 random skew matrices (rational and prime-field).
    for i in 0..200 {
        let m = SkewConst::new(
            (0..15)
                .map(|_| {
                    if i % 2 == 0 {
                        Scalar::from_int(rng.gen_range(-9..=9))
                    } else {
                        Scalar::fp(rng.gen_range(0..p as i64), p)
                    }
                })
                .collect(),
        )
        .unwrap();
        let pf = m.pfaffian();
        assert_eq!(&pf * &pf, m.to_dense().determinant().unwrap());
        // Rank parity: always even.
        let (rank, _) = m.rank_kernel();
        assert_eq!(rank % 2, 0);
    }

    // pf(P^t M P) = det(P) pf(M) on 100 random pairs.
    let mut done = 0;
    while done < 100 {
        let m = SkewConst::new(
            (0..15)
                .map(|_| Scalar::fp(rng.gen_range(0..p as i64), p))
                .collect(),
        )
        .unwrap();
        let pm = DenseMatrix::from_fn(6, 6, Domain::Prime(p), |_, _| {
            Scalar::fp(rng.gen_range(0..p as i64), p)
        });
        if !pm.is_invertible() {
            continue;
        }
        let t = congruence(&pm, &m).unwrap();
        assert_eq!(t.pfaffian(), &pm.determinant().unwrap() * &m.pfaffian());
        done += 1;
    }

    // All sub-pfaffians identically zero forces the pfaffian to vanish, on
    // 200 fuzzed webs: half random, half congruence images of the wholly
    // degenerate canonical web (where the antecedent actually holds). No
    // fuzzed web may ever classify as a cubic inside the rank-2 locus; that
    // case has no label, so it suffices that classification succeeds with a
    // verdict consistent with the symbolic tests.
    let fuzz_cfg = ClassifyConfig {
        samples: 4,
        probe_primes: vec![],
        ..ClassifyConfig::default()
    };
    let alpha1 = fixtures::alpha1_canonical_web();
    for i in 0..200 {
        let web = if i % 2 == 0 {
            Web::random_integer(&mut rng, 5)
        } else {
            let pm = loop {
                let cand = DenseMatrix::from_fn(6, 6, Domain::Rational, |_, _| {
                    Scalar::from_int(rng.gen_range(-3..=3))
                });
                if cand.is_invertible() {
                    break cand;
                }
            };
            let gens = alpha1.generators();
            Web::new(
                congruence(&pm, &gens[0]).unwrap(),
                congruence(&pm, &gens[1]).unwrap(),
                congruence(&pm, &gens[2]).unwrap(),
                congruence(&pm, &gens[3]).unwrap(),
            )
            .unwrap()
        };
        let pencil = web.pencil();
        let subs = pencil.sub_pfaffians();
        let all_sub_zero = subs.iter().all(MultiPoly::is_zero);
        let pf = pencil.pfaffian();
        if all_sub_zero {
            assert!(pf.is_zero(), "sub-pfaffians vanish but pfaffian does not");
        }
        if web.is_independent() {
            let report = classify(&web, &fuzz_cfg).unwrap();
            assert_eq!(report.pf_identically_zero, pf.is_zero());
            if all_sub_zero {
                assert_eq!(report.case, CaseLabel::Alpha1);
            }
        }
    }

    budget("criterion 7", start.elapsed(), Duration::from_secs(30));
    println!(
        "PASS criterion 7: pf^2 = det (200), congruence identity (100), sub-pfaffian vanishing forces pfaffian vanishing (200 fuzzed webs), skew ranks always even"
    );
}

#[test]
fn criterion_8_three_planes_and_cone() {
    let start = Instant::now();
    let dep = fixtures::three_planes_dependent_web().unwrap();
    let indep = fixtures::three_planes_independent_web().unwrap();
    assert_eq!(dep.span_rank(), 3);
    assert_eq!(indep.span_rank(), 4);
    let fgh = fixtures::three_planes_cubic();
    assert!(up_to_sign(&dep.pencil().pfaffian(), &fgh));
    assert!(up_to_sign(&indep.pencil().pfaffian(), &fgh));
    // Elliptic cone with c symbolic as a fifth variable.
    let m = fixtures::elliptic_cone_matrix_symbolic();
    let pf = palatini::skew::pfaffian_of_poly_matrix(&m).unwrap();
    assert!(
        up_to_sign(&pf, &fixtures::elliptic_cone_cubic_symbolic()),
        "pf = {pf}"
    );
    budget("criterion 8", start.elapsed(), Duration::from_secs(5));
    println!(
        "PASS criterion 8: three-planes span ranks 3 and 4 with pfaffians +-FGH; elliptic-cone pfaffian equals +-(y^2 z - x(x-z)(x-cz)) with c symbolic"
    );
}
