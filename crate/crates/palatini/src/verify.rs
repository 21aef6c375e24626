//! The one-shot verification suite: every known-answer identity of the
//! library, runnable as a ledger of named checks. Used by the `verify` CLI
//! command and by the acceptance tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{DenseMatrix, Domain, MultiPoly, Scalar};
use crate::chern;
use crate::classify::{self, CaseLabel, ClassifyConfig, ZStatus};
use crate::fixtures;
use crate::schubert;
use crate::skew::{self, pair_index, SkewConst, UPPER_PAIRS};
use crate::web;

type CheckResult = std::result::Result<(), String>;

/// A named check of the suite.
pub struct Check {
    pub name: &'static str,
    pub run: fn(u64) -> CheckResult,
}

fn err(msg: impl Into<String>) -> CheckResult {
    Err(msg.into())
}

fn expect<T: PartialEq + std::fmt::Debug>(name: &str, got: T, want: T) -> CheckResult {
    if got == want {
        Ok(())
    } else {
        err(format!("{name}: got {got:?}, want {want:?}"))
    }
}

fn up_to_sign(got: &MultiPoly, want: &MultiPoly) -> bool {
    got == want || got == &(-want)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qf(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check_pfaffian_t1(_seed: u64) -> CheckResult {
    let pf = fixtures::t1_web().pencil().pfaffian();
    let target = fixtures::t1_cubic();
    if !up_to_sign(&pf, &target) {
        return err(format!("pf(T1) = {pf}, expected +-({target})"));
    }
    let frozen = target
        .scale(&Scalar::from_int(fixtures::T1_PFAFFIAN_SIGN))
        .expect("same domain");
    expect("frozen sign", pf, frozen)
}

fn check_pfaffian_t4(_seed: u64) -> CheckResult {
    let w = fixtures::t4_web().map_err(|e| e.to_string())?;
    let pf = w.pencil().pfaffian();
    if !up_to_sign(&pf, &fixtures::t4_cubic()) {
        return err(format!("pf(T4) = {pf}"));
    }
    let point = fixtures::t4_singular_point();
    if !classify::verify_singular_candidate(&fixtures::t4_cubic(), &point)
        .map_err(|e| e.to_string())?
    {
        return err("T4 singular candidate (0,0,0,1) failed exact verification");
    }
    expect(
        "pencil rank at the singular point",
        w.pencil()
            .evaluate(&point)
            .map_err(|e| e.to_string())?
            .rank(),
        4,
    )
}

fn check_pfaffian_cone(_seed: u64) -> CheckResult {
    let c = Scalar::from_int(2);
    let w = fixtures::elliptic_cone_web(&c).map_err(|e| e.to_string())?;
    if !up_to_sign(&w.pencil().pfaffian(), &fixtures::elliptic_cone_cubic(&c)) {
        return err("cone pfaffian at c = 2");
    }
    let m = fixtures::elliptic_cone_matrix_symbolic();
    let pf5 = skew::pfaffian_of_poly_matrix(&m).map_err(|e| e.to_string())?;
    if !up_to_sign(&pf5, &fixtures::elliptic_cone_cubic_symbolic()) {
        return err(format!("symbolic cone pfaffian = {pf5}"));
    }
    Ok(())
}

fn check_three_planes(_seed: u64) -> CheckResult {
    let dep = fixtures::three_planes_dependent_web().map_err(|e| e.to_string())?;
    let indep = fixtures::three_planes_independent_web().map_err(|e| e.to_string())?;
    expect("dependent span rank", dep.span_rank(), 3)?;
    expect("independent span rank", indep.span_rank(), 4)?;
    let target = fixtures::three_planes_cubic();
    if !up_to_sign(&dep.pencil().pfaffian(), &target) {
        return err("dependent three-planes pfaffian");
    }
    if !up_to_sign(&indep.pencil().pfaffian(), &target) {
        return err("independent three-planes pfaffian");
    }
    Ok(())
}

fn check_sigma1_fourth(_seed: u64) -> CheckResult {
    let c = schubert::sigma1_power(4);
    let want = schubert::SchubertCycle::from_terms(&[((4, 0), 1), ((3, 1), 3), ((2, 2), 2)])
        .expect("partitions in the box");
    expect("sigma1^4", c.clone(), want)?;
    expect("order", c.order(), 1)
}

fn check_sigma1_eighth(_seed: u64) -> CheckResult {
    expect(
        "sigma44 coefficient of sigma1^8",
        schubert::sigma1_power(8).coefficient(4, 4),
        14,
    )
}

fn check_chi_normal(_seed: u64) -> CheckResult {
    let t = chern::IntersectionTable::palatini_scroll();
    let s = chern::chi_normal_summands(&t).map_err(|e| e.to_string())?;
    expect("summand 1", s[0].clone(), qf(29, 3))?;
    expect("summand 2", s[1].clone(), qf(47, 2))?;
    expect("summand 3", s[2].clone(), qf(53, 6))?;
    expect("summand 4", s[3].clone(), q(2))?;
    expect(
        "chi(N)",
        chern::chi_normal(&t).map_err(|e| e.to_string())?,
        q(44),
    )
}

fn check_hilbert_coefficients(_seed: u64) -> CheckResult {
    let t = chern::IntersectionTable::palatini_scroll();
    expect(
        "hilbert coefficients",
        chern::hilbert_coefficients(&t),
        [qf(7, 6), q(2), qf(11, 6), q(1)],
    )
}

fn check_c2h(_seed: u64) -> CheckResult {
    let t = chern::IntersectionTable::palatini_scroll();
    let c2h = chern::derive_c2h(&t.kh2, &t.k2h, &qf(11, 6), &q(2)).map_err(|e| e.to_string())?;
    expect("c2 H", c2h, q(15))
}

fn check_degree(_seed: u64) -> CheckResult {
    let t = chern::IntersectionTable::palatini_scroll();
    expect("degree", chern::degree(&t).map_err(|e| e.to_string())?, 7)
}

fn check_dimensions(_seed: u64) -> CheckResult {
    expect("pencils modulo congruence", chern::PENCIL_MODULI_DIM, 24)?;
    expect("webs Grassmannian", chern::WEB_GRASSMANNIAN_DIM, 44)
}

fn check_alpha1_minors(_seed: u64) -> CheckResult {
    let sys = fixtures::alpha1_canonical_web().degeneracy_system();
    for (k, &(c1, c2)) in UPPER_PAIRS.iter().enumerate() {
        let m = &sys.minors()[k];
        if c1 == 0 {
            let expect_m = if c2 == 5 {
                MultiPoly::from_int_terms(6, &[(&[0, 0, 0, 0, 0, 4], 1)])
            } else {
                let mut e = [0u16; 6];
                e[5] = 3;
                e[c2] = 1;
                MultiPoly::from_int_terms(6, &[(&e, 1)])
            };
            if !up_to_sign(m, &expect_m) {
                return err(format!("minor deleting ({c1},{c2}) is {m}"));
            }
        } else if !m.is_zero() {
            return err(format!("minor deleting ({c1},{c2}) should vanish"));
        }
    }
    Ok(())
}

fn check_classify_catalogue(seed: u64) -> CheckResult {
    let cfg = ClassifyConfig {
        seed,
        probe_primes: vec![53],
        ..ClassifyConfig::default()
    };
    let params = fixtures::FixtureParams::default();
    let expectations: [(&str, CaseLabel, bool); 6] = [
        ("alpha1-canonical", CaseLabel::Alpha1, false),
        ("t4", CaseLabel::Beta1, true),
        ("es2i", CaseLabel::Beta2, false),
        ("es2ii", CaseLabel::Beta2, false),
        ("alpha21-constructed", CaseLabel::Alpha21, false),
        ("alpha24-constructed", CaseLabel::Alpha24, false),
    ];
    for (name, case, regular) in expectations {
        let w = fixtures::web_by_name(name, &params).map_err(|e| e.to_string())?;
        let r = classify::classify(&w, &cfg).map_err(|e| format!("{name}: {e}"))?;
        expect(&format!("{name} case"), r.case, case)?;
        expect(&format!("{name} regular"), r.regular, regular)?;
        if name == "t4" {
            let probe = r.surface_probe.as_ref().ok_or("t4 probe missing")?;
            if probe.rational_points.len() != 1
                || probe.rational_points[0].point != ["0", "0", "0", "1"]
                || probe.rational_points[0].pencil_rank != Some(4)
            {
                return err("t4 singular point not verified");
            }
        }
        if name == "es2i" && r.z_status != Some(ZStatus::PositiveDimensional) {
            return err("es2i Z should be positive-dimensional");
        }
        if name == "es2ii" && r.z_status != Some(ZStatus::PositiveDimensional) {
            return err("es2ii Z should be positive-dimensional");
        }
    }
    Ok(())
}

/// Frozen regression: the minor ideal's Hilbert function equals the
/// polynomial `7/6 t^3 + 2 t^2 + 11/6 t + 1` on the window t = 4..=7.
pub const HILBERT_WINDOW_START: u32 = 4;

fn chi(t: i64) -> usize {
    ((7 * t * t * t + 12 * t * t + 11 * t + 6) / 6) as usize
}

fn check_hilbert_window(seed: u64) -> CheckResult {
    let w = fixtures::random_web(seed);
    let sys = w.degeneracy_system();
    for p in [31991u64, 65521] {
        let mut values = Vec::new();
        for t in HILBERT_WINDOW_START..HILBERT_WINDOW_START + 4 {
            let h = web::hilbert_function(&sys, t, p).map_err(|e| e.to_string())?;
            expect(&format!("h({t}) mod {p}"), h, chi(t as i64))?;
            values.push(h);
        }
        expect(
            "third difference",
            web::degree_from_hilbert(&values).map_err(|e| e.to_string())?,
            7,
        )?;
    }
    Ok(())
}

fn check_c4_secant(seed: u64) -> CheckResult {
    let w = fixtures::random_web(seed);
    let p = 31991u64;
    let gens = w.generators_mod(p).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < 5 {
        attempts += 1;
        if attempts > 160 {
            return err("too many degenerate draws");
        }
        let qpt: Vec<Scalar> = (0..6)
            .map(|_| Scalar::fp(rng.gen_range(0..p as i64), p))
            .collect();
        if qpt.iter().all(Scalar::is_zero) {
            continue;
        }
        let line = match web::c4_line_through(&gens, &qpt) {
            Ok(l) => l,
            Err(crate::error::Error::NonGenericDirection { .. }) => continue,
            Err(e) => return err(e.to_string()),
        };
        for g in &gens {
            let c = crate::grass::ComplexPoint::new(g.clone()).map_err(|e| e.to_string())?;
            if !c.contains_line(&line) {
                return err("congruence line escapes a generating complex");
            }
        }
        match web::four_secant_check(&w, &qpt, p).map_err(|e| e.to_string())? {
            web::SecantIntersection::Length { length, .. } => expect("length", length, 4)?,
            web::SecantIntersection::Contained { .. } => {
                return err("line unexpectedly inside the locus")
            }
        }
        done += 1;
    }
    Ok(())
}

fn check_pf_squared_det(seed: u64) -> CheckResult {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = 31991u64;
    for i in 0..50 {
        let domain = if i % 2 == 0 {
            Domain::Rational
        } else {
            Domain::Prime(p)
        };
        let m = SkewConst::new(
            (0..15)
                .map(|_| match domain {
                    Domain::Rational => Scalar::from_int(rng.gen_range(-9..=9)),
                    Domain::Prime(p) => Scalar::fp(rng.gen_range(0..p as i64), p),
                })
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        let pf = m.pfaffian();
        let det = m.to_dense().determinant().map_err(|e| e.to_string())?;
        if &pf * &pf != det {
            return err(format!("pf^2 != det at sample {i}"));
        }
    }
    Ok(())
}

fn check_congruence_identity(seed: u64) -> CheckResult {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = 65521u64;
    let mut done = 0;
    while done < 25 {
        let m = SkewConst::new(
            (0..15)
                .map(|_| Scalar::fp(rng.gen_range(0..p as i64), p))
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        let pm = DenseMatrix::from_fn(6, 6, Domain::Prime(p), |_, _| {
            Scalar::fp(rng.gen_range(0..p as i64), p)
        });
        if !pm.is_invertible() {
            continue;
        }
        let t = skew::congruence(&pm, &m).map_err(|e| e.to_string())?;
        let det = pm.determinant().map_err(|e| e.to_string())?;
        if t.pfaffian() != &det * &m.pfaffian() {
            return err("pf(P^t M P) != det(P) pf(M)");
        }
        done += 1;
    }
    Ok(())
}

fn check_subpfaffian_expansion(seed: u64) -> CheckResult {
    // The pfaffian is a combination of the 4x4 sub-pfaffians, so their common
    // vanishing forces the pfaffian to vanish: the structural reason a cubic
    // inside the rank-2 locus cannot occur.
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..25 {
        let gen = |rng: &mut StdRng| {
            SkewConst::new(
                (0..15)
                    .map(|_| Scalar::from_int(rng.gen_range(-5..=5)))
                    .collect(),
            )
            .expect("entries")
        };
        let pencil =
            skew::SkewPencil::new(gen(&mut rng), gen(&mut rng), gen(&mut rng), gen(&mut rng))
                .map_err(|e| e.to_string())?;
        let subs = pencil.sub_pfaffians();
        let mut acc = MultiPoly::zero(4);
        for j in 1..6 {
            let mut term = &pencil.entry(0, j) * &subs[pair_index(0, j)];
            if j % 2 == 0 {
                term = -&term;
            }
            acc = &acc + &term;
        }
        if acc != pencil.pfaffian() {
            return err("first-row expansion in sub-pfaffians failed");
        }
    }
    Ok(())
}

fn check_rank_parity(seed: u64) -> CheckResult {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = 31991u64;
    for r in [0usize, 1, 2, 3] {
        // Low-rank skew samples: congruence images of canonical forms.
        let mut normal = vec![Scalar::fp(0, p); 15];
        for k in 0..r {
            normal[pair_index(2 * k, 2 * k + 1)] = Scalar::fp(1, p);
        }
        let m = SkewConst::new(normal).map_err(|e| e.to_string())?;
        loop {
            let pm = DenseMatrix::from_fn(6, 6, Domain::Prime(p), |_, _| {
                Scalar::fp(rng.gen_range(0..p as i64), p)
            });
            if !pm.is_invertible() {
                continue;
            }
            let t = skew::congruence(&pm, &m).map_err(|e| e.to_string())?;
            let (rank, _) = t.rank_kernel();
            expect("rank", rank, 2 * r)?;
            break;
        }
    }
    Ok(())
}

/// All checks of the suite, in a stable order.
pub fn all_checks() -> Vec<Check> {
    vec![
        Check {
            name: "pfaffian-t1",
            run: check_pfaffian_t1,
        },
        Check {
            name: "pfaffian-t4",
            run: check_pfaffian_t4,
        },
        Check {
            name: "pfaffian-elliptic-cone",
            run: check_pfaffian_cone,
        },
        Check {
            name: "three-planes-ranks",
            run: check_three_planes,
        },
        Check {
            name: "sigma1-power-4",
            run: check_sigma1_fourth,
        },
        Check {
            name: "sigma1-power-8-degree-14",
            run: check_sigma1_eighth,
        },
        Check {
            name: "chi-normal-44",
            run: check_chi_normal,
        },
        Check {
            name: "hilbert-coefficients",
            run: check_hilbert_coefficients,
        },
        Check {
            name: "c2h-derivation-15",
            run: check_c2h,
        },
        Check {
            name: "degree-7",
            run: check_degree,
        },
        Check {
            name: "dimension-bookkeeping",
            run: check_dimensions,
        },
        Check {
            name: "alpha1-minors",
            run: check_alpha1_minors,
        },
        Check {
            name: "classify-catalogue",
            run: check_classify_catalogue,
        },
        Check {
            name: "hilbert-window",
            run: check_hilbert_window,
        },
        Check {
            name: "c4-secant-length",
            run: check_c4_secant,
        },
        Check {
            name: "pf-squared-det",
            run: check_pf_squared_det,
        },
        Check {
            name: "congruence-identity",
            run: check_congruence_identity,
        },
        Check {
            name: "subpfaffian-expansion",
            run: check_subpfaffian_expansion,
        },
        Check {
            name: "skew-rank-parity",
            run: check_rank_parity,
        },
    ]
}

/// Runs every check, reporting through the callback; returns the number of
/// failures.
pub fn run_all(seed: u64, mut report: impl FnMut(&str, &CheckResult)) -> usize {
    let mut failures = 0;
    for check in all_checks() {
        let outcome = (check.run)(seed);
        if outcome.is_err() {
            failures += 1;
        }
        report(check.name, &outcome);
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_suite_passes() {
        let failures = run_all(1, |name, outcome| {
            if let Err(msg) = outcome {
                eprintln!("FAIL {name}: {msg}");
            }
        });
        assert_eq!(failures, 0);
    }
}
