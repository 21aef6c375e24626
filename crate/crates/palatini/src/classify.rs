//! The regularity classifier for webs of linear complexes.
//!
//! A web falls in case alpha when its pfaffian cubic vanishes identically
//! (every member is a special complex) and in case beta otherwise. Case alpha
//! splits by the generic fiber dimension of the singular-line map restricted
//! to the web; case beta by the locus Z where the pencil drops to rank 2,
//! decided through the Hilbert function of the sub-pfaffian quadric ideal.
//! The map sending a web to its degeneracy locus is regular exactly in case
//! beta with Z empty or finite.
//!
//! Symbolic checks (pfaffian and sub-pfaffians identically zero) are exact
//! over the rationals; dimension estimates are sampled over at least two
//! primes with the seed and every sampled rank recorded in the evidence log.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{fp, ideal_hilbert_function, DenseMatrix, MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::skew::SkewPencil;
use crate::web::Web;

/// Classification outcome. The all-sub-pfaffians-zero case forces the
/// pfaffian to vanish (first-row expansion writes it in the sub-pfaffians),
/// so a "cubic surface inside the rank-2 locus" label cannot occur and has no
/// representation here.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "alpha1")]
    Alpha1,
    #[serde(rename = "alpha2.1")]
    Alpha21,
    #[serde(rename = "alpha2.2")]
    Alpha22,
    #[serde(rename = "alpha2.3")]
    Alpha23,
    #[serde(rename = "alpha2.4")]
    Alpha24,
    #[serde(rename = "beta1")]
    Beta1,
    #[serde(rename = "beta2")]
    Beta2,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::Alpha1 => "α1",
            CaseLabel::Alpha21 => "α2.1",
            CaseLabel::Alpha22 => "α2.2",
            CaseLabel::Alpha23 => "α2.3",
            CaseLabel::Alpha24 => "α2.4",
            CaseLabel::Beta1 => "β1",
            CaseLabel::Beta2 => "β2",
        };
        write!(f, "{s}")
    }
}

/// Status of the rank-2 locus Z of the pencil inside P^3.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ZStatus {
    Empty,
    Finite { degree: usize },
    PositiveDimensional,
}

impl fmt::Display for ZStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZStatus::Empty => write!(f, "empty"),
            ZStatus::Finite { degree } => write!(f, "finite({degree})"),
            ZStatus::PositiveDimensional => write!(f, "positive-dimensional"),
        }
    }
}

/// Controls of a classification run; everything needed to replay it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyConfig {
    /// Primes for sampled dimension estimates (at least two recommended).
    pub primes: Vec<u64>,
    /// Sample points per prime for fiber-dimension estimates.
    pub samples: usize,
    /// Seed of the evidence sampling.
    pub seed: u64,
    /// Small primes (each <= 101) for exhaustive point searches.
    pub probe_primes: Vec<u64>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            primes: vec![31991, 65521],
            samples: 24,
            seed: 1,
            probe_primes: vec![53, 101],
        }
    }
}

/// A reserve prime drawn when the configured primes disagree.
const RESERVE_PRIME: u64 = 999983;

/// Retry budget multiplier for degenerate draws.
const RETRY_FACTOR: usize = 32;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberSample {
    pub prime: u64,
    pub point: [u64; 4],
    pub dimension: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZHilbertTrace {
    pub prime: u64,
    /// Hilbert function of the sub-pfaffian quadric ideal at t = 2..=10.
    pub h: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZPointSample {
    pub prime: u64,
    pub point: [u64; 4],
    pub on_cubic: bool,
}

/// Structured log that suffices to replay every sampled computation.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Evidence {
    pub primes: Vec<u64>,
    pub seed: u64,
    pub samples_requested: usize,
    pub fiber_samples: Vec<FiberSample>,
    pub z_hilbert: Vec<ZHilbertTrace>,
    pub z_points: Vec<ZPointSample>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimeCount {
    pub prime: u64,
    pub singular_points: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifiedSingularPoint {
    /// Exact rational coordinates.
    pub point: Vec<String>,
    /// Rank of the pencil at the point, when a pencil is in scope.
    pub pencil_rank: Option<usize>,
}

/// Outcome of the singular-point search on the pfaffian cubic.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub counts: Vec<PrimeCount>,
    /// Candidates lifted from small-prime hits and verified exactly over the
    /// rationals.
    pub rational_points: Vec<VerifiedSingularPoint>,
}

/// Case label, verdict and replayable evidence for one web.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub case: CaseLabel,
    pub pf_identically_zero: bool,
    pub generic_fiber_dimension: Option<usize>,
    pub z_status: Option<ZStatus>,
    pub surface_probe: Option<ProbeSummary>,
    pub regular: bool,
    pub evidence: Evidence,
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case={}", self.case)?;
        if let Some(g) = self.generic_fiber_dimension {
            write!(f, " generic-fiber-dim={g}")?;
        }
        if let Some(z) = &self.z_status {
            write!(f, " Z={z}")?;
        }
        write!(f, " ρ-regular={}", self.regular)
    }
}

/// Representatives of the points of P^3 over F_p: leading coordinate one.
fn projective_points_p3(p: u64) -> impl Iterator<Item = [u64; 4]> {
    let charts = (0..4u8).flat_map(move |lead| {
        let reps: Box<dyn Iterator<Item = [u64; 4]>> = match lead {
            0 => Box::new(
                (0..p)
                    .flat_map(move |a| (0..p).flat_map(move |b| (0..p).map(move |c| [1, a, b, c]))),
            ),
            1 => Box::new((0..p).flat_map(move |b| (0..p).map(move |c| [0, 1, b, c]))),
            2 => Box::new((0..p).map(move |c| [0, 0, 1, c])),
            _ => Box::new(std::iter::once([0, 0, 0, 1])),
        };
        reps
    });
    charts
}

/// Terms of a 4-variable polynomial compiled to raw residues for fast
/// evaluation against a per-point power table.
struct CompiledPoly {
    terms: Vec<(u64, [u8; 4])>,
}

impl CompiledPoly {
    fn new(poly: &MultiPoly, p: u64) -> Result<Self> {
        let reduced = poly.reduce_mod(p)?;
        let terms = reduced
            .terms()
            .map(|(m, c)| {
                let e = m.exponents();
                (
                    c.as_fp().expect("reduced"),
                    [e[0] as u8, e[1] as u8, e[2] as u8, e[3] as u8],
                )
            })
            .collect();
        Ok(CompiledPoly { terms })
    }

    /// Evaluates against `pows[var][exp]`.
    fn eval(&self, pows: &[[u64; 4]; 4], p: u64) -> u64 {
        let mut acc = 0u64;
        for (c, e) in &self.terms {
            let t = fp::mul(
                fp::mul(*c, pows[0][e[0] as usize], p),
                fp::mul(pows[1][e[1] as usize], pows[2][e[2] as usize], p),
                p,
            );
            acc = fp::add(acc, fp::mul(t, pows[3][e[3] as usize], p), p);
        }
        acc
    }
}

/// Counts the common zeros of the polynomials in P^3(F_p), evaluating in the
/// given order with early exit, and collects up to `keep` of them.
fn common_zeros_p3(polys: &[MultiPoly], p: u64, keep: usize) -> Result<(usize, Vec<[u64; 4]>)> {
    let compiled = polys
        .iter()
        .map(|q| CompiledPoly::new(q, p))
        .collect::<Result<Vec<_>>>()?;
    let mut count = 0usize;
    let mut kept = Vec::new();
    for pt in projective_points_p3(p) {
        let mut pows = [[1u64; 4]; 4];
        for v in 0..4 {
            for e in 1..4 {
                pows[v][e] = fp::mul(pows[v][e - 1], pt[v], p);
            }
        }
        if compiled.iter().all(|c| c.eval(&pows, p) == 0) {
            count += 1;
            if kept.len() < keep {
                kept.push(pt);
            }
        }
    }
    Ok((count, kept))
}

/// Dimension of the fiber of the singular-line map through the first-type
/// complex at `q`: the projective dimension of the space of pencil points
/// whose matrix kills both kernel vectors of the matrix at `q`. Value 3 means
/// the whole web shares the singular line.
pub fn fiber_dimension_at(pencil: &SkewPencil, q: &[Scalar]) -> Result<usize> {
    let at = pencil.evaluate(q)?;
    let (rank, kernel) = at.rank_kernel();
    if rank != 4 {
        return Err(Error::NotFirstType { rank });
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(12);
    for v in &kernel {
        for j in 0..6 {
            rows.push(
                pencil
                    .coefficients()
                    .iter()
                    .map(|m| {
                        let mut acc = q[0].domain().zero();
                        for i in 0..6 {
                            acc = &acc + &(&m.get(j, i) * &v[i]);
                        }
                        acc
                    })
                    .collect(),
            );
        }
    }
    let (rank12, _) = DenseMatrix::from_rows(rows)?.rank_kernel();
    let nullity = 4 - rank12;
    debug_assert!(nullity >= 1, "q lies in its own fiber");
    Ok(nullity - 1)
}

/// Assigns the alpha sub-case by the generic (minimal sampled) fiber
/// dimension across the configured primes: 3 -> the web lies in one fiber
/// 5-space; 2 -> a plane; 1 -> a line; 0 -> generically finite. Special
/// fibers strictly larger than the generic dimension are noted.
pub fn alpha_subcase(
    w: &Web,
    cfg: &ClassifyConfig,
    evidence: &mut Evidence,
) -> Result<(CaseLabel, usize)> {
    let mut generic: Option<usize> = None;
    for (pi, &p) in cfg.primes.iter().enumerate() {
        let pencil = w.pencil().reduce_mod(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(pi as u64));
        let mut collected = 0usize;
        let mut attempts = 0usize;
        while collected < cfg.samples {
            if attempts >= RETRY_FACTOR * cfg.samples {
                if collected == 0 {
                    // Every sampled member had rank <= 2, contradicting the
                    // sub-pfaffian test that routed us here.
                    return Err(Error::SamplingExhausted { attempts });
                }
                break;
            }
            attempts += 1;
            let raw: [u64; 4] = std::array::from_fn(|_| rng.gen_range(0..p));
            if raw.iter().all(|&v| v == 0) {
                continue;
            }
            let q: Vec<Scalar> = raw.iter().map(|&v| Scalar::fp(v as i64, p)).collect();
            match fiber_dimension_at(&pencil, &q) {
                Ok(dim) => {
                    evidence.fiber_samples.push(FiberSample {
                        prime: p,
                        point: raw,
                        dimension: dim,
                    });
                    generic = Some(generic.map_or(dim, |g| g.min(dim)));
                    collected += 1;
                }
                Err(Error::NotFirstType { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    let g = generic.ok_or(Error::SamplingExhausted {
        attempts: RETRY_FACTOR * cfg.samples,
    })?;
    let special: Vec<&FiberSample> = evidence
        .fiber_samples
        .iter()
        .filter(|s| s.dimension > g)
        .collect();
    if !special.is_empty() {
        evidence.notes.push(format!(
            "{} sampled fiber(s) exceed the generic dimension {g}",
            special.len()
        ));
    }
    let label = match g {
        3 => CaseLabel::Alpha21,
        2 => CaseLabel::Alpha22,
        1 => CaseLabel::Alpha23,
        0 => CaseLabel::Alpha24,
        _ => unreachable!("projective fiber dimension is at most 3"),
    };
    Ok((label, g))
}

fn z_status_one_prime(subpfs: &[MultiPoly], p: u64, evidence: &mut Evidence) -> Result<ZStatus> {
    let reduced: Vec<MultiPoly> = subpfs
        .iter()
        .map(|q| q.reduce_mod(p))
        .collect::<Result<_>>()?;
    let h: Vec<usize> = (2..=10u32)
        .map(|t| ideal_hilbert_function(&reduced, 4, t, p))
        .collect();
    evidence.z_hilbert.push(ZHilbertTrace {
        prime: p,
        h: h.clone(),
    });
    // h holds t = 2..=10; stability of the tail decides the dimension.
    let tail = &h[h.len() - 3..];
    if tail[0] == tail[1] && tail[1] == tail[2] {
        if tail[2] == 0 {
            Ok(ZStatus::Empty)
        } else {
            Ok(ZStatus::Finite { degree: tail[2] })
        }
    } else {
        Ok(ZStatus::PositiveDimensional)
    }
}

/// Status of Z, the common zero locus in P^3 of the fifteen sub-pfaffian
/// quadrics, decided by the growth of the Hilbert function of the quadric
/// ideal over each prime: stabilizing values mean a finite scheme (the stable
/// value is its degree, zero meaning empty), growing values mean positive
/// dimension.
pub fn z_locus_status(w: &Web, cfg: &ClassifyConfig) -> Result<ZStatus> {
    let mut evidence = Evidence::default();
    z_locus_status_impl(&w.pencil().sub_pfaffians(), cfg, &mut evidence)
}

fn z_locus_status_impl(
    subpfs: &[MultiPoly],
    cfg: &ClassifyConfig,
    evidence: &mut Evidence,
) -> Result<ZStatus> {
    let mut statuses: Vec<(u64, ZStatus)> = Vec::new();
    for &p in &cfg.primes {
        statuses.push((p, z_status_one_prime(subpfs, p, evidence)?));
    }
    let agreed = statuses.windows(2).all(|w| w[0].1 == w[1].1);
    let status = if agreed {
        statuses[0].1
    } else {
        // Resample with a reserve prime and take the majority value.
        let extra = z_status_one_prime(subpfs, RESERVE_PRIME, evidence)?;
        evidence.notes.push(format!(
            "primes disagreed on Z; reserve prime {RESERVE_PRIME} says {extra}"
        ));
        let all: Vec<ZStatus> = statuses.iter().map(|s| s.1).chain([extra]).collect();
        let mut best = None;
        for cand in &all {
            let votes = all.iter().filter(|s| *s == cand).count();
            if votes * 2 > all.len() {
                best = Some(*cand);
            }
        }
        best.ok_or_else(|| {
            Error::PrimesDisagree(
                statuses
                    .iter()
                    .map(|(p, s)| format!("p={p}: {s}"))
                    .collect::<Vec<_>>()
                    .join(", "),
            )
        })?
    };
    Ok(status)
}

/// Verifies a candidate singular point of the cubic exactly: the cubic and
/// all four partials vanish at it.
pub fn verify_singular_candidate(cubic: &MultiPoly, point: &[Scalar]) -> Result<bool> {
    if !cubic.eval(point)?.is_zero() {
        return Ok(false);
    }
    for v in 0..4 {
        if !cubic.partial_derivative(v).eval(point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive search for singular points of the cubic over each small prime
/// (p <= 101), with naive lifting of the hits to rational candidates verified
/// exactly.
pub fn surface_singularity_probe(cubic: &MultiPoly, probe_primes: &[u64]) -> Result<ProbeSummary> {
    let mut summary = ProbeSummary::default();
    let mut polys = vec![cubic.clone()];
    for v in 0..4 {
        polys.push(cubic.partial_derivative(v));
    }
    let mut verified: Vec<Vec<Scalar>> = Vec::new();
    for &p in probe_primes {
        if p > 101 {
            return Err(Error::InvalidInput(format!(
                "probe prime {p} exceeds the exhaustive-search bound 101"
            )));
        }
        let (count, points) = common_zeros_p3(&polys, p, 16)?;
        summary.counts.push(PrimeCount {
            prime: p,
            singular_points: count,
        });
        // Lift each hit: residues to signed representatives.
        for pt in points {
            let lift: Vec<Scalar> = pt
                .iter()
                .map(|&v| {
                    let signed = if v <= p / 2 {
                        v as i64
                    } else {
                        v as i64 - p as i64
                    };
                    Scalar::from_int(signed)
                })
                .collect();
            if verified.iter().any(|w| w == &lift) {
                continue;
            }
            if verify_singular_candidate(cubic, &lift)? {
                verified.push(lift);
            }
        }
    }
    summary.rational_points = verified
        .into_iter()
        .map(|pt| VerifiedSingularPoint {
            point: pt.iter().map(|s| s.to_string()).collect(),
            pencil_rank: None,
        })
        .collect();
    Ok(summary)
}

/// Hyperplane spanned by the kernels of the four generators, when that span
/// is 5-dimensional: the degeneracy locus of a wholly rank-2 web is the
/// triple of this hyperplane.
fn alpha1_hyperplane(w: &Web) -> Option<MultiPoly> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in w.generators() {
        let (_, kernel) = g.rank_kernel();
        rows.extend(kernel);
    }
    let m = DenseMatrix::from_rows(rows).ok()?;
    let (rank, normal) = m.rank_kernel();
    if rank != 5 || normal.len() != 1 {
        return None;
    }
    let terms = normal[0]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let mut e = vec![0u16; 6];
            e[i] = 1;
            (e, c.clone())
        });
    Some(MultiPoly::from_terms(6, terms))
}

/// Classifies a web and decides regularity of the locus map at it.
///
/// Deterministic given the web, the primes and the seed. The report's
/// evidence records every sampled point and rank.
pub fn classify(w: &Web, cfg: &ClassifyConfig) -> Result<ClassificationReport> {
    if !w.is_independent() {
        return Err(Error::DegenerateWeb);
    }
    let mut evidence = Evidence {
        primes: cfg.primes.clone(),
        seed: cfg.seed,
        samples_requested: cfg.samples,
        ..Evidence::default()
    };
    let pencil = w.pencil();
    let pf = pencil.pfaffian();
    let subpfs = pencil.sub_pfaffians();
    let all_sub_zero = subpfs.iter().all(MultiPoly::is_zero);
    // Structural exclusion: the first-row expansion writes the pfaffian in
    // the sub-pfaffians, so their common vanishing forces pf = 0.
    assert!(
        !all_sub_zero || pf.is_zero(),
        "all sub-pfaffians vanish but the pfaffian does not"
    );

    if pf.is_zero() {
        if all_sub_zero {
            if let Some(h) = alpha1_hyperplane(w) {
                evidence.notes.push(format!(
                    "degeneracy locus is the triple hyperplane 3H, H: {} = 0",
                    h.to_text(&crate::web::AMBIENT_VARS)
                ));
            }
            return Ok(ClassificationReport {
                case: CaseLabel::Alpha1,
                pf_identically_zero: true,
                generic_fiber_dimension: None,
                z_status: None,
                surface_probe: None,
                regular: false,
                evidence,
            });
        }
        let (label, g) = alpha_subcase(w, cfg, &mut evidence)?;
        return Ok(ClassificationReport {
            case: label,
            pf_identically_zero: true,
            generic_fiber_dimension: Some(g),
            z_status: None,
            surface_probe: None,
            regular: false,
            evidence,
        });
    }

    // Case beta: the pfaffian cubic is a genuine surface.
    let z = z_locus_status_impl(&subpfs, cfg, &mut evidence)?;
    // Corroborate with an exhaustive small-prime scan; every point of Z lies
    // on the cubic (rank <= 2 forces pf = 0).
    if let Some(&p0) = cfg.probe_primes.first() {
        let (count, points) = common_zeros_p3(&subpfs, p0, 8)?;
        let pf_p = pf.reduce_mod(p0)?;
        for pt in points {
            let q: Vec<Scalar> = pt.iter().map(|&v| Scalar::fp(v as i64, p0)).collect();
            let on_cubic = pf_p.eval(&q)?.is_zero();
            assert!(on_cubic, "a rank-2 point escaped the pfaffian cubic");
            evidence.z_points.push(ZPointSample {
                prime: p0,
                point: pt,
                on_cubic,
            });
        }
        evidence.notes.push(format!(
            "exhaustive scan over F_{p0}: {count} point(s) of Z"
        ));
    }
    let probe = if cfg.probe_primes.is_empty() {
        None
    } else {
        let mut probe = surface_singularity_probe(&pf, &cfg.probe_primes)?;
        for vp in &mut probe.rational_points {
            let point: Vec<Scalar> = vp
                .point
                .iter()
                .map(|s| crate::algebra::Domain::Rational.parse(s))
                .collect::<Result<_>>()?;
            vp.pencil_rank = Some(pencil.evaluate(&point)?.rank());
        }
        Some(probe)
    };
    let (case, regular) = match z {
        ZStatus::Empty => (CaseLabel::Beta1, true),
        ZStatus::Finite { .. } => (CaseLabel::Beta2, true),
        ZStatus::PositiveDimensional => (CaseLabel::Beta2, false),
    };
    Ok(ClassificationReport {
        case,
        pf_identically_zero: false,
        generic_fiber_dimension: None,
        z_status: Some(z),
        surface_probe: probe,
        regular,
        evidence,
    })
}
