//! Webs of linear complexes and the degeneracy locus they cut out in P^5:
//! the 4x6 matrix of linear forms, its fifteen quartic minors, Hilbert
//! functions over prime fields, scroll fibers, and the 4-secant test on the
//! base congruence of the web.

use num_integer::binomial;
use rand::Rng;

use crate::algebra::{
    binary_forms_gcd_degree, ideal_hilbert_function, monomials_of_degree, DenseMatrix, Domain,
    MultiPoly, Scalar,
};
use crate::error::{Error, Result};
use crate::grass::PluckerLine;
use crate::skew::{poly_determinant, SkewConst, SkewPencil, UPPER_PAIRS};

/// Variable names for the ambient P^5.
pub const AMBIENT_VARS: [&str; 6] = ["x0", "x1", "x2", "x3", "x4", "x5"];

/// A web of linear complexes: four rational 6x6 skew generators. The
/// independence flag records whether they span a 3-space of the dual P^14;
/// webs with smaller span are accepted here but rejected by the operations
/// that require a genuine web.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Web {
    gens: [SkewConst; 4],
    independent: bool,
}

impl Web {
    pub fn new(a: SkewConst, b: SkewConst, c: SkewConst, d: SkewConst) -> Result<Self> {
        for m in [&a, &b, &c, &d] {
            if m.domain() != Domain::Rational {
                return Err(Error::DomainMismatch {
                    left: Domain::Rational,
                    right: m.domain(),
                });
            }
        }
        let rows: Vec<Vec<Scalar>> = [&a, &b, &c, &d].iter().map(|m| m.flatten()).collect();
        let rank = DenseMatrix::from_rows(rows)?.rank();
        Ok(Web {
            gens: [a, b, c, d],
            independent: rank == 4,
        })
    }

    pub fn generators(&self) -> &[SkewConst; 4] {
        &self.gens
    }

    pub fn is_independent(&self) -> bool {
        self.independent
    }

    /// Rank of the span of the four generators inside the 15-dimensional
    /// coordinate space.
    pub fn span_rank(&self) -> usize {
        let rows: Vec<Vec<Scalar>> = self.gens.iter().map(|m| m.flatten()).collect();
        DenseMatrix::from_rows(rows).expect("four rows").rank()
    }

    /// The pencil `x A + y B + z C + t D` with the web's generators as
    /// coefficients.
    pub fn pencil(&self) -> SkewPencil {
        SkewPencil::new(
            self.gens[0].clone(),
            self.gens[1].clone(),
            self.gens[2].clone(),
            self.gens[3].clone(),
        )
        .expect("uniform domain")
    }

    /// Pfaffian of the pencil; `None` marks the identically zero cubic
    /// (case alpha: every complex of the web is special).
    pub fn pfaffian_cubic(&self) -> Option<MultiPoly> {
        let pf = self.pencil().pfaffian();
        if pf.is_zero() {
            None
        } else {
            Some(pf)
        }
    }

    pub fn generators_mod(&self, p: u64) -> Result<[SkewConst; 4]> {
        Ok([
            self.gens[0].reduce_mod(p)?,
            self.gens[1].reduce_mod(p)?,
            self.gens[2].reduce_mod(p)?,
            self.gens[3].reduce_mod(p)?,
        ])
    }

    /// The 4x6 matrix of linear forms and its fifteen quartic minors.
    pub fn degeneracy_system(&self) -> DegeneracySystem {
        DegeneracySystem::from_generators(&self.gens)
    }

    /// A web with integer entries drawn uniformly from `[-bound, bound]`,
    /// redrawn until the four generators are independent.
    pub fn random_integer(rng: &mut impl Rng, bound: i64) -> Web {
        loop {
            let gen = |rng: &mut dyn rand::RngCore| {
                SkewConst::new(
                    (0..15)
                        .map(|_| Scalar::from_int(rng.gen_range(-bound..=bound)))
                        .collect(),
                )
                .expect("15 entries")
            };
            let w = Web::new(gen(rng), gen(rng), gen(rng), gen(rng)).expect("rational web");
            if w.independent {
                return w;
            }
        }
    }

    pub fn to_json(&self) -> crate::skew::SkewPencilJson {
        self.pencil().to_json()
    }

    pub fn from_json(j: &crate::skew::SkewPencilJson) -> Result<Web> {
        let pencil = SkewPencil::from_json(j)?;
        let [a, b, c, d] = pencil.coefficients().clone();
        Web::new(a, b, c, d)
    }
}

/// Equations of the degeneracy locus: the matrix `F` with row `k` equal to
/// `(M_k x)^t`, and the fifteen 4x4 minors indexed by the deleted column pair
/// in [`UPPER_PAIRS`] order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegeneracySystem {
    /// Row-major 4x6 matrix of linear forms in x0..x5.
    f: Vec<MultiPoly>,
    /// The 15 minors; `minors[k]` deletes the column pair `UPPER_PAIRS[k]`.
    minors: Vec<MultiPoly>,
}

impl DegeneracySystem {
    fn from_generators(gens: &[SkewConst; 4]) -> Self {
        let domain = gens[0].domain();
        let mut f = Vec::with_capacity(24);
        for m in gens {
            for j in 0..6 {
                // Row entry j: sum_i m[j][i] x_i.
                let terms = (0..6).filter_map(|i| {
                    let c = m.get(j, i);
                    if c.is_zero() {
                        None
                    } else {
                        let mut e = vec![0u16; 6];
                        e[i] = 1;
                        Some((e, c))
                    }
                });
                f.push(MultiPoly::from_terms(6, terms));
            }
        }
        let minors = UPPER_PAIRS
            .iter()
            .map(|&(c1, c2)| {
                let kept: Vec<usize> = (0..6).filter(|&j| j != c1 && j != c2).collect();
                let sub: Vec<Vec<MultiPoly>> = (0..4)
                    .map(|r| kept.iter().map(|&j| f[r * 6 + j].clone()).collect())
                    .collect();
                let minor = poly_determinant(&sub);
                debug_assert!(
                    minor.is_zero() || minor.homogeneous_degree() == Some(4),
                    "nonzero minors are quartic forms"
                );
                minor
            })
            .collect();
        let _ = domain;
        DegeneracySystem { f, minors }
    }

    pub fn matrix(&self) -> &[MultiPoly] {
        &self.f
    }

    pub fn entry(&self, row: usize, col: usize) -> &MultiPoly {
        &self.f[row * 6 + col]
    }

    pub fn minors(&self) -> &[MultiPoly] {
        &self.minors
    }

    /// The minor obtained by deleting columns `c1 < c2`.
    pub fn minor(&self, c1: usize, c2: usize) -> &MultiPoly {
        &self.minors[crate::skew::pair_index(c1, c2)]
    }

    pub fn reduce_mod(&self, p: u64) -> Result<DegeneracySystem> {
        Ok(DegeneracySystem {
            f: self
                .f
                .iter()
                .map(|q| q.reduce_mod(p))
                .collect::<Result<_>>()?,
            minors: self
                .minors
                .iter()
                .map(|q| q.reduce_mod(p))
                .collect::<Result<_>>()?,
        })
    }

    /// Evaluates `F` at a point of P^5.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<DenseMatrix> {
        let rows: Vec<Vec<Scalar>> = (0..4)
            .map(|r| {
                (0..6)
                    .map(|c| self.entry(r, c).eval(point))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        DenseMatrix::from_rows(rows)
    }

    /// True when every minor vanishes at the point.
    pub fn on_locus(&self, point: &[Scalar]) -> Result<bool> {
        for m in &self.minors {
            if !m.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The scroll fiber: the unique `(x, y, z, t)` with `(xA + yB + zC + tD) P = 0`
/// for a point `P` of the locus where `F(P)` has rank 3.
pub fn scroll_fiber(sys: &DegeneracySystem, point: &[Scalar]) -> Result<Vec<Scalar>> {
    if !sys.on_locus(point)? {
        return Err(Error::PointNotOnLocus);
    }
    let f_at = sys.evaluate(point)?;
    let (rank, _) = f_at.rank_kernel();
    if rank != 3 {
        return Err(Error::AmbiguousFiber { rank });
    }
    let (_, kernel) = f_at.transpose().rank_kernel();
    debug_assert_eq!(kernel.len(), 1);
    Ok(kernel
        .into_iter()
        .next()
        .expect("rank 3 of 4 rows leaves a line"))
}

/// Hilbert function of the minor ideal at degree `t` over `F_p`: the dimension
/// of degree-`t` forms in six variables minus the rank of the coefficient
/// matrix of `{m * F_ij : deg m = t - 4}`.
pub fn hilbert_function(sys: &DegeneracySystem, t: u32, p: u64) -> Result<usize> {
    if t < 4 {
        return Err(Error::InvalidInput(format!(
            "hilbert function needs t >= 4, got {t}"
        )));
    }
    let minors_p: Vec<MultiPoly> = sys
        .minors
        .iter()
        .map(|m| m.reduce_mod(p))
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(
        monomials_of_degree(6, t).len() as u64,
        binomial((t + 5) as u64, 5)
    );
    Ok(ideal_hilbert_function(&minors_p, 6, t, p))
}

/// Degree of the locus from Hilbert-function values at consecutive `t` inside
/// the stabilized window: the common third finite difference, which equals
/// `3!` times the leading coefficient.
pub fn degree_from_hilbert(values: &[usize]) -> Result<usize> {
    if values.len() < 4 {
        return Err(Error::InvalidInput(format!(
            "need at least 4 consecutive values, got {}",
            values.len()
        )));
    }
    let v: Vec<i64> = values.iter().map(|&x| x as i64).collect();
    let third = |i: usize| v[i + 3] - 3 * v[i + 2] + 3 * v[i + 1] - v[i];
    let d = third(0);
    for i in 1..=values.len() - 4 {
        if third(i) != d {
            return Err(Error::WindowNotStabilized);
        }
    }
    if d < 0 {
        return Err(Error::WindowNotStabilized);
    }
    Ok(d as usize)
}

/// The unique line of the base congruence through a generic point `Q`:
/// the kernel of the system `Q^t M_k R = 0`, which always contains `Q`, must
/// be exactly 2-dimensional; the returned line is spanned by `Q` and a second
/// kernel vector.
pub fn c4_line_through(gens: &[SkewConst; 4], q: &[Scalar]) -> Result<PluckerLine> {
    if q.len() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: q.len(),
        });
    }
    let rows: Vec<Vec<Scalar>> = gens
        .iter()
        .map(|m| {
            (0..6)
                .map(|j| {
                    let mut acc = q[0].domain().zero();
                    for (i, qi) in q.iter().enumerate() {
                        acc = &acc + &(qi * &m.get(i, j));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let (_, kernel) = DenseMatrix::from_rows(rows)?.rank_kernel();
    if kernel.len() != 2 {
        return Err(Error::NonGenericDirection {
            solution_dim: kernel.len().saturating_sub(1),
        });
    }
    for r in &kernel {
        if let Ok(line) = PluckerLine::from_points(q, r) {
            return Ok(line);
        }
    }
    Err(Error::NonGenericDirection { solution_dim: 0 })
}

/// Result of intersecting a line of the base congruence with the locus.
#[derive(Clone, Debug)]
pub enum SecantIntersection {
    /// The scheme intersection has the given length (expected 4).
    Length { line: PluckerLine, length: usize },
    /// Every minor restricts to zero: the line lies inside the locus.
    Contained { line: PluckerLine },
}

/// Restricts all fifteen minors to the congruence line through `Q` over `F_p`
/// and measures the scheme intersection as the degree of the gcd of the
/// nonzero restricted binary forms.
pub fn four_secant_check(w: &Web, q: &[Scalar], p: u64) -> Result<SecantIntersection> {
    let gens = w.generators_mod(p)?;
    let line = c4_line_through(&gens, q)?;
    let sys = w.degeneracy_system().reduce_mod(p)?;
    let (qq, rr) = line.span();
    // x_i -> s Q_i + u R_i.
    let images: Vec<MultiPoly> = (0..6)
        .map(|i| {
            MultiPoly::from_terms(
                2,
                [(vec![1u16, 0], qq[i].clone()), (vec![0, 1], rr[i].clone())],
            )
        })
        .collect();
    let restricted: Vec<MultiPoly> = sys
        .minors()
        .iter()
        .map(|m| m.compose(&images))
        .collect::<Result<_>>()?;
    if restricted.iter().all(MultiPoly::is_zero) {
        return Ok(SecantIntersection::Contained { line });
    }
    let length = binary_forms_gcd_degree(&restricted)?;
    Ok(SecantIntersection::Length { line, length })
}

/// Projective roots `(s : u)` of a nonzero binary form over `F_p`, by scanning
/// the affine chart `u = 1` and testing the point at infinity.
pub(crate) fn binary_form_roots(form: &MultiPoly, p: u64) -> Vec<(u64, u64)> {
    debug_assert_eq!(form.nvars(), 2);
    let mut roots = Vec::new();
    let d = match form.total_degree() {
        Some(d) => d,
        None => return roots,
    };
    // Dense coefficients: coeff[i] multiplies s^i u^(d-i).
    let mut coeff = vec![0u64; d as usize + 1];
    for (m, c) in form.terms() {
        coeff[m.exponents()[0] as usize] = c.as_fp().expect("form over F_p");
    }
    for s in 0..p {
        let mut acc = 0u64;
        for &c in coeff.iter().rev() {
            acc = crate::algebra::fp::add(crate::algebra::fp::mul(acc, s, p), c, p);
        }
        if acc == 0 {
            roots.push((s, 1));
        }
    }
    if coeff[d as usize] == 0 {
        roots.push((1, 0));
    }
    roots
}

/// Draws a point of the degeneracy locus over `F_p` by picking a point of the
/// pfaffian cubic (root scan along a random line of P^3) and taking a point of
/// the corresponding kernel line. Returns `None` when the draw degenerates.
pub fn sample_point_on_locus(
    pencil_p: &SkewPencil,
    p: u64,
    rng: &mut impl Rng,
) -> Option<Vec<Scalar>> {
    let pf = pencil_p.pfaffian();
    if pf.is_zero() {
        return None;
    }
    let a: Vec<Scalar> = (0..4)
        .map(|_| Scalar::fp(rng.gen_range(0..p as i64), p))
        .collect();
    let b: Vec<Scalar> = (0..4)
        .map(|_| Scalar::fp(rng.gen_range(0..p as i64), p))
        .collect();
    let images: Vec<MultiPoly> = (0..4)
        .map(|i| {
            MultiPoly::from_terms(
                2,
                [(vec![1u16, 0], a[i].clone()), (vec![0, 1], b[i].clone())],
            )
        })
        .collect();
    let restricted = pf.compose(&images).ok()?;
    if restricted.is_zero() {
        return None;
    }
    let roots = binary_form_roots(&restricted, p);
    let (s, u) = *roots.first()?;
    let su = [Scalar::fp(s as i64, p), Scalar::fp(u as i64, p)];
    let q: Vec<Scalar> = (0..4)
        .map(|i| &(&su[0] * &a[i]) + &(&su[1] * &b[i]))
        .collect();
    let at = pencil_p.evaluate(&q).ok()?;
    let (rank, kernel) = at.rank_kernel();
    if rank != 4 {
        return None;
    }
    // Any point of the kernel line lies on the locus.
    let lambda = Scalar::fp(rng.gen_range(0..p as i64), p);
    let point: Vec<Scalar> = (0..6)
        .map(|i| &kernel[0][i] + &(&lambda * &kernel[1][i]))
        .collect();
    if point.iter().all(Scalar::is_zero) {
        return None;
    }
    Some(point)
}
