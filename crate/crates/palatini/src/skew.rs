//! 6x6 skew-symmetric matrices, constant and with linear-form entries:
//! pfaffians, principal 4x4 sub-pfaffians, the congruence action, and the
//! block construction turning a 3x3 matrix of linear forms into a skew pencil.
//!
//! The pfaffian convention is fixed once: recursive expansion along the first
//! row, `pf(M) = sum_{j>0} (-1)^{j+1} m_{0j} pf(M without rows/cols 0, j)`,
//! with the 2x2 base case `pf([[0, a], [-a, 0]]) = a`.

use serde::{Deserialize, Serialize};

use crate::algebra::{DenseMatrix, Domain, MultiPoly, Scalar};
use crate::error::{Error, Result};

/// Index pairs `(i, j)`, `0 <= i < j <= 5`, in the fixed order used for
/// upper-triangular storage, Pluecker coordinates and minor labels.
pub const UPPER_PAIRS: [(usize, usize); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Position of the pair `(i, j)` (with `i < j`) inside [`UPPER_PAIRS`].
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < 6);
    UPPER_PAIRS
        .iter()
        .position(|&p| p == (i, j))
        .expect("valid pair")
}

/// Sign fixed by the pfaffian convention for the block matrix
/// `[[0, N], [-N^t, 0]]`: `pf = BLOCK_PFAFFIAN_SIGN * det N`.
pub const BLOCK_PFAFFIAN_SIGN: i64 = -1;

/// Entries that support the ring operations needed by the pfaffian recursion.
pub(crate) trait PfEntry: Clone {
    fn pf_add(&self, other: &Self) -> Self;
    fn pf_mul(&self, other: &Self) -> Self;
    fn pf_neg(&self) -> Self;
}

impl PfEntry for Scalar {
    fn pf_add(&self, other: &Self) -> Self {
        self + other
    }
    fn pf_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn pf_neg(&self) -> Self {
        -self
    }
}

impl PfEntry for MultiPoly {
    fn pf_add(&self, other: &Self) -> Self {
        self + other
    }
    fn pf_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn pf_neg(&self) -> Self {
        -self
    }
}

/// Pfaffian of the skew matrix restricted to `indices` (even count >= 2),
/// by first-row expansion.
pub(crate) fn pfaffian_on<T: PfEntry>(indices: &[usize], entry: &impl Fn(usize, usize) -> T) -> T {
    debug_assert!(indices.len() >= 2 && indices.len() % 2 == 0);
    if indices.len() == 2 {
        return entry(indices[0], indices[1]);
    }
    let mut acc: Option<T> = None;
    for j in 1..indices.len() {
        let rest: Vec<usize> = indices
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != 0 && k != j)
            .map(|(_, &v)| v)
            .collect();
        let mut term = entry(indices[0], indices[j]).pf_mul(&pfaffian_on(&rest, entry));
        if j % 2 == 0 {
            term = term.pf_neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.pf_add(&term),
        });
    }
    acc.expect("at least one expansion term")
}

/// A constant 6x6 skew-symmetric matrix, stored as its 15 upper entries in
/// [`UPPER_PAIRS`] order. Skewness holds by construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewConst {
    upper: Vec<Scalar>,
    domain: Domain,
}

impl SkewConst {
    pub fn new(upper: Vec<Scalar>) -> Result<Self> {
        if upper.len() != 15 {
            return Err(Error::DimensionMismatch {
                expected: 15,
                found: upper.len(),
            });
        }
        let domain = upper[0].domain();
        for s in &upper {
            if s.domain() != domain {
                return Err(Error::DomainMismatch {
                    left: domain,
                    right: s.domain(),
                });
            }
        }
        Ok(SkewConst { upper, domain })
    }

    pub fn zero(domain: Domain) -> Self {
        SkewConst {
            upper: vec![domain.zero(); 15],
            domain,
        }
    }

    /// Builds from integer upper entries given as `((i, j), value)` pairs.
    pub fn from_int_entries(entries: &[((usize, usize), i64)]) -> Self {
        let mut m = Self::zero(Domain::Rational);
        for &((i, j), v) in entries {
            m.upper[pair_index(i, j)] = Scalar::from_int(v);
        }
        m
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn upper(&self) -> &[Scalar] {
        &self.upper
    }

    /// Entry `(i, j)` of the full matrix, with the sign implied by skewness.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[pair_index(i, j)].clone(),
            Equal => self.domain.zero(),
            Greater => -&self.upper[pair_index(j, i)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Scalar::is_zero)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(6, 6, self.domain, |i, j| self.get(i, j))
    }

    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        if m.rows() != 6 || m.cols() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                found: m.rows().max(m.cols()),
            });
        }
        for i in 0..6 {
            for j in 0..=i {
                let expect = -m.get(j, i);
                if *m.get(i, j) != expect {
                    return Err(Error::InvalidInput("matrix is not skew-symmetric".into()));
                }
            }
        }
        let upper = UPPER_PAIRS
            .iter()
            .map(|&(i, j)| m.get(i, j).clone())
            .collect();
        SkewConst::new(upper)
    }

    /// Rank and kernel basis of the full matrix. Skew rank is always even.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let (rank, kernel) = self.to_dense().rank_kernel();
        assert!(
            rank % 2 == 0,
            "skew-symmetric rank must be even, got {rank}"
        );
        (rank, kernel)
    }

    pub fn rank(&self) -> usize {
        self.rank_kernel().0
    }

    /// The pfaffian under the first-row expansion convention.
    pub fn pfaffian(&self) -> Scalar {
        pfaffian_on(&[0, 1, 2, 3, 4, 5], &|i, j| self.get(i, j))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SkewConst {
            upper: self.upper.iter().map(|u| u * s).collect(),
            domain: self.domain,
        }
    }

    pub fn add(&self, other: &SkewConst) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch {
                left: self.domain,
                right: other.domain,
            });
        }
        SkewConst::new(
            self.upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        SkewConst::new(
            self.upper
                .iter()
                .map(|s| s.reduce_mod(p))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Flattened upper-triangle as a 15-vector (used for span-rank tests).
    pub fn flatten(&self) -> Vec<Scalar> {
        self.upper.clone()
    }
}

/// JSON form: `{"upper": ["a01", "a02", ..., "a45"]}` with exact fractions.
#[derive(Serialize, Deserialize)]
pub struct SkewConstJson {
    pub upper: Vec<String>,
}

impl SkewConst {
    pub fn to_json(&self) -> SkewConstJson {
        SkewConstJson {
            upper: self.upper.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn from_json(j: &SkewConstJson) -> Result<Self> {
        let upper = j
            .upper
            .iter()
            .map(|s| Domain::Rational.parse(s))
            .collect::<Result<Vec<_>>>()?;
        SkewConst::new(upper)
    }
}

/// The skew matrix of linear forms `x A + y B + z C + t D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewPencil {
    coeffs: [SkewConst; 4],
}

/// Variable names used when printing pencil pfaffians.
pub const PENCIL_VARS: [&str; 4] = ["x", "y", "z", "t"];

impl SkewPencil {
    pub fn new(a: SkewConst, b: SkewConst, c: SkewConst, d: SkewConst) -> Result<Self> {
        let domain = a.domain();
        for m in [&b, &c, &d] {
            if m.domain() != domain {
                return Err(Error::DomainMismatch {
                    left: domain,
                    right: m.domain(),
                });
            }
        }
        Ok(SkewPencil {
            coeffs: [a, b, c, d],
        })
    }

    pub fn coefficients(&self) -> &[SkewConst; 4] {
        &self.coeffs
    }

    pub fn domain(&self) -> Domain {
        self.coeffs[0].domain()
    }

    /// Entry `(i, j)` as a linear form in the four pencil variables.
    pub fn entry(&self, i: usize, j: usize) -> MultiPoly {
        let mut terms = Vec::new();
        for (k, m) in self.coeffs.iter().enumerate() {
            let c = m.get(i, j);
            if !c.is_zero() {
                let mut e = vec![0u16; 4];
                e[k] = 1;
                terms.push((e, c));
            }
        }
        MultiPoly::from_terms(4, terms)
    }

    /// Evaluates the pencil at a point of P^3.
    pub fn evaluate(&self, q: &[Scalar]) -> Result<SkewConst> {
        if q.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: q.len(),
            });
        }
        let mut acc = SkewConst::zero(q[0].domain());
        for (k, m) in self.coeffs.iter().enumerate() {
            acc = acc.add(&m.scale(&q[k]))?;
        }
        Ok(acc)
    }

    /// Pfaffian of the pencil: identically zero or homogeneous of degree
    /// exactly 3 (asserted).
    pub fn pfaffian(&self) -> MultiPoly {
        let pf = pfaffian_on(&[0, 1, 2, 3, 4, 5], &|i, j| self.entry(i, j));
        assert!(
            pf.is_zero() || pf.homogeneous_degree() == Some(3),
            "pencil pfaffian must be zero or a cubic form"
        );
        pf
    }

    /// The 15 pfaffians of the principal 4x4 submatrices, indexed by the
    /// deleted pair in [`UPPER_PAIRS`] order. Each is a quadric; their common
    /// vanishing is exactly the rank <= 2 locus.
    pub fn sub_pfaffians(&self) -> Vec<MultiPoly> {
        UPPER_PAIRS
            .iter()
            .map(|&(d1, d2)| {
                let kept: Vec<usize> = (0..6).filter(|&k| k != d1 && k != d2).collect();
                pfaffian_on(&kept, &|i, j| self.entry(i, j))
            })
            .collect()
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        let [a, b, c, d] = &self.coeffs;
        SkewPencil::new(
            a.reduce_mod(p)?,
            b.reduce_mod(p)?,
            c.reduce_mod(p)?,
            d.reduce_mod(p)?,
        )
    }

    /// Builds a pencil from 15 upper entries given as linear forms in the four
    /// pencil variables, by extracting the coefficient matrices.
    pub fn from_linear_entries(upper: &[MultiPoly]) -> Result<Self> {
        if upper.len() != 15 {
            return Err(Error::DimensionMismatch {
                expected: 15,
                found: upper.len(),
            });
        }
        for e in upper {
            if e.nvars() != 4 {
                return Err(Error::DimensionMismatch {
                    expected: 4,
                    found: e.nvars(),
                });
            }
            if !e.is_linear_form() {
                return Err(Error::NotLinearForm);
            }
        }
        let mut coeffs = Vec::with_capacity(4);
        for var in 0..4usize {
            let mono = crate::algebra::Monomial::variable(4, var);
            let entries: Vec<Scalar> = upper
                .iter()
                .map(|e| {
                    e.coefficient(&mono)
                        .cloned()
                        .unwrap_or_else(|| Domain::Rational.zero())
                })
                .collect();
            coeffs.push(SkewConst::new(entries)?);
        }
        let [a, b, c, d]: [SkewConst; 4] = coeffs.try_into().expect("four coefficients");
        SkewPencil::new(a, b, c, d)
    }
}

/// JSON form: `{"A": {...}, "B": {...}, "C": {...}, "D": {...}}`.
#[derive(Serialize, Deserialize)]
pub struct SkewPencilJson {
    #[serde(rename = "A")]
    pub a: SkewConstJson,
    #[serde(rename = "B")]
    pub b: SkewConstJson,
    #[serde(rename = "C")]
    pub c: SkewConstJson,
    #[serde(rename = "D")]
    pub d: SkewConstJson,
}

impl SkewPencil {
    pub fn to_json(&self) -> SkewPencilJson {
        let [a, b, c, d] = &self.coeffs;
        SkewPencilJson {
            a: a.to_json(),
            b: b.to_json(),
            c: c.to_json(),
            d: d.to_json(),
        }
    }

    pub fn from_json(j: &SkewPencilJson) -> Result<Self> {
        SkewPencil::new(
            SkewConst::from_json(&j.a)?,
            SkewConst::from_json(&j.b)?,
            SkewConst::from_json(&j.c)?,
            SkewConst::from_json(&j.d)?,
        )
    }
}

/// Congruence action `M -> P^t M P`. `P` must be invertible.
pub fn congruence(p: &DenseMatrix, m: &SkewConst) -> Result<SkewConst> {
    if p.rows() != 6 || p.cols() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: p.rows().max(p.cols()),
        });
    }
    if !p.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let res = p.transpose().matmul(&m.to_dense())?.matmul(p)?;
    SkewConst::from_dense(&res)
}

/// The 6x6 block pencil `[[0, N], [-N^t, 0]]` from a 3x3 matrix of linear
/// forms in the four pencil variables. Its pfaffian is
/// `BLOCK_PFAFFIAN_SIGN * det N`.
pub fn block_from_3x3(n: &[[MultiPoly; 3]; 3]) -> Result<SkewPencil> {
    let mut upper = vec![MultiPoly::zero(4); 15];
    for i in 0..3 {
        for j in 0..3 {
            // Block position (i, 3 + j) holds N[i][j].
            upper[pair_index(i, 3 + j)] = n[i][j].clone();
        }
    }
    SkewPencil::from_linear_entries(&upper)
}

/// Determinant of a small square matrix of polynomials, by first-row Laplace
/// expansion.
pub fn poly_determinant(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != j)
                    .map(|k| m[i][k].clone())
                    .collect()
            })
            .collect();
        let mut term = &m[0][j] * &poly_determinant(&minor);
        if j % 2 == 1 {
            term = -&term;
        }
        acc = &acc + &term;
    }
    acc
}

/// Pfaffian of an explicit 6x6 matrix of polynomial entries. The matrix must
/// be exactly skew-symmetric; used for pencils whose entries carry symbolic
/// parameters beyond the four pencil variables.
pub fn pfaffian_of_poly_matrix(m: &[[MultiPoly; 6]; 6]) -> Result<MultiPoly> {
    for i in 0..6 {
        for j in 0..=i {
            let expect = -&m[j][i];
            if m[i][j] != expect {
                return Err(Error::InvalidInput("matrix is not skew-symmetric".into()));
            }
        }
    }
    Ok(pfaffian_on(&[0, 1, 2, 3, 4, 5], &|i, j| m[i][j].clone()))
}
