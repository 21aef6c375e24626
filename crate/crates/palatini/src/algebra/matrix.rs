//! Exact dense linear algebra: Gaussian elimination with first-nonzero
//! pivoting, rank/kernel, determinants, and a fast rank routine on raw
//! `u64` rows mod `p` for the Hilbert-function workloads.

use crate::algebra::scalar::{fp, Domain, Scalar};
use crate::error::{Error, Result};

/// Row-major matrix of exact scalars over a single domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize, domain: Domain) -> Self {
        DenseMatrix {
            rows,
            cols,
            domain,
            data: vec![domain.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, domain: Domain) -> Self {
        let mut m = Self::zeros(n, n, domain);
        for i in 0..n {
            m.set(i, i, domain.one());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        domain: Domain,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut m = Self::zeros(rows, cols, domain);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidInput("matrix needs at least one row".into()));
        }
        let c = rows[0].len();
        let mut domain = None;
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for s in row {
                match domain {
                    None => domain = Some(s.domain()),
                    Some(d) if d != s.domain() => {
                        return Err(Error::DomainMismatch {
                            left: d,
                            right: s.domain(),
                        })
                    }
                    _ => {}
                }
            }
        }
        let domain = domain.ok_or_else(|| Error::InvalidInput("empty matrix".into()))?;
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            domain,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.domain(), self.domain, "entry domain");
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> DenseMatrix {
        Self::from_fn(self.cols, self.rows, self.domain, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch {
                left: self.domain,
                right: other.domain,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols, self.domain);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.domain.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = self.domain.zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * &v[k]);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // First nonzero pivot below `row`.
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.get(row, col).inv().expect("pivot nonzero");
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let f = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = self.get(r, j) - &(&f * self.get(row, j));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank and an exact basis of the right kernel.
    ///
    /// rank + nullity = cols; the kernel vectors are linearly independent and
    /// the result does not depend on the order of the rows.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let mut m = self.clone();
        let pivots = m.rref();
        let rank = pivots.len();
        let mut kernel = Vec::with_capacity(self.cols - rank);
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![self.domain.zero(); self.cols];
            v[free] = self.domain.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free);
            }
            kernel.push(v);
        }
        (rank, kernel)
    }

    pub fn rank(&self) -> usize {
        self.rank_kernel().0
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Determinant by elimination, tracking row-swap signs.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.domain.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(self.domain.zero());
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(p * n + j, col * n + j);
                }
                det = -&det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot nonzero");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col) * &inv;
                for j in col..n {
                    let v = m.get(r, j) - &(&f * m.get(col, j));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }
}

/// Incremental rank of rows over `F_p` (p odd prime < 2^32 for the fast path).
///
/// Rows are consumed one at a time; memory stays proportional to rank times
/// row length. Entries must already lie in `[0, p)`.
pub struct FpRank {
    p: u64,
    ncols: usize,
    /// Echelon basis rows, each normalized to leading 1, sorted by pivot column.
    basis: Vec<(usize, Vec<u64>)>,
}

impl FpRank {
    pub fn new(ncols: usize, p: u64) -> Self {
        assert!(p < 1 << 32, "fast path requires p < 2^32");
        FpRank {
            p,
            ncols,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `row` against the basis; if a new pivot survives, absorbs it.
    /// Returns true when the row increased the rank.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.ncols);
        let p = self.p;
        for (pc, basis_row) in &self.basis {
            let c = row[*pc];
            if c != 0 {
                // row <- row - c * basis_row (basis pivot is 1)
                for j in *pc..self.ncols {
                    let b = basis_row[j];
                    if b != 0 {
                        row[j] = (row[j] + c * (p - b)) % p;
                    }
                }
            }
        }
        let Some(pivot) = row.iter().position(|&v| v != 0) else {
            return false;
        };
        let inv = fp::inv(row[pivot], p).expect("nonzero mod prime");
        for v in row.iter_mut().skip(pivot) {
            if *v != 0 {
                *v = fp::mul(*v, inv, p);
            }
        }
        let at = self.basis.partition_point(|(c, _)| *c < pivot);
        self.basis.insert(at, (pivot, row));
        true
    }
}
