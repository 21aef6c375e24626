//! Lines of P^5 in Pluecker coordinates, linear complexes as points of the
//! dual P^14, and their incidence.
//!
//! A line is represented constructively by a spanning pair of points whenever
//! available; pure-coordinate lines are validated by reconstructing a spanning
//! pair from the rank-2 skew matrix of their coordinates.

use serde::{Deserialize, Serialize};

use crate::algebra::{DenseMatrix, Domain, Scalar};
use crate::error::{Error, Result};
use crate::skew::{SkewConst, UPPER_PAIRS};

/// A line in P^5: 15 homogeneous coordinates `p_ij = P_i R_j - P_j R_i` in
/// [`UPPER_PAIRS`] order, with a spanning pair of points kept alongside.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PluckerLine {
    p: Vec<Scalar>,
    span: (Vec<Scalar>, Vec<Scalar>),
}

impl PluckerLine {
    /// The line through two non-proportional points of P^5.
    pub fn from_points(p: &[Scalar], r: &[Scalar]) -> Result<Self> {
        if p.len() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                found: p.len(),
            });
        }
        if r.len() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                found: r.len(),
            });
        }
        let coords: Vec<Scalar> = UPPER_PAIRS
            .iter()
            .map(|&(i, j)| &(&p[i] * &r[j]) - &(&p[j] * &r[i]))
            .collect();
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ProportionalPoints);
        }
        Ok(PluckerLine {
            p: coords,
            span: (p.to_vec(), r.to_vec()),
        })
    }

    /// Validates raw coordinates by rebuilding a spanning pair: the
    /// coordinates of a line form a rank-2 skew matrix whose column space is
    /// the spanned 2-plane.
    pub fn from_coordinates(coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != 15 {
            return Err(Error::DimensionMismatch {
                expected: 15,
                found: coords.len(),
            });
        }
        let skew = SkewConst::new(coords.clone())?;
        let dense = skew.to_dense();
        let (rank, _) = dense.rank_kernel();
        if rank != 2 {
            return Err(Error::NotALine);
        }
        // Two independent columns span the plane.
        let cols: Vec<Vec<Scalar>> = (0..6)
            .map(|j| (0..6).map(|i| dense.get(i, j).clone()).collect())
            .collect();
        let mut picked: Vec<Vec<Scalar>> = Vec::new();
        for c in cols {
            if c.iter().all(Scalar::is_zero) {
                continue;
            }
            if picked.is_empty() {
                picked.push(c);
                continue;
            }
            let mut m = picked.clone();
            m.push(c.clone());
            let rank2 = DenseMatrix::from_rows(m)?.rank();
            if rank2 == 2 {
                picked.push(c);
                break;
            }
        }
        if picked.len() != 2 {
            return Err(Error::NotALine);
        }
        let line = Self::from_points(&picked[0], &picked[1])?;
        Ok(PluckerLine {
            p: coords,
            span: line.span,
        })
    }

    pub fn coordinates(&self) -> &[Scalar] {
        &self.p
    }

    pub fn span(&self) -> (&[Scalar], &[Scalar]) {
        (&self.span.0, &self.span.1)
    }

    /// Scale-invariant projective equality.
    pub fn same_line(&self, other: &PluckerLine) -> bool {
        // p and q are proportional iff p_i q_j = p_j q_i for all i, j.
        for i in 0..15 {
            for j in i + 1..15 {
                let lhs = &self.p[i] * &other.p[j];
                let rhs = &self.p[j] * &other.p[i];
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the 15 quadratic relations cut out by rank <= 2 directly:
    /// the 4x4 sub-pfaffians of the coordinate matrix must vanish.
    pub fn satisfies_plucker_relations(&self) -> bool {
        let skew = SkewConst::new(self.p.clone()).expect("15 coordinates");
        UPPER_PAIRS.iter().all(|&(d1, d2)| {
            let kept: Vec<usize> = (0..6).filter(|&k| k != d1 && k != d2).collect();
            crate::skew::pfaffian_on(&kept, &|i, j| skew.get(i, j)).is_zero()
        })
    }

    pub fn to_json(&self) -> PluckerLineJson {
        PluckerLineJson {
            p: self.p.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn from_json(j: &PluckerLineJson) -> Result<Self> {
        let coords =
            j.p.iter()
                .map(|s| Domain::Rational.parse(s))
                .collect::<Result<Vec<_>>>()?;
        Self::from_coordinates(coords)
    }
}

/// JSON form: `{"p": [15 fraction strings]}` in [`UPPER_PAIRS`] order.
#[derive(Serialize, Deserialize)]
pub struct PluckerLineJson {
    pub p: Vec<String>,
}

/// A linear complex: a point of the dual P^14, encoded by its nonzero skew
/// matrix of coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexPoint {
    matrix: SkewConst,
}

impl ComplexPoint {
    pub fn new(matrix: SkewConst) -> Result<Self> {
        if matrix.is_zero() {
            return Err(Error::InvalidInput(
                "complex coordinates are all zero".into(),
            ));
        }
        Ok(ComplexPoint { matrix })
    }

    pub fn matrix(&self) -> &SkewConst {
        &self.matrix
    }

    /// Membership of a line: `sum a_ij p_ij = 0`, equivalently `P^t A R = 0`
    /// on a spanning pair.
    pub fn contains_line(&self, line: &PluckerLine) -> bool {
        let mut acc = self.matrix.domain().zero();
        for (k, &(i, j)) in UPPER_PAIRS.iter().enumerate() {
            acc = &acc + &(&self.matrix.get(i, j) * &line.coordinates()[k]);
        }
        acc.is_zero()
    }

    /// Rank and kernel of the matrix: P(ker A) is the set of centres.
    /// Rank 6 means no centre; rank 4 a singular line (first type); rank 2 a
    /// singular 3-space (second type).
    pub fn singular_space(&self) -> (usize, Vec<Vec<Scalar>>) {
        self.matrix.rank_kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::pair_index;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn e(i: usize) -> Vec<Scalar> {
        (0..6)
            .map(|k| Scalar::from_int(if k == i { 1 } else { 0 }))
            .collect()
    }

    fn random_point(rng: &mut StdRng, p: u64) -> Vec<Scalar> {
        loop {
            let v: Vec<Scalar> = (0..6)
                .map(|_| Scalar::fp(rng.gen_range(0..p as i64), p))
                .collect();
            if v.iter().any(|s| !s.is_zero()) {
                return v;
            }
        }
    }

    #[test]
    fn coordinate_line_from_basis_points() {
        let l = PluckerLine::from_points(&e(0), &e(1)).unwrap();
        for (k, &(i, j)) in UPPER_PAIRS.iter().enumerate() {
            let expect = if (i, j) == (0, 1) { 1 } else { 0 };
            assert_eq!(l.coordinates()[k], Scalar::from_int(expect));
        }
    }

    #[test]
    fn swapping_points_gives_same_line() {
        let p: Vec<Scalar> = [1, 2, 0, -1, 3, 5]
            .iter()
            .map(|&v| Scalar::from_int(v))
            .collect();
        let r: Vec<Scalar> = [0, 1, 1, 4, -2, 7]
            .iter()
            .map(|&v| Scalar::from_int(v))
            .collect();
        let l1 = PluckerLine::from_points(&p, &r).unwrap();
        let l2 = PluckerLine::from_points(&r, &p).unwrap();
        assert!(l1.same_line(&l2));
    }

    #[test]
    fn proportional_points_rejected() {
        let p: Vec<Scalar> = [1, 2, 3, 0, 0, 1]
            .iter()
            .map(|&v| Scalar::from_int(v))
            .collect();
        let r: Vec<Scalar> = [2, 4, 6, 0, 0, 2]
            .iter()
            .map(|&v| Scalar::from_int(v))
            .collect();
        assert!(matches!(
            PluckerLine::from_points(&p, &r),
            Err(Error::ProportionalPoints)
        ));
    }

    #[test]
    fn random_lines_satisfy_plucker_relations() {
        let p = 31991;
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let a = random_point(&mut rng, p);
            let b = random_point(&mut rng, p);
            let Ok(l) = PluckerLine::from_points(&a, &b) else {
                continue;
            };
            assert!(l.satisfies_plucker_relations());
        }
    }

    #[test]
    fn coordinate_validation_round_trip() {
        let a: Vec<Scalar> = [1, 0, 2, -1, 0, 3]
            .iter()
            .map(|&v| Scalar::from_int(v))
            .collect();
        let b: Vec<Scalar> = [0, 1, 1, 2, -2, 0]
            .iter()
            .map(|&v| Scalar::from_int(v))
            .collect();
        let l = PluckerLine::from_points(&a, &b).unwrap();
        let back = PluckerLine::from_coordinates(l.coordinates().to_vec()).unwrap();
        assert!(back.same_line(&l));
        // Coordinates violating the relations are rejected.
        let mut bad = vec![Scalar::from_int(0); 15];
        bad[pair_index(0, 1)] = Scalar::from_int(1);
        bad[pair_index(2, 3)] = Scalar::from_int(1);
        assert!(matches!(
            PluckerLine::from_coordinates(bad),
            Err(Error::NotALine)
        ));
    }

    #[test]
    fn line_json_round_trip() {
        let a: Vec<Scalar> = [1, 0, 2, -1, 0, 3]
            .iter()
            .map(|&v| Scalar::from_int(v))
            .collect();
        let b: Vec<Scalar> = [0, 1, 1, 2, -2, 0]
            .iter()
            .map(|&v| Scalar::from_int(v))
            .collect();
        let l = PluckerLine::from_points(&a, &b).unwrap();
        let text = serde_json::to_string(&l.to_json()).unwrap();
        let parsed: PluckerLineJson = serde_json::from_str(&text).unwrap();
        let back = PluckerLine::from_json(&parsed).unwrap();
        assert!(back.same_line(&l));
    }

    #[test]
    fn line_through_centre_lies_in_complex() {
        // Any line through a centre of a complex belongs to it.
        let m = SkewConst::from_int_entries(&[((1, 5), 1), ((2, 4), -3), ((2, 3), 2)]);
        let c = ComplexPoint::new(m).unwrap();
        let (rank, kernel) = c.singular_space();
        assert!(rank < 6);
        let centre = &kernel[0];
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..20 {
            let other: Vec<Scalar> = (0..6)
                .map(|_| Scalar::from_int(rng.gen_range(-5..=5)))
                .collect();
            if let Ok(l) = PluckerLine::from_points(centre, &other) {
                assert!(c.contains_line(&l));
            }
        }
    }

    #[test]
    fn generic_complex_has_no_centre() {
        // A full-rank complex has empty singular space.
        let m = SkewConst::from_int_entries(&[
            ((0, 1), 1),
            ((2, 3), 1),
            ((4, 5), 1),
            ((0, 5), 2),
            ((1, 3), -1),
        ]);
        let c = ComplexPoint::new(m).unwrap();
        let (rank, kernel) = c.singular_space();
        assert_eq!(rank, 6);
        assert!(kernel.is_empty());
    }

    #[test]
    fn rank_two_complex_has_singular_three_space() {
        // One nonzero upper entry: rank 2, kernel of dimension 4.
        let m = SkewConst::from_int_entries(&[((1, 5), 1)]);
        let c = ComplexPoint::new(m).unwrap();
        let (rank, kernel) = c.singular_space();
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 4);
    }

    #[test]
    fn random_line_random_complex_rarely_incident() {
        let p = 31991;
        let mut rng = StdRng::seed_from_u64(21);
        let mut incidences = 0;
        for _ in 0..100 {
            let m = SkewConst::new(
                (0..15)
                    .map(|_| Scalar::fp(rng.gen_range(0..p as i64), p))
                    .collect(),
            )
            .unwrap();
            let c = ComplexPoint::new(m).unwrap();
            let a = random_point(&mut rng, p);
            let b = random_point(&mut rng, p);
            let Ok(l) = PluckerLine::from_points(&a, &b) else {
                continue;
            };
            if c.contains_line(&l) {
                incidences += 1;
            }
        }
        assert!(
            incidences <= 1,
            "unexpected incidence rate: {incidences}/100"
        );
    }

    #[test]
    fn rank_four_kernel_plane_lines_lie_in_complex() {
        // For a rank-4 complex, every line through a kernel point lies in the
        // complex: the bilinear form vanishes on the kernel.
        let p = 65521;
        let mut rng = StdRng::seed_from_u64(33);
        let mut tested = 0;
        while tested < 20 {
            // Random congruence transform of a rank-4 normal form.
            let normal = SkewConst::from_int_entries(&[((0, 1), 1), ((2, 3), 1)]);
            let normal = normal.reduce_mod(p).unwrap();
            let pm = DenseMatrix::from_fn(6, 6, Domain::Prime(p), |_, _| {
                Scalar::fp(rng.gen_range(0..p as i64), p)
            });
            if !pm.is_invertible() {
                continue;
            }
            let m = crate::skew::congruence(&pm, &normal).unwrap();
            let c = ComplexPoint::new(m).unwrap();
            let (rank, kernel) = c.singular_space();
            assert_eq!(rank, 4);
            for v in &kernel {
                let w = random_point(&mut rng, p);
                if let Ok(l) = PluckerLine::from_points(v, &w) {
                    assert!(c.contains_line(&l));
                }
            }
            tested += 1;
        }
    }
}
