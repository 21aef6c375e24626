//! Intersection-number arithmetic for the degree-7 scroll: normal-bundle
//! Chern classes, the Riemann-Roch evaluation of chi(N), the Hilbert
//! polynomial, and the derivation of c2 H from the known coefficients.
//!
//! Formal classes are polynomials in the symbols `K`, `H` and the marker `c2`
//! (of weighted degree 2); evaluation contracts weighted-degree-3 monomials
//! against the intersection table and rejects anything outside it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dimension of the Grassmannian of webs: 3-spaces of the dual P^14.
pub const WEB_GRASSMANNIAN_DIM: u64 = (3 + 1) * (14 - 3);

/// Dimension of the space of 6x6 skew pencils modulo the congruence action:
/// 15 entries times 4 coordinates, minus dim GL(6).
pub const PENCIL_MODULI_DIM: u64 = 15 * 4 - 36;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn q_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The intersection numbers of the scroll. The derivable entry `c2h` must
/// match its derivation from the Hilbert-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionTable {
    pub h3: BigRational,
    pub kh2: BigRational,
    pub k2h: BigRational,
    pub k3: BigRational,
    pub kc2: BigRational,
    pub c2h: BigRational,
    pub chi_o: BigRational,
    pub rank_n: u32,
}

impl IntersectionTable {
    /// The table of the degree-7 scroll in P^5.
    pub fn palatini_scroll() -> Self {
        IntersectionTable {
            h3: q(7),
            kh2: q(-8),
            k2h: q(7),
            k3: q(-2),
            kc2: q(-24),
            c2h: q(15),
            chi_o: q(1),
            rank_n: 2,
        }
    }

    #[cfg(test)]
    fn all_zero() -> Self {
        IntersectionTable {
            h3: q(0),
            kh2: q(0),
            k2h: q(0),
            k3: q(0),
            kc2: q(0),
            c2h: q(0),
            chi_o: q(0),
            rank_n: 2,
        }
    }

    /// Contraction of a weighted-degree-3 monomial `K^a H^b c2^e`.
    fn contract(&self, a: u8, b: u8, e: u8) -> Result<BigRational> {
        let v = match (a, b, e) {
            (3, 0, 0) => &self.k3,
            (2, 1, 0) => &self.k2h,
            (1, 2, 0) => &self.kh2,
            (0, 3, 0) => &self.h3,
            (1, 0, 1) => &self.kc2,
            (0, 1, 1) => &self.c2h,
            _ => {
                return Err(Error::InconsistentTable(format!(
                    "monomial K^{a} H^{b} c2^{e} is not evaluable against the table"
                )))
            }
        };
        Ok(v.clone())
    }
}

/// A polynomial in the formal symbols `K`, `H`, `c2` with rational
/// coefficients; `c2` counts as degree 2.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalClass {
    /// (exponent of K, exponent of H, exponent of c2) -> coefficient
    terms: BTreeMap<(u8, u8, u8), BigRational>,
}

impl FormalClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: u8, h: u8, c2: u8, coeff: BigRational) -> Self {
        let mut f = Self::zero();
        f.add_term((k, h, c2), coeff);
        f
    }

    /// `K`
    pub fn k() -> Self {
        Self::term(1, 0, 0, BigRational::one())
    }

    /// `H`
    pub fn h() -> Self {
        Self::term(0, 1, 0, BigRational::one())
    }

    /// `c2`, the second Chern class marker.
    pub fn c2() -> Self {
        Self::term(0, 0, 1, BigRational::one())
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::term(0, 0, 0, c)
    }

    fn add_term(&mut self, key: (u8, u8, u8), coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &FormalClass) -> FormalClass {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FormalClass) -> FormalClass {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &FormalClass) -> FormalClass {
        let mut out = FormalClass::zero();
        for ((k1, h1, e1), c1) in &self.terms {
            for ((k2, h2, e2), c2) in &other.terms {
                out.add_term((k1 + k2, h1 + h2, e1 + e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> FormalClass {
        let mut out = FormalClass::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn neg(&self) -> FormalClass {
        self.scale(&-BigRational::one())
    }

    /// Evaluates a class of pure weighted degree 3 against the table. Any
    /// monomial outside the table is an error, never silently zero.
    pub fn evaluate(&self, t: &IntersectionTable) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(k, h, e), c) in &self.terms {
            acc += c * t.contract(k, h, e)?;
        }
        Ok(acc)
    }
}

impl std::fmt::Display for FormalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(k, h, e), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (k, h, e) == (0, 0, 0) {
                factors.push(mag.to_string());
            }
            for (sym, exp) in [("K", k), ("H", h), ("c2", e)] {
                match exp {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{exp}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// The Chern classes of the normal bundle and the tangent class entering the
/// Riemann-Roch evaluation: `n1 = K + 6H`, `n2 = 15H^2 + 6HK + K^2 - c2`,
/// `n3 = 0`, `c1 = -K`.
pub struct NormalBundleClasses {
    pub n1: FormalClass,
    pub n2: FormalClass,
    pub n3: FormalClass,
    pub c1: FormalClass,
}

impl NormalBundleClasses {
    pub fn scroll() -> Self {
        let k = FormalClass::k();
        let h = FormalClass::h();
        let n1 = k.add(&h.scale(&q(6)));
        let n2 = FormalClass::term(0, 2, 0, q(15))
            .add(&FormalClass::term(1, 1, 0, q(6)))
            .add(&FormalClass::term(2, 0, 0, q(1)))
            .sub(&FormalClass::c2());
        // n3 = 0 because the normal bundle has rank 2.
        NormalBundleClasses {
            n1,
            n2,
            n3: FormalClass::zero(),
            c1: k.neg(),
        }
    }
}

/// The four summands of the Riemann-Roch expression for chi of the normal
/// bundle:
/// `(1/6)(n1^3 - 3 n1 n2 + 3 n3) + (1/4) c1 (n1^2 - 2 n2) +
///  (1/12)(c1^2 + c2) n1 + r chi(O)`.
pub fn chi_normal_summands(t: &IntersectionTable) -> Result<[BigRational; 4]> {
    let cls = NormalBundleClasses::scroll();
    let n1 = &cls.n1;
    let n2 = &cls.n2;
    let n3 = &cls.n3;
    let c1 = &cls.c1;
    let n1_cubed = n1.mul(n1).mul(n1);
    let s1 = n1_cubed
        .sub(&n1.mul(n2).scale(&q(3)))
        .add(&n3.scale(&q(3)))
        .scale(&q_frac(1, 6))
        .evaluate(t)?;
    let s2 = c1
        .mul(&n1.mul(n1).sub(&n2.scale(&q(2))))
        .scale(&q_frac(1, 4))
        .evaluate(t)?;
    let s3 = c1
        .mul(c1)
        .add(&FormalClass::c2())
        .mul(n1)
        .scale(&q_frac(1, 12))
        .evaluate(t)?;
    let s4 = &q(t.rank_n as i64) * &t.chi_o;
    Ok([s1, s2, s3, s4])
}

/// `chi(N)` evaluated against the table; 44 for the scroll.
pub fn chi_normal(t: &IntersectionTable) -> Result<BigRational> {
    Ok(chi_normal_summands(t)?.into_iter().sum())
}

/// Coefficients `(s^3, s^2, s, 1)` of the Hilbert polynomial
/// `chi(O(s)) = (1/6) H^3 s^3 - (1/4) K H^2 s^2 + (1/12)(K^2 H + c2 H) s + chi(O)`.
pub fn hilbert_coefficients(t: &IntersectionTable) -> [BigRational; 4] {
    [
        &q_frac(1, 6) * &t.h3,
        &q_frac(-1, 4) * &t.kh2,
        &q_frac(1, 12) * &(&t.k2h + &t.c2h),
        t.chi_o.clone(),
    ]
}

/// The Hilbert polynomial evaluated at a rational argument.
pub fn hilbert_polynomial(t: &IntersectionTable, s: &BigRational) -> BigRational {
    let [c3, c2, c1, c0] = hilbert_coefficients(t);
    &(&(&(&c3 * s + c2) * s) + &c1) * s + c0
}

/// Solves `(K^2 H + c2 H)/12 = linear` for `c2 H`, cross-checking the
/// quadratic coefficient `-K H^2 / 4 = quadratic` first.
pub fn derive_c2h(
    kh2: &BigRational,
    k2h: &BigRational,
    linear: &BigRational,
    quadratic: &BigRational,
) -> Result<BigRational> {
    let expect_quad = &q_frac(-1, 4) * kh2;
    if &expect_quad != quadratic {
        return Err(Error::InconsistentTable(format!(
            "quadratic coefficient cross-check failed: -KH^2/4 = {expect_quad}, table says {quadratic}"
        )));
    }
    Ok(&(&q(12) * linear) - k2h)
}

/// Degree of the scroll: `H^3`, which must equal `3!` times the leading
/// Hilbert coefficient.
pub fn degree(t: &IntersectionTable) -> Result<u64> {
    let lead = &hilbert_coefficients(t)[0];
    let six_lead = &q(6) * lead;
    if six_lead != t.h3 {
        return Err(Error::InconsistentTable(format!(
            "H^3 = {} but 3! * leading coefficient = {six_lead}",
            t.h3
        )));
    }
    if !t.h3.is_integer() || t.h3.is_negative() {
        return Err(Error::InconsistentTable(format!(
            "H^3 = {} is not a degree",
            t.h3
        )));
    }
    Ok(t.h3.to_integer().try_into().expect("small degree"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_normal_is_44_with_the_four_summands() {
        let t = IntersectionTable::palatini_scroll();
        let s = chi_normal_summands(&t).unwrap();
        assert_eq!(s[0], q_frac(29, 3));
        assert_eq!(s[1], q_frac(47, 2));
        assert_eq!(s[2], q_frac(53, 6));
        assert_eq!(s[3], q(2));
        assert_eq!(chi_normal(&t).unwrap(), q(44));
    }

    #[test]
    fn intermediate_contractions_match_hand_expansion() {
        // (K + 6H)^3 = K^3 + 18 K^2 H + 108 K H^2 + 216 H^3 = 772 and
        // n1 n2 = 238 against the table, expanded by hand as the oracle of
        // the evaluator.
        let t = IntersectionTable::palatini_scroll();
        let cls = NormalBundleClasses::scroll();
        let n1_cubed = cls.n1.mul(&cls.n1).mul(&cls.n1);
        assert_eq!(n1_cubed.evaluate(&t).unwrap(), q(772));
        assert_eq!(cls.n1.mul(&cls.n2).evaluate(&t).unwrap(), q(238));
        // n2 H = 15*7 + 6*(-8) + 7 - 15 = 49.
        assert_eq!(cls.n2.mul(&FormalClass::h()).evaluate(&t).unwrap(), q(49));
    }

    #[test]
    fn all_zero_table_gives_zero() {
        let t = IntersectionTable::all_zero();
        assert_eq!(chi_normal(&t).unwrap(), q(0));
    }

    #[test]
    fn monomials_outside_the_table_error() {
        let t = IntersectionTable::palatini_scroll();
        // c2 alone has weighted degree 2: not evaluable.
        assert!(FormalClass::c2().evaluate(&t).is_err());
        // K c2^... degree 4 is rejected too.
        let bad = FormalClass::c2().mul(&FormalClass::c2());
        assert!(bad.evaluate(&t).is_err());
    }

    #[test]
    fn hilbert_polynomial_coefficients_and_values() {
        let t = IntersectionTable::palatini_scroll();
        let c = hilbert_coefficients(&t);
        assert_eq!(c, [q_frac(7, 6), q(2), q_frac(11, 6), q(1)]);
        assert_eq!(hilbert_polynomial(&t, &q(0)), q(1));
        assert_eq!(hilbert_polynomial(&t, &q(1)), q(6));
        assert_eq!(hilbert_polynomial(&t, &q(4)), q(115));
    }

    #[test]
    fn c2h_derivation_returns_15() {
        let t = IntersectionTable::palatini_scroll();
        let c2h = derive_c2h(&t.kh2, &t.k2h, &q_frac(11, 6), &q(2)).unwrap();
        assert_eq!(c2h, q(15));
        // Perturbed KH^2 fails the cross-check.
        assert!(derive_c2h(&q(-9), &t.k2h, &q_frac(11, 6), &q(2)).is_err());
    }

    #[test]
    fn degree_is_7_and_consistent_with_leading_coefficient() {
        let t = IntersectionTable::palatini_scroll();
        assert_eq!(degree(&t).unwrap(), 7);
    }

    #[test]
    fn dimension_bookkeeping() {
        assert_eq!(PENCIL_MODULI_DIM, 24);
        assert_eq!(WEB_GRASSMANNIAN_DIM, 44);
    }
}
