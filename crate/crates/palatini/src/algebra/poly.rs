//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by graded-lex monomial order, so equality,
//! iteration and printing are canonical. No stored term has coefficient zero;
//! the zero polynomial is the empty term map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::scalar::{print_sign, Domain, Scalar};
use crate::error::{Error, Result};

/// Exponent vector; one entry per variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `x0 > x1 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given total degree, in ascending graded-lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree as u16);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e as u16);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if degree == 0 {
            vec![Monomial::constant(0)]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Sparse polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.insert_term(Monomial::constant(nvars), c);
        p
    }

    pub fn variable(nvars: usize, i: usize, domain: Domain) -> Self {
        let mut p = Self::zero(nvars);
        p.insert_term(Monomial::variable(nvars, i), domain.one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; repeated monomials accumulate.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, Scalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.insert_term(Monomial::new(e), c);
        }
        p
    }

    /// Convenience for integer-coefficient rational polynomials.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u16], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Scalar::from_int(*c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Coefficient domain; `None` for the zero polynomial.
    pub fn domain(&self) -> Option<Domain> {
        self.terms.values().next().map(Scalar::domain)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        if self.terms.keys().all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// A linear form: zero or homogeneous of degree one.
    pub fn is_linear_form(&self) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(1)
    }

    fn insert_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        match (self.domain(), other.domain()) {
            (Some(a), Some(b)) if a != b => Err(Error::DomainMismatch { left: a, right: b }),
            _ => Ok(()),
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &Scalar) -> Result<MultiPoly> {
        if let Some(d) = self.domain() {
            if d != s.domain() {
                return Err(Error::DomainMismatch {
                    left: d,
                    right: s.domain(),
                });
            }
        }
        let mut out = Self::zero(self.nvars);
        if s.is_zero() {
            return Ok(out);
        }
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), c * s);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = match self.domain() {
            Some(d) => Self::constant(self.nvars, d.one()),
            None => Self::constant(self.nvars, Scalar::from_int(1)),
        };
        for _ in 0..e {
            acc = acc.try_mul(self).expect("pow on a single polynomial");
        }
        acc
    }

    /// Exact evaluation at a point. Errors on length or domain mismatch.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let pdomain = {
            let mut d = None;
            for s in point {
                match d {
                    None => d = Some(s.domain()),
                    Some(prev) if prev != s.domain() => {
                        return Err(Error::DomainMismatch {
                            left: prev,
                            right: s.domain(),
                        })
                    }
                    _ => {}
                }
            }
            d
        };
        if let (Some(a), Some(b)) = (self.domain(), pdomain) {
            if a != b {
                return Err(Error::DomainMismatch { left: a, right: b });
            }
        }
        let zero = pdomain.or(self.domain()).unwrap_or(Domain::Rational).zero();
        let mut acc = zero.clone();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[i];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i`; all images share a variable count.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let out_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        for im in images {
            if im.nvars != out_nvars {
                return Err(Error::DimensionMismatch {
                    expected: out_nvars,
                    found: im.nvars,
                });
            }
        }
        let mut out = Self::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(out_nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&images[i].pow(e as u32))?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] = e - 1;
            let factor = c.domain().from_i64(e as i64);
            out.insert_term(Monomial::new(exps), c * &factor);
        }
        out
    }

    /// Reduces every coefficient mod `p`; terms that vanish are dropped.
    pub fn reduce_mod(&self, p: u64) -> Result<MultiPoly> {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Leading (graded-lex largest) term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("leading coefficient is nonzero");
                self.scale(&inv).expect("same domain")
            }
        }
    }

    /// Indices of variables that actually occur.
    pub fn vars_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| if u { Some(i) } else { None })
            .collect()
    }

    /// Dense coefficient vector of a univariate polynomial (constants allowed).
    /// Returns the variable index used (None for constants) and coefficients by
    /// ascending exponent.
    pub fn to_dense_univariate(&self) -> Result<(Option<usize>, Vec<Scalar>)> {
        let used = self.vars_used();
        if used.len() > 1 {
            return Err(Error::NotUnivariate);
        }
        let var = used.first().copied();
        if self.is_zero() {
            return Ok((var, vec![]));
        }
        let deg = self.total_degree().unwrap() as usize;
        let zero = self.domain().unwrap().zero();
        let mut coeffs = vec![zero; deg + 1];
        for (m, c) in &self.terms {
            let e = match var {
                Some(v) => m.exponents()[v] as usize,
                None => 0,
            };
            coeffs[e] = c.clone();
        }
        Ok((var, coeffs))
    }

    pub fn from_dense_univariate(nvars: usize, var: usize, coeffs: &[Scalar]) -> MultiPoly {
        let mut out = Self::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0u16; nvars];
                exps[var] = e as u16;
                out.insert_term(Monomial::new(exps), c.clone());
            }
        }
        out
    }

    /// Canonical text form: terms in descending graded-lex order, exact
    /// fraction coefficients, given variable names.
    pub fn to_text(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = print_sign(c) < 0;
            let mag = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_constant() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses the canonical text form produced by [`MultiPoly::to_text`].
    pub fn parse(text: &str, names: &[&str], domain: Domain) -> Result<MultiPoly> {
        let nvars = names.len();
        let mut out = Self::zero(nvars);
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(out);
        }
        // Split into signed terms.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign_neg = false;
        let mut chars = text.chars().peekable();
        // Optional leading sign.
        if let Some(&c) = chars.peek() {
            if c == '-' {
                sign_neg = true;
                chars.next();
            } else if c == '+' {
                chars.next();
            }
        }
        let mut prev_was_op = false;
        for c in chars {
            match c {
                '+' | '-' if !prev_was_op => {
                    terms.push((sign_neg, cur.trim().to_string()));
                    cur = String::new();
                    sign_neg = c == '-';
                    prev_was_op = true;
                }
                '^' | '*' | '/' => {
                    cur.push(c);
                    prev_was_op = true;
                }
                _ => {
                    if !c.is_whitespace() {
                        prev_was_op = false;
                    }
                    cur.push(c);
                }
            }
        }
        terms.push((sign_neg, cur.trim().to_string()));

        for (neg, term) in terms {
            if term.is_empty() {
                return Err(Error::InvalidInput("empty term".into()));
            }
            let mut coeff = domain.one();
            let mut exps = vec![0u16; nvars];
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(Error::InvalidInput(format!("empty factor in `{term}`")));
                }
                if factor.chars().next().unwrap().is_ascii_digit() {
                    coeff = &coeff * &domain.parse(factor)?;
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => {
                            let e: u16 = e.trim().parse().map_err(|_| {
                                Error::InvalidInput(format!("bad exponent in `{factor}`"))
                            })?;
                            (n.trim(), e)
                        }
                        None => (factor, 1),
                    };
                    let i = names
                        .iter()
                        .position(|&n| n == name)
                        .ok_or_else(|| Error::InvalidInput(format!("unknown variable `{name}`")))?;
                    exps[i] += exp;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.insert_term(Monomial::new(exps), coeff);
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.to_text(&refs))
    }
}

/// Division with remainder for dense univariate coefficient vectors over a field.
fn dense_divmod(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let bd = b.len() - 1;
    let lead_inv = b[bd].inv().expect("nonzero divisor");
    let mut rem: Vec<Scalar> = a.to_vec();
    let mut quot = vec![b[bd].domain().zero(); a.len().saturating_sub(bd)];
    while rem.len() > bd {
        let rd = rem.len() - 1;
        let q = &rem[rd] * &lead_inv;
        if !q.is_zero() {
            quot[rd - bd] = q.clone();
            for i in 0..=bd {
                let t = &rem[rd - bd + i] - &(&q * &b[i]);
                rem[rd - bd + i] = t;
            }
        }
        rem.pop();
        while rem.last().map(Scalar::is_zero).unwrap_or(false) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    (quot, rem)
}

/// Monic gcd of two univariate polynomials over a field.
///
/// Inputs may be constants or use a single (shared) variable. `gcd(f, 0)` is
/// the monic normalization of `f`.
pub fn gcd_univariate(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    let (va, mut ca) = a.to_dense_univariate()?;
    let (vb, mut cb) = b.to_dense_univariate()?;
    let var = match (va, vb) {
        (Some(x), Some(y)) if x != y => return Err(Error::NotUnivariate),
        (Some(x), _) => Some(x),
        (_, Some(y)) => Some(y),
        (None, None) => None,
    };
    if let (Some(da), Some(db)) = (a.domain(), b.domain()) {
        if da != db {
            return Err(Error::DomainMismatch {
                left: da,
                right: db,
            });
        }
    }
    let nvars = a.nvars().max(b.nvars());
    if ca.is_empty() && cb.is_empty() {
        return Ok(MultiPoly::zero(nvars));
    }
    if ca.len() < cb.len() {
        std::mem::swap(&mut ca, &mut cb);
    }
    while !cb.is_empty() {
        let (_, r) = dense_divmod(&ca, &cb);
        ca = cb;
        cb = r;
    }
    let out = match var {
        Some(v) => MultiPoly::from_dense_univariate(nvars, v, &ca),
        None => MultiPoly::constant(nvars, ca[0].clone()),
    };
    Ok(out.monic())
}

/// Hilbert function of the ideal generated by homogeneous forms over `F_p`:
/// the dimension of degree-`t` forms minus the rank of the coefficient matrix
/// of `{m * g : g a generator, deg m = t - deg g}`. Generators must already be
/// reduced mod `p`; zero generators are ignored.
pub fn ideal_hilbert_function(gens: &[MultiPoly], nvars: usize, t: u32, p: u64) -> usize {
    let cols: Vec<Monomial> = monomials_of_degree(nvars, t);
    let ncols = cols.len();
    let index: BTreeMap<Monomial, usize> =
        cols.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rank = crate::algebra::FpRank::new(ncols, p);
    for g in gens {
        if g.is_zero() {
            continue;
        }
        debug_assert_eq!(g.nvars(), nvars);
        let d = g.homogeneous_degree().expect("homogeneous generator");
        if d > t {
            continue;
        }
        for shift in monomials_of_degree(nvars, t - d) {
            let mut row = vec![0u64; ncols];
            for (m, c) in g.terms() {
                row[index[&m.mul(&shift)]] = c.as_fp().expect("reduced mod p");
            }
            rank.insert(row);
        }
    }
    ncols - rank.rank()
}

/// Degree of the gcd of nonzero homogeneous binary forms in two variables
/// `(s, u)`, counting the common power of `u` exactly.
pub fn binary_forms_gcd_degree(forms: &[MultiPoly]) -> Result<usize> {
    let nonzero: Vec<&MultiPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::InvalidInput("all binary forms are zero".into()));
    }
    let mut u_mult = usize::MAX;
    let mut gcd_s: Option<MultiPoly> = None;
    for f in nonzero {
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidInput("binary form is not homogeneous".into()))?;
        if f.nvars() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: f.nvars(),
            });
        }
        // Multiplicity of the factor u = x1 is d minus the degree in s = x0.
        let deg_s = f.terms().map(|(m, _)| m.exponents()[0]).max().unwrap() as u32;
        u_mult = u_mult.min((d - deg_s) as usize);
        // Dehomogenize at u = 1: a univariate polynomial in s.
        let dehom = MultiPoly::from_terms(
            2,
            f.terms()
                .map(|(m, c)| (vec![m.exponents()[0], 0], c.clone())),
        );
        gcd_s = Some(match gcd_s {
            None => dehom.monic(),
            Some(g) => gcd_univariate(&g, &dehom)?,
        });
    }
    let g = gcd_s.unwrap();
    let gdeg = g.total_degree().unwrap_or(0) as usize;
    Ok(gdeg + u_mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, n: usize) -> MultiPoly {
        MultiPoly::variable(n, i, Domain::Rational)
    }

    #[test]
    fn difference_of_squares() {
        let n = 2;
        let a = &x(0, n) + &x(1, n);
        let b = &x(0, n) - &x(1, n);
        let prod = &a * &b;
        let expect = MultiPoly::from_int_terms(n, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_by_zero_absorbs() {
        let n = 3;
        let p = MultiPoly::from_int_terms(n, &[(&[1, 2, 0], 3), (&[0, 0, 1], -5)]);
        let z = MultiPoly::zero(n);
        assert!(p.try_mul(&z).unwrap().is_zero());
    }

    #[test]
    fn additive_inverse_cancels() {
        // x0*x1^2 + x1*x3^2 + x2^3 plus its negation is zero.
        let n = 4;
        let p = MultiPoly::from_int_terms(
            n,
            &[(&[1, 2, 0, 0], 1), (&[0, 1, 0, 2], 1), (&[0, 0, 3, 0], 1)],
        );
        let q = -&p;
        assert!(p.try_add(&q).unwrap().is_zero());
    }

    #[test]
    fn eval_t4_cubic_at_singular_point() {
        // x^2y - x^2z - xy^2 + xz^2 + y^3 - y^2t + yzt at (0,0,0,1) is 0.
        let n = 4;
        let p = MultiPoly::from_int_terms(
            n,
            &[
                (&[2, 1, 0, 0], 1),
                (&[2, 0, 1, 0], -1),
                (&[1, 2, 0, 0], -1),
                (&[1, 0, 2, 0], 1),
                (&[0, 3, 0, 0], 1),
                (&[0, 2, 0, 1], -1),
                (&[0, 1, 1, 1], 1),
            ],
        );
        let pt: Vec<Scalar> = [0, 0, 0, 1].iter().map(|&v| Scalar::from_int(v)).collect();
        assert!(p.eval(&pt).unwrap().is_zero());
        // All four partials vanish there too: (0,0,0,1) is a singular point.
        for v in 0..4 {
            assert!(p.partial_derivative(v).eval(&pt).unwrap().is_zero());
        }
    }

    #[test]
    fn eval_at_origin_gives_constant_term() {
        let n = 3;
        let p = MultiPoly::from_int_terms(n, &[(&[0, 0, 0], 7), (&[2, 1, 0], -4)]);
        let pt: Vec<Scalar> = (0..n).map(|_| Scalar::from_int(0)).collect();
        assert_eq!(p.eval(&pt).unwrap(), Scalar::from_int(7));
    }

    #[test]
    fn eval_elliptic_cone_point() {
        // y^2 z - x(x - z)(x - 2z) vanishes at (0, 0, 1, anything-free slot).
        let n = 4;
        // expand: y^2 z - x^3 + 3x^2 z - 2x z^2
        let p = MultiPoly::from_int_terms(
            n,
            &[
                (&[0, 2, 1, 0], 1),
                (&[3, 0, 0, 0], -1),
                (&[2, 0, 1, 0], 3),
                (&[1, 0, 2, 0], -2),
            ],
        );
        let pt: Vec<Scalar> = [0, 0, 1, 5].iter().map(|&v| Scalar::from_int(v)).collect();
        assert!(p.eval(&pt).unwrap().is_zero());
    }

    #[test]
    fn partial_derivative_power_rule() {
        // d/dx0 (x0 x1^2 + x1 x3^2 + x2^3) = x1^2
        let n = 4;
        let p = MultiPoly::from_int_terms(
            n,
            &[(&[1, 2, 0, 0], 1), (&[0, 1, 0, 2], 1), (&[0, 0, 3, 0], 1)],
        );
        let d = p.partial_derivative(0);
        assert_eq!(d, MultiPoly::from_int_terms(n, &[(&[0, 2, 0, 0], 1)]));
        let c = MultiPoly::constant(n, Scalar::from_int(9));
        assert!(c.partial_derivative(3).is_zero());
    }

    #[test]
    fn domain_mismatch_rejected() {
        let a = MultiPoly::constant(2, Scalar::from_int(1));
        let b = MultiPoly::constant(2, Scalar::fp(1, 17));
        assert!(matches!(a.try_add(&b), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn eval_length_mismatch_rejected() {
        let p = MultiPoly::from_int_terms(3, &[(&[1, 0, 0], 1)]);
        let pt = vec![Scalar::from_int(1)];
        assert!(matches!(p.eval(&pt), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gcd_univariate_cases() {
        // gcd(s^4, s^3 u) restricted to u = 1 -> s^3.
        let s4 = MultiPoly::from_int_terms(2, &[(&[4, 0], 1)]);
        let s3 = MultiPoly::from_int_terms(2, &[(&[3, 0], 1)]);
        let g = gcd_univariate(&s4, &s3).unwrap();
        assert_eq!(g, s3);
        // gcd(f, 0) is the monic multiple of f.
        let f = MultiPoly::from_int_terms(2, &[(&[2, 0], 2), (&[0, 0], -2)]);
        let g = gcd_univariate(&f, &MultiPoly::zero(2)).unwrap();
        let expect = MultiPoly::from_terms(
            2,
            [
                (vec![2, 0], Scalar::from_int(1)),
                (vec![0, 0], Scalar::from_int(-1)),
            ],
        );
        assert_eq!(g, expect);
        // Non-univariate input is an error.
        let xy = MultiPoly::from_int_terms(2, &[(&[1, 1], 1)]);
        assert!(matches!(
            gcd_univariate(&xy, &s3),
            Err(Error::NotUnivariate)
        ));
    }

    #[test]
    fn binary_gcd_counts_u_multiplicity() {
        // gcd(s^4, s^3 u) as binary forms has degree 3.
        let s4 = MultiPoly::from_int_terms(2, &[(&[4, 0], 1)]);
        let s3u = MultiPoly::from_int_terms(2, &[(&[3, 1], 1)]);
        assert_eq!(
            binary_forms_gcd_degree(&[s4.clone(), s3u.clone()]).unwrap(),
            3
        );
        // Common factor u^2: gcd(s^2 u^2, u^4) = u^2.
        let a = MultiPoly::from_int_terms(2, &[(&[2, 2], 1)]);
        let b = MultiPoly::from_int_terms(2, &[(&[0, 4], 1)]);
        assert_eq!(binary_forms_gcd_degree(&[a, b]).unwrap(), 2);
        // Zero forms are skipped.
        assert_eq!(
            binary_forms_gcd_degree(&[MultiPoly::zero(2), s4, s3u]).unwrap(),
            3
        );
    }

    #[test]
    fn text_round_trip() {
        let p = MultiPoly::from_terms(
            4,
            [
                (vec![2, 1, 0, 0], Scalar::from_int(1)),
                (vec![0, 0, 3, 0], Scalar::rational(-7, 6)),
                (vec![0, 0, 0, 0], Scalar::from_int(2)),
            ],
        );
        let names = ["x", "y", "z", "t"];
        let text = p.to_text(&names);
        assert_eq!(text, "x^2*y - 7/6*z^3 + 2");
        let q = MultiPoly::parse(&text, &names, Domain::Rational).unwrap();
        assert_eq!(p, q);
        assert_eq!(MultiPoly::zero(4).to_text(&names), "0");
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(t+5,5) monomials of degree t in 6 variables.
        assert_eq!(monomials_of_degree(6, 4).len(), 126);
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
    }
}
