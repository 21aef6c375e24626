//! Pieri-rule arithmetic for Schubert cycles of lines in P^5: partitions in
//! the 2x4 box, repeated multiplication by sigma_1, and the order of a
//! congruence as the coefficient of sigma_4.

use std::collections::BTreeMap;
use std::fmt;

/// A partition `(a, b)` with `4 >= a >= b >= 0`, indexing a Schubert cycle of
/// the Grassmannian of lines in P^5.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Partition2x4 {
    a: u8,
    b: u8,
}

impl Partition2x4 {
    pub fn new(a: u8, b: u8) -> Option<Self> {
        if a <= 4 && b <= a {
            Some(Partition2x4 { a, b })
        } else {
            None
        }
    }

    pub fn parts(&self) -> (u8, u8) {
        (self.a, self.b)
    }

    pub fn weight(&self) -> u8 {
        self.a + self.b
    }
}

impl fmt::Display for Partition2x4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "σ{}", self.a)
        } else {
            write!(f, "σ{}{}", self.a, self.b)
        }
    }
}

/// An integer combination of Schubert cycles; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SchubertCycle {
    coeffs: BTreeMap<Partition2x4, i64>,
}

impl SchubertCycle {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The fundamental class sigma_00.
    pub fn one() -> Self {
        let mut c = Self::zero();
        c.add_term(Partition2x4::new(0, 0).unwrap(), 1);
        c
    }

    pub fn from_terms(terms: &[((u8, u8), i64)]) -> Option<Self> {
        let mut c = Self::zero();
        for &((a, b), k) in terms {
            c.add_term(Partition2x4::new(a, b)?, k);
        }
        Some(c)
    }

    fn add_term(&mut self, p: Partition2x4, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.coeffs.entry(p).or_insert(0);
        *e += k;
        if *e == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn coefficient(&self, a: u8, b: u8) -> i64 {
        Partition2x4::new(a, b)
            .and_then(|p| self.coeffs.get(&p).copied())
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition2x4, &i64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplication by sigma_1: `sigma_1 * sigma_{a,b} = sigma_{a+1,b} +
    /// sigma_{a,b+1}`, keeping only partitions inside the 2x4 box.
    pub fn mul_sigma1(&self) -> SchubertCycle {
        let mut out = SchubertCycle::zero();
        for (p, &k) in &self.coeffs {
            if let Some(q) = Partition2x4::new(p.a + 1, p.b) {
                out.add_term(q, k);
            }
            if let Some(q) = Partition2x4::new(p.a, p.b + 1) {
                out.add_term(q, k);
            }
        }
        out
    }

    /// The coefficient of sigma_4: the number of lines of the cycle through a
    /// general point.
    pub fn order(&self) -> i64 {
        self.coefficient(4, 0)
    }
}

/// Multiplication of a cycle by sigma_1 (the cycle of lines meeting a fixed
/// 3-space).
pub fn pieri_sigma1(c: &SchubertCycle) -> SchubertCycle {
    c.mul_sigma1()
}

/// `sigma_1^k`, by iterated Pieri from the fundamental class.
pub fn sigma1_power(k: u32) -> SchubertCycle {
    let mut c = SchubertCycle::one();
    for _ in 0..k {
        c = c.mul_sigma1();
    }
    c
}

impl fmt::Display for SchubertCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // Largest partitions first.
        for (i, (p, k)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{k}{p}")?;
            }
        }
        Ok(())
    }
}
