//! Integer-coefficient Laurent polynomials in the bracket variable A.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// exponent -> nonzero coefficient
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// The loop factor -A^2 - A^-2.
    pub fn loop_factor() -> Self {
        let mut p = LaurentPoly::monomial(2, -1);
        p += &LaurentPoly::monomial(-2, -1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.terms.iter()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by (-A^3)^k for possibly negative k.
    pub fn times_neg_a_cubed(&self, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        self * &LaurentPoly::monomial(3 * k, sign)
    }

    /// Mirror image substitution A -> A^-1.
    pub fn mirror(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, *c)).collect(),
        }
    }

    fn insert(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e = e.checked_add(coeff).expect("coefficient overflow");
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in rhs.terms.iter() {
            self.insert(e, c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in self.terms.iter() {
            for (&e2, &c2) in rhs.terms.iter() {
                out.insert(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Sorted `coeff*A^exp` terms joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*A^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse the `Display` format back.
pub fn parse_laurent(s: &str) -> Option<LaurentPoly> {
    let s = s.trim();
    if s == "0" {
        return Some(LaurentPoly::zero());
    }
    let mut out = LaurentPoly::zero();
    for term in s.split('+') {
        let term = term.trim();
        let (coeff, exp) = term.split_once("*A^")?;
        out.insert(exp.trim().parse().ok()?, coeff.trim().parse().ok()?);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_factor_square() {
        let d = LaurentPoly::loop_factor();
        let d2 = &d * &d;
        // (-A^2 - A^-2)^2 = A^4 + 2 + A^-4
        assert_eq!(d2.to_string(), "1*A^-4 + 2*A^0 + 1*A^4");
    }

    #[test]
    fn display_roundtrip() {
        let p = &LaurentPoly::monomial(-3, 2) + &LaurentPoly::monomial(5, -7);
        assert_eq!(parse_laurent(&p.to_string()), Some(p));
    }

    #[test]
    fn neg_a_cubed_powers() {
        let one = LaurentPoly::one();
        assert_eq!(one.times_neg_a_cubed(1).to_string(), "-1*A^3");
        assert_eq!(one.times_neg_a_cubed(-2).to_string(), "1*A^-6");
    }
}
