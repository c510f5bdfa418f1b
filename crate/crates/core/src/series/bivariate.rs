use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{LaurentPoly, QSeries};
use crate::error::{Error, Result};

/// Truncated series in `q` with Laurent-polynomial coefficients in `z`.
/// Windows follow the same rules as [`QSeries`].
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    min_exp: i64,
    prec: i64,
    coeffs: Vec<LaurentPoly>,
}

impl BiSeries {
    pub fn new(min_exp: i64, coeffs: Vec<LaurentPoly>) -> Self {
        let prec = min_exp + coeffs.len() as i64;
        BiSeries {
            min_exp,
            prec,
            coeffs,
        }
    }

    pub fn zero(prec: i64) -> Self {
        BiSeries {
            min_exp: prec,
            prec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(LaurentPoly::constant(1), 0, prec)
    }

    /// `c(z) q^j + O(q^prec)`.
    pub fn monomial(c: LaurentPoly, j: i64, prec: i64) -> Self {
        if j >= prec {
            return Self::zero(prec);
        }
        let mut coeffs = vec![LaurentPoly::zero(); (prec - j) as usize];
        coeffs[0] = c;
        BiSeries {
            min_exp: j,
            prec,
            coeffs,
        }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Laurent coefficient of `q^e`, zero below the window.
    pub fn coeff(&self, e: i64) -> Result<LaurentPoly> {
        if e >= self.prec {
            return Err(Error::OutOfRange {
                exponent: e,
                min_exp: self.min_exp,
                prec: self.prec,
            });
        }
        Ok(self.at(e).clone())
    }

    fn at(&self, e: i64) -> &LaurentPoly {
        static ZERO: std::sync::OnceLock<LaurentPoly> = std::sync::OnceLock::new();
        if e < self.min_exp || e >= self.prec {
            ZERO.get_or_init(LaurentPoly::zero)
        } else {
            &self.coeffs[(e - self.min_exp) as usize]
        }
    }

    fn trimmed(&self) -> (i64, &[LaurentPoly]) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => (self.min_exp + i as i64, &self.coeffs[i..]),
            None => (self.prec, &[]),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let min_exp = self.min_exp.min(other.min_exp);
        let prec = self.prec.min(other.prec);
        if prec <= min_exp {
            return Self::zero(prec);
        }
        let coeffs = (min_exp..prec)
            .map(|e| self.at(e).add(other.at(e)))
            .collect();
        BiSeries {
            min_exp,
            prec,
            coeffs,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        BiSeries {
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (amin, a) = self.trimmed();
        let (bmin, b) = other.trimmed();
        // A zero operand has no known part to meet the other's error term.
        let prec = match (a.is_empty(), b.is_empty()) {
            (true, true) => self.prec + other.prec,
            (true, false) => self.prec + bmin,
            (false, true) => other.prec + amin,
            (false, false) => (self.prec + bmin).min(other.prec + amin),
        };
        let min_exp = amin + bmin;
        if prec <= min_exp {
            return Self::zero(prec);
        }
        let len = (prec - min_exp) as usize;
        let mut out = vec![LaurentPoly::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
        }
        BiSeries {
            min_exp,
            prec,
            coeffs: out,
        }
    }

    /// Inverse of `±q^v (1 + ...)` where the leading coefficient is the
    /// constant polynomial `±1`.
    pub fn invert_unit(&self) -> Result<Self> {
        let (v, a) = self.trimmed();
        let lead_poly = a.first().ok_or(Error::ZeroSeries { prec: self.prec })?;
        let lead = match lead_poly.as_constant() {
            Some(c) if c.abs().is_one() => c,
            _ => {
                let coefficient = lead_poly
                    .terms()
                    .next()
                    .map(|(_, c)| c.clone())
                    .unwrap_or_default();
                return Err(Error::NotAUnit {
                    exponent: v,
                    coefficient,
                });
            }
        };
        let n = a.len();
        let mut b: Vec<LaurentPoly> = Vec::with_capacity(n);
        b.push(LaurentPoly::constant(lead.clone()));
        for i in 1..n {
            let mut acc = LaurentPoly::zero();
            for j in 1..=i {
                if !a[j].is_zero() {
                    acc = acc.add(&a[j].mul(&b[i - j]));
                }
            }
            b.push(acc.scale(&-&lead));
        }
        Ok(BiSeries {
            min_exp: -v,
            prec: -v + n as i64,
            coeffs: b,
        })
    }

    /// Multiply by `1 - c z^m q^e` (e >= 1) in place of a general product.
    pub fn mul_binomial(&self, c: &BigInt, m: i64, e: i64) -> Self {
        assert!(e >= 1);
        let mut out = self.coeffs.clone();
        for i in (e as usize..out.len()).rev() {
            let t = out[i - e as usize].shift(m).scale(c);
            out[i] = out[i].sub(&t);
        }
        BiSeries {
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: out,
        }
    }

    /// Divide by `1 - c z^m q^e` (e >= 1).
    pub fn div_binomial(&self, c: &BigInt, m: i64, e: i64) -> Self {
        assert!(e >= 1);
        let mut out = self.coeffs.clone();
        for i in e as usize..out.len() {
            let t = out[i - e as usize].shift(m).scale(c);
            out[i] = out[i].add(&t);
        }
        BiSeries {
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: out,
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        BiSeries {
            min_exp: self.min_exp + k,
            prec: self.prec + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The series in `q` multiplying `z^m`.
    pub fn coeff_z(&self, m: i64) -> QSeries {
        let coeffs = self.coeffs.iter().map(|p| p.coeff(m)).collect();
        QSeries::with_prec(self.min_exp, coeffs, self.prec)
    }

    /// Smallest and largest `z` exponent with a nonzero coefficient.
    pub fn z_range(&self) -> Option<(i64, i64)> {
        let ms = self.coeffs.iter().flat_map(|p| p.terms().map(|(m, _)| m));
        ms.fold(None, |acc, m| match acc {
            None => Some((m, m)),
            Some((lo, hi)) => Some((lo.min(m), hi.max(m))),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }
}

impl Default for BiSeries {
    fn default() -> Self {
        Self::zero(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverse() {
        let n = 10;
        let f = BiSeries::one(n).add(&BiSeries::monomial(LaurentPoly::monomial(-1, 1), 2, n));
        let inv = f.invert_unit().unwrap();
        for j in 0..5 {
            assert_eq!(inv.coeff(2 * j).unwrap(), LaurentPoly::monomial(1, j));
            assert!(inv.coeff(2 * j + 1).unwrap().is_zero());
        }
        assert_eq!(BiSeries::one(n).div_binomial(&BigInt::one(), 1, 2), inv);
        assert_eq!(inv.mul(&f), BiSeries::one(n));
        assert_eq!(inv.mul_binomial(&BigInt::one(), 1, 2), BiSeries::one(n));
    }

    #[test]
    fn coeff_extraction() {
        let zq = BiSeries::monomial(
            LaurentPoly::from_terms([(1, 1.into()), (-1, 1.into())]),
            1,
            4,
        );
        assert_eq!(zq.coeff_z(1), QSeries::with_prec(1, vec![1.into()], 4));
        let two = zq.add(&zq);
        assert_eq!(two.coeff_z(-1), zq.coeff_z(-1).add(&zq.coeff_z(-1)));
        assert_eq!(
            zq.scale(&BigInt::from(3)).coeff_z(1),
            zq.coeff_z(1).scale(&BigInt::from(3))
        );
    }

    #[test]
    fn non_unit() {
        let f = BiSeries::monomial(LaurentPoly::monomial(1, 1), 0, 3);
        assert!(matches!(f.invert_unit(), Err(Error::NotAUnit { .. })));
    }
}
