//! Truncated Laurent series in `q` with exact integer coefficients.
//!
//! A [`QSeries`] knows its coefficients for `min_exp <= e < prec`; everything
//! below `min_exp` is zero and everything from `prec` on is unknown. Every
//! operation propagates `prec` pessimistically so a reported coefficient is
//! always exact.

mod bivariate;
mod laurent;

pub use bivariate::BiSeries;
pub use laurent::LaurentPoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "SeriesJson", try_from = "SeriesJson")]
pub struct QSeries {
    min_exp: i64,
    prec: i64,
    coeffs: Vec<BigInt>,
}

/// First disagreement found by [`QSeries::equal_to_order`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub exponent: i64,
    #[serde(with = "decimal")]
    pub left: BigInt,
    #[serde(with = "decimal")]
    pub right: BigInt,
}

impl QSeries {
    /// Series `sum coeffs[i] q^(min_exp + i)` known below `min_exp + coeffs.len()`.
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let prec = min_exp + coeffs.len() as i64;
        QSeries {
            min_exp,
            prec,
            coeffs,
        }
    }

    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Like [`from_coeffs`](Self::from_coeffs) but with an explicit window;
    /// missing coefficients are zero-filled and extra ones dropped.
    pub fn with_prec(min_exp: i64, mut coeffs: Vec<BigInt>, prec: i64) -> Self {
        if prec <= min_exp {
            return Self::zero(prec);
        }
        coeffs.resize((prec - min_exp) as usize, BigInt::zero());
        QSeries {
            min_exp,
            prec,
            coeffs,
        }
    }

    /// `O(q^prec)`.
    pub fn zero(prec: i64) -> Self {
        QSeries {
            min_exp: prec,
            prec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(BigInt::one(), 0, prec)
    }

    /// `c q^j + O(q^prec)`.
    pub fn monomial(c: BigInt, j: i64, prec: i64) -> Self {
        if j >= prec {
            return Self::zero(prec);
        }
        let mut coeffs = vec![BigInt::zero(); (prec - j) as usize];
        coeffs[0] = c;
        QSeries {
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

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> Result<BigInt> {
        if e < self.min_exp || e >= self.prec {
            return Err(Error::OutOfRange {
                exponent: e,
                min_exp: self.min_exp,
                prec: self.prec,
            });
        }
        Ok(self.coeffs[(e - self.min_exp) as usize].clone())
    }

    /// Coefficient with the Laurent convention that everything below
    /// `min_exp` vanishes. Panics-free: `None` above the window.
    pub fn get(&self, e: i64) -> Option<&BigInt> {
        if e >= self.prec {
            None
        } else if e < self.min_exp {
            Some(zero_ref())
        } else {
            Some(&self.coeffs[(e - self.min_exp) as usize])
        }
    }

    fn at(&self, e: i64) -> &BigInt {
        match self.get(e) {
            Some(c) => c,
            None => zero_ref(),
        }
    }

    /// Exponent of the lowest nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.min_exp + i as i64)
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Trims leading zeros. An all-zero series becomes the empty `O(q^prec)`.
    pub fn canonicalize(&self) -> QSeries {
        let (min_exp, slice) = self.trimmed();
        QSeries {
            min_exp,
            prec: self.prec,
            coeffs: slice.to_vec(),
        }
    }

    fn trimmed(&self) -> (i64, &[BigInt]) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => (self.min_exp + i as i64, &self.coeffs[i..]),
            None => (self.prec, &[]),
        }
    }

    /// Forgets every coefficient at or above `prec`.
    pub fn truncate(&self, prec: i64) -> QSeries {
        if prec >= self.prec {
            return self.clone();
        }
        if prec <= self.min_exp {
            return Self::zero(prec);
        }
        QSeries {
            min_exp: self.min_exp,
            prec,
            coeffs: self.coeffs[..(prec - self.min_exp) as usize].to_vec(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &QSeries, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> QSeries {
        let min_exp = self.min_exp.min(other.min_exp);
        let prec = self.prec.min(other.prec);
        if prec <= min_exp {
            return Self::zero(prec);
        }
        let coeffs = (min_exp..prec)
            .map(|e| f(self.at(e), other.at(e)))
            .collect();
        QSeries {
            min_exp,
            prec,
            coeffs,
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> QSeries {
        QSeries {
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> QSeries {
        QSeries {
            min_exp: self.min_exp + k,
            prec: self.prec + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Cauchy product; the result is exact below
    /// `min(a.prec + val(b), b.prec + val(a))`.
    pub fn mul(&self, other: &QSeries) -> QSeries {
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
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        QSeries {
            min_exp,
            prec,
            coeffs: out,
        }
    }

    pub fn pow(&self, n: u32) -> QSeries {
        if n == 0 {
            return Self::one(self.prec.max(1));
        }
        let mut result: Option<QSeries> = None;
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            n >>= 1;
            if n == 0 {
                return result.expect("n > 0");
            }
            base = base.mul(&base);
        }
    }

    /// Multiplicative inverse of `±q^v (1 + ...)`.
    pub fn invert_unit(&self) -> Result<QSeries> {
        let (v, a) = self.trimmed();
        let lead = a.first().ok_or(Error::ZeroSeries { prec: self.prec })?;
        if lead.abs() != BigInt::one() {
            return Err(Error::NotAUnit {
                exponent: v,
                coefficient: lead.clone(),
            });
        }
        let n = a.len();
        let support: Vec<usize> = (1..n).filter(|&j| !a[j].is_zero()).collect();
        let mut b: Vec<BigInt> = Vec::with_capacity(n);
        b.push(lead.clone());
        for i in 1..n {
            let mut acc = BigInt::zero();
            for &j in &support {
                if j > i {
                    break;
                }
                acc += &a[j] * &b[i - j];
            }
            b.push(-(acc * lead));
        }
        Ok(QSeries {
            min_exp: -v,
            prec: -v + n as i64,
            coeffs: b,
        })
    }

    /// Exact quotient `self / other`. The divisor's lowest coefficient may be
    /// any nonzero integer as long as every quotient coefficient comes out
    /// integral; otherwise [`Error::InexactDivision`].
    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        let (v, b) = other.trimmed();
        let lead = b.first().ok_or(Error::ZeroSeries { prec: other.prec })?;
        let (u, a) = self.trimmed();
        let min_exp = u - v;
        let n = a.len().min(b.len());
        let prec = min_exp + n as i64;
        if a.is_empty() {
            return Ok(Self::zero(self.prec - v));
        }
        let support: Vec<usize> = (1..n).filter(|&j| !b[j].is_zero()).collect();
        let unit = lead.abs() == BigInt::one();
        let mut q: Vec<BigInt> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = a[i].clone();
            for &j in &support {
                if j > i {
                    break;
                }
                acc -= &b[j] * &q[i - j];
            }
            if unit {
                q.push(acc * lead);
            } else {
                let (quo, rem) = acc.div_rem(lead);
                if !rem.is_zero() {
                    return Err(Error::InexactDivision {
                        exponent: min_exp + i as i64,
                    });
                }
                q.push(quo);
            }
        }
        Ok(QSeries {
            min_exp,
            prec,
            coeffs: q,
        })
    }

    /// `q -> q^k`.
    pub fn substitute_power(&self, k: u32) -> QSeries {
        assert!(k >= 1, "substitute_power needs k >= 1");
        let k = k as i64;
        if k == 1 {
            return self.clone();
        }
        if self.coeffs.is_empty() {
            return Self::zero(self.prec * k);
        }
        let len = ((self.prec - self.min_exp) * k) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        QSeries {
            min_exp: self.min_exp * k,
            prec: self.prec * k,
            coeffs,
        }
    }

    /// `sum_n c(l n + d) q^n`. Leading zeros are trimmed before the support check.
    pub fn dissect(&self, l: u32, d: u32) -> Result<QSeries> {
        assert!(l >= 1 && d < l, "dissect needs 0 <= d < l");
        let (min_exp, _) = self.trimmed();
        if min_exp < 0 {
            return Err(Error::NegativeSupport { min_exp });
        }
        let (l, d) = (l as i64, d as i64);
        let prec = (self.prec - d - 1).div_euclid(l) + 1;
        if prec <= 0 {
            return Ok(Self::zero(prec.max(0)));
        }
        let coeffs = (0..prec).map(|n| self.at(l * n + d).clone()).collect();
        Ok(QSeries {
            min_exp: 0,
            prec,
            coeffs,
        })
    }

    /// Compares every exponent `<= order`.
    pub fn equal_to_order(&self, other: &QSeries, order: i64) -> Result<Option<Mismatch>> {
        for s in [self, other] {
            if s.prec <= order {
                return Err(Error::InsufficientPrecision {
                    needed: order,
                    available: s.prec,
                });
            }
        }
        let lo = self.min_exp.min(other.min_exp);
        for e in lo..=order {
            let (x, y) = (self.at(e), other.at(e));
            if x != y {
                return Ok(Some(Mismatch {
                    exponent: e,
                    left: x.clone(),
                    right: y.clone(),
                }));
            }
        }
        Ok(None)
    }

    /// `(exponent, coefficient)` pairs for the nonzero known coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }
}

fn zero_ref() -> &'static BigInt {
    static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
    ZERO.get_or_init(BigInt::zero)
}

impl PartialEq for QSeries {
    /// Same window and same values after trimming leading zeros.
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && self.trimmed() == other.trimmed()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

impl std::ops::Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl std::ops::Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    variable: String,
    min_exp: i64,
    prec: i64,
    coeffs: Vec<String>,
}

impl From<QSeries> for SeriesJson {
    fn from(s: QSeries) -> Self {
        SeriesJson {
            variable: "q".into(),
            min_exp: s.min_exp,
            prec: s.prec,
            coeffs: s.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<SeriesJson> for QSeries {
    type Error = String;
    fn try_from(j: SeriesJson) -> std::result::Result<Self, String> {
        if j.variable != "q" {
            return Err(format!("unsupported variable `{}`", j.variable));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|e| format!("bad coefficient `{c}`: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if j.prec < j.min_exp || coeffs.len() as i64 != j.prec - j.min_exp {
            return Err(format!(
                "coeffs has {} entries, window needs {}",
                coeffs.len(),
                j.prec - j.min_exp
            ));
        }
        Ok(QSeries {
            min_exp: j.min_exp,
            prec: j.prec,
            coeffs,
        })
    }
}

/// Serde helper writing big integers as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Retries `f` at growing working precision until its result is known below
/// `prec`, then truncates to exactly `prec`. Intermediate Laurent factors eat
/// precision in ways that are easiest to measure after the fact.
pub fn with_precision(prec: i64, mut f: impl FnMut(i64) -> Result<QSeries>) -> Result<QSeries> {
    let mut work = prec;
    let cap = 16 * prec.max(16) + 2000;
    loop {
        let s = f(work)?;
        if s.prec() >= prec {
            return Ok(s.truncate(prec));
        }
        let deficit = prec - s.prec();
        if work + deficit > cap {
            return Err(Error::InsufficientPrecision {
                needed: prec - 1,
                available: s.prec(),
            });
        }
        work += deficit + 8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(min: i64, c: &[i64]) -> QSeries {
        QSeries::from_i64s(min, c)
    }

    #[test]
    fn zero_operand_window() {
        // O(q) * (q^3 + O(q^4)) * (1 + O(q^2)) is O(q^4) however grouped.
        let a = s(0, &[0]);
        let b = s(3, &[1]);
        let c = s(0, &[1, 0]);
        assert_eq!(a.mul(&b).mul(&c), QSeries::zero(4));
        assert_eq!(a.mul(&b.mul(&c)), QSeries::zero(4));
        assert_eq!(b.mul(&a), a.mul(&b));
    }

    #[test]
    fn add_cancels_and_keeps_window() {
        let a = s(0, &[1, -1, 0, 0]);
        let b = s(0, &[0, 1, 0, 0]);
        assert_eq!(a.add(&b), s(0, &[1, 0, 0, 0]));
        assert_eq!(a.add(&QSeries::zero(4)), a);
        let lau = s(-1, &[1, 0, 0]).add(&s(0, &[0, 1]));
        assert_eq!(lau.min_exp(), -1);
        assert_eq!(lau.prec(), 2);
        assert_eq!(lau.coeff(1).unwrap(), BigInt::from(1));
    }

    #[test]
    fn mul_windows() {
        let n = 12;
        let geo = QSeries::from_i64s(0, &vec![1; n]);
        let one_minus_q = QSeries::with_prec(0, vec![1.into(), (-1).into()], n as i64);
        assert_eq!(one_minus_q.mul(&geo), QSeries::one(n as i64));
        let p = s(0, &[1, -1, 0, 0]).mul(&s(0, &[1, 1, 0, 0]));
        assert_eq!(p, s(0, &[1, 0, -1, 0]));
        // q^-2 shrinks the partner's window by 2.
        let lau = s(-2, &[1, 0, 0, 0, 0]).mul(&s(0, &[1, 1, 1, 1, 1, 1]));
        assert_eq!((lau.min_exp(), lau.prec()), (-2, 3));
    }

    #[test]
    fn invert() {
        let inv = s(0, &[1, -1, 0, 0, 0]).invert_unit().unwrap();
        assert_eq!(inv, s(0, &[1, 1, 1, 1, 1]));
        let inv = s(2, &[1, -1, 0, 0, 0]).invert_unit().unwrap();
        assert_eq!(inv.min_exp(), -2);
        assert_eq!(inv.coeff(-1).unwrap(), BigInt::from(1));
        assert!(matches!(
            s(0, &[2, 1]).invert_unit(),
            Err(Error::NotAUnit { .. })
        ));
        assert!(matches!(
            QSeries::zero(5).invert_unit(),
            Err(Error::ZeroSeries { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let num = s(0, &[2, 4, 2, 0, 0]);
        let den = s(0, &[2, 2, 0, 0, 0]);
        assert_eq!(num.div(&den).unwrap(), s(0, &[1, 1, 0, 0, 0]));
        assert!(matches!(
            s(0, &[1, 0, 0]).div(&s(0, &[2, 0, 0])),
            Err(Error::InexactDivision { exponent: 0 })
        ));
    }

    #[test]
    fn shift_scale_negate() {
        assert_eq!(QSeries::one(5).shift(3), QSeries::monomial(1.into(), 3, 8));
        assert_eq!(s(0, &[0, 1]).scale(&BigInt::from(-3)), s(0, &[0, -3]));
        let a = s(-1, &[1, 2, 3]);
        assert_eq!(a.neg().neg(), a);
    }

    #[test]
    fn substitute_and_dissect() {
        assert_eq!(s(0, &[1, 1]).substitute_power(3), s(0, &[1, 0, 0, 1, 0, 0]));
        assert_eq!(s(-1, &[1]).substitute_power(2), s(-2, &[1, 0]));
        assert_eq!(s(0, &[1, 1, 1, 1]).dissect(2, 0).unwrap(), s(0, &[1, 1]));
        let f = s(0, &[3, 1, 4, 1, 5]);
        assert_eq!(f.dissect(1, 0).unwrap(), f);
        assert!(matches!(
            s(-1, &[1, 0]).dissect(2, 0),
            Err(Error::NegativeSupport { .. })
        ));
        // Window edge: (prec - d - 1) div l + 1.
        assert_eq!(f.dissect(3, 2).unwrap().prec(), 1);
    }

    #[test]
    fn coeff_and_compare() {
        assert_eq!(s(0, &[1, -1]).coeff(1).unwrap(), BigInt::from(-1));
        assert_eq!(s(-1, &[1]).coeff(-1).unwrap(), BigInt::from(1));
        assert_eq!(QSeries::one(10).coeff(5).unwrap(), BigInt::zero());
        assert!(QSeries::one(3).coeff(3).is_err());
        let n = 6;
        let one = QSeries::one(n + 2);
        let bumped = one.add(&QSeries::monomial(1.into(), n + 1, n + 2));
        assert_eq!(one.equal_to_order(&bumped, n).unwrap(), None);
        let m = one.equal_to_order(&s(0, &[1, 1, 0]), 1).unwrap().unwrap();
        assert_eq!(m.exponent, 1);
        assert!(one.equal_to_order(&s(0, &[1]), 1).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let a = s(-2, &[1, 0, -7]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(
            text,
            r#"{"variable":"q","min_exp":-2,"prec":1,"coeffs":["1","0","-7"]}"#
        );
        let b: QSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn display() {
        assert_eq!(s(0, &[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3 + O(q^4)");
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = s(0, &[1, 1, 0, 0, 0, 0]);
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        assert_eq!(a.pow(0), QSeries::one(6));
    }
}
