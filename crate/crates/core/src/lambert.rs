//! Generalized Lambert series and the `g` function.
//!
//! Every sum here has the shape
//! `sum_n eps^n q^{A n^2 + B n + C} / (1 - q^{D n + E})`, captured by
//! [`LambertSum`]. A denominator with negative exponent `E` is rewritten as
//! `-q^{-E} / (1 - q^{-E})` before geometric expansion.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::products::{big_p_factors, expand_product_spec, ProductSpec};
use crate::series::{with_precision, QSeries};

/// `sum_n (±1)^n q^{a2 n^2 + a1 n + a0} / (1 - q^{d1 n + d0})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambertSum {
    pub a2: i64,
    pub a1: i64,
    pub a0: i64,
    pub d1: i64,
    pub d0: i64,
    /// Include the sign `(-1)^n`.
    pub alternating: bool,
    /// Skip the `n = 0` term.
    pub omit_n0: bool,
}

/// Consecutive non-contributing indices seen before a direction is closed.
pub const DEFAULT_MARGIN: u32 = 3;

impl LambertSum {
    fn num_exp(&self, n: i64) -> i64 {
        self.a2 * n * n + self.a1 * n + self.a0
    }

    fn den_exp(&self, n: i64) -> i64 {
        self.d1 * n + self.d0
    }

    /// Valuation of the `n`-th term after the negative-denominator rewrite.
    fn valuation(&self, n: i64) -> i64 {
        self.num_exp(n) + (-self.den_exp(n)).max(0)
    }

    fn included(&self, n: i64) -> bool {
        !(self.omit_n0 && n == 0)
    }

    pub fn expand(&self, prec: i64) -> Result<QSeries> {
        self.expand_with_margin(prec, DEFAULT_MARGIN)
    }

    /// Like [`expand`](Self::expand) with an explicit stopping margin; the
    /// result never depends on it.
    pub fn expand_with_margin(&self, prec: i64, margin: u32) -> Result<QSeries> {
        if self.a2 <= 0 {
            return Err(Error::InvalidArgument(
                "Lambert sum needs a positive quadratic exponent".into(),
            ));
        }
        if self.d1 == 0 && self.d0 == 0 {
            return Err(Error::ZeroDenominator(
                "denominator 1 - q^0 for every n".into(),
            ));
        }
        if self.d1 != 0 && self.d0 % self.d1 == 0 {
            let n = -self.d0 / self.d1;
            if self.included(n) {
                return Err(Error::ZeroDenominator(format!(
                    "term n = {n} has denominator 1 - q^0"
                )));
            }
        }
        // valuation(n) is convex in n, so walk downhill to its minimum and
        // then outward; along each direction it never decreases again.
        let mut center = -self.a1 / (2 * self.a2);
        while self.valuation(center - 1) < self.valuation(center) {
            center -= 1;
        }
        while self.valuation(center + 1) < self.valuation(center) {
            center += 1;
        }
        let mut terms = Vec::new();
        for dir in [1i64, -1] {
            let mut n = if dir == 1 { center } else { center - 1 };
            let mut misses = 0;
            while misses < margin.max(1) {
                if self.valuation(n) < prec {
                    misses = 0;
                    if self.included(n) {
                        terms.push(n);
                    }
                } else {
                    misses += 1;
                }
                n += dir;
            }
        }
        let min_exp = terms
            .iter()
            .map(|&n| self.valuation(n))
            .min()
            .unwrap_or(prec);
        let mut coeffs = vec![BigInt::zero(); (prec - min_exp) as usize];
        for n in terms {
            let mut sign: i64 = if self.alternating && n.rem_euclid(2) == 1 {
                -1
            } else {
                1
            };
            let mut e = self.num_exp(n);
            let mut step = self.den_exp(n);
            if step < 0 {
                sign = -sign;
                step = -step;
                e += step;
            }
            while e < prec {
                coeffs[(e - min_exp) as usize] += sign;
                e += step;
            }
        }
        Ok(QSeries::with_prec(min_exp, coeffs, prec))
    }
}

fn check_l(l: i64) -> Result<()> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!("l must be >= 2, got {l}")));
    }
    Ok(())
}

/// `Sigma(a, b)` in the variable `y` itself:
/// `sum_n (-1)^n y^{4bn + l n(2n+3)} / (1 - y^{2ln + 2a})`.
pub fn sigma_ab_y(a: i64, b: i64, l: i64) -> Result<LambertSum> {
    check_l(l)?;
    Ok(LambertSum {
        a2: 2 * l,
        a1: 4 * b + 3 * l,
        a0: 0,
        d1: 2 * l,
        d0: 2 * a,
        alternating: true,
        omit_n0: false,
    })
}

fn in_q(sum: LambertSum, l: i64) -> LambertSum {
    LambertSum {
        a2: sum.a2 * l,
        a1: sum.a1 * l,
        a0: sum.a0 * l,
        d1: sum.d1 * l,
        d0: sum.d0 * l,
        ..sum
    }
}

/// `Sigma(a, b)` expanded in `q` with `y = q^l`.
pub fn sigma_ab(a: i64, b: i64, l: i64, prec: i64) -> Result<QSeries> {
    in_q(sigma_ab_y(a, b, l)?, l).expand(prec)
}

/// `Sigma(0, b)`: the `a = 0` sum with `n = 0` left out.
pub fn sigma_0b(b: i64, l: i64, prec: i64) -> Result<QSeries> {
    let sum = LambertSum {
        omit_n0: true,
        ..sigma_ab_y(0, b, l)?
    };
    in_q(sum, l).expand(prec)
}

/// `S2(b) = sum'_n (-1)^n q^{2n^2 + bn} / (1 - q^{2ln})`.
pub fn s2_sum(b: i64, l: i64) -> Result<LambertSum> {
    check_l(l)?;
    Ok(LambertSum {
        a2: 2,
        a1: b,
        a0: 0,
        d1: 2 * l,
        d0: 0,
        alternating: true,
        omit_n0: true,
    })
}

pub fn s2(b: i64, l: i64, prec: i64) -> Result<QSeries> {
    s2_sum(b, l)?.expand(prec)
}

/// `P(-y^l, y^{2l}) P(y^{4a}, y^{2l}) / (P(y^{2a}, y^{2l}) P(-y^{2a+l}, y^{2l}))` in `q`.
pub fn g_ratio(a: i64, l: i64) -> ProductSpec {
    let k = 2 * l * l;
    let num = [big_p_factors(-1, l * l, k), big_p_factors(1, 4 * a * l, k)].concat();
    let den = [
        big_p_factors(1, 2 * a * l, k),
        big_p_factors(-1, (2 * a + l) * l, k),
    ]
    .concat();
    ProductSpec::new(num, den)
}

/// `g(a) = y^{2a} R(a) Sigma(a,0) - y^{6a} Sigma(2a,a) - Sigma(0,-a)` in `q`.
///
/// Defined for every integer `a` with `a` and `2a` nonzero mod `l`, which
/// covers the shifted values `g(a + l)` and `g(-a)`.
pub fn g_of(a: i64, l: i64, prec: i64) -> Result<QSeries> {
    check_l(l)?;
    if a.rem_euclid(l) == 0 || (2 * a).rem_euclid(l) == 0 {
        return Err(Error::InvalidArgument(format!(
            "g({a}) needs a and 2a nonzero mod {l}"
        )));
    }
    with_precision(prec, |w| {
        let ratio = expand_product_spec(&g_ratio(a, l), w)?;
        let first = ratio.mul(&sigma_ab(a, 0, l, w)?).shift(2 * a * l);
        let second = sigma_ab(2 * a, a, l, w)?.shift(6 * a * l);
        let third = sigma_0b(-a, l, w)?;
        Ok(first.sub(&second).sub(&third))
    })
}
