//! q-Pochhammer products, `P(z, q)` at monomial arguments and theta series.
//!
//! Every product is expanded through one routine: each binomial
//! `1 - s q^e` is either a constant (`e = 0`), rewritten as
//! `-s q^e (1 - s q^-e)` (`e < 0`), or applied in place to a coefficient
//! buffer. Only binomials with `e` below the window matter.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::QSeries;

/// Number of factors in a Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

/// `(sign q^a; q^k)_length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PochFactor {
    pub sign: i32,
    pub a: i64,
    pub k: i64,
    #[serde(rename = "n")]
    pub length: Length,
}

impl PochFactor {
    pub fn inf(sign: i32, a: i64, k: i64) -> Self {
        PochFactor {
            sign,
            a,
            k,
            length: Length::Infinite,
        }
    }

    pub fn fin(sign: i32, a: i64, k: i64, n: u64) -> Self {
        PochFactor {
            sign,
            a,
            k,
            length: Length::Finite(n),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::InvalidArgument(format!(
                "sign must be +1 or -1, got {}",
                self.sign
            )));
        }
        if self.k < 1 {
            return Err(Error::InvalidArgument(format!(
                "base exponent must be >= 1, got {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// `c q^j * prod(num) / prod(den)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub prefactor: Prefactor,
    pub num: Vec<PochFactor>,
    pub den: Vec<PochFactor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prefactor {
    #[serde(with = "crate::series::decimal")]
    pub c: BigInt,
    pub j: i64,
}

impl Default for ProductSpec {
    fn default() -> Self {
        ProductSpec {
            prefactor: Prefactor {
                c: BigInt::one(),
                j: 0,
            },
            num: Vec::new(),
            den: Vec::new(),
        }
    }
}

impl ProductSpec {
    pub fn new(num: Vec<PochFactor>, den: Vec<PochFactor>) -> Self {
        ProductSpec {
            num,
            den,
            ..Default::default()
        }
    }

    pub fn with_prefactor(mut self, c: impl Into<BigInt>, j: i64) -> Self {
        self.prefactor = Prefactor { c: c.into(), j };
        self
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n),
            Length::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Length::Finite(n)),
            Raw::Str(s) if s == "inf" => Ok(Length::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected integer or \"inf\", got \"{s}\""
            ))),
        }
    }
}

/// Binomials `1 - s q^e` with `e > 0`, plus the exact constant and shift
/// collected from the non-positive ones.
struct Binomials {
    num_const: BigInt,
    den_const: BigInt,
    shift: i64,
    num: Vec<(i32, i64)>,
    den: Vec<(i32, i64)>,
}

impl Binomials {
    fn new() -> Self {
        Binomials {
            num_const: BigInt::one(),
            den_const: BigInt::one(),
            shift: 0,
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    fn push(&mut self, s: i32, e: i64, in_den: bool) -> Result<()> {
        match (e.cmp(&0), in_den) {
            (std::cmp::Ordering::Greater, false) => self.num.push((s, e)),
            (std::cmp::Ordering::Greater, true) => self.den.push((s, e)),
            (std::cmp::Ordering::Equal, false) => self.num_const *= 1 - s,
            (std::cmp::Ordering::Equal, true) => {
                if s == 1 {
                    return Err(Error::NotAUnit {
                        exponent: 0,
                        coefficient: BigInt::zero(),
                    });
                }
                self.den_const *= 2;
            }
            (std::cmp::Ordering::Less, false) => {
                self.num_const *= -s;
                self.shift += e;
                self.num.push((s, -e));
            }
            (std::cmp::Ordering::Less, true) => {
                self.num_const *= -s;
                self.shift -= e;
                self.den.push((s, -e));
            }
        }
        Ok(())
    }

    /// Adds every factor of `f` that is not `1 + O(q^bound)` once the
    /// prefactor shift is known. Non-positive exponents come first so the
    /// shift is final before positive ones are filtered.
    fn push_factor(
        &mut self,
        f: &PochFactor,
        in_den: bool,
        positive_bound: Option<i64>,
    ) -> Result<()> {
        f.validate()?;
        let mut r: u64 = 0;
        loop {
            if let Length::Finite(n) = f.length {
                if r >= n {
                    break;
                }
            }
            let e = f.a + r as i64 * f.k;
            match positive_bound {
                None if e > 0 => break,
                None => self.push(f.sign, e, in_den)?,
                Some(b) if e >= b => break,
                Some(_) if e > 0 => self.push(f.sign, e, in_den)?,
                Some(_) => {}
            }
            r += 1;
        }
        Ok(())
    }
}

/// Expands `c q^j prod(num)/prod(den)` exactly below `q^prec`.
pub fn expand_product_spec(spec: &ProductSpec, prec: i64) -> Result<QSeries> {
    let mut b = Binomials::new();
    for f in &spec.num {
        b.push_factor(f, false, None)?;
    }
    for f in &spec.den {
        b.push_factor(f, true, None)?;
    }
    b.num_const *= &spec.prefactor.c;
    let shift = b.shift + spec.prefactor.j;
    let len = prec - shift;
    if b.num_const.is_zero() || len <= 0 {
        return Ok(QSeries::zero(prec));
    }
    for f in &spec.num {
        b.push_factor(f, false, Some(len))?;
    }
    for f in &spec.den {
        b.push_factor(f, true, Some(len))?;
    }
    let mut buf = vec![BigInt::zero(); len as usize];
    buf[0] = BigInt::one();
    let mut filled = 1usize;
    for &(s, e) in &b.num {
        let e = e as usize;
        if e >= buf.len() {
            continue;
        }
        filled = (filled + e).min(buf.len());
        for i in (e..filled).rev() {
            let t = &buf[i - e] * s;
            buf[i] -= t;
        }
    }
    for &(s, e) in &b.den {
        let e = e as usize;
        for i in e..buf.len() {
            let t = &buf[i - e] * s;
            buf[i] += t;
        }
    }
    let scaled = if b.den_const.is_one() {
        buf.into_iter().map(|x| x * &b.num_const).collect()
    } else {
        let mut out = Vec::with_capacity(buf.len());
        for (i, x) in buf.into_iter().enumerate() {
            let (quo, rem) = (x * &b.num_const).div_rem(&b.den_const);
            if !rem.is_zero() {
                return Err(Error::InexactDivision {
                    exponent: shift + i as i64,
                });
            }
            out.push(quo);
        }
        out
    };
    Ok(QSeries::from_coeffs(shift, scaled))
}

/// `(sign q^a; q^k)_inf`. A negative `a` gives a Laurent series.
pub fn poch_inf(sign: i32, a: i64, k: i64, prec: i64) -> Result<QSeries> {
    expand_product_spec(
        &ProductSpec::new(vec![PochFactor::inf(sign, a, k)], vec![]),
        prec,
    )
}

/// `(sign q^a; q^k)_n`.
pub fn poch_fin(sign: i32, a: i64, k: i64, n: u64, prec: i64) -> Result<QSeries> {
    expand_product_spec(
        &ProductSpec::new(vec![PochFactor::fin(sign, a, k, n)], vec![]),
        prec,
    )
}

/// The two factors of `P(sign q^a, q^k) = (z; q^k)_inf (q^k / z; q^k)_inf`.
pub fn big_p_factors(sign: i32, a: i64, k: i64) -> [PochFactor; 2] {
    [PochFactor::inf(sign, a, k), PochFactor::inf(sign, k - a, k)]
}

/// `P(sign q^a, q^k)`, any integer `a`.
pub fn big_p(sign: i32, a: i64, k: i64, prec: i64) -> Result<QSeries> {
    expand_product_spec(
        &ProductSpec::new(big_p_factors(sign, a, k).to_vec(), vec![]),
        prec,
    )
}

/// `P(0) = (y^{2l}; y^{2l})_inf` written in `q` with `y = q^l`.
pub fn p_zero(l: i64, prec: i64) -> Result<QSeries> {
    poch_inf(1, 2 * l * l, 2 * l * l, prec)
}

/// `sum_n sign^n q^{k n^2 + a n}` over all integers `n`.
pub fn theta_sum(sign: i32, a: i64, k: i64, prec: i64) -> Result<QSeries> {
    if k < 1 || (sign != 1 && sign != -1) {
        return Err(Error::InvalidArgument(format!(
            "theta needs k >= 1 and sign = +-1, got ({sign}, {a}, {k})"
        )));
    }
    let f = |n: i64| k * n * n + a * n;
    let center = (-a).div_euclid(2 * k);
    let mut exps = Vec::new();
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { center } else { center - 1 };
        // Exponents grow monotonically away from the vertex; one extra step
        // covers the vertex lying between two integers.
        let mut misses = 0;
        while misses < 2 {
            if f(n) < prec {
                exps.push((n, f(n)));
                misses = 0;
            } else {
                misses += 1;
            }
            n += dir;
        }
    }
    let min_exp = exps.iter().map(|&(_, e)| e).min().unwrap_or(prec).min(prec);
    let mut coeffs = vec![BigInt::zero(); (prec - min_exp) as usize];
    for (n, e) in exps {
        let term = if sign == -1 && n.rem_euclid(2) == 1 {
            -1
        } else {
            1
        };
        coeffs[(e - min_exp) as usize] += term;
    }
    Ok(QSeries::with_prec(min_exp, coeffs, prec))
}

/// The triple-product side of `theta_sum(sign, a, k)`:
/// `(-z q^k, -q^k / z, q^{2k}; q^{2k})_inf` with `z = sign q^a`.
pub fn triple_product_spec(sign: i32, a: i64, k: i64) -> ProductSpec {
    ProductSpec::new(
        vec![
            PochFactor::inf(-sign, k + a, 2 * k),
            PochFactor::inf(-sign, k - a, 2 * k),
            PochFactor::inf(1, 2 * k, 2 * k),
        ],
        vec![],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], prec: i64) -> QSeries {
        QSeries::with_prec(0, c.iter().map(|&x| BigInt::from(x)).collect(), prec)
    }

    #[test]
    fn euler_product() {
        let e = poch_inf(1, 1, 1, 13).unwrap();
        assert_eq!(e, s(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1], 13));
        let n = 200;
        let e = poch_inf(1, 1, 1, n).unwrap();
        let mut pent = vec![0i64; n as usize];
        for j in -20i64..=20 {
            let ex = j * (3 * j - 1) / 2;
            if ex < n {
                pent[ex as usize] += if j % 2 == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(e, s(&pent, n));
    }

    #[test]
    fn small_products() {
        assert_eq!(poch_inf(-1, 1, 2, 5).unwrap(), s(&[1, 1, 0, 1, 1], 5));
        assert!(poch_inf(1, 0, 1, 10).unwrap().is_zero());
        assert_eq!(poch_fin(1, 3, 2, 0, 6).unwrap(), QSeries::one(6));
        assert_eq!(poch_fin(1, 2, 2, 1, 6).unwrap(), s(&[1, 0, -1], 6));
        assert_eq!(poch_fin(-1, 1, 2, 2, 6).unwrap(), s(&[1, 1, 0, 1, 1], 6));
        assert_eq!(
            expand_product_spec(&ProductSpec::default(), 7).unwrap(),
            QSeries::one(7)
        );
    }

    #[test]
    fn big_p_relations() {
        let n = 120;
        for (sign, a, k) in [(-1, 3, 10), (1, 2, 10), (1, -4, 7), (-1, 0, 3), (1, 1, 1)] {
            // (p1): P(z^-1 q) = P(z)
            assert_eq!(
                big_p(sign, k - a, k, n).unwrap(),
                big_p(sign, a, k, n).unwrap()
            );
            // (p2): P(z q) = -z^-1 P(z)
            let lhs = big_p(sign, a + k, k, n).unwrap();
            let rhs = big_p(sign, a, k, n + 200)
                .unwrap()
                .shift(-a)
                .scale(&BigInt::from(-sign))
                .truncate(n);
            assert_eq!(lhs, rhs, "(p2) at {sign} {a} {k}");
        }
        let direct = poch_inf(1, 2, 7, 60)
            .unwrap()
            .mul(&poch_inf(1, 5, 7, 60).unwrap());
        assert_eq!(big_p(1, 2, 7, 60).unwrap(), direct);
    }

    #[test]
    fn p_zero_bases() {
        assert_eq!(p_zero(1, 40).unwrap(), poch_inf(1, 2, 2, 40).unwrap());
        assert_eq!(p_zero(3, 40).unwrap(), poch_inf(1, 18, 18, 40).unwrap());
        assert_eq!(p_zero(5, 120).unwrap(), poch_inf(1, 50, 50, 120).unwrap());
    }

    #[test]
    fn theta_and_triple_product() {
        assert_eq!(
            theta_sum(1, 0, 1, 10).unwrap(),
            s(&[1, 2, 0, 0, 2, 0, 0, 0, 0, 2], 10)
        );
        for k in 1..=12 {
            for a in -k..=k {
                for sign in [1, -1] {
                    let lhs = theta_sum(sign, a, k, 150).unwrap();
                    let rhs = expand_product_spec(&triple_product_spec(sign, a, k), 150).unwrap();
                    assert_eq!(
                        lhs.equal_to_order(&rhs, 149).unwrap(),
                        None,
                        "jtp {sign} {a} {k}"
                    );
                }
            }
        }
        let rhs = expand_product_spec(
            &ProductSpec::new(
                vec![
                    PochFactor::inf(1, 1, 4),
                    PochFactor::inf(1, 3, 4),
                    PochFactor::inf(1, 4, 4),
                ],
                vec![],
            ),
            100,
        )
        .unwrap();
        assert_eq!(theta_sum(-1, 1, 2, 100).unwrap(), rhs);
    }

    #[test]
    fn laurent_and_constants() {
        // (q^-1; q^2)_inf = (1 - q^-1)(q; q^2)_inf = -q^-1 (1 - q)(q; q^2)_inf
        let lhs = poch_inf(1, -1, 2, 30).unwrap();
        let rhs = poch_inf(1, 1, 2, 31).unwrap().mul(&QSeries::with_prec(
            0,
            vec![1.into(), (-1).into()],
            31,
        ));
        assert_eq!(lhs, rhs.shift(-1).neg());
        assert!(poch_inf(1, -1, 1, 30).unwrap().is_zero());
        // (-1; q)_inf has constant factor 2.
        assert_eq!(
            poch_inf(-1, 0, 1, 20).unwrap(),
            poch_inf(-1, 1, 1, 20).unwrap().scale(&BigInt::from(2))
        );
        let spec = ProductSpec::new(vec![], vec![PochFactor::inf(1, 0, 3)]);
        assert!(matches!(
            expand_product_spec(&spec, 10),
            Err(Error::NotAUnit { .. })
        ));
        let half = ProductSpec::new(vec![], vec![PochFactor::inf(-1, 0, 3)]);
        assert!(matches!(
            expand_product_spec(&half, 10),
            Err(Error::InexactDivision { .. })
        ));
        let ratio = ProductSpec::new(
            vec![PochFactor::inf(-1, 0, 2)],
            vec![PochFactor::inf(-1, 0, 2)],
        );
        assert_eq!(expand_product_spec(&ratio, 10).unwrap(), QSeries::one(10));
    }

    #[test]
    fn spec_json() {
        let spec = ProductSpec::new(
            vec![PochFactor::inf(-1, 3, 6), PochFactor::fin(1, 6, 6, 4)],
            vec![PochFactor::inf(1, 2, 6)],
        )
        .with_prefactor(-3, 3);
        let text = serde_json::to_string(&spec).unwrap();
        assert!(
            text.contains(r#""n":"inf""#)
                && text.contains(r#""n":4"#)
                && text.contains(r#""c":"-3""#)
        );
        let back: ProductSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn rank_difference_product_constant_and_valuation() {
        let r01_1 = ProductSpec::new(
            vec![PochFactor::inf(-1, 3, 6), PochFactor::inf(1, 6, 6)],
            vec![PochFactor::inf(1, 2, 6), PochFactor::inf(1, 4, 6)],
        );
        assert_eq!(
            expand_product_spec(&r01_1, 10).unwrap().coeff(0).unwrap(),
            BigInt::one()
        );
        let r12_2 = ProductSpec::new(
            vec![
                PochFactor::inf(1, 2, 20),
                PochFactor::inf(1, 18, 20),
                PochFactor::inf(1, 5, 5),
                PochFactor::inf(-1, 10, 10),
            ],
            vec![PochFactor::inf(1, 1, 5), PochFactor::inf(1, 4, 5)],
        )
        .with_prefactor(1, 1);
        assert_eq!(
            expand_product_spec(&r12_2, 30).unwrap().valuation(),
            Some(1)
        );
    }
}
