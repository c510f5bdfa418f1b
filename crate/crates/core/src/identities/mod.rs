//! Rank generating functions, the multiplier and its dissections, the
//! assembly of `S2(3l - 4m)`, and the identity catalog.

mod catalog;
mod verify;

pub use catalog::{builtin_catalog, errata, load_catalog, lookup, Erratum, IdentitySpec};
pub use verify::{verify, verify_all, verify_spec, SuiteReport, VerificationReport};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambert::{g_of, g_ratio, sigma_ab, LambertSum};
use crate::partitions::ResidueTable;
use crate::products::{big_p_factors, expand_product_spec, PochFactor, ProductSpec};
use crate::series::{with_precision, BiSeries, QSeries};

/// Whether the empty partition (weight 0, rank 0) is counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmptyPartition {
    #[default]
    Counted,
    Omitted,
}

impl EmptyPartition {
    fn constant(self, applies: bool) -> i64 {
        (applies && self == EmptyPartition::Counted) as i64
    }
}

fn check_residue(s: i64, l: i64) -> Result<()> {
    if l < 2 || !(0..l).contains(&s) {
        return Err(Error::InvalidArgument(format!(
            "need l >= 2 and 0 <= s < l, got s = {s}, l = {l}"
        )));
    }
    Ok(())
}

/// `(-q; q^2)_inf / (q^2; q^2)_inf`, the generating function of partitions
/// without repeated odd parts.
pub fn distinct_odd_gf(prec: i64) -> Result<QSeries> {
    expand_product_spec(
        &ProductSpec::new(
            vec![PochFactor::inf(-1, 1, 2)],
            vec![PochFactor::inf(1, 2, 2)],
        ),
        prec,
    )
}

/// Generating function of partitions without repeated odd parts whose M2-rank
/// is congruent to `s` mod `l`, empty partition included.
pub fn rank_gf(s: i64, l: i64, prec: i64) -> Result<QSeries> {
    rank_gf_with(s, l, prec, EmptyPartition::Counted)
}

pub fn rank_gf_with(s: i64, l: i64, prec: i64, empty: EmptyPartition) -> Result<QSeries> {
    check_residue(s, l)?;
    let sum = |b: i64| {
        LambertSum {
            a2: 2,
            a1: 1 + 2 * b,
            a0: 0,
            d1: 2 * l,
            d0: 0,
            alternating: true,
            omit_n0: true,
        }
        .expand(prec)
    };
    let inner = sum(s)?.add(&sum(l - s)?);
    let c = empty.constant(s == 0);
    Ok(distinct_odd_gf(prec)?
        .mul(&inner)
        .add(&QSeries::monomial(c.into(), 0, prec)))
}

/// Generating function of partitions without repeated odd parts with M2-rank
/// exactly `m`.
pub fn rank_m_gf(m: i64, prec: i64) -> Result<QSeries> {
    rank_m_gf_with(m, prec, EmptyPartition::Counted)
}

pub fn rank_m_gf_with(m: i64, prec: i64, empty: EmptyPartition) -> Result<QSeries> {
    let m = m.abs();
    let mut coeffs = vec![BigInt::from(0); prec.max(0) as usize];
    for n in 1.. {
        let lo = 2 * n * n - n + 2 * m * n;
        if lo >= prec {
            break;
        }
        let sign: i64 = if n % 2 == 1 { 1 } else { -1 };
        coeffs[lo as usize] += sign;
        let hi = lo + 2 * n;
        if hi < prec {
            coeffs[hi as usize] -= sign;
        }
    }
    let sum = QSeries::from_coeffs(0, coeffs);
    let c = empty.constant(m == 0);
    Ok(distinct_odd_gf(prec)?
        .mul(&sum)
        .add(&QSeries::monomial(c.into(), 0, prec)))
}

/// The two-variable generating function
/// `sum_n q^{n^2} (-q; q^2)_n / ((z q^2; q^2)_n (q^2 / z; q^2)_n)`, where the
/// coefficient of `z^m q^n` counts partitions of `n` with M2-rank `m`.
pub fn rank_bivariate_gf(prec: i64) -> BiSeries {
    let one = BigInt::from(1);
    let mut acc = BiSeries::one(prec);
    let mut term = BiSeries::one(prec);
    for n in 1i64.. {
        if n * n >= prec {
            break;
        }
        term = term
            .mul_binomial(&-&one, 0, 2 * n - 1)
            .div_binomial(&one, 1, 2 * n)
            .div_binomial(&one, -1, 2 * n);
        acc = acc.add(&term.shift(n * n));
    }
    acc
}

/// `dissect(rank_gf(s) - rank_gf(t), l, d)`, the rank difference series in
/// the variable `q` standing for `q^l`, known below `q^prec`.
pub fn analytic_rank_diff(s: i64, t: i64, l: i64, d: u32, prec: i64) -> Result<QSeries> {
    analytic_rank_diff_with(s, t, l, d, prec, EmptyPartition::Counted)
}

pub fn analytic_rank_diff_with(
    s: i64,
    t: i64,
    l: i64,
    d: u32,
    prec: i64,
    empty: EmptyPartition,
) -> Result<QSeries> {
    check_residue(t, l)?;
    if d as i64 >= l {
        return Err(Error::InvalidArgument(format!(
            "residue {d} out of range for l = {l}"
        )));
    }
    let work = l * prec + d as i64;
    let diff = rank_gf_with(s, l, work, empty)?.sub(&rank_gf_with(t, l, work, empty)?);
    diff.dissect(l as u32, d)
}

/// `N2(s, l, n)` for all `s` and `n <= nmax`, read off [`rank_gf`].
pub fn analytic_residue_table(l: u32, nmax: u32) -> Result<ResidueTable> {
    let prec = nmax as i64 + 1;
    let series = (0..l as i64)
        .map(|s| rank_gf(s, l as i64, prec))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = vec![vec![0u64; l as usize]; prec as usize];
    for (s, gf) in series.iter().enumerate() {
        for (n, row) in counts.iter_mut().enumerate() {
            let c = gf.coeff(n as i64)?;
            row[s] = c
                .to_u64()
                .ok_or_else(|| Error::InvalidArgument(format!("count {c} does not fit in u64")))?;
        }
    }
    Ok(ResidueTable { l, counts })
}

/// `(q^2; q^2)_inf / (-q; q^2)_inf`.
pub fn multiplier_spec() -> ProductSpec {
    ProductSpec::new(
        vec![PochFactor::inf(1, 2, 2)],
        vec![PochFactor::inf(-1, 1, 2)],
    )
}

pub fn multiplier(prec: i64) -> Result<QSeries> {
    expand_product_spec(&multiplier_spec(), prec)
}

fn prod(c: i64, j: i64, k: i64, args: &[(i32, i64)]) -> ProductSpec {
    ProductSpec::new(
        args.iter()
            .map(|&(s, a)| PochFactor::inf(s, a, k))
            .collect(),
        vec![],
    )
    .with_prefactor(c, j)
}

/// The multiplier as a sum of products, one per nonzero residue class of
/// exponents mod `l`, for `l` in {3, 5}.
pub fn multiplier_dissection(l: i64) -> Result<Vec<ProductSpec>> {
    match l {
        3 => Ok(vec![
            prod(
                1,
                0,
                18,
                &[(1, 3), (-1, 6), (-1, 9), (-1, 12), (1, 15), (1, 18)],
            ),
            prod(-1, 1, 36, &[(1, 9), (1, 27), (1, 36)]),
        ]),
        5 => Ok(vec![
            prod(
                1,
                0,
                50,
                &[(-1, 10), (1, 15), (-1, 25), (1, 35), (-1, 40), (1, 50)],
            ),
            prod(
                -1,
                1,
                50,
                &[(1, 5), (-1, 20), (-1, 25), (-1, 30), (1, 45), (1, 50)],
            ),
            prod(-1, 3, 100, &[(1, 25), (1, 75), (1, 100)]),
        ]),
        _ => Err(Error::InvalidArgument(format!(
            "no multiplier dissection stored for l = {l}"
        ))),
    }
}

/// Indices `1 <= a <= (l-1)/2` with `a` not congruent to `±m` mod `l`.
pub fn primed_indices(l: i64, m: i64) -> Vec<i64> {
    (1..=(l - 1) / 2)
        .filter(|a| (a - m).rem_euclid(l) != 0 && (a + m).rem_euclid(l) != 0)
        .collect()
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `2(a + m)(a - m + l)`, the extra `q`-power attached to index `a`.
fn cross_exp(l: i64, m: i64, a: i64) -> i64 {
    2 * (a + m) * (a - m + l)
}

/// The coefficient of `Sigma(m, 0)` in the decomposition of `S2(3l - 4m)`,
/// as a sum of product quotients.
pub fn bracket_terms(l: i64, m: i64) -> Vec<ProductSpec> {
    let ratio = |a: i64, c: i64, j: i64| {
        let mut spec = g_ratio(a, l);
        spec.prefactor = ProductSpec::default().with_prefactor(c, j).prefactor;
        spec
    };
    let mut out = vec![
        ProductSpec::default().with_prefactor(sign(m), l * m + 2 * m * (l - m)),
        ratio(m, 1, 2 * m * l),
    ];
    for a in primed_indices(l, m) {
        out.push(ratio(a, sign(m + a), l * (m - 3 * a) + cross_exp(l, m, a)));
    }
    out
}

/// Single-product form of [`bracket_terms`] where one is known.
pub fn bracket_closed_form(l: i64, m: i64) -> Option<ProductSpec> {
    let (c, j, k) = match (l, m) {
        (3, 2) => (-1, 9, 18),
        (5, 2) => (-1, 19, 50),
        (5, 1) => (1, 10, 50),
        _ => return None,
    };
    let spec = ProductSpec::new(
        vec![PochFactor::inf(1, 2, 2), PochFactor::inf(-1, k / 2, k)],
        vec![PochFactor::inf(-1, 1, 2), PochFactor::inf(1, k, k)],
    );
    Some(spec.with_prefactor(c, j))
}

/// The product attached to index `a` in the decomposition of `S2(3l - 4m)`,
/// including its sign and `q`-power.
pub fn final_product_term(l: i64, m: i64, a: i64) -> ProductSpec {
    let k = 2 * l * l;
    let p0 = PochFactor::inf(1, k, k);
    let num = [
        &big_p_factors(-1, l * (2 * m + l), k)[..],
        &big_p_factors(1, 4 * a * l, k),
        &big_p_factors(1, 2 * a * l, k),
        &[p0, p0],
    ]
    .concat();
    let den = [
        big_p_factors(1, l * (2 * m - 2 * a), k),
        big_p_factors(1, l * (2 * m + 2 * a), k),
        big_p_factors(1, 2 * m * l, k),
        big_p_factors(-1, l * (2 * a + l), k),
    ]
    .concat();
    ProductSpec::new(num, den).with_prefactor(sign(m + a), l * (m - 5 * a) + cross_exp(l, m, a))
}

fn sum_specs(specs: &[ProductSpec], prec: i64) -> Result<QSeries> {
    let mut acc = QSeries::zero(prec);
    for s in specs {
        acc = acc.add(&expand_product_spec(s, prec)?);
    }
    Ok(acc)
}

/// `-g(m) + sum_a (product term) + Sigma(m, 0) * (bracket)`, which equals
/// `S2(3l - 4m)`. Uses the closed bracket when available.
pub fn assemble_final(l: i64, m: i64, prec: i64) -> Result<QSeries> {
    if !matches!((l, m), (3, 2) | (5, 1) | (5, 2)) {
        return Err(Error::InvalidArgument(format!(
            "assembly is only set up for (l, m) in (3,2), (5,1), (5,2), got ({l}, {m})"
        )));
    }
    with_precision(prec, |w| {
        let terms: Vec<ProductSpec> = primed_indices(l, m)
            .into_iter()
            .map(|a| final_product_term(l, m, a))
            .collect();
        let bracket = match bracket_closed_form(l, m) {
            Some(spec) => expand_product_spec(&spec, w)?,
            None => sum_specs(&bracket_terms(l, m), w)?,
        };
        Ok(g_of(m, l, w)?
            .neg()
            .add(&sum_specs(&terms, w)?)
            .add(&sigma_ab(m, 0, l, w)?.mul(&bracket)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambert::s2;
    use crate::partitions::{brute_rank_diff, rank_distribution, residue_counts};

    #[test]
    fn rank_gf_matches_brute_force() {
        for l in [3u32, 5, 7] {
            let table = residue_counts(l, 30);
            for s in 0..l {
                let gf = rank_gf(s as i64, l as i64, 31).unwrap();
                assert_eq!(gf, table.series(s), "s = {s}, l = {l}");
            }
        }
        assert_eq!(
            rank_gf_with(0, 3, 10, EmptyPartition::Omitted)
                .unwrap()
                .coeff(0)
                .unwrap(),
            0.into()
        );
        assert!(rank_gf(3, 3, 10).is_err());
        assert_eq!(
            analytic_residue_table(5, 30).unwrap(),
            residue_counts(5, 30)
        );
    }

    #[test]
    fn rank_sums_and_single_ranks() {
        let total = (0..5).fold(QSeries::zero(60), |acc, s| {
            acc.add(&rank_gf(s, 5, 60).unwrap())
        });
        assert_eq!(total, distinct_odd_gf(60).unwrap());
        let dist = rank_distribution(25);
        for m in -8..=8 {
            assert_eq!(rank_m_gf(m, 26).unwrap(), dist.series(m), "m = {m}");
        }
    }

    #[test]
    fn bivariate_matches_brute_force() {
        let bi = rank_bivariate_gf(21);
        let dist = rank_distribution(20);
        // The largest M2-rank at weight 20 is that of (20) itself.
        assert_eq!(bi.z_range(), Some((-9, 9)));
        for m in -21..=21 {
            assert_eq!(bi.coeff_z(m), dist.series(m), "m = {m}");
        }
    }

    #[test]
    fn rank_differences() {
        assert!(analytic_rank_diff(1, 2, 5, 1, 40).unwrap().is_zero());
        assert!(analytic_rank_diff(0, 2, 5, 3, 40).unwrap().is_zero());
        let a = analytic_rank_diff(0, 1, 3, 2, 11).unwrap();
        assert_eq!(a, brute_rank_diff(0, 1, 3, 2, 32));
    }

    #[test]
    fn multiplier_dissections() {
        for l in [3, 5] {
            let sum = sum_specs(&multiplier_dissection(l).unwrap(), 300).unwrap();
            assert_eq!(sum, multiplier(300).unwrap());
        }
        assert_eq!(multiplier(5).unwrap().coeff(0).unwrap(), 1.into());
    }

    #[test]
    fn brackets_and_assembly() {
        for (l, m) in [(3, 2), (5, 1), (5, 2)] {
            let closed = expand_product_spec(&bracket_closed_form(l, m).unwrap(), 200).unwrap();
            let generic = sum_specs(&bracket_terms(l, m), 200).unwrap();
            assert_eq!(
                closed.equal_to_order(&generic, 199).unwrap(),
                None,
                "bracket ({l}, {m})"
            );
            let fin = assemble_final(l, m, 200).unwrap();
            assert_eq!(fin, s2(3 * l - 4 * m, l, 200).unwrap(), "final ({l}, {m})");
        }
    }
}
