//! Brute-force side: partitions without repeated odd parts, 2-modular
//! diagrams and M2-rank tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::QSeries;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Any partition; parts are sorted into decreasing order and zeros dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// A partition whose odd parts are distinct, or `InvalidPartition`.
    pub fn restricted(parts: Vec<u32>) -> Result<Self> {
        let p = Self::new(parts);
        if !p.has_distinct_odd_parts() {
            return Err(Error::InvalidPartition(format!("{p} repeats an odd part")));
        }
        Ok(p)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn has_distinct_odd_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1] || w[0] % 2 == 0)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// `ceil(largest / 2)` minus the number of parts.
pub fn m2_rank(p: &Partition) -> i64 {
    let largest = p.parts.first().copied().unwrap_or(0) as i64;
    (largest + 1) / 2 - p.parts.len() as i64
}

/// One row of a 2-modular diagram: `twos` cells holding 2, then maybe a 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub twos: u32,
    pub trailing_one: bool,
}

impl Row {
    pub fn total(&self) -> u32 {
        2 * self.twos + self.trailing_one as u32
    }

    fn width(&self) -> u32 {
        self.twos + self.trailing_one as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoModularDiagram {
    pub rows: Vec<Row>,
}

impl TwoModularDiagram {
    pub fn columns(&self) -> u32 {
        self.rows.first().map_or(0, Row::width)
    }

    /// Checks the diagram rules: rows weakly decrease, no 2 sits directly
    /// below a 1, and a 1 is always the last entry of its column.
    pub fn validate(&self) -> Result<()> {
        for (r, w) in self.rows.windows(2).enumerate() {
            let (upper, lower) = (w[0], w[1]);
            if lower.total() > upper.total() {
                return Err(Error::InvalidPartition(format!(
                    "row {} is longer than row {r}",
                    r + 1
                )));
            }
            if upper.trailing_one && lower.twos > upper.twos {
                return Err(Error::InvalidPartition(format!(
                    "a 2 sits below the 1 ending row {r}"
                )));
            }
            if upper.trailing_one && lower.trailing_one && lower.twos == upper.twos {
                return Err(Error::InvalidPartition(format!(
                    "the 1 ending row {r} is not last in its column"
                )));
            }
        }
        Ok(())
    }

    /// Columns minus rows.
    pub fn rank(&self) -> i64 {
        self.columns() as i64 - self.rows.len() as i64
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let mut cells: Vec<&str> = vec!["2"; row.twos as usize];
            if row.trailing_one {
                cells.push("1");
            }
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

pub fn to_2modular(p: &Partition) -> Result<TwoModularDiagram> {
    if !p.has_distinct_odd_parts() {
        return Err(Error::InvalidPartition(format!("{p} repeats an odd part")));
    }
    let rows = p
        .parts
        .iter()
        .map(|&x| Row {
            twos: x / 2,
            trailing_one: x % 2 == 1,
        })
        .collect();
    let d = TwoModularDiagram { rows };
    d.validate()?;
    Ok(d)
}

pub fn rank_via_diagram(d: &TwoModularDiagram) -> i64 {
    d.rank()
}

/// Visits every partition of `n` with distinct odd parts, largest parts
/// first, in decreasing lexicographic order.
pub fn for_each(n: u32, mut f: impl FnMut(&[u32])) {
    fn go(rest: u32, max: u32, odd_cap: u32, stack: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if rest == 0 {
            f(stack);
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            let odd = p % 2 == 1;
            if odd && p > odd_cap {
                continue;
            }
            stack.push(p);
            // Later odd parts must be strictly smaller than this one.
            let cap = if odd { p - 1 } else { odd_cap };
            go(rest - p, p, cap, stack, f);
            stack.pop();
        }
    }
    go(n, n, n, &mut Vec::new(), &mut f);
}

pub fn enumerate(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each(n, |parts| {
        out.push(Partition {
            parts: parts.to_vec(),
        })
    });
    out
}

/// `N2(m, n)` for `0 <= n <= nmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankDistribution {
    pub counts: Vec<BTreeMap<i64, u64>>,
}

impl RankDistribution {
    pub fn nmax(&self) -> u32 {
        self.counts.len() as u32 - 1
    }

    pub fn n2(&self, m: i64, n: u32) -> u64 {
        self.counts[n as usize].get(&m).copied().unwrap_or(0)
    }

    pub fn total(&self, n: u32) -> u64 {
        self.counts[n as usize].values().sum()
    }

    /// `sum_n N2(m, n) q^n`.
    pub fn series(&self, m: i64) -> QSeries {
        let coeffs = (0..=self.nmax())
            .map(|n| BigInt::from(self.n2(m, n)))
            .collect();
        QSeries::from_coeffs(0, coeffs)
    }
}

pub fn rank_distribution(nmax: u32) -> RankDistribution {
    let counts = (0..=nmax)
        .into_par_iter()
        .map(|n| {
            let mut by_rank = BTreeMap::new();
            for_each(n, |parts| {
                let largest = parts.first().copied().unwrap_or(0) as i64;
                let rank = (largest + 1) / 2 - parts.len() as i64;
                *by_rank.entry(rank).or_insert(0u64) += 1;
            });
            by_rank
        })
        .collect();
    RankDistribution { counts }
}

/// `N2(s, l, n)`: ranks congruent to `s` mod `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueTable {
    pub l: u32,
    /// `counts[n][s]`.
    pub counts: Vec<Vec<u64>>,
}

impl ResidueTable {
    pub fn from_distribution(dist: &RankDistribution, l: u32) -> Self {
        let counts = dist
            .counts
            .iter()
            .map(|by_rank| {
                let mut row = vec![0u64; l as usize];
                for (&m, &c) in by_rank {
                    row[m.rem_euclid(l as i64) as usize] += c;
                }
                row
            })
            .collect();
        ResidueTable { l, counts }
    }

    pub fn nmax(&self) -> u32 {
        self.counts.len() as u32 - 1
    }

    pub fn n2(&self, s: u32, n: u32) -> u64 {
        self.counts[n as usize][s as usize]
    }

    /// `sum_n N2(s, l, n) q^n`.
    pub fn series(&self, s: u32) -> QSeries {
        QSeries::from_coeffs(
            0,
            self.counts
                .iter()
                .map(|row| BigInt::from(row[s as usize]))
                .collect(),
        )
    }

    /// Lines `n<TAB>s<TAB>count`, with a header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\ts\tcount\n");
        for (n, row) in self.counts.iter().enumerate() {
            for (s, c) in row.iter().enumerate() {
                let _ = writeln!(out, "{n}\t{s}\t{c}");
            }
        }
        out
    }
}

pub fn residue_counts(l: u32, nmax: u32) -> ResidueTable {
    ResidueTable::from_distribution(&rank_distribution(nmax), l)
}

/// `sum_n (N2(s,l,ln+d) - N2(t,l,ln+d)) q^n` for `ln + d <= nmax`.
pub fn brute_rank_diff(s: u32, t: u32, l: u32, d: u32, nmax: u32) -> QSeries {
    let table = residue_counts(l, nmax);
    brute_rank_diff_from(&table, s, t, d)
}

pub fn brute_rank_diff_from(table: &ResidueTable, s: u32, t: u32, d: u32) -> QSeries {
    let l = table.l;
    let coeffs = (0..)
        .map(|n| l * n + d)
        .take_while(|&w| w <= table.nmax())
        .map(|w| BigInt::from(table.n2(s, w)) - BigInt::from(table.n2(t, w)))
        .collect();
    QSeries::from_coeffs(0, coeffs)
}
