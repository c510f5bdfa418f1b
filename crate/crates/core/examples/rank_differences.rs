//! Rank generating functions and their dissections against brute force.

use m2rank::identities::{analytic_rank_diff, multiplier, multiplier_dissection, rank_gf};
use m2rank::partitions::brute_rank_diff;
use m2rank::products::expand_product_spec;

fn main() -> m2rank::Result<()> {
    println!("rank = 0 mod 3: {}", rank_gf(0, 3, 20)?);
    for (s, t, l) in [(0, 1, 3), (1, 2, 5), (0, 2, 5)] {
        for d in 0..l as u32 {
            let analytic = analytic_rank_diff(s, t, l, d, 8)?;
            let brute = brute_rank_diff(s as u32, t as u32, l as u32, d, 7 * l as u32 + d);
            let agree = analytic.truncate(8) == brute;
            println!("R{s}{t}({d}) mod {l}: {analytic}  brute force agrees: {agree}");
        }
    }

    let m = multiplier(60)?;
    let mut sum = m2rank::QSeries::zero(60);
    for spec in multiplier_dissection(5)? {
        sum = sum.add(&expand_product_spec(&spec, 60)?);
    }
    println!("multiplier = {}", m.truncate(12));
    println!("5-dissection reproduces it: {}", sum == m);
    Ok(())
}
