//! Lambert sums Sigma(a, b), S2(b) and the g function.

use m2rank::lambert::{g_of, s2, sigma_ab, sigma_ab_y};

fn main() -> m2rank::Result<()> {
    let l = 5;
    println!("Sigma(1,0) in y  = {}", sigma_ab_y(1, 0, l)?.expand(20)?);
    println!("Sigma(1,0) in q  = {}", sigma_ab(1, 0, l, 30)?);
    println!(
        "S2(1) + S2(9)    = {}",
        s2(1, l, 60)?.add(&s2(2 * l - 1, l, 60)?)
    );
    for a in 1..l {
        println!("g({a}) = {}", g_of(a, l, 40)?);
    }
    println!(
        "g(1) + g(4)      = {}",
        g_of(1, l, 80)?.add(&g_of(4, l, 80)?)
    );
    println!(
        "g(1) - g(6)      = {}",
        g_of(1, l, 80)?.sub(&g_of(6, l, 80)?)
    );
    println!("Sigma(5,0): {}", sigma_ab(5, 0, l, 10).unwrap_err());
    Ok(())
}
