//! Truncated series arithmetic: windows, exact division, dissection.

use m2rank::QSeries;

fn main() -> m2rank::Result<()> {
    let one_minus_q = QSeries::from_i64s(0, &[1, -1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let geometric = QSeries::one(10).div(&one_minus_q)?;
    println!("1/(1-q)         = {geometric}");

    // A Laurent factor costs precision on the other operand.
    let laurent = QSeries::from_i64s(-2, &[1, 3]);
    println!("q^-2 (1+3q) * 1/(1-q) = {}", laurent.mul(&geometric));

    // Exact division by a non-unit leading coefficient.
    let two_plus = QSeries::from_i64s(0, &[2, 2, 0, 0]);
    println!(
        "(2+2q)/2        = {}",
        two_plus.div(&QSeries::from_i64s(0, &[2, 0, 0, 0]))?
    );
    println!(
        "1/2             = {:?}",
        QSeries::one(4)
            .div(&QSeries::from_i64s(0, &[2, 0, 0, 0]))
            .err()
    );

    let squares = QSeries::from_i64s(0, &(0..30).map(|n| n * n).collect::<Vec<_>>());
    for d in 0..3 {
        println!("n^2 at n = 3k+{d}: {}", squares.dissect(3, d)?);
    }
    println!(
        "json: {}",
        serde_json::to_string(&one_minus_q.truncate(3)).unwrap()
    );
    Ok(())
}
