//! q-Pochhammer products, P(z, q) and the triple product.

use m2rank::products::{
    big_p, expand_product_spec, poch_inf, theta_sum, triple_product_spec, PochFactor, ProductSpec,
};

fn main() -> m2rank::Result<()> {
    println!("(q;q)_inf        = {}", poch_inf(1, 1, 1, 30)?);
    println!("(-q;q^2)_inf     = {}", poch_inf(-1, 1, 2, 20)?);
    // A negative start exponent gives a Laurent series.
    println!("(q^-1;q^2)_inf   = {}", poch_inf(1, -1, 2, 8)?);
    println!("P(-1, q^2)       = {}", big_p(-1, 0, 2, 12)?);

    let theta = theta_sum(-1, 1, 2, 40)?;
    let product = expand_product_spec(&triple_product_spec(-1, 1, 2), 40)?;
    println!("sum (-1)^n q^(2n^2+n) = {theta}");
    println!("triple product agrees: {}", theta == product);

    // Distinct-odd-parts partitions: (-q;q^2)/(q^2;q^2).
    let spec = ProductSpec::new(
        vec![PochFactor::inf(-1, 1, 2)],
        vec![PochFactor::inf(1, 2, 2)],
    );
    println!("{}", serde_json::to_string(&spec).unwrap());
    println!("= {}", expand_product_spec(&spec, 15)?);
    Ok(())
}
