//! Partitions without repeated odd parts, their M2-ranks and 2-modular
//! diagrams.

use m2rank::partitions::{
    enumerate, m2_rank, rank_distribution, residue_counts, to_2modular, Partition,
};

fn main() -> m2rank::Result<()> {
    for p in enumerate(6) {
        println!("{p:<14} rank {:>2}", m2_rank(&p));
    }
    let p = Partition::restricted(vec![7, 4, 4, 3, 2])?;
    let d = to_2modular(&p)?;
    println!(
        "\n{p} as a 2-modular diagram, rank {}:\n{}",
        d.rank(),
        d.render()
    );
    println!("{:?}", Partition::restricted(vec![3, 3, 1]).unwrap_err());

    let dist = rank_distribution(12);
    println!("\nN2(m, 12): {:?}", dist.counts[12]);
    print!("\n{}", residue_counts(3, 4).to_tsv());
    Ok(())
}
