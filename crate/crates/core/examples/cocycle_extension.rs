//! Cochains over small groups, central extensions and the cocycle of a section.

use grho::cocycle::{
    classify, cochain_table, delta, multiplicative_cochain, random_normalized_cocycle, Cochain, ExtensionGroup,
    GroupOracle, IntegerRange, TableGroup,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q8 = TableGroup::quaternion();

    let c = Cochain::random(1, q8.order(), &mut rng);
    println!("δδ vanishes on a random 1-cochain of {}: {}", q8.name(), delta(&delta(&c, &q8)?, &q8)?.is_zero());

    let omega = random_normalized_cocycle(&q8, &mut rng);
    let flags = classify(&omega, &q8)?;
    println!("random cocycle: cocycle {}, normalized {}, homogeneous {}", flags.cocycle, flags.normalized, flags.homogeneous);

    let ext = ExtensionGroup::new(&q8, omega.clone())?;
    let sigma = ext.canonical_section();
    let x = ext.mul(&sigma[1], &sigma[2])?;
    println!("σ(1)σ(2) = ({}, {})", x.scalar, x.g);
    println!("section recovers ω: {}", ext.section_to_cocycle(&sigma)? == omega);

    let z = IntegerRange { radius: 3 };
    let w = multiplicative_cochain(&z);
    let f = classify(&w, &z)?;
    println!("ω(m, n) = mn on -3..3: homogeneity fails at {:?}, {} triples leave the range", f.homogeneity_witness, f.skipped_triples);
    for (k, v) in cochain_table(&w, &z).into_iter().take(3) {
        println!("  ω({k}) = {v}");
    }
    Ok(())
}
