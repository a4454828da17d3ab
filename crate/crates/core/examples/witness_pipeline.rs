//! The witness pipeline on the recorded fixtures: intervals, conjugator, parameters,
//! correctors, the claim checks and the certificate.

use std::collections::BTreeMap;

use grho::element::Grho;
use grho::witness::{fixtures, run_pipeline};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grho::with_defaults();
    for (name, triple, cfg) in fixtures::all(&g)? {
        let out = run_pipeline(&g, &triple, &cfg)?;
        let b = &out.bundle;
        println!("{name}: J1 = {}, J4 = {}, h = {:?}", b.j[0], b.j[3], b.h_word.as_deref().unwrap_or("id"));
        println!("    k = {}, m = {}, l = {}, W = {}", b.k, b.m, b.l, b.w);
        let mut tally: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for c in &out.claims.checks {
            let e = tally.entry(&c.claim).or_default();
            e.0 += c.ok as usize;
            e.1 += 1;
        }
        for (claim, (ok, all)) in tally {
            println!("    {claim:<14} {ok}/{all} checks hold");
        }
        println!("    certificate: {} tokens, {} facts, {} steps", out.certificate.tokens.len(), out.certificate.facts.len(), out.replay.steps);
    }
    Ok(())
}
