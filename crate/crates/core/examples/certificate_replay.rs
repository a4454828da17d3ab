//! Replaying a certificate, and watching it fail once a fact is tampered with.

use grho::certificate::{first_citation, replay, rehash, FactKind};
use grho::element::Grho;
use grho::witness::{fixtures, run_pipeline};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grho::with_defaults();
    let (t, cfg) = fixtures::triple_a1(&g)?;
    let out = run_pipeline(&g, &t, &cfg)?;
    let ev = out.bundle.evidence();

    let report = replay(&g, &out.certificate, &ev)?;
    for line in &report.trace {
        println!("{line}");
    }

    // a fact whose point is not fixed, with an honest hash
    let mut bad = out.certificate.clone();
    let id = bad.facts.iter().position(|f| matches!(f.kind, FactKind::FixpointSubgroup { .. })).unwrap();
    if let FactKind::FixpointSubgroup { point, .. } = &mut bad.facts[id].kind {
        *point = "5/16".into();
    }
    rehash(&mut bad, id, &ev)?;
    println!("first use of fact {id} is step {}", first_citation(&bad, id));
    match replay(&g, &bad, &ev) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
