//! Words in the twelve generators, evaluated on dyadics, multiplied and inverted.

use grho::dyadic::Dyadic;
use grho::element::{format_gen_word, parse_gen_word, Grho};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grho::with_defaults();
    let word = parse_gen_word("zeta1 chi2 zeta3^-1")?;
    let e = g.word_to_element(&word)?;
    println!("{} has radius {}", format_gen_word(&word), e.radius());

    for x in ["0", "3/8", "-5/4", "17/16"] {
        let x: Dyadic = x.parse()?;
        println!("  {x} -> {}", g.evaluate(&e, &x)?);
    }

    // products act on the right: x (a b) = (x a) b
    let a = g.parse_word("chi1")?;
    let b = g.parse_word("zeta2")?;
    let ab = g.then_compose(&a, &b)?;
    let ba = g.then_compose(&b, &a)?;
    println!("chi1 zeta2 == zeta2 chi1: {}", g.equals(&ab, &ba)?);

    let inv = g.invert(&e)?;
    println!("e e^-1 is the identity: {}", g.then_compose(&e, &inv)?.is_identity());

    let report = g.membership_check(&e)?;
    println!("membership ok: {}, witnessing radius {}", report.ok, report.witnessing_radius);
    Ok(())
}
