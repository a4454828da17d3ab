//! Lambda-images and special elements built from maps of the unit interval.

use grho::dyadic::Dyadic;
use grho::element::Grho;
use grho::plmap::PlHomeo;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grho::with_defaults();
    // supported in (1/4, 1/2), slopes 2 and 1/2
    let f = PlHomeo::from_strs(&[("0", "0"), ("1/4", "1/4"), ("5/16", "3/8"), ("3/8", "7/16"), ("1/2", "1/2"), ("1", "1")]);

    let lam = g.lambda_hom(&f)?;
    println!("lambda(f) moves units {:?}", g.moved_units(&lam, 6)?);

    let w = g.labelling().context_unit(0, 2);
    let s = g.special(&w, 2, &f)?;
    println!("special element for context {w} moves units {:?}", g.moved_units(&s, 20)?);

    let x = Dyadic::frac(5, 4);
    println!("at 5/16: lambda {} special {}", g.evaluate(&lam, &x)?, g.evaluate(&s, &x)?);
    println!("special fixes a neighbourhood of 0: {}", g.fixes_neighbourhood_of_integer(&s, 0)?);
    Ok(())
}
