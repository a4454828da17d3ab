//! Fixed points of group elements, and a generator word that pushes one interval inside another.

use grho::dyadic::format_point;
use grho::element::{Grho, SearchConfig};
use grho::plmap::Interval;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grho::with_defaults();
    for w in ["zeta1", "chi2 zeta3", "zeta1 chi1 zeta2^-1 chi3"] {
        let e = g.parse_word(w)?;
        let p = g.find_fixed_point(&e, 64)?;
        let near = g.nearest_fixed_point(&e, &"5/2".parse()?, 64)?;
        println!("{w:<26} fixes {} (nearest to 5/2: {})", format_point(&p), format_point(&near));
    }

    let from = Interval::of("-1/4", "1/2");
    let into = Interval::of("0", "1");
    let h = g.proximal_search(&from, &into, &SearchConfig::default())?;
    let word = grho::element::format_gen_word(&h);
    let moved = (g.apply_word(&h, &from.lo)?, g.apply_word(&h, &from.hi)?);
    println!("{from} is carried into {into} by {word:?}: [{}, {}]", moved.0, moved.1);
    Ok(())
}
