//! Cellular decomposition of a pair of elements into commuting components, and the
//! embedding that rebuilds an element from its coordinates.

use grho::element::Grho;
use grho::plmap::PlHomeo;
use grho::structure::{cellular_decompose, phi_embed};
use grho::witness::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grho::with_defaults();
    let f = g.lambda_hom(&fixtures::bump_left())?;
    let w = g.labelling().context_unit(0, 2);
    let h = g.special(&w, 2, &fixtures::bump_high())?;

    let d = cellular_decompose(&g, &f, &h, 6)?;
    let r = d.report(&g, &f, &h)?;
    println!(
        "anchor radius {}, {} atoms in the window, {} classes, nontrivial {:?}",
        r.anchor_radius,
        r.atoms_in_window,
        r.classes.len(),
        r.nontrivial_classes
    );
    for c in &r.classes {
        println!("  class {} of length {} seen {} times", c.word, c.length, c.count);
    }
    println!("recomposition: f {}, h {}", r.recomposition_f, r.recomposition_g);

    let back = phi_embed(&g, &d.cells, &d.f_coords)?;
    println!("phi(f coordinates) == f: {}", g.equals(&back, &f)?);

    let trivial: Vec<PlHomeo> = d.cells.classes.iter().map(|_| PlHomeo::unit_identity()).collect();
    println!("phi(identity tuple) is trivial: {}", phi_embed(&g, &d.cells, &trivial)?.is_identity());
    Ok(())
}
