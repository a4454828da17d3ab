//! Level words of the labelling, contexts around units, and the quasi-periodicity report.
//!
//! ```bash
//! cargo run -p grho --example labelling
//! ```

use grho::labelling::{verify_quasi_periodicity, QPLabelling};

fn main() {
    let rho = QPLabelling::new();
    for level in 1..4 {
        println!("level {level}: {}", rho.level_word(level));
    }
    println!("letters on [-8, 8): {}", rho.word_between(-16, 15));

    for n in [0, 1, -1, 5] {
        println!("radius-3 context of unit {n:>2}: {}", rho.context_unit(n, 3));
    }

    let occ = rho.occurring_contexts(2).expect("radius 2 saturates");
    println!("{} contexts of radius 2 occur, e.g.", occ.len());
    for (w, n) in occ.iter().take(4) {
        println!("  {w} first seen at unit {n}");
    }

    let r = verify_quasi_periodicity(&rho, 12, 5);
    println!(
        "window {} letters: inverse closed {}, gap(12) = {}, period below half: {:?}",
        r.window_len, r.inverse_closure, r.recurrence_gaps[&12], r.min_period
    );
}
