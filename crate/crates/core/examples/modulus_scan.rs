//! Gap widths of the j = 2 Lamé potential as the modulus varies.
//!
//! Run with `cargo run --example modulus_scan`.

use bandedge::{qhj, Family, PotentialSpec};
use rayon::prelude::*;

fn main() -> bandedge::Result<()> {
    let moduli: Vec<f64> = (1..=9)
        .map(|i| i as f64 / 10.0)
        .chain([0.01, 0.99])
        .collect();
    let rows = moduli
        .par_iter()
        .map(|&m| {
            let spec = PotentialSpec::new(Family::Lame, 2, m)?;
            qhj::full_spectrum(&spec).map(|s| (m, s.energies()))
        })
        .collect::<bandedge::Result<Vec<_>>>()?;

    println!("{:>5} {:>12} {:>12}", "m", "gap 1-2", "gap 3-4");
    for (m, e) in rows {
        println!("{m:>5} {:>12.6e} {:>12.6e}", e[2] - e[1], e[4] - e[3]);
    }
    Ok(())
}
