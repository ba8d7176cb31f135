//! The associated Lamé potential: j = 1 closed forms and the j → -j-1
//! reflection, which must leave the spectrum unchanged.
//!
//! Run with `cargo run --example associated_lame`.

use bandedge::{qhj, Family, PotentialSpec};

fn main() -> bandedge::Result<()> {
    let m = 0.5;
    let spec = PotentialSpec::new(Family::AssociatedLame, 1, m)?.with_susy_offset();
    let spectrum = qhj::full_spectrum(&spec)?;
    let root = (1.0 - m).sqrt();
    let closed = [0.0, 4.0 * root, 2.0 - m + 2.0 * root];

    println!("associated Lamé j = 1, m = {m}");
    for (sol, exact) in spectrum.solutions.iter().zip(closed) {
        println!(
            "  set {}  E = {:.12}  closed form {:.12}  P = {:?}",
            sol.family.set_id, sol.energy, exact, sol.poly.coeffs
        );
    }

    println!("\nreflection j → -j-1");
    for j in 1..=4 {
        let spec = PotentialSpec::new(Family::AssociatedLame, j, 0.7)?;
        let direct = qhj::full_spectrum(&spec)?.energies();
        let reflected = qhj::full_spectrum(&spec.reflected())?.energies();
        let diff = direct
            .iter()
            .zip(&reflected)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("  j = {j}: {} edges, max |ΔE| = {diff:.1e}", direct.len());
    }
    Ok(())
}
