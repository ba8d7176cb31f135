//! The matrix pencil behind each residue set, and the residue data it is
//! built from.
//!
//! Run with `cargo run --example matrix_pencil`.

use bandedge::qhj::{self, FixedPole};
use bandedge::{Family, PotentialSpec};

fn main() -> bandedge::Result<()> {
    let spec = PotentialSpec::new(Family::Lame, 2, 0.5)?;
    for pole in [FixedPole::One, FixedPole::InverseRootM] {
        let roots = qhj::residue_quadratic_check(&spec, pole)?;
        println!("residues at {pole:?}: {:.12} {:.12}", roots[0], roots[1]);
    }
    let [hi, lo] = qhj::infinity_exponents(&spec)?;
    println!("exponents at infinity: {hi:.10} {lo:.10}\n");

    for family in qhj::enumerate_families(&spec) {
        let pencil = qhj::build_pencil(&family, &spec)?;
        println!(
            "set {} (b1 = {}, d1 = {}, n = {}): powers {:?}, pole residual {:.1e}",
            family.set_id, family.b1, family.d1, family.n, pencil.powers, pencil.pole_residual
        );
        print!("A0 = {:.6}", pencil.a0);
        println!("E (no offset) = {:?}\n", qhj::band_edge_energies(&pencil)?);
    }
    Ok(())
}
