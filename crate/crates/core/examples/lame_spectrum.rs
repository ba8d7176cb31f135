//! Band edges of the j = 2 Lamé potential, shifted so the ground edge is 0,
//! compared with their closed forms.
//!
//! Run with `cargo run --example lame_spectrum [m]`.

use bandedge::{qhj, Family, PotentialSpec};

fn main() -> bandedge::Result<()> {
    let m: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("m must be a number"))
        .unwrap_or(0.5);
    let spec = PotentialSpec::new(Family::Lame, 2, m)?.with_susy_offset();
    let spectrum = qhj::full_spectrum(&spec)?;

    let delta = (1.0 - m + m * m).sqrt();
    let mut closed = [
        0.0,
        2.0 * delta - m - 1.0,
        2.0 * delta + 2.0 * m - 1.0,
        2.0 * delta - m + 2.0,
        4.0 * delta,
    ];
    closed.sort_by(f64::total_cmp);

    println!("Lamé j = 2, m = {m}, offset = {:.10}", spec.offset);
    println!(
        "{:>3} {:>4} {:>16} {:>16} {:>9}  form",
        "#", "set", "E", "closed form", "|ΔE|"
    );
    for (i, (sol, exact)) in spectrum.solutions.iter().zip(closed).enumerate() {
        println!(
            "{i:>3} {:>4} {:>16.12} {:>16.12} {:>9.1e}  {}",
            sol.family.set_id,
            sol.energy,
            exact,
            (sol.energy - exact).abs(),
            bandedge::cli::wavefunction_form(&sol.family),
        );
    }
    Ok(())
}
