//! Band-edge eigenfunctions: zero census and a coarse sample of each ψ.
//!
//! Run with `cargo run --example eigenfunctions`.

use bandedge::{qhj, Family, PotentialSpec};

fn main() -> bandedge::Result<()> {
    let spec = PotentialSpec::new(Family::Lame, 3, 0.6)?;
    let spectrum = qhj::full_spectrum(&spec)?;
    let period = spec.fundamental_period();

    println!("Lamé j = 3, m = 0.6, period {period:.6}");
    for sol in &spectrum.solutions {
        let samples: Vec<String> = (0..8)
            .map(|i| qhj::evaluate_wavefunction(sol, period * i as f64 / 8.0))
            .map(|v| v.map(|psi| format!("{psi:+.3}")))
            .collect::<bandedge::Result<_>>()?;
        let roots = sol.poly.roots();
        println!(
            "E = {:>9.5}  {:<18} zeros {} (real in period {}), P roots {}  ψ: {}",
            sol.energy,
            bandedge::cli::wavefunction_form(&sol.family),
            sol.total_zeros,
            sol.real_zeros_in_period,
            roots.len(),
            samples.join(" ")
        );
    }
    Ok(())
}
