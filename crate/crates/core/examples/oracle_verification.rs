//! Check analytic band edges against the plane-wave Hill-matrix oracle and
//! read off each edge's Bloch phase.
//!
//! Run with `cargo run --release --example oracle_verification`.

use bandedge::{oracle, qhj, Family, PotentialSpec};

fn main() -> bandedge::Result<()> {
    let cases = [
        (Family::Lame, 1, 0.3),
        (Family::Lame, 2, 0.5),
        (Family::Lame, 4, 0.7),
        (Family::AssociatedLame, 1, 0.5),
        (Family::AssociatedLame, 3, 0.9),
    ];
    for (family, j, m) in cases {
        let spec = PotentialSpec::new(family, j, m)?;
        let mut spectrum = qhj::full_spectrum(&spec)?;
        let report = oracle::verify(&mut spectrum, oracle::DEFAULT_MODES, 1e-8)?;
        let phases: String = report.phases().iter().map(|p| p.short()).collect();
        println!(
            "{family:>10} j={j} m={m}: pass={} max|ΔE|={:.1e} phases={phases}",
            report.pass, report.max_delta
        );
    }

    // Above the 2j+1 analytic edges the gaps are closed.
    let spec = PotentialSpec::new(Family::Lame, 2, 0.5)?;
    let edges = oracle::band_edges(&spec, oracle::DEFAULT_MODES)?;
    println!(
        "\nLamé j=2 m=0.5 edges 5, 6: {:.12} {:.12}",
        edges[5].energy, edges[6].energy
    );
    Ok(())
}
