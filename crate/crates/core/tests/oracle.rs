mod common;

use bandedge::oracle::{
    self, band_edges, bloch_eigenvalues, fourier_coefficients, hill_eigenvalues, hill_matrix,
    potential_fourier, OracleConfig,
};
use bandedge::qhj::full_spectrum;
use bandedge::{EdgePhase, Family, PotentialSpec};
use common::max_abs_diff;
use std::f64::consts::PI;

fn spec(family: Family, j: i64, m: f64) -> PotentialSpec {
    PotentialSpec::new(family, j, m).unwrap()
}

fn lowest(spec: &PotentialSpec, modes: usize, phase: EdgePhase) -> Vec<f64> {
    let cfg = OracleConfig::for_spec(spec, modes, phase).unwrap();
    bloch_eigenvalues(spec, &cfg).unwrap().eigenvalues
}

#[test]
fn constant_potential() {
    let series = fourier_coefficients(|_| Ok(1.25), 3.0, 16).unwrap();
    assert!((series.get(0).re - 1.25).abs() < 1e-14);
    assert!(series
        .iter()
        .filter(|(q, _)| *q != 0)
        .all(|(_, v)| v.norm() < 1e-14));
}

#[test]
fn free_particle() {
    let series = fourier_coefficients(|_| Ok(0.0), 2.0 * PI, 32).unwrap();
    let periodic = OracleConfig::new(16, EdgePhase::Periodic, 2.0 * PI).unwrap();
    let e = hill_eigenvalues(&series, &periodic).unwrap().eigenvalues;
    assert!(max_abs_diff(&e[..5], &[0.0, 1.0, 1.0, 4.0, 4.0]) < 1e-12);
    let anti = OracleConfig::new(16, EdgePhase::Antiperiodic, 2.0 * PI).unwrap();
    let e = hill_eigenvalues(&series, &anti).unwrap().eigenvalues;
    assert!(max_abs_diff(&e[..4], &[0.25, 0.25, 2.25, 2.25]) < 1e-12);
}

#[test]
fn mean_matches_dense_quadrature() {
    let s = spec(Family::Lame, 2, 0.5);
    let l = s.fundamental_period();
    let n = 100_000;
    let mean = (0..n)
        .map(|i| s.evaluate(i as f64 * l / n as f64).unwrap())
        .sum::<f64>()
        / n as f64;
    let series = potential_fourier(&s, l, 256).unwrap();
    assert!((series.get(0).re - mean).abs() < 1e-10);
}

#[test]
fn even_potentials_have_real_coefficients() {
    for s in [
        spec(Family::Lame, 3, 0.7),
        spec(Family::AssociatedLame, 2, 0.9),
    ] {
        let series = potential_fourier(&s, s.fundamental_period(), 256).unwrap();
        for (q, v) in series.iter() {
            assert!(v.im.abs() < 1e-12, "q = {q}");
            assert!((v - series.get(-q).conj()).norm() < 1e-12);
        }
    }
}

#[test]
fn hill_matrix_is_hermitian() {
    let s = spec(Family::AssociatedLame, 2, 0.6);
    for phase in [EdgePhase::Periodic, EdgePhase::Antiperiodic] {
        let cfg = OracleConfig::for_spec(&s, 32, phase).unwrap();
        let series = potential_fourier(&s, cfg.period, 64).unwrap();
        let h = hill_matrix(&series, &cfg);
        assert!((&h - h.adjoint()).iter().all(|z| z.norm() == 0.0));
    }
}

#[test]
fn config_validation() {
    assert!(OracleConfig::new(0, EdgePhase::Periodic, 1.0).is_err());
    assert!(OracleConfig::new(16, EdgePhase::Periodic, 0.0).is_err());
    assert!(OracleConfig::new(16, EdgePhase::Periodic, f64::NAN).is_err());
}

#[test]
fn lame_j1_edges() {
    let e = band_edges(&spec(Family::Lame, 1, 0.5), 64).unwrap();
    let energies: Vec<f64> = e.iter().take(3).map(|e| e.energy).collect();
    assert!(max_abs_diff(&energies, &[0.5, 1.0, 1.5]) < 1e-10);
}

#[test]
fn lame_j2_edges_and_closed_gap() {
    let s = spec(Family::Lame, 2, 0.5).with_susy_offset();
    let e = band_edges(&s, 128).unwrap();
    assert_eq!(e.len(), 7);
    let energies: Vec<f64> = e.iter().take(5).map(|e| e.energy).collect();
    assert!(max_abs_diff(&energies, &common::lame_j2_closed(0.5)) < 1e-8);
    assert!((e[6].energy - e[5].energy).abs() < 1e-6);
}

#[test]
fn associated_j1_edges_and_phases() {
    let s = spec(Family::AssociatedLame, 1, 0.5).with_susy_offset();
    let e = band_edges(&s, 128).unwrap();
    let energies: Vec<f64> = e.iter().take(3).map(|e| e.energy).collect();
    assert!(max_abs_diff(&energies, &[0.0, 2.828_427_1, 2.914_213_6]) < 1e-7);
    let phases: Vec<EdgePhase> = e.iter().take(3).map(|e| e.phase).collect();
    assert_eq!(
        phases,
        [
            EdgePhase::Periodic,
            EdgePhase::Antiperiodic,
            EdgePhase::Antiperiodic
        ]
    );
}

#[test]
fn convergence_in_modes() {
    // Converged to round-off by N = 32; the sequence is compared with a 1e-12 floor.
    for s in [
        spec(Family::Lame, 2, 0.5),
        spec(Family::Lame, 4, 0.9),
        spec(Family::AssociatedLame, 2, 0.7),
    ] {
        let k = s.edge_count();
        let at = |n| -> Vec<f64> {
            band_edges(&s, n)
                .unwrap()
                .iter()
                .take(k)
                .map(|e| e.energy)
                .collect()
        };
        let (e32, e64, e128, e256) = (at(32), at(64), at(128), at(256));
        let d = [
            max_abs_diff(&e32, &e64),
            max_abs_diff(&e64, &e128),
            max_abs_diff(&e128, &e256),
        ];
        assert!(d.iter().all(|&x| x < 1e-9), "{s:?}: {d:?}");
        assert!(
            d[1] <= d[0].max(1e-12) && d[2] <= d[1].max(1e-12),
            "{s:?}: {d:?}"
        );
    }
}

#[test]
fn variational_in_modes() {
    let s = spec(Family::AssociatedLame, 3, 0.8);
    for phase in [EdgePhase::Periodic, EdgePhase::Antiperiodic] {
        let mut previous: Option<Vec<f64>> = None;
        for n in [16, 32, 64, 128] {
            let e: Vec<f64> = lowest(&s, n, phase).into_iter().take(10).collect();
            if let Some(p) = &previous {
                assert!(e.iter().zip(p).all(|(a, b)| *a <= b + 1e-12), "N = {n}");
            }
            previous = Some(e);
        }
    }
}

#[test]
fn offset_equivariance() {
    let s = spec(Family::Lame, 3, 0.4);
    let c = 7.3;
    let base = band_edges(&s, 64).unwrap();
    let shifted = band_edges(&s.with_offset(c), 64).unwrap();
    for (a, b) in base.iter().zip(&shifted) {
        assert!((b.energy - a.energy - c).abs() < 1e-12);
        assert_eq!(a.phase, b.phase);
    }
}

#[test]
fn verify_lame_j3() {
    for m in [0.1, 0.5, 0.9] {
        let mut e = full_spectrum(&spec(Family::Lame, 3, m)).unwrap();
        let report = oracle::verify(&mut e, 128, 1e-8).unwrap();
        assert!(
            report.pass && report.edges.len() == 7,
            "m = {m}: {report:?}"
        );
        assert!(report.phases_alternate());
        assert!(e.solutions.iter().all(|s| s.bloch_phase.is_some()));
    }
}

#[test]
fn verify_rejects_perturbed_energy() {
    let mut e = full_spectrum(&spec(Family::Lame, 2, 0.5)).unwrap();
    e.solutions[2].energy += 1e-3;
    let report = oracle::verify(&mut e, 128, 1e-8).unwrap();
    assert!(!report.pass);
    assert_eq!(report.unmatched.len(), 1);
    assert!((report.unmatched[0] - e.solutions[2].energy).abs() < 1e-15);
}

#[test]
fn expected_phase_pattern() {
    let pattern: String = (0..9).map(|i| EdgePhase::expected_at(i).short()).collect();
    assert_eq!(pattern, "paappaapp");
}
