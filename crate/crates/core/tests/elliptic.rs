mod common;

use bandedge::elliptic::{agm, complete_k_checked};
use bandedge::{complete_k, jacobi, Modulus};
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;

/// `K(m)` by the trapezoid rule on `∫₀^{π/2} dθ / √(1 - m sin²θ)`; the
/// integrand is smooth and periodic, so the rule converges geometrically.
fn k_quadrature(m: f64) -> f64 {
    let n = 4000;
    let h = FRAC_PI_2 / n as f64;
    let f = |t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt();
    h * ((f(0.0) + f(FRAC_PI_2)) / 2.0 + (1..n).map(|i| f(i as f64 * h)).sum::<f64>())
}

/// RK4 on `sn' = cn dn`, `cn' = -sn dn`, `dn' = -m sn cn` from 0 to `x`.
fn jacobi_ode(x: f64, m: f64, steps: usize) -> [f64; 3] {
    let rhs = |y: [f64; 3]| [y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]];
    let h = x / steps as f64;
    let mut y = [0.0, 1.0, 1.0];
    let add =
        |y: [f64; 3], k: [f64; 3], s: f64| [y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2]];
    for _ in 0..steps {
        let k1 = rhs(y);
        let k2 = rhs(add(y, k1, h / 2.0));
        let k3 = rhs(add(y, k2, h / 2.0));
        let k4 = rhs(add(y, k3, h));
        for i in 0..3 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}

fn md(m: f64) -> Modulus {
    Modulus::new(m).unwrap()
}

#[test]
fn k_at_zero_is_half_pi() {
    assert_eq!(complete_k(md(0.0)), FRAC_PI_2);
}

#[test]
fn k_matches_quadrature() {
    for m in [0.1, 0.5, 0.9, 0.99] {
        let k = complete_k(md(m));
        assert!(
            (k - k_quadrature(m)).abs() < 1e-12,
            "m = {m}: {k} vs {}",
            k_quadrature(m)
        );
    }
    assert!((complete_k(md(0.5)) - 1.854_074_677_301_372).abs() < 1e-14);
}

#[test]
fn k_from_agm() {
    let m: f64 = 0.5;
    let k = std::f64::consts::PI / (2.0 * agm(1.0, (1.0 - m).sqrt()));
    assert!((complete_k(md(m)) - k).abs() < 1e-15);
}

#[test]
fn k_is_increasing() {
    let ks: Vec<f64> = (0..100).map(|i| complete_k(md(i as f64 / 100.0))).collect();
    assert!(ks.windows(2).all(|w| w[1] > w[0]));
    assert!(complete_k(md(0.9)) > complete_k(md(0.5)));
}

#[test]
fn domain_errors() {
    assert!(Modulus::new(1.0).is_err());
    assert!(Modulus::new(-0.1).is_err());
    assert!(Modulus::new(f64::NAN).is_err());
    assert!(complete_k_checked(1.0).is_err());
    assert!(jacobi(f64::INFINITY, md(0.5)).is_err());
    assert!(jacobi(f64::NAN, md(0.5)).is_err());
}

#[test]
fn origin_values() {
    for m in [0.0, 0.3, 0.9, 0.99] {
        let v = jacobi(0.0, md(m)).unwrap();
        assert_eq!((v.sn, v.cn, v.dn), (0.0, 1.0, 1.0));
    }
}

#[test]
fn circular_limit() {
    for i in 0..50 {
        let x = -10.0 + 0.41 * i as f64;
        let v = jacobi(x, md(0.0)).unwrap();
        assert!((v.sn - x.sin()).abs() < 1e-14);
        assert!((v.cn - x.cos()).abs() < 1e-14);
        assert_eq!(v.dn, 1.0);
    }
}

#[test]
fn quarter_period_matches_ode() {
    let m = 0.5;
    let k = k_quadrature(m);
    let ode = jacobi_ode(k, m, 20_000);
    let v = jacobi(k, md(m)).unwrap();
    assert!((ode[0] - 1.0).abs() < 1e-12 && ode[1].abs() < 1e-12);
    assert!((v.sn - ode[0]).abs() < 1e-12);
    assert!((v.cn - ode[1]).abs() < 1e-12);
    assert!((v.dn - ode[2]).abs() < 1e-12);
    assert!((v.dn - 0.5_f64.sqrt()).abs() < 1e-12);
}

#[test]
fn ode_agreement_along_the_period() {
    for m in [0.2, 0.8, 0.95] {
        for x in [0.3, 1.7, 4.1] {
            let ode = jacobi_ode(x, m, 20_000);
            let v = jacobi(x, md(m)).unwrap();
            for (a, b) in [v.sn, v.cn, v.dn].iter().zip(ode) {
                assert!((a - b).abs() < 1e-11, "m = {m}, x = {x}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn identities_on_quasi_random_points() {
    for (u, w) in common::r2_sequence(1000) {
        let (x, m) = (-40.0 + 80.0 * u, 0.99 * w);
        let v = jacobi(x, md(m)).unwrap();
        assert!((v.sn * v.sn + v.cn * v.cn - 1.0).abs() < 1e-12);
        assert!((v.dn * v.dn + m * v.sn * v.sn - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn identities(x in -100.0..100.0_f64, m in 0.0..0.99_f64) {
        let v = jacobi(x, md(m)).unwrap();
        prop_assert!((v.sn * v.sn + v.cn * v.cn - 1.0).abs() < 1e-12);
        prop_assert!((v.dn * v.dn + m * v.sn * v.sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derivatives(x in -20.0..20.0_f64, m in 0.0..0.99_f64) {
        let h = 1e-5;
        let (p, q, v) = (jacobi(x + h, md(m)).unwrap(), jacobi(x - h, md(m)).unwrap(), jacobi(x, md(m)).unwrap());
        prop_assert!(((p.sn - q.sn) / (2.0 * h) - v.cn * v.dn).abs() < 1e-6);
        prop_assert!(((p.cn - q.cn) / (2.0 * h) + v.sn * v.dn).abs() < 1e-6);
        prop_assert!(((p.dn - q.dn) / (2.0 * h) + m * v.sn * v.cn).abs() < 1e-6);
    }

    #[test]
    fn periodicity(x in -20.0..20.0_f64, m in 0.0..0.99_f64) {
        let k = complete_k(md(m));
        let v = jacobi(x, md(m)).unwrap();
        let four = jacobi(x + 4.0 * k, md(m)).unwrap();
        let two = jacobi(x + 2.0 * k, md(m)).unwrap();
        prop_assert!((four.sn - v.sn).abs() < 1e-10);
        prop_assert!((four.cn - v.cn).abs() < 1e-10);
        prop_assert!((two.dn - v.dn).abs() < 1e-10);
        prop_assert!((two.sn + v.sn).abs() < 1e-10);
    }

    #[test]
    fn half_period_shift(x in -20.0..20.0_f64, m in 0.0..0.99_f64) {
        let k = complete_k(md(m));
        let v = jacobi(x, md(m)).unwrap();
        let s = jacobi(x + k, md(m)).unwrap();
        prop_assert!((s.sn - v.cn / v.dn).abs() < 1e-10);
    }

    #[test]
    fn oddness(x in -20.0..20.0_f64, m in 0.0..0.99_f64) {
        let (v, w) = (jacobi(x, md(m)).unwrap(), jacobi(-x, md(m)).unwrap());
        prop_assert_eq!(v.sn, -w.sn);
        prop_assert_eq!(v.cn, w.cn);
        prop_assert_eq!(v.dn, w.dn);
    }
}
