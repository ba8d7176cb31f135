//! Jacobi elliptic functions and the quarter period K(m).
//!
//! Run with `cargo run --example jacobi_functions`.

use bandedge::{complete_k, jacobi, Modulus};

fn main() -> bandedge::Result<()> {
    for m in [0.0, 0.5, 0.9, 0.99] {
        let modulus = Modulus::new(m)?;
        println!("m = {m:<5} K(m) = {:.15}", complete_k(modulus));
    }

    let m = Modulus::new(0.5)?;
    let k = complete_k(m);
    println!(
        "\n{:>8} {:>12} {:>12} {:>12} {:>10}",
        "x/K", "sn", "cn", "dn", "identity"
    );
    for i in 0..=8 {
        let x = k * i as f64 / 2.0;
        let v = jacobi(x, m)?;
        // sn² + cn² = 1 and dn² + m sn² = 1
        let err = (v.sn * v.sn + v.cn * v.cn - 1.0)
            .abs()
            .max((v.dn * v.dn + m.value() * v.sn * v.sn - 1.0).abs());
        println!(
            "{:>8.2} {:>12.8} {:>12.8} {:>12.8} {:>10.1e}",
            i as f64 / 2.0,
            v.sn,
            v.cn,
            v.dn,
            err
        );
    }
    Ok(())
}
