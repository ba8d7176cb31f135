//! Residue sets, solution counts and zero totals for j = 1..=8.
//!
//! Run with `cargo run --release --example counting_tables`.

fn main() -> bandedge::Result<()> {
    let tables = bandedge::cli::tables(8)?;
    for (name, rows) in [
        ("Lamé", &tables.lame),
        ("associated Lamé", &tables.associated),
    ] {
        println!("{name}");
        for row in rows {
            let sets: Vec<String> = row
                .sets
                .iter()
                .map(|s| {
                    format!(
                        "{}: {} ×{} ({} zeros)",
                        s.set_id, s.form, s.count, s.total_zeros
                    )
                })
                .collect();
            println!(
                "  j={} total {:>2} | {}",
                row.j,
                row.total,
                sets.join(" | ")
            );
        }
    }
    Ok(())
}
