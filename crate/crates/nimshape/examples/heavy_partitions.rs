//! Reproduce the table of heavy partitions (Grundy value equal to the
//! longest play) up to a bound, drawn as Young diagrams.
//!
//! ```bash
//! cargo run --example heavy_partitions
//! cargo run --example heavy_partitions -- 10
//! ```

use nimshape::explore::enumerate_heavy;
use nimshape::Engine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: u32 = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(8);

    let engine = Engine::new();
    let report = enumerate_heavy(&engine, n_max, true)?;

    println!("heavy partitions of order <= {n_max}, up to conjugation:\n");
    for (p, g) in report.representatives.iter().zip(&report.grundy_values) {
        println!("{p}  (n = {}, g = {g})", p.order());
        for &row in p.parts() {
            println!("  {}", "#".repeat(row as usize));
        }
        println!();
    }
    for (n, count) in &report.counts_per_n {
        println!("order {n}: {count} class(es)");
    }
    println!("total: {} classes", report.representatives.len());
    Ok(())
}
