//! Search bounded partition space by exact Grundy value: the value-1
//! interval structure and the sparse value-2 classes.
//!
//! ```bash
//! cargo run --example grundy_landscape
//! cargo run --example grundy_landscape -- 18
//! ```

use nimshape::closed_forms::sg1_member;
use nimshape::explore::enumerate_by_value;
use nimshape::Engine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: u32 = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(15);
    let engine = Engine::new();

    println!("value-1 partitions up to n = {n_max} (the misère-losing singles):");
    let ones = enumerate_by_value(&engine, 1, n_max, true)?;
    for p in &ones.representatives {
        assert!(sg1_member(p), "characterization must agree with the engine");
        println!("  {p}");
    }
    println!(
        "  ({} classes; all satisfy the interval characterization)\n",
        ones.representatives.len()
    );

    println!("value-2 partitions up to n = {n_max}:");
    let twos = enumerate_by_value(&engine, 2, n_max, true)?;
    for p in &twos.representatives {
        println!("  {p}  (n = {})", p.order());
    }
    println!("  ({} classes)", twos.representatives.len());
    Ok(())
}
