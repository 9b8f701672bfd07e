//! Warm the engine, persist its value table, and reload it elsewhere.
//!
//! ```bash
//! cargo run --example cache_roundtrip
//! ```

use nimshape::partitions_of;
use nimshape::{Engine, MemoTable, Ruleset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir();
    let path = dir.join("nimshape-demo.cache");

    let engine = Engine::new();
    for n in 0..=12 {
        for p in partitions_of(n, false)? {
            engine.grundy_partition(&p)?;
            engine.misere_grundy_partition(&p)?;
        }
    }
    let written = engine.save_cache(Ruleset::Pnim, &path)?;
    println!("saved {written} entries to {}", path.display());

    let table = MemoTable::load(&path)?;
    println!(
        "reloaded {} entries, ruleset {}",
        table.len(),
        table.ruleset()
    );
    assert_eq!(table.entries(), engine.pnim_table().entries());

    // a fresh engine adopts the cache and answers without recomputing
    let warmed = Engine::new();
    warmed.load_cache(&path)?;
    let g = warmed.grundy_partition(&"[4,4,2,1]".parse()?)?;
    println!(
        "g([4,4,2,1]) = {g} (answered from {} preloaded keys)",
        warmed.pnim_table().len()
    );

    std::fs::remove_file(&path).ok();
    Ok(())
}
