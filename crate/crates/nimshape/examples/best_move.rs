//! Ask the engine for an optimal move under both conventions.
//!
//! ```bash
//! cargo run --example best_move
//! cargo run --example best_move -- "[5,3,2]+[4]"
//! ```

use nimshape::strategy::{best_move_misere, best_move_normal};
use nimshape::{Engine, SumPosition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let positions = if args.is_empty() {
        vec!["[3]+[2]", "[2,2]", "[4,3]", "[1]", "(5,4,2)+(2,3)"]
            .into_iter()
            .map(String::from)
            .collect()
    } else {
        args
    };

    let engine = Engine::new();
    for text in positions {
        let pos: SumPosition = text.parse()?;
        println!("position {pos}");
        for (label, advice) in [
            ("normal", best_move_normal(&engine, &pos)?),
            ("misère", best_move_misere(&engine, &pos)?),
        ] {
            let status = if advice.winning {
                "winning"
            } else {
                "losing anyway, plays"
            };
            println!(
                "  {label:>7}: {status} {} -> {}",
                advice.descriptor.notation(&pos),
                advice.successor
            );
        }
        println!();
    }
    Ok(())
}
