//! Evaluate positions under both conventions and compare the engine
//! against the closed forms.
//!
//! ```bash
//! cargo run --example evaluate
//! cargo run --example evaluate -- "[4,2,1]+[3,3]" "(5,4,2)+(2,3)"
//! ```

use nimshape::closed_forms::{hyperrect_grundy, rnim_sum_grundy};
use nimshape::{Engine, SumPosition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let positions = if args.is_empty() {
        vec![
            "[4,2,1]".to_string(),
            "[2,2]".to_string(),
            "[4,2,1]+[3,3]".to_string(),
            "(5,4,2)".to_string(),
            "(2,2)+(4,3,2)+(1,1)".to_string(),
            "(1,0,2)+(2,3,4)+(4,4)".to_string(),
            "(1,2,3)+(2,2)".to_string(),
            "(1,2,3)+(3,2)".to_string(),
        ]
    } else {
        args
    };

    let engine = Engine::new();
    println!("{:<24} {:>8} {:>8}  notes", "position", "g", "g-");
    for text in positions {
        let pos: SumPosition = text.parse()?;
        let g = engine.grundy(&pos)?;
        let g_minus = engine.misere_grundy(&pos)?;
        let mut notes = String::new();
        if let SumPosition::Rnim(cs) = &pos {
            let formula = rnim_sum_grundy(cs)?;
            assert_eq!(formula, g);
            let parts: Vec<String> = cs.iter().map(|h| hyperrect_grundy(h).to_string()).collect();
            notes = format!("closed form {} = {}", parts.join(" xor "), formula);
        }
        println!("{:<24} {:>8} {:>8}  {}", pos.to_string(), g, g_minus, notes);
    }
    println!();
    println!("g = 0 positions are losing under normal play; g- = 0 under misère play.");
    Ok(())
}
