//! Engine-vs-engine games: both sides use the move picker, so the side
//! that the values say should win always does.
//!
//! ```bash
//! cargo run --example self_play
//! cargo run --example self_play -- "[5,4,2]+[3,3]"
//! ```

use nimshape::engine::Convention;
use nimshape::strategy::{best_move_misere, best_move_normal};
use nimshape::{Engine, SumPosition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let start: SumPosition = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "[4,2,1]+[3,3]".to_string())
        .parse()?;

    let engine = Engine::new();
    for convention in [Convention::Normal, Convention::Misere] {
        let (name, value) = match convention {
            Convention::Normal => ("normal", engine.grundy(&start)?),
            Convention::Misere => ("misère", engine.misere_grundy(&start)?),
        };
        println!("{name} play from {start} (value {value}):");
        let predicted_winner = if value != 0 { 1 } else { 2 };
        println!("  player {predicted_winner} should win");

        let mut pos = start.clone();
        let mut mover = 1;
        while !pos.is_terminal() {
            let advice = match convention {
                Convention::Normal => best_move_normal(&engine, &pos)?,
                Convention::Misere => best_move_misere(&engine, &pos)?,
            };
            println!(
                "  player {mover}: {} -> {}",
                advice.descriptor.notation(&pos),
                advice.successor
            );
            pos = advice.successor;
            mover = 3 - mover;
        }
        // `mover` is now the player who could not move
        let winner = match convention {
            Convention::Normal => 3 - mover,
            Convention::Misere => mover,
        };
        println!("  player {winner} wins\n");
        assert_eq!(
            winner, predicted_winner,
            "optimal self-play must match the value"
        );
    }
    Ok(())
}
