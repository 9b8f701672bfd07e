//! Sweep the two open heaviness conjectures and report counterexamples,
//! if any exist in range.
//!
//! ```bash
//! cargo run --example conjectures
//! cargo run --example conjectures -- 6 5 4
//! ```
//!
//! Arguments: a/b bound for the chopped-rectangle sweep, then i/s and k
//! bounds for the shallow-staircase sweep.

use nimshape::explore::{check_conjectures, ConjectureSweep};
use nimshape::Engine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let ab: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(5);
    let is: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(4);
    let k: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(4);

    let engine = Engine::new();
    for sweep in [
        ConjectureSweep::ChoppedRect {
            a_max: ab,
            b_max: ab,
        },
        ConjectureSweep::ShallowStaircase {
            i_max: is,
            s_max: is,
            k_max: k,
        },
    ] {
        let report = check_conjectures(&engine, sweep)?;
        println!(
            "{}: {} positions checked over {}",
            report.id, report.positions_checked, report.ranges
        );
        if report.counterexamples.is_empty() {
            println!("  no counterexamples in range\n");
        } else {
            for ce in &report.counterexamples {
                println!(
                    "  COUNTEREXAMPLE {}: g = {} but longest play = {}",
                    ce.partition, ce.g, ce.longest_play
                );
            }
            println!();
        }
    }
    Ok(())
}
