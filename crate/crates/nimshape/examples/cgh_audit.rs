//! Audit the Conway-Gurvich-Ho classes on bounded spaces and demonstrate
//! the tame-sum rule that makes misère sums cheap.
//!
//! ```bash
//! cargo run --example cgh_audit
//! ```

use nimshape::strategy::{cgh_audit, misere_sum_pair, AuditSpace, ClassFinding};
use nimshape::{Engine, SumPosition};

fn show(finding: &ClassFinding, name: &str) {
    match finding {
        ClassFinding::Verified { positions } => {
            println!("  {name:<10} verified on {positions} positions");
        }
        ClassFinding::Refuted { witness } => {
            let move_part = witness
                .move_to
                .as_ref()
                .map(|(to, pair)| format!(" -> {to} {pair}"))
                .unwrap_or_default();
            println!(
                "  {name:<10} refuted: {} {}{move_part}",
                witness.position, witness.pair
            );
        }
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = Engine::new();

    for space in [
        AuditSpace::Partitions { max_n: 12 },
        AuditSpace::Hyperrects {
            max_dim: 2,
            max_side: 5,
        },
    ] {
        let report = cgh_audit(&engine, space)?;
        println!("{}:", report.space);
        show(&report.pet, "pet");
        show(&report.tame, "tame");
        show(&report.miserable, "miserable");
        show(&report.returnable, "returnable");
        show(&report.forced, "forced");
        println!();
    }

    // misère values of sums come from normal component values alone
    println!("tame-sum rule on sample sums:");
    for text in [
        "(2,2)+(4,3,2)+(1,1)",
        "(1,0,2)+(2,3,4)+(4,4)",
        "(1,2,3)+(2,2)",
        "(1,2,3)+(3,2)",
    ] {
        let pos: SumPosition = text.parse()?;
        let SumPosition::Rnim(cs) = &pos else {
            unreachable!()
        };
        let values: Vec<u32> = cs
            .iter()
            .map(|h| engine.grundy_hyperrect(h))
            .collect::<Result<_, _>>()?;
        let pair = misere_sum_pair(&values)?;
        println!("  {text:<24} component values {values:?} -> pair {pair}");
    }
    Ok(())
}
