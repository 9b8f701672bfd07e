//! Acceptance suite: one test per criterion, each printing a PASS line
//! with what was checked. Run with
//! `cargo test -p nimshape --test acceptance -- --nocapture` to see them.

use std::collections::{BTreeSet, HashMap};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use nimshape::closed_forms::{
    hyperrect_grundy, rect_grundy, rect_is_heavy, rnim_sum_grundy, sg1_member, two_row_grundy,
    HeavyFamily, RectSpec,
};
use nimshape::engine::{longest_play, Convention, Engine, GrundyPair};
use nimshape::explore::{check_conjectures, enumerate_by_value, enumerate_heavy, ConjectureSweep};
use nimshape::oracle::Oracle;
use nimshape::partitions_of;
use nimshape::strategy::{
    best_move_misere, best_move_normal, cgh_audit, misere_sum_pair, AuditSpace, ClassFinding,
};
use nimshape::{Hyperrectangle, Partition, SumPosition};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn rect_partition(r: u32, c: u32) -> Partition {
    RectSpec::new(r, c).unwrap().partition()
}

fn boxes(max_dim: usize, max_side: u32, min_side: u32) -> Vec<Hyperrectangle> {
    let mut out = Vec::new();
    for d in 1..=max_dim {
        let mut sides = vec![min_side; d];
        loop {
            out.push(Hyperrectangle::new(sides.clone()).unwrap());
            let mut i = d;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if sides[i] < max_side {
                    sides[i] += 1;
                    break;
                }
                sides[i] = min_side;
            }
            if sides.iter().all(|&s| s == min_side) {
                break;
            }
        }
    }
    out
}

#[test]
fn criterion_01_table1_reproduction() {
    let engine = Engine::new();
    let rows: [(&str, u32, u32); 4] = [
        ("(2,2)+(4,3,2)+(1,1)", 1, 0),
        ("(1,0,2)+(2,3,4)+(4,4)", 0, 1),
        ("(1,2,3)+(2,2)", 5, 5),
        ("(1,2,3)+(3,2)", 0, 0),
    ];
    for (text, g, g_minus) in rows {
        let pos: SumPosition = text.parse().unwrap();
        assert_eq!(engine.grundy(&pos).unwrap(), g, "normal value of {text}");
        assert_eq!(
            engine.misere_grundy(&pos).unwrap(),
            g_minus,
            "misère value of {text}"
        );
        if let SumPosition::Rnim(cs) = &pos {
            assert_eq!(rnim_sum_grundy(cs).unwrap(), g, "closed form of {text}");
        }
    }
    println!("ACCEPTANCE 1 PASS: all four table rows give normal 1,0,5,0 and misère 0,1,5,0");
}

#[test]
fn criterion_02_rectangle_theorem() {
    let engine = Engine::new();
    for r in 1..=8 {
        for c in 1..=8 {
            assert_eq!(
                engine.grundy_partition(&rect_partition(r, c)).unwrap(),
                rect_grundy(RectSpec::new(r, c).unwrap()),
                "rectangle r={r} c={c}"
            );
        }
    }
    println!(
        "ACCEPTANCE 2 PASS: engine equals ((r-1) xor (c-1)) + 1 on all 64 rectangles r,c <= 8"
    );
}

#[test]
fn criterion_03_hyperrectangle_theorem_via_oracle() {
    let mut oracle = Oracle::new();
    let mut cases = 0;
    for h in boxes(3, 5, 1) {
        let single = SumPosition::single_hyperrect(h.clone());
        assert_eq!(
            oracle.grundy(&single, Convention::Normal).unwrap(),
            hyperrect_grundy(&h),
            "box {h}"
        );
        cases += 1;
    }
    assert_eq!(cases, 5 + 25 + 125);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let d = rng.gen_range(1..=3);
        let mut sides: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=5)).collect();
        sides[rng.gen_range(0..d)] = 0;
        let h = Hyperrectangle::new(sides).unwrap();
        let single = SumPosition::single_hyperrect(h.clone());
        assert_eq!(
            oracle.grundy(&single, Convention::Normal).unwrap(),
            0,
            "terminal {h}"
        );
        assert_eq!(hyperrect_grundy(&h), 0, "terminal formula {h}");
    }
    println!("ACCEPTANCE 3 PASS: oracle equals 1 + xor(k_i - 1) on 155 boxes and 0 on 20 terminal samples");
}

#[test]
fn criterion_04_sg1_characterization() {
    let engine = Engine::new();
    let mut count = 0;
    for n in 0..=15 {
        for q in partitions_of(n, false).unwrap() {
            assert_eq!(
                engine.grundy_partition(&q).unwrap() == 1,
                sg1_member(&q),
                "partition {q}"
            );
            count += 1;
        }
    }
    println!("ACCEPTANCE 4 PASS: g=1 iff interval membership on all {count} partitions of n <= 15");
}

#[test]
fn criterion_05_upper_bound_and_conjugate_invariance() {
    let engine = Engine::new();
    let mut oracle = Oracle::new();
    for n in 0..=15 {
        for q in partitions_of(n, false).unwrap() {
            let g = engine.grundy_partition(&q).unwrap();
            if !q.is_empty() {
                assert!(g <= longest_play(&q), "bound at {q}");
            }
            let conj = q.conjugate();
            assert_eq!(
                g,
                engine.grundy_partition(&conj).unwrap(),
                "g across conjugation at {q}"
            );
            assert_eq!(
                engine.misere_grundy_partition(&q).unwrap(),
                engine.misere_grundy_partition(&conj).unwrap(),
                "g- across conjugation at {q}"
            );
            // the oracle never canonicalizes, so this leg is substantive
            let a = SumPosition::single_partition(q.clone());
            let b = SumPosition::single_partition(conj);
            for conv in [Convention::Normal, Convention::Misere] {
                assert_eq!(
                    oracle.grundy(&a, conv).unwrap(),
                    oracle.grundy(&b, conv).unwrap(),
                    "oracle across conjugation at {q}"
                );
            }
        }
    }
    println!(
        "ACCEPTANCE 5 PASS: bound and conjugate invariance (engine and oracle) hold for n <= 15"
    );
}

#[test]
fn criterion_06_two_row_formula() {
    let engine = Engine::new();
    for c1 in 1..=10 {
        for c2 in 1..=c1 {
            assert_eq!(
                engine.grundy_partition(&p(&[c1, c2])).unwrap(),
                two_row_grundy(c1, c2).unwrap(),
                "[{c1},{c2}]"
            );
        }
    }
    println!(
        "ACCEPTANCE 6 PASS: engine equals the two-row formula for all c1 >= c2 >= 1, c1 <= 10"
    );
}

#[test]
fn criterion_07_appendix_goldens() {
    let engine = Engine::new();

    let heavy: BTreeSet<Partition> = enumerate_heavy(&engine, 8, true)
        .unwrap()
        .representatives
        .into_iter()
        .collect();
    let heavy_golden: BTreeSet<Partition> = [
        &[1u32][..],
        &[1, 1],
        &[2, 1],
        &[1, 1, 1],
        &[2, 1, 1],
        &[1, 1, 1, 1],
        &[3, 1, 1],
        &[2, 2, 1],
        &[2, 1, 1, 1],
        &[1, 1, 1, 1, 1],
        &[3, 2, 1],
        &[3, 1, 1, 1],
        &[2, 2, 2],
        &[2, 2, 1, 1],
        &[2, 1, 1, 1, 1],
        &[1, 1, 1, 1, 1, 1],
        &[4, 1, 1, 1],
        &[3, 2, 2],
        &[3, 2, 1, 1],
        &[3, 1, 1, 1, 1],
        &[2, 2, 2, 1],
        &[2, 2, 1, 1, 1],
        &[2, 1, 1, 1, 1, 1],
        &[1, 1, 1, 1, 1, 1, 1],
        &[4, 2, 1, 1],
        &[4, 1, 1, 1, 1],
        &[3, 3, 1, 1],
        &[3, 2, 2, 1],
        &[3, 2, 1, 1, 1],
        &[3, 1, 1, 1, 1, 1],
        &[2, 2, 2, 1, 1],
        &[2, 2, 1, 1, 1, 1],
        &[2, 1, 1, 1, 1, 1, 1],
        &[1, 1, 1, 1, 1, 1, 1, 1],
    ]
    .iter()
    .map(|parts| p(parts))
    .collect();
    assert_eq!(
        heavy, heavy_golden,
        "heavy partitions of n <= 8, up to conjugation"
    );

    let sg2: BTreeSet<Partition> = enumerate_by_value(&engine, 2, 15, true)
        .unwrap()
        .representatives
        .into_iter()
        .collect();
    let sg2_golden: BTreeSet<Partition> = [p(&[1, 1]), p(&[3, 3, 3, 1]), p(&[3, 3, 3, 3])]
        .into_iter()
        .collect();
    assert_eq!(
        sg2, sg2_golden,
        "Grundy-value-2 partitions of n <= 15, up to conjugation"
    );

    println!(
        "ACCEPTANCE 7 PASS: heavy set at n <= 8 has the 34 listed classes; g=2 at n <= 15 is exactly {{[1,1],[3,3,3,1],[3,3,3,3]}}"
    );
}

#[test]
fn criterion_08_heaviness_families() {
    let engine = Engine::new();
    let mut family_count = 0;
    for r in 1..=11u32 {
        for c in 1..=(12 - r) {
            let hook = nimshape::closed_forms::heavy_family_witness(HeavyFamily::Hook {
                cols: c,
                rows: r,
            })
            .unwrap();
            assert!(engine.is_heavy(&hook).unwrap(), "hook {hook}");
            family_count += 1;
            if c >= r {
                let stair = nimshape::closed_forms::heavy_family_witness(HeavyFamily::Staircase {
                    cols: c,
                    rows: r,
                })
                .unwrap();
                assert!(engine.is_heavy(&stair).unwrap(), "staircase {stair}");
                family_count += 1;
            }
        }
    }
    for r in 1..=8 {
        for c in 1..=8 {
            let spec = RectSpec::new(r, c).unwrap();
            assert_eq!(
                rect_is_heavy(spec),
                engine.is_heavy(&rect_partition(r, c)).unwrap(),
                "engine route r={r} c={c}"
            );
        }
    }
    for r in 1..=64 {
        for c in 1..=64 {
            let spec = RectSpec::new(r, c).unwrap();
            assert_eq!(
                rect_is_heavy(spec),
                rect_grundy(spec) == r + c - 1,
                "arithmetic route r={r} c={c}"
            );
        }
    }
    println!(
        "ACCEPTANCE 8 PASS: {family_count} hooks/staircases with r+c <= 12 are heavy; rect heaviness matches the engine (r,c <= 8) and arithmetic (r,c <= 64)"
    );
}

#[test]
fn criterion_09_misere_tame_sums() {
    let engine = Engine::new();
    let mut oracle = Oracle::new();

    let comps = boxes(2, 4, 0);
    assert_eq!(comps.len(), 5 + 25);
    let mut rnim_cases = 0;
    let mut check_rnim = |cs: Vec<Hyperrectangle>| {
        let values: Vec<u32> = cs
            .iter()
            .map(|h| engine.grundy_hyperrect(h).unwrap())
            .collect();
        let predicted = misere_sum_pair(&values).unwrap().g_minus;
        let sum = SumPosition::Rnim(cs);
        assert_eq!(
            predicted,
            oracle.grundy(&sum, Convention::Misere).unwrap(),
            "tame rule vs oracle at {sum}"
        );
        rnim_cases += 1;
    };
    for i in 0..comps.len() {
        check_rnim(vec![comps[i].clone()]);
        for j in i..comps.len() {
            check_rnim(vec![comps[i].clone(), comps[j].clone()]);
            for k in j..comps.len() {
                check_rnim(vec![comps[i].clone(), comps[j].clone(), comps[k].clone()]);
            }
        }
    }

    let mut pool = Vec::new();
    for n in 0..=8 {
        pool.extend(partitions_of(n, false).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let a = pool[rng.gen_range(0..pool.len())].clone();
        let b = pool[rng.gen_range(0..pool.len())].clone();
        let values = [
            engine.grundy_partition(&a).unwrap(),
            engine.grundy_partition(&b).unwrap(),
        ];
        let predicted = misere_sum_pair(&values).unwrap().g_minus;
        let sum = SumPosition::Pnim(vec![a, b]);
        assert_eq!(
            predicted,
            oracle.grundy(&sum, Convention::Misere).unwrap(),
            "tame rule vs oracle at {sum}"
        );
    }
    println!(
        "ACCEPTANCE 9 PASS: tame-sum rule matches the misère oracle on {rnim_cases} exhaustive RNim sums and 200 random PNim pairs"
    );
}

#[test]
fn criterion_10_cgh_audit() {
    let engine = Engine::new();

    let pnim = cgh_audit(&engine, AuditSpace::Partitions { max_n: 12 }).unwrap();
    assert!(
        pnim.pet.is_verified(),
        "no (0,0)-position among partitions of n <= 12"
    );
    assert!(
        pnim.returnable.is_verified(),
        "returnability on partitions of n <= 12"
    );
    match &pnim.forced {
        ClassFinding::Refuted { witness } => {
            assert_eq!(witness.position, "[2,2]");
            assert_eq!(witness.pair, GrundyPair::new(1, 0));
            assert_eq!(
                witness.move_to,
                Some(("[2]".to_string(), GrundyPair::new(2, 2)))
            );
        }
        other => panic!("forced must be refuted with the [2,2] -> [2] witness, got {other:?}"),
    }

    let rnim = cgh_audit(
        &engine,
        AuditSpace::Hyperrects {
            max_dim: 2,
            max_side: 5,
        },
    )
    .unwrap();
    assert!(
        rnim.pet.is_verified(),
        "no (0,0)-position among boxes d <= 2, sides <= 5"
    );
    assert!(
        rnim.returnable.is_verified(),
        "returnability on boxes d <= 2, sides <= 5"
    );
    assert!(matches!(rnim.forced, ClassFinding::Refuted { .. }));

    println!(
        "ACCEPTANCE 10 PASS: no (0,0)-positions, returnability verified, forced refuted by [2,2] -> [2] with pairs (1,0) -> (2,2)"
    );
}

// Exhaustive adversarial check, independent of Grundy values: the engine
// follows best_move_*, the opponent tries every reply, and the winner is
// decided by who makes the last move.
struct Minimax<'a> {
    engine: &'a Engine,
    convention: Convention,
    mover: HashMap<Vec<Vec<u32>>, bool>,
    waiter: HashMap<Vec<Vec<u32>>, bool>,
}

impl<'a> Minimax<'a> {
    fn new(engine: &'a Engine, convention: Convention) -> Self {
        Minimax {
            engine,
            convention,
            mover: HashMap::new(),
            waiter: HashMap::new(),
        }
    }

    fn engine_wins_moving(&mut self, pos: &SumPosition) -> bool {
        if pos.is_terminal() {
            return self.convention == Convention::Misere;
        }
        let key = pos.raw_key();
        if let Some(&v) = self.mover.get(&key) {
            return v;
        }
        let advice = match self.convention {
            Convention::Normal => best_move_normal(self.engine, pos).unwrap(),
            Convention::Misere => best_move_misere(self.engine, pos).unwrap(),
        };
        let result = self.engine_wins_waiting(&advice.successor);
        self.mover.insert(key, result);
        result
    }

    fn engine_wins_waiting(&mut self, pos: &SumPosition) -> bool {
        if pos.is_terminal() {
            return self.convention == Convention::Normal;
        }
        let key = pos.raw_key();
        if let Some(&v) = self.waiter.get(&key) {
            return v;
        }
        let result = pos
            .successors()
            .iter()
            .all(|reply| self.engine_wins_moving(reply));
        self.waiter.insert(key, result);
        result
    }
}

#[test]
fn criterion_11_strategy_soundness() {
    let engine = Engine::new();

    let mut starts: Vec<SumPosition> = Vec::new();
    for n in 1..=8 {
        for q in partitions_of(n, false).unwrap() {
            starts.push(SumPosition::single_partition(q));
        }
    }
    let comps = boxes(2, 4, 0);
    for i in 0..comps.len() {
        starts.push(SumPosition::single_hyperrect(comps[i].clone()));
        for j in i..comps.len() {
            starts.push(SumPosition::Rnim(vec![comps[i].clone(), comps[j].clone()]));
        }
    }

    let mut wins_checked = 0;
    for convention in [Convention::Normal, Convention::Misere] {
        let mut minimax = Minimax::new(&engine, convention);
        for start in &starts {
            let value = match convention {
                Convention::Normal => engine.grundy(start).unwrap(),
                Convention::Misere => engine.misere_grundy(start).unwrap(),
            };
            if value != 0 {
                assert!(
                    minimax.engine_wins_moving(start),
                    "{start} should be won under {convention:?} against every reply"
                );
                wins_checked += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 11 PASS: the best-move player converts all {wins_checked} winnable starts under both conventions against exhaustive replies"
    );
}

#[test]
fn criterion_12_conjecture_sweeps() {
    let engine = Engine::new();

    let chopped =
        check_conjectures(&engine, ConjectureSweep::ChoppedRect { a_max: 5, b_max: 5 }).unwrap();
    let stairs = check_conjectures(
        &engine,
        ConjectureSweep::ShallowStaircase {
            i_max: 4,
            s_max: 4,
            k_max: 4,
        },
    )
    .unwrap();

    assert!(
        chopped.positions_checked > 0,
        "chopped-rect sweep must check something"
    );
    assert_eq!(stairs.positions_checked, 4 * 4 * 4);
    for report in [&chopped, &stairs] {
        for ce in &report.counterexamples {
            // honest outcome: a counterexample must carry full evidence
            assert_ne!(ce.g, ce.longest_play);
            println!(
                "ACCEPTANCE 12 NOTE: counterexample to {}: {} has g={} < longest={}",
                report.id, ce.partition, ce.g, ce.longest_play
            );
        }
    }
    println!(
        "ACCEPTANCE 12 PASS: chopped-rect checked {} positions ({} counterexamples); shallow-staircase checked {} positions ({} counterexamples)",
        chopped.positions_checked,
        chopped.counterexamples.len(),
        stairs.positions_checked,
        stairs.counterexamples.len()
    );
}
