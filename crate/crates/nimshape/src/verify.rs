//! The runnable verification suite: every closed form, misère rule,
//! appendix table and classification claim, cross-checked against the
//! engine and the oracle on bounded spaces.
//!
//! Checks report pass/fail/skipped individually; a budget-starved check is
//! skipped, never silently passed.

use std::collections::BTreeSet;
use std::io::{self, Write};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_forms::{
    self, heavy_family_witness, rect_grundy, rect_is_heavy, sg1_member, shifted_mex, HeavyFamily,
    RectSpec,
};
use crate::engine::{longest_play, mex, Convention, Engine, EngineError, GrundyPair};
use crate::explore::{enumerate_by_value, enumerate_heavy, Exportable};
use crate::hyperrect::Hyperrectangle;
use crate::oracle::Oracle;
use crate::partition::{partitions_of, Partition};
use crate::position::SumPosition;
use crate::strategy::{
    best_move_misere, best_move_normal, cgh_audit, misere_sum_pair, AuditSpace, ClassFinding,
    StrategyError,
};

/// All heavy partitions of order at most 8, up to conjugation
/// (lexicographically smaller representative of each pair).
pub const HEAVY_N8: &[&[u32]] = &[
    &[1],
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
];

/// All partitions with Grundy value 2 of order at most 15, up to
/// conjugation.
pub const SG2_N15: &[&[u32]] = &[&[1, 1], &[3, 3, 3, 1], &[3, 3, 3, 3]];

/// The full Grundy-value-2 list up to order 26, up to conjugation.
pub const SG2_N26: &[&[u32]] = &[
    &[1, 1],
    &[3, 3, 3, 1],
    &[3, 3, 3, 3],
    &[5, 4, 4, 3, 1],
    &[5, 5, 5, 3, 3, 1],
    &[5, 5, 5, 4, 3, 1],
    &[5, 5, 5, 5, 3, 1],
    &[5, 5, 5, 4, 4, 1],
    &[5, 5, 5, 3, 3, 3],
    &[5, 5, 5, 5, 4, 1],
    &[5, 5, 5, 5, 5, 1],
    &[5, 5, 5, 5, 3, 3],
    &[5, 5, 5, 4, 4, 3],
];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyScope {
    All,
    Formulas,
    Misere,
    Appendices,
    Cgh,
}

impl std::fmt::Display for VerifyScope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            VerifyScope::All => "all",
            VerifyScope::Formulas => "formulas",
            VerifyScope::Misere => "misere",
            VerifyScope::Appendices => "appendices",
            VerifyScope::Cgh => "cgh",
        };
        write!(f, "{name}")
    }
}

impl std::str::FromStr for VerifyScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(VerifyScope::All),
            "formulas" => Ok(VerifyScope::Formulas),
            "misere" => Ok(VerifyScope::Misere),
            "appendices" => Ok(VerifyScope::Appendices),
            "cgh" => Ok(VerifyScope::Cgh),
            other => Err(format!("unknown scope {other:?}")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub scope: VerifyScope,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn any_skipped(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Skipped)
    }
}

impl Exportable for VerifyReport {
    fn write_text(&self, w: &mut dyn Write, _exponent: bool) -> io::Result<()> {
        for c in &self.checks {
            writeln!(w, "{} {}: {}", c.status, c.name, c.detail)?;
        }
        let (pass, fail, skip) =
            self.checks
                .iter()
                .fold((0, 0, 0), |(p, f, s), c| match c.status {
                    CheckStatus::Pass => (p + 1, f, s),
                    CheckStatus::Fail => (p, f + 1, s),
                    CheckStatus::Skipped => (p, f, s + 1),
                });
        writeln!(
            w,
            "scope {}: {} passed, {} failed, {} skipped",
            self.scope, pass, fail, skip
        )
    }

    fn write_csv(&self, w: &mut dyn Write, _exponent: bool) -> io::Result<()> {
        writeln!(w, "check,status,detail")?;
        for c in &self.checks {
            writeln!(
                w,
                "{},{},\"{}\"",
                c.name,
                c.status,
                c.detail.replace('"', "\"\"")
            )?;
        }
        Ok(())
    }

    fn write_json_lines(&self, w: &mut dyn Write, _exponent: bool) -> io::Result<()> {
        for c in &self.checks {
            writeln!(w, "{}", serde_json::to_string(c)?)?;
        }
        Ok(())
    }
}

/// Failure modes of one check: a real mismatch, or a budget that ran out
/// before the check could finish.
#[derive(Debug, Clone)]
pub enum CheckFailure {
    Failed(String),
    Budget(String),
}

impl From<EngineError> for CheckFailure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::BudgetExceeded { .. } => CheckFailure::Budget(e.to_string()),
            other => CheckFailure::Failed(other.to_string()),
        }
    }
}

impl From<StrategyError> for CheckFailure {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Engine(inner) => inner.into(),
            other => CheckFailure::Failed(other.to_string()),
        }
    }
}

impl From<crate::partition::PartitionError> for CheckFailure {
    fn from(e: crate::partition::PartitionError) -> Self {
        CheckFailure::Failed(e.to_string())
    }
}

impl From<crate::explore::ExploreError> for CheckFailure {
    fn from(e: crate::explore::ExploreError) -> Self {
        match e {
            crate::explore::ExploreError::Engine(inner) => inner.into(),
            other => CheckFailure::Failed(other.to_string()),
        }
    }
}

type CheckOutcome = Result<String, CheckFailure>;
type CheckFn = fn(&Engine, &VerifyOptions) -> CheckOutcome;

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Extends the Grundy-value-2 appendix check from order 15 to the full
    /// listed bound of 26.
    pub deep: bool,
}

/// Runs the selected scope and reports one line per check.
pub fn verify_suite(engine: &Engine, scope: VerifyScope, options: &VerifyOptions) -> VerifyReport {
    let catalog: &[(&'static str, VerifyScope, CheckFn)] = &[
        (
            "rect-theorem-vs-engine",
            VerifyScope::Formulas,
            check_rect_theorem,
        ),
        (
            "hyperrect-theorem-vs-oracle",
            VerifyScope::Formulas,
            check_hyperrect_theorem,
        ),
        ("two-row-vs-engine", VerifyScope::Formulas, check_two_row),
        (
            "sg1-characterization-vs-engine",
            VerifyScope::Formulas,
            check_sg1,
        ),
        (
            "heavy-rect-arithmetic",
            VerifyScope::Formulas,
            check_heavy_rect_arith,
        ),
        (
            "heavy-rect-vs-engine",
            VerifyScope::Formulas,
            check_heavy_rect_engine,
        ),
        (
            "shifted-mex-identity",
            VerifyScope::Formulas,
            check_shifted_mex,
        ),
        ("nim-mex-lemma", VerifyScope::Formulas, check_nim_mex_lemma),
        (
            "nimber-matrix-cyclic",
            VerifyScope::Formulas,
            check_nimber_matrix,
        ),
        (
            "heavy-families",
            VerifyScope::Formulas,
            check_heavy_families,
        ),
        (
            "grundy-upper-bound",
            VerifyScope::Formulas,
            check_upper_bound,
        ),
        (
            "conjugate-invariance",
            VerifyScope::Formulas,
            check_conjugate_invariance,
        ),
        (
            "oracle-equivalence",
            VerifyScope::Formulas,
            check_oracle_equivalence,
        ),
        (
            "nonzero-grundy-on-nonempty",
            VerifyScope::Formulas,
            check_nonzero_grundy,
        ),
        ("pet-pair-shape", VerifyScope::Formulas, check_pet_shape),
        ("table1-reproduction", VerifyScope::Misere, check_table1),
        (
            "tame-sum-rnim-exhaustive",
            VerifyScope::Misere,
            check_tame_sum_rnim,
        ),
        (
            "tame-sum-pnim-exhaustive",
            VerifyScope::Misere,
            check_tame_sum_pnim,
        ),
        (
            "misere-strategy-sg1-agreement",
            VerifyScope::Misere,
            check_misere_strategy_sg1,
        ),
        (
            "strategy-soundness-normal",
            VerifyScope::Misere,
            check_soundness_normal,
        ),
        (
            "strategy-soundness-misere",
            VerifyScope::Misere,
            check_soundness_misere,
        ),
        (
            "appendix-grundy-two",
            VerifyScope::Appendices,
            check_appendix_sg2,
        ),
        (
            "appendix-heavy-n8",
            VerifyScope::Appendices,
            check_appendix_heavy,
        ),
        ("cgh-audit-pnim", VerifyScope::Cgh, check_cgh_pnim),
        ("cgh-audit-rnim", VerifyScope::Cgh, check_cgh_rnim),
    ];
    let checks = catalog
        .iter()
        .filter(|(_, s, _)| scope == VerifyScope::All || *s == scope)
        .map(|(name, _, f)| match f(engine, options) {
            Ok(detail) => CheckResult {
                name,
                status: CheckStatus::Pass,
                detail,
            },
            Err(CheckFailure::Failed(detail)) => CheckResult {
                name,
                status: CheckStatus::Fail,
                detail,
            },
            Err(CheckFailure::Budget(detail)) => CheckResult {
                name,
                status: CheckStatus::Skipped,
                detail,
            },
        })
        .collect();
    VerifyReport { scope, checks }
}

fn fail(msg: String) -> CheckFailure {
    CheckFailure::Failed(msg)
}

fn rect_partition(r: u32, c: u32) -> Partition {
    RectSpec::new(r, c).expect("positive sides").partition()
}

fn check_rect_theorem(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    for r in 1..=8 {
        for c in 1..=8 {
            let expected = rect_grundy(RectSpec::new(r, c).expect("positive"));
            let got = engine.grundy_partition(&rect_partition(r, c))?;
            if got != expected {
                return Err(fail(format!(
                    "[{c}^{r}]: engine {got} vs formula {expected}"
                )));
            }
        }
    }
    Ok("engine matches ((r-1) xor (c-1)) + 1 on all 64 rectangles with r,c <= 8".into())
}

fn check_hyperrect_theorem(_: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let mut oracle = Oracle::new();
    let mut cases = 0;
    for d in 1..=3usize {
        let mut sides = vec![1u32; d];
        loop {
            let h = Hyperrectangle::new(sides.clone()).expect("d >= 1");
            let expected = closed_forms::hyperrect_grundy(&h);
            let got = oracle.grundy(
                &SumPosition::single_hyperrect(h.clone()),
                Convention::Normal,
            )?;
            if got != expected {
                return Err(fail(format!("{h}: oracle {got} vs formula {expected}")));
            }
            cases += 1;
            let mut i = d;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if sides[i] < 5 {
                    sides[i] += 1;
                    break;
                }
                sides[i] = 1;
            }
            if sides.iter().all(|&s| s == 1) {
                break;
            }
        }
    }
    // terminal tuples evaluate to 0
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e27);
    for _ in 0..20 {
        let d = rng.gen_range(1..=3);
        let mut sides: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=5)).collect();
        sides[rng.gen_range(0..d)] = 0;
        let h = Hyperrectangle::new(sides).expect("d >= 1");
        let got = oracle.grundy(
            &SumPosition::single_hyperrect(h.clone()),
            Convention::Normal,
        )?;
        if got != 0 || closed_forms::hyperrect_grundy(&h) != 0 {
            return Err(fail(format!(
                "terminal {h} should have value 0, oracle gave {got}"
            )));
        }
    }
    Ok(format!("oracle matches 1 + xor(k_i - 1) on {cases} boxes (d <= 3, sides <= 5) and 0 on 20 terminal samples"))
}

fn check_two_row(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    for c1 in 1..=10u32 {
        for c2 in 1..=c1 {
            let expected = closed_forms::two_row_grundy(c1, c2).expect("ordered");
            let p = Partition::new(vec![c1, c2]).expect("weakly decreasing");
            let got = engine.grundy_partition(&p)?;
            if got != expected {
                return Err(fail(format!(
                    "[{c1},{c2}]: engine {got} vs formula {expected}"
                )));
            }
        }
    }
    Ok("engine matches the two-row formula for all c1 >= c2 >= 1, c1 <= 10".into())
}

fn check_sg1(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let mut count = 0;
    for n in 0..=15 {
        for p in partitions_of(n, false)? {
            let is_one = engine.grundy_partition(&p)? == 1;
            if is_one != sg1_member(&p) {
                return Err(fail(format!(
                    "{p}: engine g==1 is {is_one}, characterization says {}",
                    sg1_member(&p)
                )));
            }
            count += 1;
        }
    }
    Ok(format!(
        "g=1 iff interval membership on all {count} partitions of n <= 15"
    ))
}

fn check_heavy_rect_arith(_: &Engine, _: &VerifyOptions) -> CheckOutcome {
    for r in 1..=64 {
        for c in 1..=64 {
            let spec = RectSpec::new(r, c).expect("positive");
            if rect_is_heavy(spec) != (rect_grundy(spec) == r + c - 1) {
                return Err(fail(format!(
                    "parity test disagrees with the formula at r={r}, c={c}"
                )));
            }
        }
    }
    Ok("binomial-parity heaviness matches the value formula for all r,c <= 64".into())
}

fn check_heavy_rect_engine(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    for r in 1..=8 {
        for c in 1..=8 {
            let spec = RectSpec::new(r, c).expect("positive");
            let by_engine = engine.is_heavy(&rect_partition(r, c))?;
            if by_engine != rect_is_heavy(spec) {
                return Err(fail(format!(
                    "r={r}, c={c}: engine heaviness {by_engine} vs parity {}",
                    rect_is_heavy(spec)
                )));
            }
        }
    }
    Ok("engine heaviness agrees with the parity test on all rectangles r,c <= 8".into())
}

fn check_shifted_mex(_: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51f7);
    for _ in 0..500 {
        let len = rng.gen_range(0..=16);
        let set: BTreeSet<u32> = (0..len).map(|_| rng.gen_range(0..48)).collect();
        let s: Vec<u32> = set.into_iter().collect();
        let k = rng.gen_range(1..=8);
        if shifted_mex(&s, k) != mex(&s) + k {
            return Err(fail(format!("shifted mex of {s:?} with k={k}")));
        }
    }
    Ok("mex({0..k-1} u (S+k)) = mex(S) + k on 500 random sets".into())
}

fn check_nim_mex_lemma(_: &Engine, _: &VerifyOptions) -> CheckOutcome {
    for k in 1..=10u32 {
        for r in k..=10 {
            for c in k..=10 {
                let mut set: Vec<u32> = (0..k).collect();
                set.extend((0..c - k).map(|cc| ((r - k) ^ cc) + k));
                set.extend((0..r - k).map(|rr| (rr ^ (c - k)) + k));
                let expected = ((c - k) ^ (r - k)) + k;
                if mex(&set) != expected {
                    return Err(fail(format!("lemma fails at r={r}, c={c}, k={k}")));
                }
            }
        }
    }
    Ok("((c-k) xor (r-k)) + k equals the constructed mex for 1 <= k <= r,c <= 10".into())
}

fn check_nimber_matrix(_: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let m = |i: u32, j: u32| ((i - 1) ^ (j - 1)) + 1;
    for i in 1..=64u32 {
        for j in 1..=64 {
            for k in 1..=64 {
                if (m(i, j) == k) != (m(k, i) == j) {
                    return Err(fail(format!("cyclic property fails at ({i},{j},{k})")));
                }
            }
        }
    }
    Ok("M(i,j)=k iff M(k,i)=j for all 1 <= i,j,k <= 64".into())
}

fn check_heavy_families(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let mut count = 0;
    for r in 1..=11u32 {
        for c in 1..=(12 - r) {
            let hook = heavy_family_witness(HeavyFamily::Hook { cols: c, rows: r })
                .expect("positive parameters");
            if !engine.is_heavy(&hook)? {
                return Err(fail(format!("hook {hook} is not heavy")));
            }
            count += 1;
            if c >= r {
                let stair = heavy_family_witness(HeavyFamily::Staircase { cols: c, rows: r })
                    .expect("cols >= rows");
                if !engine.is_heavy(&stair)? {
                    return Err(fail(format!("staircase {stair} is not heavy")));
                }
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} hooks and staircases with r + c <= 12 are all heavy"
    ))
}

fn check_upper_bound(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    for n in 1..=15 {
        for p in partitions_of(n, false)? {
            let g = engine.grundy_partition(&p)?;
            if g > longest_play(&p) {
                return Err(fail(format!(
                    "{p}: g={g} exceeds longest play {}",
                    longest_play(&p)
                )));
            }
        }
    }
    Ok("g <= longest play on every partition of n <= 15".into())
}

fn check_conjugate_invariance(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    // the engine canonicalizes, so the substantive route is the oracle,
    // which never does; both are asserted
    let mut oracle = Oracle::new();
    for n in 0..=15 {
        for p in partitions_of(n, false)? {
            let conj = p.conjugate();
            if engine.grundy_partition(&p)? != engine.grundy_partition(&conj)?
                || engine.misere_grundy_partition(&p)? != engine.misere_grundy_partition(&conj)?
            {
                return Err(fail(format!(
                    "engine values differ across conjugation at {p}"
                )));
            }
            let a = SumPosition::single_partition(p.clone());
            let b = SumPosition::single_partition(conj);
            if oracle.grundy(&a, Convention::Normal)? != oracle.grundy(&b, Convention::Normal)?
                || oracle.grundy(&a, Convention::Misere)?
                    != oracle.grundy(&b, Convention::Misere)?
            {
                return Err(fail(format!(
                    "oracle values differ across conjugation at {p}"
                )));
            }
        }
    }
    Ok("g and g- are conjugation-invariant (engine and oracle) for n <= 15".into())
}

fn check_oracle_equivalence(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let mut oracle = Oracle::new();
    let mut cases = 0;

    let mut partitions = Vec::new();
    for n in 0..=12 {
        partitions.extend(partitions_of(n, false)?);
    }
    for p in &partitions {
        let single = SumPosition::single_partition(p.clone());
        if engine.grundy(&single)? != oracle.grundy(&single, Convention::Normal)?
            || engine.misere_grundy(&single)? != oracle.grundy(&single, Convention::Misere)?
        {
            return Err(fail(format!("engine and oracle disagree on {single}")));
        }
        cases += 1;
    }

    let mut boxes = Vec::new();
    for d in 1..=3usize {
        let mut sides = vec![0u32; d];
        loop {
            boxes.push(Hyperrectangle::new(sides.clone()).expect("d >= 1"));
            let mut i = d;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if sides[i] < 4 {
                    sides[i] += 1;
                    break;
                }
                sides[i] = 0;
            }
            if sides.iter().all(|&s| s == 0) {
                break;
            }
        }
    }
    for h in &boxes {
        let single = SumPosition::single_hyperrect(h.clone());
        if engine.grundy(&single)? != oracle.grundy(&single, Convention::Normal)?
            || engine.misere_grundy(&single)? != oracle.grundy(&single, Convention::Misere)?
        {
            return Err(fail(format!("engine and oracle disagree on {single}")));
        }
        cases += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x07ac1e);
    for _ in 0..100 {
        let a = partitions[rng.gen_range(0..partitions.len())].clone();
        let b = partitions[rng.gen_range(0..partitions.len())].clone();
        let sum = SumPosition::Pnim(vec![a, b]);
        if engine.grundy(&sum)? != oracle.grundy(&sum, Convention::Normal)?
            || engine.misere_grundy(&sum)? != oracle.grundy(&sum, Convention::Misere)?
        {
            return Err(fail(format!("engine and oracle disagree on {sum}")));
        }
        cases += 1;
    }
    for _ in 0..100 {
        let a = boxes[rng.gen_range(0..boxes.len())].clone();
        let b = boxes[rng.gen_range(0..boxes.len())].clone();
        let sum = SumPosition::Rnim(vec![a, b]);
        if engine.grundy(&sum)? != oracle.grundy(&sum, Convention::Normal)?
            || engine.misere_grundy(&sum)? != oracle.grundy(&sum, Convention::Misere)?
        {
            return Err(fail(format!("engine and oracle disagree on {sum}")));
        }
        cases += 1;
    }
    Ok(format!(
        "engine equals oracle on {cases} positions (singles n <= 12, boxes d <= 3 sides <= 4, 200 random 2-component sums), both conventions"
    ))
}

fn check_nonzero_grundy(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    for n in 1..=15 {
        for p in partitions_of(n, false)? {
            if engine.grundy_partition(&p)? == 0 {
                return Err(fail(format!("nonempty {p} has Grundy value 0")));
            }
        }
    }
    Ok("only the terminal partition is a 0-position up to n = 15".into())
}

fn check_pet_shape(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let mut count = 0;
    for n in 0..=15 {
        for p in partitions_of(n, false)? {
            let pair = engine.grundy_pair(&SumPosition::single_partition(p.clone()))?;
            if !pair.is_pet_shaped() {
                return Err(fail(format!("{p} has non-pet pair {pair}")));
            }
            count += 1;
        }
    }
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            let h = Hyperrectangle::new(vec![a, b]).expect("d = 2");
            let pair = engine.grundy_pair(&SumPosition::single_hyperrect(h.clone()))?;
            if !pair.is_pet_shaped() {
                return Err(fail(format!("{h} has non-pet pair {pair}")));
            }
            count += 1;
        }
    }
    Ok(format!(
        "all {count} single components have pet-shaped pairs"
    ))
}

fn check_table1(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let rows: &[(&str, u32, u32)] = &[
        ("(2,2)+(4,3,2)+(1,1)", 1, 0),
        ("(1,0,2)+(2,3,4)+(4,4)", 0, 1),
        ("(1,2,3)+(2,2)", 5, 5),
        ("(1,2,3)+(3,2)", 0, 0),
    ];
    for &(text, g, g_minus) in rows {
        let pos: SumPosition = text
            .parse()
            .map_err(|e| fail(format!("parse {text}: {e}")))?;
        let got = GrundyPair::new(engine.grundy(&pos)?, engine.misere_grundy(&pos)?);
        if got != GrundyPair::new(g, g_minus) {
            return Err(fail(format!("{text}: got {got}, expected ({g},{g_minus})")));
        }
        if let SumPosition::Rnim(cs) = &pos {
            let formula = closed_forms::rnim_sum_grundy(cs).expect("nonempty");
            if formula != g {
                return Err(fail(format!(
                    "{text}: closed form {formula} vs expected {g}"
                )));
            }
        }
    }
    Ok("all four table rows reproduce exactly, engine and closed form".into())
}

fn rnim_components(max_dim: usize, max_side: u32) -> Vec<Hyperrectangle> {
    let mut out = Vec::new();
    for d in 1..=max_dim {
        let mut sides = vec![0u32; d];
        loop {
            out.push(Hyperrectangle::new(sides.clone()).expect("d >= 1"));
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
                sides[i] = 0;
            }
            if sides.iter().all(|&s| s == 0) {
                break;
            }
        }
    }
    out
}

fn check_tame_sum_rnim(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let comps = rnim_components(2, 4);
    let mut oracle = Oracle::new();
    let mut cases = 0;
    let mut check = |cs: Vec<Hyperrectangle>| -> Result<(), CheckFailure> {
        let values: Vec<u32> = cs
            .iter()
            .map(|h| engine.grundy_hyperrect(h))
            .collect::<Result<_, _>>()?;
        let predicted = misere_sum_pair(&values).expect("nonempty").g_minus;
        let sum = SumPosition::Rnim(cs);
        let actual = oracle.grundy(&sum, Convention::Misere)?;
        if predicted != actual {
            return Err(fail(format!(
                "{sum}: tame rule {predicted} vs oracle {actual}"
            )));
        }
        cases += 1;
        Ok(())
    };
    for i in 0..comps.len() {
        check(vec![comps[i].clone()])?;
        for j in i..comps.len() {
            check(vec![comps[i].clone(), comps[j].clone()])?;
            for k in j..comps.len() {
                check(vec![comps[i].clone(), comps[j].clone(), comps[k].clone()])?;
            }
        }
    }
    Ok(format!("tame-sum rule matches the misère oracle on all {cases} RNim sums of <= 3 components (d <= 2, sides <= 4)"))
}

fn check_tame_sum_pnim(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let mut pool = Vec::new();
    for n in 0..=8 {
        pool.extend(partitions_of(n, false)?);
    }
    let mut oracle = Oracle::new();
    let mut cases = 0;
    for i in 0..pool.len() {
        for j in i..pool.len() {
            let a = pool[i].clone();
            let b = pool[j].clone();
            let values = [engine.grundy_partition(&a)?, engine.grundy_partition(&b)?];
            let predicted = misere_sum_pair(&values).expect("nonempty").g_minus;
            let sum = SumPosition::Pnim(vec![a, b]);
            let actual = oracle.grundy(&sum, Convention::Misere)?;
            if predicted != actual {
                return Err(fail(format!(
                    "{sum}: tame rule {predicted} vs oracle {actual}"
                )));
            }
            cases += 1;
        }
    }
    Ok(format!(
        "tame-sum rule matches the misère oracle on all {cases} PNim pairs with n <= 8 per component"
    ))
}

fn check_misere_strategy_sg1(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    for n in 1..=15 {
        for p in partitions_of(n, false)? {
            let pos = SumPosition::single_partition(p.clone());
            let advice = best_move_misere(engine, &pos)?;
            let has_sg1_successor = p.pnim_moves().iter().any(sg1_member);
            if advice.winning != has_sg1_successor {
                return Err(fail(format!(
                    "{p}: winning={} but an sg1 successor exists={has_sg1_successor}",
                    advice.winning
                )));
            }
            if advice.winning {
                let SumPosition::Pnim(cs) = &advice.successor else {
                    unreachable!()
                };
                if !sg1_member(&cs[advice.descriptor.component]) {
                    return Err(fail(format!(
                        "{p}: winning move leaves a non-sg1 successor"
                    )));
                }
            }
        }
    }
    Ok("misère move choice lands in the g=1 interval exactly when possible, n <= 15".into())
}

/// Exhaustive adversarial play: the engine moves with `best_move_*`, the
/// opponent tries every reply. Winning is decided by the game itself (who
/// makes the last move), not by Grundy values.
struct Soundness<'a> {
    engine: &'a Engine,
    convention: Convention,
    engine_turn: std::collections::HashMap<Vec<Vec<u32>>, bool>,
    opponent_turn: std::collections::HashMap<Vec<Vec<u32>>, bool>,
}

impl<'a> Soundness<'a> {
    fn new(engine: &'a Engine, convention: Convention) -> Self {
        Soundness {
            engine,
            convention,
            engine_turn: Default::default(),
            opponent_turn: Default::default(),
        }
    }

    fn engine_wins_moving(&mut self, pos: &SumPosition) -> Result<bool, CheckFailure> {
        if pos.is_terminal() {
            // the engine cannot move: it loses under normal play and wins
            // under misère
            return Ok(self.convention == Convention::Misere);
        }
        let key = pos.raw_key();
        if let Some(&v) = self.engine_turn.get(&key) {
            return Ok(v);
        }
        let advice = match self.convention {
            Convention::Normal => best_move_normal(self.engine, pos)?,
            Convention::Misere => best_move_misere(self.engine, pos)?,
        };
        let result = self.engine_wins_waiting(&advice.successor)?;
        self.engine_turn.insert(key, result);
        Ok(result)
    }

    fn engine_wins_waiting(&mut self, pos: &SumPosition) -> Result<bool, CheckFailure> {
        if pos.is_terminal() {
            return Ok(self.convention == Convention::Normal);
        }
        let key = pos.raw_key();
        if let Some(&v) = self.opponent_turn.get(&key) {
            return Ok(v);
        }
        let mut result = true;
        for reply in pos.successors() {
            if !self.engine_wins_moving(&reply)? {
                result = false;
                break;
            }
        }
        self.opponent_turn.insert(key, result);
        Ok(result)
    }
}

fn soundness_spaces(engine: &Engine) -> Result<Vec<SumPosition>, CheckFailure> {
    let _ = engine;
    let mut starts = Vec::new();
    for n in 1..=8 {
        for p in partitions_of(n, false)? {
            starts.push(SumPosition::single_partition(p));
        }
    }
    let comps = rnim_components(2, 4);
    for i in 0..comps.len() {
        starts.push(SumPosition::single_hyperrect(comps[i].clone()));
        for j in i..comps.len() {
            starts.push(SumPosition::Rnim(vec![comps[i].clone(), comps[j].clone()]));
        }
    }
    Ok(starts)
}

fn check_soundness(engine: &Engine, convention: Convention) -> CheckOutcome {
    let mut checker = Soundness::new(engine, convention);
    let mut should_win = 0;
    for start in soundness_spaces(engine)? {
        let value = match convention {
            Convention::Normal => engine.grundy(&start)?,
            Convention::Misere => engine.misere_grundy(&start)?,
        };
        if value == 0 {
            continue;
        }
        should_win += 1;
        if !checker.engine_wins_moving(&start)? {
            return Err(fail(format!(
                "{start} is a win but the engine loses some line"
            )));
        }
    }
    Ok(format!(
        "the engine converts all {should_win} winnable starts against every reply"
    ))
}

fn check_soundness_normal(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    check_soundness(engine, Convention::Normal)
}

fn check_soundness_misere(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    check_soundness(engine, Convention::Misere)
}

fn golden_set(entries: &[&[u32]]) -> BTreeSet<Partition> {
    entries
        .iter()
        .map(|parts| Partition::new(parts.to_vec()).expect("golden entries are partitions"))
        .collect()
}

fn check_appendix_sg2(engine: &Engine, options: &VerifyOptions) -> CheckOutcome {
    let (bound, golden) = if options.deep {
        (26, golden_set(SG2_N26))
    } else {
        (15, golden_set(SG2_N15))
    };
    let report = enumerate_by_value(engine, 2, bound, true)?;
    let got: BTreeSet<Partition> = report.representatives.iter().cloned().collect();
    if got != golden {
        let missing: Vec<String> = golden.difference(&got).map(|p| p.to_string()).collect();
        let extra: Vec<String> = got.difference(&golden).map(|p| p.to_string()).collect();
        return Err(fail(format!(
            "g=2 set at n <= {bound} differs: missing {missing:?}, extra {extra:?}"
        )));
    }
    Ok(format!(
        "g=2 partitions up to n = {bound} match the {} listed classes",
        golden.len()
    ))
}

fn check_appendix_heavy(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let report = enumerate_heavy(engine, 8, true)?;
    let got: BTreeSet<Partition> = report.representatives.iter().cloned().collect();
    let golden = golden_set(HEAVY_N8);
    if got != golden {
        let missing: Vec<String> = golden.difference(&got).map(|p| p.to_string()).collect();
        let extra: Vec<String> = got.difference(&golden).map(|p| p.to_string()).collect();
        return Err(fail(format!(
            "heavy set at n <= 8 differs: missing {missing:?}, extra {extra:?}"
        )));
    }
    Ok(format!(
        "heavy partitions up to n = 8 match the {} listed classes",
        golden.len()
    ))
}

fn expect_verified(finding: &ClassFinding, what: &str) -> Result<(), CheckFailure> {
    match finding {
        ClassFinding::Verified { .. } => Ok(()),
        ClassFinding::Refuted { witness } => Err(fail(format!(
            "{what} refuted at {} {}",
            witness.position, witness.pair
        ))),
    }
}

fn check_cgh_pnim(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let report = cgh_audit(engine, AuditSpace::Partitions { max_n: 12 })?;
    expect_verified(&report.pet, "pet")?;
    expect_verified(&report.tame, "tame")?;
    expect_verified(&report.miserable, "miserable")?;
    expect_verified(&report.returnable, "returnable")?;
    match &report.forced {
        ClassFinding::Refuted { witness }
            if witness.position == "[2,2]"
                && witness.pair == GrundyPair::new(1, 0)
                && witness.move_to
                    == Some(("[2]".to_string(), GrundyPair::new(2, 2))) =>
        {
            Ok(format!(
                "pet/tame/miserable/returnable verified on {} positions; forced refuted by [2,2] -> [2], pairs (1,0) -> (2,2)",
                report.positions_checked
            ))
        }
        ClassFinding::Refuted { witness } => Err(fail(format!(
            "forced refuted, but by {} -> {:?} instead of [2,2] -> [2]",
            witness.position, witness.move_to
        ))),
        ClassFinding::Verified { .. } => {
            Err(fail("forced was verified; the known counterexample was missed".into()))
        }
    }
}

fn check_cgh_rnim(engine: &Engine, _: &VerifyOptions) -> CheckOutcome {
    let report = cgh_audit(
        engine,
        AuditSpace::Hyperrects {
            max_dim: 2,
            max_side: 5,
        },
    )?;
    expect_verified(&report.pet, "pet")?;
    expect_verified(&report.tame, "tame")?;
    expect_verified(&report.miserable, "miserable")?;
    expect_verified(&report.returnable, "returnable")?;
    match &report.forced {
        ClassFinding::Refuted { .. } => Ok(format!(
            "pet/tame/miserable/returnable verified on {} positions; forced refuted",
            report.positions_checked
        )),
        ClassFinding::Verified { .. } => Err(fail(
            "forced was verified; the known counterexample was missed".into(),
        )),
    }
}
