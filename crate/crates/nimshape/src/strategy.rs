//! Misère evaluation of sums via the tame-sum rule, optimal move selection
//! under both conventions, and the Conway-Gurvich-Ho classification audit.

use thiserror::Error;

use crate::engine::{Engine, EngineError, GrundyPair};
use crate::hyperrect::Hyperrectangle;
use crate::partition::{partitions_of, PartitionError};
use crate::position::{MoveDescriptor, Ruleset, SumPosition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("the position is terminal; there is no move to pick")]
    TerminalPosition,
    #[error("a sum needs at least one component")]
    EmptyComponents,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Enumeration(#[from] PartitionError),
}

/// Misère pair of a disjunctive sum of PET components, given their NORMAL
/// Grundy values.
///
/// When every value is 0 or 1 the sum is a (1,0)-position on an odd number
/// of 1s and a (0,1)-position on an even number; otherwise it is (k,k)
/// with k the nim-sum of all values. Each component being pet means its
/// 0-positions are (0,1) and its 1-positions are (1,0), which is what the
/// tame-sum theorem counts.
pub fn misere_sum_pair(component_values: &[u32]) -> Result<GrundyPair, StrategyError> {
    if component_values.is_empty() {
        return Err(StrategyError::EmptyComponents);
    }
    if component_values.iter().all(|&v| v <= 1) {
        let ones = component_values.iter().filter(|&&v| v == 1).count();
        Ok(if ones % 2 == 1 {
            GrundyPair::new(1, 0)
        } else {
            GrundyPair::new(0, 1)
        })
    } else {
        let k = component_values.iter().fold(0, |a, &v| a ^ v);
        Ok(GrundyPair::new(k, k))
    }
}

/// A selected move: `winning` says whether the successor is losing for the
/// opponent under the convention in play. When the mover is already lost,
/// the advice still carries a legal move (the tie-broken first one) so a
/// session can continue.
#[derive(Clone, Debug)]
pub struct MoveAdvice {
    pub descriptor: MoveDescriptor,
    pub successor: SumPosition,
    pub winning: bool,
}

/// Best move under normal play: the first move (smallest component index,
/// then lexicographically smallest successor component) whose successor
/// has Grundy value 0. Without one, the same tie-broken first legal move,
/// flagged losing.
pub fn best_move_normal(engine: &Engine, pos: &SumPosition) -> Result<MoveAdvice, StrategyError> {
    if pos.is_terminal() {
        return Err(StrategyError::TerminalPosition);
    }
    // valuing the position first also trips the budget before any move
    // list is materialized
    let winnable = engine.grundy(pos)? != 0;
    best_move(pos, winnable, |succ| Ok(engine.grundy(succ)? == 0))
}

/// Best move under misère play: same tie-breaking, with the target test
/// being misère value 0 (componentwise normal values through the tame-sum
/// rule). For a single partition the winning successors are exactly the
/// Grundy-value-1 partitions.
pub fn best_move_misere(engine: &Engine, pos: &SumPosition) -> Result<MoveAdvice, StrategyError> {
    if pos.is_terminal() {
        return Err(StrategyError::TerminalPosition);
    }
    let winnable = engine.misere_grundy(pos)? != 0;
    best_move(pos, winnable, |succ| Ok(engine.misere_grundy(succ)? == 0))
}

fn best_move(
    pos: &SumPosition,
    winnable: bool,
    mut opponent_loses: impl FnMut(&SumPosition) -> Result<bool, StrategyError>,
) -> Result<MoveAdvice, StrategyError> {
    let moves = pos.moves();
    if winnable {
        for (descriptor, successor) in &moves {
            if opponent_loses(successor)? {
                return Ok(MoveAdvice {
                    descriptor: descriptor.clone(),
                    successor: successor.clone(),
                    winning: true,
                });
            }
        }
    }
    let (descriptor, successor) = moves.into_iter().next().expect("non-terminal has a move");
    Ok(MoveAdvice {
        descriptor,
        successor,
        winning: false,
    })
}

/// Bounded space of single-component positions for the CGH audit.
#[derive(Clone, Copy, Debug)]
pub enum AuditSpace {
    /// All partitions of order at most `max_n`.
    Partitions { max_n: u32 },
    /// All boxes with dimension at most `max_dim` and sides at most
    /// `max_side` (terminal ones included).
    Hyperrects { max_dim: usize, max_side: u32 },
}

impl AuditSpace {
    pub fn ruleset(&self) -> Ruleset {
        match self {
            AuditSpace::Partitions { .. } => Ruleset::Pnim,
            AuditSpace::Hyperrects { .. } => Ruleset::Rnim,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            AuditSpace::Partitions { max_n } => format!("partitions of n <= {max_n}"),
            AuditSpace::Hyperrects { max_dim, max_side } => {
                format!("hyperrectangles with d <= {max_dim}, sides <= {max_side}")
            }
        }
    }

    /// Positions in scan order: partitions by order then reverse-lex,
    /// boxes by dimension then lexicographic side tuples.
    fn positions(&self) -> Result<Vec<SumPosition>, StrategyError> {
        match *self {
            AuditSpace::Partitions { max_n } => {
                let mut out = Vec::new();
                for n in 0..=max_n {
                    for p in partitions_of(n, false)? {
                        out.push(SumPosition::single_partition(p));
                    }
                }
                Ok(out)
            }
            AuditSpace::Hyperrects { max_dim, max_side } => {
                let mut out = Vec::new();
                for d in 1..=max_dim {
                    let mut sides = vec![0u32; d];
                    loop {
                        out.push(SumPosition::single_hyperrect(
                            Hyperrectangle::new(sides.clone()).expect("d >= 1"),
                        ));
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
                Ok(out)
            }
        }
    }
}

/// A position/move pair exhibiting a class violation, with both pairs of
/// Grundy values spelled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub position: String,
    pub pair: GrundyPair,
    pub move_to: Option<(String, GrundyPair)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassFinding {
    /// The class held on every position of the sample.
    Verified { positions: usize },
    /// A concrete counterexample.
    Refuted { witness: Witness },
}

impl ClassFinding {
    pub fn is_verified(&self) -> bool {
        matches!(self, ClassFinding::Verified { .. })
    }
}

/// Outcome of auditing the five CGH classes on a bounded space.
#[derive(Clone, Debug)]
pub struct CghReport {
    pub space: String,
    pub positions_checked: usize,
    pub pet: ClassFinding,
    pub tame: ClassFinding,
    pub miserable: ClassFinding,
    pub returnable: ClassFinding,
    pub forced: ClassFinding,
}

/// Audits the CGH classes over all single-component positions of the
/// space. Pet-ness is checked both as "no (0,0)-position" and as the full
/// pair shape; forced-ness is scanned with successors in descending
/// lexicographic order, so on partitions the first counterexample found is
/// the classical [2,2] -> [2] one.
pub fn cgh_audit(engine: &Engine, space: AuditSpace) -> Result<CghReport, StrategyError> {
    let positions = space.positions()?;
    let pairs: Vec<GrundyPair> = positions
        .iter()
        .map(|p| engine.grundy_pair(p))
        .collect::<Result<_, _>>()?;
    let total = positions.len();

    let verified = || ClassFinding::Verified { positions: total };
    let single_witness = |i: usize| Witness {
        position: positions[i].to_string(),
        pair: pairs[i],
        move_to: None,
    };

    let mut pet = verified();
    let mut tame = verified();
    for (i, pair) in pairs.iter().enumerate() {
        if pet.is_verified() && !pair.is_pet_shaped() {
            pet = ClassFinding::Refuted {
                witness: single_witness(i),
            };
        }
        if tame.is_verified() && !pair.is_tame_shaped() {
            tame = ClassFinding::Refuted {
                witness: single_witness(i),
            };
        }
    }

    let is_01 = |p: &GrundyPair| (p.g, p.g_minus) == (0, 1);
    let is_10 = |p: &GrundyPair| (p.g, p.g_minus) == (1, 0);

    let mut miserable = verified();
    let mut returnable = verified();
    let mut forced = verified();

    for (i, pos) in positions.iter().enumerate() {
        let pair = pairs[i];
        let succs: Vec<SumPosition> = pos.successors();
        let mut succ_pairs = Vec::with_capacity(succs.len());
        for s in &succs {
            succ_pairs.push(engine.grundy_pair(s)?);
        }

        // miserable: be a (0,1)/(1,0) position, or reach none of them, or
        // reach both kinds
        if miserable.is_verified() && !is_01(&pair) && !is_10(&pair) {
            let reach_01 = succ_pairs.iter().any(is_01);
            let reach_10 = succ_pairs.iter().any(is_10);
            if reach_01 != reach_10 {
                let j = succ_pairs
                    .iter()
                    .position(|p| is_01(p) || is_10(p))
                    .expect("one kind is reachable");
                miserable = ClassFinding::Refuted {
                    witness: Witness {
                        position: pos.to_string(),
                        pair,
                        move_to: Some((succs[j].to_string(), succ_pairs[j])),
                    },
                };
            }
        }

        if is_01(&pair) || is_10(&pair) {
            // returnable: every move to a non-terminal y admits a return
            // move from y into the same class
            if returnable.is_verified() {
                'moves: for (j, y) in succs.iter().enumerate() {
                    if y.is_terminal() {
                        continue;
                    }
                    for z in y.successors() {
                        let zp = engine.grundy_pair(&z)?;
                        if (is_01(&pair) && is_01(&zp)) || (is_10(&pair) && is_10(&zp)) {
                            continue 'moves;
                        }
                    }
                    returnable = ClassFinding::Refuted {
                        witness: Witness {
                            position: pos.to_string(),
                            pair,
                            move_to: Some((y.to_string(), succ_pairs[j])),
                        },
                    };
                    break;
                }
            }

            // forced: every move out of (0,1) lands on (1,0) and vice
            // versa; scan descending so the witness is the largest successor
            if forced.is_verified() {
                for j in (0..succs.len()).rev() {
                    let flipped = if is_01(&pair) {
                        is_10(&succ_pairs[j])
                    } else {
                        is_01(&succ_pairs[j])
                    };
                    if !flipped {
                        forced = ClassFinding::Refuted {
                            witness: Witness {
                                position: pos.to_string(),
                                pair,
                                move_to: Some((succs[j].to_string(), succ_pairs[j])),
                            },
                        };
                        break;
                    }
                }
            }
        }
    }

    Ok(CghReport {
        space: space.describe(),
        positions_checked: total,
        pet,
        tame,
        miserable,
        returnable,
        forced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(s: &str) -> SumPosition {
        s.parse().unwrap()
    }

    #[test]
    fn tame_sum_pairs_from_table_rows() {
        assert_eq!(misere_sum_pair(&[1, 1, 1]).unwrap(), GrundyPair::new(1, 0));
        assert_eq!(misere_sum_pair(&[0, 1, 1]).unwrap(), GrundyPair::new(0, 1));
        assert_eq!(misere_sum_pair(&[4, 1]).unwrap(), GrundyPair::new(5, 5));
        assert_eq!(misere_sum_pair(&[4, 4]).unwrap(), GrundyPair::new(0, 0));
        assert_eq!(misere_sum_pair(&[0]).unwrap(), GrundyPair::new(0, 1));
        assert_eq!(misere_sum_pair(&[]), Err(StrategyError::EmptyComponents));
    }

    #[test]
    fn normal_best_moves() {
        let e = Engine::new();

        // equalize two Nim piles
        let advice = best_move_normal(&e, &sum("[3]+[2]")).unwrap();
        assert!(advice.winning);
        assert_eq!(advice.successor.to_string(), "[2]+[2]");
        assert_eq!(
            advice.descriptor.notation(&sum("[3]+[2]")),
            "rm cols 3 of 1"
        );

        // single [2,2] has value 1; the winning move empties it
        let advice = best_move_normal(&e, &sum("[2,2]")).unwrap();
        assert!(advice.winning);
        assert_eq!(advice.successor.to_string(), "[]");

        // XOR is already 0: a losing position still yields a legal move
        let advice = best_move_normal(&e, &sum("[3]+[3]")).unwrap();
        assert!(!advice.winning);
        assert_eq!(advice.descriptor.component, 0);

        let advice = best_move_normal(&e, &sum("(5,4,2)+(2,3)")).unwrap();
        assert!(advice.winning);
        assert_eq!(e.grundy(&advice.successor).unwrap(), 0);

        assert_eq!(
            best_move_normal(&e, &sum("[]")).unwrap_err(),
            StrategyError::TerminalPosition
        );
    }

    #[test]
    fn misere_best_moves() {
        let e = Engine::new();

        // [1] is the unique misère-losing successor of [3]
        let advice = best_move_misere(&e, &sum("[3]")).unwrap();
        assert!(advice.winning);
        assert_eq!(advice.successor.to_string(), "[1]");

        // from [4,3] the first winning successor in lex order is [1]
        let advice = best_move_misere(&e, &sum("[4,3]")).unwrap();
        assert!(advice.winning);
        assert_eq!(advice.successor.to_string(), "[1]");
        assert!(crate::closed_forms::sg1_member(match &advice.successor {
            SumPosition::Pnim(cs) => &cs[0],
            _ => unreachable!(),
        }));

        // every move from [1] loses under misère
        let advice = best_move_misere(&e, &sum("[1]")).unwrap();
        assert!(!advice.winning);
        assert_eq!(advice.successor.to_string(), "[]");
    }

    #[test]
    fn audit_finds_the_forced_witness() {
        let e = Engine::new();
        let report = cgh_audit(&e, AuditSpace::Partitions { max_n: 6 }).unwrap();
        assert!(report.pet.is_verified());
        assert!(report.tame.is_verified());
        assert!(report.miserable.is_verified());
        assert!(report.returnable.is_verified());
        match &report.forced {
            ClassFinding::Refuted { witness } => {
                assert_eq!(witness.position, "[2,2]");
                assert_eq!(witness.pair, GrundyPair::new(1, 0));
                assert_eq!(
                    witness.move_to,
                    Some(("[2]".to_string(), GrundyPair::new(2, 2)))
                );
            }
            other => panic!("forced should be refuted, got {other:?}"),
        }
    }

    #[test]
    fn audit_covers_hyperrects() {
        let e = Engine::new();
        let report = cgh_audit(
            &e,
            AuditSpace::Hyperrects {
                max_dim: 2,
                max_side: 3,
            },
        )
        .unwrap();
        assert_eq!(report.positions_checked, 4 + 16);
        assert!(report.pet.is_verified());
        assert!(report.returnable.is_verified());
        match &report.forced {
            ClassFinding::Refuted { witness } => {
                assert_eq!(witness.position, "(2,2)");
                assert_eq!(
                    witness.move_to,
                    Some(("(2,1)".to_string(), GrundyPair::new(2, 2)))
                );
            }
            other => panic!("forced should be refuted, got {other:?}"),
        }
    }
}
