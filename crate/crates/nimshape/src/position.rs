//! Disjunctive sums of one ruleset and the moves that act on them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::hyperrect::{HyperrectMove, Hyperrectangle};
use crate::parse::{self, ParseError};
use crate::partition::{Axis, Partition, PartitionMove};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Ruleset {
    Pnim,
    Rnim,
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ruleset::Pnim => write!(f, "pnim"),
            Ruleset::Rnim => write!(f, "rnim"),
        }
    }
}

impl FromStr for Ruleset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pnim" => Ok(Ruleset::Pnim),
            "rnim" => Ok(Ruleset::Rnim),
            other => Err(format!("unknown ruleset {other:?} (expected pnim or rnim)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("component {0} is out of range")]
    ComponentOutOfRange(usize),
    #[error("the move does not match the position's ruleset")]
    WrongRuleset,
    #[error("illegal move: {0}")]
    Illegal(String),
}

/// A disjunctive sum of components from a single ruleset. Mixing rulesets
/// in one sum is rejected at parse time. Component order is preserved for
/// move reporting; it has no effect on values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SumPosition {
    Pnim(Vec<Partition>),
    Rnim(Vec<Hyperrectangle>),
}

impl SumPosition {
    pub fn single_partition(p: Partition) -> Self {
        SumPosition::Pnim(vec![p])
    }

    pub fn single_hyperrect(h: Hyperrectangle) -> Self {
        SumPosition::Rnim(vec![h])
    }

    pub fn ruleset(&self) -> Ruleset {
        match self {
            SumPosition::Pnim(_) => Ruleset::Pnim,
            SumPosition::Rnim(_) => Ruleset::Rnim,
        }
    }

    pub fn num_components(&self) -> usize {
        match self {
            SumPosition::Pnim(cs) => cs.len(),
            SumPosition::Rnim(cs) => cs.len(),
        }
    }

    /// Terminal when no component has a move.
    pub fn is_terminal(&self) -> bool {
        match self {
            SumPosition::Pnim(cs) => cs.iter().all(Partition::is_empty),
            SumPosition::Rnim(cs) => cs.iter().all(Hyperrectangle::is_terminal),
        }
    }

    /// Every legal move with its resulting position, ordered by component
    /// index and then by the successor component (lexicographically
    /// ascending). Descriptors are canonical: row moves before column
    /// moves, earliest kept indices.
    pub fn moves(&self) -> Vec<(MoveDescriptor, SumPosition)> {
        let mut out = Vec::new();
        match self {
            SumPosition::Pnim(cs) => {
                for (i, p) in cs.iter().enumerate() {
                    for succ in p.pnim_moves() {
                        let mv = PartitionMove::for_successor(p, &succ)
                            .expect("generated successor is reachable");
                        let mut next = cs.clone();
                        next[i] = succ;
                        out.push((
                            MoveDescriptor {
                                component: i,
                                action: ComponentMove::Partition(mv),
                            },
                            SumPosition::Pnim(next),
                        ));
                    }
                }
            }
            SumPosition::Rnim(cs) => {
                for (i, h) in cs.iter().enumerate() {
                    for succ in h.rnim_moves() {
                        let mv = HyperrectMove::for_successor(h, &succ)
                            .expect("generated successor is reachable");
                        let mut next = cs.clone();
                        next[i] = succ;
                        out.push((
                            MoveDescriptor {
                                component: i,
                                action: ComponentMove::Hyperrect(mv),
                            },
                            SumPosition::Rnim(next),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Resulting positions only, in the same order as [`Self::moves`].
    pub fn successors(&self) -> Vec<SumPosition> {
        match self {
            SumPosition::Pnim(cs) => {
                let mut out = Vec::new();
                for (i, p) in cs.iter().enumerate() {
                    for succ in p.pnim_moves() {
                        let mut next = cs.clone();
                        next[i] = succ;
                        out.push(SumPosition::Pnim(next));
                    }
                }
                out
            }
            SumPosition::Rnim(cs) => {
                let mut out = Vec::new();
                for (i, h) in cs.iter().enumerate() {
                    for succ in h.rnim_moves() {
                        let mut next = cs.clone();
                        next[i] = succ;
                        out.push(SumPosition::Rnim(next));
                    }
                }
                out
            }
        }
    }

    pub fn apply(&self, mv: &MoveDescriptor) -> Result<SumPosition, MoveError> {
        match (self, &mv.action) {
            (SumPosition::Pnim(cs), ComponentMove::Partition(action)) => {
                let p = cs
                    .get(mv.component)
                    .ok_or(MoveError::ComponentOutOfRange(mv.component))?;
                let mut next = cs.clone();
                next[mv.component] = action.apply(p)?;
                Ok(SumPosition::Pnim(next))
            }
            (SumPosition::Rnim(cs), ComponentMove::Hyperrect(action)) => {
                let h = cs
                    .get(mv.component)
                    .ok_or(MoveError::ComponentOutOfRange(mv.component))?;
                let mut next = cs.clone();
                next[mv.component] = action.apply(h)?;
                Ok(SumPosition::Rnim(next))
            }
            _ => Err(MoveError::WrongRuleset),
        }
    }

    /// Raw component key, used by the oracle and the minimax checkers.
    pub fn raw_key(&self) -> Vec<Vec<u32>> {
        match self {
            SumPosition::Pnim(cs) => cs.iter().map(|p| p.parts().to_vec()).collect(),
            SumPosition::Rnim(cs) => cs.iter().map(|h| h.sides().to_vec()).collect(),
        }
    }

    /// Exponent-notation rendering for PNim sums; RNim sums print as usual.
    pub fn exponent_notation(&self) -> String {
        match self {
            SumPosition::Pnim(cs) => cs
                .iter()
                .map(Partition::exponent_notation)
                .collect::<Vec<_>>()
                .join("+"),
            SumPosition::Rnim(_) => self.to_string(),
        }
    }
}

impl fmt::Display for SumPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumPosition::Pnim(cs) => {
                for (i, p) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            SumPosition::Rnim(cs) => {
                for (i, h) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{h}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for SumPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SumPosition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse::sum(s)
    }
}

/// One move on a sum: which component, and what happens inside it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoveDescriptor {
    /// 0-based component index (printed 1-based).
    pub component: usize,
    pub action: ComponentMove,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ComponentMove {
    Partition(PartitionMove),
    Hyperrect(HyperrectMove),
}

impl MoveDescriptor {
    /// Human notation against the position the move is made from, phrased
    /// by what is removed: `rm rows 2,3 of 1`, `rm cols 1 of 2`,
    /// `set side 2 of 1 to 4`. Indices are 1-based.
    pub fn notation(&self, before: &SumPosition) -> String {
        match (&self.action, before) {
            (ComponentMove::Partition(mv), SumPosition::Pnim(cs)) => {
                let comp = &cs[self.component];
                let len = match mv.axis {
                    Axis::Rows => comp.num_parts(),
                    Axis::Columns => comp.first_part() as usize,
                };
                let removed: Vec<String> = (0..len)
                    .filter(|i| !mv.kept.contains(i))
                    .map(|i| (i + 1).to_string())
                    .collect();
                format!(
                    "rm {} {} of {}",
                    mv.axis,
                    removed.join(","),
                    self.component + 1
                )
            }
            (ComponentMove::Hyperrect(mv), _) => format!(
                "set side {} of {} to {}",
                mv.side + 1,
                self.component + 1,
                mv.new_length
            ),
            (ComponentMove::Partition(_), SumPosition::Rnim(_)) => {
                "rm <mismatched ruleset>".to_string()
            }
        }
    }
}
