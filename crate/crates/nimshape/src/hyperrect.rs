//! Hyperrectangle positions and RNim move generation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::parse::{self, ParseError};
use crate::position::MoveError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperrectError {
    #[error("a hyperrectangle needs at least one side")]
    ZeroDimensional,
}

/// A d-dimensional box given by its side lengths. Any zero side makes the
/// position terminal: nothing of positive hypervolume is left to play in.
///
/// Dimension is part of the identity: `(2,1)` and `(2,1,1)` are distinct
/// positions even though their Grundy values agree. Sides are never sorted
/// or trimmed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperrectangle {
    sides: Vec<u32>,
}

impl Hyperrectangle {
    pub fn new(sides: Vec<u32>) -> Result<Self, HyperrectError> {
        if sides.is_empty() {
            return Err(HyperrectError::ZeroDimensional);
        }
        Ok(Hyperrectangle { sides })
    }

    pub fn sides(&self) -> &[u32] {
        &self.sides
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn is_terminal(&self) -> bool {
        self.sides.contains(&0)
    }

    pub fn side_sum(&self) -> u64 {
        self.sides.iter().map(|&k| k as u64).sum()
    }

    /// All positions one move away: lower exactly one side to any smaller
    /// nonnegative length. Terminal boxes have no moves, even though the
    /// coordinate reductions are syntactically possible.
    pub fn rnim_moves(&self) -> BTreeSet<Hyperrectangle> {
        let mut out = BTreeSet::new();
        if self.is_terminal() {
            return out;
        }
        for (i, &k) in self.sides.iter().enumerate() {
            for v in 0..k {
                let mut sides = self.sides.clone();
                sides[i] = v;
                out.insert(Hyperrectangle { sides });
            }
        }
        out
    }
}

impl fmt::Display for Hyperrectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.sides.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Hyperrectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Hyperrectangle {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse::hyperrect(s)
    }
}

/// An RNim move on one box: set side `side` (0-based) to `new_length`,
/// which must be strictly smaller than the current length.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct HyperrectMove {
    pub side: usize,
    pub new_length: u32,
}

impl HyperrectMove {
    pub fn apply(&self, h: &Hyperrectangle) -> Result<Hyperrectangle, MoveError> {
        if h.is_terminal() {
            return Err(MoveError::Illegal(
                "component is terminal (a side has length 0)".into(),
            ));
        }
        if self.side >= h.dim() {
            return Err(MoveError::Illegal(format!(
                "side index out of range: the box has {} sides",
                h.dim()
            )));
        }
        if self.new_length >= h.sides[self.side] {
            return Err(MoveError::Illegal(format!(
                "new length {} is not smaller than the current length {}",
                self.new_length, h.sides[self.side]
            )));
        }
        let mut sides = h.sides.clone();
        sides[self.side] = self.new_length;
        Ok(Hyperrectangle { sides })
    }

    /// The unique move turning `from` into `target`, if one exists.
    pub fn for_successor(from: &Hyperrectangle, target: &Hyperrectangle) -> Option<HyperrectMove> {
        if from.is_terminal() || from.dim() != target.dim() {
            return None;
        }
        let mut diff = None;
        for (i, (&a, &b)) in from.sides.iter().zip(&target.sides).enumerate() {
            if a != b {
                if diff.is_some() || b > a {
                    return None;
                }
                diff = Some(HyperrectMove {
                    side: i,
                    new_length: b,
                });
            }
        }
        diff
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(sides: &[u32]) -> Hyperrectangle {
        Hyperrectangle::new(sides.to_vec()).unwrap()
    }

    #[test]
    fn construction_and_terminality() {
        assert!(Hyperrectangle::new(vec![]).is_err());
        assert!(h(&[0, 3]).is_terminal());
        assert!(!h(&[1, 1, 1]).is_terminal());
        assert!(!h(&[2, 3]).is_terminal());
    }

    #[test]
    fn moves_of_small_boxes() {
        let moves: Vec<Hyperrectangle> = h(&[2, 2]).rnim_moves().into_iter().collect();
        assert_eq!(moves, vec![h(&[0, 2]), h(&[1, 2]), h(&[2, 0]), h(&[2, 1])]);
        assert!(h(&[0, 3]).rnim_moves().is_empty());
        assert!(h(&[5, 4, 2]).rnim_moves().contains(&h(&[5, 1, 2])));
    }

    // Each move changes exactly one coordinate, so all Σ k_i candidate
    // results are distinct; cross-check against pairwise dedup.
    #[test]
    fn move_count_is_side_sum() {
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                for c in 0..=4u32 {
                    let hr = h(&[a, b, c]);
                    let moves = hr.rnim_moves();
                    let expected = if hr.is_terminal() {
                        0
                    } else {
                        hr.side_sum() as usize
                    };
                    assert_eq!(moves.len(), expected, "{hr}");
                    let naive: Vec<_> = moves.iter().collect();
                    for (i, x) in naive.iter().enumerate() {
                        for y in &naive[i + 1..] {
                            assert_ne!(x, y);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn moves_strictly_decrease_side_sum() {
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let hr = h(&[a, b]);
                for m in hr.rnim_moves() {
                    assert!(m.side_sum() < hr.side_sum());
                }
            }
        }
    }

    #[test]
    fn move_descriptor_round_trip() {
        let from = h(&[3, 2, 4]);
        for target in from.rnim_moves() {
            let mv = HyperrectMove::for_successor(&from, &target).unwrap();
            assert_eq!(mv.apply(&from).unwrap(), target);
        }
        assert!(HyperrectMove::for_successor(&from, &from).is_none());
        assert!(HyperrectMove::for_successor(&h(&[0, 2]), &h(&[0, 1])).is_none());
    }

    #[test]
    fn apply_rejects_illegal() {
        assert!(HyperrectMove {
            side: 0,
            new_length: 2
        }
        .apply(&h(&[2, 2]))
        .is_err());
        assert!(HyperrectMove {
            side: 5,
            new_length: 0
        }
        .apply(&h(&[2, 2]))
        .is_err());
        assert!(HyperrectMove {
            side: 0,
            new_length: 0
        }
        .apply(&h(&[0, 2]))
        .is_err());
    }
}
