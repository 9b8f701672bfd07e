//! Integer partitions, Young-diagram operations, and PNim move generation.
//!
//! A PNim move keeps a proper subsequence of the rows (or of the columns,
//! via the conjugate) of one Young diagram; the surviving rows close ranks,
//! which is automatic here because a subsequence of a weakly decreasing
//! list is again weakly decreasing.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::parse::{self, ParseError};
use crate::position::MoveError;

/// Errors from partition construction and enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("partition parts must be weakly decreasing ({prev} is followed by {next})")]
    Increasing { prev: u32, next: u32 },
    #[error("operation is undefined on the empty partition")]
    Empty,
    #[error("enumeration bound {requested} exceeds the supported maximum {max}")]
    BoundExceeded { requested: u32, max: u32 },
}

/// An integer partition: a weakly decreasing list of positive parts.
///
/// Parts are the row lengths of the Young diagram. The empty partition is
/// the unique terminal position of single-component PNim. `Ord` is
/// lexicographic on the parts list, so `[1,1] < [2]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(PartitionError::Increasing {
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of rows, `r`.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Largest part (number of columns), 0 for the empty partition.
    pub fn first_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The integer being partitioned (cell count of the diagram).
    pub fn order(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram: part `j` of the conjugate counts the
    /// rows of length at least `j`.
    pub fn conjugate(&self) -> Partition {
        let cols = self.first_part() as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            parts.push(self.parts.iter().take_while(|&&p| p >= j).count() as u32);
        }
        Partition { parts }
    }

    /// Dyson's rank, `|λ1 - r|`; undefined on the empty partition.
    pub fn rank(&self) -> Result<u32, PartitionError> {
        if self.is_empty() {
            return Err(PartitionError::Empty);
        }
        Ok(self.first_part().abs_diff(self.num_parts() as u32))
    }

    /// Young's lattice order: true when the diagram of `self` fits inside
    /// the diagram of `other` row by row.
    pub fn young_leq(&self, other: &Partition) -> bool {
        self.num_parts() <= other.num_parts()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// The lexicographically smaller of the partition and its conjugate.
    /// Grundy values are invariant under conjugation, so this is the memo
    /// key and the representative used for "up to conjugation" listings.
    pub fn canonical(&self) -> Partition {
        let conj = self.conjugate();
        if conj < *self {
            conj
        } else {
            self.clone()
        }
    }

    /// All positions reachable in one PNim move: every proper sub-multiset
    /// of the rows, and every proper sub-multiset of the columns (a row
    /// move on the conjugate, transposed back). Deduplicated; the empty
    /// partition has no moves.
    pub fn pnim_moves(&self) -> BTreeSet<Partition> {
        let mut out = BTreeSet::new();
        if self.is_empty() {
            return out;
        }
        for kept in proper_row_submultisets(&self.parts) {
            out.insert(Partition { parts: kept });
        }
        for kept in proper_row_submultisets(&self.conjugate().parts) {
            out.insert(Partition { parts: kept }.conjugate());
        }
        out
    }

    /// Exponent notation, e.g. `[3^2,2^3]` for `[3,3,2,2,2]`. Runs of
    /// length one print as a bare part.
    pub fn exponent_notation(&self) -> String {
        let mut out = String::from("[");
        let mut i = 0;
        while i < self.parts.len() {
            let v = self.parts[i];
            let mut m = 1;
            while i + m < self.parts.len() && self.parts[i + m] == v {
                m += 1;
            }
            if i > 0 {
                out.push(',');
            }
            if m == 1 {
                out.push_str(&v.to_string());
            } else {
                out.push_str(&format!("{v}^{m}"));
            }
            i += m;
        }
        out.push(']');
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse::partition(s)
    }
}

/// Proper sub-multisets of a weakly decreasing parts list. Choices run
/// over (multiplicity + 1) counts per distinct value instead of 2^r row
/// subsets, so flat partitions stay cheap.
fn proper_row_submultisets(parts: &[u32]) -> Vec<Vec<u32>> {
    let runs = run_lengths(parts);
    let mut out = Vec::new();
    let mut chosen = vec![0usize; runs.len()];
    loop {
        if chosen.iter().zip(&runs).any(|(&c, &(_, m))| c < m) {
            let mut sub = Vec::new();
            for (&c, &(v, _)) in chosen.iter().zip(&runs) {
                sub.extend(std::iter::repeat_n(v, c));
            }
            out.push(sub);
        }
        let mut i = 0;
        loop {
            if i == runs.len() {
                return out;
            }
            if chosen[i] < runs[i].1 {
                chosen[i] += 1;
                break;
            }
            chosen[i] = 0;
            i += 1;
        }
    }
}

fn run_lengths(parts: &[u32]) -> Vec<(u32, usize)> {
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &p in parts {
        match runs.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => runs.push((p, 1)),
        }
    }
    runs
}

/// Number of sub-multisets of the rows (including the full one), used by
/// the engine to refuse nodes whose move list alone would bust the budget.
pub(crate) fn submultiset_count(parts: &[u32]) -> u128 {
    run_lengths(parts)
        .iter()
        .fold(1u128, |acc, &(_, m)| acc.saturating_mul(m as u128 + 1))
}

/// Largest `n` accepted by [`partitions_of`]; p(64) already has 1.7M
/// entries, which is past anything the engine can evaluate anyway.
pub const MAX_ENUM_N: u32 = 64;

/// All partitions of exactly `n`, in reverse-lexicographic order:
/// `[5]`, `[4,1]`, `[3,2]`, `[3,1,1]`, ... With `up_to_conjugation`, only
/// the lexicographically smaller member of each conjugate pair is kept
/// (self-conjugate partitions always survive).
pub fn partitions_of(n: u32, up_to_conjugation: bool) -> Result<Vec<Partition>, PartitionError> {
    if n > MAX_ENUM_N {
        return Err(PartitionError::BoundExceeded {
            requested: n,
            max: MAX_ENUM_N,
        });
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fill(n, n, &mut acc, &mut out);
    if up_to_conjugation {
        out.retain(|p| *p <= p.conjugate());
    }
    Ok(out)
}

fn fill(remaining: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: acc.clone() });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        acc.push(part);
        fill(remaining - part, part, acc, out);
        acc.pop();
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Axis {
    Rows,
    Columns,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Rows => write!(f, "rows"),
            Axis::Columns => write!(f, "cols"),
        }
    }
}

/// A PNim move on one partition: keep exactly the listed row or column
/// indices (0-based, strictly increasing, a proper and possibly empty
/// subset of the axis range) and drop everything else.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct PartitionMove {
    pub axis: Axis,
    pub kept: Vec<usize>,
}

impl PartitionMove {
    pub fn apply(&self, p: &Partition) -> Result<Partition, MoveError> {
        let target = match self.axis {
            Axis::Rows => p.clone(),
            Axis::Columns => p.conjugate(),
        };
        let len = target.num_parts();
        if !self.kept.windows(2).all(|w| w[0] < w[1]) {
            return Err(MoveError::Illegal(
                "kept indices must be strictly increasing".into(),
            ));
        }
        if self.kept.last().is_some_and(|&i| i >= len) {
            return Err(MoveError::Illegal(format!(
                "index out of range: the {} axis has {} lines",
                self.axis, len
            )));
        }
        if self.kept.len() >= len {
            return Err(MoveError::Illegal(
                "a move must remove at least one row or column".into(),
            ));
        }
        let parts = self.kept.iter().map(|&i| target.parts[i]).collect();
        let result = Partition { parts };
        Ok(match self.axis {
            Axis::Rows => result,
            Axis::Columns => result.conjugate(),
        })
    }

    /// A canonical descriptor producing `target` from `from`: row moves are
    /// preferred over column moves and the kept indices are the earliest
    /// that work. Returns `None` when `target` is not reachable in one move.
    pub fn for_successor(from: &Partition, target: &Partition) -> Option<PartitionMove> {
        if let Some(kept) = earliest_kept(&from.parts, &target.parts) {
            return Some(PartitionMove {
                axis: Axis::Rows,
                kept,
            });
        }
        let kept = earliest_kept(&from.conjugate().parts, &target.conjugate().parts)?;
        Some(PartitionMove {
            axis: Axis::Columns,
            kept,
        })
    }
}

// Both lists are weakly decreasing, so `target` is a sub-multiset of
// `from` exactly when it is a subsequence; greedy matching picks the
// earliest indices.
fn earliest_kept(from: &[u32], target: &[u32]) -> Option<Vec<usize>> {
    let mut kept = Vec::with_capacity(target.len());
    let mut j = 0;
    for (i, &v) in from.iter().enumerate() {
        if j < target.len() && target[j] == v {
            kept.push(i);
            j += 1;
        }
    }
    if j == target.len() && kept.len() < from.len() {
        Some(kept)
    } else {
        None
    }
}
