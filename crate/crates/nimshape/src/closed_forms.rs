//! Constant-time evaluators and predicates for the closed-form results:
//! rectangle and hyperrectangle values, the two-row formula, heaviness of
//! rectangles by binomial parity, the Grundy-value-1 characterization, and
//! constructors for the heavy partition families.
//!
//! Everything here is plain arithmetic; the verification suite and the
//! acceptance tests cross-check each formula against the engine or the
//! oracle.

use thiserror::Error;

use crate::engine::mex;
use crate::hyperrect::Hyperrectangle;
use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("rows and columns must be positive")]
    EmptyRect,
    #[error("the two-row formula needs c1 >= c2 >= 1 (got c1={c1}, c2={c2})")]
    UnorderedRows { c1: u32, c2: u32 },
    #[error("a sum needs at least one component")]
    EmptySum,
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
}

/// An r-by-c rectangular partition, `[c^r]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RectSpec {
    rows: u32,
    cols: u32,
}

impl RectSpec {
    pub fn new(rows: u32, cols: u32) -> Result<Self, ClosedFormError> {
        if rows == 0 || cols == 0 {
            return Err(ClosedFormError::EmptyRect);
        }
        Ok(RectSpec { rows, cols })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn partition(&self) -> Partition {
        Partition::new(vec![self.cols; self.rows as usize]).expect("rectangle is a partition")
    }
}

/// mex({0..k-1} ∪ {s+k : s ∈ S}), built directly from the shifted set.
/// Always equals mex(S) + k; the property tests assert the identity rather
/// than assuming it.
pub fn shifted_mex(s: &[u32], k: u32) -> u32 {
    let shifted: Vec<u32> = (0..k).chain(s.iter().map(|&x| x + k)).collect();
    mex(&shifted)
}

/// Grundy value of the rectangle `[c^r]`: ((r-1) XOR (c-1)) + 1.
pub fn rect_grundy(spec: RectSpec) -> u32 {
    ((spec.rows - 1) ^ (spec.cols - 1)) + 1
}

/// Grundy value of a single box: 0 when terminal, otherwise
/// 1 + XOR of (side - 1) over all sides.
pub fn hyperrect_grundy(h: &Hyperrectangle) -> u32 {
    if h.is_terminal() {
        return 0;
    }
    1 + h.sides().iter().fold(0, |acc, &k| acc ^ (k - 1))
}

/// Grundy value of an RNim sum: nim-sum of the per-box values.
pub fn rnim_sum_grundy(components: &[Hyperrectangle]) -> Result<u32, ClosedFormError> {
    if components.is_empty() {
        return Err(ClosedFormError::EmptySum);
    }
    Ok(components
        .iter()
        .map(hyperrect_grundy)
        .fold(0, |a, b| a ^ b))
}

/// Grundy value of `[c1,c2]` with c1 >= c2 >= 1: c1 - 1 when the rows are
/// equal and even, c1 + 1 otherwise.
pub fn two_row_grundy(c1: u32, c2: u32) -> Result<u32, ClosedFormError> {
    if c2 == 0 || c1 < c2 {
        return Err(ClosedFormError::UnorderedRows { c1, c2 });
    }
    if c1 == c2 && c1.is_multiple_of(2) {
        Ok(c1 - 1)
    } else {
        Ok(c1 + 1)
    }
}

/// Whether the rectangle attains the longest-play bound rows+cols-1.
///
/// This is the parity of binom(cols+rows-2, rows-1), decided by the bit
/// test: the binomial is odd exactly when the set bits of rows-1 are a
/// subset of those of cols+rows-2. Exact for any magnitude, no overflow.
pub fn rect_is_heavy(spec: RectSpec) -> bool {
    let m = spec.rows as u64 + spec.cols as u64 - 2;
    let n = spec.rows as u64 - 1;
    n & m == n
}

/// The partitions of Grundy value exactly 1: `[1]`, together with every
/// partition between `[r,r,r-1,...,2]` and `[r^r]` in Young's lattice for
/// some r >= 2. These are precisely the misère-losing single partitions.
///
/// The interval constraints force the first part and the part count to be
/// the same r, so r is read off the partition instead of being searched.
pub fn sg1_member(p: &Partition) -> bool {
    if p.parts() == [1] {
        return true;
    }
    let r = p.num_parts() as u32;
    if r < 2 || p.first_part() != r {
        return false;
    }
    p.parts().iter().enumerate().all(|(i, &part)| {
        // 1-based row index; rows below the first need part >= r - i + 2
        let i = i as u32 + 1;
        part <= r && (i == 1 || part + i >= r + 2)
    })
}

/// Families of partitions that attain (hooks, staircases) or are
/// conjectured to attain (shallow staircases, chopped rectangles) the
/// longest-play bound. The conjectured families are constructors only;
/// callers pair them with the engine's heaviness check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HeavyFamily {
    /// `[c, 1^(r-1)]`
    Hook { cols: u32, rows: u32 },
    /// `[c, c-1, ..., c-r+1]`; needs cols >= rows
    Staircase { cols: u32, rows: u32 },
    /// `[base+(count-1)*step, ..., base+step, base]`
    ShallowStaircase { base: u32, step: u32, count: u32 },
    /// the bottom `[a+1, a, ..., a-b+1]` of the interval under
    /// `[(a+1)^(b+1)]`; the rectangle itself must be heavy
    ChoppedRect { a: u32, b: u32 },
}

pub fn heavy_family_witness(family: HeavyFamily) -> Result<Partition, ClosedFormError> {
    let bad = |msg: String| ClosedFormError::InvalidParams(msg);
    match family {
        HeavyFamily::Hook { cols, rows } => {
            if cols == 0 || rows == 0 {
                return Err(bad(format!(
                    "hook needs positive cols and rows, got ({cols},{rows})"
                )));
            }
            let mut parts = vec![cols];
            parts.extend(std::iter::repeat_n(1, rows as usize - 1));
            Ok(Partition::new(parts).expect("hook is a partition"))
        }
        HeavyFamily::Staircase { cols, rows } => {
            if rows == 0 || cols < rows {
                return Err(bad(format!(
                    "staircase needs cols >= rows >= 1, got ({cols},{rows})"
                )));
            }
            let parts: Vec<u32> = (cols - rows + 1..=cols).rev().collect();
            Ok(Partition::new(parts).expect("staircase is a partition"))
        }
        HeavyFamily::ShallowStaircase { base, step, count } => {
            if base == 0 || step == 0 || count == 0 {
                return Err(bad(format!(
                    "shallow staircase needs positive parameters, got ({base},{step},{count})"
                )));
            }
            let parts: Vec<u32> = (0..count).rev().map(|j| base + j * step).collect();
            Ok(Partition::new(parts).expect("shallow staircase is a partition"))
        }
        HeavyFamily::ChoppedRect { a, b } => {
            if b == 0 || a < b {
                return Err(bad(format!(
                    "chopped rectangle needs a >= b >= 1, got ({a},{b})"
                )));
            }
            let rect = RectSpec::new(b + 1, a + 1).expect("sides are positive");
            if !rect_is_heavy(rect) {
                return Err(bad(format!(
                    "premise fails: the rectangle [{}^{}] is not heavy",
                    a + 1,
                    b + 1
                )));
            }
            heavy_family_witness(HeavyFamily::Staircase {
                cols: a + 1,
                rows: b + 1,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn h(sides: &[u32]) -> Hyperrectangle {
        Hyperrectangle::new(sides.to_vec()).unwrap()
    }

    fn rect(r: u32, c: u32) -> RectSpec {
        RectSpec::new(r, c).unwrap()
    }

    #[test]
    fn shifted_mex_examples() {
        assert_eq!(shifted_mex(&[], 1), 1);
        assert_eq!(shifted_mex(&[0, 1, 3], 2), 4);
        assert_eq!(shifted_mex(&[1], 3), 3);
    }

    #[test]
    fn rect_grundy_examples() {
        assert_eq!(rect_grundy(rect(1, 1)), 1);
        assert_eq!(rect_grundy(rect(2, 2)), 1);
        assert_eq!(rect_grundy(rect(2, 3)), 4);
        assert!(RectSpec::new(0, 3).is_err());
    }

    #[test]
    fn hyperrect_grundy_examples() {
        assert_eq!(hyperrect_grundy(&h(&[1, 2, 3])), 4);
        assert_eq!(hyperrect_grundy(&h(&[4, 4])), 1);
        assert_eq!(hyperrect_grundy(&h(&[0, 3])), 0);
    }

    #[test]
    fn rnim_sum_examples() {
        let sum = |sides: &[&[u32]]| {
            rnim_sum_grundy(&sides.iter().map(|s| h(s)).collect::<Vec<_>>()).unwrap()
        };
        assert_eq!(sum(&[&[2, 2], &[4, 3, 2], &[1, 1]]), 1);
        assert_eq!(sum(&[&[1, 0, 2], &[2, 3, 4], &[4, 4]]), 0);
        assert_eq!(sum(&[&[1, 2, 3], &[3, 2]]), 0);
        assert_eq!(rnim_sum_grundy(&[]), Err(ClosedFormError::EmptySum));
    }

    #[test]
    fn two_row_examples() {
        assert_eq!(two_row_grundy(4, 4), Ok(3));
        assert_eq!(two_row_grundy(3, 3), Ok(4));
        assert_eq!(two_row_grundy(5, 3), Ok(6));
        assert_eq!(
            two_row_grundy(3, 5),
            Err(ClosedFormError::UnorderedRows { c1: 3, c2: 5 })
        );
    }

    #[test]
    fn rect_heaviness_examples() {
        assert!(!rect_is_heavy(rect(2, 2)));
        assert!(rect_is_heavy(rect(2, 3)));
        for n in 1..=20 {
            assert!(rect_is_heavy(rect(1, n)));
        }
    }

    #[test]
    fn sg1_membership_examples() {
        assert!(sg1_member(&p(&[1])));
        assert!(sg1_member(&p(&[2, 2])));
        assert!(sg1_member(&p(&[3, 3, 2])));
        assert!(sg1_member(&p(&[3, 3, 3])));
        assert!(!sg1_member(&p(&[2, 1])));
        assert!(!sg1_member(&p(&[2])));
        assert!(!sg1_member(&Partition::empty()));
        assert!(!sg1_member(&p(&[3, 3, 1])));
        assert!(!sg1_member(&p(&[4, 3, 3, 2])));
    }

    #[test]
    fn family_witnesses() {
        let w = |f| heavy_family_witness(f).unwrap();
        assert_eq!(w(HeavyFamily::Hook { cols: 3, rows: 2 }), p(&[3, 1]));
        assert_eq!(w(HeavyFamily::Hook { cols: 1, rows: 1 }), p(&[1]));
        assert_eq!(w(HeavyFamily::Staircase { cols: 4, rows: 2 }), p(&[4, 3]));
        assert_eq!(
            w(HeavyFamily::Staircase { cols: 3, rows: 3 }),
            p(&[3, 2, 1])
        );
        assert_eq!(
            w(HeavyFamily::ShallowStaircase {
                base: 2,
                step: 2,
                count: 2
            }),
            p(&[4, 2])
        );
        assert_eq!(w(HeavyFamily::ChoppedRect { a: 2, b: 1 }), p(&[3, 2]));

        assert!(heavy_family_witness(HeavyFamily::Staircase { cols: 2, rows: 3 }).is_err());
        assert!(heavy_family_witness(HeavyFamily::Hook { cols: 0, rows: 1 }).is_err());
        // [2^2] is not heavy, so the chopped-rectangle premise fails
        assert!(heavy_family_witness(HeavyFamily::ChoppedRect { a: 1, b: 1 }).is_err());
    }

    proptest! {
        // the lemma: mex({0..k-1} ∪ (S+k)) = mex(S) + k
        #[test]
        fn shifted_mex_identity(
            s in proptest::collection::btree_set(0u32..64, 0..16),
            k in 1u32..=8,
        ) {
            let s: Vec<u32> = s.into_iter().collect();
            prop_assert_eq!(shifted_mex(&s, k), mex(&s) + k);
        }

        // bit-subset parity agrees with the nim-sum-vs-sum criterion
        #[test]
        fn heavy_rect_iff_xor_is_sum(r in 1u32..=64, c in 1u32..=64) {
            let spec = rect(r, c);
            prop_assert_eq!(
                rect_is_heavy(spec),
                ((r - 1) ^ (c - 1)) == (r - 1) + (c - 1)
            );
            prop_assert_eq!(rect_is_heavy(spec), rect_grundy(spec) == r + c - 1);
        }
    }
}
