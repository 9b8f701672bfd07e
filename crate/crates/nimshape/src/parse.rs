//! The shared position-notation grammar and the human move notation.
//!
//! ```text
//! partition  := "[" ( term ("," term)* )? "]"     term := INT | INT "^" INT
//! hyperrect  := "(" INT ("," INT)* ")"
//! sum        := component ("+" component)*
//! ```
//!
//! Whitespace is insignificant everywhere. A zero exponent drops its part
//! (`[5^0,3^2]` is `[3,3]`). All components of a sum must come from the
//! same ruleset.

use thiserror::Error;

use crate::hyperrect::Hyperrectangle;
use crate::partition::{Axis, Partition, PartitionMove};
use crate::position::{ComponentMove, MoveDescriptor, MoveError, SumPosition};

/// Cap on the expanded part count, so exponent notation cannot be used as
/// a memory bomb.
const MAX_TOTAL_PARTS: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input where a position was expected")]
    Empty,
    #[error("unexpected character {found:?} (expected {expected})")]
    Unexpected { found: char, expected: String },
    #[error("unexpected end of input (expected {expected})")]
    UnexpectedEnd { expected: String },
    #[error("invalid integer {token:?}")]
    BadInt { token: String },
    #[error("partition parts must be positive (token {token:?})")]
    NonPositivePart { token: String },
    #[error("partition parts must be weakly decreasing (token {token:?} follows {prev})")]
    IncreasingParts { token: String, prev: u32 },
    #[error("a hyperrectangle needs at least one side")]
    EmptyTuple,
    #[error("hyperrectangle sides must be nonnegative integers (token {token:?})")]
    NegativeSide { token: String },
    #[error("a sum must not mix partitions and hyperrectangles")]
    MixedRulesets,
    #[error("partition expands to more than {MAX_TOTAL_PARTS} parts")]
    TooManyParts,
    #[error("trailing input {rest:?} after the position")]
    Trailing { rest: String },
    #[error("bad move command: {0}")]
    BadMove(String),
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(ParseError::Unexpected {
                found: c,
                expected: format!("{want:?}"),
            }),
            None => Err(ParseError::UnexpectedEnd {
                expected: format!("{want:?}"),
            }),
        }
    }

    fn integer(&mut self) -> Result<(u32, String), ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return match self.peek() {
                Some('-') => {
                    let mut token = String::from("-");
                    self.pos += 1;
                    while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                        token.push(c);
                        self.pos += 1;
                    }
                    Err(ParseError::NegativeSide { token })
                }
                Some(c) => Err(ParseError::Unexpected {
                    found: c,
                    expected: "an integer".into(),
                }),
                None => Err(ParseError::UnexpectedEnd {
                    expected: "an integer".into(),
                }),
            };
        }
        let token: String = self.chars[start..self.pos].iter().collect();
        let value = token.parse().map_err(|_| ParseError::BadInt {
            token: token.clone(),
        })?;
        Ok((value, token))
    }

    fn rest(&self) -> String {
        self.chars[self.pos..].iter().collect()
    }
}

pub fn partition(text: &str) -> Result<Partition, ParseError> {
    let mut cur = Cursor::new(text);
    let p = partition_at(&mut cur)?;
    finish(&cur)?;
    Ok(p)
}

pub fn hyperrect(text: &str) -> Result<Hyperrectangle, ParseError> {
    let mut cur = Cursor::new(text);
    let h = hyperrect_at(&mut cur)?;
    finish(&cur)?;
    Ok(h)
}

pub fn sum(text: &str) -> Result<SumPosition, ParseError> {
    let mut cur = Cursor::new(text);
    let pos = sum_at(&mut cur)?;
    finish(&cur)?;
    Ok(pos)
}

fn finish(cur: &Cursor) -> Result<(), ParseError> {
    if cur.peek().is_some() {
        return Err(ParseError::Trailing { rest: cur.rest() });
    }
    Ok(())
}

fn partition_at(cur: &mut Cursor) -> Result<Partition, ParseError> {
    cur.expect('[')?;
    let mut parts: Vec<u32> = Vec::new();
    if cur.peek() == Some(']') {
        cur.bump();
        return Ok(Partition::empty());
    }
    loop {
        let (value, token) = cur.integer()?;
        let count = if cur.peek() == Some('^') {
            cur.bump();
            cur.integer()?.0
        } else {
            1
        };
        if count > 0 {
            if value == 0 {
                return Err(ParseError::NonPositivePart { token });
            }
            if let Some(&prev) = parts.last() {
                if value > prev {
                    return Err(ParseError::IncreasingParts { token, prev });
                }
            }
            if parts.len() + count as usize > MAX_TOTAL_PARTS {
                return Err(ParseError::TooManyParts);
            }
            parts.extend(std::iter::repeat_n(value, count as usize));
        }
        match cur.bump() {
            Some(',') => {}
            Some(']') => break,
            Some(c) => {
                return Err(ParseError::Unexpected {
                    found: c,
                    expected: "',' or ']'".into(),
                })
            }
            None => {
                return Err(ParseError::UnexpectedEnd {
                    expected: "',' or ']'".into(),
                })
            }
        }
    }
    Ok(Partition::new(parts).expect("grammar enforces a valid partition"))
}

fn hyperrect_at(cur: &mut Cursor) -> Result<Hyperrectangle, ParseError> {
    cur.expect('(')?;
    if cur.peek() == Some(')') {
        return Err(ParseError::EmptyTuple);
    }
    let mut sides = Vec::new();
    loop {
        sides.push(cur.integer()?.0);
        match cur.bump() {
            Some(',') => {}
            Some(')') => break,
            Some(c) => {
                return Err(ParseError::Unexpected {
                    found: c,
                    expected: "',' or ')'".into(),
                })
            }
            None => {
                return Err(ParseError::UnexpectedEnd {
                    expected: "',' or ')'".into(),
                })
            }
        }
    }
    Ok(Hyperrectangle::new(sides).expect("at least one side was parsed"))
}

fn sum_at(cur: &mut Cursor) -> Result<SumPosition, ParseError> {
    let mut partitions: Vec<Partition> = Vec::new();
    let mut rects: Vec<Hyperrectangle> = Vec::new();
    loop {
        match cur.peek() {
            Some('[') => {
                if !rects.is_empty() {
                    return Err(ParseError::MixedRulesets);
                }
                partitions.push(partition_at(cur)?);
            }
            Some('(') => {
                if !partitions.is_empty() {
                    return Err(ParseError::MixedRulesets);
                }
                rects.push(hyperrect_at(cur)?);
            }
            Some(c) => {
                return Err(ParseError::Unexpected {
                    found: c,
                    expected: "'[' or '('".into(),
                })
            }
            None => return Err(ParseError::Empty),
        }
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            _ => break,
        }
    }
    if rects.is_empty() {
        Ok(SumPosition::Pnim(partitions))
    } else {
        Ok(SumPosition::Rnim(rects))
    }
}

/// A move as typed by a human, before it is checked against a position.
/// Indices are 1-based as written; `component` may be omitted for
/// single-component positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MoveCommand {
    Remove {
        axis: Axis,
        indices: Vec<usize>,
        component: Option<usize>,
    },
    SetSide {
        side: usize,
        new_length: u32,
        component: Option<usize>,
    },
}

/// Parses `rm rows 2,3 of 1`, `rm cols 1 of 2` or `set side 2 of 1 to 4`.
pub fn move_command(text: &str) -> Result<MoveCommand, ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let bad = |msg: &str| ParseError::BadMove(msg.to_string());
    match tokens.as_slice() {
        ["rm", axis_word, list, rest @ ..] => {
            let axis = match *axis_word {
                "rows" | "row" => Axis::Rows,
                "cols" | "col" | "columns" => Axis::Columns,
                other => return Err(bad(&format!("unknown axis {other:?} (rows or cols)"))),
            };
            let mut indices = Vec::new();
            for piece in list.split(',') {
                let idx: usize = piece.parse().map_err(|_| ParseError::BadInt {
                    token: piece.into(),
                })?;
                if idx == 0 {
                    return Err(bad("indices are 1-based"));
                }
                if indices.contains(&idx) {
                    return Err(bad(&format!("duplicate index {idx}")));
                }
                indices.push(idx);
            }
            indices.sort_unstable();
            let component = match rest {
                [] => None,
                ["of", c] => Some(
                    c.parse()
                        .map_err(|_| ParseError::BadInt { token: (*c).into() })?,
                ),
                _ => return Err(bad("expected 'of N' or nothing after the index list")),
            };
            Ok(MoveCommand::Remove {
                axis,
                indices,
                component,
            })
        }
        ["set", "side", side, rest @ ..] => {
            let side: usize = side.parse().map_err(|_| ParseError::BadInt {
                token: (*side).into(),
            })?;
            let (component, value) = match rest {
                ["to", v] => (None, v),
                ["of", c, "to", v] => (
                    Some(
                        c.parse()
                            .map_err(|_| ParseError::BadInt { token: (*c).into() })?,
                    ),
                    v,
                ),
                _ => return Err(bad("expected 'set side I [of C] to V'")),
            };
            let new_length: u32 = value.parse().map_err(|_| ParseError::BadInt {
                token: (*value).into(),
            })?;
            Ok(MoveCommand::SetSide {
                side,
                new_length,
                component,
            })
        }
        [] => Err(bad("empty move")),
        _ => Err(bad(
            "expected 'rm rows ...', 'rm cols ...' or 'set side ...'",
        )),
    }
}

impl MoveCommand {
    fn component(&self) -> Option<usize> {
        match self {
            MoveCommand::Remove { component, .. } | MoveCommand::SetSide { component, .. } => {
                *component
            }
        }
    }

    /// Turns the removal-phrased command into a retained-set descriptor
    /// against a concrete position.
    pub fn resolve(&self, pos: &SumPosition) -> Result<MoveDescriptor, MoveError> {
        let component = match self.component() {
            Some(c) if c >= 1 && c <= pos.num_components() => c - 1,
            Some(c) => return Err(MoveError::ComponentOutOfRange(c)),
            None if pos.num_components() == 1 => 0,
            None => {
                return Err(MoveError::Illegal(
                    "the position has several components; say which with 'of N'".into(),
                ))
            }
        };
        match (self, pos) {
            (MoveCommand::Remove { axis, indices, .. }, SumPosition::Pnim(cs)) => {
                let comp = &cs[component];
                let len = match axis {
                    Axis::Rows => comp.num_parts(),
                    Axis::Columns => comp.first_part() as usize,
                };
                if let Some(&bad) = indices.iter().find(|&&i| i > len) {
                    return Err(MoveError::Illegal(format!(
                        "index {bad} out of range: the {axis} axis has {len} lines"
                    )));
                }
                let kept: Vec<usize> = (0..len).filter(|i| !indices.contains(&(i + 1))).collect();
                let action = PartitionMove { axis: *axis, kept };
                Ok(MoveDescriptor {
                    component,
                    action: ComponentMove::Partition(action),
                })
            }
            (
                MoveCommand::SetSide {
                    side, new_length, ..
                },
                SumPosition::Rnim(_),
            ) => {
                if *side == 0 {
                    return Err(MoveError::Illegal("side indices are 1-based".into()));
                }
                let action = crate::hyperrect::HyperrectMove {
                    side: side - 1,
                    new_length: *new_length,
                };
                Ok(MoveDescriptor {
                    component,
                    action: ComponentMove::Hyperrect(action),
                })
            }
            _ => Err(MoveError::WrongRuleset),
        }
    }
}
