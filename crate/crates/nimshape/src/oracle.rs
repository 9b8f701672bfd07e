//! Reference evaluator used to cross-check the engine.
//!
//! The oracle recurses over raw positions with no canonicalization, no
//! closed forms and no sum decomposition: a sum is one game whose moves
//! act on a single component, and the memo key is the raw component list
//! exactly as given. Anywhere both run, the oracle and the engine must
//! agree.

use std::collections::HashMap;

use crate::engine::{mex, Convention, EngineError};
use crate::position::{Ruleset, SumPosition};

type RawKey = (Ruleset, Vec<Vec<u32>>);

pub struct Oracle {
    normal: HashMap<RawKey, u32>,
    misere: HashMap<RawKey, u32>,
    limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::with_node_limit(crate::engine::DEFAULT_BUDGET)
    }

    pub fn with_node_limit(limit: usize) -> Self {
        Oracle {
            normal: HashMap::new(),
            misere: HashMap::new(),
            limit,
        }
    }

    pub fn nodes(&self) -> usize {
        self.normal.len() + self.misere.len()
    }

    pub fn grundy(&mut self, pos: &SumPosition, conv: Convention) -> Result<u32, EngineError> {
        let key = (pos.ruleset(), pos.raw_key());
        if let Some(&v) = self.map(conv).get(&key) {
            return Ok(v);
        }
        let succs = pos.successors();
        let value = if succs.is_empty() {
            conv.terminal_value()
        } else {
            let mut vals = Vec::with_capacity(succs.len());
            for s in &succs {
                vals.push(self.grundy(s, conv)?);
            }
            mex(&vals)
        };
        if self.nodes() >= self.limit {
            return Err(EngineError::BudgetExceeded { limit: self.limit });
        }
        self.map_mut(conv).insert(key, value);
        Ok(value)
    }

    fn map(&self, conv: Convention) -> &HashMap<RawKey, u32> {
        match conv {
            Convention::Normal => &self.normal,
            Convention::Misere => &self.misere,
        }
    }

    fn map_mut(&mut self, conv: Convention) -> &mut HashMap<RawKey, u32> {
        match conv {
            Convention::Normal => &mut self.normal,
            Convention::Misere => &mut self.misere,
        }
    }
}

/// One-shot evaluation with a fresh oracle.
pub fn oracle_grundy(pos: &SumPosition, conv: Convention) -> Result<u32, EngineError> {
    Oracle::new().grundy(pos, conv)
}
