//! Memoized normal and misère Grundy evaluation, plus the persistent
//! value cache.
//!
//! Component values come from mex recursion over the move sets. Partition
//! memo keys are canonicalized to the lexicographically smaller of the
//! partition and its conjugate (the values agree); hyperrectangle keys are
//! the raw side tuples. Sums decompose: normal play XORs component values
//! by the Sprague-Grundy theorem, misère play goes through the tame-sum
//! rule in [`crate::strategy`], which is valid because every single
//! component of these games is pet.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use dashmap::DashMap;
use thiserror::Error;

use crate::hyperrect::Hyperrectangle;
use crate::partition::{submultiset_count, Partition};
use crate::position::{Ruleset, SumPosition};
use crate::strategy;

/// Smallest nonnegative integer missing from `values`.
///
/// mex(S) never exceeds |S|, so a |S|+1 presence bitmap is enough; larger
/// values cannot influence the result.
pub fn mex(values: &[u32]) -> u32 {
    let n = values.len();
    let mut seen = vec![false; n + 1];
    for &v in values {
        if (v as usize) <= n {
            seen[v as usize] = true;
        }
    }
    seen.iter()
        .position(|&s| !s)
        .expect("bitmap has a free slot") as u32
}

/// Normal and misère Grundy values of one position.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrundyPair {
    pub g: u32,
    pub g_minus: u32,
}

impl GrundyPair {
    pub fn new(g: u32, g_minus: u32) -> Self {
        GrundyPair { g, g_minus }
    }

    /// Pet games only ever produce (0,1)-, (1,0)- and (k,k)-positions
    /// with k >= 2.
    pub fn is_pet_shaped(&self) -> bool {
        matches!((self.g, self.g_minus), (0, 1) | (1, 0)) || (self.g == self.g_minus && self.g >= 2)
    }

    /// Tame games additionally allow (0,0) and (1,1).
    pub fn is_tame_shaped(&self) -> bool {
        matches!((self.g, self.g_minus), (0, 1) | (1, 0)) || self.g == self.g_minus
    }
}

impl std::fmt::Display for GrundyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.g, self.g_minus)
    }
}

impl std::fmt::Debug for GrundyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Convention {
    Normal,
    Misere,
}

impl Convention {
    /// Terminal positions are worth 0 under normal play and 1 under misère.
    pub fn terminal_value(self) -> u32 {
        match self {
            Convention::Normal => 0,
            Convention::Misere => 1,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("evaluation budget of {limit} memo entries exceeded")]
    BudgetExceeded { limit: usize },
    #[error("heaviness is undefined on the empty partition")]
    EmptyPartition,
}

#[derive(Clone, Copy, Default)]
struct Slot {
    g: Option<u32>,
    g_minus: Option<u32>,
}

/// Concurrent map from canonical position key to its known Grundy values,
/// tagged with the ruleset the keys belong to.
///
/// Each value is write-once: racing writers recompute the same pure value,
/// and the first insert wins. Readers never block writers of other keys.
pub struct MemoTable {
    ruleset: Ruleset,
    slots: DashMap<Vec<u32>, Slot>,
}

impl MemoTable {
    pub fn new(ruleset: Ruleset) -> Self {
        MemoTable {
            ruleset,
            slots: DashMap::new(),
        }
    }

    pub fn ruleset(&self) -> Ruleset {
        self.ruleset
    }

    /// Number of distinct position keys.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    fn value(&self, key: &[u32], conv: Convention) -> Option<u32> {
        self.slots.get(key).and_then(|slot| match conv {
            Convention::Normal => slot.g,
            Convention::Misere => slot.g_minus,
        })
    }

    /// Insert-if-absent; returns true when a value was newly written.
    fn record(&self, key: Vec<u32>, conv: Convention, value: u32) -> bool {
        let mut slot = self.slots.entry(key).or_default();
        let cell = match conv {
            Convention::Normal => &mut slot.g,
            Convention::Misere => &mut slot.g_minus,
        };
        if cell.is_none() {
            *cell = Some(value);
            true
        } else {
            false
        }
    }

    /// All entries sorted by key: `(key, g, g_minus)`.
    pub fn entries(&self) -> Vec<(Vec<u32>, Option<u32>, Option<u32>)> {
        let mut out: Vec<_> = self
            .slots
            .iter()
            .map(|e| (e.key().clone(), e.value().g, e.value().g_minus))
            .collect();
        out.sort();
        out
    }

    fn key_notation(&self, key: &[u32]) -> String {
        match self.ruleset {
            Ruleset::Pnim => Partition::new(key.to_vec())
                .expect("memo keys are valid partitions")
                .to_string(),
            Ruleset::Rnim => Hyperrectangle::new(key.to_vec())
                .expect("memo keys are valid boxes")
                .to_string(),
        }
    }

    /// Writes the cache file: a `nimshape-cache v1 <ruleset>` header, then
    /// one sorted line per key, `<notation>\t<g>\t<g_minus>` with the last
    /// field empty when the misère value is unknown. Keys for which only
    /// the misère value is known are skipped (the line format has no slot
    /// for a missing normal value); the cache is advisory either way.
    /// Returns the number of lines written.
    pub fn save(&self, path: &Path) -> Result<usize, CacheError> {
        let mut file = BufWriter::new(File::create(path)?);
        let n = self.save_to(&mut file)?;
        file.flush()?;
        Ok(n)
    }

    pub fn save_to(&self, w: &mut dyn Write) -> Result<usize, CacheError> {
        writeln!(w, "nimshape-cache {CACHE_VERSION} {}", self.ruleset)?;
        let mut written = 0;
        for (key, g, g_minus) in self.entries() {
            let Some(g) = g else { continue };
            let gm = g_minus.map(|v| v.to_string()).unwrap_or_default();
            writeln!(w, "{}\t{}\t{}", self.key_notation(&key), g, gm)?;
            written += 1;
        }
        Ok(written)
    }

    /// Reads a cache file, validating the header version and ruleset tag.
    /// Keys are canonicalized on the way in; two lines that disagree about
    /// one key are reported as corruption with the line number.
    pub fn load(path: &Path) -> Result<MemoTable, CacheError> {
        Self::load_from(BufReader::new(File::open(path)?))
    }

    pub fn load_from(reader: impl BufRead) -> Result<MemoTable, CacheError> {
        let mut lines = reader.lines();
        let header = lines.next().ok_or(CacheError::MissingHeader)??;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (magic, version, ruleset) = match fields.as_slice() {
            [m, v, r] => (*m, *v, *r),
            _ => {
                return Err(CacheError::BadHeader {
                    found: header.clone(),
                })
            }
        };
        if magic != "nimshape-cache" {
            return Err(CacheError::BadHeader {
                found: header.clone(),
            });
        }
        if version != CACHE_VERSION {
            return Err(CacheError::VersionMismatch {
                found: version.to_string(),
            });
        }
        let ruleset: Ruleset = ruleset.parse().map_err(|_| CacheError::BadHeader {
            found: header.clone(),
        })?;
        let table = MemoTable::new(ruleset);
        for (idx, line) in lines.enumerate() {
            let line = line?;
            let lineno = idx + 2;
            if line.is_empty() {
                continue;
            }
            let corrupt = |reason: &str| CacheError::CorruptLine {
                line: lineno,
                reason: reason.to_string(),
            };
            let mut fields = line.split('\t');
            let (notation, g_text, gm_text) =
                match (fields.next(), fields.next(), fields.next(), fields.next()) {
                    (Some(a), Some(b), Some(c), None) => (a, b, c),
                    _ => return Err(corrupt("expected 3 tab-separated fields")),
                };
            let key = match ruleset {
                Ruleset::Pnim => crate::parse::partition(notation)
                    .map_err(|e| corrupt(&e.to_string()))?
                    .canonical()
                    .parts()
                    .to_vec(),
                Ruleset::Rnim => crate::parse::hyperrect(notation)
                    .map_err(|e| corrupt(&e.to_string()))?
                    .sides()
                    .to_vec(),
            };
            let g: u32 = g_text.parse().map_err(|_| corrupt("bad normal value"))?;
            let g_minus: Option<u32> = if gm_text.is_empty() {
                None
            } else {
                Some(gm_text.parse().map_err(|_| corrupt("bad misère value"))?)
            };
            let mut slot = table.slots.entry(key).or_default();
            if slot.g.is_some_and(|old| old != g)
                || matches!((slot.g_minus, g_minus), (Some(a), Some(b)) if a != b)
            {
                return Err(corrupt(
                    "conflicts with an earlier entry for the same position",
                ));
            }
            slot.g = Some(g);
            if g_minus.is_some() {
                slot.g_minus = g_minus;
            }
        }
        Ok(table)
    }

    pub fn load_expecting(path: &Path, ruleset: Ruleset) -> Result<MemoTable, CacheError> {
        let table = Self::load(path)?;
        if table.ruleset != ruleset {
            return Err(CacheError::RulesetMismatch {
                expected: ruleset,
                found: table.ruleset,
            });
        }
        Ok(table)
    }
}

pub const CACHE_VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("cache file is empty (missing header)")]
    MissingHeader,
    #[error("bad cache header {found:?} (expected \"nimshape-cache {CACHE_VERSION} <ruleset>\")")]
    BadHeader { found: String },
    #[error("unsupported cache version {found:?} (this build reads {CACHE_VERSION})")]
    VersionMismatch { found: String },
    #[error("cache is tagged {found}, expected {expected}")]
    RulesetMismatch { expected: Ruleset, found: Ruleset },
    #[error("corrupt cache entry on line {line}: {reason}")]
    CorruptLine { line: usize, reason: String },
}

/// Default evaluation budget: 10^7 memo insertions.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Memoized Grundy evaluator for both rulesets.
///
/// All methods take `&self`; evaluation of disjoint positions may run in
/// parallel against the shared tables. Exceeding the insertion budget is
/// an error, never a wrong value, and partial tables stay valid.
pub struct Engine {
    pnim: MemoTable,
    rnim: MemoTable,
    limit: usize,
    inserted: AtomicUsize,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_BUDGET)
    }

    pub fn with_budget(limit: usize) -> Self {
        Engine {
            pnim: MemoTable::new(Ruleset::Pnim),
            rnim: MemoTable::new(Ruleset::Rnim),
            limit,
            inserted: AtomicUsize::new(0),
        }
    }

    pub fn budget_limit(&self) -> usize {
        self.limit
    }

    pub fn entries_inserted(&self) -> usize {
        self.inserted.load(Ordering::Relaxed)
    }

    pub fn pnim_table(&self) -> &MemoTable {
        &self.pnim
    }

    pub fn rnim_table(&self) -> &MemoTable {
        &self.rnim
    }

    fn table(&self, ruleset: Ruleset) -> &MemoTable {
        match ruleset {
            Ruleset::Pnim => &self.pnim,
            Ruleset::Rnim => &self.rnim,
        }
    }

    /// Normal Sprague-Grundy value: components by memoized mex recursion,
    /// sums by nim-addition.
    pub fn grundy(&self, pos: &SumPosition) -> Result<u32, EngineError> {
        match pos {
            SumPosition::Pnim(cs) => {
                let mut acc = 0;
                for p in cs {
                    acc ^= self.grundy_partition(p)?;
                }
                Ok(acc)
            }
            SumPosition::Rnim(cs) => {
                let mut acc = 0;
                for h in cs {
                    acc ^= self.grundy_hyperrect(h)?;
                }
                Ok(acc)
            }
        }
    }

    /// Misère Grundy value. Single components recurse directly with
    /// terminals worth 1; sums combine the components' NORMAL values
    /// through the tame-sum rule, which applies because every component
    /// game here is pet.
    pub fn misere_grundy(&self, pos: &SumPosition) -> Result<u32, EngineError> {
        match pos {
            SumPosition::Pnim(cs) if cs.len() == 1 => self.misere_grundy_partition(&cs[0]),
            SumPosition::Rnim(cs) if cs.len() == 1 => self.misere_grundy_hyperrect(&cs[0]),
            _ if pos.num_components() == 0 => Ok(Convention::Misere.terminal_value()),
            SumPosition::Pnim(cs) => {
                let mut values = Vec::with_capacity(cs.len());
                for p in cs {
                    values.push(self.grundy_partition(p)?);
                }
                Ok(strategy::misere_sum_pair(&values)
                    .expect("components are nonempty")
                    .g_minus)
            }
            SumPosition::Rnim(cs) => {
                let mut values = Vec::with_capacity(cs.len());
                for h in cs {
                    values.push(self.grundy_hyperrect(h)?);
                }
                Ok(strategy::misere_sum_pair(&values)
                    .expect("components are nonempty")
                    .g_minus)
            }
        }
    }

    /// Both values at once. A single component must land in the pet shape
    /// ((0,1), (1,0) or (k,k) with k >= 2); anything else is an engine bug
    /// and panics.
    pub fn grundy_pair(&self, pos: &SumPosition) -> Result<GrundyPair, EngineError> {
        let pair = GrundyPair::new(self.grundy(pos)?, self.misere_grundy(pos)?);
        if pos.num_components() == 1 {
            assert!(
                pair.is_pet_shaped(),
                "engine bug: single component {pos} has non-pet pair {pair}"
            );
        }
        Ok(pair)
    }

    pub fn grundy_partition(&self, p: &Partition) -> Result<u32, EngineError> {
        self.eval(
            Ruleset::Pnim,
            p.canonical().parts().to_vec(),
            Convention::Normal,
        )
    }

    pub fn misere_grundy_partition(&self, p: &Partition) -> Result<u32, EngineError> {
        self.eval(
            Ruleset::Pnim,
            p.canonical().parts().to_vec(),
            Convention::Misere,
        )
    }

    pub fn grundy_hyperrect(&self, h: &Hyperrectangle) -> Result<u32, EngineError> {
        self.eval(Ruleset::Rnim, h.sides().to_vec(), Convention::Normal)
    }

    pub fn misere_grundy_hyperrect(&self, h: &Hyperrectangle) -> Result<u32, EngineError> {
        self.eval(Ruleset::Rnim, h.sides().to_vec(), Convention::Misere)
    }

    /// A partition is heavy when its Grundy value equals the longest-play
    /// length.
    pub fn is_heavy(&self, p: &Partition) -> Result<bool, EngineError> {
        if p.is_empty() {
            return Err(EngineError::EmptyPartition);
        }
        Ok(self.grundy_partition(p)? == longest_play(p))
    }

    /// Merges a cache file into the matching table; returns the number of
    /// loaded keys. Values must agree with anything already computed.
    pub fn load_cache(&self, path: &Path) -> Result<usize, CacheError> {
        let loaded = MemoTable::load(path)?;
        let table = self.table(loaded.ruleset);
        let entries = loaded.entries();
        let count = entries.len();
        for (key, g, g_minus) in entries {
            if let Some(existing) = table.value(&key, Convention::Normal) {
                if Some(existing) != g {
                    return Err(CacheError::CorruptLine {
                        line: 0,
                        reason: format!(
                            "loaded value for {} disagrees with the computed one",
                            loaded.key_notation(&key)
                        ),
                    });
                }
            }
            if let Some(g) = g {
                if table.record(key.clone(), Convention::Normal, g) {
                    self.inserted.fetch_add(1, Ordering::Relaxed);
                }
            }
            if let Some(gm) = g_minus {
                if let Some(existing) = table.value(&key, Convention::Misere) {
                    if existing != gm {
                        return Err(CacheError::CorruptLine {
                            line: 0,
                            reason: format!(
                                "loaded misère value for {} disagrees with the computed one",
                                loaded.key_notation(&key)
                            ),
                        });
                    }
                } else if table.record(key, Convention::Misere, gm) {
                    self.inserted.fetch_add(1, Ordering::Relaxed);
                }
            }
        }
        Ok(count)
    }

    pub fn save_cache(&self, ruleset: Ruleset, path: &Path) -> Result<usize, CacheError> {
        self.table(ruleset).save(path)
    }

    fn record(
        &self,
        ruleset: Ruleset,
        key: Vec<u32>,
        conv: Convention,
        value: u32,
    ) -> Result<(), EngineError> {
        if self.inserted.load(Ordering::Relaxed) >= self.limit {
            return Err(EngineError::BudgetExceeded { limit: self.limit });
        }
        if self.table(ruleset).record(key, conv, value) {
            self.inserted.fetch_add(1, Ordering::Relaxed);
        }
        Ok(())
    }

    // A node whose move list alone outruns the remaining budget can never
    // be finished within it; fail before materializing the list.
    fn check_move_budget(&self, ruleset: Ruleset, key: &[u32]) -> Result<(), EngineError> {
        let estimate: u128 = match ruleset {
            Ruleset::Pnim => {
                let conj = Partition::new(key.to_vec())
                    .expect("memo keys are valid partitions")
                    .conjugate();
                (submultiset_count(key) - 1) + (submultiset_count(conj.parts()) - 1)
            }
            // terminal boxes have no moves at all
            Ruleset::Rnim if key.contains(&0) => 0,
            Ruleset::Rnim => key.iter().map(|&k| k as u128).sum(),
        };
        let remaining = self
            .limit
            .saturating_sub(self.inserted.load(Ordering::Relaxed));
        if estimate > remaining as u128 {
            return Err(EngineError::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }

    fn successor_keys(&self, ruleset: Ruleset, key: &[u32]) -> Result<Vec<Vec<u32>>, EngineError> {
        self.check_move_budget(ruleset, key)?;
        Ok(match ruleset {
            Ruleset::Pnim => {
                let p = Partition::new(key.to_vec()).expect("memo keys are valid partitions");
                // successors are canonicalized and therefore deduplicated
                let set: std::collections::BTreeSet<Vec<u32>> = p
                    .pnim_moves()
                    .into_iter()
                    .map(|m| m.canonical().parts().to_vec())
                    .collect();
                set.into_iter().collect()
            }
            Ruleset::Rnim => {
                let h = Hyperrectangle::new(key.to_vec()).expect("memo keys are valid boxes");
                h.rnim_moves()
                    .into_iter()
                    .map(|m| m.sides().to_vec())
                    .collect()
            }
        })
    }

    // Iterative post-order evaluation so deep positions cannot overflow
    // the call stack. Every pushed frame strictly decreases the position,
    // so there are no cycles.
    fn eval(&self, ruleset: Ruleset, key: Vec<u32>, conv: Convention) -> Result<u32, EngineError> {
        let table = self.table(ruleset);
        if let Some(v) = table.value(&key, conv) {
            return Ok(v);
        }

        struct Frame {
            key: Vec<u32>,
            succs: Vec<Vec<u32>>,
            next: usize,
        }

        let mut stack = vec![Frame {
            succs: self.successor_keys(ruleset, &key)?,
            key: key.clone(),
            next: 0,
        }];
        while let Some(top) = stack.last_mut() {
            let mut pending: Option<Vec<u32>> = None;
            while top.next < top.succs.len() {
                let s = &top.succs[top.next];
                if table.value(s, conv).is_some() {
                    top.next += 1;
                } else {
                    pending = Some(s.clone());
                    break;
                }
            }
            if let Some(next_key) = pending {
                let succs = self.successor_keys(ruleset, &next_key)?;
                stack.push(Frame {
                    key: next_key,
                    succs,
                    next: 0,
                });
                continue;
            }
            let done = stack.pop().expect("stack is nonempty");
            let value = if done.succs.is_empty() {
                conv.terminal_value()
            } else {
                let vals: Vec<u32> = done
                    .succs
                    .iter()
                    .map(|s| table.value(s, conv).expect("all successors are evaluated"))
                    .collect();
                mex(&vals)
            };
            self.record(ruleset, done.key, conv, value)?;
        }
        Ok(table.value(&key, conv).expect("root was evaluated"))
    }
}

/// Length of the longest possible play from `p`: rows + columns - 1,
/// and 0 for the empty partition.
pub fn longest_play(p: &Partition) -> u32 {
    if p.is_empty() {
        0
    } else {
        p.first_part() + p.num_parts() as u32 - 1
    }
}
