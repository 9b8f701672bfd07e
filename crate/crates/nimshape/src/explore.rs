//! Enumeration over bounded position spaces, conjecture sweeps, and
//! byte-stable report export.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::closed_forms::{heavy_family_witness, rect_is_heavy, HeavyFamily, RectSpec};
use crate::engine::{longest_play, Engine, EngineError};
use crate::partition::{partitions_of, Partition, PartitionError};

#[derive(Debug, Error)]
pub enum ExploreError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Enumeration(#[from] PartitionError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumFilter {
    Heavy,
    Grundy(u32),
}

impl std::fmt::Display for EnumFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EnumFilter::Heavy => write!(f, "heavy"),
            EnumFilter::Grundy(k) => write!(f, "grundy={k}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumRow {
    pub n: u32,
    pub partition: String,
    pub g: u32,
    pub longest_play: u32,
}

/// Partitions matching a filter up to a bound, in enumeration order
/// (order ascending, reverse-lexicographic within an order).
/// `grundy_values` is aligned with `representatives`.
#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub n_max: u32,
    pub filter: EnumFilter,
    pub up_to_conjugation: bool,
    pub representatives: Vec<Partition>,
    pub grundy_values: Vec<u32>,
    pub counts_per_n: Vec<(u32, usize)>,
}

impl EnumerationReport {
    pub fn rows(&self, exponent: bool) -> Vec<EnumRow> {
        self.representatives
            .iter()
            .zip(&self.grundy_values)
            .map(|(p, &g)| EnumRow {
                n: p.order(),
                partition: if exponent {
                    p.exponent_notation()
                } else {
                    p.to_string()
                },
                g,
                longest_play: longest_play(p),
            })
            .collect()
    }
}

/// All partitions of order at most `n_max` whose Grundy value is exactly
/// `k`. Evaluation is sharded across worker threads; the shared memo table
/// makes the result independent of the schedule.
pub fn enumerate_by_value(
    engine: &Engine,
    k: u32,
    n_max: u32,
    up_to_conjugation: bool,
) -> Result<EnumerationReport, ExploreError> {
    enumerate(engine, EnumFilter::Grundy(k), n_max, up_to_conjugation)
}

/// All heavy partitions (Grundy value equal to the longest play) of order
/// in [1, n_max].
pub fn enumerate_heavy(
    engine: &Engine,
    n_max: u32,
    up_to_conjugation: bool,
) -> Result<EnumerationReport, ExploreError> {
    enumerate(engine, EnumFilter::Heavy, n_max, up_to_conjugation)
}

fn enumerate(
    engine: &Engine,
    filter: EnumFilter,
    n_max: u32,
    up_to_conjugation: bool,
) -> Result<EnumerationReport, ExploreError> {
    let start = match filter {
        EnumFilter::Heavy => 1, // heaviness is defined on nonempty partitions
        EnumFilter::Grundy(_) => 0,
    };
    let mut candidates: Vec<Partition> = Vec::new();
    for n in start..=n_max {
        candidates.extend(partitions_of(n, up_to_conjugation)?);
    }
    let kept: Vec<Option<(Partition, u32)>> = candidates
        .into_par_iter()
        .map(|p| -> Result<Option<(Partition, u32)>, EngineError> {
            let g = engine.grundy_partition(&p)?;
            let keep = match filter {
                EnumFilter::Heavy => g == longest_play(&p),
                EnumFilter::Grundy(k) => g == k,
            };
            Ok(keep.then_some((p, g)))
        })
        .collect::<Result<_, _>>()?;
    let (representatives, grundy_values): (Vec<Partition>, Vec<u32>) =
        kept.into_iter().flatten().unzip();
    let counts_per_n = (start..=n_max)
        .map(|n| (n, representatives.iter().filter(|p| p.order() == n).count()))
        .collect();
    Ok(EnumerationReport {
        n_max,
        filter,
        up_to_conjugation,
        representatives,
        grundy_values,
        counts_per_n,
    })
}

/// The two heaviness conjectures, with their search bounds.
#[derive(Clone, Copy, Debug)]
pub enum ConjectureSweep {
    /// Young intervals `[a+1,a,...,a-b+1] <= λ <= [(a+1)^(b+1)]` for every
    /// (a, b) in range whose rectangle is heavy.
    ChoppedRect { a_max: u32, b_max: u32 },
    /// Arithmetic-progression partitions `[i+(k-1)s, ..., i+s, i]`.
    ShallowStaircase { i_max: u32, s_max: u32, k_max: u32 },
}

impl ConjectureSweep {
    pub fn id(&self) -> &'static str {
        match self {
            ConjectureSweep::ChoppedRect { .. } => "chopped-rect",
            ConjectureSweep::ShallowStaircase { .. } => "shallow-staircase",
        }
    }

    pub fn ranges(&self) -> String {
        match self {
            ConjectureSweep::ChoppedRect { a_max, b_max } => {
                format!("a in [1,{a_max}], b in [1,{b_max}]")
            }
            ConjectureSweep::ShallowStaircase {
                i_max,
                s_max,
                k_max,
            } => {
                format!("i in [1,{i_max}], s in [1,{s_max}], k in [1,{k_max}]")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub partition: String,
    pub g: u32,
    pub longest_play: u32,
}

/// Result of a conjecture sweep: either zero counterexamples over the
/// searched ranges, or every violation with its full evidence.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub id: &'static str,
    pub ranges: String,
    pub positions_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Sweeps one conjecture. Counterexamples are reported, never asserted
/// away; an empty list is a confirmation of the searched range only.
pub fn check_conjectures(
    engine: &Engine,
    sweep: ConjectureSweep,
) -> Result<ConjectureReport, ExploreError> {
    let mut checked = 0usize;
    let mut counterexamples = Vec::new();
    let mut check = |p: Partition| -> Result<(), ExploreError> {
        checked += 1;
        if !engine.is_heavy(&p)? {
            counterexamples.push(Counterexample {
                partition: p.to_string(),
                g: engine.grundy_partition(&p)?,
                longest_play: longest_play(&p),
            });
        }
        Ok(())
    };
    match sweep {
        ConjectureSweep::ChoppedRect { a_max, b_max } => {
            for a in 1..=a_max {
                for b in 1..=b_max.min(a) {
                    if !rect_is_heavy(RectSpec::new(b + 1, a + 1).expect("positive sides")) {
                        continue; // premise fails; nothing to check
                    }
                    let lower = heavy_family_witness(HeavyFamily::ChoppedRect { a, b })
                        .expect("premise verified");
                    for p in young_interval(&lower, a + 1) {
                        check(p)?;
                    }
                }
            }
        }
        ConjectureSweep::ShallowStaircase {
            i_max,
            s_max,
            k_max,
        } => {
            for i in 1..=i_max {
                for s in 1..=s_max {
                    for k in 1..=k_max {
                        let p = heavy_family_witness(HeavyFamily::ShallowStaircase {
                            base: i,
                            step: s,
                            count: k,
                        })
                        .expect("parameters are positive");
                        check(p)?;
                    }
                }
            }
        }
    }
    Ok(ConjectureReport {
        id: sweep.id(),
        ranges: sweep.ranges(),
        positions_checked: checked,
        counterexamples,
    })
}

/// Partitions λ with `lower <= λ <= [cap^(len(lower))]` in Young's
/// lattice, where every member keeps exactly `lower.len()` parts.
fn young_interval(lower: &Partition, cap: u32) -> Vec<Partition> {
    let bounds: Vec<u32> = lower.parts().to_vec();
    let mut out = Vec::new();
    let mut acc: Vec<u32> = Vec::with_capacity(bounds.len());
    fn rec(bounds: &[u32], cap: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let i = acc.len();
        if i == bounds.len() {
            out.push(Partition::new(acc.clone()).expect("interval members are partitions"));
            return;
        }
        let hi = if i == 0 { cap } else { acc[i - 1].min(cap) };
        for v in bounds[i]..=hi {
            acc.push(v);
            rec(bounds, cap, acc, out);
            acc.pop();
        }
    }
    rec(&bounds, cap, &mut acc, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    Text,
    JsonLines,
    Csv,
}

/// Reports that can be serialized byte-stably in all three formats.
pub trait Exportable {
    fn write_text(&self, w: &mut dyn Write, exponent: bool) -> io::Result<()>;
    fn write_csv(&self, w: &mut dyn Write, exponent: bool) -> io::Result<()>;
    fn write_json_lines(&self, w: &mut dyn Write, exponent: bool) -> io::Result<()>;
}

pub fn export_to_writer(
    report: &dyn Exportable,
    format: ExportFormat,
    exponent: bool,
    w: &mut dyn Write,
) -> io::Result<()> {
    match format {
        ExportFormat::Text => report.write_text(w, exponent),
        ExportFormat::Csv => report.write_csv(w, exponent),
        ExportFormat::JsonLines => report.write_json_lines(w, exponent),
    }
}

pub fn export(
    report: &dyn Exportable,
    format: ExportFormat,
    exponent: bool,
    path: &Path,
) -> io::Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    export_to_writer(report, format, exponent, &mut file)?;
    file.flush()
}

fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

impl Exportable for EnumerationReport {
    fn write_text(&self, w: &mut dyn Write, exponent: bool) -> io::Result<()> {
        writeln!(
            w,
            "# {} partitions with n <= {}{}",
            self.filter,
            self.n_max,
            if self.up_to_conjugation {
                ", up to conjugation"
            } else {
                ""
            }
        )?;
        for row in self.rows(exponent) {
            writeln!(
                w,
                "n={}  {}  g={}  longest={}",
                row.n, row.partition, row.g, row.longest_play
            )?;
        }
        for (n, count) in &self.counts_per_n {
            writeln!(w, "count n={n}: {count}")?;
        }
        Ok(())
    }

    fn write_csv(&self, w: &mut dyn Write, exponent: bool) -> io::Result<()> {
        writeln!(w, "n,partition,g,longest_play")?;
        for row in self.rows(exponent) {
            writeln!(
                w,
                "{},{},{},{}",
                row.n,
                csv_quote(&row.partition),
                row.g,
                row.longest_play
            )?;
        }
        Ok(())
    }

    fn write_json_lines(&self, w: &mut dyn Write, exponent: bool) -> io::Result<()> {
        for row in self.rows(exponent) {
            writeln!(w, "{}", serde_json::to_string(&row)?)?;
        }
        Ok(())
    }
}

impl Exportable for ConjectureReport {
    fn write_text(&self, w: &mut dyn Write, _exponent: bool) -> io::Result<()> {
        writeln!(
            w,
            "conjecture {}: {} positions checked over {}, {} counterexample(s)",
            self.id,
            self.positions_checked,
            self.ranges,
            self.counterexamples.len()
        )?;
        for ce in &self.counterexamples {
            writeln!(
                w,
                "counterexample {}: g={} longest={}",
                ce.partition, ce.g, ce.longest_play
            )?;
        }
        Ok(())
    }

    fn write_csv(&self, w: &mut dyn Write, _exponent: bool) -> io::Result<()> {
        writeln!(w, "conjecture,positions_checked,counterexamples")?;
        writeln!(
            w,
            "{},{},{}",
            self.id,
            self.positions_checked,
            self.counterexamples.len()
        )?;
        if !self.counterexamples.is_empty() {
            writeln!(w, "partition,g,longest_play")?;
            for ce in &self.counterexamples {
                writeln!(
                    w,
                    "{},{},{}",
                    csv_quote(&ce.partition),
                    ce.g,
                    ce.longest_play
                )?;
            }
        }
        Ok(())
    }

    fn write_json_lines(&self, w: &mut dyn Write, _exponent: bool) -> io::Result<()> {
        #[derive(Serialize)]
        struct Summary<'a> {
            conjecture: &'a str,
            ranges: &'a str,
            positions_checked: usize,
            counterexamples: usize,
        }
        writeln!(
            w,
            "{}",
            serde_json::to_string(&Summary {
                conjecture: self.id,
                ranges: &self.ranges,
                positions_checked: self.positions_checked,
                counterexamples: self.counterexamples.len(),
            })?
        )?;
        for ce in &self.counterexamples {
            writeln!(w, "{}", serde_json::to_string(ce)?)?;
        }
        Ok(())
    }
}
