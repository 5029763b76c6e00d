//! Stretch-count tables.
//!
//! For a chain of domains, the suffix table stores at each position and value
//! the least and greatest number of stretches any coherent completion toward
//! the right end can produce; the prefix table mirrors this toward the left
//! end. Both are built pairwise: the counts of one position derive from the
//! counts of its neighbor in one sweep over the two domains.
//!
//! The last position of a suffix (and the first of a prefix) always counts 1:
//! a single value is one stretch. One step of the recurrence takes the best
//! neighbor count among supported values, plus one when the stretch relation
//! breaks across the pair. Positions are processed right to left for the
//! suffix side; the prefix side reuses the same sweep on argument-flipped
//! relations, scanning left to right.
//!
//! Tables require chain-coherent domains: every value must keep at least one
//! supported neighbor, which the coherence pruning pass establishes.

use crate::binrel::BinRel;
use crate::domain::Domain;
use crate::fast::{self, FastKind};
use crate::instance::Instance;

/// Counts how many values the pair sweeps examined, as a machine-independent
/// work measure. The generic sweep adds one per (value, neighbor) pair, the
/// specialized routines one per value on either side.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Meter {
    pub touched: u64,
}

impl Meter {
    pub fn add(&mut self, units: usize) {
        self.touched += units as u64;
    }
}

/// Whether pair sweeps may dispatch to the linear specialized routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Use a specialized routine when the relation pair has one.
    Auto,
    /// Always run the generic quadratic sweep.
    Generic,
}

/// Per-position, per-value count bounds, rows parallel to the domain values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub min: Vec<Vec<i64>>,
    pub max: Vec<Vec<i64>>,
}

/// Suffix and prefix tables of one chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StretchTable {
    pub suffix: CountTable,
    pub prefix: CountTable,
}

impl StretchTable {
    /// Least and greatest stretch count over all coherent assignments,
    /// read off the suffix counts of the first position.
    pub fn count_bounds(&self) -> (i64, i64) {
        let lo = self.suffix.min[0].iter().copied().min();
        let hi = self.suffix.max[0].iter().copied().max();
        (lo.expect("empty domain"), hi.expect("empty domain"))
    }
}

/// One generic pair sweep: for each left value, scan every supported right
/// value and keep the least and greatest neighbor count, plus one when the
/// stretch relation breaks across the pair.
pub fn pair_counts_generic(
    c: &BinRel,
    b: &BinRel,
    left: &[i64],
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
    meter: &mut Meter,
) -> (Vec<i64>, Vec<i64>) {
    let mut lmin = Vec::with_capacity(left.len());
    let mut lmax = Vec::with_capacity(left.len());
    for &v in left {
        let mut best_min: Option<i64> = None;
        let mut best_max: Option<i64> = None;
        for (k, &w) in right.iter().enumerate() {
            meter.add(1);
            if !b.holds(v, w) {
                continue;
            }
            let step = if c.holds(v, w) { 0 } else { 1 };
            best_min = Some(best_min.map_or(right_min[k] + step, |m| m.min(right_min[k] + step)));
            best_max = Some(best_max.map_or(right_max[k] + step, |m| m.max(right_max[k] + step)));
        }
        let (mn, mx) = best_min
            .zip(best_max)
            .unwrap_or_else(|| panic!("value {v} has no neighbor support; prune the domains first"));
        lmin.push(mn);
        lmax.push(mx);
    }
    (lmin, lmax)
}

// Mirrors the union of both callee signatures; grouping would only move the
// argument list into a one-use struct.
#[allow(clippy::too_many_arguments)]
fn pair_counts(
    c: &BinRel,
    b: &BinRel,
    kind: Option<FastKind>,
    left: &[i64],
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
    meter: &mut Meter,
) -> (Vec<i64>, Vec<i64>) {
    match kind {
        Some(k) => fast::pair_counts_fast(k, left, right, right_min, right_max, meter),
        None => pair_counts_generic(c, b, left, right, right_min, right_max, meter),
    }
}

fn resolve(c: &BinRel, b: &BinRel, mode: PairMode) -> Option<FastKind> {
    match mode {
        PairMode::Auto => fast::fast_kind(c, b),
        PairMode::Generic => None,
    }
}

pub(crate) fn suffix_from_parts(
    x: &[Domain],
    c: &BinRel,
    b: &BinRel,
    mode: PairMode,
    meter: &mut Meter,
) -> CountTable {
    let n = x.len();
    assert!(n > 0, "a stretch table needs at least one position");
    let kind = resolve(c, b, mode);
    let mut min = vec![Vec::new(); n];
    let mut max = vec![Vec::new(); n];
    min[n - 1] = vec![1; x[n - 1].len()];
    max[n - 1] = vec![1; x[n - 1].len()];
    for i in (0..n - 1).rev() {
        let (lmin, lmax) = pair_counts(
            c,
            b,
            kind,
            x[i].values(),
            x[i + 1].values(),
            &min[i + 1],
            &max[i + 1],
            meter,
        );
        min[i] = lmin;
        max[i] = lmax;
    }
    CountTable { min, max }
}

pub(crate) fn prefix_from_parts(
    x: &[Domain],
    c: &BinRel,
    b: &BinRel,
    mode: PairMode,
    meter: &mut Meter,
) -> CountTable {
    let n = x.len();
    assert!(n > 0, "a stretch table needs at least one position");
    // Scanning leftward reverses each pair, so flip both relations once.
    let cf = c.flip();
    let bf = b.flip();
    let kind = resolve(&cf, &bf, mode);
    let mut min = vec![Vec::new(); n];
    let mut max = vec![Vec::new(); n];
    min[0] = vec![1; x[0].len()];
    max[0] = vec![1; x[0].len()];
    for i in 1..n {
        let (lmin, lmax) = pair_counts(
            &cf,
            &bf,
            kind,
            x[i].values(),
            x[i - 1].values(),
            &min[i - 1],
            &max[i - 1],
            meter,
        );
        min[i] = lmin;
        max[i] = lmax;
    }
    CountTable { min, max }
}

pub(crate) fn table_from_parts(
    x: &[Domain],
    c: &BinRel,
    b: &BinRel,
    mode: PairMode,
    meter: &mut Meter,
) -> StretchTable {
    StretchTable {
        suffix: suffix_from_parts(x, c, b, mode, meter),
        prefix: prefix_from_parts(x, c, b, mode, meter),
    }
}

/// Builds the suffix count table of a chain-coherent instance.
pub fn suffix_counts(inst: &Instance) -> CountTable {
    suffix_from_parts(&inst.x, &inst.c, &inst.b, PairMode::Auto, &mut Meter::default())
}

/// Builds the prefix count table of a chain-coherent instance.
pub fn prefix_counts(inst: &Instance) -> CountTable {
    prefix_from_parts(&inst.x, &inst.c, &inst.b, PairMode::Auto, &mut Meter::default())
}

/// Builds both tables of a chain-coherent instance.
pub fn stretch_table(inst: &Instance) -> StretchTable {
    stretch_table_with(inst, PairMode::Auto, &mut Meter::default())
}

/// Builds both tables with an explicit sweep mode and work meter.
pub fn stretch_table_with(inst: &Instance, mode: PairMode, meter: &mut Meter) -> StretchTable {
    table_from_parts(&inst.x, &inst.c, &inst.b, mode, meter)
}
