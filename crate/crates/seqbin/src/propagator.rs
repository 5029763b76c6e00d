//! Domain filtering to a fixpoint.
//!
//! One pass runs four phases: prune the sequence domains to chain coherence,
//! rebuild the stretch tables, narrow the count domain to the reachable
//! bounds, then drop every sequence value whose combined prefix and suffix
//! counts miss the count domain. A value at position i taking value v splits
//! any coherent assignment into a prefix ending at i and a suffix starting
//! there; both count the stretch containing position i, so the totals it can
//! reach span `[p_min + s_min - 1, p_max + s_max - 1]`. Passes repeat until
//! nothing changes.
//!
//! The totals a value reaches need not cover that whole interval for
//! arbitrary stretch relations, so this filter is sound in general and exact
//! for the relation families whose reachable counts form an interval (the
//! comparison and ordered-equality families).

use serde::Serialize;

use crate::binrel::{b_order, prune_in_place};
use crate::domain::Domain;
use crate::instance::Instance;
use crate::stretch::{table_from_parts, Meter, PairMode, StretchTable};

/// The neighbor relation admits no monotonic value order, so the coherence
/// sweeps cannot run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("the neighbor relation is not monotonic on the domain universe")]
pub struct NonMonotonicB;

/// A filtering step emptied a domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("a domain became empty")]
pub struct Inconsistency;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// Outcome of running the filter to a fixpoint. On failure the domains hold
/// the state at the moment a domain emptied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Propagation {
    pub status: Status,
    pub n: Domain,
    pub x: Vec<Domain>,
    /// Values removed across all domains and passes.
    pub removed: usize,
    /// Four-phase passes run, including the final pass that removed nothing.
    pub passes: usize,
    /// Work-meter reading, see the stretch module.
    #[serde(skip)]
    pub touched: u64,
}

impl Propagation {
    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

/// Narrows the count domain to the reachable stretch-count interval.
pub fn filter_count_var(n: &Domain, table: &StretchTable) -> Result<(Domain, usize), Inconsistency> {
    let (lo, hi) = table.count_bounds();
    let mut n = n.clone();
    let removed = n.restrict_to_interval(lo, hi);
    if n.is_empty() {
        return Err(Inconsistency);
    }
    Ok((n, removed))
}

/// Drops sequence values whose reachable totals all miss the count domain.
pub fn filter_sequence_vars(
    x: &[Domain],
    table: &StretchTable,
    n: &Domain,
) -> Result<(Vec<Domain>, usize), Inconsistency> {
    let mut out = Vec::with_capacity(x.len());
    let mut removed = 0;
    for (i, d) in x.iter().enumerate() {
        let keep: Vec<bool> = (0..d.len())
            .map(|j| {
                // Prefix and suffix both count the stretch through (i, v).
                let lo = table.prefix.min[i][j] + table.suffix.min[i][j] - 1;
                let hi = table.prefix.max[i][j] + table.suffix.max[i][j] - 1;
                n.intersects_interval(lo, hi)
            })
            .collect();
        let mut filtered = d.clone();
        let mut j = 0;
        removed += filtered.retain(|_| {
            let k = keep[j];
            j += 1;
            k
        });
        if filtered.is_empty() {
            return Err(Inconsistency);
        }
        out.push(filtered);
    }
    Ok((out, removed))
}

/// Runs the filter to a fixpoint with specialized pair sweeps where possible.
pub fn propagate(inst: &Instance) -> Result<Propagation, NonMonotonicB> {
    propagate_with(inst, PairMode::Auto)
}

/// Runs the filter to a fixpoint with an explicit pair-sweep mode.
pub fn propagate_with(inst: &Instance, mode: PairMode) -> Result<Propagation, NonMonotonicB> {
    let order = b_order(&inst.b, &inst.x).ok_or(NonMonotonicB)?;
    let mut n = inst.n.clone();
    let mut x = inst.x.clone();
    let mut meter = Meter::default();
    let mut removed = 0;
    let mut passes = 0;

    if n.is_empty() || x.iter().any(Domain::is_empty) {
        return Ok(Propagation {
            status: Status::Fail,
            n,
            x,
            removed,
            passes,
            touched: meter.touched,
        });
    }

    loop {
        passes += 1;
        let mut pass_removed = 0;

        match prune_in_place(&mut x, &inst.b, &order) {
            Ok(r) => pass_removed += r,
            Err(_) => {
                return Ok(Propagation {
                    status: Status::Fail,
                    n,
                    x,
                    removed: removed + pass_removed,
                    passes,
                    touched: meter.touched,
                })
            }
        }

        let table = table_from_parts(&x, &inst.c, &inst.b, mode, &mut meter);

        match filter_count_var(&n, &table) {
            Ok((narrowed, r)) => {
                n = narrowed;
                pass_removed += r;
            }
            Err(Inconsistency) => {
                let (lo, hi) = table.count_bounds();
                n.restrict_to_interval(lo, hi);
                return Ok(Propagation {
                    status: Status::Fail,
                    n,
                    x,
                    removed: removed + pass_removed,
                    passes,
                    touched: meter.touched,
                });
            }
        }

        match filter_sequence_vars(&x, &table, &n) {
            Ok((filtered, r)) => {
                x = filtered;
                pass_removed += r;
            }
            Err(Inconsistency) => {
                return Ok(Propagation {
                    status: Status::Fail,
                    n,
                    x,
                    removed: removed + pass_removed,
                    passes,
                    touched: meter.touched,
                })
            }
        }

        removed += pass_removed;
        if pass_removed == 0 {
            break;
        }
    }

    Ok(Propagation { status: Status::Ok, n, x, removed, passes, touched: meter.touched })
}
