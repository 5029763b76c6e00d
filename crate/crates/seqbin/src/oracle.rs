//! Brute-force reference semantics.
//!
//! Everything here is deliberately naive: plain enumeration with a size cap,
//! direct definitions, no shared code with the propagation algorithms. The
//! test suites compare the fast implementations against these.

use crate::binrel::BinRel;
use crate::domain::Domain;
use crate::instance::Instance;

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("enumeration space of {size} assignments exceeds cap {cap}")]
pub struct CapExceeded {
    pub size: u128,
    pub cap: u64,
}

/// Number of stretches of `values`: maximal runs in which every consecutive
/// pair satisfies `c`.
pub fn count_stretches(values: &[i64], c: &BinRel) -> i64 {
    assert!(!values.is_empty(), "a stretch count needs at least one value");
    let mut count = 0;
    let mut k = 0;
    while k < values.len() {
        count += 1;
        while k + 1 < values.len() && c.holds(values[k], values[k + 1]) {
            k += 1;
        }
        k += 1;
    }
    count
}

/// Iterator over all chain-coherent assignments of the sequence variables
/// (every consecutive pair satisfies the neighbor relation), paired with
/// their stretch count. Membership of the count in the count domain is not
/// required here; filter on it to get full solutions.
#[derive(Debug)]
pub struct Solutions<'a> {
    inst: &'a Instance,
    idx: Vec<usize>,
    done: bool,
}

/// Enumerates chain-coherent assignments, refusing assignment spaces larger
/// than `cap`.
pub fn solutions(inst: &Instance, cap: u64) -> Result<Solutions<'_>, CapExceeded> {
    // Saturate: a space too big for u128 is certainly over any cap.
    let size: u128 = inst
        .x
        .iter()
        .fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128));
    if size > cap as u128 {
        return Err(CapExceeded { size, cap });
    }
    Ok(Solutions {
        inst,
        idx: vec![0; inst.x.len()],
        done: size == 0,
    })
}

impl Solutions<'_> {
    fn advance(&mut self) {
        for i in (0..self.idx.len()).rev() {
            self.idx[i] += 1;
            if self.idx[i] < self.inst.x[i].len() {
                return;
            }
            self.idx[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for Solutions<'_> {
    type Item = (Vec<i64>, i64);

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let values: Vec<i64> = self
                .idx
                .iter()
                .enumerate()
                .map(|(i, &j)| self.inst.x[i].values()[j])
                .collect();
            self.advance();
            let coherent = values.windows(2).all(|p| self.inst.b.holds(p[0], p[1]));
            if coherent {
                let count = count_stretches(&values, &self.inst.c);
                return Some((values, count));
            }
        }
        None
    }
}

/// Exact filtering by enumeration: the values of each variable that appear
/// in at least one solution (chain-coherent assignment whose stretch count
/// lies in the count domain), and the realized counts. `None` when no
/// solution exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GacResult {
    pub n: Domain,
    pub x: Vec<Domain>,
}

pub fn gac_oracle(inst: &Instance, cap: u64) -> Result<Option<GacResult>, CapExceeded> {
    let mut n_keep = Domain::default();
    let mut x_keep = vec![Domain::default(); inst.x.len()];
    let mut found = false;
    for (values, count) in solutions(inst, cap)? {
        if !inst.n.contains(count) {
            continue;
        }
        found = true;
        n_keep.insert(count);
        for (dom, v) in x_keep.iter_mut().zip(values) {
            dom.insert(v);
        }
    }
    Ok(found.then_some(GacResult { n: n_keep, x: x_keep }))
}

/// A single-value change between two chain-coherent assignments that moves
/// the stretch count by at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityWitness {
    pub assignment: Vec<i64>,
    pub position: usize,
    pub replacement: i64,
    pub count_before: i64,
    pub count_after: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Continuity {
    /// Every admissible single-value change moves the count by at most one.
    Continuous,
    Jump(ContinuityWitness),
}

/// Exhaustively checks counting continuity: over every chain-coherent
/// assignment and every in-domain replacement of one value that keeps the
/// chain coherent, the stretch count must move by at most one.
pub fn check_counting_continuous(inst: &Instance, cap: u64) -> Result<Continuity, CapExceeded> {
    for (values, count) in solutions(inst, cap)? {
        for i in 0..values.len() {
            for v2 in inst.x[i].iter() {
                if v2 == values[i] {
                    continue;
                }
                let left_ok = i == 0 || inst.b.holds(values[i - 1], v2);
                let right_ok = i + 1 == values.len() || inst.b.holds(v2, values[i + 1]);
                if !left_ok || !right_ok {
                    continue;
                }
                let mut changed = values.clone();
                changed[i] = v2;
                let count_after = count_stretches(&changed, &inst.c);
                if (count_after - count).abs() >= 2 {
                    return Ok(Continuity::Jump(ContinuityWitness {
                        assignment: values,
                        position: i,
                        replacement: v2,
                        count_before: count,
                        count_after,
                    }));
                }
            }
        }
    }
    Ok(Continuity::Continuous)
}

/// Independent monotonicity decision. Universes of at most eight values are
/// settled by exhaustive order search; larger ones fall back to verifying
/// the sorted candidate from [`crate::binrel::monotonic_order`].
pub fn check_monotonic(rel: &BinRel, universe: &[i64]) -> (bool, Option<Vec<i64>>) {
    let mut uni = universe.to_vec();
    uni.sort_unstable();
    uni.dedup();
    if uni.len() > 8 {
        return match crate::binrel::monotonic_order(rel, &uni) {
            Some(order) => {
                debug_assert!(is_order_witness(rel, &order.values));
                (true, Some(order.values))
            }
            None => (false, None),
        };
    }
    let mut order = uni;
    if permute_until_witness(rel, &mut order, 0) {
        (true, Some(order))
    } else {
        (false, None)
    }
}

fn permute_until_witness(rel: &BinRel, order: &mut [i64], k: usize) -> bool {
    if k == order.len() {
        return is_order_witness(rel, order);
    }
    for i in k..order.len() {
        order.swap(k, i);
        if permute_until_witness(rel, order, k + 1) {
            return true;
        }
        order.swap(k, i);
    }
    false
}

/// Checks the nesting property of one candidate order in quadratic time:
/// whenever the relation holds on a pair, it must keep holding when the left
/// value steps one position earlier or the right value one position later.
/// Induction extends both steps to the full quantifier.
fn is_order_witness(rel: &BinRel, order: &[i64]) -> bool {
    let m = order.len();
    for a in 0..m {
        for b in 0..m {
            if !rel.holds(order[a], order[b]) {
                continue;
            }
            if a > 0 && !rel.holds(order[a - 1], order[b]) {
                return false;
            }
            if b + 1 < m && !rel.holds(order[a], order[b + 1]) {
                return false;
            }
        }
    }
    true
}
