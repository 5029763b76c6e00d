//! Specialized pair-count routines.
//!
//! Each routine computes, for every value of a left domain, the least and
//! greatest stretch count reachable through a right domain whose per-value
//! counts are already known, in time linear in the two domain sizes. The
//! generic quadratic scan in the stretch module accepts any relation pair;
//! these cover the built-in families where the support set of a value is an
//! interval, a single value, a complement, or grows monotonically along the
//! neighbor order.

use std::collections::VecDeque;

use crate::binrel::{BinRel, RelKind};
use crate::stretch::Meter;

/// Comparison direction for interval-support stretch relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Leq,
    Gt,
    Geq,
}

/// The recognized (stretch relation, neighbor relation) families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastKind {
    /// C is a comparison, B holds everywhere.
    Cmp(Cmp),
    /// C is equality, B holds everywhere.
    Eq,
    /// C is disequality, B holds everywhere.
    Neq,
    /// C is `|v - w| <= cst`, B holds everywhere.
    AbsBand(i64),
    /// C is equality, B is `<=`: supports grow as the left value shrinks.
    EqChainUp,
    /// C is equality, B is `>=`: supports grow as the left value grows.
    EqChainDown,
}

/// Matches a relation pair against the specialized families.
pub fn fast_kind(c: &BinRel, b: &BinRel) -> Option<FastKind> {
    if c.is_negated() || b.is_negated() {
        return None;
    }
    match (c.kind(), b.kind()) {
        (RelKind::Lt, RelKind::Universal) => Some(FastKind::Cmp(Cmp::Lt)),
        (RelKind::Leq, RelKind::Universal) => Some(FastKind::Cmp(Cmp::Leq)),
        (RelKind::Gt, RelKind::Universal) => Some(FastKind::Cmp(Cmp::Gt)),
        (RelKind::Geq, RelKind::Universal) => Some(FastKind::Cmp(Cmp::Geq)),
        (RelKind::Eq, RelKind::Universal) => Some(FastKind::Eq),
        (RelKind::Neq, RelKind::Universal) => Some(FastKind::Neq),
        (RelKind::AbsLeq(cst), RelKind::Universal) => Some(FastKind::AbsBand(*cst)),
        (RelKind::Eq, RelKind::Leq) => Some(FastKind::EqChainUp),
        (RelKind::Eq, RelKind::Geq) => Some(FastKind::EqChainDown),
        _ => None,
    }
}

/// Dispatches one pair computation to the matching specialized routine.
///
/// `left` and `right` are sorted domain values; `right_min`/`right_max` are
/// the known counts parallel to `right`. Returns the counts parallel to
/// `left`. Requires every left value to have a neighbor support in `right`.
pub fn pair_counts_fast(
    kind: FastKind,
    left: &[i64],
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
    meter: &mut Meter,
) -> (Vec<i64>, Vec<i64>) {
    match kind {
        FastKind::Cmp(cmp) => counts_cmp(cmp, left, right, right_min, right_max, meter),
        FastKind::Eq => counts_eq(left, right, right_min, right_max, meter),
        FastKind::Neq => counts_neq(left, right, right_min, right_max, meter),
        FastKind::AbsBand(cst) => counts_abs_band(cst, left, right, right_min, right_max, meter),
        FastKind::EqChainUp => counts_eq_chain(true, left, right, right_min, right_max, meter),
        FastKind::EqChainDown => counts_eq_chain(false, left, right, right_min, right_max, meter),
    }
}

/// Candidate counts one left value sees through its supported right values:
/// the right value's own count, plus one when the stretch relation breaks
/// between the two. The least and greatest candidates are the value's counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueCountView {
    pub min_candidates: Vec<i64>,
    pub max_candidates: Vec<i64>,
}

pub fn value_count_view(
    c: &BinRel,
    b: &BinRel,
    v: i64,
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
) -> ValueCountView {
    let mut view = ValueCountView { min_candidates: vec![], max_candidates: vec![] };
    for (k, &w) in right.iter().enumerate() {
        if !b.holds(v, w) {
            continue;
        }
        let step = if c.holds(v, w) { 0 } else { 1 };
        view.min_candidates.push(right_min[k] + step);
        view.max_candidates.push(right_max[k] + step);
    }
    view
}

/// Sliding-extremum queue: indices enter in increasing order, the front
/// always carries the best key of the still-live window.
struct MonotoneQueue {
    q: VecDeque<(usize, i64)>,
    prefer_small: bool,
}

impl MonotoneQueue {
    fn new(prefer_small: bool) -> Self {
        MonotoneQueue { q: VecDeque::new(), prefer_small }
    }

    fn push(&mut self, idx: usize, key: i64) {
        while let Some(&(_, back)) = self.q.back() {
            let dominated = if self.prefer_small { back >= key } else { back <= key };
            if !dominated {
                break;
            }
            self.q.pop_back();
        }
        self.q.push_back((idx, key));
    }

    fn expire_before(&mut self, min_idx: usize) {
        while let Some(&(idx, _)) = self.q.front() {
            if idx >= min_idx {
                break;
            }
            self.q.pop_front();
        }
    }

    fn best(&self) -> Option<i64> {
        self.q.front().map(|&(_, key)| key)
    }
}

/// The two best (value, key) entries over distinct values, so the best key
/// excluding any one value stays answerable in constant time.
struct Best2 {
    prefer_small: bool,
    first: Option<(i64, i64)>,
    second: Option<(i64, i64)>,
}

impl Best2 {
    fn new(prefer_small: bool) -> Self {
        Best2 { prefer_small, first: None, second: None }
    }

    fn better(&self, a: i64, b: i64) -> bool {
        if self.prefer_small {
            a < b
        } else {
            a > b
        }
    }

    fn add(&mut self, value: i64, key: i64) {
        match self.first {
            None => self.first = Some((value, key)),
            Some((_, k0)) if self.better(key, k0) => {
                self.second = self.first;
                self.first = Some((value, key));
            }
            Some(_) => match self.second {
                None => self.second = Some((value, key)),
                Some((_, k1)) if self.better(key, k1) => self.second = Some((value, key)),
                Some(_) => {}
            },
        }
    }

    fn best_excluding(&self, value: i64) -> Option<i64> {
        match self.first {
            Some((v0, k0)) if v0 != value => Some(k0),
            Some(_) => self.second.map(|(_, k)| k),
            None => None,
        }
    }
}

fn combine(support: Option<i64>, broken: Option<i64>, prefer_small: bool, v: i64) -> i64 {
    let broken = broken.map(|k| k + 1);
    match (support, broken) {
        (Some(a), Some(b)) => {
            if prefer_small {
                a.min(b)
            } else {
                a.max(b)
            }
        }
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => panic!("value {v} has no neighbor support; prune the domains first"),
    }
}

/// C comparison, B universal. Supports of a value form a prefix or suffix of
/// the right domain, so running extrema over both ends answer every value;
/// the split index moves monotonically as values ascend.
fn counts_cmp(
    cmp: Cmp,
    left: &[i64],
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
    meter: &mut Meter,
) -> (Vec<i64>, Vec<i64>) {
    let m = right.len();
    meter.add(left.len() + m);
    let prefix_min = running(right_min, true, true);
    let prefix_max = running(right_max, true, false);
    let suffix_min = running(right_min, false, true);
    let suffix_max = running(right_max, false, false);
    // Extremum of counts over right index range [0, k) or [k, m).
    let head_min = |k: usize| (k > 0).then(|| prefix_min[k - 1]);
    let head_max = |k: usize| (k > 0).then(|| prefix_max[k - 1]);
    let tail_min = |k: usize| (k < m).then(|| suffix_min[k]);
    let tail_max = |k: usize| (k < m).then(|| suffix_max[k]);

    let mut below = 0; // right values < v
    let mut at_or_below = 0; // right values <= v
    let mut lmin = Vec::with_capacity(left.len());
    let mut lmax = Vec::with_capacity(left.len());
    for &v in left {
        while below < m && right[below] < v {
            below += 1;
        }
        while at_or_below < m && right[at_or_below] <= v {
            at_or_below += 1;
        }
        // Support range is what v compares into; the rest breaks the stretch.
        let (s_min, s_max, n_min, n_max) = match cmp {
            Cmp::Gt => (head_min(below), head_max(below), tail_min(below), tail_max(below)),
            Cmp::Geq => (
                head_min(at_or_below),
                head_max(at_or_below),
                tail_min(at_or_below),
                tail_max(at_or_below),
            ),
            Cmp::Lt => (
                tail_min(at_or_below),
                tail_max(at_or_below),
                head_min(at_or_below),
                head_max(at_or_below),
            ),
            Cmp::Leq => (tail_min(below), tail_max(below), head_min(below), head_max(below)),
        };
        lmin.push(combine(s_min, n_min, true, v));
        lmax.push(combine(s_max, n_max, false, v));
    }
    (lmin, lmax)
}

fn running(keys: &[i64], forward: bool, prefer_small: bool) -> Vec<i64> {
    let pick = |a: i64, b: i64| if prefer_small { a.min(b) } else { a.max(b) };
    let mut out = keys.to_vec();
    if forward {
        for k in 1..out.len() {
            out[k] = pick(out[k], out[k - 1]);
        }
    } else {
        for k in (0..out.len().saturating_sub(1)).rev() {
            out[k] = pick(out[k], out[k + 1]);
        }
    }
    out
}

/// C equality, B universal. The only support of a value is itself; every
/// other right value breaks the stretch, so the global minimum and the two
/// greatest maxima answer everything.
fn counts_eq(
    left: &[i64],
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
    meter: &mut Meter,
) -> (Vec<i64>, Vec<i64>) {
    meter.add(left.len() + right.len());
    let global_min = right_min.iter().copied().min();
    let mut top_max = Best2::new(false);
    for (k, &w) in right.iter().enumerate() {
        top_max.add(w, right_max[k]);
    }

    let mut r = 0;
    let mut lmin = Vec::with_capacity(left.len());
    let mut lmax = Vec::with_capacity(left.len());
    for &v in left {
        while r < right.len() && right[r] < v {
            r += 1;
        }
        let own = (r < right.len() && right[r] == v).then(|| (right_min[r], right_max[r]));
        // When v itself holds the global minimum the broken branch offers
        // own+1, which loses to the support branch, so no exclusion needed.
        lmin.push(combine(own.map(|o| o.0), global_min, true, v));
        lmax.push(combine(own.map(|o| o.1), top_max.best_excluding(v), false, v));
    }
    (lmin, lmax)
}

/// C disequality, B universal. Every right value except v supports; only v
/// itself breaks the stretch.
fn counts_neq(
    left: &[i64],
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
    meter: &mut Meter,
) -> (Vec<i64>, Vec<i64>) {
    meter.add(left.len() + right.len());
    let mut low = Best2::new(true);
    let mut high = Best2::new(false);
    for (k, &w) in right.iter().enumerate() {
        low.add(w, right_min[k]);
        high.add(w, right_max[k]);
    }

    let mut r = 0;
    let mut lmin = Vec::with_capacity(left.len());
    let mut lmax = Vec::with_capacity(left.len());
    for &v in left {
        while r < right.len() && right[r] < v {
            r += 1;
        }
        let own = (r < right.len() && right[r] == v).then(|| (right_min[r], right_max[r]));
        lmin.push(combine(low.best_excluding(v), own.map(|o| o.0), true, v));
        lmax.push(combine(high.best_excluding(v), own.map(|o| o.1), false, v));
    }
    (lmin, lmax)
}

/// C is `|v - w| <= cst`, B universal. Supports form the window
/// `[v - cst, v + cst]` of the right domain, which slides right as values
/// ascend: a monotone queue tracks the window extremum, running arrays the
/// two broken outside ranges.
fn counts_abs_band(
    cst: i64,
    left: &[i64],
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
    meter: &mut Meter,
) -> (Vec<i64>, Vec<i64>) {
    let m = right.len();
    meter.add(left.len() + m);
    let prefix_min = running(right_min, true, true);
    let prefix_max = running(right_max, true, false);
    let suffix_min = running(right_min, false, true);
    let suffix_max = running(right_max, false, false);

    let mut window_min = MonotoneQueue::new(true);
    let mut window_max = MonotoneQueue::new(false);
    let mut lo = 0; // first index with right[lo] >= v - cst
    let mut hi = 0; // first index with right[hi] > v + cst
    let mut lmin = Vec::with_capacity(left.len());
    let mut lmax = Vec::with_capacity(left.len());
    for &v in left {
        let v = v as i128;
        let cst = cst as i128;
        while hi < m && (right[hi] as i128) <= v + cst {
            window_min.push(hi, right_min[hi]);
            window_max.push(hi, right_max[hi]);
            hi += 1;
        }
        while lo < m && (right[lo] as i128) < v - cst {
            lo += 1;
        }
        window_min.expire_before(lo);
        window_max.expire_before(lo);

        let in_window = lo < hi;
        let support_min = in_window.then(|| window_min.best().unwrap());
        let support_max = in_window.then(|| window_max.best().unwrap());
        let outside_min = match (lo > 0, hi < m) {
            (true, true) => Some(prefix_min[lo - 1].min(suffix_min[hi])),
            (true, false) => Some(prefix_min[lo - 1]),
            (false, true) => Some(suffix_min[hi]),
            (false, false) => None,
        };
        let outside_max = match (lo > 0, hi < m) {
            (true, true) => Some(prefix_max[lo - 1].max(suffix_max[hi])),
            (true, false) => Some(prefix_max[lo - 1]),
            (false, true) => Some(suffix_max[hi]),
            (false, false) => None,
        };
        lmin.push(combine(support_min, outside_min, true, v as i64));
        lmax.push(combine(support_max, outside_max, false, v as i64));
    }
    (lmin, lmax)
}

/// C equality with an ordering neighbor relation. Scanning left values from
/// the order-smallest side, the admitted right values (those the neighbor
/// relation allows) only grow, so one pointer plus running bests answer each
/// value; the only support among them is the value itself.
fn counts_eq_chain(
    up: bool,
    left: &[i64],
    right: &[i64],
    right_min: &[i64],
    right_max: &[i64],
    meter: &mut Meter,
) -> (Vec<i64>, Vec<i64>) {
    let m = right.len();
    meter.add(left.len() + m);
    let mut lmin = vec![0; left.len()];
    let mut lmax = vec![0; left.len()];
    let mut admitted_min: Option<i64> = None;
    let mut high = Best2::new(false);
    let admit = |k: usize, admitted_min: &mut Option<i64>, high: &mut Best2| {
        *admitted_min = Some(admitted_min.map_or(right_min[k], |b| b.min(right_min[k])));
        high.add(right[k], right_max[k]);
    };

    if up {
        // B is <=: supports of v are right values >= v; grow as v descends.
        let mut p = m;
        for (j, &v) in left.iter().enumerate().rev() {
            while p > 0 && right[p - 1] >= v {
                p -= 1;
                admit(p, &mut admitted_min, &mut high);
            }
            let own = (p < m && right[p] == v).then(|| (right_min[p], right_max[p]));
            lmin[j] = combine(own.map(|o| o.0), admitted_min, true, v);
            lmax[j] = combine(own.map(|o| o.1), high.best_excluding(v), false, v);
        }
    } else {
        // B is >=: supports of v are right values <= v; grow as v ascends.
        let mut p = 0;
        for (j, &v) in left.iter().enumerate() {
            while p < m && right[p] <= v {
                admit(p, &mut admitted_min, &mut high);
                p += 1;
            }
            let own = (p > 0 && right[p - 1] == v).then(|| (right_min[p - 1], right_max[p - 1]));
            lmin[j] = combine(own.map(|o| o.0), admitted_min, true, v);
            lmax[j] = combine(own.map(|o| o.1), high.best_excluding(v), false, v);
        }
    }
    (lmin, lmax)
}
