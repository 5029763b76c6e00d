//! Binary relations over integers.
//!
//! A relation is one of the built-in comparison kinds, a distance band
//! (`|v - w| <= cst` and its complement), the always-true relation, or an
//! explicit pair table, optionally wrapped in a negation. The module also
//! decides whether a relation is monotonic (admits a total value order with
//! nested support sets) and prunes chain domains so every remaining value
//! extends to a full chain under the neighbor relation.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::domain::Domain;

/// Structural shape of a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelKind {
    Eq,
    Neq,
    Lt,
    Leq,
    Gt,
    Geq,
    /// Holds for every pair.
    Universal,
    /// `|v - w| <= cst`.
    AbsLeq(i64),
    /// `|v - w| > cst`.
    AbsGt(i64),
    /// Explicit finite support set of `(v, w)` pairs.
    Table(BTreeSet<(i64, i64)>),
}

impl RelKind {
    pub fn name(&self) -> &'static str {
        match self {
            RelKind::Eq => "eq",
            RelKind::Neq => "neq",
            RelKind::Lt => "lt",
            RelKind::Leq => "leq",
            RelKind::Gt => "gt",
            RelKind::Geq => "geq",
            RelKind::Universal => "true",
            RelKind::AbsLeq(_) => "abs_leq",
            RelKind::AbsGt(_) => "abs_gt",
            RelKind::Table(_) => "table",
        }
    }
}

/// A binary relation: a kind plus a negation flag.
///
/// Negating a comparison or band kind rewrites it to the complementary kind,
/// so the flag is only ever set on `Universal` and `Table`, whose complements
/// have no finite structural form. Double negation restores the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinRel {
    kind: RelKind,
    negated: bool,
}

impl BinRel {
    pub fn new(kind: RelKind) -> Self {
        BinRel::from_parts(kind, false)
    }

    /// Builds a relation, normalizing a negated comparison or band kind to
    /// its structural complement.
    pub fn from_parts(kind: RelKind, negated: bool) -> Self {
        if !negated {
            return BinRel { kind, negated };
        }
        match kind {
            RelKind::Eq => BinRel::new(RelKind::Neq),
            RelKind::Neq => BinRel::new(RelKind::Eq),
            RelKind::Lt => BinRel::new(RelKind::Geq),
            RelKind::Leq => BinRel::new(RelKind::Gt),
            RelKind::Gt => BinRel::new(RelKind::Leq),
            RelKind::Geq => BinRel::new(RelKind::Lt),
            RelKind::AbsLeq(c) => BinRel::new(RelKind::AbsGt(c)),
            RelKind::AbsGt(c) => BinRel::new(RelKind::AbsLeq(c)),
            kind @ (RelKind::Universal | RelKind::Table(_)) => BinRel { kind, negated: true },
        }
    }

    pub fn table(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        BinRel::new(RelKind::Table(pairs.into_iter().collect()))
    }

    pub fn kind(&self) -> &RelKind {
        &self.kind
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn holds(&self, v: i64, w: i64) -> bool {
        let base = match &self.kind {
            RelKind::Eq => v == w,
            RelKind::Neq => v != w,
            RelKind::Lt => v < w,
            RelKind::Leq => v <= w,
            RelKind::Gt => v > w,
            RelKind::Geq => v >= w,
            RelKind::Universal => true,
            // i128 keeps the difference exact at the i64 extremes.
            RelKind::AbsLeq(c) => (v as i128 - w as i128).abs() <= *c as i128,
            RelKind::AbsGt(c) => (v as i128 - w as i128).abs() > *c as i128,
            RelKind::Table(pairs) => pairs.contains(&(v, w)),
        };
        base != self.negated
    }

    /// The complement relation: `negate(R)(v, w) == !R(v, w)`.
    pub fn negate(&self) -> BinRel {
        BinRel::from_parts(self.kind.clone(), !self.negated)
    }

    /// The transposed relation: `flip(R)(v, w) == R(w, v)`.
    pub fn flip(&self) -> BinRel {
        let kind = match &self.kind {
            RelKind::Lt => RelKind::Gt,
            RelKind::Gt => RelKind::Lt,
            RelKind::Leq => RelKind::Geq,
            RelKind::Geq => RelKind::Leq,
            RelKind::Table(pairs) => RelKind::Table(pairs.iter().map(|&(v, w)| (w, v)).collect()),
            other => other.clone(),
        };
        BinRel { kind, negated: self.negated }
    }
}

// Wire form: {"kind":"eq"}, {"kind":"abs_leq","cst":2},
// {"kind":"table","pairs":[[1,2],...]}, each with an optional "negated" flag
// so negated universal/table relations survive a round trip.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelWire {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cst: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<(i64, i64)>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    negated: bool,
}

impl RelWire {
    fn into_rel(self) -> Result<BinRel, String> {
        if self.cst.is_some() && !matches!(self.kind.as_str(), "abs_leq" | "abs_gt") {
            return Err(format!("relation kind \"{}\" does not take a \"cst\" field", self.kind));
        }
        if self.pairs.is_some() && self.kind != "table" {
            return Err(format!("relation kind \"{}\" does not take a \"pairs\" field", self.kind));
        }
        let kind = match self.kind.as_str() {
            "eq" => RelKind::Eq,
            "neq" => RelKind::Neq,
            "lt" => RelKind::Lt,
            "leq" => RelKind::Leq,
            "gt" => RelKind::Gt,
            "geq" => RelKind::Geq,
            "true" => RelKind::Universal,
            "abs_leq" | "abs_gt" => {
                let cst = self
                    .cst
                    .ok_or_else(|| format!("relation kind \"{}\" requires a \"cst\" field", self.kind))?;
                if cst < 0 {
                    return Err(format!("relation \"{}\" requires cst >= 0, got {cst}", self.kind));
                }
                if self.kind == "abs_leq" {
                    RelKind::AbsLeq(cst)
                } else {
                    RelKind::AbsGt(cst)
                }
            }
            "table" => {
                let pairs = self
                    .pairs
                    .ok_or_else(|| "relation kind \"table\" requires a \"pairs\" field".to_string())?;
                RelKind::Table(pairs.into_iter().collect())
            }
            other => return Err(format!("unknown relation kind \"{other}\"")),
        };
        Ok(BinRel::from_parts(kind, self.negated))
    }
}

impl Serialize for BinRel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (cst, pairs) = match &self.kind {
            RelKind::AbsLeq(c) | RelKind::AbsGt(c) => (Some(*c), None),
            RelKind::Table(p) => (None, Some(p.iter().copied().collect())),
            _ => (None, None),
        };
        RelWire {
            kind: self.kind.name().to_string(),
            cst,
            pairs,
            negated: self.negated,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BinRel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        RelWire::deserialize(deserializer)?
            .into_rel()
            .map_err(serde::de::Error::custom)
    }
}

/// A witness that a relation is monotonic on a value universe: a total order
/// under which every left-argument support set is an upward-closed suffix,
/// so later values support subsets of what earlier values support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicOrder {
    /// Universe values, order-smallest (largest support set) first.
    pub values: Vec<i64>,
    /// Support-set size of each value, parallel to `values`.
    pub support_counts: Vec<usize>,
}

/// Searches for a monotonic order of `rel` over `universe`.
///
/// Candidate construction: sort by descending left-support count, breaking
/// ties by ascending right-support count and then by ascending value. Any
/// witness order must be sorted that way up to fully interchangeable values,
/// so verifying that each support set is a suffix of the one candidate is a
/// complete decision procedure. O(|universe|^2).
pub fn monotonic_order(rel: &BinRel, universe: &[i64]) -> Option<MonotonicOrder> {
    let uni: Vec<i64> = {
        let mut u = universe.to_vec();
        u.sort_unstable();
        u.dedup();
        u
    };
    let m = uni.len();
    if m == 0 {
        return Some(MonotonicOrder { values: vec![], support_counts: vec![] });
    }

    let mut supports = vec![vec![false; m]; m];
    let mut left_count = vec![0usize; m];
    let mut right_count = vec![0usize; m];
    for a in 0..m {
        for b in 0..m {
            if rel.holds(uni[a], uni[b]) {
                supports[a][b] = true;
                left_count[a] += 1;
                right_count[b] += 1;
            }
        }
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        left_count[b]
            .cmp(&left_count[a])
            .then(right_count[a].cmp(&right_count[b]))
            .then(uni[a].cmp(&uni[b]))
    });
    let mut pos = vec![0usize; m];
    for (p, &idx) in order.iter().enumerate() {
        pos[idx] = p;
    }

    // Each support set must be exactly the last left_count[a] values of the
    // candidate order; that is both the nesting and the closure condition.
    for a in 0..m {
        let cut = m - left_count[a];
        for b in 0..m {
            if supports[a][b] != (pos[b] >= cut) {
                return None;
            }
        }
    }

    Some(MonotonicOrder {
        values: order.iter().map(|&idx| uni[idx]).collect(),
        support_counts: order.iter().map(|&idx| left_count[idx]).collect(),
    })
}

/// How chain pruning locates order-extremal values of a domain.
#[derive(Debug, Clone)]
pub(crate) enum BOrder {
    /// Order-smallest value is the numeric minimum (lt, leq).
    Ascending,
    /// Order-smallest value is the numeric maximum (gt, geq).
    Descending,
    /// Every value supports everything; pruning is a no-op.
    Any,
    /// Explicit position map from a computed monotonic order.
    Explicit(HashMap<i64, usize>),
}

/// Resolves the order used by chain pruning, hard-wiring the comparison
/// kinds and falling back to the general search on the domain union.
pub(crate) fn b_order(b: &BinRel, domains: &[Domain]) -> Option<BOrder> {
    if !b.is_negated() {
        match b.kind() {
            RelKind::Universal => return Some(BOrder::Any),
            RelKind::Lt | RelKind::Leq => return Some(BOrder::Ascending),
            RelKind::Gt | RelKind::Geq => return Some(BOrder::Descending),
            _ => {}
        }
    }
    let universe: Vec<i64> = domains
        .iter()
        .flat_map(|d| d.iter())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let order = monotonic_order(b, &universe)?;
    let map = order.values.iter().enumerate().map(|(p, &v)| (v, p)).collect();
    Some(BOrder::Explicit(map))
}

impl BOrder {
    /// Order-smallest member of `dom`: its support set contains every other
    /// member's support set.
    fn order_min(&self, dom: &Domain) -> i64 {
        match self {
            BOrder::Ascending | BOrder::Any => dom.min().unwrap(),
            BOrder::Descending => dom.max().unwrap(),
            BOrder::Explicit(pos) => dom.iter().min_by_key(|v| pos[v]).unwrap(),
        }
    }

    /// Order-largest member of `dom`: it belongs to every member's support
    /// set as soon as any member of `dom` does.
    fn order_max(&self, dom: &Domain) -> i64 {
        match self {
            BOrder::Ascending | BOrder::Any => dom.max().unwrap(),
            BOrder::Descending => dom.min().unwrap(),
            BOrder::Explicit(pos) => dom.iter().max_by_key(|v| pos[v]).unwrap(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PruneError {
    #[error("the neighbor relation is not monotonic on the domain universe")]
    NonMonotonicB,
    #[error("domain of x{pos} became empty")]
    Empty { pos: usize },
}

/// Removes every value that cannot be extended to a full sequence whose
/// consecutive pairs all satisfy `b`. Two sweeps over the chain, each pair in
/// time linear in the two domain sizes, so the total is linear in the sum of
/// domain sizes.
///
/// Requires `b` monotonic on the domain union; returns the pruned domains.
pub fn prune_b_coherent(x: &[Domain], b: &BinRel) -> Result<Vec<Domain>, PruneError> {
    let order = b_order(b, x).ok_or(PruneError::NonMonotonicB)?;
    let mut domains = x.to_vec();
    prune_in_place(&mut domains, b, &order).map_err(|pos| PruneError::Empty { pos })?;
    Ok(domains)
}

/// In-place body of [`prune_b_coherent`]; returns the number of removed
/// values or the position whose domain emptied.
pub(crate) fn prune_in_place(
    domains: &mut [Domain],
    b: &BinRel,
    order: &BOrder,
) -> Result<usize, usize> {
    if matches!(order, BOrder::Any) || domains.len() < 2 {
        if let Some(pos) = domains.iter().position(|d| d.is_empty()) {
            return Err(pos);
        }
        return Ok(0);
    }
    for (pos, d) in domains.iter().enumerate() {
        if d.is_empty() {
            return Err(pos);
        }
    }
    let n = domains.len();
    let mut removed = 0;

    // Backward sweep: keep values with some successor support. A value has
    // one in the next domain iff it supports that domain's order-largest
    // member, because support sets are upward-closed along the order.
    for i in (0..n - 1).rev() {
        let top = order.order_max(&domains[i + 1]);
        removed += domains[i].retain(|&v| b.holds(v, top));
        if domains[i].is_empty() {
            return Err(i);
        }
    }

    // Forward sweep: keep values supported by some predecessor. The
    // order-smallest member of the previous domain supports the union of
    // what the others support, so testing against it alone is exact. It
    // never erases successor supports established by the backward sweep:
    // surviving values support subsets of what the order-smallest value
    // supports, and those subsets are kept intact.
    for i in 0..n - 1 {
        let bottom = order.order_min(&domains[i]);
        removed += domains[i + 1].retain(|&w| b.holds(bottom, w));
        if domains[i + 1].is_empty() {
            return Err(i + 1);
        }
    }

    Ok(removed)
}
