//! Rewrites of classic counting constraints into the core stretch form.
//!
//! `change` counts the positions where a comparison holds between neighbors,
//! `smooth` the positions where neighbors differ by more than a band width,
//! `increasing_nvalue` the distinct values of a nondecreasing chain. Each is
//! a stretch count in disguise: breaks between maximal runs of the negated
//! comparison are exactly the counted positions, so the stretch count exceeds
//! the user count by one; distinct values of a nondecreasing chain are its
//! equal-value stretches.

use crate::binrel::{BinRel, RelKind};
use crate::domain::Domain;
use crate::instance::{Instance, Problem};
use crate::propagator::{self, NonMonotonicB, Propagation};

/// A counting constraint from the catalog, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogSpec {
    /// Count positions where `ctr` holds between neighbors.
    Change { ctr: BinRel },
    /// Count positions where neighbors differ by more than `cst`.
    Smooth { cst: i64 },
    /// Chain is nondecreasing; count its distinct values.
    IncreasingNvalue,
}

impl CatalogSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogSpec::Change { .. } => "change",
            CatalogSpec::Smooth { .. } => "smooth",
            CatalogSpec::IncreasingNvalue => "increasing_nvalue",
        }
    }
}

/// Whether every intermediate stretch count between the reachable bounds is
/// guaranteed realizable, which is what makes the filter exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuityTag {
    Continuous,
    NotGuaranteed,
}

/// Classifies a relation pair by the known continuity guarantees: changing
/// one value of a coherent assignment moves the stretch count by at most one
/// for comparison stretches over unordered chains and equality stretches over
/// ordered chains. A stretch relation that holds everywhere or nowhere pins
/// the count, which is trivially continuous.
pub fn continuity_tag(c: &BinRel, b: &BinRel) -> ContinuityTag {
    if matches!(c.kind(), RelKind::Universal) {
        return ContinuityTag::Continuous;
    }
    if c.is_negated() || b.is_negated() {
        return ContinuityTag::NotGuaranteed;
    }
    match (c.kind(), b.kind()) {
        (RelKind::Lt | RelKind::Leq | RelKind::Gt | RelKind::Geq, RelKind::Universal) => {
            ContinuityTag::Continuous
        }
        (RelKind::Eq, RelKind::Leq | RelKind::Geq) => ContinuityTag::Continuous,
        _ => ContinuityTag::NotGuaranteed,
    }
}

/// A catalog constraint rewritten into the core form. The user count and the
/// stretch count differ by `n_offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reformulation {
    pub instance: Instance,
    pub n_offset: i64,
    pub continuity: ContinuityTag,
}

impl Reformulation {
    pub fn user_count(&self, core: i64) -> i64 {
        core - self.n_offset
    }

    pub fn core_count(&self, user: i64) -> i64 {
        user + self.n_offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("change needs a plain comparison relation, got {0}")]
    UnsupportedCtr(String),
    #[error("smooth needs a non-negative band width, got {0}")]
    NegativeWidth(i64),
    #[error("a counting constraint needs at least one variable")]
    EmptyScope,
}

/// Rewrites one catalog constraint over the given domains into the core
/// form. Count values with no stretch-count counterpart are dropped here;
/// they are unreachable either way, since stretch counts never exceed the
/// chain length.
pub fn to_seqbin(spec: &CatalogSpec, n: &Domain, x: &[Domain]) -> Result<Reformulation, CatalogError> {
    if x.is_empty() {
        return Err(CatalogError::EmptyScope);
    }
    let universal = BinRel::new(RelKind::Universal);
    let (c, b, offset) = match spec {
        CatalogSpec::Change { ctr } => {
            if ctr.is_negated()
                || !matches!(
                    ctr.kind(),
                    RelKind::Eq
                        | RelKind::Neq
                        | RelKind::Lt
                        | RelKind::Leq
                        | RelKind::Gt
                        | RelKind::Geq
                )
            {
                return Err(CatalogError::UnsupportedCtr(ctr.kind().name().into()));
            }
            // A stretch breaks exactly where the counted comparison holds.
            (ctr.negate(), universal, 1)
        }
        CatalogSpec::Smooth { cst } => {
            if *cst < 0 {
                return Err(CatalogError::NegativeWidth(*cst));
            }
            (BinRel::new(RelKind::AbsLeq(*cst)), universal, 1)
        }
        CatalogSpec::IncreasingNvalue => {
            (BinRel::new(RelKind::Eq), BinRel::new(RelKind::Leq), 0)
        }
    };
    let shifted = Domain::new(n.iter().filter_map(|v| v.checked_add(offset)).collect());
    let continuity = continuity_tag(&c, &b);
    Ok(Reformulation {
        instance: Instance::new(shifted, x.to_vec(), c, b),
        n_offset: offset,
        continuity,
    })
}

/// Turns any parsed problem into a core reformulation; a core instance maps
/// to itself with no count shift.
pub fn problem_to_core(problem: &Problem) -> Result<Reformulation, CatalogError> {
    match problem {
        Problem::Core(inst) => Ok(Reformulation {
            n_offset: 0,
            continuity: continuity_tag(&inst.c, &inst.b),
            instance: inst.clone(),
        }),
        Problem::Catalog { spec, n, x } => to_seqbin(spec, n, x),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ProblemError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    NonMonotonic(#[from] NonMonotonicB),
}

/// Filters a parsed problem and reports the outcome in its own count space.
pub fn propagate_problem(problem: &Problem) -> Result<Propagation, ProblemError> {
    let reform = problem_to_core(problem)?;
    let user_n_len = match problem {
        Problem::Core(inst) => inst.n.len(),
        Problem::Catalog { n, .. } => n.len(),
    };
    let dropped_by_shift = user_n_len - reform.instance.n.len();
    let mut outcome = propagator::propagate(&reform.instance)?;
    outcome.n = Domain::new(outcome.n.iter().map(|v| reform.user_count(v)).collect());
    outcome.removed += dropped_by_shift;
    Ok(outcome)
}
