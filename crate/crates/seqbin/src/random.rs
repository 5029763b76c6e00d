//! Seeded random problem generation for test batteries and benchmarks.
//!
//! A family names the constraint shape; instances drawn from it share the
//! relation kinds but vary domains (and table contents) with the generator
//! state. Families parse from compact names such as `increasing_nvalue`,
//! `change:leq`, `smooth:2`, `seqbin:abs_leq(1):true` or `seqbin:table:leq`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::binrel::{BinRel, RelKind};
use crate::catalog::CatalogSpec;
use crate::domain::Domain;
use crate::instance::{Instance, Problem};

/// A relation shape: a fixed built-in kind, or a table drawn fresh for every
/// instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindSpec {
    Eq,
    Neq,
    Lt,
    Leq,
    Gt,
    Geq,
    Universal,
    AbsLeq(i64),
    AbsGt(i64),
    RandomTable,
}

impl KindSpec {
    fn parse(text: &str) -> Result<KindSpec, FamilyParseError> {
        let bad = || FamilyParseError(format!("unknown relation kind \"{text}\""));
        if let Some(inner) = text.strip_prefix("abs_leq(").and_then(|t| t.strip_suffix(')')) {
            let cst: i64 = inner.parse().map_err(|_| bad())?;
            if cst < 0 {
                return Err(FamilyParseError(format!("band width must be >= 0, got {cst}")));
            }
            return Ok(KindSpec::AbsLeq(cst));
        }
        if let Some(inner) = text.strip_prefix("abs_gt(").and_then(|t| t.strip_suffix(')')) {
            let cst: i64 = inner.parse().map_err(|_| bad())?;
            if cst < 0 {
                return Err(FamilyParseError(format!("band width must be >= 0, got {cst}")));
            }
            return Ok(KindSpec::AbsGt(cst));
        }
        match text {
            "eq" => Ok(KindSpec::Eq),
            "neq" => Ok(KindSpec::Neq),
            "lt" => Ok(KindSpec::Lt),
            "leq" => Ok(KindSpec::Leq),
            "gt" => Ok(KindSpec::Gt),
            "geq" => Ok(KindSpec::Geq),
            "true" => Ok(KindSpec::Universal),
            "table" => Ok(KindSpec::RandomTable),
            _ => Err(bad()),
        }
    }

    fn comparison(&self) -> Option<RelKind> {
        match self {
            KindSpec::Eq => Some(RelKind::Eq),
            KindSpec::Neq => Some(RelKind::Neq),
            KindSpec::Lt => Some(RelKind::Lt),
            KindSpec::Leq => Some(RelKind::Leq),
            KindSpec::Gt => Some(RelKind::Gt),
            KindSpec::Geq => Some(RelKind::Geq),
            _ => None,
        }
    }

    fn realize(&self, d: i64, rng: &mut impl Rng) -> BinRel {
        let kind = match self {
            KindSpec::Eq => RelKind::Eq,
            KindSpec::Neq => RelKind::Neq,
            KindSpec::Lt => RelKind::Lt,
            KindSpec::Leq => RelKind::Leq,
            KindSpec::Gt => RelKind::Gt,
            KindSpec::Geq => RelKind::Geq,
            KindSpec::Universal => RelKind::Universal,
            KindSpec::AbsLeq(cst) => RelKind::AbsLeq(*cst),
            KindSpec::AbsGt(cst) => RelKind::AbsGt(*cst),
            KindSpec::RandomTable => {
                let mut pairs = std::collections::BTreeSet::new();
                for v in 0..d {
                    for w in 0..d {
                        if rng.random_bool(0.5) {
                            pairs.insert((v, w));
                        }
                    }
                }
                RelKind::Table(pairs)
            }
        };
        BinRel::new(kind)
    }
}

impl fmt::Display for KindSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KindSpec::AbsLeq(cst) => write!(f, "abs_leq({cst})"),
            KindSpec::AbsGt(cst) => write!(f, "abs_gt({cst})"),
            KindSpec::RandomTable => write!(f, "table"),
            KindSpec::Eq => write!(f, "eq"),
            KindSpec::Neq => write!(f, "neq"),
            KindSpec::Lt => write!(f, "lt"),
            KindSpec::Leq => write!(f, "leq"),
            KindSpec::Gt => write!(f, "gt"),
            KindSpec::Geq => write!(f, "geq"),
            KindSpec::Universal => write!(f, "true"),
        }
    }
}

/// A named shape instances can be drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    IncreasingNvalue,
    Change(KindSpec),
    Smooth(i64),
    Core { c: KindSpec, b: KindSpec },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct FamilyParseError(String);

impl FromStr for Family {
    type Err = FamilyParseError;

    fn from_str(s: &str) -> Result<Family, FamilyParseError> {
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let arity = |want: usize| {
            if rest.len() == want {
                Ok(())
            } else {
                Err(FamilyParseError(format!(
                    "family \"{head}\" takes {want} parameter(s), got {}",
                    rest.len()
                )))
            }
        };
        match head {
            "increasing_nvalue" => {
                arity(0)?;
                Ok(Family::IncreasingNvalue)
            }
            "change" => {
                arity(1)?;
                let kind = KindSpec::parse(rest[0])?;
                if kind.comparison().is_none() {
                    return Err(FamilyParseError(format!(
                        "change takes a comparison, got \"{}\"",
                        rest[0]
                    )));
                }
                Ok(Family::Change(kind))
            }
            "smooth" => {
                arity(1)?;
                let cst: i64 = rest[0]
                    .parse()
                    .map_err(|_| FamilyParseError(format!("bad band width \"{}\"", rest[0])))?;
                if cst < 0 {
                    return Err(FamilyParseError(format!("band width must be >= 0, got {cst}")));
                }
                Ok(Family::Smooth(cst))
            }
            "seqbin" => {
                arity(2)?;
                Ok(Family::Core { c: KindSpec::parse(rest[0])?, b: KindSpec::parse(rest[1])? })
            }
            _ => Err(FamilyParseError(format!("unknown family \"{head}\""))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::IncreasingNvalue => write!(f, "increasing_nvalue"),
            Family::Change(kind) => write!(f, "change:{kind}"),
            Family::Smooth(cst) => write!(f, "smooth:{cst}"),
            Family::Core { c, b } => write!(f, "seqbin:{c}:{b}"),
        }
    }
}

fn random_domain(lo: i64, hi: i64, rng: &mut impl Rng) -> Domain {
    loop {
        let values: Vec<i64> = (lo..=hi).filter(|_| rng.random_bool(0.7)).collect();
        if !values.is_empty() {
            return Domain::new(values);
        }
    }
}

fn random_count_domain(lo: i64, hi: i64, rng: &mut impl Rng) -> Domain {
    loop {
        let a = rng.random_range(lo..=hi);
        let b = rng.random_range(a..=hi);
        let d = random_domain(a, b, rng);
        if !d.is_empty() {
            return d;
        }
    }
}

/// Draws one problem: `len` variables over value range `[0, d)`, a count
/// domain that is a punctured subinterval of the family's count range, and
/// fresh table contents where the family asks for them.
pub fn random_problem(family: &Family, len: usize, d: i64, rng: &mut impl Rng) -> Problem {
    assert!(len >= 1, "a chain needs at least one variable");
    assert!(d >= 1, "the value range needs at least one value");
    let x: Vec<Domain> = (0..len).map(|_| random_domain(0, d - 1, rng)).collect();
    match family {
        Family::IncreasingNvalue => Problem::Catalog {
            spec: CatalogSpec::IncreasingNvalue,
            n: random_count_domain(1, len as i64, rng),
            x,
        },
        Family::Change(kind) => {
            let ctr = BinRel::new(kind.comparison().expect("parser admits comparisons only"));
            Problem::Catalog {
                spec: CatalogSpec::Change { ctr },
                n: random_count_domain(0, len as i64 - 1, rng),
                x,
            }
        }
        Family::Smooth(cst) => Problem::Catalog {
            spec: CatalogSpec::Smooth { cst: *cst },
            n: random_count_domain(0, len as i64 - 1, rng),
            x,
        },
        Family::Core { c, b } => {
            let c = c.realize(d, rng);
            let b = b.realize(d, rng);
            Problem::Core(Instance::new(random_count_domain(1, len as i64, rng), x, c, b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_names_round_trip() {
        for name in [
            "increasing_nvalue",
            "change:leq",
            "change:neq",
            "smooth:2",
            "seqbin:eq:true",
            "seqbin:abs_leq(1):true",
            "seqbin:abs_gt(0):geq",
            "seqbin:table:leq",
        ] {
            let family: Family = name.parse().unwrap();
            assert_eq!(family.to_string(), name);
        }
    }

    #[test]
    fn malformed_family_names_are_rejected() {
        for name in [
            "bogus",
            "change",
            "change:abs_leq(1)",
            "change:table",
            "smooth:-1",
            "smooth:x",
            "seqbin:eq",
            "seqbin:eq:true:extra",
            "seqbin:abs_leq(-2):true",
            "increasing_nvalue:3",
        ] {
            assert!(name.parse::<Family>().is_err(), "{name} should not parse");
        }
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let family: Family = "seqbin:table:leq".parse().unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let pa = random_problem(&family, 4, 5, &mut a);
        let pb = random_problem(&family, 4, 5, &mut b);
        assert_eq!(pa, pb);
        let mut c = ChaCha8Rng::seed_from_u64(8);
        let pc = random_problem(&family, 4, 5, &mut c);
        assert_ne!(pa, pc, "different seeds should almost surely differ");
    }

    #[test]
    fn generated_problems_stay_in_their_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for name in ["increasing_nvalue", "change:lt", "smooth:1", "seqbin:neq:true"] {
            let family: Family = name.parse().unwrap();
            for _ in 0..50 {
                let (n, x) = match random_problem(&family, 3, 4, &mut rng) {
                    Problem::Core(inst) => (inst.n, inst.x),
                    Problem::Catalog { n, x, .. } => (n, x),
                };
                assert!(!n.is_empty());
                let (lo, hi) = match family {
                    Family::Change(_) | Family::Smooth(_) => (0, 2),
                    _ => (1, 3),
                };
                assert!(n.min().unwrap() >= lo && n.max().unwrap() <= hi);
                for d in &x {
                    assert!(!d.is_empty());
                    assert!(d.min().unwrap() >= 0 && d.max().unwrap() <= 3);
                }
            }
        }
    }
}
