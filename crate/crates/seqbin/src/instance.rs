//! Problem instances and their JSON wire format.
//!
//! The core form pairs a count-variable domain `n` with a chain of sequence
//! variable domains `x`, a stretch relation `C` scored along the chain, and a
//! neighbor relation `B` required between consecutive values. Files may
//! instead name one of the wrapped counting constraints (`change`, `smooth`,
//! `increasing_nvalue`), which the catalog module rewrites into the core
//! form.

use serde::{Deserialize, Serialize};

use crate::binrel::{BinRel, RelKind};
use crate::catalog::CatalogSpec;
use crate::domain::Domain;

/// A core instance: count domain, sequence domains, and the two relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    /// Domain of the stretch-count variable.
    pub n: Domain,
    /// Domains of the sequence variables, left to right.
    pub x: Vec<Domain>,
    /// Stretch relation: consecutive pairs satisfying it extend a stretch.
    pub c: BinRel,
    /// Neighbor relation: every consecutive pair of a solution satisfies it.
    pub b: BinRel,
}

impl Instance {
    pub fn new(n: Domain, x: Vec<Domain>, c: BinRel, b: BinRel) -> Self {
        Instance { n, x, c, b }
    }

    /// Number of sequence variables.
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Parses the JSON wire form; rejects files that name a wrapped
    /// constraint (use [`Problem::from_json`] to accept both).
    pub fn from_json(text: &str) -> Result<Instance, ParseError> {
        match Problem::from_json(text)? {
            Problem::Core(inst) => Ok(inst),
            Problem::Catalog { spec, .. } => Err(ParseError::Invalid(format!(
                "file declares constraint \"{}\"; parse it as a Problem instead",
                spec.name()
            ))),
        }
    }

    /// Serializes back to the wire form, one line, fields in schema order.
    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            n: self.n.clone(),
            x: self.x.clone(),
            c: Some(self.c.clone()),
            b: Some(self.b.clone()),
            constraint: None,
            ctr: None,
            cst: None,
        };
        serde_json::to_string(&file).expect("instance wire form is always serializable")
    }
}

/// Either a core instance or a wrapped counting constraint with its raw
/// domains, exactly as the file stated it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    Core(Instance),
    Catalog {
        spec: CatalogSpec,
        n: Domain,
        x: Vec<Domain>,
    },
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Problem, ParseError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.into_problem()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n: Domain,
    x: Vec<Domain>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    c: Option<BinRel>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    b: Option<BinRel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constraint: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ctr: Option<BinRel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cst: Option<i64>,
}

impl InstanceFile {
    fn into_problem(self) -> Result<Problem, ParseError> {
        let invalid = |msg: String| Err(ParseError::Invalid(msg));
        if self.x.is_empty() {
            return invalid("\"x\" must list at least one variable domain".into());
        }
        if self.n.is_empty() {
            return invalid("\"n\" must be a non-empty domain".into());
        }
        let constraint = self.constraint.as_deref().unwrap_or("seqbin");
        let reject_field = |name: &str, present: bool| {
            if present {
                Err(ParseError::Invalid(format!(
                    "field \"{name}\" is not allowed with constraint \"{constraint}\""
                )))
            } else {
                Ok(())
            }
        };
        match constraint {
            "seqbin" => {
                reject_field("ctr", self.ctr.is_some())?;
                reject_field("cst", self.cst.is_some())?;
                let c = self
                    .c
                    .ok_or_else(|| ParseError::Invalid("missing relation \"C\"".into()))?;
                let b = self
                    .b
                    .ok_or_else(|| ParseError::Invalid("missing relation \"B\"".into()))?;
                Ok(Problem::Core(Instance::new(self.n, self.x, c, b)))
            }
            "change" => {
                reject_field("C", self.c.is_some())?;
                reject_field("B", self.b.is_some())?;
                reject_field("cst", self.cst.is_some())?;
                let ctr = self
                    .ctr
                    .ok_or_else(|| ParseError::Invalid("constraint \"change\" requires \"ctr\"".into()))?;
                if !matches!(
                    ctr.kind(),
                    RelKind::Eq | RelKind::Neq | RelKind::Lt | RelKind::Leq | RelKind::Gt | RelKind::Geq
                ) || ctr.is_negated()
                {
                    return invalid("\"ctr\" must be one of eq, neq, lt, leq, gt, geq".into());
                }
                Ok(Problem::Catalog {
                    spec: CatalogSpec::Change { ctr },
                    n: self.n,
                    x: self.x,
                })
            }
            "smooth" => {
                reject_field("C", self.c.is_some())?;
                reject_field("B", self.b.is_some())?;
                reject_field("ctr", self.ctr.is_some())?;
                let cst = self
                    .cst
                    .ok_or_else(|| ParseError::Invalid("constraint \"smooth\" requires \"cst\"".into()))?;
                if cst < 0 {
                    return invalid(format!("\"cst\" must be >= 0, got {cst}"));
                }
                Ok(Problem::Catalog {
                    spec: CatalogSpec::Smooth { cst },
                    n: self.n,
                    x: self.x,
                })
            }
            "increasing_nvalue" => {
                reject_field("C", self.c.is_some())?;
                reject_field("B", self.b.is_some())?;
                reject_field("ctr", self.ctr.is_some())?;
                reject_field("cst", self.cst.is_some())?;
                Ok(Problem::Catalog {
                    spec: CatalogSpec::IncreasingNvalue,
                    n: self.n,
                    x: self.x,
                })
            }
            other => invalid(format!("unknown constraint \"{other}\"")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn loads_a_core_instance() {
        let text = r#"{"n":[1,2],"x":[[1,2],[1,2]],"C":{"kind":"eq"},"B":{"kind":"leq"}}"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.len(), 2);
        assert_eq!(inst.n.values(), &[1, 2]);
        assert_eq!(inst.x[0].values(), &[1, 2]);
        assert_eq!(inst.c, BinRel::new(RelKind::Eq));
        assert_eq!(inst.b, BinRel::new(RelKind::Leq));
    }

    #[test]
    fn domains_are_normalized_on_load() {
        let text = r#"{"n":[2,1,2],"x":[[3,1,1]],"C":{"kind":"eq"},"B":{"kind":"true"}}"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.n.values(), &[1, 2]);
        assert_eq!(inst.x[0].values(), &[1, 3]);
    }

    #[test]
    fn rejects_empty_count_domain() {
        let text = r#"{"n":[],"x":[[1]],"C":{"kind":"eq"},"B":{"kind":"true"}}"#;
        let err = Instance::from_json(text).unwrap_err();
        assert!(err.to_string().contains("non-empty"), "{err}");
    }

    #[test]
    fn rejects_empty_variable_list() {
        let text = r#"{"n":[1],"x":[],"C":{"kind":"eq"},"B":{"kind":"true"}}"#;
        assert!(Instance::from_json(text).is_err());
    }

    #[test]
    fn rejects_unknown_relation_kind() {
        let text = r#"{"n":[1],"x":[[1]],"C":{"kind":"ne"},"B":{"kind":"true"}}"#;
        let err = Instance::from_json(text).unwrap_err();
        assert!(err.to_string().contains("unknown relation kind"), "{err}");
    }

    #[test]
    fn loads_catalog_constraints() {
        let text = r#"{"n":[0,1],"x":[[1,2],[1,2]],"constraint":"change","ctr":{"kind":"eq"}}"#;
        match Problem::from_json(text).unwrap() {
            Problem::Catalog { spec: CatalogSpec::Change { ctr }, .. } => {
                assert_eq!(ctr, BinRel::new(RelKind::Eq));
            }
            other => panic!("unexpected parse: {other:?}"),
        }

        let text = r#"{"n":[1],"x":[[1]],"constraint":"smooth","cst":2}"#;
        assert!(matches!(
            Problem::from_json(text).unwrap(),
            Problem::Catalog { spec: CatalogSpec::Smooth { cst: 2 }, .. }
        ));

        let text = r#"{"n":[1],"x":[[1]],"constraint":"increasing_nvalue"}"#;
        assert!(matches!(
            Problem::from_json(text).unwrap(),
            Problem::Catalog { spec: CatalogSpec::IncreasingNvalue, .. }
        ));
    }

    #[test]
    fn core_loader_rejects_catalog_files() {
        let text = r#"{"n":[1],"x":[[1]],"constraint":"increasing_nvalue"}"#;
        assert!(Instance::from_json(text).is_err());
        assert!(Problem::from_json(text).is_ok());
    }

    #[test]
    fn catalog_files_reject_core_relations() {
        let text = r#"{"n":[1],"x":[[1]],"constraint":"smooth","cst":1,"C":{"kind":"eq"}}"#;
        let err = Problem::from_json(text).unwrap_err();
        assert!(err.to_string().contains("not allowed"), "{err}");
    }

    #[test]
    fn change_requires_a_comparison_ctr() {
        let text = r#"{"n":[0],"x":[[1]],"constraint":"change","ctr":{"kind":"true"}}"#;
        assert!(Problem::from_json(text).is_err());
        let text = r#"{"n":[0],"x":[[1]],"constraint":"change"}"#;
        assert!(Problem::from_json(text).is_err());
    }

    #[test]
    fn dump_reflects_current_domains() {
        let text = r#"{"n":[1,2],"x":[[1,2],[1,2]],"C":{"kind":"eq"},"B":{"kind":"leq"}}"#;
        let mut inst = Instance::from_json(text).unwrap();
        inst.x[0].remove(2);
        let out = inst.to_json();
        assert!(out.contains(r#""x":[[1],[1,2]]"#), "{out}");
        assert!(out.contains(r#""n":[1,2]"#), "{out}");
    }

    fn arb_rel() -> impl Strategy<Value = BinRel> {
        prop_oneof![
            Just(BinRel::new(RelKind::Eq)),
            Just(BinRel::new(RelKind::Neq)),
            Just(BinRel::new(RelKind::Lt)),
            Just(BinRel::new(RelKind::Geq)),
            Just(BinRel::new(RelKind::Universal)),
            (0i64..4).prop_map(|c| BinRel::new(RelKind::AbsLeq(c))),
            (0i64..4).prop_map(|c| BinRel::new(RelKind::AbsGt(c))),
            proptest::collection::btree_set((-2i64..3, -2i64..3), 0..8)
                .prop_map(|p| BinRel::new(RelKind::Table(p))),
        ]
    }

    fn arb_domain() -> impl Strategy<Value = Domain> {
        proptest::collection::btree_set(-4i64..8, 1..5).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #[test]
        fn json_round_trip_is_identity(
            n in arb_domain(),
            x in proptest::collection::vec(arb_domain(), 1..4),
            c in arb_rel(),
            b in arb_rel(),
        ) {
            let inst = Instance::new(n, x, c, b);
            let text = inst.to_json();
            let back = Instance::from_json(&text).unwrap();
            prop_assert_eq!(back, inst);
        }
    }
}
