//! JSON instance documents. A top-level `"kind"` selects the payload:
//!
//! ```json
//! {"kind": "multiplicity", "matrix": [[1, 0], [0, 1], [1, 1]]}
//! {"kind": "galois", "source": {"size": 2, "covers": [[0, 1]]},
//!  "target": {"size": 2, "covers": [[0, 1]]}, "lower": [0, 1]}
//! {"kind": "action", "space": {"size": 2}, "generators": [[1, 0]]}
//! ```
//!
//! Orders are given by cover pairs `[a, b]` meaning `a < b`; the transitive
//! closure is taken on load. For spaces the order is the specialization
//! order, so open sets are the down-sets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fd::{fixtures as fd_fixtures, MultiplicityInclusion};
use crate::galois::{GaloisConnection, MonotoneMap};
use crate::graph::{fixtures as graph_fixtures, FiniteGraph};
use crate::lattice::{Elem, FiniteLattice, FinitePoset, SetLattice};
use crate::points::PointSet;
use crate::quasiorbit::InclusionData;
use crate::spectrum::FiniteT0Space;
use crate::topo::{BundleMap, FiniteGroupAction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSpec {
    pub size: usize,
    #[serde(default)]
    pub covers: Vec<(usize, usize)>,
}

impl OrderSpec {
    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_covers(self.size, &self.covers)
    }

    pub fn from_poset(order: &FinitePoset) -> Self {
        OrderSpec {
            size: order.size(),
            covers: order.covers(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    /// A single lattice, analysed through its identity connection.
    Lattice { order: OrderSpec },
    /// A join-preserving `lower` map between two lattices; `upper` is
    /// synthesized when absent and checked when present.
    Galois {
        source: OrderSpec,
        target: OrderSpec,
        lower: Vec<Elem>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        upper: Option<Vec<Elem>>,
    },
    Multiplicity {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<Vec<u32>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fixture: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dims: Option<Dims>,
    },
    Bundle {
        total: OrderSpec,
        base: OrderSpec,
        proj: Vec<usize>,
    },
    Action {
        space: OrderSpec,
        generators: Vec<Vec<usize>>,
    },
    Graph {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<usize>,
        #[serde(default)]
        edges: Vec<(usize, usize)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fixture: Option<String>,
        /// Defaults to the vertices with outgoing edges.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        j: Option<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub payload: Payload,
}

/// A validation failure tied to the document field that caused it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("field \"{field}\": {error}")]
pub struct FieldError {
    pub field: &'static str,
    pub error: Error,
}

fn at<T>(field: &'static str, r: Result<T>) -> std::result::Result<T, FieldError> {
    r.map_err(|error| FieldError { field, error })
}

fn lattice_at(field: &'static str, spec: &OrderSpec) -> std::result::Result<Arc<FiniteLattice>, FieldError> {
    at(field, spec.to_poset().and_then(FiniteLattice::from_poset).map(Arc::new))
}

fn space_at(field: &'static str, spec: &OrderSpec) -> std::result::Result<FiniteT0Space, FieldError> {
    at(field, spec.to_poset().and_then(FiniteT0Space::from_order))
}

fn unknown_fixture(name: &str, known: &[&str]) -> Error {
    Error::Invalid(format!("unknown fixture \"{name}\"; known: {}", known.join(", ")))
}

/// A validated instance.
#[derive(Clone, Debug)]
pub enum Instance {
    Lattice(Arc<FiniteLattice>),
    Galois(GaloisConnection),
    Multiplicity(MultiplicityInclusion),
    Bundle(BundleMap),
    Action(FiniteGroupAction),
    Graph { graph: FiniteGraph, j: PointSet },
}

impl InstanceDocument {
    pub fn new(payload: Payload) -> Self {
        InstanceDocument { name: None, payload }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn build(&self) -> std::result::Result<Instance, FieldError> {
        match &self.payload {
            Payload::Lattice { order } => Ok(Instance::Lattice(lattice_at("order", order)?)),
            Payload::Galois {
                source,
                target,
                lower,
                upper,
            } => {
                let (s, t) = (lattice_at("source", source)?, lattice_at("target", target)?);
                let lower = at("lower", MonotoneMap::new(s.clone(), t.clone(), lower.clone()))?;
                let gc = match upper {
                    Some(upper) => {
                        let upper = at("upper", MonotoneMap::new(t, s, upper.clone()))?;
                        at("upper", GaloisConnection::new(lower, upper))?
                    }
                    None => at("lower", GaloisConnection::from_lower(lower))?,
                };
                Ok(Instance::Galois(gc))
            }
            Payload::Multiplicity {
                matrix,
                fixture,
                dims,
            } => {
                let m = match (matrix, fixture) {
                    (Some(matrix), None) => at("matrix", MultiplicityInclusion::new(matrix.clone()))?,
                    (None, Some(name)) => at(
                        "fixture",
                        fd_fixtures::by_name(name).ok_or_else(|| unknown_fixture(name, &fd_fixtures::NAMES)),
                    )?,
                    _ => {
                        return Err(FieldError {
                            field: "matrix",
                            error: Error::Invalid("give exactly one of \"matrix\" and \"fixture\"".into()),
                        })
                    }
                };
                match dims {
                    Some(d) => Ok(Instance::Multiplicity(at("dims", m.with_dims(d.a.clone(), d.b.clone()))?)),
                    None => Ok(Instance::Multiplicity(m)),
                }
            }
            Payload::Bundle { total, base, proj } => {
                let (total, base) = (space_at("total", total)?, space_at("base", base)?);
                Ok(Instance::Bundle(at("proj", BundleMap::new(total, base, proj.clone()))?))
            }
            Payload::Action { space, generators } => {
                let space = space_at("space", space)?;
                Ok(Instance::Action(at("generators", FiniteGroupAction::new(space, generators.clone()))?))
            }
            Payload::Graph {
                vertices,
                edges,
                fixture,
                j,
            } => {
                let graph = match (vertices, fixture) {
                    (Some(n), None) => at("edges", FiniteGraph::new(*n, edges.clone()))?,
                    (None, Some(name)) => at(
                        "fixture",
                        graph_fixtures::by_name(name).ok_or_else(|| unknown_fixture(name, &graph_fixtures::NAMES)),
                    )?,
                    _ => {
                        return Err(FieldError {
                            field: "vertices",
                            error: Error::Invalid("give exactly one of \"vertices\" and \"fixture\"".into()),
                        })
                    }
                };
                let j = match j {
                    None => graph.j_x(),
                    Some(list) => {
                        if let Some(&v) = list.iter().find(|&&v| v >= graph.vertices()) {
                            return Err(FieldError {
                                field: "j",
                                error: Error::JNotAdmissible(format!("vertex {v} does not exist")),
                            });
                        }
                        PointSet::from_points(list.iter().copied())
                    }
                };
                Ok(Instance::Graph { graph, j })
            }
        }
    }
}

impl Instance {
    /// The Galois connection behind the instance; `None` for graphs.
    pub fn inclusion_data(&self) -> Result<Option<InclusionData>> {
        Ok(Some(match self {
            Instance::Lattice(l) => InclusionData::new(GaloisConnection::identity(l.clone()))?,
            Instance::Galois(gc) => InclusionData::new(gc.clone())?,
            Instance::Multiplicity(m) => m.to_inclusion_data()?,
            Instance::Bundle(b) => b.inclusion_data()?,
            Instance::Action(a) => a.inclusion_data()?,
            Instance::Graph { .. } => return Ok(None),
        }))
    }

    /// Human-readable name of an element of the source lattice.
    pub fn source_label(&self, e: Elem) -> String {
        match self {
            Instance::Multiplicity(m) => m.a_lattice().map_or_else(|_| format!("#{e}"), |l| summand_label('a', l.set(e))),
            Instance::Bundle(b) => b.base().opens().set(e).to_string(),
            Instance::Action(a) => a.space().opens().set(e).to_string(),
            _ => format!("#{e}"),
        }
    }

    /// Human-readable name of an element of the target lattice.
    pub fn target_label(&self, e: Elem) -> String {
        match self {
            Instance::Multiplicity(m) => m.b_lattice().map_or_else(|_| format!("#{e}"), |l| summand_label('b', l.set(e))),
            Instance::Bundle(b) => b.total().opens().set(e).to_string(),
            Instance::Action(a) => a.invariant_opens().set(e).to_string(),
            _ => format!("#{e}"),
        }
    }
}

/// `{a1,a3}` style names with 1-based summand numbers.
pub fn summand_label(prefix: char, set: PointSet) -> String {
    let names: Vec<String> = set.iter().map(|k| format!("{prefix}{}", k + 1)).collect();
    format!("{{{}}}", names.join(","))
}

/// A document for a Galois connection between two set lattices, written
/// with explicit lattice orders.
pub fn galois_document(lower: &MonotoneMap) -> InstanceDocument {
    InstanceDocument::new(Payload::Galois {
        source: OrderSpec::from_poset(lower.source().order()),
        target: OrderSpec::from_poset(lower.target().order()),
        lower: lower.values().to_vec(),
        upper: None,
    })
}

/// Down-set lattice with a join-preserving map given by images of principal
/// down-sets; used to describe generated instances compactly.
pub fn downset_map(pa: &FinitePoset, pb: &FinitePoset, images: &[PointSet]) -> Result<MonotoneMap> {
    let (a, b) = (SetLattice::down_sets(pa)?, SetLattice::down_sets(pb)?);
    MonotoneMap::from_fn(a.lattice().clone(), b.lattice().clone(), |e| {
        let s = a.set(e);
        let image = s.iter().fold(PointSet::EMPTY, |acc, x| acc | images[x]);
        b.elem(image).unwrap_or(usize::MAX)
    })
    .map_err(|_| Error::Invalid("point images are not monotone down-sets".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasiorbit::{check_jr, check_mif};

    #[test]
    fn multiplicity_round_trip() {
        let text = r#"{"kind": "multiplicity", "name": "x", "matrix": [[1, 0], [0, 1], [1, 1]]}"#;
        let doc = InstanceDocument::from_json(text).unwrap();
        assert_eq!(doc.name.as_deref(), Some("x"));
        assert_eq!(InstanceDocument::from_json(&doc.to_json()).unwrap(), doc);
        let inst = doc.build().unwrap();
        let d = inst.inclusion_data().unwrap().unwrap();
        assert!(!check_jr(&d));
        assert_eq!(inst.source_label(d.restricted()[1]), "{a1}");
    }

    #[test]
    fn fixtures_by_name() {
        let doc = InstanceDocument::from_json(r#"{"kind": "multiplicity", "fixture": "two-into-four"}"#).unwrap();
        let d = doc.build().unwrap().inclusion_data().unwrap().unwrap();
        assert!(!check_mif(&d));
        let bad = InstanceDocument::from_json(r#"{"kind": "multiplicity", "fixture": "nope"}"#).unwrap();
        assert_eq!(bad.build().unwrap_err().field, "fixture");
    }

    #[test]
    fn galois_with_and_without_upper() {
        let text = r#"{"kind": "galois", "source": {"size": 2, "covers": [[0, 1]]},
                       "target": {"size": 3, "covers": [[0, 1], [1, 2]]}, "lower": [0, 2]}"#;
        let inst = InstanceDocument::from_json(text).unwrap().build().unwrap();
        let Instance::Galois(gc) = &inst else { panic!() };
        assert_eq!(gc.upper().values(), &[0, 0, 1]);
        let wrong = r#"{"kind": "galois", "source": {"size": 2, "covers": [[0, 1]]},
                        "target": {"size": 3, "covers": [[0, 1], [1, 2]]}, "lower": [0, 2], "upper": [0, 1, 1]}"#;
        let err = InstanceDocument::from_json(wrong).unwrap().build().unwrap_err();
        assert_eq!(err.field, "upper");
    }

    #[test]
    fn invalid_inputs_name_their_field() {
        let cyclic = r#"{"kind": "lattice", "order": {"size": 2, "covers": [[0, 1], [1, 0]]}}"#;
        assert_eq!(InstanceDocument::from_json(cyclic).unwrap().build().unwrap_err().field, "order");
        let proj = r#"{"kind": "bundle", "total": {"size": 1}, "base": {"size": 1}, "proj": [3]}"#;
        assert_eq!(InstanceDocument::from_json(proj).unwrap().build().unwrap_err().field, "proj");
        let j = r#"{"kind": "graph", "fixture": "fork", "j": [7]}"#;
        assert_eq!(InstanceDocument::from_json(j).unwrap().build().unwrap_err().field, "j");
        assert!(InstanceDocument::from_json(r#"{"kind": "weird"}"#).is_err());
    }

    #[test]
    fn graph_defaults_j_to_non_sinks() {
        let inst = InstanceDocument::from_json(r#"{"kind": "graph", "fixture": "fork"}"#).unwrap().build().unwrap();
        let Instance::Graph { j, .. } = inst else { panic!() };
        assert_eq!(j, PointSet::from_points([1]));
    }

    #[test]
    fn galois_document_reloads() {
        let m = crate::fd::fixtures::three_into_two();
        let gc = m.galois_connection().unwrap();
        let doc = galois_document(gc.lower());
        let Instance::Galois(back) = doc.build().unwrap() else { panic!() };
        assert_eq!(back.upper().values(), gc.upper().values());
    }
}
