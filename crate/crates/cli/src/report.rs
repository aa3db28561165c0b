use std::fmt::Write as _;

use serde::Serialize;
use stone_core::document::{summand_label, Instance};
use stone_core::fd::MultiplicityInclusion;
use stone_core::graph::{pair_prime_space, FiniteGraph};
use stone_core::quasiorbit::{
    c1_counterexample, condition_report, mi_witness, prime_restriction, quasi_orbit_map, InclusionData,
};
use stone_core::spectrum::FiniteT0Space;
use stone_core::{Elem, PointSet, Result};

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric_census: Option<SymmetricCensus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphReport>,
}

#[derive(Debug, Serialize)]
pub struct Conditions {
    pub jr: bool,
    /// Only defined under JR.
    pub c1: Option<bool>,
    pub mi_f: bool,
    pub induced_top: bool,
    pub mi: bool,
    /// Only defined under MI.
    pub c2: Option<bool>,
    pub detects: bool,
    pub separates: bool,
}

#[derive(Debug, Serialize)]
pub struct MeetWitness {
    pub family: Vec<String>,
    pub meet: String,
}

#[derive(Debug, Serialize)]
pub struct PrimeCounts {
    pub source: usize,
    pub target: usize,
    pub restricted: usize,
    pub induced: usize,
}

#[derive(Debug, Serialize)]
pub struct QuasiOrbitReport {
    /// Classes of source primes, by prime label.
    pub classes: Vec<Vec<String>>,
    pub open: bool,
    pub surjective: bool,
    pub homeomorphism: bool,
}

#[derive(Debug, Serialize)]
pub struct RestrictionReport {
    pub well_defined: bool,
    pub open: bool,
    pub surjective: bool,
    pub injective: bool,
}

#[derive(Debug, Serialize)]
pub struct ConnectionReport {
    pub source_size: usize,
    pub target_size: usize,
    pub restricted: Vec<String>,
    pub induced: Vec<String>,
    pub conditions: Conditions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1_counterexample: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mi_witness: Option<MeetWitness>,
    pub primes: PrimeCounts,
    /// Absent when the quasi-orbit map is undefined; `quasi_orbit_note`
    /// says why.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_orbits: Option<QuasiOrbitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_orbit_note: Option<String>,
    pub prime_restriction: RestrictionReport,
}

#[derive(Debug, Serialize)]
pub struct SymmetricCensus {
    pub summand_sets: usize,
    pub symmetric: Vec<String>,
    pub restricted: usize,
    pub restricted_symmetric: usize,
    pub symmetric_inclusion: bool,
}

#[derive(Debug, Serialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: Vec<(String, String)>,
    pub j: String,
    pub j_x: String,
    pub positively_invariant: usize,
    pub pairs: Vec<(String, String)>,
    pub prime_points: usize,
    pub meet_closed: bool,
    pub join_closed: bool,
}

pub fn kind(instance: &Instance) -> &'static str {
    match instance {
        Instance::Lattice(_) => "lattice",
        Instance::Galois(_) => "galois",
        Instance::Multiplicity(_) => "multiplicity",
        Instance::Bundle(_) => "bundle",
        Instance::Action(_) => "action",
        Instance::Graph { .. } => "graph",
    }
}

/// Primes of a powerset or an open-set lattice are named by the summand or
/// point they omit; other primes by the element itself.
pub fn prime_label(instance: &Instance, source_side: bool, elem: Elem) -> String {
    let point_of = |space: &FiniteT0Space| (0..space.len()).find(|&x| space.point_prime(x) == elem);
    let named = match instance {
        Instance::Multiplicity(m) => {
            let (lattice, prefix) = if source_side { (m.a_lattice(), 'a') } else { (m.b_lattice(), 'b') };
            let n = if source_side { m.a_summands() } else { m.b_summands() };
            let missing = lattice.ok().map(|l| l.set(elem).complement(n));
            missing
                .filter(|s| s.len() == 1)
                .map(|s| summand_label(prefix, s).trim_matches(['{', '}']).to_string())
        }
        Instance::Action(a) if source_side => point_of(a.space()).map(|x| format!("x{x}")),
        Instance::Bundle(b) => point_of(if source_side { b.base() } else { b.total() }).map(|x| format!("x{x}")),
        _ => None,
    };
    named.unwrap_or_else(|| {
        if source_side {
            instance.source_label(elem)
        } else {
            instance.target_label(elem)
        }
    })
}

pub fn source_prime_label(instance: &Instance, d: &InclusionData, k: usize) -> String {
    prime_label(instance, true, d.source_spectrum().primes()[k])
}

fn connection_report(instance: &Instance, d: &InclusionData) -> ConnectionReport {
    let c = condition_report(d);
    let b = d.target();
    let src = |e| instance.source_label(e);
    let tgt = |e| instance.target_label(e);
    let mi_witness = mi_witness(d).map(|family| MeetWitness {
        meet: tgt(b.big_meet(family.iter().copied())),
        family: family.iter().map(|&y| tgt(y)).collect(),
    });
    let (quasi_orbits, quasi_orbit_note) = match quasi_orbit_map(d) {
        Ok(q) => (
            Some(QuasiOrbitReport {
                classes: q
                    .space
                    .classes
                    .iter()
                    .map(|cls| cls.iter().map(|k| source_prime_label(instance, d, k)).collect())
                    .collect(),
                open: q.is_open(),
                surjective: q.is_surjective(),
                homeomorphism: q.is_homeomorphism(),
            }),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let r = prime_restriction(d);
    ConnectionReport {
        source_size: d.source().size(),
        target_size: b.size(),
        restricted: c.restricted.iter().map(|&x| src(x)).collect(),
        induced: c.induced.iter().map(|&y| tgt(y)).collect(),
        conditions: Conditions {
            jr: c.jr,
            c1: c.c1,
            mi_f: c.mif,
            induced_top: c.top_induced,
            mi: c.mi,
            c2: c.c2,
            detects: c.detects,
            separates: c.separates,
        },
        c1_counterexample: if c.c1 == Some(false) {
            c1_counterexample(d).map(|(x, y)| (src(x), tgt(y)))
        } else {
            None
        },
        mi_witness,
        primes: PrimeCounts {
            source: d.source_spectrum().primes().len(),
            target: d.target_spectrum().primes().len(),
            restricted: d.restricted_spectrum().primes().len(),
            induced: d.induced_spectrum().primes().len(),
        },
        quasi_orbits,
        quasi_orbit_note,
        prime_restriction: RestrictionReport {
            well_defined: r.well_defined,
            open: r.open,
            surjective: r.surjective,
            injective: r.injective,
        },
    }
}

fn census(m: &MultiplicityInclusion) -> SymmetricCensus {
    let sets: Vec<PointSet> = (0..1u64 << m.a_summands()).map(PointSet::from_bits).collect();
    let restricted: Vec<PointSet> = sets.iter().copied().filter(|&s| m.restrict(m.induce(s)) == s).collect();
    let restricted_symmetric = restricted.iter().filter(|&&s| m.is_symmetric(s)).count();
    SymmetricCensus {
        summand_sets: sets.len(),
        symmetric: sets
            .iter()
            .filter(|&&s| m.is_symmetric(s))
            .map(|&s| summand_label('a', s))
            .collect(),
        restricted: restricted.len(),
        restricted_symmetric,
        symmetric_inclusion: restricted_symmetric == restricted.len(),
    }
}

fn vertex(v: usize) -> String {
    format!("v{}", v + 1)
}

fn graph_report(graph: &FiniteGraph, j: PointSet) -> Result<GraphReport> {
    let pl = graph.j_pairs(j)?;
    let space = pair_prime_space(&pl)?;
    Ok(GraphReport {
        vertices: graph.vertices(),
        edges: graph.edges().iter().map(|&(s, r)| (vertex(s), vertex(r))).collect(),
        j: summand_label('v', j),
        j_x: summand_label('v', graph.j_x()),
        positively_invariant: graph.positively_invariant_sets().len(),
        pairs: pl
            .pairs()
            .iter()
            .map(|&(i, ip)| (summand_label('v', i), summand_label('v', ip)))
            .collect(),
        prime_points: space.primes().len(),
        meet_closed: pl.is_meet_closed(),
        join_closed: pl.is_join_closed(),
    })
}

pub fn analyze(name: Option<String>, instance: &Instance) -> Result<AnalyzeReport> {
    let connection = instance
        .inclusion_data()?
        .map(|d| connection_report(instance, &d));
    let symmetric_census = match instance {
        Instance::Multiplicity(m) => Some(census(m)),
        _ => None,
    };
    let graph = match instance {
        Instance::Graph { graph, j } => Some(graph_report(graph, *j)?),
        _ => None,
    };
    Ok(AnalyzeReport {
        name,
        kind: kind(instance),
        connection,
        symmetric_census,
        graph,
    })
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn gated(v: Option<bool>, gate: &str) -> String {
    match v {
        Some(b) => flag(b).to_string(),
        None => format!("n/a (needs {gate})"),
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(" ")
    }
}

impl AnalyzeReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            writeln!(out, "name: {name}").unwrap();
        }
        writeln!(out, "kind: {}", self.kind).unwrap();
        if let Some(c) = &self.connection {
            let k = &c.conditions;
            writeln!(out, "lattices: source {} elements, target {} elements", c.source_size, c.target_size).unwrap();
            writeln!(out, "restricted ({}): {}", c.restricted.len(), list(&c.restricted)).unwrap();
            writeln!(out, "induced ({}): {}", c.induced.len(), list(&c.induced)).unwrap();
            writeln!(out, "JR: {}", flag(k.jr)).unwrap();
            writeln!(out, "C1: {}", gated(k.c1, "JR")).unwrap();
            if let Some((x, y)) = &c.c1_counterexample {
                writeln!(out, "  C1 fails at {x} and {y}").unwrap();
            }
            writeln!(out, "MI_f: {}", flag(k.mi_f)).unwrap();
            writeln!(out, "induced top: {}", flag(k.induced_top)).unwrap();
            writeln!(out, "MI: {}", flag(k.mi)).unwrap();
            if let Some(w) = &c.mi_witness {
                if w.family.is_empty() {
                    writeln!(out, "  MI witness: the empty meet {} is not induced", w.meet).unwrap();
                } else {
                    writeln!(out, "  MI witness: {} = {} is not induced", w.family.join(" ∧ "), w.meet).unwrap();
                }
            }
            writeln!(out, "C2: {}", gated(k.c2, "MI")).unwrap();
            writeln!(out, "detects: {}", flag(k.detects)).unwrap();
            writeln!(out, "separates: {}", flag(k.separates)).unwrap();
            let p = &c.primes;
            writeln!(
                out,
                "primes: source {}, target {}, restricted {}, induced {}",
                p.source, p.target, p.restricted, p.induced
            )
            .unwrap();
            match (&c.quasi_orbits, &c.quasi_orbit_note) {
                (Some(q), _) => {
                    let classes: Vec<String> = q.classes.iter().map(|cls| format!("[{}]", cls.join(" "))).collect();
                    writeln!(out, "quasi-orbits ({}): {}", q.classes.len(), classes.join(" ")).unwrap();
                    writeln!(
                        out,
                        "quasi-orbit map: open {}, surjective {}, homeomorphism {}",
                        flag(q.open),
                        flag(q.surjective),
                        flag(q.homeomorphism)
                    )
                    .unwrap();
                }
                (None, Some(note)) => writeln!(out, "quasi-orbit map: undefined ({note})").unwrap(),
                (None, None) => {}
            }
            let r = &c.prime_restriction;
            if r.well_defined {
                writeln!(
                    out,
                    "restriction on primes: open {}, surjective {}, injective {}",
                    flag(r.open),
                    flag(r.surjective),
                    flag(r.injective)
                )
                .unwrap();
            } else {
                writeln!(out, "restriction on primes: not well defined").unwrap();
            }
        }
        if let Some(s) = &self.symmetric_census {
            writeln!(
                out,
                "symmetric summand sets ({} of {}): {}",
                s.symmetric.len(),
                s.summand_sets,
                list(&s.symmetric)
            )
            .unwrap();
            writeln!(
                out,
                "restricted and symmetric: {} of {} (symmetric inclusion: {})",
                s.restricted_symmetric,
                s.restricted,
                flag(s.symmetric_inclusion)
            )
            .unwrap();
        }
        if let Some(g) = &self.graph {
            let edges: Vec<String> = g.edges.iter().map(|(s, r)| format!("{s}->{r}")).collect();
            writeln!(out, "graph: {} vertices, edges {}", g.vertices, list(&edges)).unwrap();
            writeln!(out, "J: {} (J_X = {})", g.j, g.j_x).unwrap();
            writeln!(out, "positively invariant sets: {}", g.positively_invariant).unwrap();
            let pairs: Vec<String> = g.pairs.iter().map(|(i, ip)| format!("({i},{ip})")).collect();
            writeln!(out, "pairs ({}): {}", g.pairs.len(), list(&pairs)).unwrap();
            writeln!(out, "prime points: {}", g.prime_points).unwrap();
            writeln!(
                out,
                "meet-closed: {}, join-closed: {}",
                flag(g.meet_closed),
                flag(g.join_closed)
            )
            .unwrap();
        }
        out
    }
}
