//! Seeded instance generators and conformance sweeps. Each suite checks one
//! biconditional or implication of the theory on every instance in its
//! population, either exhaustively over small structures or on a seeded
//! random sample, and reports the first counterexample after greedy
//! shrinking.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::document::{downset_map, galois_document, InstanceDocument, OrderSpec, Payload};
use crate::error::{Error, Result};
use crate::fd::{fixtures as fd_fixtures, injective_01_matrices, MultiplicityInclusion};
use crate::galois::MonotoneMap;
use crate::graph::FiniteGraph;
use crate::lattice::{lattices_of_size, natural_posets, permutations, up_to_isomorphism, FiniteLattice, FinitePoset};
use crate::points::PointSet;
use crate::quasiorbit::{
    check_c1, check_jr, check_mif, rho_open_check, rho_homeomorphism_check, pi_open_check,
    restriction_open_check, top_induced, InclusionData,
};
use crate::spectrum::{lattice_round_trip, space_round_trip, open_surjection_check, FiniteT0Space};
use crate::topo::{action_quasi_orbit_agreement, BundleMap, FiniteGroupAction, Permutation};

/// Instance families the generator can draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Join-preserving maps between down-set lattices of random posets.
    RandomPosetDownsets,
    /// Join-preserving maps between small frames, found by rejection.
    RandomGalois,
    Multiplicity,
    Action,
    Bundle,
    Graph,
}

/// A join-preserving map `D(P_A) → D(P_B)` given by the images of the
/// principal down-sets of `P_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownsetInstance {
    pub pa: FinitePoset,
    pub pb: FinitePoset,
    /// `images[x]` is the down-set of `P_B` assigned to `↓x`.
    pub images: Vec<PointSet>,
}

impl DownsetInstance {
    pub fn lower(&self) -> Result<MonotoneMap> {
        downset_map(&self.pa, &self.pb, &self.images)
    }

    pub fn inclusion_data(&self) -> Result<InclusionData> {
        InclusionData::from_lower(self.lower()?)
    }

    pub fn document(&self) -> InstanceDocument {
        let mut doc = galois_document(&self.lower().expect("generated instances are valid"));
        doc.name = Some(format!(
            "down-sets of {:?} into down-sets of {:?}, point images {:?}",
            OrderSpec::from_poset(&self.pa),
            OrderSpec::from_poset(&self.pb),
            self.images.iter().map(|s| s.to_vec()).collect::<Vec<_>>()
        ));
        doc
    }

    /// Every instance with one point deleted from either poset.
    pub fn shrinks(&self) -> Vec<DownsetInstance> {
        let mut out = Vec::new();
        for x in 0..self.pa.size() {
            let mut images = self.images.clone();
            images.remove(x);
            out.push(DownsetInstance {
                pa: self.pa.delete_point(x),
                pb: self.pb.clone(),
                images,
            });
        }
        for b in 0..self.pb.size() {
            out.push(DownsetInstance {
                pa: self.pa.clone(),
                pb: self.pb.delete_point(b),
                images: self.images.iter().map(|s| s.delete_point(b)).collect(),
            });
        }
        out
    }
}

/// Deterministic generator: instance `k` depends only on `(seed, k)` and the
/// bounds, so sweeps reproduce under any thread count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceGenerator {
    pub seed: u64,
    pub max_points: usize,
    pub family: Family,
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> FinitePoset {
    let density: f64 = rng.gen_range(0.0..0.7);
    let mut relations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                relations.push((a, b));
            }
        }
    }
    FinitePoset::from_covers(n, &relations).expect("naturally labelled relations are acyclic")
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> PointSet {
    (0..n).filter(|_| rng.gen_bool(density)).collect()
}

pub fn automorphisms(order: &FinitePoset) -> Vec<Permutation> {
    permutations(order.size())
        .into_iter()
        .filter(|p| order.is_order_automorphism(p))
        .collect()
}

/// The group generated by `gens`, or `None` once it exceeds `limit` elements.
pub fn bounded_closure(n: usize, gens: &[&Permutation], limit: usize) -> Option<Vec<Permutation>> {
    let identity: Permutation = (0..n).collect();
    let mut elements = vec![identity.clone()];
    let mut seen = HashSet::from([identity]);
    let mut k = 0;
    while k < elements.len() {
        for g in gens {
            let h: Permutation = elements[k].iter().map(|&x| g[x]).collect();
            if seen.insert(h.clone()) {
                if elements.len() == limit {
                    return None;
                }
                elements.push(h);
            }
        }
        k += 1;
    }
    elements.sort();
    Some(elements)
}

fn random_monotone(rng: &mut ChaCha8Rng, from: &FinitePoset, to: &FinitePoset) -> Vec<usize> {
    for _ in 0..20 {
        let mut values = vec![usize::MAX; from.size()];
        let mut ok = true;
        for p in from.linear_extension() {
            let candidates: Vec<usize> = (0..to.size())
                .filter(|&v| (0..from.size()).all(|q| values[q] == usize::MAX || !from.leq(q, p) || to.leq(values[q], v)))
                .collect();
            match candidates.choose(rng) {
                Some(&v) => values[p] = v,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return values;
        }
    }
    vec![rng.gen_range(0..to.size()); from.size()]
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        InstanceGenerator {
            seed,
            max_points: 6,
            family: Family::RandomPosetDownsets,
        }
    }

    pub fn with_max_points(mut self, max_points: usize) -> Self {
        self.max_points = max_points.max(1);
        self
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    fn rng(&self, k: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k);
        rng
    }

    fn size(&self, rng: &mut ChaCha8Rng, cap: usize) -> usize {
        rng.gen_range(1..=self.max_points.min(cap))
    }

    pub fn gen_downsets(&self, k: u64) -> DownsetInstance {
        let mut rng = self.rng(k);
        let (na, nb) = (self.size(&mut rng, 64), self.size(&mut rng, 64));
        let pa = random_poset(&mut rng, na);
        let pb = random_poset(&mut rng, nb);
        let density: f64 = rng.gen_range(0.0..0.6);
        let mut images = vec![PointSet::EMPTY; na];
        // in index order, which is a linear extension of a natural labelling
        for x in 0..na {
            let below = (0..x)
                .filter(|&y| pa.leq(y, x))
                .fold(PointSet::EMPTY, |acc, y| acc | images[y]);
            images[x] = pb.down_closure(random_subset(&mut rng, nb, density)) | below;
        }
        DownsetInstance { pa, pb, images }
    }

    pub fn gen_galois(&self, k: u64) -> MonotoneMap {
        let mut rng = self.rng(k);
        static FRAMES: OnceLock<Vec<Arc<FiniteLattice>>> = OnceLock::new();
        let bound = self.max_points.clamp(2, 6);
        let frames: Vec<&Arc<FiniteLattice>> = FRAMES
            .get_or_init(|| small_frames(6))
            .iter()
            .filter(|f| f.size() <= bound)
            .collect();
        let a = (*frames.choose(&mut rng).unwrap()).clone();
        let b = (*frames.choose(&mut rng).unwrap()).clone();
        let ext = a.order().linear_extension();
        for _ in 0..200 {
            let mut values = vec![0; a.size()];
            for &x in &ext {
                let floor = a
                    .elements()
                    .filter(|&y| y != x && a.leq(y, x))
                    .fold(b.bottom(), |acc, y| b.join(acc, values[y]));
                let above: Vec<usize> = b.elements().filter(|&v| b.leq(floor, v)).collect();
                values[x] = if a.bottom() == x { b.bottom() } else { *above.choose(&mut rng).unwrap() };
            }
            let map = MonotoneMap::new(a.clone(), b.clone(), values).expect("monotone by construction");
            if map.preserves_joins() {
                return map;
            }
        }
        MonotoneMap::new(a.clone(), b.clone(), vec![b.bottom(); a.size()]).expect("constant")
    }

    pub fn gen_multiplicity(&self, k: u64) -> MultiplicityInclusion {
        let mut rng = self.rng(k);
        let (rows, cols) = (self.size(&mut rng, 4), self.size(&mut rng, 4));
        let density: f64 = rng.gen_range(0.2..0.8);
        let mult = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(1..3) } else { 0 }).collect())
            .collect();
        MultiplicityInclusion::new(mult).expect("shape is consistent")
    }

    pub fn gen_action(&self, k: u64) -> FiniteGroupAction {
        let mut rng = self.rng(k);
        let n = self.size(&mut rng, 5);
        let order = random_poset(&mut rng, n);
        let autos = automorphisms(&order);
        let count = rng.gen_range(0..=2);
        let generators = (0..count).map(|_| autos.choose(&mut rng).unwrap().clone()).collect();
        let space = FiniteT0Space::from_order(order).expect("small space");
        FiniteGroupAction::new(space, generators).expect("automorphisms generate a group")
    }

    pub fn gen_bundle(&self, k: u64) -> BundleMap {
        let mut rng = self.rng(k);
        let (nt, nb) = (self.size(&mut rng, 4), self.size(&mut rng, 4));
        let (pt, pb) = (random_poset(&mut rng, nt), random_poset(&mut rng, nb));
        let proj = random_monotone(&mut rng, &pt, &pb);
        let total = FiniteT0Space::from_order(pt).expect("small space");
        let base = FiniteT0Space::from_order(pb).expect("small space");
        BundleMap::new(total, base, proj).expect("monotone maps are continuous")
    }

    pub fn gen_graph(&self, k: u64) -> (FiniteGraph, PointSet) {
        let mut rng = self.rng(k);
        let n = self.size(&mut rng, 8);
        let edges = (0..rng.gen_range(0..=2 * n))
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let graph = FiniteGraph::new(n, edges).expect("edges in range");
        let j = random_subset(&mut rng, n, 0.5);
        (graph, j)
    }

    pub fn gen_inclusion_data(&self, k: u64) -> Result<InclusionData> {
        match self.family {
            Family::RandomPosetDownsets => self.gen_downsets(k).inclusion_data(),
            Family::RandomGalois => InclusionData::from_lower(self.gen_galois(k)),
            Family::Multiplicity => self.gen_multiplicity(k).to_inclusion_data(),
            Family::Action => self.gen_action(k).inclusion_data(),
            Family::Bundle => self.gen_bundle(k).inclusion_data(),
            Family::Graph => Err(Error::Invalid("graphs do not carry a Galois connection".into())),
        }
    }
}

/// Greedy deletion: repeatedly move to the first smaller instance that still
/// violates, until none does.
pub fn minimize<T: Clone>(start: T, shrinks: impl Fn(&T) -> Vec<T>, violates: impl Fn(&T) -> bool) -> T {
    let mut current = start;
    'outer: loop {
        for candidate in shrinks(&current) {
            if violates(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        return current;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SuiteTag {
    /// Locale morphisms into opens of a space: criterion for the adjunct
    /// map to be an open surjection.
    OpenSurjection,
    /// Under JR: C1 iff `π` is open and surjective.
    PiOpen,
    /// MI and C2 iff `r` on primes is an open surjection.
    RestrictionOpen,
    /// Under JR, C1, (MI)_f: `ρ` open and surjective iff MI and C2.
    RhoOpen,
    /// Under JR and C1: `ρ` a homeomorphism iff `r` is injective.
    RhoHomeomorphism,
    /// Symmetric summand sets are restricted and meet-compatible.
    SymmetricRestricted,
    /// Symmetric inclusions satisfy JR, C1 and (MI)_f.
    SymmetricConditions,
    /// Group actions: quasi-orbits are the orbit-closure classes.
    OrbitClosures,
    /// General Galois-connection properties.
    GaloisProperties,
    /// Frames and finite spaces survive the round trip through points.
    StoneDuality,
}

impl SuiteTag {
    pub const ALL: [SuiteTag; 10] = [
        SuiteTag::OpenSurjection,
        SuiteTag::PiOpen,
        SuiteTag::RestrictionOpen,
        SuiteTag::RhoOpen,
        SuiteTag::RhoHomeomorphism,
        SuiteTag::SymmetricRestricted,
        SuiteTag::SymmetricConditions,
        SuiteTag::OrbitClosures,
        SuiteTag::GaloisProperties,
        SuiteTag::StoneDuality,
    ];

    /// Short code accepted by `verify --suite`.
    pub fn code(self) -> &'static str {
        match self {
            SuiteTag::OpenSurjection => "T33",
            SuiteTag::PiOpen => "T42",
            SuiteTag::RestrictionOpen => "T47",
            SuiteTag::RhoOpen => "C48",
            SuiteTag::RhoHomeomorphism => "C49",
            SuiteTag::SymmetricRestricted => "L51",
            SuiteTag::SymmetricConditions => "C54",
            SuiteTag::OrbitClosures => "T62",
            SuiteTag::GaloisProperties => "P26",
            SuiteTag::StoneDuality => "STONE",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            SuiteTag::OpenSurjection => "open-surjection",
            SuiteTag::PiOpen => "pi-open",
            SuiteTag::RestrictionOpen => "restriction-open",
            SuiteTag::RhoOpen => "rho-open",
            SuiteTag::RhoHomeomorphism => "rho-homeomorphism",
            SuiteTag::SymmetricRestricted => "symmetric-restricted",
            SuiteTag::SymmetricConditions => "symmetric-conditions",
            SuiteTag::OrbitClosures => "orbit-closures",
            SuiteTag::GaloisProperties => "galois-properties",
            SuiteTag::StoneDuality => "stone-duality",
        }
    }

    /// Whether the population is a seeded sample (the budget is its size)
    /// rather than an exhaustive enumeration.
    pub fn is_random(self) -> bool {
        matches!(self, SuiteTag::PiOpen | SuiteTag::RestrictionOpen | SuiteTag::RhoOpen | SuiteTag::RhoHomeomorphism | SuiteTag::GaloisProperties)
    }
}

impl fmt::Display for SuiteTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for SuiteTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteTag::ALL
            .into_iter()
            .find(|t| t.code().eq_ignore_ascii_case(s) || t.alias() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = SuiteTag::ALL.iter().map(|t| t.code()).collect();
                Error::Invalid(format!("unknown suite \"{s}\"; known: {}", known.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<InstanceDocument>,
    pub details: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub suite: String,
    pub seed: u64,
    pub budget: usize,
    /// Instances enumerated or generated.
    pub instances: usize,
    /// Instances on which the hypotheses held and the claim was tested.
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, thiserror::Error)]
#[error("suite {} found {} violation(s)", .report.suite, .report.violations)]
pub struct SweepFailed {
    pub report: Box<SweepReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub seed: u64,
    /// Number of generated instances for sampled suites.
    pub budget: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { seed: 0, budget: 1000 }
    }
}

enum Outcome {
    Skipped,
    Passed,
    Violated,
}

fn outcome(verdict: Option<bool>) -> Outcome {
    match verdict {
        None => Outcome::Skipped,
        Some(true) => Outcome::Passed,
        Some(false) => Outcome::Violated,
    }
}

struct Tally {
    instances: usize,
    checked: usize,
    skipped: usize,
    violations: usize,
    first: Option<usize>,
}

fn tally(outcomes: Vec<Outcome>) -> Tally {
    let mut t = Tally {
        instances: outcomes.len(),
        checked: 0,
        skipped: 0,
        violations: 0,
        first: None,
    };
    for (k, o) in outcomes.iter().enumerate() {
        match o {
            Outcome::Skipped => t.skipped += 1,
            Outcome::Passed => t.checked += 1,
            Outcome::Violated => {
                t.checked += 1;
                t.violations += 1;
                t.first.get_or_insert(k);
            }
        }
    }
    t
}

/// Verdict of a sampled suite on one inclusion; `None` when the hypotheses
/// fail.
fn random_verdict(tag: SuiteTag, d: &InclusionData) -> Option<bool> {
    match tag {
        SuiteTag::PiOpen => pi_open_check(d).ok().map(|r| r.equivalence_verified),
        SuiteTag::RestrictionOpen => Some(restriction_open_check(d).equivalence_verified),
        SuiteTag::RhoOpen => {
            let applicable = check_jr(d) && check_c1(d) && check_mif(d) && top_induced(d);
            applicable.then(|| rho_open_check(d).is_ok_and(|r| r.equivalence_verified))
        }
        SuiteTag::RhoHomeomorphism => rho_homeomorphism_check(d).ok().map(|r| r.equivalence_verified),
        SuiteTag::GaloisProperties => Some(d.gc().verify_properties().all_hold()),
        _ => unreachable!("not a sampled suite"),
    }
}

fn downset_violates(tag: SuiteTag, inst: &DownsetInstance) -> bool {
    inst.inclusion_data()
        .map(|d| random_verdict(tag, &d) == Some(false))
        .unwrap_or(false)
}

fn sweep_random(tag: SuiteTag, config: SweepConfig) -> (Tally, Option<Counterexample>) {
    let generator = InstanceGenerator::new(config.seed);
    let outcomes: Vec<Outcome> = (0..config.budget as u64)
        .into_par_iter()
        .map(|k| match generator.gen_downsets(k).inclusion_data() {
            Ok(d) => outcome(random_verdict(tag, &d)),
            Err(_) => Outcome::Violated,
        })
        .collect();
    let t = tally(outcomes);
    let counterexample = t.first.map(|k| {
        let start = generator.gen_downsets(k as u64);
        let small = minimize(start, DownsetInstance::shrinks, |i| downset_violates(tag, i));
        let details = match small.inclusion_data() {
            Ok(d) => serde_json::json!({
                "instance": k,
                "pi_open": pi_open_check(&d).ok(),
                "restriction_open": restriction_open_check(&d),
                "rho_open": rho_open_check(&d).ok(),
                "rho_homeomorphism": rho_homeomorphism_check(&d).ok(),
                "properties": d.gc().verify_properties(),
            }),
            Err(e) => serde_json::json!({ "instance": k, "error": e.to_string() }),
        };
        Counterexample {
            description: format!("generated instance {k} of seed {}, shrunk", config.seed),
            document: Some(small.document()),
            details,
        }
    });
    (t, counterexample)
}

/// Every frame with at most `max_size` elements up to isomorphism,
/// smallest first.
pub fn small_frames(max_size: usize) -> Vec<Arc<FiniteLattice>> {
    let frames = (1..=max_size)
        .flat_map(lattices_of_size)
        .filter(|l| l.is_frame().distributive)
        .map(|l| l.order().clone());
    up_to_isomorphism(frames)
        .into_iter()
        .map(|o| Arc::new(FiniteLattice::from_poset(o).expect("was a lattice")))
        .collect()
}

/// Every finite T0 space with at most `max_points` points up to
/// homeomorphism, smallest first.
pub fn small_spaces(max_points: usize) -> Vec<FiniteT0Space> {
    up_to_isomorphism((0..=max_points).flat_map(natural_posets))
        .into_iter()
        .map(|o| FiniteT0Space::from_order(o).expect("small space"))
        .collect()
}

/// Cap on candidate maps examined when enumerating locale morphisms.
pub const MAX_CANDIDATE_MAPS: u64 = 10_000_000;

/// All locale morphisms `L → O(X)`: monotone candidates are enumerated
/// along a linear extension, then filtered by join and meet preservation.
pub fn locale_morphisms(l: &Arc<FiniteLattice>, space: &FiniteT0Space) -> Result<Vec<MonotoneMap>> {
    let o = space.opens_lattice();
    let total = (o.size() as u64).checked_pow(l.size() as u32).unwrap_or(u64::MAX);
    if total > MAX_CANDIDATE_MAPS {
        return Err(Error::TooLarge {
            what: "candidate map space",
            size: usize::try_from(total).unwrap_or(usize::MAX),
            limit: MAX_CANDIDATE_MAPS as usize,
        });
    }
    let ext = l.order().linear_extension();
    let mut values = vec![usize::MAX; l.size()];
    let mut out = Vec::new();
    fn go(
        depth: usize,
        ext: &[usize],
        l: &FiniteLattice,
        o: &Arc<FiniteLattice>,
        values: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if depth == ext.len() {
            emit(values);
            return;
        }
        let x = ext[depth];
        for v in o.elements() {
            let monotone = ext[..depth]
                .iter()
                .all(|&y| !l.leq(y, x) || o.leq(values[y], v));
            if monotone {
                values[x] = v;
                go(depth + 1, ext, l, o, values, emit);
            }
        }
        values[x] = usize::MAX;
    }
    go(0, &ext, l, o, &mut values, &mut |vals: &[usize]| {
        let g = MonotoneMap::new(l.clone(), o.clone(), vals.to_vec()).expect("monotone by construction");
        if g.preserves_joins() && g.preserves_meets() {
            out.push(g);
        }
    });
    Ok(out)
}

fn sweep_open_surjection() -> (Tally, Option<Counterexample>) {
    let frames = small_frames(5);
    let spaces = small_spaces(3);
    let cases: Vec<(usize, usize)> = (0..frames.len())
        .flat_map(|a| (0..spaces.len()).map(move |b| (a, b)))
        .collect();
    let results: Vec<Vec<(Outcome, Option<serde_json::Value>)>> = cases
        .par_iter()
        .map(|&(a, b)| {
            let (l, x) = (&frames[a], &spaces[b]);
            match locale_morphisms(l, x) {
                Err(e) => vec![(Outcome::Violated, Some(serde_json::json!({ "error": e.to_string() })))],
                Ok(maps) => maps
                    .iter()
                    .map(|g| match open_surjection_check(g, x) {
                        Ok(r) if r.equivalence_verified => (Outcome::Passed, None),
                        other => (
                            Outcome::Violated,
                            Some(serde_json::json!({
                                "frame": OrderSpec::from_poset(l.order()),
                                "space": OrderSpec::from_poset(x.order()),
                                "map": g.values(),
                                "report": other.map_err(|e| e.to_string()),
                            })),
                        ),
                    })
                    .collect(),
            }
        })
        .collect();
    let flat: Vec<(Outcome, Option<serde_json::Value>)> = results.into_iter().flatten().collect();
    let first = flat.iter().find_map(|(_, d)| d.clone());
    let t = tally(flat.into_iter().map(|(o, _)| o).collect());
    let counterexample = first.map(|details| Counterexample {
        description: "smallest frame and space first; the first failure is reported".into(),
        document: None,
        details,
    });
    (t, counterexample)
}

fn symmetric_restricted(m: &MultiplicityInclusion) -> bool {
    let full = 1u64 << m.a_summands();
    (0..full).map(PointSet::from_bits).all(|s| {
        !m.is_symmetric(s)
            || (m.restrict(m.induce(s)) == s
                && (0..full)
                    .map(PointSet::from_bits)
                    .all(|t| m.induce(s & t) == m.induce(s) & m.induce(t)))
    })
}

/// `None` when some restricted set is not symmetric.
fn symmetric_conditions(m: &MultiplicityInclusion) -> Option<bool> {
    let full = 1u64 << m.a_summands();
    let symmetric_inclusion = (0..full)
        .map(PointSet::from_bits)
        .filter(|&s| m.restrict(m.induce(s)) == s)
        .all(|s| m.is_symmetric(s));
    if !symmetric_inclusion {
        return None;
    }
    Some(
        m.to_inclusion_data()
            .is_ok_and(|d| check_jr(&d) && check_c1(&d) && check_mif(&d)),
    )
}

fn matrix_shrinks(m: &MultiplicityInclusion) -> Vec<MultiplicityInclusion> {
    let mut out = Vec::new();
    let rows = m.mult().to_vec();
    for i in 0..rows.len() {
        let mut r = rows.clone();
        r.remove(i);
        if !r.is_empty() {
            out.push(MultiplicityInclusion::with_columns(r, m.b_summands()).unwrap());
        }
    }
    for j in 0..m.b_summands() {
        let r: Vec<Vec<u32>> = rows
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let shrunk = MultiplicityInclusion::with_columns(r, m.b_summands() - 1).unwrap();
        if shrunk.is_injective() {
            out.push(shrunk);
        }
    }
    out
}

fn sweep_matrices(tag: SuiteTag) -> (Tally, Option<Counterexample>) {
    let matrices: Vec<MultiplicityInclusion> = (1..=3)
        .flat_map(|k| (1..=3).flat_map(move |l| injective_01_matrices(k, l)))
        .collect();
    let verdict = |m: &MultiplicityInclusion| match tag {
        SuiteTag::SymmetricRestricted => Some(symmetric_restricted(m)),
        _ => symmetric_conditions(m),
    };
    let outcomes: Vec<Outcome> = matrices.par_iter().map(|m| outcome(verdict(m))).collect();
    let t = tally(outcomes);
    let counterexample = t.first.map(|k| {
        let small = minimize(matrices[k].clone(), matrix_shrinks, |m| verdict(m) == Some(false));
        Counterexample {
            description: "0/1 matrix without zero rows, shrunk by deleting rows and columns".into(),
            document: Some(InstanceDocument::new(Payload::Multiplicity {
                matrix: Some(small.mult().to_vec()),
                fixture: None,
                dims: None,
            })),
            details: serde_json::json!({ "original": matrices[k].mult() }),
        }
    });
    (t, counterexample)
}

/// Every action of a group of order at most `max_order` by automorphisms of
/// a poset with at most `max_points` points. Each such group is generated
/// by two of its elements. Posets are taken up to isomorphism.
pub fn small_actions(max_points: usize, max_order: usize) -> Vec<FiniteGroupAction> {
    let mut out = Vec::new();
    for n in 0..=max_points {
        for order in up_to_isomorphism(natural_posets(n)) {
            let autos = automorphisms(&order);
            let mut groups: HashSet<Vec<Permutation>> = HashSet::new();
            let mut generators: Vec<Vec<Permutation>> = Vec::new();
            for a in 0..autos.len() {
                for b in a..autos.len() {
                    if let Some(g) = bounded_closure(n, &[&autos[a], &autos[b]], max_order) {
                        if groups.insert(g) {
                            generators.push(vec![autos[a].clone(), autos[b].clone()]);
                        }
                    }
                }
            }
            let space = FiniteT0Space::from_order(order).expect("small space");
            for gens in generators {
                out.push(FiniteGroupAction::new(space.clone(), gens).expect("automorphisms"));
            }
        }
    }
    out
}

fn sweep_actions() -> (Tally, Option<Counterexample>) {
    let actions = small_actions(5, 6);
    let outcomes: Vec<Outcome> = actions
        .par_iter()
        .map(|a| outcome(Some(action_quasi_orbit_agreement(a).unwrap_or(false))))
        .collect();
    let t = tally(outcomes);
    let counterexample = t.first.map(|k| {
        let a = &actions[k];
        Counterexample {
            description: "orbit-closure classes differ from the quasi-orbit classes".into(),
            document: Some(InstanceDocument::new(Payload::Action {
                space: OrderSpec::from_poset(a.space().order()),
                generators: a.generators().to_vec(),
            })),
            details: serde_json::json!({ "orbit_closure_classes": a.orbit_closure_relation() }),
        }
    });
    (t, counterexample)
}

fn sweep_properties(config: SweepConfig) -> (Tally, Option<Counterexample>) {
    let (mut t, mut counterexample) = sweep_random(SuiteTag::GaloisProperties, config);
    let mut extra: Vec<(String, Option<bool>)> = fd_fixtures::NAMES
        .iter()
        .map(|name| {
            let m = fd_fixtures::by_name(name).unwrap();
            let verdict = m.galois_connection().map(|gc| gc.verify_properties().all_hold());
            (name.to_string(), Some(verdict.unwrap_or(false)))
        })
        .collect();
    for family in [Family::RandomGalois, Family::Multiplicity, Family::Action, Family::Bundle] {
        let generator = InstanceGenerator::new(config.seed).with_family(family);
        let verdicts: Vec<(String, Option<bool>)> = (0..config.budget as u64)
            .into_par_iter()
            .map(|k| {
                let verdict = generator
                    .gen_inclusion_data(k)
                    .map(|d| d.gc().verify_properties().all_hold());
                (format!("{family:?} instance {k}"), Some(verdict.unwrap_or(false)))
            })
            .collect();
        extra.extend(verdicts);
    }
    for (name, verdict) in extra {
        t.instances += 1;
        t.checked += 1;
        if verdict == Some(false) {
            t.violations += 1;
            counterexample.get_or_insert(Counterexample {
                description: name,
                document: None,
                details: serde_json::Value::Null,
            });
        }
    }
    (t, counterexample)
}

fn sweep_stone() -> (Tally, Option<Counterexample>) {
    let frames = small_frames(6);
    let spaces = small_spaces(4);
    let mut outcomes: Vec<(Outcome, Option<serde_json::Value>)> = frames
        .par_iter()
        .map(|l| match lattice_round_trip(l) {
            Ok(true) => (Outcome::Passed, None),
            _ => (Outcome::Violated, Some(serde_json::json!({ "frame": OrderSpec::from_poset(l.order()) }))),
        })
        .collect();
    outcomes.extend(spaces.par_iter().map(|x| {
        match space_round_trip(x) {
            Ok(true) if x.is_sober() => (Outcome::Passed, None),
            _ => (Outcome::Violated, Some(serde_json::json!({ "space": OrderSpec::from_poset(x.order()) }))),
        }
    }).collect::<Vec<_>>());
    let first = outcomes.iter().find_map(|(_, d)| d.clone());
    let t = tally(outcomes.into_iter().map(|(o, _)| o).collect());
    (
        t,
        first.map(|details| Counterexample {
            description: "round trip through points failed".into(),
            document: None,
            details,
        }),
    )
}

/// Runs one suite. Sampled suites draw `config.budget` instances from
/// `config.seed`; exhaustive suites ignore both.
pub fn sweep_theorem(tag: SuiteTag, config: SweepConfig) -> std::result::Result<SweepReport, SweepFailed> {
    let (t, counterexample) = match tag {
        SuiteTag::OpenSurjection => sweep_open_surjection(),
        SuiteTag::PiOpen | SuiteTag::RestrictionOpen | SuiteTag::RhoOpen | SuiteTag::RhoHomeomorphism => sweep_random(tag, config),
        SuiteTag::SymmetricRestricted | SuiteTag::SymmetricConditions => sweep_matrices(tag),
        SuiteTag::OrbitClosures => sweep_actions(),
        SuiteTag::GaloisProperties => sweep_properties(config),
        SuiteTag::StoneDuality => sweep_stone(),
    };
    let report = SweepReport {
        suite: tag.code().to_string(),
        seed: config.seed,
        budget: config.budget,
        instances: t.instances,
        checked: t.checked,
        skipped: t.skipped,
        violations: t.violations,
        counterexample,
    };
    if report.violations == 0 {
        Ok(report)
    } else {
        Err(SweepFailed {
            report: Box::new(report),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let g = InstanceGenerator::new(0).with_max_points(3);
        assert_eq!(g.gen_downsets(5), g.gen_downsets(5));
        assert_ne!(
            (0..20).map(|k| g.gen_downsets(k)).collect::<Vec<_>>(),
            (0..20).map(|k| InstanceGenerator::new(1).with_max_points(3).gen_downsets(k)).collect::<Vec<_>>()
        );
        let d = g.gen_inclusion_data(0).unwrap();
        assert!(d.gc().verify_properties().all_hold());
    }

    #[test]
    fn one_point_bound_gives_two_element_lattices() {
        let g = InstanceGenerator::new(3).with_max_points(1);
        for k in 0..10 {
            let d = g.gen_inclusion_data(k).unwrap();
            assert_eq!(d.source().size(), 2);
            assert_eq!(d.target().size(), 2);
        }
    }

    #[test]
    fn every_family_generates_valid_connections() {
        for family in [Family::RandomPosetDownsets, Family::RandomGalois, Family::Multiplicity, Family::Action, Family::Bundle] {
            let g = InstanceGenerator::new(11).with_family(family);
            for k in 0..30 {
                assert!(g.gen_inclusion_data(k).unwrap().gc().verify_properties().all_hold());
            }
        }
        let g = InstanceGenerator::new(11).with_family(Family::Graph);
        assert!(g.gen_inclusion_data(0).is_err());
        let (graph, j) = g.gen_graph(0);
        assert!(graph.j_pairs(j).is_ok());
    }

    #[test]
    fn shrinking_reaches_a_local_minimum() {
        let g = InstanceGenerator::new(9).with_max_points(6);
        let start = (0..50).map(|k| g.gen_downsets(k)).find(|i| i.pa.size() >= 4).unwrap();
        let small = minimize(start, DownsetInstance::shrinks, |i| i.pa.size() >= 2);
        assert_eq!(small.pa.size(), 2);
        assert_eq!(small.pb.size(), 0);
        assert!(small.lower().is_ok());
    }

    #[test]
    fn suite_tags_parse() {
        for t in SuiteTag::ALL {
            assert_eq!(t.code().parse::<SuiteTag>().unwrap(), t);
            assert_eq!(t.alias().parse::<SuiteTag>().unwrap(), t);
        }
        assert_eq!("stone".parse::<SuiteTag>().unwrap(), SuiteTag::StoneDuality);
        assert!("bogus".parse::<SuiteTag>().is_err());
    }

    #[test]
    fn locale_morphisms_into_sierpinski() {
        // 2-chain into O(Sierpiński) = 3-chain: ⊥↦∅, ⊤↦X
        let l = Arc::new(FiniteLattice::chain(2));
        let maps = locale_morphisms(&l, &FiniteT0Space::sierpinski()).unwrap();
        assert_eq!(maps.len(), 1);
        let l3 = Arc::new(FiniteLattice::chain(3));
        assert_eq!(locale_morphisms(&l3, &FiniteT0Space::sierpinski()).unwrap().len(), 3);
    }

    #[test]
    fn small_action_census() {
        let actions = small_actions(2, 6);
        // 0 and 1 points: trivial; 2-antichain: trivial and swap; 2-chain: trivial
        assert_eq!(actions.len(), 5);
    }

    #[test]
    fn matrix_suites_pass() {
        assert_eq!(sweep_theorem(SuiteTag::SymmetricRestricted, SweepConfig::default()).unwrap().violations, 0);
        let report = sweep_theorem(SuiteTag::SymmetricConditions, SweepConfig::default()).unwrap();
        assert!(report.checked > 0 && report.skipped > 0);
    }

    #[test]
    fn small_random_sweeps_pass() {
        let config = SweepConfig { seed: 1, budget: 40 };
        for tag in [SuiteTag::PiOpen, SuiteTag::RestrictionOpen, SuiteTag::RhoOpen, SuiteTag::RhoHomeomorphism] {
            let report = sweep_theorem(tag, config).unwrap_or_else(|e| panic!("{:#?}", e.report));
            assert_eq!(report.instances, 40);
        }
    }
}

