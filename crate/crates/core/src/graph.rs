//! Finite directed graphs: positively invariant vertex sets, the vertices
//! with outgoing edges, and the lattice of pairs `(I, I')` that indexes the
//! gauge-invariant ideals of a relative graph algebra.
//!
//! A vertex acts through the sources of its edges, so `x_forward(H)` is the
//! set of ranges of edges leaving `H`, and sinks are the kernel of the left
//! action. Finite graphs make every compactness clause automatic.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{max_elements, FiniteLattice, FinitePoset};
use crate::points::PointSet;
use crate::spectrum::PrimeSpectrum;

/// Vertex sets are enumerated exhaustively, so graphs stay small.
pub const MAX_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGraph {
    vertices: usize,
    /// `(source, range)`; parallel edges are allowed.
    edges: Vec<(usize, usize)>,
}

impl FiniteGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "graph",
                size: vertices,
                limit: MAX_VERTICES,
            });
        }
        if let Some(&(s, r)) = edges.iter().find(|&&(s, r)| s >= vertices || r >= vertices) {
            return Err(Error::Invalid(format!(
                "edge ({s}, {r}) leaves the {vertices} vertices"
            )));
        }
        Ok(FiniteGraph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.vertices)
    }

    /// Ranges of edges with source in `h`.
    pub fn x_forward(&self, h: PointSet) -> PointSet {
        self.edges
            .iter()
            .filter(|&&(s, _)| h.contains(s))
            .map(|&(_, r)| r)
            .collect()
    }

    /// Vertices all of whose edges land in `h`; sinks always qualify.
    pub fn x_inverse(&self, h: PointSet) -> PointSet {
        let escaping: PointSet = self
            .edges
            .iter()
            .filter(|&&(_, r)| !h.contains(r))
            .map(|&(s, _)| s)
            .collect();
        self.all() - escaping
    }

    pub fn sinks(&self) -> PointSet {
        self.all() - self.edges.iter().map(|&(s, _)| s).collect()
    }

    /// Vertices with at least one outgoing edge.
    pub fn j_x(&self) -> PointSet {
        self.all() - self.sinks()
    }

    /// `J_X(I)`: everything except the vertices outside `I` that only
    /// reach `I`.
    pub fn j_x_of(&self, i: PointSet) -> PointSet {
        self.all() - (self.x_inverse(i) - i)
    }

    pub fn is_positively_invariant(&self, h: PointSet) -> bool {
        self.x_forward(h).is_subset(h)
    }

    pub fn positively_invariant_sets(&self) -> Vec<PointSet> {
        (0..1u64 << self.vertices)
            .map(PointSet::from_bits)
            .filter(|&h| self.is_positively_invariant(h))
            .collect()
    }

    /// Positively invariant `I` with `J ∩ x_inverse(I) ⊆ I`.
    pub fn is_j_invariant(&self, j: PointSet, i: PointSet) -> bool {
        self.is_positively_invariant(i) && (j & self.x_inverse(i)).is_subset(i)
    }

    pub fn j_invariant_sets(&self, j: PointSet) -> Vec<PointSet> {
        self.positively_invariant_sets()
            .into_iter()
            .filter(|&i| self.is_j_invariant(j, i))
            .collect()
    }

    fn check_j(&self, j: PointSet) -> Result<()> {
        if j.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::JNotAdmissible(format!(
                "{j} is not a set of the {} vertices",
                self.vertices
            )))
        }
    }

    /// All pairs `(I, I')` with `I` positively invariant and
    /// `J ∪ I ⊆ I' ⊆ J_X(I)`, ordered componentwise.
    pub fn j_pairs(&self, j: PointSet) -> Result<JPairLattice> {
        self.check_j(j)?;
        let limit = max_elements();
        let mut pairs = Vec::new();
        for i in self.positively_invariant_sets() {
            let lo = j | i;
            let hi = self.j_x_of(i);
            if !lo.is_subset(hi) {
                continue;
            }
            let free = (hi - lo).to_vec();
            for bits in 0..1u64 << free.len() {
                let extra: PointSet = PointSet::from_bits(bits).iter().map(|k| free[k]).collect();
                pairs.push((i, lo | extra));
                if pairs.len() > limit {
                    return Err(Error::TooLarge {
                        what: "pair lattice",
                        size: pairs.len(),
                        limit,
                    });
                }
            }
        }
        JPairLattice::new(pairs)
    }

    /// `I ↦ (I, I ∪ J)` on J-invariant sets, as positions in the pair list.
    pub fn invariant_embedding(&self, j: PointSet, pl: &JPairLattice) -> Result<Vec<usize>> {
        self.check_j(j)?;
        self.j_invariant_sets(j)
            .into_iter()
            .map(|i| {
                pl.position((i, i | j)).ok_or_else(|| {
                    Error::Invalid(format!("({i}, {}) is not a pair", i | j))
                })
            })
            .collect()
    }
}

/// The pairs with their componentwise order, which is a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JPairLattice {
    pairs: Vec<(PointSet, PointSet)>,
    lattice: Arc<FiniteLattice>,
}

impl JPairLattice {
    fn new(mut pairs: Vec<(PointSet, PointSet)>) -> Result<Self> {
        pairs.sort_by_key(|&(i, ip)| (i.len() + ip.len(), i, ip));
        let order = FinitePoset::from_fn(pairs.len(), |a, b| {
            pairs[a].0.is_subset(pairs[b].0) && pairs[a].1.is_subset(pairs[b].1)
        })?;
        let lattice = Arc::new(FiniteLattice::from_poset(order)?);
        Ok(JPairLattice { pairs, lattice })
    }

    pub fn pairs(&self) -> &[(PointSet, PointSet)] {
        &self.pairs
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn position(&self, pair: (PointSet, PointSet)) -> Option<usize> {
        self.pairs.iter().position(|&p| p == pair)
    }

    /// Componentwise intersections of pairs are pairs.
    pub fn is_meet_closed(&self) -> bool {
        self.pairs.iter().all(|&(a, ap)| {
            self.pairs
                .iter()
                .all(|&(b, bp)| self.position((a & b, ap & bp)).is_some())
        })
    }

    /// Componentwise unions of pairs are pairs. This can fail: the lattice
    /// join then sits strictly above the union.
    pub fn is_join_closed(&self) -> bool {
        self.pairs.iter().all(|&(a, ap)| {
            self.pairs
                .iter()
                .all(|&(b, bp)| self.position((a | b, ap | bp)).is_some())
        })
    }
}

pub fn pair_prime_space(pl: &JPairLattice) -> Result<PrimeSpectrum> {
    PrimeSpectrum::of_lattice(pl.lattice.clone())
}

/// Named graphs.
pub mod fixtures {
    use super::FiniteGraph;

    /// `v1 ← v2 → v3` with vertices numbered 0, 1, 2.
    pub fn fork() -> FiniteGraph {
        FiniteGraph::new(3, vec![(1, 0), (1, 2)]).unwrap()
    }

    pub const NAMES: [&str; 1] = ["fork"];

    pub fn by_name(name: &str) -> Option<FiniteGraph> {
        match name {
            "fork" => Some(fork()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::fork;
    use super::*;
    use proptest::prelude::*;

    fn ps<const N: usize>(points: [usize; N]) -> PointSet {
        PointSet::from_points(points)
    }

    #[test]
    fn fork_basics() {
        let g = fork();
        assert_eq!(g.x_forward(ps([1])), ps([0, 2]));
        assert_eq!(
            g.positively_invariant_sets(),
            vec![PointSet::EMPTY, ps([0]), ps([2]), ps([0, 2]), ps([0, 1, 2])]
        );
        assert_eq!(g.j_x(), ps([1]));
    }

    #[test]
    fn fork_has_four_pairs_and_two_primes() {
        let g = fork();
        let pl = g.j_pairs(g.j_x()).unwrap();
        let mut pairs = pl.pairs().to_vec();
        pairs.sort();
        let mut expected = vec![
            (PointSet::EMPTY, ps([1])),
            (ps([0]), ps([0, 1])),
            (ps([2]), ps([1, 2])),
            (ps([0, 1, 2]), ps([0, 1, 2])),
        ];
        expected.sort();
        assert_eq!(pairs, expected);
        let spec = pair_prime_space(&pl).unwrap();
        assert_eq!(spec.primes().len(), 2);
        assert_eq!(spec.space().opens().size(), 4);
        assert!(pl.is_meet_closed());
        // ({v1},{v1,v2}) ∪ ({v3},{v2,v3}) is not a pair; their join is the top
        assert!(!pl.is_join_closed());
    }

    #[test]
    fn edgeless_graph() {
        let g = FiniteGraph::new(2, vec![]).unwrap();
        assert_eq!(g.x_forward(g.all()), PointSet::EMPTY);
        assert_eq!(g.x_inverse(PointSet::EMPTY), g.all());
        assert_eq!(g.j_x(), PointSet::EMPTY);
        let pl = g.j_pairs(PointSet::EMPTY).unwrap();
        assert!(pl.pairs().iter().all(|&(i, ip)| i == ip));
        assert_eq!(pl.len(), 4);
    }

    #[test]
    fn single_loop() {
        let g = FiniteGraph::new(1, vec![(0, 0)]).unwrap();
        assert_eq!(g.x_forward(ps([0])), ps([0]));
        assert_eq!(g.j_x(), ps([0]));
    }

    #[test]
    fn empty_j_gives_toeplitz_pairs() {
        let g = fork();
        let pl = g.j_pairs(PointSet::EMPTY).unwrap();
        let bottom: Vec<_> = pl.pairs().iter().filter(|p| p.0.is_empty()).map(|p| p.1).collect();
        // J_X(∅) = {v2}
        assert_eq!(bottom.len(), 2);
        assert!(bottom.contains(&PointSet::EMPTY) && bottom.contains(&ps([1])));
    }

    #[test]
    fn pairs_are_not_join_closed_in_general() {
        let g = FiniteGraph::new(3, vec![(0, 1), (0, 2)]).unwrap();
        let pl = g.j_pairs(PointSet::EMPTY).unwrap();
        assert!(pl.is_meet_closed());
        assert!(!pl.is_join_closed());
    }

    #[test]
    fn out_of_range_j_is_rejected() {
        assert!(matches!(fork().j_pairs(ps([5])), Err(Error::JNotAdmissible(_))));
    }

    #[test]
    fn embedding_is_bijective_when_j_covers_non_sinks() {
        let g = fork();
        let j = g.j_x();
        let pl = g.j_pairs(j).unwrap();
        let emb = g.invariant_embedding(j, &pl).unwrap();
        let mut sorted = emb.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), pl.len());
    }

    fn graph_strategy() -> impl Strategy<Value = (FiniteGraph, PointSet)> {
        (1usize..=5)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec((0..n, 0..n), 0..8),
                    0u64..(1 << n),
                )
            })
            .prop_map(|(n, edges, j)| (FiniteGraph::new(n, edges).unwrap(), PointSet::from_bits(j)))
    }

    proptest! {
        #[test]
        fn forward_and_inverse_are_adjoint((g, _) in graph_strategy(), a in 0u64..32, b in 0u64..32) {
            let (a, b) = (PointSet::from_bits(a) & g.all(), PointSet::from_bits(b) & g.all());
            prop_assert_eq!(g.x_forward(a | b), g.x_forward(a) | g.x_forward(b));
            prop_assert_eq!(g.x_inverse(a & b), g.x_inverse(a) & g.x_inverse(b));
            prop_assert_eq!(g.x_forward(a).is_subset(b), a.is_subset(g.x_inverse(b)));
        }

        #[test]
        fn pair_lattice_invariants((g, j) in graph_strategy()) {
            let pl = g.j_pairs(j).unwrap();
            prop_assert!(pl.is_meet_closed());
            let emb = g.invariant_embedding(j, &pl).unwrap();
            let invariant = g.j_invariant_sets(j);
            for (x, &a) in invariant.iter().zip(&emb) {
                for (y, &b) in invariant.iter().zip(&emb) {
                    prop_assert_eq!(x.is_subset(*y), pl.lattice().leq(a, b));
                }
            }
            if (j | g.sinks()) == g.all() {
                prop_assert_eq!(emb.len(), pl.len());
            }
        }
    }
}
