//! Two topological sources of Galois connections: a finite group acting by
//! homeomorphisms on a finite T0 space, and a continuous map from a total
//! space onto a base.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::galois::{GaloisConnection, MonotoneMap};
use crate::lattice::SetLattice;
use crate::points::PointSet;
use crate::quasiorbit::{quasi_orbit_space, InclusionData};
use crate::spectrum::{FiniteT0Space, PointMap};

/// Largest group order produced by closing a generator set.
pub const MAX_GROUP_ORDER: usize = 10_000;

pub type Permutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupAction {
    space: FiniteT0Space,
    generators: Vec<Permutation>,
    /// Every element of the generated group, identity first.
    elements: Vec<Permutation>,
}

fn compose(g: &[usize], h: &[usize]) -> Permutation {
    h.iter().map(|&x| g[x]).collect()
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    p.len() == n && {
        let mut seen = vec![false; n];
        p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
    }
}

impl FiniteGroupAction {
    pub fn new(space: FiniteT0Space, generators: Vec<Permutation>) -> Result<Self> {
        let n = space.len();
        for g in &generators {
            if !is_permutation(g, n) {
                return Err(Error::Invalid(format!("{g:?} is not a permutation of {n} points")));
            }
            // a bijection of a finite poset preserving the order is an automorphism
            if !space.order().is_order_automorphism(g) {
                return Err(Error::Invalid(format!("{g:?} is not a homeomorphism")));
            }
        }
        let identity: Permutation = (0..n).collect();
        let mut elements = vec![identity.clone()];
        let mut seen: HashSet<Permutation> = HashSet::from([identity]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(k) = queue.pop_front() {
            for g in &generators {
                let h = compose(g, &elements[k]);
                if seen.insert(h.clone()) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(Error::TooLarge {
                            what: "generated group",
                            size: MAX_GROUP_ORDER + 1,
                            limit: MAX_GROUP_ORDER,
                        });
                    }
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(FiniteGroupAction {
            space,
            generators,
            elements,
        })
    }

    pub fn trivial(space: FiniteT0Space) -> Self {
        Self::new(space, Vec::new()).expect("no generators")
    }

    pub fn space(&self) -> &FiniteT0Space {
        &self.space
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn translate(&self, g: &[usize], set: PointSet) -> PointSet {
        set.iter().map(|p| g[p]).collect()
    }

    pub fn orbit(&self, p: usize) -> PointSet {
        self.elements.iter().map(|g| g[p]).collect()
    }

    /// Smallest invariant superset.
    pub fn saturate(&self, set: PointSet) -> PointSet {
        set.iter().fold(PointSet::EMPTY, |acc, p| acc | self.orbit(p))
    }

    pub fn is_invariant(&self, set: PointSet) -> bool {
        self.generators.iter().all(|g| self.translate(g, set) == set)
    }

    /// Open sets fixed by every group element.
    pub fn invariant_opens(&self) -> SetLattice {
        let n = self.space.len();
        let family = self
            .space
            .opens()
            .sets()
            .iter()
            .copied()
            .filter(|&u| self.is_invariant(u));
        SetLattice::from_family(n, family).expect("invariant opens form a lattice")
    }

    /// The insertion of invariant opens into all opens.
    pub fn invariant_insertion(&self) -> MonotoneMap {
        let inv = self.invariant_opens();
        let opens = self.space.opens();
        MonotoneMap::from_fn(inv.lattice().clone(), opens.lattice().clone(), |e| {
            opens.elem(inv.set(e)).expect("invariant opens are open")
        })
        .expect("insertion is monotone")
    }

    /// `i` = saturation from opens to invariant opens, `r` = insertion.
    pub fn inclusion_data(&self) -> Result<InclusionData> {
        let inv = self.invariant_opens();
        let opens = self.space.opens();
        let lower = MonotoneMap::from_fn(opens.lattice().clone(), inv.lattice().clone(), |e| {
            inv.elem(self.saturate(opens.set(e)))
                .expect("saturation of an open set is an invariant open")
        })?;
        let upper = MonotoneMap::from_fn(inv.lattice().clone(), opens.lattice().clone(), |e| {
            opens.elem(inv.set(e)).expect("invariant opens are open")
        })?;
        InclusionData::new(GaloisConnection::new(lower, upper)?)
    }

    pub fn orbit_closure(&self, p: usize) -> PointSet {
        self.space.closure(self.orbit(p))
    }

    /// Classes of points with equal orbit closures, ordered by least point.
    pub fn orbit_closure_relation(&self) -> Vec<PointSet> {
        let mut classes: Vec<(PointSet, PointSet)> = Vec::new();
        for p in 0..self.space.len() {
            let c = self.orbit_closure(p);
            match classes.iter_mut().find(|(key, _)| *key == c) {
                Some((_, class)) => *class = class.with(p),
                None => classes.push((c, PointSet::singleton(p))),
            }
        }
        classes.into_iter().map(|(_, class)| class).collect()
    }
}

/// Whether the fibers of `π` for the invariant-open connection, carried
/// back to points through `x ↦ X ∖ cl{x}`, are the orbit-closure classes.
pub fn action_quasi_orbit_agreement(a: &FiniteGroupAction) -> Result<bool> {
    let d = a.inclusion_data()?;
    let q = quasi_orbit_space(&d)?;
    let spectrum = d.source_spectrum();
    let prime_point = |x: usize| {
        spectrum
            .point_of(a.space.point_prime(x))
            .expect("point primes are primes")
    };
    let mut by_fiber: Vec<PointSet> = q
        .classes
        .iter()
        .map(|&class| {
            (0..a.space.len())
                .filter(|&x| class.contains(prime_point(x)))
                .collect()
        })
        .collect();
    let mut by_orbit = a.orbit_closure_relation();
    by_fiber.sort();
    by_orbit.sort();
    Ok(by_fiber == by_orbit)
}

/// A continuous map from a total space onto a base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleMap {
    proj: PointMap,
}

impl BundleMap {
    pub fn new(total: FiniteT0Space, base: FiniteT0Space, proj: Vec<usize>) -> Result<Self> {
        Ok(BundleMap {
            proj: PointMap::new(total, base, proj)?,
        })
    }

    pub fn total(&self) -> &FiniteT0Space {
        self.proj.source()
    }

    pub fn base(&self) -> &FiniteT0Space {
        self.proj.target()
    }

    pub fn proj(&self) -> &PointMap {
        &self.proj
    }

    /// `r(V)` = interior of the base minus the image of the complement of `V`.
    pub fn restrict(&self, v: PointSet) -> PointSet {
        let outside = self.proj.image(self.total().points() - v);
        self.base().interior(self.base().points() - outside)
    }

    /// `i` = preimage from opens of the base to opens of the total space.
    pub fn inclusion_data(&self) -> Result<InclusionData> {
        let (base, total) = (self.base().opens(), self.total().opens());
        let lower = self.proj.preimage_map();
        let upper = MonotoneMap::from_fn(total.lattice().clone(), base.lattice().clone(), |e| {
            base.elem(self.restrict(total.set(e)))
                .expect("an interior is open")
        })?;
        InclusionData::new(GaloisConnection::new(lower, upper)?)
    }
}

pub fn bundle_inclusion_data(b: &BundleMap) -> Result<InclusionData> {
    b.inclusion_data()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FinitePoset;
    use crate::quasiorbit::{
        check_c1, check_c2, check_jr, check_mi, f_map, prime_restriction, quasi_orbit_map,
    };

    fn vee() -> FiniteT0Space {
        // minimum 0 below the two maximal points 1 and 2
        FiniteT0Space::from_order(FinitePoset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()).unwrap()
    }

    #[test]
    fn swap_on_two_points() {
        let a = FiniteGroupAction::new(FiniteT0Space::discrete(2).unwrap(), vec![vec![1, 0]]).unwrap();
        assert_eq!(a.order(), 2);
        assert_eq!(a.invariant_opens().sets(), &[PointSet::EMPTY, PointSet::full(2)]);
        assert_eq!(a.orbit_closure_relation(), vec![PointSet::full(2)]);
        assert!(action_quasi_orbit_agreement(&a).unwrap());
    }

    #[test]
    fn trivial_action_keeps_everything() {
        let s = FiniteT0Space::sierpinski();
        let a = FiniteGroupAction::trivial(s.clone());
        assert_eq!(a.invariant_opens().size(), s.opens().size());
        assert_eq!(a.orbit_closure_relation().len(), 2);
        assert!(action_quasi_orbit_agreement(&a).unwrap());
    }

    #[test]
    fn rotation_of_three_points_is_one_orbit() {
        let a = FiniteGroupAction::new(FiniteT0Space::discrete(3).unwrap(), vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(a.order(), 3);
        assert_eq!(a.orbit_closure_relation(), vec![PointSet::full(3)]);
        let d = a.inclusion_data().unwrap();
        assert_eq!(quasi_orbit_space(&d).unwrap().quotient.len(), 1);
    }

    #[test]
    fn swap_on_vee_merges_maximal_points() {
        let a = FiniteGroupAction::new(vee(), vec![vec![0, 2, 1]]).unwrap();
        assert_eq!(a.space().opens().size(), 5);
        assert_eq!(a.invariant_opens().size(), 3);
        assert_eq!(
            a.orbit_closure_relation(),
            vec![PointSet::from_points([0]), PointSet::from_points([1, 2])]
        );
        let d = a.inclusion_data().unwrap();
        assert!(check_jr(&d) && check_c1(&d));
        assert!(action_quasi_orbit_agreement(&a).unwrap());
    }

    #[test]
    fn non_automorphism_is_rejected() {
        assert!(FiniteGroupAction::new(vee(), vec![vec![1, 0, 2]]).is_err());
        assert!(FiniteGroupAction::new(vee(), vec![vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn identity_bundle_is_identity_connection() {
        let s = FiniteT0Space::sierpinski();
        let b = BundleMap::new(s.clone(), s, vec![0, 1]).unwrap();
        let d = b.inclusion_data().unwrap();
        assert_eq!(d.gc().lower().values(), d.gc().upper().values());
    }

    #[test]
    fn discrete_pair_over_sierpinski() {
        let b = BundleMap::new(FiniteT0Space::discrete(2).unwrap(), FiniteT0Space::sierpinski(), vec![0, 1]).unwrap();
        assert_eq!(b.restrict(PointSet::from_points([0])), PointSet::from_points([0]));
        assert_eq!(b.restrict(PointSet::from_points([1])), PointSet::EMPTY);
        let d = b.inclusion_data().unwrap();
        assert!(check_mi(&d));
        let total = b.total().opens();
        let t = total.elem(PointSet::from_points([1])).unwrap();
        assert_eq!(total.set(d.induced()[f_map(&d).unwrap().apply(t)]), PointSet::full(2));
        assert_eq!(check_c2(&d), Ok(false));
        let rho = quasi_orbit_map(&d).unwrap();
        assert!(rho.is_surjective() && !rho.is_open());
        assert!(!b.proj().is_open_map());
    }

    #[test]
    fn constant_bundle() {
        let x = FiniteT0Space::discrete(2).unwrap();
        let pt = FiniteT0Space::discrete(1).unwrap();
        let b = BundleMap::new(x, pt, vec![0, 0]).unwrap();
        let d = b.inclusion_data().unwrap();
        assert_eq!(d.gc().lower().values().len(), 2);
        let total = b.total().opens();
        assert_eq!(total.set(d.gc().induce(0)), PointSet::EMPTY);
        assert_eq!(total.set(d.gc().induce(1)), PointSet::full(2));
    }

    #[test]
    fn bundle_openness_matches_prime_restriction() {
        let spaces: Vec<FiniteT0Space> = (1..=3)
            .flat_map(crate::lattice::natural_posets)
            .map(|o| FiniteT0Space::from_order(o).unwrap())
            .collect();
        for total in &spaces {
            for base in &spaces {
                let (n, m) = (total.len(), base.len());
                for code in 0..m.pow(n as u32) {
                    let values: Vec<usize> = (0..n).map(|k| code / m.pow(k as u32) % m).collect();
                    let Ok(b) = BundleMap::new(total.clone(), base.clone(), values) else { continue };
                    let d = b.inclusion_data().unwrap();
                    assert!(check_mi(&d));
                    let pr = prime_restriction(&d);
                    let proj_open_surj = b.proj().is_open_map() && b.proj().is_surjective();
                    if b.proj().is_surjective() {
                        assert_eq!(proj_open_surj, pr.is_open_surjection());
                    } else {
                        assert!(!proj_open_surj);
                    }
                }
            }
        }
    }
}
