//! Finite T0 spaces, prime spectra of finite frames, locale morphisms and
//! their adjunct point maps, and the open-surjection criterion for a locale
//! morphism into the opens of a space.
//!
//! Conventions. The specialization order of a space is `p ≤ q` iff `q` lies
//! in the closure of `{p}`, so open sets are down-sets and closures are
//! up-sets. A prime spectrum is ordered by the lattice order on primes; with
//! `U_I = {p : I ≰ p}` the opens are again down-sets.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{lower_adjoint, MonotoneMap};
use crate::lattice::{Elem, FiniteLattice, FinitePoset, SetLattice};
use crate::points::{PointSet, MAX_POINTS};

/// A finite T0 space: its specialization order plus the lattice of opens
/// (exactly the down-sets of that order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteT0Space {
    order: FinitePoset,
    opens: SetLattice,
}

impl FiniteT0Space {
    pub fn from_order(order: FinitePoset) -> Result<Self> {
        let opens = SetLattice::down_sets(&order)?;
        Ok(FiniteT0Space { order, opens })
    }

    pub fn discrete(n: usize) -> Result<Self> {
        Self::from_order(FinitePoset::antichain(n))
    }

    /// Two points; point 0 is open and point 1 is closed.
    pub fn sierpinski() -> Self {
        Self::from_order(FinitePoset::chain(2)).expect("two points")
    }

    /// Builds a space from a topology given as a family of open sets.
    pub fn from_opens<I: IntoIterator<Item = PointSet>>(n: usize, opens: I) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "space",
                size: n,
                limit: MAX_POINTS,
            });
        }
        let mut family: Vec<PointSet> = opens.into_iter().collect();
        family.sort();
        family.dedup();
        let full = PointSet::full(n);
        if !family.contains(&PointSet::EMPTY) || !family.contains(&full) {
            return Err(Error::NotATopology("∅ and the whole space must be open".into()));
        }
        if let Some(bad) = family.iter().find(|s| !s.is_subset(full)) {
            return Err(Error::NotATopology(format!("{bad} has points outside the space")));
        }
        for &u in &family {
            for &v in &family {
                if family.binary_search(&(u | v)).is_err() || family.binary_search(&(u & v)).is_err() {
                    return Err(Error::NotATopology(format!(
                        "{u} and {v} are open but their union or intersection is not"
                    )));
                }
            }
        }
        // p ≤ q iff every open containing q contains p
        let leq = |p: usize, q: usize| family.iter().all(|u| !u.contains(q) || u.contains(p));
        let order = FinitePoset::from_fn(n, leq).map_err(|_| {
            Error::NotATopology("two points have the same open neighbourhoods (not T0)".into())
        })?;
        let space = Self::from_order(order)?;
        debug_assert_eq!(space.opens.sets().len(), family.len());
        Ok(space)
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn opens(&self) -> &SetLattice {
        &self.opens
    }

    pub fn opens_lattice(&self) -> &Arc<FiniteLattice> {
        self.opens.lattice()
    }

    pub fn len(&self) -> usize {
        self.order.size()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.order.is_down_set(set)
    }

    pub fn closure(&self, set: PointSet) -> PointSet {
        self.order.up_closure(set)
    }

    /// Largest open subset of `set`.
    pub fn interior(&self, set: PointSet) -> PointSet {
        (0..self.len())
            .filter(|&p| self.order.principal_down(p).is_subset(set))
            .collect()
    }

    /// The prime `X ∖ cl{x}` of `O(X)` corresponding to the point `x`.
    pub fn point_prime(&self, x: usize) -> Elem {
        let complement = self.closure(PointSet::singleton(x)).complement(self.len());
        self.opens.elem(complement).expect("complement of a closure is open")
    }

    /// Every nonempty irreducible closed set is the closure of exactly one
    /// point.
    pub fn is_sober(&self) -> bool {
        let n = self.len();
        let closed: Vec<PointSet> = self
            .opens
            .sets()
            .iter()
            .map(|u| u.complement(n))
            .collect();
        closed.iter().filter(|c| !c.is_empty()).all(|&c| {
            let proper: Vec<PointSet> = closed
                .iter()
                .copied()
                .filter(|&d| d != c && d.is_subset(c))
                .collect();
            let reducible = proper
                .iter()
                .any(|&d| proper.iter().any(|&e| (d | e) == c));
            if reducible {
                return true;
            }
            let generic = c
                .iter()
                .filter(|&x| self.closure(PointSet::singleton(x)) == c)
                .count();
            generic == 1
        })
    }
}

/// Meet-prime elements of a lattice: `p ≠ ⊤` with `a∧b ≤ p ⇒ a ≤ p or b ≤ p`.
pub fn meet_primes(lattice: &FiniteLattice) -> Vec<Elem> {
    lattice
        .elements()
        .filter(|&p| {
            p != lattice.top()
                && lattice.elements().all(|a| {
                    lattice.leq(a, p)
                        || lattice
                            .elements()
                            .all(|b| lattice.leq(b, p) || !lattice.leq(lattice.meet(a, b), p))
                })
        })
        .collect()
}

/// The primes of a finite frame with the hull-kernel opens `U_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSpectrum {
    locale: Arc<FiniteLattice>,
    primes: Vec<Elem>,
    /// `open_of[I] = U_I`, a set of prime indices (positions in `primes`).
    open_of: Vec<PointSet>,
    space: FiniteT0Space,
}

impl PrimeSpectrum {
    pub fn new(locale: Arc<FiniteLattice>) -> Result<Self> {
        locale.require_frame()?;
        Self::of_lattice(locale)
    }

    /// Meet-prime space of any finite lattice. The topology is the one
    /// generated by the sets `U_I`; its opens are the down-sets of the
    /// lattice order on primes, and `I ↦ U_I` need not preserve joins.
    pub fn of_lattice(locale: Arc<FiniteLattice>) -> Result<Self> {
        let primes = meet_primes(&locale);
        if primes.len() > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "prime spectrum",
                size: primes.len(),
                limit: MAX_POINTS,
            });
        }
        let open_of = hull_kernel_opens(&locale, &primes);
        let order = locale.order().induced(&primes);
        let space = FiniteT0Space::from_order(order)?;
        Ok(PrimeSpectrum {
            locale,
            primes,
            open_of,
            space,
        })
    }

    pub fn locale(&self) -> &Arc<FiniteLattice> {
        &self.locale
    }

    pub fn primes(&self) -> &[Elem] {
        &self.primes
    }

    /// Position of a lattice element among the primes.
    pub fn point_of(&self, p: Elem) -> Option<usize> {
        self.primes.iter().position(|&q| q == p)
    }

    pub fn open_of(&self, elem: Elem) -> PointSet {
        self.open_of[elem]
    }

    pub fn space(&self) -> &FiniteT0Space {
        &self.space
    }

    /// `I ↦ U_I` is injective.
    pub fn is_spatial(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.open_of.iter().all(|u| seen.insert(*u))
    }
}

/// `U_I = {k : I ≰ primes[k]}` for every element `I`.
pub fn hull_kernel_opens(lattice: &FiniteLattice, primes: &[Elem]) -> Vec<PointSet> {
    lattice
        .elements()
        .map(|i| {
            primes
                .iter()
                .enumerate()
                .filter(|&(_, &p)| !lattice.leq(i, p))
                .map(|(k, _)| k)
                .collect()
        })
        .collect()
}

/// Prime spectrum of a frame.
pub fn primes(lattice: &Arc<FiniteLattice>) -> Result<PrimeSpectrum> {
    PrimeSpectrum::new(lattice.clone())
}

pub fn is_spatial(lattice: &Arc<FiniteLattice>) -> Result<bool> {
    Ok(PrimeSpectrum::new(lattice.clone())?.is_spatial())
}

/// The prime spectrum of a frame as a space.
pub fn point_space(lattice: &Arc<FiniteLattice>) -> Result<FiniteT0Space> {
    Ok(PrimeSpectrum::new(lattice.clone())?.space().clone())
}

/// Whether `I ↦ U_I` is an order isomorphism from `L` onto the opens of its
/// point space.
pub fn lattice_round_trip(lattice: &Arc<FiniteLattice>) -> Result<bool> {
    let spectrum = PrimeSpectrum::new(lattice.clone())?;
    let opens = spectrum.space().opens();
    if opens.size() != lattice.size() {
        return Ok(false);
    }
    let image: Option<Vec<Elem>> = lattice
        .elements()
        .map(|e| opens.elem(spectrum.open_of(e)))
        .collect();
    let Some(image) = image else { return Ok(false) };
    let o = opens.lattice();
    Ok(lattice.elements().all(|a| {
        lattice
            .elements()
            .all(|b| lattice.leq(a, b) == o.leq(image[a], image[b]))
    }))
}

/// Whether `x ↦ X ∖ cl{x}` is a homeomorphism from `X` onto the point space
/// of its opens.
pub fn space_round_trip(space: &FiniteT0Space) -> Result<bool> {
    let spectrum = PrimeSpectrum::new(space.opens_lattice().clone())?;
    let values: Option<Vec<usize>> = (0..space.len())
        .map(|x| spectrum.point_of(space.point_prime(x)))
        .collect();
    let Some(values) = values else { return Ok(false) };
    Ok(PointMap::new(space.clone(), spectrum.space().clone(), values)
        .map(|f| f.is_homeomorphism())
        .unwrap_or(false))
}

pub fn is_sober(space: &FiniteT0Space) -> bool {
    space.is_sober()
}

/// A continuous map between finite spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    source: FiniteT0Space,
    target: FiniteT0Space,
    values: Vec<usize>,
}

impl PointMap {
    pub fn new(source: FiniteT0Space, target: FiniteT0Space, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.len() || values.iter().any(|&v| v >= target.len()) {
            return Err(Error::ShapeMismatch(format!(
                "point map with {} values between spaces of {} and {} points",
                values.len(),
                source.len(),
                target.len()
            )));
        }
        // continuity: monotone for the specialization orders
        for p in 0..source.len() {
            for q in 0..source.len() {
                if source.order.leq(p, q) && !target.order.leq(values[p], values[q]) {
                    let open = target.order.principal_down(values[q]);
                    return Err(Error::NotContinuous(open.to_vec()));
                }
            }
        }
        Ok(PointMap {
            source,
            target,
            values,
        })
    }

    pub fn identity(space: FiniteT0Space) -> Self {
        let values = (0..space.len()).collect();
        PointMap {
            target: space.clone(),
            source: space,
            values,
        }
    }

    pub fn source(&self) -> &FiniteT0Space {
        &self.source
    }

    pub fn target(&self) -> &FiniteT0Space {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, p: usize) -> usize {
        self.values[p]
    }

    pub fn image(&self, set: PointSet) -> PointSet {
        set.iter().map(|p| self.values[p]).collect()
    }

    pub fn preimage(&self, set: PointSet) -> PointSet {
        (0..self.source.len())
            .filter(|&p| set.contains(self.values[p]))
            .collect()
    }

    pub fn is_open_map(&self) -> bool {
        self.source
            .opens
            .sets()
            .iter()
            .all(|&u| self.target.is_open(self.image(u)))
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.source.points()) == self.target.points()
    }

    pub fn is_injective(&self) -> bool {
        self.image(self.source.points()).len() == self.source.len()
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective() && self.is_open_map()
    }

    /// The locale morphism `U ↦ f⁻¹(U)` from `O(target)` to `O(source)`.
    pub fn preimage_map(&self) -> MonotoneMap {
        let (s, t) = (&self.source.opens, &self.target.opens);
        MonotoneMap::from_fn(t.lattice().clone(), s.lattice().clone(), |e| {
            s.elem(self.preimage(t.set(e)))
                .expect("preimage of an open set is open")
        })
        .expect("preimage is monotone")
    }
}

pub fn is_open_map(f: &PointMap) -> bool {
    f.is_open_map()
}

pub fn is_surjective(f: &PointMap) -> bool {
    f.is_surjective()
}

/// Whether `g` preserves finite meets (including the top) and all joins
/// (including the bottom).
pub fn is_locale_morphism(g: &MonotoneMap) -> bool {
    g.preserves_joins() && g.preserves_meets()
}

fn check_into_opens(g: &MonotoneMap, space: &FiniteT0Space) -> Result<()> {
    if g.target().as_ref() != space.opens_lattice().as_ref() {
        return Err(Error::ShapeMismatch(
            "map does not land in the open-set lattice of the space".into(),
        ));
    }
    g.source().require_frame()?;
    if !is_locale_morphism(g) {
        return Err(Error::NotLocaleMorphism(
            "map does not preserve finite meets and all joins".into(),
        ));
    }
    Ok(())
}

/// The continuous map `π: X → P(L)` adjunct to a locale morphism
/// `G: L → O(X)`: `π(x) = ⋁{I : x ∉ G(I)}`.
pub fn adjunct_point_map(g: &MonotoneMap, space: &FiniteT0Space) -> Result<PointMap> {
    check_into_opens(g, space)?;
    let spectrum = PrimeSpectrum::new(g.source().clone())?;
    adjunct_into(g, space, &spectrum)
}

fn adjunct_into(g: &MonotoneMap, space: &FiniteT0Space, spectrum: &PrimeSpectrum) -> Result<PointMap> {
    let l = g.source();
    let opens = space.opens();
    let mut values = Vec::with_capacity(space.len());
    for x in 0..space.len() {
        let p = l.big_join(l.elements().filter(|&i| !opens.set(g.apply(i)).contains(x)));
        let point = spectrum.point_of(p).ok_or_else(|| {
            Error::NotLocaleMorphism(format!("adjunct value {p} at point {x} is not prime"))
        })?;
        values.push(point);
    }
    PointMap::new(space.clone(), spectrum.space().clone(), values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OpenSurjectionReport {
    pub has_lower_adjoint_f: bool,
    /// `I ∧ F(V) = F(G(I) ∩ V)` for all `I`, `V` (false when `F` is absent).
    pub frobenius_holds: bool,
    pub g_injective: bool,
    pub pi_open: bool,
    pub pi_surjective: bool,
    /// `(F exists ∧ Frobenius ∧ G injective) ⇔ (π open ∧ π surjective)`.
    pub equivalence_verified: bool,
    /// First `(I, V)` where the identity fails, if any.
    pub frobenius_counterexample: Option<(Elem, Elem)>,
}

/// Checks both sides of the open-surjection criterion for a locale morphism
/// `G: L → O(X)`. Finite spaces are first countable and every closed
/// subspace is Baire, so the two sides must agree on every input.
pub fn open_surjection_check(g: &MonotoneMap, space: &FiniteT0Space) -> Result<OpenSurjectionReport> {
    check_into_opens(g, space)?;
    let l = g.source();
    let opens = space.opens();
    let o = opens.lattice();
    let pi = adjunct_point_map(g, space)?;
    let f = lower_adjoint(g).ok();
    let mut frobenius_counterexample = None;
    if let Some(f) = &f {
        'outer: for i in l.elements() {
            for v in o.elements() {
                let lhs = l.meet(i, f.apply(v));
                let rhs = f.apply(o.meet(g.apply(i), v));
                if lhs != rhs {
                    frobenius_counterexample = Some((i, v));
                    break 'outer;
                }
            }
        }
    }
    let has_lower_adjoint_f = f.is_some();
    let frobenius_holds = has_lower_adjoint_f && frobenius_counterexample.is_none();
    let g_injective = g.is_injective();
    let pi_open = pi.is_open_map();
    let pi_surjective = pi.is_surjective();
    let lhs = has_lower_adjoint_f && frobenius_holds && g_injective;
    let rhs = pi_open && pi_surjective;
    Ok(OpenSurjectionReport {
        has_lower_adjoint_f,
        frobenius_holds,
        g_injective,
        pi_open,
        pi_surjective,
        equivalence_verified: lhs == rhs,
        frobenius_counterexample,
    })
}

/// The insertion of a sublattice of opens, given as a set family, into `O(X)`.
pub fn opens_insertion(space: &FiniteT0Space, sub: &SetLattice) -> Result<MonotoneMap> {
    let opens = space.opens();
    MonotoneMap::from_fn(sub.lattice().clone(), opens.lattice().clone(), |e| {
        opens.elem(sub.set(e)).unwrap_or(usize::MAX)
    })
    .map_err(|_| Error::ShapeMismatch("sublattice member is not an open set".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Arc<FiniteLattice> {
        Arc::new(
            FiniteLattice::from_poset(
                FinitePoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn primes_of_small_frames() {
        assert_eq!(primes(&diamond()).unwrap().primes(), &[1, 2]);
        assert_eq!(primes(&Arc::new(FiniteLattice::chain(3))).unwrap().primes(), &[0, 1]);
        assert_eq!(primes(&Arc::new(FiniteLattice::chain(1))).unwrap().primes(), &[] as &[Elem]);
    }

    #[test]
    fn non_frame_is_rejected() {
        let n5 = Arc::new(
            FiniteLattice::from_poset(
                FinitePoset::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap(),
            )
            .unwrap(),
        );
        assert!(matches!(primes(&n5), Err(Error::NotAFrame(..))));
    }

    #[test]
    fn hull_kernel_opens_preserve_joins_and_meets() {
        let l = diamond();
        let s = primes(&l).unwrap();
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(s.open_of(l.join(a, b)), s.open_of(a) | s.open_of(b));
                assert_eq!(s.open_of(l.meet(a, b)), s.open_of(a) & s.open_of(b));
            }
        }
        assert!(s.is_spatial());
    }

    #[test]
    fn sierpinski_topology_from_opens() {
        let s = FiniteT0Space::from_opens(2, [PointSet::EMPTY, PointSet::from_points([0]), PointSet::full(2)]).unwrap();
        assert_eq!(s, FiniteT0Space::sierpinski());
        assert_eq!(s.interior(PointSet::from_points([1])), PointSet::EMPTY);
        assert_eq!(s.closure(PointSet::from_points([0])), PointSet::full(2));
        assert!(s.is_sober());
        // indiscrete two points is not T0
        assert!(matches!(
            FiniteT0Space::from_opens(2, [PointSet::EMPTY, PointSet::full(2)]),
            Err(Error::NotATopology(_))
        ));
    }

    #[test]
    fn open_and_surjective_examples() {
        let sierp = FiniteT0Space::sierpinski();
        let one = FiniteT0Space::discrete(1).unwrap();
        let incl = PointMap::new(one, sierp.clone(), vec![0]).unwrap();
        assert!(incl.is_open_map());
        assert!(!incl.is_surjective());
        let two = FiniteT0Space::discrete(2).unwrap();
        let p = PointMap::new(two, sierp.clone(), vec![0, 1]).unwrap();
        assert!(!p.is_open_map());
        assert!(p.is_surjective());
        let id = PointMap::identity(sierp.clone());
        assert!(id.is_open_map() && id.is_surjective());
        // the reverse map Sierpiński → discrete is not continuous
        assert!(matches!(
            PointMap::new(sierp, FiniteT0Space::discrete(2).unwrap(), vec![0, 1]),
            Err(Error::NotContinuous(_))
        ));
    }

    #[test]
    fn adjunct_of_identity_is_soberification() {
        let x = FiniteT0Space::from_order(FinitePoset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()).unwrap();
        let g = MonotoneMap::identity(x.opens_lattice().clone());
        let pi = adjunct_point_map(&g, &x).unwrap();
        let spec = primes(x.opens_lattice()).unwrap();
        for p in 0..3 {
            assert_eq!(spec.primes()[pi.apply(p)], x.point_prime(p));
        }
        assert!(pi.is_homeomorphism());
    }

    #[test]
    fn swap_invariant_opens_collapse_to_one_prime() {
        let x = FiniteT0Space::discrete(2).unwrap();
        let inv = SetLattice::from_family(2, [PointSet::EMPTY, PointSet::full(2)]).unwrap();
        let g = opens_insertion(&x, &inv).unwrap();
        assert!(is_locale_morphism(&g));
        let pi = adjunct_point_map(&g, &x).unwrap();
        assert_eq!(pi.values(), &[0, 0]);
        assert_eq!(pi.target().len(), 1);
    }

    #[test]
    fn bundle_preimage_adjunct_is_the_projection() {
        // p: 2-point discrete → Sierpiński, identity on points
        let total = FiniteT0Space::discrete(2).unwrap();
        let base = FiniteT0Space::sierpinski();
        let p = PointMap::new(total.clone(), base.clone(), vec![0, 1]).unwrap();
        let g = p.preimage_map();
        let pi = adjunct_point_map(&g, &total).unwrap();
        let spec = primes(base.opens_lattice()).unwrap();
        for x in 0..2 {
            assert_eq!(spec.primes()[pi.apply(x)], base.point_prime(p.apply(x)));
        }
    }

    #[test]
    fn restricted_insertion_of_example_213_is_not_a_locale_morphism() {
        let a = SetLattice::powerset(3).unwrap();
        let sub = SetLattice::from_family(
            3,
            [PointSet::EMPTY, PointSet::from_points([0]), PointSet::from_points([1]), PointSet::full(3)],
        )
        .unwrap();
        let g = MonotoneMap::from_fn(sub.lattice().clone(), a.lattice().clone(), |e| a.elem(sub.set(e)).unwrap()).unwrap();
        assert!(!is_locale_morphism(&g));
    }

    #[test]
    fn open_surjection_identity_and_orbit_examples() {
        let x = FiniteT0Space::sierpinski();
        let id = MonotoneMap::identity(x.opens_lattice().clone());
        let rep = open_surjection_check(&id, &x).unwrap();
        assert!(rep.has_lower_adjoint_f && rep.frobenius_holds && rep.pi_open && rep.pi_surjective);
        assert!(rep.equivalence_verified);

        // Z/3 rotating three discrete points: invariant opens are ∅ and X
        let x = FiniteT0Space::discrete(3).unwrap();
        let inv = SetLattice::from_family(3, [PointSet::EMPTY, PointSet::full(3)]).unwrap();
        let g = opens_insertion(&x, &inv).unwrap();
        let rep = open_surjection_check(&g, &x).unwrap();
        assert!(rep.has_lower_adjoint_f && rep.frobenius_holds && rep.pi_open && rep.pi_surjective);
        assert!(rep.equivalence_verified);
    }

    #[test]
    fn open_surjection_sierpinski_bundle_fails_meet_formula() {
        // {∅, {s}, X} inside O(2-point discrete)
        let x = FiniteT0Space::discrete(2).unwrap();
        let sub = SetLattice::from_family(2, [PointSet::EMPTY, PointSet::from_points([0]), PointSet::full(2)]).unwrap();
        let g = opens_insertion(&x, &sub).unwrap();
        let rep = open_surjection_check(&g, &x).unwrap();
        assert!(rep.has_lower_adjoint_f);
        assert!(!rep.frobenius_holds);
        assert!(rep.frobenius_counterexample.is_some());
        assert!(!rep.pi_open);
        assert!(rep.equivalence_verified);
    }

    #[test]
    fn finite_spaces_are_sober() {
        for n in 0..=4 {
            for order in crate::lattice::natural_posets(n) {
                assert!(FiniteT0Space::from_order(order).unwrap().is_sober());
            }
        }
    }

    #[test]
    fn stone_round_trips_on_small_inputs() {
        for n in 1..=5 {
            for l in crate::lattice::lattices_of_size(n) {
                let l = Arc::new(l);
                if l.is_frame().distributive {
                    assert!(lattice_round_trip(&l).unwrap());
                    assert!(point_space(&l).unwrap().is_sober());
                }
            }
        }
        for n in 0..=3 {
            for order in crate::lattice::natural_posets(n) {
                assert!(space_round_trip(&FiniteT0Space::from_order(order).unwrap()).unwrap());
            }
        }
    }
}
