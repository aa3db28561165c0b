//! Monotone maps, Galois connections, adjoint synthesis and the
//! restricted/induced fixed-point sets.
//!
//! A connection is a pair `lower: L → M`, `upper: M → L` with
//! `lower(x) ≤ y ⇔ x ≤ upper(y)`. In the ideal-lattice reading `lower` is
//! induction and `upper` is restriction.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<FiniteLattice>,
    target: Arc<FiniteLattice>,
    values: Vec<Elem>,
}

fn same_lattice(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl MonotoneMap {
    pub fn new(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        values: Vec<Elem>,
    ) -> Result<Self> {
        if values.len() != source.size() {
            return Err(Error::ShapeMismatch(format!(
                "map has {} values for a source of {} elements",
                values.len(),
                source.size()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= target.size()) {
            return Err(Error::ShapeMismatch(format!(
                "value {v} is outside a target of {} elements",
                target.size()
            )));
        }
        for x in source.elements() {
            for y in source.elements() {
                if source.leq(x, y) && !target.leq(values[x], values[y]) {
                    return Err(Error::NotMonotone(x, y));
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            values,
        })
    }

    pub fn from_fn(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        f: impl Fn(Elem) -> Elem,
    ) -> Result<Self> {
        let values = source.elements().map(f).collect();
        Self::new(source, target, values)
    }

    pub fn identity(lattice: Arc<FiniteLattice>) -> Self {
        let values = lattice.elements().collect();
        MonotoneMap {
            source: lattice.clone(),
            target: lattice,
            values,
        }
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.target
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.values[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if !same_lattice(&self.target, &other.source) {
            return Err(Error::ShapeMismatch("composition of non-matching maps".into()));
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: other.target.clone(),
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    /// Binary joins and the empty join; on a finite lattice this is
    /// preservation of all joins.
    pub fn preserves_joins(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        self.values[s.bottom()] == t.bottom()
            && s.elements().all(|x| {
                s.elements()
                    .all(|y| self.values[s.join(x, y)] == t.join(self.values[x], self.values[y]))
            })
    }

    /// Binary meets and the empty meet.
    pub fn preserves_meets(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        self.values[s.top()] == t.top()
            && s.elements().all(|x| {
                s.elements()
                    .all(|y| self.values[s.meet(x, y)] == t.meet(self.values[x], self.values[y]))
            })
    }
}

/// A pair `(x, y)` at which a candidate adjoint breaks the adjunction: `x` in
/// the source of the lower map and `y` in the source of the upper map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbsenceWitness {
    pub lower_arg: Elem,
    pub upper_arg: Elem,
    /// Whether `lower(x) ≤ y` holds.
    pub lower_side: bool,
    /// Whether `x ≤ upper(y)` holds.
    pub upper_side: bool,
}

fn first_adjunction_failure(lower: &MonotoneMap, upper: &MonotoneMap) -> Option<AbsenceWitness> {
    let (l, m) = (&lower.source, &lower.target);
    for x in l.elements() {
        for y in m.elements() {
            let lower_side = m.leq(lower.values[x], y);
            let upper_side = l.leq(x, upper.values[y]);
            if lower_side != upper_side {
                return Some(AbsenceWitness {
                    lower_arg: x,
                    upper_arg: y,
                    lower_side,
                    upper_side,
                });
            }
        }
    }
    None
}

fn check_shapes(lower: &MonotoneMap, upper: &MonotoneMap) -> Result<()> {
    if same_lattice(&lower.source, &upper.target) && same_lattice(&lower.target, &upper.source) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(
            "lower and upper maps do not run between the same two lattices".into(),
        ))
    }
}

/// Whether `lower(x) ≤ y ⇔ x ≤ upper(y)` for every pair.
pub fn is_adjoint_pair(lower: &MonotoneMap, upper: &MonotoneMap) -> Result<bool> {
    check_shapes(lower, upper)?;
    Ok(first_adjunction_failure(lower, upper).is_none())
}

/// Synthesizes `upper(y) = ⋁{x : lower(x) ≤ y}` and returns it if it is
/// adjoint to `lower`.
pub fn upper_adjoint(lower: &MonotoneMap) -> Result<MonotoneMap, AbsenceWitness> {
    let (l, m) = (&lower.source, &lower.target);
    let values: Vec<Elem> = m
        .elements()
        .map(|y| l.big_join(l.elements().filter(|&x| m.leq(lower.values[x], y))))
        .collect();
    let candidate = MonotoneMap {
        source: m.clone(),
        target: l.clone(),
        values,
    };
    match first_adjunction_failure(lower, &candidate) {
        None => Ok(candidate),
        Some(w) => Err(w),
    }
}

/// Synthesizes `lower(x) = ⋀{y : x ≤ upper(y)}` and returns it if it is
/// adjoint to `upper`.
pub fn lower_adjoint(upper: &MonotoneMap) -> Result<MonotoneMap, AbsenceWitness> {
    let (m, l) = (&upper.source, &upper.target);
    let values: Vec<Elem> = l
        .elements()
        .map(|x| m.big_meet(m.elements().filter(|&y| l.leq(x, upper.values[y]))))
        .collect();
    let candidate = MonotoneMap {
        source: l.clone(),
        target: m.clone(),
        values,
    };
    match first_adjunction_failure(&candidate, upper) {
        None => Ok(candidate),
        Some(w) => Err(w),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisConnection {
    lower: MonotoneMap,
    upper: MonotoneMap,
}

impl GaloisConnection {
    /// Always re-validates the adjunction.
    pub fn new(lower: MonotoneMap, upper: MonotoneMap) -> Result<Self> {
        check_shapes(&lower, &upper)?;
        if let Some(w) = first_adjunction_failure(&lower, &upper) {
            return Err(Error::AdjunctionFailure {
                source_elem: w.lower_arg,
                target_elem: w.upper_arg,
            });
        }
        Ok(GaloisConnection { lower, upper })
    }

    /// Completes a join-preserving map to a connection.
    pub fn from_lower(lower: MonotoneMap) -> Result<Self> {
        let upper = upper_adjoint(&lower).map_err(|w| Error::AdjunctionFailure {
            source_elem: w.lower_arg,
            target_elem: w.upper_arg,
        })?;
        Ok(GaloisConnection { lower, upper })
    }

    pub fn identity(lattice: Arc<FiniteLattice>) -> Self {
        let id = MonotoneMap::identity(lattice);
        GaloisConnection {
            lower: id.clone(),
            upper: id,
        }
    }

    /// The lower adjoint (induction).
    pub fn lower(&self) -> &MonotoneMap {
        &self.lower
    }

    /// The upper adjoint (restriction).
    pub fn upper(&self) -> &MonotoneMap {
        &self.upper
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        &self.lower.source
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.lower.target
    }

    pub fn induce(&self, x: Elem) -> Elem {
        self.lower.values[x]
    }

    pub fn restrict(&self, y: Elem) -> Elem {
        self.upper.values[y]
    }

    /// `r∘i`, the closure on the source.
    pub fn closure(&self, x: Elem) -> Elem {
        self.restrict(self.induce(x))
    }

    /// `i∘r`, the interior on the target.
    pub fn interior(&self, y: Elem) -> Elem {
        self.induce(self.restrict(y))
    }

    pub fn fixed_points(&self) -> FixedPointSublattices {
        FixedPointSublattices::of(self)
    }

    /// `r(y) = r(⊥) ⇒ y = ⊥`.
    pub fn detects(&self) -> bool {
        let t = self.target();
        let r0 = self.restrict(t.bottom());
        let by_definition = t
            .elements()
            .all(|y| y == t.bottom() || self.restrict(y) != r0);
        debug_assert_eq!(by_definition, self.detects_via_induced());
        by_definition
    }

    /// Every `y > ⊥` lies above a nonzero induced element.
    pub fn detects_via_induced(&self) -> bool {
        let t = self.target();
        let induced = self.fixed_points().induced;
        t.elements().all(|y| {
            y == t.bottom()
                || induced
                    .iter()
                    .any(|&j| j != t.bottom() && t.leq(j, y))
        })
    }

    /// `r` is injective.
    pub fn separates(&self) -> bool {
        let by_definition = self.upper.is_injective();
        debug_assert_eq!(by_definition, self.separates_via_induced());
        by_definition
    }

    /// Every element of the target is induced.
    pub fn separates_via_induced(&self) -> bool {
        self.fixed_points().induced.len() == self.target().size()
    }

    pub fn verify_properties(&self) -> PropertyReport {
        PropertyReport::evaluate(self)
    }
}

/// Fixed points of `r∘i` (restricted) and `i∘r` (induced), with the
/// certified order isomorphism between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointSublattices {
    /// Sorted elements `x` of the source with `r(i(x)) = x`.
    pub restricted: Vec<Elem>,
    /// Sorted elements `y` of the target with `i(r(y)) = y`.
    pub induced: Vec<Elem>,
    /// `restricted_to_induced[k] = i(restricted[k])`.
    pub restricted_to_induced: Vec<Elem>,
    /// `induced_to_restricted[k] = r(induced[k])`.
    pub induced_to_restricted: Vec<Elem>,
}

impl FixedPointSublattices {
    fn of(gc: &GaloisConnection) -> Self {
        let restricted: Vec<Elem> = gc
            .source()
            .elements()
            .filter(|&x| gc.closure(x) == x)
            .collect();
        let induced: Vec<Elem> = gc
            .target()
            .elements()
            .filter(|&y| gc.interior(y) == y)
            .collect();
        let restricted_to_induced = restricted.iter().map(|&x| gc.induce(x)).collect();
        let induced_to_restricted = induced.iter().map(|&y| gc.restrict(y)).collect();
        FixedPointSublattices {
            restricted,
            induced,
            restricted_to_induced,
            induced_to_restricted,
        }
    }

    pub fn is_restricted(&self, x: Elem) -> bool {
        self.restricted.binary_search(&x).is_ok()
    }

    pub fn is_induced(&self, y: Elem) -> bool {
        self.induced.binary_search(&y).is_ok()
    }

    /// Whether `i` and `r` are mutually inverse order isomorphisms between
    /// the two sets.
    pub fn isomorphism_certified(&self, gc: &GaloisConnection) -> bool {
        let (s, t) = (gc.source(), gc.target());
        self.restricted.len() == self.induced.len()
            && self.restricted_to_induced.iter().all(|&y| self.is_induced(y))
            && self.induced_to_restricted.iter().all(|&x| self.is_restricted(x))
            && self
                .restricted
                .iter()
                .all(|&x| gc.restrict(gc.induce(x)) == x)
            && self.induced.iter().all(|&y| gc.induce(gc.restrict(y)) == y)
            && self.restricted.iter().all(|&a| {
                self.restricted
                    .iter()
                    .all(|&b| s.leq(a, b) == t.leq(gc.induce(a), gc.induce(b)))
            })
    }
}

/// Itemized check of the general Galois-connection properties of
/// restriction and induction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    /// (1) `i` and `r` are monotone.
    pub monotone: bool,
    /// (2) `r∘i ≥ id` and `i∘r∘i = i`.
    pub unit: bool,
    /// (2b) `i∘r ≤ id` and `r∘i∘r = r`.
    pub counit: bool,
    /// (3) `i`, `r` restrict to inverse isomorphisms restricted ≅ induced.
    pub isomorphism: bool,
    /// (4) `i` preserves joins and `r` preserves meets.
    pub preservation: bool,
    /// (5) `i(⊥) = ⊥` and `r(⊤) = ⊤`.
    pub bounds: bool,
    /// (6) restricted elements are meet-closed, induced elements join-closed.
    pub closure: bool,
    /// (7) `x ≤ j ⇔ r∘i(x) ≤ j` for restricted `j`.
    pub restricted_insertion: bool,
    /// (8) `j ≤ y ⇔ j ≤ i∘r(y)` for induced `j`.
    pub induced_insertion: bool,
}

impl PropertyReport {
    fn evaluate(gc: &GaloisConnection) -> Self {
        let (s, t) = (gc.source(), gc.target());
        let fp = gc.fixed_points();
        let monotone = s.elements().all(|x| {
            s.elements()
                .all(|y| !s.leq(x, y) || t.leq(gc.induce(x), gc.induce(y)))
        }) && t.elements().all(|x| {
            t.elements()
                .all(|y| !t.leq(x, y) || s.leq(gc.restrict(x), gc.restrict(y)))
        });
        let unit = s
            .elements()
            .all(|x| s.leq(x, gc.closure(x)) && gc.induce(gc.closure(x)) == gc.induce(x));
        let counit = t
            .elements()
            .all(|y| t.leq(gc.interior(y), y) && gc.restrict(gc.interior(y)) == gc.restrict(y));
        let isomorphism = fp.isomorphism_certified(gc);
        let preservation = gc.lower().preserves_joins() && gc.upper().preserves_meets();
        let bounds = gc.induce(s.bottom()) == t.bottom() && gc.restrict(t.top()) == s.top();
        let closure = s.is_meet_closed(&fp.restricted) && t.is_join_closed(&fp.induced);
        let restricted_insertion = s.elements().all(|x| {
            fp.restricted
                .iter()
                .all(|&j| s.leq(x, j) == s.leq(gc.closure(x), j))
        });
        let induced_insertion = t.elements().all(|y| {
            fp.induced
                .iter()
                .all(|&j| t.leq(j, y) == t.leq(j, gc.interior(y)))
        });
        PropertyReport {
            monotone,
            unit,
            counit,
            isomorphism,
            preservation,
            bounds,
            closure,
            restricted_insertion,
            induced_insertion,
        }
    }

    pub fn items(&self) -> [(&'static str, bool); 9] {
        [
            ("monotone", self.monotone),
            ("unit", self.unit),
            ("counit", self.counit),
            ("isomorphism", self.isomorphism),
            ("preservation", self.preservation),
            ("bounds", self.bounds),
            ("closure", self.closure),
            ("restricted_insertion", self.restricted_insertion),
            ("induced_insertion", self.induced_insertion),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.items().iter().all(|&(_, ok)| ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{FinitePoset, SetLattice};
    use crate::points::PointSet;

    fn set_map(from: &SetLattice, to: &SetLattice, f: impl Fn(PointSet) -> PointSet) -> MonotoneMap {
        MonotoneMap::from_fn(from.lattice().clone(), to.lattice().clone(), |e| {
            to.elem(f(from.set(e))).expect("image is an element")
        })
        .unwrap()
    }

    /// A = ℂ inside ℂ⊕ℂ: i({a}) = {b1,b2}, r(T) = {a} iff T is everything.
    fn unital_into_two() -> (SetLattice, SetLattice, MonotoneMap, MonotoneMap) {
        let a = SetLattice::powerset(1).unwrap();
        let b = SetLattice::powerset(2).unwrap();
        let i = set_map(&a, &b, |s| if s.is_empty() { s } else { PointSet::full(2) });
        let r = set_map(&b, &a, |t| if t == PointSet::full(2) { PointSet::full(1) } else { PointSet::EMPTY });
        (a, b, i, r)
    }

    #[test]
    fn unital_embedding_is_adjoint() {
        let (_, _, i, r) = unital_into_two();
        assert!(is_adjoint_pair(&i, &r).unwrap());
        assert_eq!(upper_adjoint(&i).unwrap(), r);
        assert_eq!(lower_adjoint(&r).unwrap(), i);
        // r does not preserve the binary join {b1}∨{b2}
        assert!(!r.preserves_joins());
    }

    #[test]
    fn identity_is_adjoint_to_itself() {
        let l = Arc::new(FiniteLattice::chain(3));
        let id = MonotoneMap::identity(l.clone());
        assert!(is_adjoint_pair(&id, &id).unwrap());
        assert_eq!(upper_adjoint(&id).unwrap(), id);
        let gc = GaloisConnection::identity(l.clone());
        let fp = gc.fixed_points();
        assert_eq!(fp.restricted, vec![0, 1, 2]);
        assert_eq!(fp.induced, vec![0, 1, 2]);
        assert!(gc.verify_properties().all_hold());
    }

    #[test]
    fn constant_top_is_not_lower_adjoint_of_identity() {
        let l = Arc::new(FiniteLattice::chain(2));
        let top = MonotoneMap::from_fn(l.clone(), l.clone(), |_| 1).unwrap();
        let id = MonotoneMap::identity(l);
        // at (⊥, ⊥): top(⊥) ≤ ⊥ fails, ⊥ ≤ id(⊥) holds
        assert!(!is_adjoint_pair(&top, &id).unwrap());
    }

    #[test]
    fn constant_top_upper_has_constant_bottom_lower() {
        let l = Arc::new(FiniteLattice::chain(3));
        let m = Arc::new(FiniteLattice::chain(2));
        let r = MonotoneMap::from_fn(m.clone(), l.clone(), |_| l.top()).unwrap();
        let i = lower_adjoint(&r).unwrap();
        assert!(i.values().iter().all(|&v| v == m.bottom()));
    }

    #[test]
    fn non_join_preserving_map_has_no_upper_adjoint() {
        // diamond ⊥=0, x=1, y=2, ⊤=3; x↦x, y↦y, ⊤↦x
        let d = Arc::new(
            FiniteLattice::from_poset(
                FinitePoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
            )
            .unwrap(),
        );
        let err = MonotoneMap::new(d.clone(), d.clone(), vec![0, 1, 2, 1]).unwrap_err();
        assert_eq!(err, Error::NotMonotone(2, 3));
        // monotone, but x∨y ↦ ⊤ while x, y ↦ ⊥
        let f = MonotoneMap::new(d.clone(), d.clone(), vec![0, 0, 0, 3]).unwrap();
        let w = upper_adjoint(&f).unwrap_err();
        assert_ne!(w.lower_side, w.upper_side);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = Arc::new(FiniteLattice::chain(2));
        let b = Arc::new(FiniteLattice::chain(3));
        let ab = MonotoneMap::from_fn(a.clone(), b.clone(), |x| x).unwrap();
        let aa = MonotoneMap::identity(a);
        assert!(matches!(is_adjoint_pair(&ab, &aa), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn two_by_two_full_matrix_neither_detects_nor_separates() {
        // two A-summands each hitting both B-summands
        let a = SetLattice::powerset(2).unwrap();
        let b = SetLattice::powerset(2).unwrap();
        let i = set_map(&a, &b, |s| if s.is_empty() { s } else { PointSet::full(2) });
        let gc = GaloisConnection::from_lower(i).unwrap();
        assert!(!gc.separates());
        assert!(!gc.separates_via_induced());
        // r({b1}) = r({b2}) = ∅ = r(∅) so detection fails as well
        assert!(!gc.detects());
        assert!(!gc.detects_via_induced());
        assert!(gc.verify_properties().all_hold());
    }
}
