//! Finite posets and bounded lattices, distributivity checking and the
//! down-set (Birkhoff) construction.
//!
//! Elements are dense indices `0..size`. The order is stored as a
//! reflexive-transitive boolean matrix (one bit row per element in each
//! direction), so `leq` is a single bit test.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::points::{PointSet, MAX_POINTS};

pub type Elem = usize;

pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

/// Environment variable overriding [`DEFAULT_MAX_ELEMENTS`].
pub const MAX_ELEMENTS_ENV: &str = "STONE_MAX_LATTICE";

/// The lattice size cap: `STONE_MAX_LATTICE` when set to a positive integer,
/// otherwise [`DEFAULT_MAX_ELEMENTS`].
pub fn max_elements() -> usize {
    std::env::var(MAX_ELEMENTS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_ELEMENTS)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    size: usize,
    /// `up[a]` holds every `b` with `a ≤ b`.
    up: Vec<FixedBitSet>,
    /// `down[a]` holds every `b` with `b ≤ a`.
    down: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// Builds a poset from a relation, checking reflexivity, antisymmetry and
    /// transitivity.
    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        let mut down = vec![FixedBitSet::with_capacity(size); size];
        for a in 0..size {
            for b in 0..size {
                if leq(a, b) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        let poset = FinitePoset { size, up, down };
        poset.check_axioms()?;
        Ok(poset)
    }

    pub fn from_matrix(leq: &[Vec<bool>]) -> Result<Self> {
        let size = leq.len();
        if leq.iter().any(|row| row.len() != size) {
            return Err(Error::NotAPoset("relation matrix is not square".into()));
        }
        Self::from_fn(size, |a, b| leq[a][b])
    }

    /// Builds a poset from strict relations `a < b` (usually covers), taking
    /// the reflexive-transitive closure. A cycle is reported as `NotAPoset`.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for (a, row) in up.iter_mut().enumerate() {
            row.insert(a);
        }
        for &(a, b) in covers {
            if a >= size || b >= size {
                return Err(Error::NotAPoset(format!(
                    "cover ({a}, {b}) is out of range for {size} elements"
                )));
            }
            up[a].insert(b);
        }
        for k in 0..size {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(size); size];
        for a in 0..size {
            for b in up[a].ones() {
                down[b].insert(a);
            }
        }
        for a in 0..size {
            for b in up[a].ones() {
                if a != b && up[b].contains(a) {
                    return Err(Error::NotAPoset(format!(
                        "elements {a} and {b} lie on a cycle"
                    )));
                }
            }
        }
        Ok(FinitePoset { size, up, down })
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |a, b| a <= b).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |a, b| a == b).expect("an antichain is a poset")
    }

    fn check_axioms(&self) -> Result<()> {
        for a in 0..self.size {
            if !self.up[a].contains(a) {
                return Err(Error::NotAPoset(format!("{a} ≤ {a} fails")));
            }
            for b in self.up[a].ones() {
                if a != b && self.up[b].contains(a) {
                    return Err(Error::NotAPoset(format!(
                        "{a} ≤ {b} and {b} ≤ {a} with {a} ≠ {b}"
                    )));
                }
                if !self.up[b].is_subset(&self.up[a]) {
                    let c = self.up[b].difference(&self.up[a]).next().unwrap();
                    return Err(Error::NotAPoset(format!(
                        "{a} ≤ {b} ≤ {c} but not {a} ≤ {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn up_row(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_row(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in self.up[a].ones() {
                if a == b {
                    continue;
                }
                let between = self.up[a]
                    .ones()
                    .any(|c| c != a && c != b && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The subposet on `elems`; element `k` of the result is `elems[k]`.
    pub fn induced(&self, elems: &[usize]) -> FinitePoset {
        Self::from_fn(elems.len(), |a, b| self.leq(elems[a], elems[b]))
            .expect("a subposet of a poset is a poset")
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&a| self.down[a].count_ones(..));
        order
    }

    pub fn is_order_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.size {
            return false;
        }
        let mut seen = vec![false; self.size];
        for &p in perm {
            if p >= self.size || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..self.size)
            .all(|a| (0..self.size).all(|b| self.leq(a, b) == self.leq(perm[a], perm[b])))
    }

    fn check_small(&self) -> Result<()> {
        if self.size > MAX_POINTS {
            Err(Error::TooLarge {
                what: "point set",
                size: self.size,
                limit: MAX_POINTS,
            })
        } else {
            Ok(())
        }
    }

    fn row_points(row: &FixedBitSet) -> PointSet {
        row.ones().collect()
    }

    /// `↓p`; requires at most 64 elements.
    pub fn principal_down(&self, p: usize) -> PointSet {
        Self::row_points(&self.down[p])
    }

    /// `↑p`; requires at most 64 elements.
    pub fn principal_up(&self, p: usize) -> PointSet {
        Self::row_points(&self.up[p])
    }

    pub fn down_closure(&self, set: PointSet) -> PointSet {
        set.iter()
            .fold(PointSet::EMPTY, |acc, p| acc | self.principal_down(p))
    }

    pub fn up_closure(&self, set: PointSet) -> PointSet {
        set.iter()
            .fold(PointSet::EMPTY, |acc, p| acc | self.principal_up(p))
    }

    pub fn is_down_set(&self, set: PointSet) -> bool {
        self.down_closure(set) == set
    }

    pub fn is_up_set(&self, set: PointSet) -> bool {
        self.up_closure(set) == set
    }

    /// Every down-closed subset, in breadth-first order from `∅`.
    pub fn down_sets(&self, limit: usize) -> Result<Vec<PointSet>> {
        self.check_small()?;
        let preds: Vec<PointSet> = (0..self.size)
            .map(|p| self.principal_down(p).without(p))
            .collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([PointSet::EMPTY]);
        seen.insert(PointSet::EMPTY);
        while let Some(set) = queue.pop_front() {
            out.push(set);
            if out.len() > limit {
                return Err(Error::TooLarge {
                    what: "down-set lattice",
                    size: out.len(),
                    limit,
                });
            }
            for p in 0..self.size {
                if !set.contains(p) && preds[p].is_subset(set) {
                    let next = set.with(p);
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The poset with element `p` removed and higher indices shifted down.
    pub fn delete_point(&self, p: usize) -> FinitePoset {
        let keep: Vec<usize> = (0..self.size).filter(|&q| q != p).collect();
        self.induced(&keep)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    order: FinitePoset,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

/// Result of the exhaustive distributivity check.
#[derive(Clone, Copy, Debug)]
pub struct FrameWitness<'a> {
    pub lattice: &'a FiniteLattice,
    pub distributive: bool,
    /// A triple violating `x∧(y∨z) = (x∧y)∨(x∧z)`, when one exists.
    pub violation: Option<(Elem, Elem, Elem)>,
}

fn greatest_in(rows: &[FixedBitSet], set: &FixedBitSet) -> Option<usize> {
    let cand = set.ones().max_by_key(|&c| rows[c].count_ones(..))?;
    (&rows[cand] == set).then_some(cand)
}

impl FiniteLattice {
    /// Validates that every pair has a meet and a join, using the size cap
    /// from [`max_elements`].
    pub fn from_poset(order: FinitePoset) -> Result<Self> {
        Self::from_poset_with_limit(order, max_elements())
    }

    pub fn from_poset_with_limit(order: FinitePoset, limit: usize) -> Result<Self> {
        let n = order.size();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if n > limit {
            return Err(Error::TooLarge {
                what: "lattice",
                size: n,
                limit,
            });
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let (m, j) = if order.leq(a, b) {
                    (a, b)
                } else if order.leq(b, a) {
                    (b, a)
                } else {
                    let mut lower = order.down[a].clone();
                    lower.intersect_with(&order.down[b]);
                    let m = greatest_in(&order.down, &lower)
                        .ok_or(Error::NotALattice(a, b, "meet"))?;
                    let mut upper = order.up[a].clone();
                    upper.intersect_with(&order.up[b]);
                    let j = greatest_in(&order.up, &upper)
                        .ok_or(Error::NotALattice(a, b, "join"))?;
                    (m, j)
                };
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = (0..n)
            .find(|&a| order.up[a].count_ones(..) == n)
            .ok_or(Error::NotALattice(0, 0, "bottom"))?;
        let top = (0..n)
            .find(|&a| order.down[a].count_ones(..) == n)
            .ok_or(Error::NotALattice(0, 0, "top"))?;
        Ok(FiniteLattice {
            order,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn chain(n: usize) -> Self {
        Self::from_poset(FinitePoset::chain(n)).expect("a nonempty chain is a lattice")
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.size
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.order.leq(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size() + b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size() + b]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Meet of a family; the empty meet is the top.
    pub fn big_meet<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Elem {
        elems.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a family; the empty join is the bottom.
    pub fn big_join<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Elem {
        elems.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn distributivity_violation(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in y..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Exhaustive triple check; a finite frame is a finite distributive lattice.
    pub fn is_frame(&self) -> FrameWitness<'_> {
        let violation = self.distributivity_violation();
        FrameWitness {
            lattice: self,
            distributive: violation.is_none(),
            violation,
        }
    }

    pub fn require_frame(&self) -> Result<()> {
        match self.distributivity_violation() {
            None => Ok(()),
            Some((x, y, z)) => Err(Error::NotAFrame(x, y, z)),
        }
    }

    /// The lattice on `elems` with the induced order; element `k` of the
    /// result is `elems[k]`. Fails when the induced order is not a lattice.
    pub fn suborder(&self, elems: &[Elem]) -> Result<FiniteLattice> {
        FiniteLattice::from_poset(self.order.induced(elems))
    }

    pub fn is_join_closed(&self, elems: &[Elem]) -> bool {
        let mut member = vec![false; self.size()];
        for &e in elems {
            member[e] = true;
        }
        member[self.bottom]
            && elems
                .iter()
                .all(|&a| elems.iter().all(|&b| member[self.join(a, b)]))
    }

    pub fn is_meet_closed(&self, elems: &[Elem]) -> bool {
        let mut member = vec![false; self.size()];
        for &e in elems {
            member[e] = true;
        }
        member[self.top]
            && elems
                .iter()
                .all(|&a| elems.iter().all(|&b| member[self.meet(a, b)]))
    }
}

/// A lattice of subsets of `{0, .., universe-1}` ordered by inclusion, with
/// the translation between sets and element indices.
#[derive(Clone, Debug)]
pub struct SetLattice {
    universe: usize,
    sets: Vec<PointSet>,
    index: HashMap<PointSet, Elem>,
    lattice: Arc<FiniteLattice>,
}

impl PartialEq for SetLattice {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.sets == other.sets
    }
}

impl Eq for SetLattice {}

impl SetLattice {
    /// Orders a family of sets by inclusion. Duplicates are dropped; sets are
    /// sorted by size, then by bit pattern, so `∅` (if present) comes first.
    pub fn from_family<I: IntoIterator<Item = PointSet>>(universe: usize, family: I) -> Result<Self> {
        if universe > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "point set",
                size: universe,
                limit: MAX_POINTS,
            });
        }
        let full = PointSet::full(universe);
        let mut sets: Vec<PointSet> = family.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| !s.is_subset(full)) {
            return Err(Error::Invalid(format!(
                "set {bad} is not contained in a universe of {universe} points"
            )));
        }
        sets.sort_by_key(|s| (s.len(), s.bits()));
        sets.dedup();
        let limit = max_elements();
        if sets.len() > limit {
            return Err(Error::TooLarge {
                what: "lattice",
                size: sets.len(),
                limit,
            });
        }
        let order = FinitePoset::from_fn(sets.len(), |a, b| sets[a].is_subset(sets[b]))?;
        let lattice = FiniteLattice::from_poset(order)?;
        let index = sets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        Ok(SetLattice {
            universe,
            sets,
            index,
            lattice: Arc::new(lattice),
        })
    }

    /// The Birkhoff lattice of down-sets of `order`; meet is intersection and
    /// join is union.
    pub fn down_sets(order: &FinitePoset) -> Result<Self> {
        let sets = order.down_sets(max_elements())?;
        Self::from_family(order.size(), sets)
    }

    /// All subsets of `{0, .., n-1}`.
    pub fn powerset(n: usize) -> Result<Self> {
        if n > MAX_POINTS || (n < usize::BITS as usize && (1usize << n) > max_elements()) {
            return Err(Error::TooLarge {
                what: "powerset lattice",
                size: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
                limit: max_elements(),
            });
        }
        Self::from_family(n, (0..1u64 << n).map(PointSet::from_bits))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn set(&self, e: Elem) -> PointSet {
        self.sets[e]
    }

    pub fn elem(&self, set: PointSet) -> Option<Elem> {
        self.index.get(&set).copied()
    }

    pub fn size(&self) -> usize {
        self.sets.len()
    }
}

/// Down-set lattice of `order`, as a bare lattice.
pub fn downset_lattice(order: &FinitePoset) -> Result<FiniteLattice> {
    Ok(SetLattice::down_sets(order)?.lattice().as_ref().clone())
}

/// Every naturally labelled poset on `n` points (`a < b` only when the
/// index of `a` is smaller). Each isomorphism class appears at least once.
pub fn natural_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    assert!(pairs.len() < 32, "natural_posets is meant for small n");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let rel = |a: usize, b: usize| -> bool {
            if a == b {
                return true;
            }
            if a > b {
                return false;
            }
            let k = pairs.iter().position(|&p| p == (a, b)).unwrap();
            mask & (1 << k) != 0
        };
        let transitive = (0..n).all(|a| {
            (a + 1..n).all(|b| !rel(a, b) || (b + 1..n).all(|c| !rel(b, c) || rel(a, c)))
        });
        if transitive {
            out.push(FinitePoset::from_fn(n, rel).expect("checked transitive"));
        }
    }
    out
}

/// Checks that every pair has a meet and a join and builds the tables.
pub fn validate_lattice(order: FinitePoset) -> Result<FiniteLattice> {
    FiniteLattice::from_poset(order)
}

/// Every permutation of `0..n`, as image tables.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Largest poset [`canonical_key`] accepts.
pub const MAX_CANONICAL_POINTS: usize = 8;

/// An isomorphism invariant that separates non-isomorphic posets: the least
/// relation matrix over all relabellings, packed into 64 bits.
pub fn canonical_key(order: &FinitePoset) -> u64 {
    let n = order.size();
    assert!(n <= MAX_CANONICAL_POINTS, "canonical_key is meant for small posets");
    permutations(n)
        .iter()
        .map(|p| {
            let mut bits = 0u64;
            for a in 0..n {
                for b in 0..n {
                    if order.leq(a, b) {
                        bits |= 1 << (p[a] * n + p[b]);
                    }
                }
            }
            bits
        })
        .min()
        .unwrap_or(0)
}

/// One representative per isomorphism class, keeping first occurrences.
pub fn up_to_isomorphism(orders: impl IntoIterator<Item = FinitePoset>) -> Vec<FinitePoset> {
    let mut seen = std::collections::HashSet::new();
    orders
        .into_iter()
        .filter(|o| seen.insert((o.size(), canonical_key(o))))
        .collect()
}

/// Every lattice with exactly `n` elements up to isomorphism (with
/// repetitions): bounded posets whose middle is naturally labelled.
pub fn lattices_of_size(n: usize) -> Vec<FiniteLattice> {
    match n {
        0 => Vec::new(),
        1 => vec![FiniteLattice::chain(1)],
        _ => natural_posets(n - 2)
            .into_iter()
            .filter_map(|middle| {
                let m = middle.size();
                let order = FinitePoset::from_fn(n, |a, b| {
                    a == b || a == 0 || b == n - 1 || (a > 0 && b > 0 && a <= m && b <= m && middle.leq(a - 1, b - 1))
                })
                .ok()?;
                FiniteLattice::from_poset(order).ok()
            })
            .collect(),
    }
}
