//! The condition calculus for a Galois connection between two frames, the
//! maps `π`, `F` and `ρ`, the quasi-orbit space, and per-instance checks of
//! the biconditionals that relate the conditions to openness of those maps.
//!
//! Throughout, `L_A` is the source frame, `L_B` the target, `i` the lower
//! adjoint (induction) and `r` the upper adjoint (restriction).

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{FixedPointSublattices, GaloisConnection, MonotoneMap};
use crate::lattice::{Elem, FiniteLattice, FinitePoset};
use crate::points::PointSet;
use crate::spectrum::{FiniteT0Space, PointMap, PrimeSpectrum};

/// A Galois connection between frames together with its fixed points, the
/// restricted and induced lattices, and the prime spaces of all four.
#[derive(Clone, Debug)]
pub struct InclusionData {
    gc: GaloisConnection,
    fixed: FixedPointSublattices,
    /// Element `k` is `fixed.restricted[k]`.
    restricted_lattice: Arc<FiniteLattice>,
    /// Element `k` is `fixed.induced[k]`.
    induced_lattice: Arc<FiniteLattice>,
    source_spectrum: PrimeSpectrum,
    target_spectrum: PrimeSpectrum,
    restricted_spectrum: PrimeSpectrum,
    induced_spectrum: PrimeSpectrum,
}

impl InclusionData {
    pub fn new(gc: GaloisConnection) -> Result<Self> {
        gc.source().require_frame()?;
        gc.target().require_frame()?;
        let report = gc.verify_properties();
        if let Some((name, _)) = report.items().into_iter().find(|(_, ok)| !ok) {
            return Err(Error::Invalid(format!(
                "Galois connection fails the general property check at {name}"
            )));
        }
        let fixed = gc.fixed_points();
        let restricted_lattice = Arc::new(gc.source().suborder(&fixed.restricted)?);
        let induced_lattice = Arc::new(gc.target().suborder(&fixed.induced)?);
        let source_spectrum = PrimeSpectrum::new(gc.source().clone())?;
        let target_spectrum = PrimeSpectrum::new(gc.target().clone())?;
        let restricted_spectrum = PrimeSpectrum::of_lattice(restricted_lattice.clone())?;
        let induced_spectrum = PrimeSpectrum::of_lattice(induced_lattice.clone())?;
        Ok(InclusionData {
            gc,
            fixed,
            restricted_lattice,
            induced_lattice,
            source_spectrum,
            target_spectrum,
            restricted_spectrum,
            induced_spectrum,
        })
    }

    pub fn from_lower(lower: MonotoneMap) -> Result<Self> {
        Self::new(GaloisConnection::from_lower(lower)?)
    }

    pub fn gc(&self) -> &GaloisConnection {
        &self.gc
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        self.gc.source()
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        self.gc.target()
    }

    pub fn fixed_points(&self) -> &FixedPointSublattices {
        &self.fixed
    }

    pub fn restricted(&self) -> &[Elem] {
        &self.fixed.restricted
    }

    pub fn induced(&self) -> &[Elem] {
        &self.fixed.induced
    }

    pub fn restricted_lattice(&self) -> &Arc<FiniteLattice> {
        &self.restricted_lattice
    }

    pub fn induced_lattice(&self) -> &Arc<FiniteLattice> {
        &self.induced_lattice
    }

    /// Prime space of `L_A`.
    pub fn source_spectrum(&self) -> &PrimeSpectrum {
        &self.source_spectrum
    }

    /// Prime space of `L_B`.
    pub fn target_spectrum(&self) -> &PrimeSpectrum {
        &self.target_spectrum
    }

    /// Prime space of the restricted lattice; its primes are indices into
    /// [`InclusionData::restricted`].
    pub fn restricted_spectrum(&self) -> &PrimeSpectrum {
        &self.restricted_spectrum
    }

    /// Prime space of the induced lattice; its primes are indices into
    /// [`InclusionData::induced`].
    pub fn induced_spectrum(&self) -> &PrimeSpectrum {
        &self.induced_spectrum
    }

    fn restricted_index(&self, x: Elem) -> Option<usize> {
        self.fixed.restricted.binary_search(&x).ok()
    }

    fn induced_index(&self, y: Elem) -> Option<usize> {
        self.fixed.induced.binary_search(&y).ok()
    }

    /// Point of the restricted prime space at an element of `L_A`, if that
    /// element is a restricted prime.
    fn restricted_point(&self, x: Elem) -> Option<usize> {
        self.restricted_index(x)
            .and_then(|k| self.restricted_spectrum.point_of(k))
    }

    fn induced_point(&self, y: Elem) -> Option<usize> {
        self.induced_index(y)
            .and_then(|k| self.induced_spectrum.point_of(k))
    }
}

/// Joins of restricted elements, including the empty join, are restricted.
pub fn check_jr(d: &InclusionData) -> bool {
    d.source().is_join_closed(d.restricted())
}

/// The insertion of the restricted lattice into `L_A`.
pub fn restricted_insertion(d: &InclusionData) -> MonotoneMap {
    let r = d.restricted();
    MonotoneMap::from_fn(d.restricted_lattice.clone(), d.source().clone(), |k| r[k])
        .expect("insertion is monotone")
}

/// `π(p)` = the largest restricted element below the prime `p`.
pub fn pi_map(d: &InclusionData) -> Result<PointMap> {
    if !check_jr(d) {
        return Err(Error::JRViolated);
    }
    let l = d.source();
    let values = d
        .source_spectrum
        .primes()
        .iter()
        .map(|&p| {
            let below = l.big_join(d.restricted().iter().copied().filter(|&x| l.leq(x, p)));
            d.restricted_point(below).ok_or_else(|| {
                Error::Invalid(format!("largest restricted element below prime {p} is not prime"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PointMap::new(
        d.source_spectrum.space().clone(),
        d.restricted_spectrum.space().clone(),
        values,
    )
}

/// `I ∧ r(i(J)) = r(i(I ∧ J))` for restricted `I` and all `J`.
pub fn check_c1(d: &InclusionData) -> bool {
    c1_counterexample(d).is_none()
}

pub fn c1_counterexample(d: &InclusionData) -> Option<(Elem, Elem)> {
    let l = d.source();
    d.restricted().iter().find_map(|&i| {
        l.elements()
            .find(|&j| l.meet(i, d.gc.closure(j)) != d.gc.closure(l.meet(i, j)))
            .map(|j| (i, j))
    })
}

/// Binary meets of induced elements are induced.
pub fn check_mif(d: &InclusionData) -> bool {
    let b = d.target();
    let induced = d.induced();
    induced.iter().all(|&x| {
        induced
            .iter()
            .all(|&y| d.induced_index(b.meet(x, y)).is_some())
    })
}

/// The top of `L_B` is induced, i.e. `i` preserves the top.
pub fn top_induced(d: &InclusionData) -> bool {
    d.induced_index(d.target().top()).is_some()
}

/// (MI)_f together with an induced top: the insertion of the induced
/// lattice preserves all finite meets, so it is a locale morphism.
pub fn induced_insertion_is_locale_morphism(d: &InclusionData) -> bool {
    check_mif(d) && top_induced(d)
}

/// Meets of arbitrary families of induced elements, the empty family
/// included, are induced. Computed as a fixpoint of meet-closure; on finite
/// lattices this is (MI)_f plus an induced top.
pub fn check_mi(d: &InclusionData) -> bool {
    let mi = mi_witness(d).is_none();
    debug_assert_eq!(mi, induced_insertion_is_locale_morphism(d));
    mi
}

/// A family of induced elements whose meet is not induced. The empty family
/// is returned when the top is not induced.
pub fn mi_witness(d: &InclusionData) -> Option<Vec<Elem>> {
    let b = d.target();
    let induced = d.induced();
    if d.induced_index(b.top()).is_none() {
        return Some(Vec::new());
    }
    // grow the meet-closure; each new element remembers a generating family
    let mut closure: Vec<(Elem, Vec<Elem>)> = induced.iter().map(|&y| (y, vec![y])).collect();
    let mut member = vec![false; b.size()];
    for &y in induced {
        member[y] = true;
    }
    let mut k = 0;
    while k < closure.len() {
        for g in 0..induced.len() {
            let m = b.meet(closure[k].0, induced[g]);
            if !member[m] {
                let mut family = closure[k].1.clone();
                family.push(induced[g]);
                if d.induced_index(m).is_none() {
                    family.sort_unstable();
                    family.dedup();
                    return Some(family);
                }
                member[m] = true;
                closure.push((m, family));
            }
        }
        k += 1;
    }
    None
}

fn f_values(d: &InclusionData) -> Result<Vec<Elem>> {
    if let Some(witness) = mi_witness(d) {
        return Err(Error::MIViolated { witness });
    }
    let b = d.target();
    Ok(b.elements()
        .map(|j| b.big_meet(d.induced().iter().copied().filter(|&y| b.leq(j, y))))
        .collect())
}

/// `F(J)` = the least induced element above `J`, as a map from `L_B` into
/// the induced lattice.
pub fn f_map(d: &InclusionData) -> Result<MonotoneMap> {
    let values = f_values(d)?;
    let induced = d.induced_lattice.clone();
    MonotoneMap::from_fn(d.target().clone(), induced, |j| {
        d.induced_index(values[j]).expect("F lands in induced elements")
    })
}

/// `I ∧ F(J) = F(I ∧ J)` for induced `I` and all `J`.
pub fn check_c2(d: &InclusionData) -> Result<bool> {
    Ok(c2_counterexample(d)?.is_none())
}

pub fn c2_counterexample(d: &InclusionData) -> Result<Option<(Elem, Elem)>> {
    let f = f_values(d)?;
    let b = d.target();
    Ok(d.induced().iter().find_map(|&i| {
        b.elements()
            .find(|&j| b.meet(i, f[j]) != f[b.meet(i, j)])
            .map(|j| (i, j))
    }))
}

/// The prime space of `L_A` divided by the fibers of `π`.
#[derive(Clone, Debug)]
pub struct QuasiOrbitSpace {
    pub base: FiniteT0Space,
    /// Classes as sets of base points, ordered by their least point.
    pub classes: Vec<PointSet>,
    /// `class_of[p]` is the class containing base point `p`.
    pub class_of: Vec<usize>,
    pub quotient: FiniteT0Space,
    /// The injective map from classes to the restricted prime space induced
    /// by `π`.
    pub comparison: PointMap,
}

impl QuasiOrbitSpace {
    /// The quotient map from the base onto the classes.
    pub fn quotient_map(&self) -> PointMap {
        PointMap::new(self.base.clone(), self.quotient.clone(), self.class_of.clone())
            .expect("quotient map is continuous")
    }

    /// Whether the quotient opens are exactly the sets of classes whose
    /// union is open in the base.
    pub fn has_quotient_topology(&self) -> bool {
        let k = self.classes.len();
        (0..1u64 << k).all(|bits| {
            let s = PointSet::from_bits(bits);
            let union = s
                .iter()
                .fold(PointSet::EMPTY, |acc, c| acc | self.classes[c]);
            self.quotient.is_open(s) == self.base.is_open(union)
        })
    }
}

pub fn quasi_orbit_space(d: &InclusionData) -> Result<QuasiOrbitSpace> {
    let pi = pi_map(d)?;
    let base = pi.source().clone();
    let mut class_of = vec![usize::MAX; base.len()];
    let mut classes: Vec<PointSet> = Vec::new();
    let mut images: Vec<usize> = Vec::new();
    for p in 0..base.len() {
        let v = pi.apply(p);
        match images.iter().position(|&w| w == v) {
            Some(c) => {
                class_of[p] = c;
                classes[c] = classes[c].with(p);
            }
            None => {
                class_of[p] = classes.len();
                classes.push(PointSet::singleton(p));
                images.push(v);
            }
        }
    }
    // specialization on classes: transitive closure of the image of the base order
    let k = classes.len();
    let mut rel = vec![vec![false; k]; k];
    for p in 0..base.len() {
        for q in 0..base.len() {
            if base.order().leq(p, q) {
                rel[class_of[p]][class_of[q]] = true;
            }
        }
    }
    for m in 0..k {
        for a in 0..k {
            if rel[a][m] {
                for b in 0..k {
                    if rel[m][b] {
                        rel[a][b] = true;
                    }
                }
            }
        }
    }
    let order = FinitePoset::from_fn(k, |a, b| rel[a][b])?;
    let quotient = FiniteT0Space::from_order(order)?;
    let comparison = PointMap::new(quotient.clone(), pi.target().clone(), images)?;
    Ok(QuasiOrbitSpace {
        base,
        classes,
        class_of,
        quotient,
        comparison,
    })
}

/// `ρ` from the prime space of `L_B` to the quasi-orbit space.
#[derive(Clone, Debug)]
pub struct QuasiOrbitMap {
    pub space: QuasiOrbitSpace,
    pub map: PointMap,
}

impl QuasiOrbitMap {
    pub fn is_open(&self) -> bool {
        self.map.is_open_map()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_surjective()
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.map.is_homeomorphism()
    }
}

/// `ρ(q)` = the class whose `π`-image is `r(q)`. Needs (JR), (C1), (MI)_f
/// and an induced top; without the last, some `r(q)` is the top of `L_A`.
pub fn quasi_orbit_map(d: &InclusionData) -> Result<QuasiOrbitMap> {
    if !check_jr(d) {
        return Err(Error::ConditionViolated("JR"));
    }
    if !check_c1(d) {
        return Err(Error::ConditionViolated("C1"));
    }
    if !check_mif(d) {
        return Err(Error::ConditionViolated("MI_f"));
    }
    if !top_induced(d) {
        return Err(Error::ConditionViolated("induced top"));
    }
    let space = quasi_orbit_space(d)?;
    let comparison = space.comparison.values();
    let values = d
        .target_spectrum
        .primes()
        .iter()
        .map(|&q| {
            let point = d.restricted_point(d.gc.restrict(q)).ok_or_else(|| {
                Error::Invalid(format!("restriction of prime {q} is not a restricted prime"))
            })?;
            comparison.iter().position(|&c| c == point).ok_or_else(|| {
                Error::Invalid(format!("restriction of prime {q} is outside the image of π"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = PointMap::new(
        d.target_spectrum.space().clone(),
        space.quotient.clone(),
        values,
    )?;
    Ok(QuasiOrbitMap { space, map })
}

/// `r` on the primes of `L_B`, with values in the restricted prime space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRestriction {
    /// Every `r(q)` is prime in the restricted lattice.
    pub well_defined: bool,
    /// Points of the restricted prime space, when well defined.
    pub values: Option<Vec<usize>>,
    pub open: bool,
    pub surjective: bool,
    pub injective: bool,
}

impl PrimeRestriction {
    pub fn is_open_surjection(&self) -> bool {
        self.well_defined && self.open && self.surjective
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.is_open_surjection() && self.injective
    }
}

pub fn prime_restriction(d: &InclusionData) -> PrimeRestriction {
    match prime_restriction_map(d) {
        Some(map) => PrimeRestriction {
            well_defined: true,
            open: map.is_open_map(),
            surjective: map.is_surjective(),
            injective: map.is_injective(),
            values: Some(map.values().to_vec()),
        },
        None => PrimeRestriction {
            well_defined: false,
            values: None,
            open: false,
            surjective: false,
            injective: false,
        },
    }
}

pub fn prime_restriction_map(d: &InclusionData) -> Option<PointMap> {
    let values: Option<Vec<usize>> = d
        .target_spectrum
        .primes()
        .iter()
        .map(|&q| d.restricted_point(d.gc.restrict(q)))
        .collect();
    let values = values?;
    // r is monotone, hence continuous for the specialization orders
    PointMap::new(
        d.target_spectrum.space().clone(),
        d.restricted_spectrum.space().clone(),
        values,
    )
    .ok()
}

/// When the induced insertion is a locale morphism, `q ↦ i(r(q))` sends
/// primes of `L_B` to primes of the induced lattice. `None` otherwise.
pub fn interior_on_primes(d: &InclusionData) -> Option<bool> {
    if !induced_insertion_is_locale_morphism(d) {
        return None;
    }
    Some(
        d.target_spectrum
            .primes()
            .iter()
            .all(|&q| d.induced_point(d.gc.interior(q)).is_some()),
    )
}

/// `r(q)` equals the image of `i(r(q))` under the isomorphism from induced
/// to restricted elements, at every prime where both sides are primes.
pub fn diagram_coherent(d: &InclusionData) -> bool {
    d.target_spectrum.primes().iter().all(|&q| {
        let direct = d.restricted_point(d.gc.restrict(q));
        let via_induced = d.induced_point(d.gc.interior(q)).and_then(|k| {
            let y = d.induced()[d.induced_spectrum.primes()[k]];
            d.restricted_point(d.gc.restrict(y))
        });
        match (direct, via_induced) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PiOpenReport {
    pub c1: bool,
    pub pi_open: bool,
    pub pi_surjective: bool,
    /// Under (JR): `C1 ⇔ (π open ∧ π surjective)`; the comparison map is a
    /// homeomorphism whenever C1 holds.
    pub equivalence_verified: bool,
}

pub fn pi_open_check(d: &InclusionData) -> Result<PiOpenReport> {
    let pi = pi_map(d)?;
    let c1 = check_c1(d);
    let pi_open = pi.is_open_map();
    let pi_surjective = pi.is_surjective();
    let mut equivalence_verified = c1 == (pi_open && pi_surjective);
    if c1 {
        equivalence_verified &= quasi_orbit_space(d)?.comparison.is_homeomorphism();
    }
    Ok(PiOpenReport {
        c1,
        pi_open,
        pi_surjective,
        equivalence_verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionOpenReport {
    pub mi: bool,
    /// `None` when (MI) fails and `F` is undefined.
    pub c2: Option<bool>,
    pub restriction: PrimeRestriction,
    /// `(MI ∧ C2) ⇔ r on primes is a well-defined open surjection`.
    pub equivalence_verified: bool,
}

pub fn restriction_open_check(d: &InclusionData) -> RestrictionOpenReport {
    let mi = check_mi(d);
    let c2 = if mi { check_c2(d).ok() } else { None };
    let restriction = prime_restriction(d);
    let lhs = mi && c2 == Some(true);
    RestrictionOpenReport {
        mi,
        c2,
        equivalence_verified: lhs == restriction.is_open_surjection(),
        restriction,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RhoOpenReport {
    pub mi_and_c2: bool,
    pub rho_open: bool,
    pub rho_surjective: bool,
    pub equivalence_verified: bool,
}

/// Under (JR), (C1) and (MI)_f: `ρ` open and surjective iff (MI) and (C2).
pub fn rho_open_check(d: &InclusionData) -> Result<RhoOpenReport> {
    let rho = quasi_orbit_map(d)?;
    let mi_and_c2 = check_mi(d) && check_c2(d)?;
    let (rho_open, rho_surjective) = (rho.is_open(), rho.is_surjective());
    Ok(RhoOpenReport {
        mi_and_c2,
        rho_open,
        rho_surjective,
        equivalence_verified: mi_and_c2 == (rho_open && rho_surjective),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RhoHomeomorphismReport {
    pub rho_defined: bool,
    pub rho_homeomorphism: bool,
    pub separates: bool,
    pub equivalence_verified: bool,
}

/// Under (JR) and (C1): `ρ` exists and is a homeomorphism iff `r` is
/// injective.
pub fn rho_homeomorphism_check(d: &InclusionData) -> Result<RhoHomeomorphismReport> {
    if !check_jr(d) {
        return Err(Error::ConditionViolated("JR"));
    }
    if !check_c1(d) {
        return Err(Error::ConditionViolated("C1"));
    }
    let rho = quasi_orbit_map(d).ok();
    let rho_defined = rho.is_some();
    let rho_homeomorphism = rho.is_some_and(|r| r.is_homeomorphism());
    let separates = d.gc.separates();
    Ok(RhoHomeomorphismReport {
        rho_defined,
        rho_homeomorphism,
        separates,
        equivalence_verified: rho_homeomorphism == separates,
    })
}

/// Every applicable condition at once; `None` marks an undefined value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub jr: bool,
    pub c1: Option<bool>,
    pub mif: bool,
    pub top_induced: bool,
    pub mi: bool,
    pub c2: Option<bool>,
    pub separates: bool,
    pub detects: bool,
    pub restricted: Vec<Elem>,
    pub induced: Vec<Elem>,
}

pub fn condition_report(d: &InclusionData) -> ConditionReport {
    let jr = check_jr(d);
    let mi = check_mi(d);
    ConditionReport {
        jr,
        c1: jr.then(|| check_c1(d)),
        mif: check_mif(d),
        top_induced: top_induced(d),
        mi,
        c2: if mi { check_c2(d).ok() } else { None },
        separates: d.gc.separates(),
        detects: d.gc.detects(),
        restricted: d.restricted().to_vec(),
        induced: d.induced().to_vec(),
    }
}
