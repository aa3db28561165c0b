//! The acceptance criteria, one PASS/FAIL line each. Runs without the test
//! harness so the lines print under plain `cargo test`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use stone_core::conformance::{sweep_theorem, SuiteTag, SweepConfig};
use stone_core::fd::fixtures;
use stone_core::graph::{fixtures as graphs, pair_prime_space};
use stone_core::quasiorbit::{check_jr, check_mif, mi_witness, prime_restriction};
use stone_core::spectrum::primes;
use stone_core::{PointSet, SetLattice};

fn ps<const N: usize>(points: [usize; N]) -> PointSet {
    PointSet::from_points(points)
}

/// `[[1,1]]`: restriction loses the join of the two halves.
fn split_row() -> Result<(), String> {
    let m = fixtures::split_row();
    let (b1, b2) = (ps([0]), ps([1]));
    check(m.restrict(b1) == PointSet::EMPTY, "restrict {b1} = ∅")?;
    check(m.restrict(b2) == PointSet::EMPTY, "restrict {b2} = ∅")?;
    check(m.restrict(b1 | b2) == ps([0]), "restrict {b1,b2} = {a}")?;
    check(m.restrict(b1 | b2) != m.restrict(b1) | m.restrict(b2), "join not preserved")?;
    let gc = m.galois_connection().map_err(|e| e.to_string())?;
    check(!gc.upper().preserves_joins(), "upper map is not join-preserving")
}

/// `[[1],[1]]`: induction loses the meet of the two summands.
fn merge_column() -> Result<(), String> {
    let m = fixtures::merge_column();
    let (a1, a2) = (ps([0]), ps([1]));
    check(m.induce(a1) == ps([0]), "induce {a1} = {b}")?;
    check(m.induce(a2) == ps([0]), "induce {a2} = {b}")?;
    check(m.induce(PointSet::EMPTY) == PointSet::EMPTY, "induce ∅ = ∅")?;
    check(m.induce(a1 & a2) != m.induce(a1) & m.induce(a2), "meet not preserved")?;
    let gc = m.galois_connection().map_err(|e| e.to_string())?;
    check(!gc.lower().preserves_meets(), "lower map is not meet-preserving")
}

fn three_into_two() -> Result<(), String> {
    let m = fixtures::three_into_two();
    let d = m.to_inclusion_data().map_err(|e| e.to_string())?;
    let a = m.a_lattice().map_err(|e| e.to_string())?;
    let mut restricted: Vec<PointSet> = d.restricted().iter().map(|&x| a.set(x)).collect();
    restricted.sort_by_key(|s| (s.len(), s.bits()));
    check(
        restricted == [PointSet::EMPTY, ps([0]), ps([1]), ps([0, 1, 2])],
        "restricted = {∅, {a1}, {a2}, full}",
    )?;
    check(!check_jr(&d), "JR fails")?;
    check(d.gc().separates(), "separates")?;
    let space = d.restricted_spectrum().space();
    check(space.len() == 2, "two restricted primes")?;
    check(space.order().covers().is_empty(), "restricted primes are discrete")?;
    check(d.target_spectrum().space().order().covers().is_empty(), "target primes are discrete")?;
    check(prime_restriction(&d).is_homeomorphism(), "restriction on primes is a homeomorphism")
}

fn two_into_four() -> Result<(), String> {
    let m = fixtures::two_into_four();
    let d = m.to_inclusion_data().map_err(|e| e.to_string())?;
    check(d.restricted().len() == 4, "all 4 ideals restricted")?;
    let symmetric: Vec<PointSet> = (0..4).map(PointSet::from_bits).filter(|&s| m.is_symmetric(s)).collect();
    check(symmetric == [PointSet::EMPTY, ps([0, 1])], "symmetric = {∅, full}")?;
    check(!check_mif(&d), "MI_f fails")?;
    let witness = mi_witness(&d).ok_or("no witness")?;
    let b = m.b_lattice().map_err(|e| e.to_string())?;
    let meet = witness.iter().fold(PointSet::full(4), |acc, &y| acc & b.set(y));
    check(meet == ps([2, 3]), "witness meet is {b3,b4}")?;
    let induced: Vec<PointSet> = d.induced().iter().map(|&y| b.set(y)).collect();
    check(!induced.contains(&meet), "the meet is not induced")?;
    check(
        induced.contains(&ps([0, 2, 3])) && induced.contains(&ps([1, 2, 3])),
        "the meet is of two induced sets",
    )
}

fn fork() -> Result<(), String> {
    let g = graphs::fork();
    let pl = g.j_pairs(g.j_x()).map_err(|e| e.to_string())?;
    let spectrum = pair_prime_space(&pl).map_err(|e| e.to_string())?;
    // two matrix summands: 4 ideals, 2 primitive ideals
    let oracle = SetLattice::powerset(2).map_err(|e| e.to_string())?;
    let oracle_primes = primes(oracle.lattice()).map_err(|e| e.to_string())?;
    check(pl.len() == 4 && pl.len() == oracle.size(), "4 pairs")?;
    check(
        spectrum.primes().len() == 2 && oracle_primes.primes().len() == 2,
        "2 prime points",
    )
}

fn sweep(tag: SuiteTag, budget: usize, min_instances: usize) -> Result<(), String> {
    match sweep_theorem(tag, SweepConfig { seed: 0, budget }) {
        Ok(r) if r.instances >= min_instances && r.checked > 0 => Ok(()),
        Ok(r) => Err(format!("only {} instances, {} checked", r.instances, r.checked)),
        Err(e) => Err(format!(
            "{} violations; {}",
            e.report.violations,
            serde_json::to_string(&e.report.counterexample).unwrap()
        )),
    }
}

fn check(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Result<(), String>>);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("split-row restriction fixture", secs(1), Box::new(split_row)),
        ("merge-column induction fixture", secs(1), Box::new(merge_column)),
        ("three-into-two separation fixture", secs(1), Box::new(three_into_two)),
        ("two-into-four meet fixture", secs(1), Box::new(two_into_four)),
        ("open-surjection exhaustive sweep", secs(60), Box::new(|| sweep(SuiteTag::OpenSurjection, 0, 1))),
        ("pi-open fuzz, 1000 instances", secs(120), Box::new(|| sweep(SuiteTag::PiOpen, 1000, 1000))),
        ("restriction-open fuzz, 1000 instances", secs(120), Box::new(|| sweep(SuiteTag::RestrictionOpen, 1000, 1000))),
        ("Galois-connection properties", secs(120), Box::new(|| sweep(SuiteTag::GaloisProperties, 1000, 1004))),
        (
            "symmetric matrices up to 3x3",
            secs(30),
            Box::new(|| sweep(SuiteTag::SymmetricRestricted, 0, 1).and_then(|()| sweep(SuiteTag::SymmetricConditions, 0, 1))),
        ),
        ("orbit closures, order at most 6", secs(60), Box::new(|| sweep(SuiteTag::OrbitClosures, 0, 1))),
        ("fork graph pairs", secs(1), Box::new(fork)),
        ("Stone round trips", secs(120), Box::new(|| sweep(SuiteTag::StoneDuality, 0, 1))),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (k, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| check(elapsed < *bound, &format!("exceeded {bound:?}")));
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.2?})", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} ({elapsed:.2?}): {why}", k + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
