use std::fmt::Write as _;

use stone_core::document::Instance;
use stone_core::graph::pair_prime_space;
use stone_core::quasiorbit::{pi_map, prime_restriction, quasi_orbit_space, InclusionData};
use stone_core::spectrum::FiniteT0Space;
use stone_core::Result;

use crate::report::prime_label;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One cluster per space: nodes are points, edges are covers of the
/// specialization order.
fn cluster(out: &mut String, id: &str, title: &str, space: &FiniteT0Space, label: impl Fn(usize) -> String) {
    writeln!(out, "  subgraph cluster_{id} {{").unwrap();
    writeln!(out, "    label={};", quote(title)).unwrap();
    for p in 0..space.len() {
        writeln!(out, "    {id}{p} [label={}];", quote(&label(p))).unwrap();
    }
    for (p, q) in space.order().covers() {
        writeln!(out, "    {id}{p} -> {id}{q};").unwrap();
    }
    writeln!(out, "  }}").unwrap();
}

fn connection(out: &mut String, instance: &Instance, d: &InclusionData) {
    let source = d.source_spectrum();
    let target = d.target_spectrum();
    let restricted = d.restricted_spectrum();
    cluster(out, "a", "primes of the source", source.space(), |k| {
        prime_label(instance, true, source.primes()[k])
    });
    cluster(out, "b", "primes of the target", target.space(), |k| {
        prime_label(instance, false, target.primes()[k])
    });
    cluster(out, "p", "restricted primes", restricted.space(), |k| {
        instance.source_label(d.restricted()[restricted.primes()[k]])
    });
    if let Ok(q) = quasi_orbit_space(d) {
        cluster(out, "q", "quasi-orbits", &q.quotient, |c| {
            let members: Vec<String> = q.classes[c]
                .iter()
                .map(|k| prime_label(instance, true, source.primes()[k]))
                .collect();
            format!("[{}]", members.join(" "))
        });
        for (k, &c) in q.class_of.iter().enumerate() {
            writeln!(out, "  a{k} -> q{c} [style=dashed];").unwrap();
        }
        for (c, &p) in q.comparison.values().iter().enumerate() {
            writeln!(out, "  q{c} -> p{p} [color=blue, label=\"rho\"];").unwrap();
        }
    } else if let Ok(pi) = pi_map(d) {
        for (k, &p) in pi.values().iter().enumerate() {
            writeln!(out, "  a{k} -> p{p} [color=gray, label=\"pi\"];").unwrap();
        }
    }
    if let Some(values) = prime_restriction(d).values {
        for (k, &p) in values.iter().enumerate() {
            writeln!(out, "  b{k} -> p{p} [color=red, label=\"r\"];").unwrap();
        }
    }
}

pub fn render(instance: &Instance) -> Result<String> {
    let mut out = String::from("digraph spectrum {\n  rankdir=BT;\n");
    match instance {
        Instance::Graph { graph, j } => {
            let pl = graph.j_pairs(*j)?;
            let spectrum = pair_prime_space(&pl)?;
            cluster(&mut out, "g", "primes of the pair lattice", spectrum.space(), |k| {
                let (i, ip) = pl.pairs()[spectrum.primes()[k]];
                format!("({i},{ip})")
            });
        }
        _ => {
            let d = instance.inclusion_data()?.expect("non-graph instances carry a connection");
            connection(&mut out, instance, &d);
        }
    }
    out.push_str("}\n");
    Ok(out)
}
