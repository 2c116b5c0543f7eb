//! Integer periods of the curvature, and rejection of half-integer flux.

use torus_gerbe::gerbes::{check_gerbe_cocycle, flux_class, lattice_triples, GerbeData};
use torus_gerbe::magnetic::{chern_numbers, LineData};
use torus_gerbe::polytrig::{parse_expr, q, qi};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=3 {
        println!(
            "Landau N={n}: first Chern numbers {:?}",
            chern_numbers(&LineData::landau(n))?
        );
    }
    for m in [qi(1), qi(2), qi(-3)] {
        println!(
            "constant H, m={m}: flux class {:?}",
            flux_class(&GerbeData::constant_h(m.clone()))?.faces
        );
    }
    let wavy = GerbeData::planar(2, parse_expr("cos(2*pi*x1)*sin(2*pi*x2)", 2)?)?;
    println!(
        "planar gerbe: {:?} (no 3-faces in two dimensions)",
        flux_class(&wavy)?.faces
    );

    let half = GerbeData::constant_h(q(1, 2));
    match flux_class(&half) {
        Ok(c) => println!("unexpected: {c:?}"),
        Err(e) => println!("m=1/2 rejected: {e}"),
    }
    let cocycle = check_gerbe_cocycle(&half, &lattice_triples(3, 1));
    let first = cocycle
        .failures()
        .next()
        .map(|i| format!("{} -> {}", i.label, i.residue));
    println!(
        "m=1/2 cocycle fails: {} ({})",
        !cocycle.passed,
        first.unwrap_or_default()
    );
    Ok(())
}
