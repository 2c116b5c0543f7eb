//! Magnetic translations for the flux-N line bundle on T².

use torus_gerbe::magnetic::{
    check_connection, check_line_cocycle, check_section_membership, lattice_pairs,
    translation_section, two_cocycle, verify_projective_relation, LineData,
};
use torus_gerbe::polytrig::q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=3 {
        let l = LineData::landau(n);
        let cocycle = check_line_cocycle(&l, &lattice_pairs(2, 2));
        let (connection, b) = check_connection(&l)?;
        println!(
            "N={n}: cocycle {} ({} pairs), connection {}, B = {b}",
            cocycle.passed,
            cocycle.items.len(),
            connection.passed
        );

        let v = vec![q(1, 2), q(1, 3)];
        let w = vec![q(-1, 4), q(2, 5)];
        println!(
            "  s(v) exponent      = {}",
            translation_section(&l, &v)?.exponent()
        );
        println!(
            "  membership         = {}",
            check_section_membership(&l, &v)?.passed
        );
        println!(
            "  c(v, w) exponent   = {}",
            two_cocycle(&l, &v, &w)?.exponent()
        );
        println!(
            "  projective relation = {}",
            verify_projective_relation(&l, &v, &w)?.passed
        );
    }
    Ok(())
}
