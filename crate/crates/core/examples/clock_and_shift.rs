//! The finite model: N×N matrices of magnetic translations on the
//! (1/N)-lattice, checked against the geometric 2-cocycle.

use num_complex::Complex64;
use torus_gerbe::hilbert::{translation_matrix, verify_all_pairs, ThetaBasis, COCYCLE_TOLERANCE};
use torus_gerbe::polytrig::q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let clock = translation_matrix(n, &[q(1, n), q(0, 1)])?;
    let shift = translation_matrix(n, &[q(0, 1), q(1, n)])?;
    println!(
        "P(e1/3) =\n{}",
        clock
            .matrix
            .map(|z| Complex64::new((z.re * 1e6).round() / 1e6, (z.im * 1e6).round() / 1e6))
    );
    println!("P(e2/3) =\n{}", shift.matrix);
    let commutator = clock
        .mul(&shift)
        .mul(&clock.adjoint())
        .mul(&shift.adjoint());
    println!(
        "group commutator is scalar {:?}",
        commutator.as_scalar(1e-12)
    );

    let basis = ThetaBasis::new(n)?;
    println!(
        "basis sections quasi-periodic: {}",
        basis.validate(2 * n).passed
    );
    for n in 1..=6 {
        let rep = verify_all_pairs(n, COCYCLE_TOLERANCE)?;
        println!(
            "N={n}: {} admissible pairs, all within {COCYCLE_TOLERANCE:e}: {}",
            rep.items.len(),
            rep.passed
        );
    }
    Ok(())
}
