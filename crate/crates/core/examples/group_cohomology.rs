//! Cochains on ℝ^d with values in U(1)-valued functions: coboundaries, the
//! Landau 2-cocycle as δ of the translation sections, and a detected
//! non-cocycle.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torus_gerbe::cohomology::{is_coboundary_of, is_cocycle, sample_tuples, GroupCochain};
use torus_gerbe::magnetic::{translation_section, two_cocycle, LineData};
use torus_gerbe::polytrig::{PolyTrig, Scalar};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let l = Arc::new(LineData::landau(2));
    let (l1, l2) = (l.clone(), l.clone());
    let s = GroupCochain::new(1, 2, move |v| {
        translation_section(&l1, &v[0]).unwrap().into_exponent()
    });
    let c = GroupCochain::new(2, 2, move |v| {
        two_cocycle(&l2, &v[0], &v[1]).unwrap().into_exponent()
    });

    let pairs = sample_tuples(&mut rng, 2, 2, 100, &[1, 2, 3, 4]);
    let triples = sample_tuples(&mut rng, 2, 3, 100, &[1, 2, 3, 4]);
    println!(
        "c = delta s on {} pairs: {}",
        pairs.len(),
        is_coboundary_of(&c, &s, &pairs).passed
    );
    println!(
        "delta c = 1 on {} triples: {}",
        triples.len(),
        is_cocycle(&c, &triples).passed
    );
    println!(
        "delta delta s = 1: {}",
        is_cocycle(&s.coboundary(), &triples).passed
    );

    // (v, w) ↦ v_1 w_1 w_2 is not a 2-cocycle.
    let bad = GroupCochain::new(2, 2, |v| {
        PolyTrig::constant(2, Scalar::rational(&v[0][0] * &v[1][0] * &v[1][1]))
    });
    let rep = is_cocycle(&bad, &triples);
    println!(
        "non-cocycle detected: {} ({} of {} tuples fail)",
        !rep.passed,
        rep.failures().count(),
        rep.items.len()
    );
}
