//! The constant-H gerbe on T³: translations compose only up to the
//! associator ω, which satisfies the pentagon relation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torus_gerbe::cohomology::sample_tuples;
use torus_gerbe::gerbes::{omega_3cocycle, omega_cocycle_check, pentagon_check, GerbeData};
use torus_gerbe::polytrig::qi;
use torus_gerbe::polytrig::scalar::qvec_int as e;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in [1, 2] {
        let g = GerbeData::constant_h(qi(m));
        let (e1, e2, e3) = (e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[0, 0, 1]));
        println!(
            "m={m}: omega(e1,e2,e3) exponent = {}",
            omega_3cocycle(&g, &e1, &e2, &e3)?.exponent()
        );
        println!(
            "       omega(e2,e1,e3) exponent = {}",
            omega_3cocycle(&g, &e2, &e1, &e3)?.exponent()
        );

        let triples = sample_tuples(&mut rng, 3, 3, 100, &[1, 2, 3, 5]);
        let ok = triples
            .iter()
            .map(|t| pentagon_check(&g, &t[0], &t[1], &t[2]))
            .collect::<Result<Vec<_>, _>>()?;
        println!(
            "       pentagon on {} triples: {}",
            ok.len(),
            ok.iter().all(|i| i.passed)
        );

        let quadruples = sample_tuples(&mut rng, 3, 4, 100, &[1, 2, 3, 5]);
        println!(
            "       delta omega = 1 and omega = delta Pi: {}",
            omega_cocycle_check(&g, &quadruples).passed
        );
    }
    Ok(())
}
