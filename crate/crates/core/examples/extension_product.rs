//! The path-group extension under Landau flux: associativity, unit, and
//! independence of the representing path.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torus_gerbe::forms::PLPath;
use torus_gerbe::magnetic::{
    check_associativity, check_unit, random_periodic_gauge, random_sym_element,
    sym_equivalence_check, sym_product, LineData, SymElement,
};
use torus_gerbe::polytrig::{q, U1Function, Q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = LineData::landau(1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    let origin = vec![q(0, 1), q(0, 1)];
    let u = vec![q(1, 2), q(0, 1)];
    let v = vec![q(0, 1), q(1, 2)];
    let a = SymElement::new(PLPath::straight(&origin, &u), U1Function::one(2))?;
    let b = SymElement::new(PLPath::straight(&origin, &v), U1Function::one(2))?;
    println!("ab gauge = {}", sym_product(&a, &b, &l)?.gauge.exponent());
    println!("ba gauge = {}", sym_product(&b, &a, &l)?.gauge.exponent());

    let mut assoc = 0;
    let mut unit = 0;
    for _ in 0..50 {
        let (x, y, z) = (
            random_sym_element(&mut rng, 2, 2),
            random_sym_element(&mut rng, 2, 2),
            random_sym_element(&mut rng, 2, 2),
        );
        assoc += check_associativity(&x, &y, &z, &l)?.passed as usize;
        unit += check_unit(&x, &l)?.passed as usize;
    }
    println!("associative on {assoc}/50 triples, unital on {unit}/50 elements");

    let gamma = PLPath::straight(&origin, &[q(3, 4), q(1, 4)]);
    let mid: Vec<Q> = vec![q(0, 1), q(1, 1)];
    let alpha = PLPath::new(vec![origin.clone(), mid, vec![q(3, 4), q(1, 4)]])?;
    let partners = vec![random_sym_element(&mut rng, 2, 2)];
    let rep = sym_equivalence_check(
        &gamma,
        &alpha,
        &random_periodic_gauge(&mut rng, 2),
        &partners,
        &l,
    )?;
    println!(
        "equivalent representatives give the same products: {}",
        rep.passed
    );
    Ok(())
}
