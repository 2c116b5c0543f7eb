//! Transgression of the constant-H gerbe to path space, and the
//! Lie-derivative split of the flux through a 2-simplex.

use torus_gerbe::forms::PLPath;
use torus_gerbe::gerbes::{
    lie_decomposition_check, transgress, transgression_curvature_check, GerbeData,
};
use torus_gerbe::polytrig::{q, qi};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = GerbeData::constant_h(qi(1));
    let zero = vec![qi(0); 3];
    let (e1, e2, e3) = (
        vec![qi(1), qi(0), qi(0)],
        vec![qi(0), qi(1), qi(0)],
        vec![qi(0), qi(0), qi(1)],
    );
    let path = PLPath::straight(&zero, &e3);
    println!(
        "int over 0->e3 of i_e2 i_e1 H = {}",
        transgress(&g, &path, &e1, &e2)?
    );

    let square = PLPath::new(vec![
        zero.clone(),
        vec![q(1, 2), qi(0), qi(0)],
        vec![q(1, 2), q(1, 3), qi(0)],
        vec![qi(0), q(1, 3), qi(0)],
        zero.clone(),
    ])?;
    println!(
        "curvature of the transgressed connection: {}",
        transgression_curvature_check(&g, &square, &e3, &e1)?.passed
    );

    let (v, w) = (
        vec![q(1, 2), q(1, 3), q(1, 5)],
        vec![q(-1, 4), q(2, 3), q(1, 2)],
    );
    println!(
        "Lie-derivative split: {}",
        lie_decomposition_check(&g, &w, &v, &e1)?.passed
    );
    Ok(())
}
