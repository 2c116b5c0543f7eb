//! Randomized exact Stokes checks, and one pair worked by hand.

use torus_gerbe::forms::{stokes_selftest, AffineSimplex, Form};
use torus_gerbe::polytrig::{parse_expr, q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Form::one_form(vec![
        parse_expr("x1*x2^2", 2)?,
        parse_expr("sin(2*pi*x1)", 2)?,
    ]);
    let s = AffineSimplex::fixed(
        &[q(1, 4), q(-1, 2)],
        vec![vec![q(1, 2), q(0, 1)], vec![q(1, 4), q(3, 4)]],
    );
    println!("int dw      = {}", s.integrate(&w.d())?);
    println!("int_bdry w  = {}", s.boundary()?.integrate(&w, 0)?);

    let start = std::time::Instant::now();
    let report = stokes_selftest(42, 200, &[2, 3], &[1, 2, 3])?;
    println!(
        "{} random pairs, all exact and equal: {} ({:.2?})",
        report.items.len(),
        report.passed,
        start.elapsed()
    );
    Ok(())
}
