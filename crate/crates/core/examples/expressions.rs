//! Parse, combine, differentiate and integrate exact expressions.

use torus_gerbe::polytrig::{parse_expr, qi};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_expr("x1^2*cos(2*pi*x2) + pi*x1*x2 - 1/3", 2)?;
    let g = parse_expr("sin(2*pi*x2) + 2", 2)?;
    println!("f        = {f}");
    println!("f*g      = {}", f.mul(&g));
    println!("df/dx1   = {}", f.partial(0));
    println!("df/dx2   = {}", f.partial(1));
    println!("f(x+e2)  = {}", f.shift(&[qi(0), qi(1)]));

    // Exact integral of x1^2 over [0, 1] along x1 at fixed x2.
    let h = parse_expr("x1^2", 1)?;
    let anti = h.antiderivative(0);
    let value = &anti.eval_exact(&[qi(1)]) - &anti.eval_exact(&[qi(0)]);
    println!("int_0^1 x^2 dx = {value}");
    Ok(())
}
