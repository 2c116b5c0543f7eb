//! Randomized Stokes checks `∫_Δ dω = ∫_{∂Δ} ω` with exact coefficients.
//!
//! Vertices and edges are multiples of 1/4 and frequencies are integers, so
//! every trigonometric value met during integration is a quarter turn and
//! stays exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::polytrig::{q, PolyTrig, Scalar, Q};
use crate::report::{CheckItem, CheckReport};

use super::form::index_tuples;
use super::{AffineSimplex, Form, FormError};

fn quarter<R: Rng>(rng: &mut R) -> Q {
    q(rng.gen_range(-4..=4), 4)
}

/// A random exact coefficient: up to three terms, each a monomial of degree
/// ≤ 2, possibly times `cos`/`sin` of an integer frequency, possibly with a
/// factor of π.
pub fn random_coefficient<R: Rng>(rng: &mut R, d: usize) -> PolyTrig {
    let mut f = PolyTrig::zero(d);
    for _ in 0..rng.gen_range(1..=3) {
        let powers: Vec<u32> = (0..d)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    rng.gen_range(1..=2)
                } else {
                    0
                }
            })
            .collect();
        let coeff = q(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let c = if rng.gen_bool(0.3) {
            Scalar::pi_multiple(coeff)
        } else {
            Scalar::rational(coeff)
        };
        let mono = PolyTrig::monomial(d, powers, c);
        let term = match rng.gen_range(0..3) {
            0 => mono,
            k => {
                let freq: Vec<Q> = (0..d)
                    .map(|_| Q::from_integer(rng.gen_range(-1..=1).into()))
                    .collect();
                let wave = if k == 1 {
                    PolyTrig::cos_wave(d, freq, Scalar::one())
                } else {
                    PolyTrig::sin_wave(d, freq, Scalar::one())
                };
                mono.mul(&wave)
            }
        };
        f = f.add(&term);
    }
    f
}

/// A random form of the given degree with [`random_coefficient`] entries.
pub fn random_form<R: Rng>(rng: &mut R, d: usize, degree: usize) -> Form {
    let mut comps = Vec::new();
    for idx in index_tuples(d, degree) {
        if rng.gen_bool(0.7) {
            comps.push((idx, random_coefficient(rng, d)));
        }
    }
    Form::from_components(d, degree, comps).expect("indices are in range")
}

/// A `k`-simplex with quarter-rational first vertex and edges.
pub fn random_simplex<R: Rng>(rng: &mut R, d: usize, k: usize) -> AffineSimplex {
    let point: Vec<Q> = (0..d).map(|_| quarter(rng)).collect();
    let edges = (0..k)
        .map(|_| (0..d).map(|_| quarter(rng)).collect())
        .collect();
    AffineSimplex::fixed(&point, edges)
}

/// `∫_Δ dω − ∫_{∂Δ} ω` for one pair; both sides must be exact.
pub fn stokes_residual(
    form: &Form,
    simplex: &AffineSimplex,
) -> Result<(PolyTrig, bool), FormError> {
    let lhs = simplex.integrate(&form.d())?;
    let rhs = simplex.boundary()?.integrate(form, 0)?;
    let exact = lhs.is_exact() && rhs.is_exact();
    Ok((lhs.sub(&rhs), exact))
}

/// `samples` random pairs for each simplex dimension `k` in `dims_k` and each
/// ambient dimension in `ambient`; `ω` has degree `k − 1`.
pub fn stokes_selftest(
    seed: u64,
    samples: usize,
    ambient: &[usize],
    dims_k: &[usize],
) -> Result<CheckReport, FormError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for &d in ambient {
        for &k in dims_k {
            for n in 0..samples {
                let form = random_form(&mut rng, d, k - 1);
                let simplex = random_simplex(&mut rng, d, k);
                cases.push((format!("d={d} k={k} #{n}"), form, simplex));
            }
        }
    }
    let items = cases
        .par_iter()
        .map(|(label, form, simplex)| {
            let (diff, exact) = stokes_residual(form, simplex)?;
            let passed = exact && diff.is_zero();
            let residue = if passed {
                "0".to_string()
            } else if !exact {
                format!("inexact: {diff}")
            } else {
                diff.to_string()
            };
            Ok(CheckItem::new(label.clone(), passed, residue))
        })
        .collect::<Result<Vec<_>, FormError>>()?;
    Ok(CheckReport::new(
        "stokes",
        "integral over simplex of d omega = integral over boundary of omega",
        items,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_is_exact() {
        let rep = stokes_selftest(1, 5, &[2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(rep.items.len(), 30);
        assert!(rep.passed, "{:?}", rep.failures().next());
    }

    #[test]
    fn wrong_boundary_sign_is_caught() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut caught = false;
        for _ in 0..10 {
            let form = random_form(&mut rng, 2, 1);
            let s = random_simplex(&mut rng, 2, 2);
            let lhs = s.integrate(&form.d()).unwrap();
            let rhs = s.boundary().unwrap().integrate(&form, 0).unwrap();
            if !lhs.is_zero() {
                caught |= !lhs.add(&rhs).is_zero();
            }
        }
        assert!(caught);
    }
}
