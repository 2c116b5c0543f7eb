//! Inhomogeneous group cochains on the translation group ℝ^d with values in
//! U(1)-valued functions, written additively through exponents.
//!
//! The group acts by `(ρ_u g)(x) = g(x − u)`, and
//!
//! ```text
//! (δc)(v_1..v_{n+1}) = ρ_{v_1} c(v_2..v_{n+1})
//!                    + Σ_{i=1}^{n} (−1)^i c(.., v_i + v_{i+1}, ..)
//!                    + (−1)^{n+1} c(v_1..v_n)
//! ```

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::polytrig::scalar::{format_qvec, qvec_add, qvec_neg};
use crate::polytrig::{q, PolyTrig, U1Function, Q};
use crate::report::{CheckItem, CheckReport};

type Evaluator = dyn Fn(&[Vec<Q>]) -> PolyTrig + Send + Sync;

/// An `n`-cochain: tuples of translation vectors to exponents of U(1)-valued
/// functions of `x`.
#[derive(Clone)]
pub struct GroupCochain {
    degree: usize,
    dim: usize,
    eval: Arc<Evaluator>,
}

impl fmt::Debug for GroupCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupCochain(degree {}, dim {})", self.degree, self.dim)
    }
}

impl GroupCochain {
    pub fn new(
        degree: usize,
        dim: usize,
        eval: impl Fn(&[Vec<Q>]) -> PolyTrig + Send + Sync + 'static,
    ) -> Self {
        GroupCochain {
            degree,
            dim,
            eval: Arc::new(eval),
        }
    }

    /// The cochain with value 1 everywhere.
    pub fn trivial(degree: usize, dim: usize) -> Self {
        Self::new(degree, dim, move |_| PolyTrig::zero(dim))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exponent at a tuple of `degree` vectors.
    pub fn exponent(&self, args: &[Vec<Q>]) -> PolyTrig {
        assert_eq!(
            args.len(),
            self.degree,
            "cochain evaluated on a tuple of the wrong length"
        );
        (self.eval)(args)
    }

    pub fn eval(&self, args: &[Vec<Q>]) -> U1Function {
        U1Function::new(self.exponent(args))
    }

    /// Pointwise product (sum of exponents).
    pub fn mul(&self, other: &GroupCochain) -> GroupCochain {
        assert_eq!(self.degree, other.degree);
        let (a, b) = (self.clone(), other.clone());
        Self::new(self.degree, self.dim, move |v| {
            a.exponent(v).add(&b.exponent(v))
        })
    }

    pub fn inv(&self) -> GroupCochain {
        let a = self.clone();
        Self::new(self.degree, self.dim, move |v| a.exponent(v).neg())
    }

    pub fn coboundary(&self) -> GroupCochain {
        let c = self.clone();
        let n = self.degree;
        Self::new(n + 1, self.dim, move |v| {
            // ρ_{v_1} c(v_2, …): evaluate at x − v_1.
            let mut acc = c.exponent(&v[1..]).shift(&qvec_neg(&v[0]));
            for i in 0..n {
                let mut merged: Vec<Vec<Q>> = v[..i].to_vec();
                merged.push(qvec_add(&v[i], &v[i + 1]));
                merged.extend_from_slice(&v[i + 2..]);
                let term = c.exponent(&merged);
                acc = if i % 2 == 0 {
                    acc.sub(&term)
                } else {
                    acc.add(&term)
                };
            }
            let last = c.exponent(&v[..n]);
            if n.is_multiple_of(2) {
                acc.sub(&last)
            } else {
                acc.add(&last)
            }
        })
    }

    /// Whether `c(…, 0, …) = 1` on the given tuples with one entry zeroed.
    pub fn is_normalized_on(&self, samples: &[Vec<Vec<Q>>]) -> bool {
        samples.iter().all(|s| {
            (0..s.len()).all(|k| {
                let mut t = s.clone();
                t[k] = vec![Q::from_integer(0.into()); self.dim];
                U1Function::new(self.exponent(&t)).is_one()
            })
        })
    }
}

fn label(sample: &[Vec<Q>]) -> String {
    sample
        .iter()
        .map(|v| format_qvec(v))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `δc = 1` on every sample (tuples of length `degree + 1`).
pub fn is_cocycle(c: &GroupCochain, samples: &[Vec<Vec<Q>>]) -> CheckReport {
    let dc = c.coboundary();
    let items = samples
        .par_iter()
        .map(|s| CheckItem::phase(label(s), &dc.exponent(s)))
        .collect();
    CheckReport::new(format!("{}-cocycle", c.degree), "delta c = 1", items)
}

/// `c·(δb)^{-1} = 1` on every sample.
pub fn is_coboundary_of(
    c: &GroupCochain,
    b: &GroupCochain,
    samples: &[Vec<Vec<Q>>],
) -> CheckReport {
    assert_eq!(b.degree + 1, c.degree, "b must have degree one less than c");
    let db = b.coboundary();
    let items = samples
        .par_iter()
        .map(|s| CheckItem::phase(label(s), &c.exponent(s).sub(&db.exponent(s))))
        .collect();
    CheckReport::new("coboundary", "c = delta b", items)
}

/// A random rational vector with entries `n/den`, `|n| ≤ span·den`, and
/// `den` drawn from `denominators`.
pub fn random_vector<R: Rng>(rng: &mut R, d: usize, span: i64, denominators: &[i64]) -> Vec<Q> {
    (0..d)
        .map(|_| {
            let den = denominators[rng.gen_range(0..denominators.len())];
            q(rng.gen_range(-span * den..=span * den), den)
        })
        .collect()
}

/// `count` random tuples of `len` vectors, followed by degenerate tuples (a
/// zero entry) and collinear ones.
pub fn sample_tuples<R: Rng>(
    rng: &mut R,
    d: usize,
    len: usize,
    count: usize,
    denominators: &[i64],
) -> Vec<Vec<Vec<Q>>> {
    let mut out: Vec<Vec<Vec<Q>>> = (0..count)
        .map(|_| {
            (0..len)
                .map(|_| random_vector(rng, d, 1, denominators))
                .collect()
        })
        .collect();
    if len > 0 {
        let base: Vec<Vec<Q>> = (0..len)
            .map(|_| random_vector(rng, d, 1, denominators))
            .collect();
        for k in 0..len {
            let mut t = base.clone();
            t[k] = vec![Q::from_integer(0.into()); d];
            out.push(t);
        }
        let dir = random_vector(rng, d, 1, denominators);
        out.push(
            (0..len)
                .map(|k| dir.iter().map(|x| x * q(k as i64 + 1, 2)).collect())
                .collect(),
        );
    }
    out
}
