//! Finite matrices for magnetic translations on the flux-`N` bundle over
//! `T²`, and truncated multiplication operators.
//!
//! The section space used here is spanned by Zak combs: `ψ_b` is supported
//! on the grid `(1/N)ℤ²`, equals 1 at `(j/N, k/N)` when `k ≡ b (mod N)` and
//! vanishes elsewhere. These are quasi-periodic for the Landau cocycle, and
//! `P(v)ψ = s_A(v)·ψ(· − v)` maps their span to itself for `v ∈ (1/N)ℤ²`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::magnetic::{lattice_box, translation_section, two_cocycle, LineData, MagneticError};
use crate::polytrig::scalar::{format_qvec, qvec_add};
use crate::polytrig::{q, PolyTrig, Scalar, U1Function, Q};
use crate::report::{CheckItem, CheckReport};

pub const UNITARITY_TOLERANCE: f64 = 1e-12;
pub const COCYCLE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HilbertError {
    #[error("flux must be a positive integer, got {0}")]
    BadFlux(i64),
    #[error("{v} is not on the (1/{n})-lattice in the plane")]
    NotAdmissible { v: String, n: i64 },
    #[error("multiplier does not descend to the torus: {0}")]
    NotPeriodic(String),
    #[error("multiplier exponent must be real: {0}")]
    NotReal(String),
    #[error(transparent)]
    Magnetic(#[from] MagneticError),
}

/// A square complex matrix. `exact` records whether the entries come from
/// closed formulas rather than a discrete transform.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub matrix: DMatrix<Complex64>,
    pub exact: bool,
}

impl OperatorMatrix {
    pub fn identity(n: usize) -> Self {
        OperatorMatrix {
            matrix: DMatrix::identity(n, n),
            exact: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn mul(&self, other: &Self) -> Self {
        OperatorMatrix {
            matrix: &self.matrix * &other.matrix,
            exact: self.exact && other.exact,
        }
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            matrix: self.matrix.adjoint(),
            exact: self.exact,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        OperatorMatrix {
            matrix: self.matrix.map(|z| z * c),
            exact: self.exact,
        }
    }

    /// Largest entry of `|self − other|`.
    pub fn distance(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `‖M M† − 1‖_∞`.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul(&self.adjoint())
            .distance(&Self::identity(self.dim()))
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() <= UNITARITY_TOLERANCE
    }

    /// If the matrix is `λ·1` (to `tol`), the scalar `λ`.
    pub fn as_scalar(&self, tol: f64) -> Option<Complex64> {
        let lambda = self.matrix[(0, 0)];
        (self.distance(&Self::identity(self.dim()).scale(lambda)) <= tol).then_some(lambda)
    }
}

fn lattice_index(v: &Q, n: i64) -> Option<i64> {
    let scaled = v * Q::from_integer(n.into());
    scaled
        .is_integer()
        .then(|| scaled.to_integer().to_i64())
        .flatten()
}

fn admissible(v: &[Q], n: i64) -> Result<(i64, i64), HilbertError> {
    let err = || HilbertError::NotAdmissible {
        v: format_qvec(v),
        n,
    };
    if v.len() != 2 {
        return Err(err());
    }
    Ok((
        lattice_index(&v[0], n).ok_or_else(err)?,
        lattice_index(&v[1], n).ok_or_else(err)?,
    ))
}

fn phase(theta: &PolyTrig, point: &[f64]) -> Complex64 {
    let t = theta.eval_f64(point);
    Complex64::from_polar((-t.im).exp(), t.re)
}

/// The Zak-comb basis of the flux-`N` section space.
#[derive(Clone, Debug)]
pub struct ThetaBasis {
    n: i64,
    line: LineData,
}

impl ThetaBasis {
    pub fn new(n: i64) -> Result<Self, HilbertError> {
        if n < 1 {
            return Err(HilbertError::BadFlux(n));
        }
        Ok(ThetaBasis {
            n,
            line: LineData::landau(n),
        })
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn line(&self) -> &LineData {
        &self.line
    }

    /// `ψ_b` at the grid point `(j/N, k/N)`.
    pub fn value(&self, b: usize, _j: i64, k: i64) -> Complex64 {
        if k.rem_euclid(self.n) as usize == b {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::zero()
        }
    }

    fn point(&self, j: i64, k: i64) -> Vec<f64> {
        vec![j as f64 / self.n as f64, k as f64 / self.n as f64]
    }

    /// `ψ_b(p + e) = f_e(p) ψ_b(p)` for both generators at every grid point
    /// with `|j|, |k| ≤ window`.
    pub fn validate(&self, window: i64) -> CheckReport {
        let f: Vec<PolyTrig> = [[1, 0], [0, 1]].iter().map(|e| self.line.phi(e)).collect();
        let mut worst = 0.0f64;
        for b in 0..self.dim() {
            for jk in lattice_box(2, window) {
                let (j, k) = (jk[0], jk[1]);
                let here = self.value(b, j, k);
                for (a, fa) in f.iter().enumerate() {
                    let (dj, dk) = if a == 0 { (self.n, 0) } else { (0, self.n) };
                    let there = self.value(b, j + dj, k + dk);
                    worst = worst.max((there - phase(fa, &self.point(j, k)) * here).norm());
                }
            }
        }
        let item = CheckItem::new(
            format!("{} comb sections, window {window}", self.dim()),
            worst <= COCYCLE_TOLERANCE,
            format!("{worst:e}"),
        );
        CheckReport::new("section basis", "psi(x+i) = f_i(x) psi(x)", vec![item])
    }

    /// `‖P(v)ψ_β − Σ_b M(v)_{bβ} ψ_b‖` on the grid window, for every `β`,
    /// with `P(v)` applied through the geometric section `s_A(v)`.
    pub fn check_matrix(&self, v: &[Q], window: i64) -> Result<CheckItem, HilbertError> {
        let (q1, q2) = admissible(v, self.n)?;
        let theta = translation_section(&self.line, v)?.into_exponent();
        let m = translation_matrix(self.n, v)?;
        let mut worst = 0.0f64;
        for beta in 0..self.dim() {
            for jk in lattice_box(2, window) {
                let (j, k) = (jk[0], jk[1]);
                let moved = phase(&theta, &self.point(j, k)) * self.value(beta, j - q1, k - q2);
                let expanded: Complex64 = (0..self.dim())
                    .map(|b| m.matrix[(b, beta)] * self.value(b, j, k))
                    .sum();
                worst = worst.max((moved - expanded).norm());
            }
        }
        Ok(CheckItem::new(
            format!("P({}) preserves the span", format_qvec(v)),
            worst <= COCYCLE_TOLERANCE,
            format!("{worst:e}"),
        ))
    }
}

/// `M(v)_{bβ} = e^{iθ(0, b/N)} δ_{β, b − N v_2 mod N}` with `θ` the exponent
/// of `s_A(v)` for the flux-`N` Landau bundle.
pub fn translation_matrix(n: i64, v: &[Q]) -> Result<OperatorMatrix, HilbertError> {
    if n < 1 {
        return Err(HilbertError::BadFlux(n));
    }
    let (_, q2) = admissible(v, n)?;
    let theta = translation_section(&LineData::landau(n), v)?.into_exponent();
    let size = n as usize;
    let mut m = DMatrix::zeros(size, size);
    for b in 0..size {
        let beta = (b as i64 - q2).rem_euclid(n) as usize;
        m[(b, beta)] = phase(&theta, &[0.0, b as f64 / n as f64]);
    }
    Ok(OperatorMatrix {
        matrix: m,
        exact: false,
    })
}

/// `c(v, v')` for the flux-`N` Landau bundle as a complex number.
pub fn geometric_cocycle(n: i64, v: &[Q], v_prime: &[Q]) -> Result<Complex64, HilbertError> {
    let c = two_cocycle(&LineData::landau(n), v, v_prime)?;
    Ok(phase(c.exponent(), &[0.0, 0.0]))
}

/// `‖P(v)P(v') − c·P(v+v')‖_∞` for a given scalar `c`.
pub fn cocycle_residual(n: i64, v: &[Q], v_prime: &[Q], c: Complex64) -> Result<f64, HilbertError> {
    let lhs = translation_matrix(n, v)?.mul(&translation_matrix(n, v_prime)?);
    let rhs = translation_matrix(n, &qvec_add(v, v_prime))?.scale(c);
    Ok(lhs.distance(&rhs))
}

/// `P(v)P(v') = c(v,v') P(v+v')` with `c` from the curvature, plus unitarity
/// of the three matrices.
pub fn verify_operator_cocycle(
    n: i64,
    v: &[Q],
    v_prime: &[Q],
) -> Result<CheckReport, HilbertError> {
    verify_operator_cocycle_with_tolerance(n, v, v_prime, COCYCLE_TOLERANCE)
}

/// [`verify_operator_cocycle`] with a caller-chosen bound on the cocycle
/// residual.
pub fn verify_operator_cocycle_with_tolerance(
    n: i64,
    v: &[Q],
    v_prime: &[Q],
    tol: f64,
) -> Result<CheckReport, HilbertError> {
    let label = format!("v={} v'={}", format_qvec(v), format_qvec(v_prime));
    let c = geometric_cocycle(n, v, v_prime)?;
    let residual = cocycle_residual(n, v, v_prime, c)?;
    let mut items = vec![CheckItem::new(
        label,
        residual < tol,
        format!("{residual:e}"),
    )];
    for w in [v.to_vec(), v_prime.to_vec(), qvec_add(v, v_prime)] {
        let defect = translation_matrix(n, &w)?.unitarity_defect();
        items.push(CheckItem::new(
            format!("P({}) unitary", format_qvec(&w)),
            defect <= UNITARITY_TOLERANCE,
            format!("{defect:e}"),
        ));
    }
    Ok(CheckReport::new(
        "operator cocycle",
        "P(v) P(v') = c(v,v') P(v+v')",
        items,
    ))
}

/// Every pair with entries in `{0, 1/N, …, (N−1)/N}`.
pub fn admissible_pairs(n: i64) -> Vec<(Vec<Q>, Vec<Q>)> {
    let pts: Vec<Vec<Q>> = lattice_box(2, n)
        .into_iter()
        .filter(|p| p.iter().all(|&x| (0..n).contains(&x)))
        .map(|p| vec![q(p[0], n), q(p[1], n)])
        .collect();
    let mut out = Vec::with_capacity(pts.len() * pts.len());
    for a in &pts {
        for b in &pts {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// [`verify_operator_cocycle`] on all admissible pairs, merged.
pub fn verify_all_pairs(n: i64, tol: f64) -> Result<CheckReport, HilbertError> {
    let reports = admissible_pairs(n)
        .par_iter()
        .map(|(v, w)| verify_operator_cocycle_with_tolerance(n, v, w, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let items = reports.into_iter().flat_map(|r| r.items).collect();
    Ok(CheckReport::new(
        format!("operator cocycle N={n}"),
        "P(v) P(v') = c(v,v') P(v+v')",
        items,
    ))
}

/// `P(v)` and `P(v')` commute exactly when `c(v,v') = c(v',v)`; returns
/// whether both sides of that equivalence agree.
pub fn commutation_consistent(n: i64, v: &[Q], v_prime: &[Q]) -> Result<bool, HilbertError> {
    let (a, b) = (translation_matrix(n, v)?, translation_matrix(n, v_prime)?);
    let commute = a.mul(&b).distance(&b.mul(&a)) < COCYCLE_TOLERANCE;
    let ratio = geometric_cocycle(n, v, v_prime)? / geometric_cocycle(n, v_prime, v)?;
    Ok(commute == ((ratio - 1.0).norm() < COCYCLE_TOLERANCE))
}

/// `θ = 2π m·x + c` with integer `m`: returns `(m, c)`.
fn as_character(theta: &PolyTrig) -> Option<(Vec<i64>, Complex64)> {
    if theta.max_degree() > 1
        || theta
            .terms()
            .any(|(m, _)| m.freq.iter().any(|f| !f.is_zero()))
    {
        return None;
    }
    let d = theta.dim();
    let mut freq = Vec::with_capacity(d);
    for a in 0..d {
        let slope = theta
            .partial(a)
            .constant_term()
            .unwrap_or_else(Scalar::zero);
        let k = match &slope {
            Scalar::Exact { re, im } if im.is_zero() => {
                if re.is_zero() {
                    Q::zero()
                } else {
                    re.as_pi_multiple()? / Q::from_integer(2.into())
                }
            }
            _ => return None,
        };
        freq.push(if k.is_integer() {
            k.to_integer().to_i64()?
        } else {
            return None;
        });
    }
    let c = theta.eval_f64(&vec![0.0; d]);
    Some((freq, Complex64::from_polar((-c.im).exp(), c.re)))
}

/// Multiplication by `g` on Fourier modes `k ∈ {−K..K}^d`, taken cyclically
/// modulo `L = 2K + 1` so the truncation stays unitary. Entries are
/// `ĝ(k − l)` with `ĝ` the `L`-point discrete transform of `g`; for a
/// character `e^{i(2π m·x + c)}` with `|m|_∞ ≤ K` this is the exact Fourier
/// coefficient and the matrix is a mode shift.
pub fn multiplication_operator(
    g: &U1Function,
    cutoff: usize,
) -> Result<OperatorMatrix, HilbertError> {
    if !g.is_periodic() {
        return Err(HilbertError::NotPeriodic(g.exponent().to_string()));
    }
    if !g.exponent().is_real() {
        return Err(HilbertError::NotReal(g.exponent().to_string()));
    }
    let d = g.dim();
    let l = 2 * cutoff as i64 + 1;
    let modes = lattice_box(d, cutoff as i64);
    let size = modes.len();
    let wrap = |k: &[i64]| -> usize {
        k.iter().fold(0usize, |acc, &x| {
            acc * l as usize + x.rem_euclid(l) as usize
        })
    };
    let (coeffs, exact): (Vec<Complex64>, bool) = match as_character(g.exponent()) {
        Some((m, c)) => {
            let mut table = vec![Complex64::zero(); size];
            table[wrap(&m)] = c;
            (table, true)
        }
        None => {
            let samples: Vec<(Vec<i64>, Complex64)> = lattice_box(d, cutoff as i64)
                .into_par_iter()
                .map(|j| {
                    let x: Vec<f64> = j.iter().map(|&t| t as f64 / l as f64).collect();
                    let value = phase(g.exponent(), &x);
                    (j, value)
                })
                .collect();
            let norm = (size as f64).recip();
            let table = (0..size)
                .into_par_iter()
                .map(|idx| {
                    let m = &modes[idx];
                    let sum: Complex64 = samples
                        .iter()
                        .map(|(j, value)| {
                            let dot: i64 = m.iter().zip(j).map(|(a, b)| a * b).sum();
                            value
                                * Complex64::from_polar(
                                    1.0,
                                    -2.0 * std::f64::consts::PI * dot as f64 / l as f64,
                                )
                        })
                        .sum();
                    (wrap(m), sum * norm)
                })
                .collect::<Vec<_>>();
            let mut ordered = vec![Complex64::zero(); size];
            for (i, c) in table {
                ordered[i] = c;
            }
            (ordered, false)
        }
    };
    let matrix = DMatrix::from_fn(size, size, |r, s| {
        let diff: Vec<i64> = modes[r].iter().zip(&modes[s]).map(|(a, b)| a - b).collect();
        coeffs[wrap(&diff)]
    });
    Ok(OperatorMatrix { matrix, exact })
}

/// Index of a mode in [`multiplication_operator`]'s ordering.
pub fn mode_index(mode: &[i64], cutoff: usize) -> usize {
    let l = 2 * cutoff + 1;
    mode.iter()
        .fold(0usize, |acc, &x| acc * l + (x + cutoff as i64) as usize)
}

/// `(k, |P(v)|, arg P(v))` rows for every admissible `v`: one line per
/// nonzero entry. Used for plotting.
pub fn phase_table(n: i64) -> Result<Vec<(String, usize, usize, f64)>, HilbertError> {
    let mut rows = Vec::new();
    for p in lattice_box(2, n)
        .into_iter()
        .filter(|p| p.iter().all(|&x| (0..n).contains(&x)))
    {
        let v = vec![q(p[0], n), q(p[1], n)];
        let m = translation_matrix(n, &v)?;
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                let z = m.matrix[(r, c)];
                if z.norm() > 0.5 {
                    rows.push((format_qvec(&v), r, c, z.arg()));
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytrig::parse_expr;

    fn v(a: (i64, i64), b: (i64, i64)) -> Vec<Q> {
        vec![q(a.0, a.1), q(b.0, b.1)]
    }

    #[test]
    fn basis_is_quasi_periodic_and_invariant() {
        for n in 1..=4 {
            let basis = ThetaBasis::new(n).unwrap();
            assert_eq!(basis.dim(), n as usize);
            assert!(basis.validate(2 * n).passed);
            for (a, b) in admissible_pairs(n).into_iter().take(8) {
                assert!(basis.check_matrix(&a, n).unwrap().passed);
                assert!(basis.check_matrix(&b, n).unwrap().passed);
            }
        }
        assert!(ThetaBasis::new(0).is_err());
    }

    #[test]
    fn two_by_two_commutator() {
        let a = translation_matrix(2, &v((1, 2), (0, 1))).unwrap();
        let b = translation_matrix(2, &v((0, 1), (1, 2))).unwrap();
        // Brute force 2×2 products.
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        assert!(ab.distance(&ba.scale(Complex64::new(-1.0, 0.0))) < 1e-12);
        assert!(
            translation_matrix(2, &v((0, 1), (0, 1)))
                .unwrap()
                .distance(&OperatorMatrix::identity(2))
                < 1e-15
        );
    }

    #[test]
    fn full_periods_are_scalar() {
        for n in 1..=5 {
            for w in [v((1, 1), (0, 1)), v((0, 1), (1, 1)), v((2, 1), (-1, 1))] {
                let m = translation_matrix(n, &w).unwrap();
                assert!(m.as_scalar(1e-12).is_some());
                // Also as an N-th power of the elementary matrix.
                let step = translation_matrix(
                    n,
                    &w.iter()
                        .map(|x| x / Q::from_integer(n.into()))
                        .collect::<Vec<_>>(),
                )
                .unwrap();
                let mut power = OperatorMatrix::identity(n as usize);
                for _ in 0..n {
                    power = power.mul(&step);
                }
                assert!(power.as_scalar(1e-12).is_some());
            }
        }
    }

    #[test]
    fn exhaustive_small_flux() {
        for n in 1..=4 {
            let rep = verify_all_pairs(n, COCYCLE_TOLERANCE).unwrap();
            assert!(rep.passed, "{:?}", rep.failures().next());
            for (a, b) in admissible_pairs(n) {
                assert!(commutation_consistent(n, &a, &b).unwrap());
            }
        }
        let zero = v((0, 1), (0, 1));
        assert_eq!(
            cocycle_residual(3, &v((1, 3), (2, 3)), &zero, Complex64::new(1.0, 0.0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn wrong_sign_cocycle_fails() {
        let (a, b) = (v((1, 2), (0, 1)), v((0, 1), (1, 2)));
        let c = geometric_cocycle(2, &a, &b).unwrap();
        assert!(cocycle_residual(2, &a, &b, c).unwrap() < 1e-12);
        assert!(cocycle_residual(2, &a, &b, c.conj()).unwrap() > 1.0);
    }

    #[test]
    fn non_lattice_vector_is_rejected() {
        assert!(matches!(
            translation_matrix(3, &v((1, 2), (0, 1))),
            Err(HilbertError::NotAdmissible { .. })
        ));
    }

    #[test]
    fn multiplication_operators() {
        let one = multiplication_operator(&U1Function::one(2), 2).unwrap();
        assert!(one.exact);
        assert!(one.distance(&OperatorMatrix::identity(25)) == 0.0);
        let g = U1Function::new(parse_expr("2*pi*x1", 2).unwrap());
        let m = multiplication_operator(&g, 2).unwrap();
        assert!(m.exact && m.is_unitary());
        // e^{2πix_1} sends mode (a, b) to (a + 1, b).
        assert_eq!(
            m.matrix[(mode_index(&[1, 0], 2), mode_index(&[0, 0], 2))],
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            m.matrix[(mode_index(&[1, -1], 2), mode_index(&[0, -1], 2))],
            Complex64::new(1.0, 0.0)
        );
        let wavy =
            U1Function::new(parse_expr("cos(2*pi*x1) + 1/2*sin(2*pi*(x1 - x2))", 2).unwrap());
        let w = multiplication_operator(&wavy, 4).unwrap();
        assert!(!w.exact && w.is_unitary());
        // Low modes approximate the Bessel coefficient J_0(1) of e^{i cos}.
        let plain =
            multiplication_operator(&U1Function::new(parse_expr("cos(2*pi*x1)", 2).unwrap()), 6)
                .unwrap();
        assert!(
            (plain.matrix[(0, 0)] - Complex64::new(0.765_197_686_557_966_6, 0.0)).norm() < 1e-9
        );
        assert!(
            multiplication_operator(&U1Function::new(parse_expr("pi*x1", 2).unwrap()), 2).is_err()
        );
    }
}
