use num_traits::Zero;
use rayon::prelude::*;

use crate::polytrig::scalar::{qvec_add, qvec_neg};
use crate::polytrig::{AffineMap, PolyTrig, Scalar, Q};

use super::form::det;
use super::{Form, FormError};

/// Oriented affine simplex with vertices `V_0, V_j = V_{j−1} + e_j`,
/// parametrized by `V_0 + Σ t_j e_j` over `1 ≥ t_1 ≥ … ≥ t_k ≥ 0`.
///
/// `V_0` is an affine function of parameter variables (usually the symbolic
/// base point `x`), so integrals come back as [`PolyTrig`]s in those
/// parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSimplex {
    base: AffineMap,
    edges: Vec<Vec<Q>>,
    sign: i64,
}

impl AffineSimplex {
    pub fn new(base: AffineMap, edges: Vec<Vec<Q>>) -> Self {
        debug_assert!(edges.iter().all(|e| e.len() == base.out_dim()));
        AffineSimplex {
            base,
            edges,
            sign: 1,
        }
    }

    /// First vertex `x + offset` with symbolic `x`.
    pub fn symbolic(offset: &[Q], edges: Vec<Vec<Q>>) -> Self {
        Self::new(AffineMap::translation(offset), edges)
    }

    /// First vertex at a fixed point.
    pub fn fixed(point: &[Q], edges: Vec<Vec<Q>>) -> Self {
        Self::new(
            AffineMap::constant(point.iter().cloned().map(Scalar::rational).collect(), 0),
            edges,
        )
    }

    /// `Δ¹(x;v)`: the segment from `x − v` to `x`.
    pub fn delta1(v: &[Q]) -> Self {
        Self::symbolic(&qvec_neg(v), vec![v.to_vec()])
    }

    /// `Δ²(x;v',v)`: vertices `x − v − v'`, `x − v`, `x`.
    pub fn delta2(v_prime: &[Q], v: &[Q]) -> Self {
        Self::symbolic(
            &qvec_neg(&qvec_add(v, v_prime)),
            vec![v_prime.to_vec(), v.to_vec()],
        )
    }

    /// `Δ³(x;w,v,u)`: vertices `x − u − v − w`, `x − u − v`, `x − u`, `x`.
    pub fn delta3(w: &[Q], v: &[Q], u: &[Q]) -> Self {
        let total = qvec_add(&qvec_add(u, v), w);
        Self::symbolic(&qvec_neg(&total), vec![w.to_vec(), v.to_vec(), u.to_vec()])
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.out_dim()
    }

    pub fn param_dim(&self) -> usize {
        self.base.in_dim()
    }

    pub fn edges(&self) -> &[Vec<Q>] {
        &self.edges
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn reversed(&self) -> Self {
        AffineSimplex {
            sign: -self.sign,
            ..self.clone()
        }
    }

    /// The same simplex moved by `v`.
    pub fn translate(&self, v: &[Q]) -> Self {
        let mut base = self.base.clone();
        for (a, x) in v.iter().enumerate() {
            let row = base.row(a).to_vec();
            let off = base.offset(a) + &Scalar::rational(x.clone());
            base.set_row(a, row, off);
        }
        AffineSimplex {
            base,
            ..self.clone()
        }
    }

    /// Vertex `V_j` as an offset of the base map.
    fn vertex_base(&self, j: usize) -> AffineMap {
        let mut shift = vec![Q::zero(); self.ambient_dim()];
        for e in &self.edges[..j] {
            shift = qvec_add(&shift, e);
        }
        let mut base = self.base.clone();
        for (a, x) in shift.iter().enumerate() {
            let row = base.row(a).to_vec();
            let off = base.offset(a) + &Scalar::rational(x.clone());
            base.set_row(a, row, off);
        }
        base
    }

    /// Oriented boundary `Σ_j (−1)^j [V_0 … V̂_j … V_k]`.
    pub fn boundary(&self) -> Result<Chain, FormError> {
        let k = self.dim();
        if k == 0 {
            return Err(FormError::BoundaryOfPoint);
        }
        let mut chain = Chain::zero();
        for j in 0..=k {
            let (base, edges) = if j == 0 {
                (self.vertex_base(1), self.edges[1..].to_vec())
            } else if j == k {
                (self.base.clone(), self.edges[..k - 1].to_vec())
            } else {
                let mut edges = self.edges[..j - 1].to_vec();
                edges.push(qvec_add(&self.edges[j - 1], &self.edges[j]));
                edges.extend_from_slice(&self.edges[j + 1..]);
                (self.base.clone(), edges)
            };
            let coeff = if j % 2 == 0 { self.sign } else { -self.sign };
            chain.push(coeff, AffineSimplex::new(base, edges));
        }
        Ok(chain.simplified())
    }

    /// `∫_s ω` as a function of the base-point parameters.
    pub fn integrate(&self, form: &Form) -> Result<PolyTrig, FormError> {
        let k = self.dim();
        if form.degree() != k {
            return Err(FormError::DegreeMismatch {
                expected: k,
                found: form.degree(),
            });
        }
        if form.dim() != self.ambient_dim() {
            return Err(FormError::DimensionMismatch {
                expected: form.dim(),
                found: self.ambient_dim(),
            });
        }
        let m = self.param_dim();
        let n = m + k;
        // (y, t) ↦ base(y) + Σ t_j e_j
        let linear: Vec<Vec<Q>> = (0..self.ambient_dim())
            .map(|a| {
                let mut row = self.base.row(a).to_vec();
                row.extend(self.edges.iter().map(|e| e[a].clone()));
                row
            })
            .collect();
        let offsets: Vec<Scalar> = (0..self.ambient_dim())
            .map(|a| self.base.offset(a).clone())
            .collect();
        let map = AffineMap::new(n, linear, offsets);

        let mut integrand = PolyTrig::zero(n);
        for (idx, f) in form.components() {
            let minor: Vec<Vec<Q>> = idx
                .iter()
                .map(|&a| self.edges.iter().map(|e| e[a].clone()).collect())
                .collect();
            let dt = det(&minor);
            if dt.is_zero() {
                continue;
            }
            integrand = integrand.add(&f.pullback_unchecked(&map).scale_q(&dt));
        }
        // Innermost first: t_j ∈ [0, t_{j−1}], t_1 ∈ [0, 1].
        let zero_row = vec![Q::zero(); n];
        for j in (0..k).rev() {
            let var = m + j;
            let upper_row = if j == 0 {
                zero_row.clone()
            } else {
                let mut r = zero_row.clone();
                r[var - 1] = Q::from_integer(1.into());
                r
            };
            let upper_const = if j == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            };
            integrand = integrand.definite_integral(
                var,
                (&zero_row, &Scalar::zero()),
                (&upper_row, &upper_const),
            );
        }
        let result = integrand.truncate(m).map_err(FormError::PolyTrig)?;
        Ok(if self.sign < 0 { result.neg() } else { result })
    }
}

/// Finite formal sum of simplices with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Chain {
    terms: Vec<(i64, AffineSimplex)>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain { terms: Vec::new() }
    }

    pub fn single(s: AffineSimplex) -> Self {
        Chain {
            terms: vec![(1, s)],
        }
    }

    pub fn push(&mut self, coeff: i64, s: AffineSimplex) {
        self.terms.push((coeff, s));
    }

    pub fn terms(&self) -> &[(i64, AffineSimplex)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.simplified()
    }

    /// Fold orientation signs into coefficients and merge equal simplices.
    pub fn simplified(&self) -> Chain {
        let mut out: Vec<(i64, AffineSimplex)> = Vec::new();
        for (c, s) in &self.terms {
            let c = c * s.sign;
            let s = AffineSimplex {
                sign: 1,
                ..s.clone()
            };
            match out.iter_mut().find(|(_, t)| *t == s) {
                Some(entry) => entry.0 += c,
                None => out.push((c, s)),
            }
        }
        out.retain(|(c, _)| *c != 0);
        Chain { terms: out }
    }

    pub fn boundary(&self) -> Result<Chain, FormError> {
        let mut out = Chain::zero();
        for (c, s) in &self.terms {
            for (c2, f) in s.boundary()?.terms {
                out.push(c * c2, f);
            }
        }
        Ok(out.simplified())
    }

    /// `Σ c_s ∫_s ω`; terms are integrated in parallel.
    pub fn integrate(&self, form: &Form, param_dim: usize) -> Result<PolyTrig, FormError> {
        let parts: Result<Vec<PolyTrig>, FormError> = self
            .terms
            .par_iter()
            .map(|(c, s)| Ok(s.integrate(form)?.scale_q(&Q::from_integer((*c).into()))))
            .collect();
        Ok(parts?
            .iter()
            .fold(PolyTrig::zero(param_dim), |acc, p| acc.add(p)))
    }
}

/// `∫_s ω`; see [`AffineSimplex::integrate`].
pub fn integrate_simplex(form: &Form, s: &AffineSimplex) -> Result<PolyTrig, FormError> {
    s.integrate(form)
}
