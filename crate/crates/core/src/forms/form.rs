use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::polytrig::{AffineMap, PolyTrig, Scalar, Q};

use super::FormError;

/// A differential form on ℝ^d with [`PolyTrig`] coefficients, keyed by
/// strictly increasing index tuples (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, PolyTrig>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
pub(crate) fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Determinant of a small square rational matrix (cofactor expansion).
pub(crate) fn det(m: &[Vec<Q>]) -> Q {
    match m.len() {
        0 => Q::from_integer(1.into()),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        n => {
            let mut acc = Q::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Q>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * det(&minor);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// All strictly increasing `k`-tuples from `0..n`.
pub(crate) fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            rec(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: PolyTrig) -> Self {
        let mut w = Self::zero(f.dim(), 0);
        w.add_component(Vec::new(), f);
        w
    }

    /// `dx_a` (0-based).
    pub fn dx(dim: usize, a: usize) -> Self {
        let mut w = Self::zero(dim, 1);
        w.add_component(vec![a], PolyTrig::one(dim));
        w
    }

    /// `Σ_a comps[a] dx_a`.
    pub fn one_form(comps: Vec<PolyTrig>) -> Self {
        let dim = comps.len();
        let mut w = Self::zero(dim, 1);
        for (a, f) in comps.into_iter().enumerate() {
            w.add_component(vec![a], f);
        }
        w
    }

    /// Build from (index tuple, coefficient) pairs; tuples need not be sorted.
    pub fn from_components(
        dim: usize,
        degree: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, PolyTrig)>,
    ) -> Result<Self, FormError> {
        let mut w = Self::zero(dim, degree);
        for (idx, f) in comps {
            if idx.len() != degree {
                return Err(FormError::DegreeMismatch {
                    expected: degree,
                    found: idx.len(),
                });
            }
            if let Some(&a) = idx.iter().find(|&&a| a >= dim) {
                return Err(FormError::IndexOutOfRange { index: a, dim });
            }
            if f.dim() != dim {
                return Err(FormError::DimensionMismatch {
                    expected: dim,
                    found: f.dim(),
                });
            }
            if let Some((sorted, sign)) = sort_sign(&idx) {
                let f = if sign < 0 { f.neg() } else { f };
                w.add_component(sorted, f);
            }
        }
        Ok(w)
    }

    /// Constant coefficient `c` times `dx_I` (I sorted or not).
    pub fn constant(dim: usize, idx: &[usize], c: Scalar) -> Self {
        Self::from_components(dim, idx.len(), [(idx.to_vec(), PolyTrig::constant(dim, c))])
            .expect("valid constant form")
    }

    fn add_component(&mut self, idx: Vec<usize>, f: PolyTrig) {
        let merged = match self.coeffs.remove(&idx) {
            Some(g) => g.add(&f),
            None => f,
        };
        if !merged.is_zero() {
            self.coeffs.insert(idx, merged);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.values().all(PolyTrig::is_exact)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &PolyTrig)> {
        self.coeffs.iter()
    }

    /// Coefficient of `dx_I` for a sorted tuple `I`.
    pub fn component(&self, idx: &[usize]) -> PolyTrig {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| PolyTrig::zero(self.dim))
    }

    fn check_same(&self, other: &Self) -> Result<(), FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(FormError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (idx, f) in &other.coeffs {
            out.add_component(idx.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other)
            .expect("forms of equal dimension and degree")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|f| f.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|f| f.scale(s))
    }

    /// Multiply every coefficient by a function.
    pub fn mul_fn(&self, g: &PolyTrig) -> Self {
        self.map(|f| f.mul(g))
    }

    fn map(&self, op: impl Fn(&PolyTrig) -> PolyTrig) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, f) in &self.coeffs {
            out.add_component(idx.clone(), op(f));
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Self::zero(self.dim, self.degree + 1);
        for (idx, f) in &self.coeffs {
            for a in 0..self.dim {
                if idx.contains(&a) {
                    continue;
                }
                let df = f.partial(a);
                if df.is_zero() {
                    continue;
                }
                let before = idx.iter().filter(|&&i| i < a).count();
                let mut new_idx = idx.clone();
                new_idx.insert(before, a);
                out.add_component(new_idx, if before % 2 == 0 { df } else { df.neg() });
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Form, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(FormError::DegreeOverflow {
                degree,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim, degree);
        for (i, f) in &self.coeffs {
            for (j, g) in &other.coeffs {
                let cat: Vec<usize> = i.iter().chain(j).copied().collect();
                if let Some((sorted, sign)) = sort_sign(&cat) {
                    let fg = f.mul(g);
                    out.add_component(sorted, if sign < 0 { fg.neg() } else { fg });
                }
            }
        }
        Ok(out)
    }

    /// Contraction `ι_V` with a constant vector.
    pub fn interior(&self, v: &[Q]) -> Result<Form, FormError> {
        if self.degree == 0 {
            return Err(FormError::InteriorOfFunction);
        }
        if v.len() != self.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (idx, f) in &self.coeffs {
            for (r, &a) in idx.iter().enumerate() {
                if v[a].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(r);
                let mut c = v[a].clone();
                if r % 2 == 1 {
                    c = -c;
                }
                out.add_component(rest, f.scale_q(&c));
            }
        }
        Ok(out)
    }

    /// `m^*ω` for an affine map `m: ℝ^n → ℝ^d`; resulting frequencies must be
    /// integral.
    pub fn pullback(&self, m: &AffineMap) -> Result<Form, FormError> {
        let out = self.pullback_unchecked(m)?;
        for f in out.coeffs.values() {
            if !f.has_integer_frequencies() {
                return Err(FormError::PolyTrig(
                    crate::polytrig::PolyTrigError::NonIntegerFrequency(
                        "pulled-back coefficient".into(),
                    ),
                ));
            }
        }
        Ok(out)
    }

    /// Pullback allowing rational frequencies.
    pub fn pullback_unchecked(&self, m: &AffineMap) -> Result<Form, FormError> {
        if m.out_dim() != self.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: m.out_dim(),
            });
        }
        let n = m.in_dim();
        let mut out = Self::zero(n, self.degree);
        let targets = index_tuples(n, self.degree);
        for (idx, f) in &self.coeffs {
            let g = f.pullback_unchecked(m);
            for j in &targets {
                let minor: Vec<Vec<Q>> = idx
                    .iter()
                    .map(|&a| j.iter().map(|&b| m.row(a)[b].clone()).collect())
                    .collect();
                let dt = det(&minor);
                if !dt.is_zero() {
                    out.add_component(j.clone(), g.scale_q(&dt));
                }
            }
        }
        Ok(out)
    }

    /// `τ_v^*ω`, i.e. coefficients evaluated at `x + v`.
    pub fn shift(&self, v: &[Q]) -> Form {
        self.map(|f| f.shift(v))
    }

    /// Evaluate the alternating form on vectors at a point (all exact).
    pub fn evaluate_on(&self, vectors: &[Vec<Q>]) -> PolyTrig {
        let mut acc = PolyTrig::zero(self.dim);
        for (idx, f) in &self.coeffs {
            let minor: Vec<Vec<Q>> = idx
                .iter()
                .map(|&a| vectors.iter().map(|v| v[a].clone()).collect())
                .collect();
            let dt = det(&minor);
            if !dt.is_zero() {
                acc = acc.add(&f.scale_q(&dt));
            }
        }
        acc
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (r, a) in idx.iter().enumerate() {
                write!(f, "{}dx{}", if r == 0 { " " } else { "∧" }, a + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytrig::{parse_expr, qi};

    fn p(s: &str, d: usize) -> PolyTrig {
        parse_expr(s, d).unwrap()
    }

    #[test]
    fn landau_curvature() {
        let a = Form::one_form(vec![p("-2*pi*3*x2", 2), p("0", 2)]);
        assert_eq!(
            a.d(),
            Form::constant(2, &[0, 1], Scalar::pi_multiple(qi(6)))
        );
    }

    #[test]
    fn constant_h_primitive() {
        let b = Form::from_components(3, 2, [(vec![1, 2], p("2*pi*2*x1", 3))]).unwrap();
        assert_eq!(
            b.d(),
            Form::constant(3, &[0, 1, 2], Scalar::pi_multiple(qi(4)))
        );
        assert!(Form::constant(3, &[0, 2], Scalar::int(5)).d().is_zero());
    }

    #[test]
    fn wedge_signs() {
        let dx1 = Form::dx(2, 0);
        let dx2 = Form::dx(2, 1);
        assert_eq!(dx1.wedge(&dx2).unwrap(), dx2.wedge(&dx1).unwrap().neg());
        assert!(dx1.wedge(&dx1).unwrap().is_zero());
        let f = Form::function(p("x1*x2", 2));
        assert_eq!(f.wedge(&dx2).unwrap(), dx2.mul_fn(&p("x1*x2", 2)));
        assert!(matches!(
            Form::constant(2, &[0, 1], Scalar::one()).wedge(&dx1),
            Err(FormError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn interior_examples() {
        let area = Form::constant(2, &[0, 1], Scalar::one());
        assert_eq!(area.interior(&[qi(1), qi(0)]).unwrap(), Form::dx(2, 1));
        assert_eq!(
            area.interior(&[qi(0), qi(1)]).unwrap(),
            Form::dx(2, 0).neg()
        );
        let a = Form::one_form(vec![p("x2", 2), p("0", 2)]);
        assert_eq!(
            a.interior(&[qi(3), qi(7)]).unwrap(),
            Form::function(p("3*x2", 2))
        );
        assert!(matches!(
            Form::function(p("1", 2)).interior(&[qi(1), qi(0)]),
            Err(FormError::InteriorOfFunction)
        ));
    }

    #[test]
    fn pullback_examples() {
        let a = Form::one_form(vec![p("-2*pi*x2", 2), p("0", 2)]);
        let shifted = a
            .pullback(&AffineMap::translation(&[qi(0), qi(1)]))
            .unwrap();
        assert_eq!(
            shifted,
            Form::one_form(vec![p("-2*pi*(x2 + 1)", 2), p("0", 2)])
        );
        assert_eq!(shifted, a.shift(&[qi(0), qi(1)]));
        // t ↦ t v along a line: dx1 pulls back to v1 dt.
        let line = AffineMap::new(
            1,
            vec![vec![qi(5)], vec![qi(-2)]],
            vec![Scalar::zero(), Scalar::zero()],
        );
        assert_eq!(
            Form::dx(2, 0).pullback(&line).unwrap(),
            Form::constant(1, &[0], Scalar::int(5))
        );
    }
}
