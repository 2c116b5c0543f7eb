use num_traits::{One, Zero};

use crate::polytrig::scalar::{format_qvec, qvec_add, qvec_scale, qvec_sub};
use crate::polytrig::{AffineMap, PolyTrig, Scalar, Q};

use super::simplex::AffineSimplex;
use super::{Form, FormError};

/// Piecewise-linear path `[0,1] → ℝ^d` through rational vertices at
/// rational parameter values (knots).
#[derive(Clone, Debug, PartialEq)]
pub struct PLPath {
    knots: Vec<Q>,
    vertices: Vec<Vec<Q>>,
}

impl PLPath {
    /// Vertices at uniformly spaced parameters. A single vertex gives the
    /// constant path.
    pub fn new(vertices: Vec<Vec<Q>>) -> Result<Self, FormError> {
        let n = vertices.len();
        match n {
            0 => Err(FormError::EmptyPath),
            1 => Self::with_knots(
                vec![Q::zero(), Q::one()],
                vec![vertices[0].clone(), vertices[0].clone()],
            ),
            _ => {
                let knots = (0..n)
                    .map(|j| Q::new((j as i64).into(), ((n - 1) as i64).into()))
                    .collect();
                Self::with_knots(knots, vertices)
            }
        }
    }

    pub fn with_knots(knots: Vec<Q>, vertices: Vec<Vec<Q>>) -> Result<Self, FormError> {
        if vertices.len() < 2 || knots.len() != vertices.len() {
            return Err(FormError::EmptyPath);
        }
        let d = vertices[0].len();
        if vertices.iter().any(|v| v.len() != d) {
            return Err(FormError::DimensionMismatch {
                expected: d,
                found: 0,
            });
        }
        if !knots[0].is_zero()
            || !knots[knots.len() - 1].is_one()
            || knots.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(FormError::BadKnots);
        }
        Ok(PLPath { knots, vertices })
    }

    /// Straight segment `t ↦ a + t(b − a)`.
    pub fn straight(a: &[Q], b: &[Q]) -> Self {
        Self::new(vec![a.to_vec(), b.to_vec()]).expect("two vertices")
    }

    /// The constant path at `p`.
    pub fn constant(p: &[Q]) -> Self {
        Self::straight(p, p)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn knots(&self) -> &[Q] {
        &self.knots
    }

    pub fn start(&self) -> &[Q] {
        &self.vertices[0]
    }

    pub fn end(&self) -> &[Q] {
        &self.vertices[self.vertices.len() - 1]
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn eval(&self, t: &Q) -> Vec<Q> {
        let j = match self.knots.iter().position(|k| k >= t) {
            Some(0) => return self.vertices[0].clone(),
            Some(j) => j,
            None => return self.end().to_vec(),
        };
        let (t0, t1) = (&self.knots[j - 1], &self.knots[j]);
        let s = (t - t0) / (t1 - t0);
        let step = qvec_sub(&self.vertices[j], &self.vertices[j - 1]);
        qvec_add(&self.vertices[j - 1], &qvec_scale(&step, &s))
    }

    pub fn reverse(&self) -> Self {
        let knots = self.knots.iter().rev().map(|k| Q::one() - k).collect();
        let vertices = self.vertices.iter().rev().cloned().collect();
        PLPath { knots, vertices }
    }

    pub fn translate(&self, v: &[Q]) -> Self {
        PLPath {
            knots: self.knots.clone(),
            vertices: self.vertices.iter().map(|p| qvec_add(p, v)).collect(),
        }
    }

    /// Traverse `self` then `other` (which must start where `self` ends),
    /// each at double speed.
    pub fn concat(&self, other: &Self) -> Result<Self, FormError> {
        if self.end() != other.start() {
            return Err(FormError::EndpointMismatch {
                end: format_qvec(self.end()),
                start: format_qvec(other.start()),
            });
        }
        let half = Q::new(1.into(), 2.into());
        let mut knots: Vec<Q> = self.knots.iter().map(|k| k * &half).collect();
        let mut vertices = self.vertices.clone();
        for (k, v) in other.knots.iter().zip(&other.vertices).skip(1) {
            knots.push(&half + k * &half);
            vertices.push(v.clone());
        }
        Ok(PLPath { knots, vertices })
    }

    /// Concatenate several paths, each getting an equal share of `[0,1]`.
    pub fn concat_all(parts: &[PLPath]) -> Result<Self, FormError> {
        let n = parts.len();
        if n == 0 {
            return Err(FormError::EmptyPath);
        }
        for w in parts.windows(2) {
            if w[0].end() != w[1].start() {
                return Err(FormError::EndpointMismatch {
                    end: format_qvec(w[0].end()),
                    start: format_qvec(w[1].start()),
                });
            }
        }
        let share = Q::new(1.into(), (n as i64).into());
        let mut knots = vec![Q::zero()];
        let mut vertices = vec![parts[0].start().to_vec()];
        for (i, p) in parts.iter().enumerate() {
            let off = &share * Q::from_integer((i as i64).into());
            for (k, v) in p.knots.iter().zip(&p.vertices).skip(1) {
                knots.push(&off + k * &share);
                vertices.push(v.clone());
            }
        }
        Ok(PLPath { knots, vertices })
    }

    /// Union of both knot sets.
    pub fn common_knots(&self, other: &Self) -> Vec<Q> {
        let mut knots: Vec<Q> = self.knots.iter().chain(&other.knots).cloned().collect();
        knots.sort();
        knots.dedup();
        knots
    }

    /// The same path with extra knots inserted (vertices on the segments).
    pub fn refine(&self, knots: &[Q]) -> Self {
        let mut all: Vec<Q> = self.knots.iter().chain(knots).cloned().collect();
        all.sort();
        all.dedup();
        let vertices = all.iter().map(|t| self.eval(t)).collect();
        PLPath {
            knots: all,
            vertices,
        }
    }

    /// `t ↦ self(t) + other(t)`.
    pub fn pointwise_sum(&self, other: &Self) -> Self {
        let knots = self.common_knots(other);
        let vertices = knots
            .iter()
            .map(|t| qvec_add(&self.eval(t), &other.eval(t)))
            .collect();
        PLPath { knots, vertices }
    }

    /// Segments as 1-simplices based at `base + vertex`.
    pub(crate) fn segments(&self, base: &AffineMap) -> Vec<AffineSimplex> {
        self.vertices
            .windows(2)
            .filter(|w| w[0] != w[1])
            .map(|w| {
                let mut b = base.clone();
                for (a, x) in w[0].iter().enumerate() {
                    let row = b.row(a).to_vec();
                    let off = b.offset(a) + &Scalar::rational(x.clone());
                    b.set_row(a, row, off);
                }
                AffineSimplex::new(b, vec![qvec_sub(&w[1], &w[0])])
            })
            .collect()
    }
}

/// `∫_p α` along the path translated by the base map's value (a function of
/// the base parameters).
pub fn integrate_path_at(
    alpha: &Form,
    path: &PLPath,
    base: &AffineMap,
) -> Result<PolyTrig, FormError> {
    if alpha.degree() != 1 {
        return Err(FormError::DegreeMismatch {
            expected: 1,
            found: alpha.degree(),
        });
    }
    let mut acc = PolyTrig::zero(base.in_dim());
    for s in path.segments(base) {
        acc = acc.add(&s.integrate(alpha)?);
    }
    Ok(acc)
}

/// `∫_p α` for a path at fixed position.
pub fn integrate_path(alpha: &Form, path: &PLPath) -> Result<Scalar, FormError> {
    let base = AffineMap::constant(vec![Scalar::zero(); path.dim()], 0);
    let v = integrate_path_at(alpha, path, &base)?;
    Ok(v.constant_term().expect("no parameters"))
}

/// `x ↦ ∫_{p + x} α`.
pub fn integrate_path_symbolic(alpha: &Form, path: &PLPath) -> Result<PolyTrig, FormError> {
    integrate_path_at(alpha, path, &AffineMap::identity(path.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytrig::{parse_expr, qi};

    fn pt(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| qi(a)).collect()
    }

    fn landau(n: i64) -> Form {
        Form::one_form(vec![
            parse_expr(&format!("-2*pi*{n}*x2"), 2).unwrap(),
            PolyTrig::zero(2),
        ])
    }

    #[test]
    fn unit_square_flux() {
        let square = PLPath::new(vec![
            pt(&[0, 0]),
            pt(&[1, 0]),
            pt(&[1, 1]),
            pt(&[0, 1]),
            pt(&[0, 0]),
        ])
        .unwrap();
        assert_eq!(
            integrate_path(&landau(3), &square).unwrap(),
            Scalar::pi_multiple(qi(6))
        );
        assert_eq!(
            integrate_path(&landau(3), &square.reverse()).unwrap(),
            Scalar::pi_multiple(qi(-6))
        );
    }

    #[test]
    fn degenerate_and_exact() {
        let p = PLPath::constant(&pt(&[2, 1]));
        assert!(integrate_path(&landau(1), &p).unwrap().is_zero());
        let df = Form::function(parse_expr("x1*x2^2 + sin(2*pi*x2)", 2).unwrap()).d();
        let loop_ = PLPath::new(vec![pt(&[0, 0]), pt(&[3, 1]), pt(&[-1, 2]), pt(&[0, 0])]).unwrap();
        assert!(integrate_path_symbolic(&df, &loop_).unwrap().is_zero());
    }

    #[test]
    fn concatenation_adds() {
        let a = PLPath::new(vec![pt(&[0, 0]), pt(&[1, 2])]).unwrap();
        let b = PLPath::new(vec![pt(&[1, 2]), pt(&[0, 5]), pt(&[3, 3])]).unwrap();
        let ab = a.concat(&b).unwrap();
        let f = landau(1);
        let sum = integrate_path_symbolic(&f, &a)
            .unwrap()
            .add(&integrate_path_symbolic(&f, &b).unwrap());
        assert_eq!(integrate_path_symbolic(&f, &ab).unwrap(), sum);
        assert!(a.concat(&a).is_err());
    }

    #[test]
    fn pointwise_sum_uses_common_refinement() {
        let a = PLPath::new(vec![pt(&[0, 0]), pt(&[2, 0])]).unwrap();
        let b = PLPath::new(vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[0, 4])]).unwrap();
        let s = a.pointwise_sum(&b);
        assert_eq!(s.vertices(), &[pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 4])]);
        assert_eq!(
            s.eval(&Q::new(1.into(), 4.into())),
            vec![Q::new(1.into(), 2.into()), Q::new(1.into(), 2.into())]
        );
    }
}
