use num_traits::{One, Zero};

use super::expr::PolyTrig;
use super::scalar::{Scalar, Q};

/// `y = L x + b` with rational `L` (one row per output coordinate) and
/// scalar translation `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    in_dim: usize,
    linear: Vec<Vec<Q>>,
    offset: Vec<Scalar>,
}

impl AffineMap {
    pub fn new(in_dim: usize, linear: Vec<Vec<Q>>, offset: Vec<Scalar>) -> Self {
        assert_eq!(
            linear.len(),
            offset.len(),
            "row count must match translation length"
        );
        assert!(
            linear.iter().all(|r| r.len() == in_dim),
            "row length must equal input dimension"
        );
        AffineMap {
            in_dim,
            linear,
            offset,
        }
    }

    pub fn identity(d: usize) -> Self {
        let linear = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| if a == b { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        AffineMap {
            in_dim: d,
            linear,
            offset: vec![Scalar::zero(); d],
        }
    }

    /// `x ↦ x + shift`.
    pub fn translation(shift: &[Q]) -> Self {
        let mut m = Self::identity(shift.len());
        m.offset = shift.iter().cloned().map(Scalar::rational).collect();
        m
    }

    /// The constant map `ℝ^{in_dim} → point`.
    pub fn constant(point: Vec<Scalar>, in_dim: usize) -> Self {
        let linear = vec![vec![Q::zero(); in_dim]; point.len()];
        AffineMap {
            in_dim,
            linear,
            offset: point,
        }
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.linear.len()
    }

    pub fn row(&self, a: usize) -> &[Q] {
        &self.linear[a]
    }

    pub fn offset(&self, a: usize) -> &Scalar {
        &self.offset[a]
    }

    pub fn set_row(&mut self, a: usize, row: Vec<Q>, offset: Scalar) {
        assert_eq!(row.len(), self.in_dim);
        self.linear[a] = row;
        self.offset[a] = offset;
    }

    /// Output coordinate `a` as an affine function of the inputs.
    pub fn coordinate(&self, a: usize) -> PolyTrig {
        let coeffs: Vec<Scalar> = self.linear[a]
            .iter()
            .cloned()
            .map(Scalar::rational)
            .collect();
        PolyTrig::linear(&coeffs, self.offset[a].clone())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        assert_eq!(
            self.in_dim,
            inner.out_dim(),
            "composition dimension mismatch"
        );
        let linear = self
            .linear
            .iter()
            .map(|row| {
                (0..inner.in_dim)
                    .map(|c| row.iter().zip(&inner.linear).map(|(l, r)| l * &r[c]).sum())
                    .collect()
            })
            .collect();
        let offset = self
            .linear
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| {
                row.iter()
                    .zip(&inner.offset)
                    .fold(b.clone(), |acc, (l, ib)| &acc + &ib.scale_q(l))
            })
            .collect();
        AffineMap {
            in_dim: inner.in_dim,
            linear,
            offset,
        }
    }
}
