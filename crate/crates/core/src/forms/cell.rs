use crate::polytrig::scalar::{qvec_add, qvec_sub};
use crate::polytrig::{AffineMap, PolyTrig, Scalar, Q};

use super::path::PLPath;
use super::simplex::{AffineSimplex, Chain};
use super::{Form, FormError};

/// The surface `(t_1, t_2) ↦ x + first(t_1) + second(t_2)` over
/// `0 ≤ t_2 ≤ t_1 ≤ 1`, with symbolic `x`.
///
/// Its oriented boundary runs along `first`, then along `second` shifted by
/// `first(1)`, then back along the diagonal `first + second`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearCell {
    first: PLPath,
    second: PLPath,
}

impl BilinearCell {
    pub fn new(first: PLPath, second: PLPath) -> Result<Self, FormError> {
        if first.dim() != second.dim() {
            return Err(FormError::DimensionMismatch {
                expected: first.dim(),
                found: second.dim(),
            });
        }
        Ok(BilinearCell { first, second })
    }

    pub fn first(&self) -> &PLPath {
        &self.first
    }

    pub fn second(&self) -> &PLPath {
        &self.second
    }

    /// Decomposition into affine 2-simplices over the merged knot grid.
    pub fn chain(&self) -> Chain {
        let knots = self.first.common_knots(&self.second);
        let mut chain = Chain::zero();
        for a in 0..knots.len() - 1 {
            let (a0, a1) = (&knots[a], &knots[a + 1]);
            let e1 = qvec_sub(&self.first.eval(a1), &self.first.eval(a0));
            for b in 0..=a {
                let (b0, b1) = (&knots[b], &knots[b + 1]);
                let e2 = qvec_sub(&self.second.eval(b1), &self.second.eval(b0));
                let corner = qvec_add(&self.first.eval(a0), &self.second.eval(b0));
                let base = AffineMap::translation(&corner);
                chain.push(
                    1,
                    AffineSimplex::new(base.clone(), vec![e1.clone(), e2.clone()]),
                );
                if b < a {
                    // The rest of the rectangle: s_2 ≥ s_1, opposite orientation.
                    chain.push(-1, AffineSimplex::new(base, vec![e2, e1.clone()]));
                }
            }
        }
        chain
    }

    /// `x ↦ ∫ ω` over the cell.
    pub fn integrate(&self, omega: &Form) -> Result<PolyTrig, FormError> {
        if omega.degree() != 2 {
            return Err(FormError::DegreeMismatch {
                expected: 2,
                found: omega.degree(),
            });
        }
        self.chain().integrate(omega, self.first.dim())
    }

    /// The closed boundary loop at base point 0.
    pub fn boundary_loop(&self) -> PLPath {
        let bottom = self.first.translate(self.second.start());
        let right = self.second.translate(self.first.end());
        let diagonal = self.first.pointwise_sum(&self.second).reverse();
        PLPath::concat_all(&[bottom, right, diagonal]).expect("cell boundary is closed")
    }
}

/// `∫_c ω`; see [`BilinearCell::integrate`].
pub fn integrate_cell(omega: &Form, c: &BilinearCell) -> Result<PolyTrig, FormError> {
    c.integrate(omega)
}

/// Value at a fixed base point.
pub fn integrate_cell_at(omega: &Form, c: &BilinearCell, x: &[Q]) -> Result<Scalar, FormError> {
    let f = c.integrate(omega)?;
    Ok(f.eval_exact(x))
}
