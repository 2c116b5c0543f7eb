use num_complex::Complex64;
use num_traits::Zero;

use crate::forms::{integrate_path, PLPath};
use crate::polytrig::scalar::{format_qvec, qvec_sub};
use crate::polytrig::{Scalar, Q};

use super::{LineData, MagneticError};

/// Holonomy `e^{iθ}` of a loop.
#[derive(Clone, Debug, PartialEq)]
pub struct Holonomy {
    pub exponent: Scalar,
}

impl Holonomy {
    pub fn value(&self) -> Complex64 {
        let z = self.exponent.to_c64();
        Complex64::from_polar(1.0, z.re)
    }

    pub fn is_trivial(&self) -> bool {
        crate::polytrig::Residue::of(&self.exponent).is_zero()
    }
}

/// `exp(i∮A)` for a loop closed in ℝ^d.
pub fn holonomy(l: &LineData, loop_: &PLPath) -> Result<Holonomy, MagneticError> {
    if !loop_.is_closed() {
        return Err(MagneticError::OpenPath(
            format_qvec(loop_.start()),
            format_qvec(loop_.end()),
        ));
    }
    let a = l.connection()?;
    Ok(Holonomy {
        exponent: integrate_path(a, loop_)?,
    })
}

/// Holonomy of a loop in `T^d` lifted to a path from `p` to `p + i` with
/// `i ∈ ℤ^d`: `exp(i∫_γ A) · f_i(p)`.
pub fn winding_holonomy(l: &LineData, path: &PLPath) -> Result<Holonomy, MagneticError> {
    let jump = qvec_sub(path.end(), path.start());
    if jump.iter().any(|x: &Q| !x.is_integer()) {
        return Err(MagneticError::NotALoop(format_qvec(&jump)));
    }
    let i: Vec<i64> = jump
        .iter()
        .map(|x| i64::try_from(x.to_integer()).unwrap_or(0))
        .collect();
    let a = l.connection()?;
    let line = integrate_path(a, path)?;
    let transition = if i.iter().all(Zero::is_zero) {
        Scalar::zero()
    } else {
        l.phi(&i).eval_exact(path.start())
    };
    Ok(Holonomy {
        exponent: &line + &transition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytrig::{q, qi};

    fn p(x: &[(i64, i64)]) -> Vec<Q> {
        x.iter().map(|&(n, d)| q(n, d)).collect()
    }

    #[test]
    fn unit_and_half_cells() {
        for n in 1..=3 {
            let l = LineData::landau(n);
            let unit = PLPath::new(vec![
                p(&[(0, 1), (0, 1)]),
                p(&[(1, 1), (0, 1)]),
                p(&[(1, 1), (1, 1)]),
                p(&[(0, 1), (1, 1)]),
                p(&[(0, 1), (0, 1)]),
            ])
            .unwrap();
            let h = holonomy(&l, &unit).unwrap();
            assert_eq!(h.exponent, Scalar::pi_multiple(qi(2 * n)));
            assert!(h.is_trivial());
            let half = PLPath::new(vec![
                p(&[(0, 1), (0, 1)]),
                p(&[(1, 2), (0, 1)]),
                p(&[(1, 2), (1, 2)]),
                p(&[(0, 1), (1, 2)]),
                p(&[(0, 1), (0, 1)]),
            ])
            .unwrap();
            assert_eq!(
                holonomy(&l, &half).unwrap().exponent,
                Scalar::pi_multiple(q(n, 2))
            );
        }
        let open = PLPath::straight(&p(&[(0, 1), (0, 1)]), &p(&[(1, 1), (0, 1)]));
        assert!(holonomy(&LineData::landau(1), &open).is_err());
    }

    #[test]
    fn winding_loops_are_lift_independent() {
        // Moving the lift by a lattice vector must not change the holonomy.
        let l = LineData::landau(2);
        let base = p(&[(1, 4), (-1, 2)]);
        let mk = |shift: &[Q]| {
            let s = crate::polytrig::scalar::qvec_add(&base, shift);
            let mid = crate::polytrig::scalar::qvec_add(&s, &p(&[(3, 4), (1, 4)]));
            let end = crate::polytrig::scalar::qvec_add(&s, &p(&[(1, 1), (1, 1)]));
            PLPath::new(vec![s, mid, end]).unwrap()
        };
        let h0 = winding_holonomy(&l, &mk(&p(&[(0, 1), (0, 1)]))).unwrap();
        for shift in [
            p(&[(1, 1), (0, 1)]),
            p(&[(0, 1), (1, 1)]),
            p(&[(-2, 1), (3, 1)]),
        ] {
            let h = winding_holonomy(&l, &mk(&shift)).unwrap();
            assert!(crate::polytrig::Residue::of(&(&h.exponent - &h0.exponent)).is_zero());
        }
    }

    #[test]
    fn winding_holonomy_tracks_swept_flux() {
        // Sliding the loop by δ along e1 sweeps flux 2πN·δ·det(e1, i).
        let n = 3;
        let l = LineData::landau_closed(n);
        let straight = |x0: Q| PLPath::straight(&[x0.clone(), qi(0)], &[x0 + qi(1), qi(1)]);
        let h0 = winding_holonomy(&l, &straight(qi(0))).unwrap();
        let delta = q(1, 4);
        let h1 = winding_holonomy(&l, &straight(delta.clone())).unwrap();
        let swept = Scalar::pi_multiple(qi(2 * n) * delta);
        assert_eq!(&h1.exponent - &h0.exponent, swept);
    }
}
