use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::expr::PolyTrig;
use super::scalar::{Residue, Scalar, Q};

/// If `f` is constant, its residue modulo 2π; `None` when it varies.
pub fn constant_mod_2pi(f: &PolyTrig) -> Option<Residue> {
    f.constant_term().map(|c| Residue::of(&c))
}

/// `period / 2π` when it is an integer; otherwise the offending quotient as
/// text.
pub fn winding_number(period: &Scalar) -> Result<i64, String> {
    let two_pi = 2.0 * std::f64::consts::PI;
    match period {
        Scalar::Exact { re, im } if im.is_zero() => {
            if re.is_zero() {
                return Ok(0);
            }
            let half = re
                .as_pi_multiple()
                .ok_or_else(|| format!("{}", re.to_f64() / two_pi))?;
            let k = half / Q::from_integer(2.into());
            if k.is_integer() {
                k.to_integer().to_i64().ok_or_else(|| k.to_string())
            } else {
                Err(k.to_string())
            }
        }
        Scalar::Exact { re, .. } => Err(format!("{} (complex)", re.to_f64() / two_pi)),
        Scalar::Float { re, im, tol } => {
            let k = re / two_pi;
            if (k - k.round()).abs() <= *tol && im.abs() <= *tol {
                Ok(k.round() as i64)
            } else {
                Err(format!("{k}"))
            }
        }
    }
}

/// `x ↦ e^{iθ(x)}` stored through its real exponent `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct U1Function {
    exponent: PolyTrig,
}

impl U1Function {
    pub fn new(exponent: PolyTrig) -> Self {
        U1Function { exponent }
    }

    pub fn one(d: usize) -> Self {
        U1Function {
            exponent: PolyTrig::zero(d),
        }
    }

    /// The constant `e^{iθ}`.
    pub fn constant(d: usize, theta: Scalar) -> Self {
        U1Function {
            exponent: PolyTrig::constant(d, theta),
        }
    }

    pub fn exponent(&self) -> &PolyTrig {
        &self.exponent
    }

    pub fn into_exponent(self) -> PolyTrig {
        self.exponent
    }

    pub fn dim(&self) -> usize {
        self.exponent.dim()
    }

    pub fn mul(&self, other: &Self) -> Self {
        U1Function {
            exponent: self.exponent.add(&other.exponent),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        U1Function {
            exponent: self.exponent.sub(&other.exponent),
        }
    }

    pub fn inv(&self) -> Self {
        U1Function {
            exponent: self.exponent.neg(),
        }
    }

    /// `x ↦ g(x + shift)`.
    pub fn shift(&self, shift: &[Q]) -> Self {
        U1Function {
            exponent: self.exponent.shift(shift),
        }
    }

    /// Residue of `θ − θ'` when it is constant.
    pub fn ratio_residue(&self, other: &Self) -> Option<Residue> {
        constant_mod_2pi(&self.exponent.sub(&other.exponent))
    }

    /// Equality as functions into U(1).
    pub fn equals(&self, other: &Self) -> bool {
        self.ratio_residue(other).is_some_and(|r| r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        constant_mod_2pi(&self.exponent).is_some_and(|r| r.is_zero())
    }

    /// The value when `g` is constant.
    pub fn as_constant(&self) -> Option<Complex64> {
        self.exponent
            .constant_term()
            .map(|c| Complex64::from_polar(1.0, c.real_f64()))
    }

    pub fn eval_f64(&self, x: &[f64]) -> Complex64 {
        Complex64::from_polar(1.0, self.exponent.eval_f64(x).re)
    }

    /// Residue of `θ(x + e_a) − θ(x)` for every axis, `None` where it is not
    /// constant. All zero means `g` descends to the torus.
    pub fn period_residues(&self) -> Vec<Option<Residue>> {
        let d = self.dim();
        (0..d)
            .map(|a| {
                let mut e = vec![Q::from_integer(0.into()); d];
                e[a] = Q::from_integer(1.into());
                constant_mod_2pi(&self.exponent.shift(&e).sub(&self.exponent))
            })
            .collect()
    }

    pub fn is_periodic(&self) -> bool {
        self.period_residues()
            .iter()
            .all(|r| r.as_ref().is_some_and(Residue::is_zero))
    }
}

impl fmt::Display for U1Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(i*({}))", self.exponent)
    }
}
