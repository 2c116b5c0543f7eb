//! Coefficient scalars.
//!
//! The exact tier is the ring ℚ[π, π⁻¹] (finite Laurent sums `Σ q_m π^m`),
//! paired into a complex number. Every closed form produced by differentiating,
//! antidifferentiating or pulling back polynomial-times-trigonometric data with
//! rational geometry stays inside this ring, so exact arithmetic never has to
//! give up. Anything else (phases that are not quarter turns, decimal literals)
//! falls back to the float tier, which carries an absolute error bound.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Rational numbers used for coefficients, frequencies and geometry.
pub type Q = BigRational;

/// Default absolute tolerance of float-tier values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Float-tier magnitudes below this are dropped during canonicalization.
pub const FLOAT_ZERO: f64 = 1e-15;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Ratios of huge integers: scale down before dividing.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Vector of rationals; used for translation vectors and simplex data.
pub type QVec = Vec<Q>;

pub fn qvec(entries: &[(i64, i64)]) -> QVec {
    entries.iter().map(|&(n, d)| q(n, d)).collect()
}

pub fn qvec_int(entries: &[i64]) -> QVec {
    entries.iter().map(|&n| qi(n)).collect()
}

pub fn qvec_add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn qvec_sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn qvec_neg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn qvec_scale(a: &[Q], s: &Q) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn qvec_is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn qvec_to_f64(a: &[Q]) -> Vec<f64> {
    a.iter().map(q_to_f64).collect()
}

pub fn format_qvec(a: &[Q]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// A finite Laurent polynomial in π with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiPoly(BTreeMap<i32, Q>);

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly(BTreeMap::new())
    }

    pub fn monomial(coeff: Q, pi_power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(pi_power, coeff);
        }
        PiPoly(terms)
    }

    pub fn rational(coeff: Q) -> Self {
        Self::monomial(coeff, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        self.0.iter().map(|(m, c)| (*m, c))
    }

    /// `Some(q)` when the value is the rational `q` (including zero).
    pub fn as_rational(&self) -> Option<Q> {
        match self.0.len() {
            0 => Some(Q::zero()),
            1 => self.0.get(&0).cloned(),
            _ => None,
        }
    }

    /// `Some(q)` when the value is `q·π` (including zero).
    pub fn as_pi_multiple(&self) -> Option<Q> {
        match self.0.len() {
            0 => Some(Q::zero()),
            1 => self.0.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(Q, i32)> {
        if self.0.len() == 1 {
            self.0.iter().next().map(|(m, c)| (c.clone(), *m))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0
            .iter()
            .map(|(m, c)| q_to_f64(c) * std::f64::consts::PI.powi(*m))
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (m, c) in &other.0 {
            let entry = out.entry(*m).or_insert_with(Q::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(m);
            }
        }
        PiPoly(out)
    }

    pub fn neg(&self) -> Self {
        PiPoly(self.0.iter().map(|(m, c)| (*m, -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<i32, Q> = BTreeMap::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                *out.entry(m1 + m2).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        PiPoly(out)
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        PiPoly(self.0.iter().map(|(m, c)| (*m, c * s)).collect())
    }

    pub fn shift_pi(&self, by: i32) -> Self {
        PiPoly(self.0.iter().map(|(m, c)| (m + by, c.clone())).collect())
    }
}

impl fmt::Display for PiPoly {
    /// Prints in the expression grammar, e.g. `3/2*pi^2 - 1/pi + 1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.0.iter().rev().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let pi_part = match m {
                0 => String::new(),
                1 => "pi".to_string(),
                m if *m > 0 => format!("pi^{m}"),
                -1 => "pi".to_string(),
                m => format!("pi^{}", -m),
            };
            if *m >= 0 {
                if pi_part.is_empty() {
                    write!(f, "{mag}")?;
                } else if mag.is_one() {
                    write!(f, "{pi_part}")?;
                } else {
                    write!(f, "{mag}*{pi_part}")?;
                }
            } else {
                write!(f, "{mag}/{pi_part}")?;
            }
        }
        Ok(())
    }
}

/// A coefficient: exact complex element of ℚ[π, π⁻¹] or a float with an
/// absolute tolerance.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact { re: PiPoly, im: PiPoly },
    Float { re: f64, im: f64, tol: f64 },
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => a == c && b == d,
            (
                Scalar::Float {
                    re: a,
                    im: b,
                    tol: t,
                },
                Scalar::Float {
                    re: c,
                    im: d,
                    tol: u,
                },
            ) => a == c && b == d && t == u,
            _ => false,
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self::exact(PiPoly::zero())
    }

    pub fn one() -> Self {
        Self::rational(Q::one())
    }

    pub fn exact(re: PiPoly) -> Self {
        Scalar::Exact {
            re,
            im: PiPoly::zero(),
        }
    }

    pub fn rational(x: Q) -> Self {
        Self::exact(PiPoly::rational(x))
    }

    pub fn int(n: i64) -> Self {
        Self::rational(qi(n))
    }

    /// `x·π^m`.
    pub fn pi_monomial(x: Q, m: i32) -> Self {
        Self::exact(PiPoly::monomial(x, m))
    }

    /// `x·π`.
    pub fn pi_multiple(x: Q) -> Self {
        Self::pi_monomial(x, 1)
    }

    pub fn imag_unit() -> Self {
        Scalar::Exact {
            re: PiPoly::zero(),
            im: PiPoly::rational(Q::one()),
        }
    }

    pub fn float(re: f64) -> Self {
        Scalar::Float {
            re,
            im: 0.0,
            tol: DEFAULT_TOLERANCE,
        }
    }

    pub fn float_with_tol(re: f64, im: f64, tol: f64) -> Self {
        Scalar::Float { re, im, tol }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact { .. })
    }

    /// Exact zero, or a float below the canonicalization threshold.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Float { re, im, .. } => re.abs() < FLOAT_ZERO && im.abs() < FLOAT_ZERO,
        }
    }

    /// Zero up to the value's own tolerance (exact values must be exactly zero).
    pub fn is_negligible(&self) -> bool {
        match self {
            Scalar::Exact { .. } => self.is_zero(),
            Scalar::Float { re, im, tol } => re.abs() <= *tol && im.abs() <= *tol,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact { im, .. } => im.is_zero(),
            Scalar::Float { im, tol, .. } => im.abs() <= *tol,
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            Scalar::Exact { .. } => 0.0,
            Scalar::Float { tol, .. } => *tol,
        }
    }

    pub fn with_tolerance(self, tol: f64) -> Self {
        match self {
            Scalar::Float { re, im, .. } => Scalar::Float { re, im, tol },
            exact => exact,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact { re, im } => Complex64::new(re.to_f64(), im.to_f64()),
            Scalar::Float { re, im, .. } => Complex64::new(*re, *im),
        }
    }

    pub fn real_f64(&self) -> f64 {
        self.to_c64().re
    }

    /// Rational value if exact, real and free of π.
    pub fn as_rational(&self) -> Option<Q> {
        match self {
            Scalar::Exact { re, im } if im.is_zero() => re.as_rational(),
            _ => None,
        }
    }

    pub fn real_part(&self) -> Scalar {
        match self {
            Scalar::Exact { re, .. } => Scalar::exact(re.clone()),
            Scalar::Float { re, tol, .. } => Scalar::Float {
                re: *re,
                im: 0.0,
                tol: *tol,
            },
        }
    }

    pub fn imag_part(&self) -> Scalar {
        match self {
            Scalar::Exact { im, .. } => Scalar::exact(im.clone()),
            Scalar::Float { im, tol, .. } => Scalar::Float {
                re: *im,
                im: 0.0,
                tol: *tol,
            },
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re.clone(),
                im: im.neg(),
            },
            Scalar::Float { re, im, tol } => Scalar::Float {
                re: *re,
                im: -*im,
                tol: *tol,
            },
        }
    }

    pub fn scale_q(&self, s: &Q) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re.scale(s),
                im: im.scale(s),
            },
            Scalar::Float { re, im, tol } => {
                let f = q_to_f64(s);
                Scalar::Float {
                    re: re * f,
                    im: im * f,
                    tol: tol * f.abs(),
                }
            }
        }
    }

    /// Multiply by `π^m`.
    pub fn shift_pi(&self, m: i32) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re.shift_pi(m),
                im: im.shift_pi(m),
            },
            Scalar::Float { re, im, tol } => {
                let f = std::f64::consts::PI.powi(m);
                Scalar::Float {
                    re: re * f,
                    im: im * f,
                    tol: tol * f,
                }
            }
        }
    }

    /// Multiplicative inverse where it stays representable: exact real
    /// monomials `q·π^m`, or nonzero floats.
    pub fn recip(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact { re, im } => {
                if !im.is_zero() {
                    return None;
                }
                let (c, m) = re.as_monomial()?;
                Some(Scalar::pi_monomial(c.recip(), -m))
            }
            Scalar::Float { re, im, tol } => {
                let z = Complex64::new(*re, *im);
                if z.norm() <= *tol {
                    return None;
                }
                let inv = z.inv();
                let rel = tol / z.norm();
                Some(Scalar::Float {
                    re: inv.re,
                    im: inv.im,
                    tol: inv.norm() * rel * 2.0,
                })
            }
        }
    }

    fn float_parts(&self) -> (f64, f64, f64) {
        match self {
            Scalar::Exact { re, im } => {
                let r = re.to_f64();
                let i = im.to_f64();
                (r, i, 4.0 * f64::EPSILON * (r.abs() + i.abs()))
            }
            Scalar::Float { re, im, tol } => (*re, *im, *tol),
        }
    }
}

fn exact_add(a: &Scalar, b: &Scalar) -> Option<Scalar> {
    match (a, b) {
        (Scalar::Exact { re: r1, im: i1 }, Scalar::Exact { re: r2, im: i2 }) => {
            Some(Scalar::Exact {
                re: r1.add(r2),
                im: i1.add(i2),
            })
        }
        _ => None,
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let Some(s) = exact_add(self, rhs) {
            return s;
        }
        let (a, b, t) = self.float_parts();
        let (c, d, u) = rhs.float_parts();
        Scalar::Float {
            re: a + c,
            im: b + d,
            tol: t + u,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re.neg(),
                im: im.neg(),
            },
            Scalar::Float { re, im, tol } => Scalar::Float {
                re: -re,
                im: -im,
                tol: *tol,
            },
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => Scalar::Exact {
                re: a.mul(c).sub(&b.mul(d)),
                im: a.mul(d).add(&b.mul(c)),
            },
            _ => {
                let (a, b, t) = self.float_parts();
                let (c, d, u) = rhs.float_parts();
                let z = Complex64::new(a, b) * Complex64::new(c, d);
                let na = (a * a + b * b).sqrt();
                let nc = (c * c + d * d).sqrt();
                Scalar::Float {
                    re: z.re,
                    im: z.im,
                    tol: na * u + nc * t + t * u,
                }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<Q> for Scalar {
    fn from(x: Q) -> Self {
        Scalar::rational(x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

/// `(cos 2πr, sin 2πr)`: exact when `r` is a rational multiple of 1/4,
/// float otherwise.
pub fn unit_turn(r: &Scalar) -> (Scalar, Scalar) {
    if let Some(x) = r.as_rational() {
        let four = &x * qi(4);
        if four.is_integer() {
            let k = four
                .to_integer()
                .mod_floor(&BigInt::from(4))
                .to_i64()
                .unwrap_or(0);
            let (c, s) = match k {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            return (Scalar::int(c), Scalar::int(s));
        }
    }
    let (re, im, tol) = r.float_parts();
    if im.abs() > tol {
        // Complex phases do not occur for real-valued data.
        let z = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * Complex64::new(re, im);
        let e = z.exp();
        let ei = (-z).exp();
        let c = (e + ei) * 0.5;
        let s = (e - ei) * Complex64::new(0.0, -0.5);
        let t = tol.max(f64::EPSILON) * 8.0 * e.norm().max(ei.norm());
        return (
            Scalar::Float {
                re: c.re,
                im: c.im,
                tol: t,
            },
            Scalar::Float {
                re: s.re,
                im: s.im,
                tol: t,
            },
        );
    }
    let reduced = re - re.floor();
    let angle = 2.0 * std::f64::consts::PI * reduced;
    let t = (2.0 * std::f64::consts::PI * tol).max(4.0 * f64::EPSILON);
    (
        Scalar::Float {
            re: angle.cos(),
            im: 0.0,
            tol: t,
        },
        Scalar::Float {
            re: angle.sin(),
            im: 0.0,
            tol: t,
        },
    )
}

impl fmt::Display for Scalar {
    /// Prints in the expression grammar; the imaginary unit is spelled
    /// `exp2pii(1/4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact { re, im } => {
                if im.is_zero() {
                    write!(f, "({re})")
                } else if re.is_zero() {
                    write!(f, "(exp2pii(1/4)*({im}))")
                } else {
                    write!(f, "({re} + exp2pii(1/4)*({im}))")
                }
            }
            Scalar::Float { re, im, .. } => {
                if *im == 0.0 {
                    write!(f, "({re:?})")
                } else {
                    write!(f, "({re:?} + exp2pii(1/4)*({im:?}))")
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Residue of a constant phase modulo 2π.
#[derive(Clone, Debug, PartialEq)]
pub enum Residue {
    /// `q·π` with `0 ≤ q < 2`.
    PiMultiple(Q),
    /// A float residue in `[0, 2π)` with its tolerance.
    Float { value: f64, tol: f64 },
    /// An exact constant with non-π components; never a multiple of 2π.
    Transcendental(f64),
}

impl Residue {
    pub fn of(c: &Scalar) -> Residue {
        let two_pi = 2.0 * std::f64::consts::PI;
        match c {
            Scalar::Exact { re, im } if im.is_zero() => match re.as_pi_multiple() {
                Some(x) => {
                    let two = qi(2);
                    let r = &x - (&x / &two).floor() * &two;
                    Residue::PiMultiple(r)
                }
                None => Residue::Transcendental(re.to_f64().rem_euclid(two_pi)),
            },
            Scalar::Exact { re, .. } => Residue::Transcendental(re.to_f64().rem_euclid(two_pi)),
            Scalar::Float { re, tol, .. } => Residue::Float {
                value: re.rem_euclid(two_pi),
                tol: *tol,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        let two_pi = 2.0 * std::f64::consts::PI;
        match self {
            Residue::PiMultiple(x) => x.is_zero(),
            Residue::Float { value, tol } => value.min(two_pi - value) <= *tol,
            Residue::Transcendental(_) => false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Residue::PiMultiple(x) => q_to_f64(x) * std::f64::consts::PI,
            Residue::Float { value, .. } => *value,
            Residue::Transcendental(v) => *v,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residue::PiMultiple(x) if x.is_zero() => write!(f, "0"),
            Residue::PiMultiple(x) if x.is_one() => write!(f, "pi"),
            Residue::PiMultiple(x) => write!(f, "{x}*pi"),
            Residue::Float { value, tol } => write!(f, "{value:e} (tol {tol:e})"),
            Residue::Transcendental(v) => write!(f, "{v:e} (exact, not a multiple of pi)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_poly_arithmetic_is_exact() {
        let a = PiPoly::monomial(q(1, 3), 1).add(&PiPoly::rational(q(2, 1)));
        let b = PiPoly::monomial(q(3, 1), -1);
        let prod = a.mul(&b);
        assert_eq!(
            prod,
            PiPoly::rational(qi(1)).add(&PiPoly::monomial(qi(6), -1))
        );
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn quarter_turns_are_exact() {
        let (c, s) = unit_turn(&Scalar::rational(q(3, 4)));
        assert_eq!(c, Scalar::int(0));
        assert_eq!(s, Scalar::int(-1));
        let (c, s) = unit_turn(&Scalar::rational(q(-5, 2)));
        assert_eq!((c, s), (Scalar::int(-1), Scalar::int(0)));
        let (c, _) = unit_turn(&Scalar::rational(q(1, 3)));
        assert!(!c.is_exact());
        assert!((c.real_f64() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn residues() {
        assert!(Residue::of(&Scalar::pi_multiple(qi(4))).is_zero());
        assert_eq!(
            Residue::of(&Scalar::pi_multiple(q(-1, 2))),
            Residue::PiMultiple(q(3, 2))
        );
        assert!(!Residue::of(&Scalar::int(1)).is_zero());
        assert!(Residue::of(&Scalar::float(2.0 * std::f64::consts::PI + 1e-12)).is_zero());
    }

    #[test]
    fn display_round_trips_through_text() {
        let p = PiPoly::monomial(q(-3, 2), 2)
            .add(&PiPoly::monomial(qi(2), -1))
            .add(&PiPoly::rational(q(1, 3)));
        assert_eq!(p.to_string(), "-3/2*pi^2 + 1/3 + 2/pi");
    }
}
