//! Multivariate polynomial-times-trigonometric expressions.
//!
//! A [`PolyTrig`] is a finite sum `Σ c · x^α · w(2π k·x)` with `w ∈ {cos, sin}`,
//! stored in the real trigonometric basis. The frequency `k` of a stored term
//! is zero (pure polynomial, `w = cos`) or lexicographically positive.
//! Coefficients are [`Scalar`]s, so complex-valued functions are allowed; the
//! geometric data of this crate (phases, forms) is always real.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::affine::AffineMap;
use super::scalar::{q_to_f64, qi, unit_turn, Scalar, Q};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyTrigError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("pullback produces non-integer frequency {0}")]
    NonIntegerFrequency(String),
    #[error("variable index {index} out of range for dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },
    #[error("expression still depends on variable x{0}")]
    DependsOnVariable(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wave {
    Cos,
    Sin,
}

/// Basis element `x^powers · wave(2π freq·x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub powers: Vec<u32>,
    pub freq: Vec<Q>,
    pub wave: Wave,
}

impl Monomial {
    pub fn is_constant(&self) -> bool {
        self.powers.iter().all(|&p| p == 0) && self.freq.iter().all(Zero::is_zero)
    }

    fn has_frequency(&self) -> bool {
        self.freq.iter().any(|k| !k.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyTrig {
    dim: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

fn lex_negative(freq: &[Q]) -> bool {
    freq.iter()
        .find(|k| !k.is_zero())
        .is_some_and(|k| k.is_negative())
}

impl PolyTrig {
    pub fn zero(dim: usize) -> Self {
        PolyTrig {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut p = Self::zero(dim);
        p.push(vec![0; dim], vec![Q::zero(); dim], Wave::Cos, c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Scalar::one())
    }

    /// The coordinate function `x_a` (0-based `a`).
    pub fn var(dim: usize, a: usize) -> Self {
        let mut powers = vec![0; dim];
        powers[a] = 1;
        let mut p = Self::zero(dim);
        p.push(powers, vec![Q::zero(); dim], Wave::Cos, Scalar::one());
        p
    }

    /// `c · x^powers`.
    pub fn monomial(dim: usize, powers: Vec<u32>, c: Scalar) -> Self {
        let mut p = Self::zero(dim);
        p.push(powers, vec![Q::zero(); dim], Wave::Cos, c);
        p
    }

    /// `c · cos(2π k·x)`.
    pub fn cos_wave(dim: usize, freq: Vec<Q>, c: Scalar) -> Self {
        let mut p = Self::zero(dim);
        p.push(vec![0; dim], freq, Wave::Cos, c);
        p
    }

    /// `c · sin(2π k·x)`.
    pub fn sin_wave(dim: usize, freq: Vec<Q>, c: Scalar) -> Self {
        let mut p = Self::zero(dim);
        p.push(vec![0; dim], freq, Wave::Sin, c);
        p
    }

    /// `e^{2πi k·x}` in the real basis.
    pub fn character(dim: usize, freq: Vec<Q>) -> Self {
        let mut p = Self::cos_wave(dim, freq.clone(), Scalar::one());
        p.push(vec![0; dim], freq, Wave::Sin, Scalar::imag_unit());
        p
    }

    /// Affine function `Σ coeffs_a x_a + constant`.
    pub fn linear(coeffs: &[Scalar], constant: Scalar) -> Self {
        let dim = coeffs.len();
        let mut p = Self::constant(dim, constant);
        for (a, c) in coeffs.iter().enumerate() {
            let mut powers = vec![0; dim];
            powers[a] = 1;
            p.push(powers, vec![Q::zero(); dim], Wave::Cos, c.clone());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exactly zero (no stored terms).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Scalar::is_exact)
    }

    /// Largest tolerance carried by any float coefficient.
    pub fn tolerance(&self) -> f64 {
        self.terms
            .values()
            .map(Scalar::tolerance)
            .fold(0.0, f64::max)
    }

    /// All coefficients real (exactly for tier E, within tolerance for tier F).
    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn real_part(&self) -> PolyTrig {
        self.map_coeffs(|c| c.real_part())
    }

    pub fn imag_part(&self) -> PolyTrig {
        self.map_coeffs(|c| c.imag_part())
    }

    /// Insert a term, normalizing the frequency sign and merging duplicates.
    pub fn push(&mut self, powers: Vec<u32>, mut freq: Vec<Q>, wave: Wave, mut c: Scalar) {
        debug_assert_eq!(powers.len(), self.dim);
        debug_assert_eq!(freq.len(), self.dim);
        if freq.iter().all(Zero::is_zero) {
            if wave == Wave::Sin {
                return;
            }
        } else if lex_negative(&freq) {
            for k in freq.iter_mut() {
                *k = -&*k;
            }
            if wave == Wave::Sin {
                c = -c;
            }
        }
        if c.is_zero() {
            return;
        }
        let key = Monomial { powers, freq, wave };
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn push_mono(&mut self, m: Monomial, c: Scalar) {
        self.push(m.powers, m.freq, m.wave, c);
    }

    fn check_dim(&self, other: &Self) -> Result<(), PolyTrigError> {
        if self.dim != other.dim {
            Err(PolyTrigError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyTrigError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push_mono(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyTrigError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyTrigError> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                let powers: Vec<u32> = m1
                    .powers
                    .iter()
                    .zip(&m2.powers)
                    .map(|(a, b)| a + b)
                    .collect();
                if !m1.has_frequency() {
                    out.push(powers, m2.freq.clone(), m2.wave, c);
                    continue;
                }
                if !m2.has_frequency() {
                    out.push(powers, m1.freq.clone(), m1.wave, c);
                    continue;
                }
                let sum: Vec<Q> = m1.freq.iter().zip(&m2.freq).map(|(a, b)| a + b).collect();
                let diff: Vec<Q> = m1.freq.iter().zip(&m2.freq).map(|(a, b)| a - b).collect();
                let half = c.scale_q(&Q::new(1.into(), 2.into()));
                let neg_half = -&half;
                use Wave::*;
                // Product-to-sum identities with A = m1, B = m2.
                let (w_diff, c_diff, w_sum, c_sum) = match (m1.wave, m2.wave) {
                    (Cos, Cos) => (Cos, half.clone(), Cos, half),
                    (Sin, Sin) => (Cos, half, Cos, neg_half),
                    (Sin, Cos) => (Sin, half.clone(), Sin, half),
                    (Cos, Sin) => (Sin, neg_half, Sin, half),
                };
                out.push(powers.clone(), diff, w_diff, c_diff);
                out.push(powers, sum, w_sum, c_sum);
            }
        }
        Ok(out)
    }

    /// Panicking `+` for same-dimension operands (internal use).
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("PolyTrig dimension mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("PolyTrig dimension mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("PolyTrig dimension mismatch")
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.push_mono(m.clone(), c * s);
        }
        out
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        self.scale(&Scalar::rational(s.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.dim);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.push_mono(m.clone(), f(c));
        }
        out
    }

    /// ∂/∂x_a (0-based).
    pub fn partial(&self, a: usize) -> Self {
        assert!(a < self.dim, "variable out of range");
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let p = m.powers[a];
            if p > 0 {
                let mut powers = m.powers.clone();
                powers[a] -= 1;
                out.push(powers, m.freq.clone(), m.wave, c.scale_q(&qi(p as i64)));
            }
            let k = &m.freq[a];
            if !k.is_zero() {
                // d/dx cos(2πk x) = -2πk sin, d/dx sin(2πk x) = 2πk cos.
                let omega = Scalar::pi_monomial(k * qi(2), 1);
                let (wave, coeff) = match m.wave {
                    Wave::Cos => (Wave::Sin, -(c * &omega)),
                    Wave::Sin => (Wave::Cos, c * &omega),
                };
                out.push(m.powers.clone(), m.freq.clone(), wave, coeff);
            }
        }
        out
    }

    /// An antiderivative in `x_a`; the constant of integration is not fixed.
    pub fn antiderivative_raw(&self, a: usize) -> Self {
        assert!(a < self.dim, "variable out of range");
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let k = &m.freq[a];
            if k.is_zero() {
                let mut powers = m.powers.clone();
                powers[a] += 1;
                let n = powers[a] as i64;
                out.push(
                    powers,
                    m.freq.clone(),
                    m.wave,
                    c.scale_q(&Q::new(1.into(), n.into())),
                );
                continue;
            }
            // Repeated integration by parts:
            //   ∫ t^n cos = t^n sin/ω − (n/ω) ∫ t^{n−1} sin
            //   ∫ t^n sin = −t^n cos/ω + (n/ω) ∫ t^{n−1} cos
            let inv_omega = Scalar::pi_monomial((k * qi(2)).recip(), -1);
            let mut factor = c.clone();
            let mut wave = m.wave;
            let mut n = m.powers[a];
            loop {
                let mut powers = m.powers.clone();
                powers[a] = n;
                match wave {
                    Wave::Cos => out.push(powers, m.freq.clone(), Wave::Sin, &factor * &inv_omega),
                    Wave::Sin => {
                        out.push(powers, m.freq.clone(), Wave::Cos, -(&factor * &inv_omega))
                    }
                }
                if n == 0 {
                    break;
                }
                let step = (&factor * &inv_omega).scale_q(&qi(n as i64));
                factor = match wave {
                    Wave::Cos => -step,
                    Wave::Sin => step,
                };
                wave = match wave {
                    Wave::Cos => Wave::Sin,
                    Wave::Sin => Wave::Cos,
                };
                n -= 1;
            }
        }
        out
    }

    /// The antiderivative in `x_a` that vanishes on `x_a = 0`.
    pub fn antiderivative(&self, a: usize) -> Self {
        let raw = self.antiderivative_raw(a);
        let at_zero = raw.substitute(a, &vec![Q::zero(); self.dim], &Scalar::zero());
        raw.sub(&at_zero)
    }

    /// Replace `x_a` by `Σ row_b x_b + constant` (the row entry for `a` itself
    /// is ignored). Frequencies may become non-integer.
    pub fn substitute(&self, a: usize, row: &[Q], constant: &Scalar) -> Self {
        let mut map = AffineMap::identity(self.dim);
        let mut r = row.to_vec();
        r[a] = Q::zero();
        map.set_row(a, r, constant.clone());
        self.pullback_unchecked(&map)
    }

    /// `∫_{lower}^{upper} f dx_a` with affine bounds in the other variables.
    pub fn definite_integral(
        &self,
        a: usize,
        lower: (&[Q], &Scalar),
        upper: (&[Q], &Scalar),
    ) -> Self {
        let raw = self.antiderivative_raw(a);
        let hi = raw.substitute(a, upper.0, upper.1);
        let lo = raw.substitute(a, lower.0, lower.1);
        hi.sub(&lo)
    }

    /// Substitution `f ∘ m` for an affine map `m: ℝ^n → ℝ^{dim}`; fails when a
    /// resulting frequency is not an integer vector.
    pub fn pullback(&self, map: &AffineMap) -> Result<Self, PolyTrigError> {
        let out = self.try_pullback_unchecked(map)?;
        for m in out.terms.keys() {
            if let Some(k) = m.freq.iter().find(|k| !k.is_integer()) {
                return Err(PolyTrigError::NonIntegerFrequency(k.to_string()));
            }
        }
        Ok(out)
    }

    pub fn try_pullback_unchecked(&self, map: &AffineMap) -> Result<Self, PolyTrigError> {
        if map.out_dim() != self.dim {
            return Err(PolyTrigError::DimensionMismatch {
                left: self.dim,
                right: map.out_dim(),
            });
        }
        Ok(self.pullback_unchecked(map))
    }

    /// Substitution allowing rational frequencies (used for integration along
    /// simplices whose edges are not integer vectors).
    pub fn pullback_unchecked(&self, map: &AffineMap) -> Self {
        assert_eq!(
            map.out_dim(),
            self.dim,
            "affine map codomain does not match"
        );
        let n = map.in_dim();
        let mut out = Self::zero(n);
        // Images of the coordinate functions and their powers, computed lazily.
        let mut images: Vec<Option<Vec<PolyTrig>>> = vec![None; self.dim];
        for (m, c) in &self.terms {
            let mut poly = PolyTrig::constant(n, c.clone());
            for (a, &p) in m.powers.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let cache =
                    images[a].get_or_insert_with(|| vec![PolyTrig::one(n), map.coordinate(a)]);
                while cache.len() <= p as usize {
                    let next = cache.last().unwrap().mul(&cache[1]);
                    cache.push(next);
                }
                poly = poly.mul(&cache[p as usize]);
            }
            if !m.has_frequency() {
                out = out.add(&poly);
                continue;
            }
            let mut freq = vec![Q::zero(); n];
            let mut phase = Scalar::zero();
            for (a, k) in m.freq.iter().enumerate() {
                if k.is_zero() {
                    continue;
                }
                for (b, l) in map.row(a).iter().enumerate() {
                    freq[b] += k * l;
                }
                phase = &phase + &map.offset(a).scale_q(k);
            }
            let (cp, sp) = unit_turn(&phase);
            let mut trig = PolyTrig::zero(n);
            let zero_powers = vec![0; n];
            // cos(θ+φ) = cosφ cosθ − sinφ sinθ ; sin(θ+φ) = sinφ cosθ + cosφ sinθ
            match m.wave {
                Wave::Cos => {
                    trig.push(zero_powers.clone(), freq.clone(), Wave::Cos, cp.clone());
                    trig.push(zero_powers, freq, Wave::Sin, -sp);
                }
                Wave::Sin => {
                    trig.push(zero_powers.clone(), freq.clone(), Wave::Cos, sp);
                    trig.push(zero_powers, freq, Wave::Sin, cp);
                }
            }
            out = out.add(&poly.mul(&trig));
        }
        out
    }

    /// `f(x + shift)`.
    pub fn shift(&self, shift: &[Q]) -> Self {
        self.pullback_unchecked(&AffineMap::translation(shift))
    }

    /// Evaluate at a rational point.
    pub fn eval_exact(&self, point: &[Q]) -> Scalar {
        let map = AffineMap::constant(point.iter().cloned().map(Scalar::rational).collect(), 0);
        self.pullback_unchecked(&map)
            .constant_term()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_c64();
            for (x, &p) in point.iter().zip(&m.powers) {
                v *= x.powi(p as i32);
            }
            let theta: f64 = 2.0
                * std::f64::consts::PI
                * m.freq
                    .iter()
                    .zip(point)
                    .map(|(k, x)| q_to_f64(k) * x)
                    .sum::<f64>();
            v *= match m.wave {
                Wave::Cos => theta.cos(),
                Wave::Sin => theta.sin(),
            };
            acc += v;
        }
        acc
    }

    /// The value if the expression is a constant (ignoring float terms below
    /// their tolerance); `None` otherwise.
    pub fn constant_term(&self) -> Option<Scalar> {
        let mut constant = Scalar::zero();
        for (m, c) in &self.terms {
            if m.is_constant() {
                constant = c.clone();
            } else if !c.is_negligible() {
                return None;
            }
        }
        Some(constant)
    }

    /// Every coefficient is zero up to its own tolerance.
    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(Scalar::is_negligible)
    }

    /// Equality up to the float tolerances carried by either side.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.sub(other).is_negligible()
    }

    pub fn is_constant(&self) -> bool {
        self.constant_term().is_some()
    }

    /// True when the expression does not involve `x_a`.
    pub fn independent_of(&self, a: usize) -> bool {
        self.terms
            .keys()
            .all(|m| m.powers[a] == 0 && m.freq[a].is_zero())
    }

    /// Drop trailing variables the expression does not depend on.
    pub fn truncate(&self, new_dim: usize) -> Result<Self, PolyTrigError> {
        if new_dim > self.dim {
            return Err(PolyTrigError::DimensionMismatch {
                left: self.dim,
                right: new_dim,
            });
        }
        for a in new_dim..self.dim {
            if !self.independent_of(a) {
                return Err(PolyTrigError::DependsOnVariable(a + 1));
            }
        }
        let mut out = Self::zero(new_dim);
        for (m, c) in &self.terms {
            out.push(
                m.powers[..new_dim].to_vec(),
                m.freq[..new_dim].to_vec(),
                m.wave,
                c.clone(),
            );
        }
        Ok(out)
    }

    /// Re-embed into `new_dim ≥ dim` variables, placing the current variables
    /// at positions `offset..offset+dim`.
    pub fn embed(&self, new_dim: usize, offset: usize) -> Self {
        assert!(offset + self.dim <= new_dim);
        let mut out = Self::zero(new_dim);
        for (m, c) in &self.terms {
            let mut powers = vec![0; new_dim];
            let mut freq = vec![Q::zero(); new_dim];
            powers[offset..offset + self.dim].copy_from_slice(&m.powers);
            freq[offset..offset + self.dim].clone_from_slice(&m.freq);
            out.push(powers, freq, m.wave, c.clone());
        }
        out
    }

    /// All frequencies are integer vectors (the expression is a genuine
    /// function on the torus directions it oscillates in).
    pub fn has_integer_frequencies(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.freq.iter().all(BigRational::is_integer))
    }

    /// Terms in the complex exponential basis: `(α, k, c)` for `c·x^α·e^{2πi k·x}`.
    pub fn exponential_terms(&self) -> Vec<(Vec<u32>, Vec<Q>, Scalar)> {
        let mut acc: BTreeMap<(Vec<u32>, Vec<Q>), Scalar> = BTreeMap::new();
        let half = Q::new(1.into(), 2.into());
        let i_half = Scalar::imag_unit().scale_q(&half);
        for (m, c) in &self.terms {
            let mut add = |freq: Vec<Q>, coeff: Scalar| {
                let key = (m.powers.clone(), freq);
                let entry = acc.entry(key).or_insert_with(Scalar::zero);
                *entry = &*entry + &coeff;
            };
            if !m.has_frequency() {
                add(m.freq.clone(), c.clone());
                continue;
            }
            let neg: Vec<Q> = m.freq.iter().map(|k| -k).collect();
            match m.wave {
                // cos θ = (e^{iθ} + e^{−iθ})/2
                Wave::Cos => {
                    add(m.freq.clone(), c.scale_q(&half));
                    add(neg, c.scale_q(&half));
                }
                // sin θ = −i/2 e^{iθ} + i/2 e^{−iθ}
                Wave::Sin => {
                    add(m.freq.clone(), -(c * &i_half));
                    add(neg, c * &i_half);
                }
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((p, k), c)| (p, k, c))
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.powers.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }
}

fn write_freq(f: &mut fmt::Formatter<'_>, freq: &[Q]) -> fmt::Result {
    let mut first = true;
    for (a, k) in freq.iter().enumerate() {
        if k.is_zero() {
            continue;
        }
        if first {
            if k.is_negative() {
                write!(f, "-")?;
            }
        } else if k.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let mag = k.abs();
        if mag.is_one() {
            write!(f, "x{}", a + 1)?;
        } else if mag.is_integer() {
            write!(f, "{}*x{}", mag, a + 1)?;
        } else {
            write!(f, "{}/{}*x{}", mag.numer(), mag.denom(), a + 1)?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyTrig {
    /// Prints in the expression grammar accepted by [`super::parse_expr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (a, &p) in m.powers.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", a + 1)?,
                    p => write!(f, "*x{}^{}", a + 1, p)?,
                }
            }
            if m.has_frequency() {
                let name = match m.wave {
                    Wave::Cos => "cos",
                    Wave::Sin => "sin",
                };
                write!(f, "*{name}(2*pi*(")?;
                write_freq(f, &m.freq)?;
                write!(f, "))")?;
            }
        }
        Ok(())
    }
}

/// Frequency of a monomial as integers, when it is integral.
pub fn integer_frequency(m: &Monomial) -> Option<Vec<i64>> {
    m.freq
        .iter()
        .map(|k| {
            if k.is_integer() {
                k.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytrig::scalar::q;

    fn x(d: usize, a: usize) -> PolyTrig {
        PolyTrig::var(d, a)
    }

    #[test]
    fn additive_inverse_and_square() {
        let x1 = x(2, 0);
        assert!(x1.add(&x1.neg()).is_zero());
        assert_eq!(
            x1.mul(&x1),
            PolyTrig::monomial(2, vec![2, 0], Scalar::one())
        );
    }

    #[test]
    fn characters_cancel() {
        let e = PolyTrig::character(2, vec![qi(1), qi(0)]);
        let e_bar = PolyTrig::character(2, vec![qi(-1), qi(0)]);
        assert_eq!(e.mul(&e_bar), PolyTrig::one(2));
    }

    #[test]
    fn derivative_examples() {
        // ∂₁(2πN x2 x1) = 2πN x2 with N = 3
        let f = PolyTrig::monomial(2, vec![1, 1], Scalar::pi_multiple(qi(6)));
        assert_eq!(
            f.partial(0),
            PolyTrig::monomial(2, vec![0, 1], Scalar::pi_multiple(qi(6)))
        );
        // ∂₁ cos 2πx1 = −2π sin 2πx1
        let c = PolyTrig::cos_wave(2, vec![qi(1), qi(0)], Scalar::one());
        assert_eq!(
            c.partial(0),
            PolyTrig::sin_wave(2, vec![qi(1), qi(0)], Scalar::pi_multiple(qi(-2)))
        );
        assert!(x(2, 0).partial(1).is_zero());
    }

    #[test]
    fn antiderivative_examples() {
        let one = PolyTrig::one(1);
        assert_eq!(one.antiderivative(0), x(1, 0));
        let t = x(1, 0);
        assert_eq!(
            t.antiderivative(0),
            PolyTrig::monomial(1, vec![2], Scalar::rational(q(1, 2)))
        );
        // ∫_0^t e^{2πis} ds = (e^{2πit} − 1)/(2πi) = sin(2πt)/(2π) + i(1 − cos 2πt)/(2π)
        let e = PolyTrig::character(1, vec![qi(1)]);
        let inv_2pi = Scalar::pi_monomial(q(1, 2), -1);
        let mut expected = PolyTrig::sin_wave(1, vec![qi(1)], inv_2pi.clone());
        expected = expected.add(&PolyTrig::constant(1, &Scalar::imag_unit() * &inv_2pi));
        expected = expected.add(&PolyTrig::cos_wave(
            1,
            vec![qi(1)],
            -(&Scalar::imag_unit() * &inv_2pi),
        ));
        assert_eq!(e.antiderivative(0), expected);
    }

    #[test]
    fn antiderivative_of_polynomial_times_wave_differentiates_back() {
        let f = PolyTrig::monomial(2, vec![3, 1], Scalar::rational(q(2, 3)))
            .mul(&PolyTrig::sin_wave(2, vec![q(3, 2), qi(-1)], Scalar::one()));
        assert_eq!(f.antiderivative(0).partial(0), f);
    }

    #[test]
    fn shifts() {
        assert_eq!(
            x(2, 0).shift(&[qi(1), qi(0)]),
            x(2, 0).add(&PolyTrig::one(2))
        );
        let e = PolyTrig::cos_wave(2, vec![qi(1), qi(0)], Scalar::one());
        assert_eq!(e.shift(&[qi(1), qi(0)]), e);
        assert_eq!(e.shift(&[q(1, 2), qi(0)]), e.neg());
    }

    #[test]
    fn constant_detection() {
        assert_eq!(
            PolyTrig::constant(2, Scalar::int(5)).constant_term(),
            Some(Scalar::int(5))
        );
        assert_eq!(PolyTrig::zero(2).constant_term(), Some(Scalar::zero()));
        assert_eq!(x(2, 0).constant_term(), None);
    }
}
