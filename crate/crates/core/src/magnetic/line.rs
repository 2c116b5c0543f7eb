use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::forms::{AffineSimplex, Form};
use crate::polytrig::scalar::{format_qvec, qvec_add, qvec_int, qvec_neg};
use crate::polytrig::{winding_number, AffineMap, PolyTrig, Scalar, U1Function, Q};
use crate::report::{fmt_lattice, CheckItem, CheckReport};

use super::MagneticError;

/// How the exponents `φ_i` of a ℤ^d 1-cocycle are given.
#[derive(Clone, Debug, PartialEq)]
pub enum CocycleFamily {
    /// One expression in `(x_1..x_d, i_1..i_d)` valid for every `i`.
    Closed(PolyTrig),
    /// `φ_{e_a}` for each basis vector; other `φ_i` follow from the cocycle
    /// rule along the word `e_1^{i_1} … e_d^{i_d}`.
    Generators(Vec<PolyTrig>),
}

/// A line bundle on `T^d`: transition exponents `φ_i` with
/// `f_i = e^{iφ_i}`, `ψ(x + i) = f_i(x) ψ(x)`, and an optional connection
/// 1-form `A` on ℝ^d.
#[derive(Clone, Debug, PartialEq)]
pub struct LineData {
    d: usize,
    cocycle: CocycleFamily,
    connection: Option<Form>,
}

/// `(x, i) ↦ ` substitution of a fixed lattice vector into a family.
pub(crate) fn substitute_lattice(family: &PolyTrig, d: usize, fixed: &[&[i64]]) -> PolyTrig {
    let out = d + d * fixed.len();
    debug_assert_eq!(family.dim(), out);
    let mut linear = vec![vec![Q::zero(); d]; out];
    let mut offset = vec![Scalar::zero(); out];
    for (a, row) in linear.iter_mut().enumerate().take(d) {
        row[a] = Q::from_integer(1.into());
    }
    for (g, v) in fixed.iter().enumerate() {
        for a in 0..d {
            offset[d + g * d + a] = Scalar::int(v[a]);
        }
    }
    family.pullback_unchecked(&AffineMap::new(d, linear, offset))
}

pub(crate) fn unit(d: usize, a: usize) -> Vec<i64> {
    let mut e = vec![0; d];
    e[a] = 1;
    e
}

impl LineData {
    pub fn new(
        d: usize,
        cocycle: CocycleFamily,
        connection: Option<Form>,
    ) -> Result<Self, MagneticError> {
        match &cocycle {
            CocycleFamily::Closed(f) if f.dim() != 2 * d => {
                return Err(MagneticError::Dimension(format!(
                    "closed cocycle needs {} variables, has {}",
                    2 * d,
                    f.dim()
                )))
            }
            CocycleFamily::Generators(g) if g.len() != d || g.iter().any(|f| f.dim() != d) => {
                return Err(MagneticError::Dimension(format!(
                    "need {d} generator exponents in {d} variables"
                )))
            }
            _ => {}
        }
        if let Some(a) = &connection {
            if a.dim() != d || a.degree() != 1 {
                return Err(MagneticError::Dimension(
                    "connection must be a 1-form on ℝ^d".into(),
                ));
            }
        }
        Ok(LineData {
            d,
            cocycle,
            connection,
        })
    }

    /// Flux-`n` bundle on `T²` with `φ_{e_1} = 0`, `φ_{e_2} = 2πn x_1` and
    /// `A = −2πn x_2 dx_1`.
    pub fn landau(n: i64) -> Self {
        let two_pi_n = Scalar::pi_multiple(Q::from_integer((2 * n).into()));
        let gens = vec![
            PolyTrig::zero(2),
            PolyTrig::monomial(2, vec![1, 0], two_pi_n.clone()),
        ];
        let a = Form::one_form(vec![
            PolyTrig::monomial(2, vec![0, 1], -two_pi_n),
            PolyTrig::zero(2),
        ]);
        LineData {
            d: 2,
            cocycle: CocycleFamily::Generators(gens),
            connection: Some(a),
        }
    }

    /// The same bundle with the closed-form cocycle `φ_i(x) = 2πn i_2 x_1`.
    pub fn landau_closed(n: i64) -> Self {
        let two_pi_n = Scalar::pi_multiple(Q::from_integer((2 * n).into()));
        let phi = PolyTrig::monomial(4, vec![1, 0, 0, 1], two_pi_n);
        let mut l = Self::landau(n);
        l.cocycle = CocycleFamily::Closed(phi);
        l
    }

    /// Trivial bundle with zero connection.
    pub fn trivial(d: usize) -> Self {
        LineData {
            d,
            cocycle: CocycleFamily::Generators(vec![PolyTrig::zero(d); d]),
            connection: Some(Form::zero(d, 1)),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn cocycle(&self) -> &CocycleFamily {
        &self.cocycle
    }

    pub fn with_connection(mut self, a: Option<Form>) -> Self {
        self.connection = a;
        self
    }

    pub fn connection(&self) -> Result<&Form, MagneticError> {
        self.connection
            .as_ref()
            .ok_or(MagneticError::MissingConnection)
    }

    /// `B = dA`.
    pub fn curvature(&self) -> Result<Form, MagneticError> {
        Ok(self.connection()?.d())
    }

    /// `φ_i` as a function of `x`.
    pub fn phi(&self, i: &[i64]) -> PolyTrig {
        match &self.cocycle {
            CocycleFamily::Closed(f) => substitute_lattice(f, self.d, &[i]),
            CocycleFamily::Generators(g) => {
                let mut acc = PolyTrig::zero(self.d);
                let mut p = vec![0i64; self.d];
                for a in 0..self.d {
                    for _ in 0..i[a].unsigned_abs() {
                        if i[a] > 0 {
                            // φ_{p+e_a}(x) = φ_p(x) + φ_{e_a}(x + p)
                            acc = acc.add(&g[a].shift(&qvec_int(&p)));
                            p[a] += 1;
                        } else {
                            // φ_{p−e_a}(x) = φ_p(x) − φ_{e_a}(x + p − e_a)
                            p[a] -= 1;
                            acc = acc.sub(&g[a].shift(&qvec_int(&p)));
                        }
                    }
                }
                acc
            }
        }
    }

    fn phi_table(
        &self,
        vectors: impl IntoIterator<Item = Vec<i64>>,
    ) -> HashMap<Vec<i64>, PolyTrig> {
        let mut keys: Vec<Vec<i64>> = vectors.into_iter().collect();
        keys.sort();
        keys.dedup();
        keys.into_par_iter()
            .map(|i| {
                let f = self.phi(&i);
                (i, f)
            })
            .collect()
    }
}

/// All pairs `(i, j)` with entries in `-r..=r`.
pub fn lattice_pairs(d: usize, r: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let box_ = lattice_box(d, r);
    let mut out = Vec::with_capacity(box_.len() * box_.len());
    for i in &box_ {
        for j in &box_ {
            out.push((i.clone(), j.clone()));
        }
    }
    out
}

/// All vectors in `{-r..=r}^d`.
pub fn lattice_box(d: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-r..=r).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

fn add_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `φ_i(x) + φ_j(x + i) − φ_{i+j}(x) ∈ 2πℤ` for each pair.
pub fn check_line_cocycle(l: &LineData, pairs: &[(Vec<i64>, Vec<i64>)]) -> CheckReport {
    let table = l.phi_table(
        pairs
            .iter()
            .flat_map(|(i, j)| [i.clone(), j.clone(), add_i(i, j)]),
    );
    let items = pairs
        .par_iter()
        .map(|(i, j)| {
            let diff = table[i]
                .add(&table[j].shift(&qvec_int(i)))
                .sub(&table[&add_i(i, j)]);
            CheckItem::phase(format!("i={} j={}", fmt_lattice(i), fmt_lattice(j)), &diff)
        })
        .collect();
    CheckReport::new(
        "line cocycle",
        "phi_i(x) + phi_j(x+i) - phi_{i+j}(x) in 2*pi*Z",
        items,
    )
}

/// `dφ_{e_a} = A − τ_{e_a}^*A` for every generator, and `τ_{e_a}^*B = B` for
/// `B = dA`. Returns the report and `B`.
pub fn check_connection(l: &LineData) -> Result<(CheckReport, Form), MagneticError> {
    let a = l.connection()?;
    let b = a.d();
    let mut items = Vec::new();
    for axis in 0..l.d {
        let e = unit(l.d, axis);
        let lhs = Form::function(l.phi(&e)).d();
        let rhs = a.sub(&a.shift(&qvec_int(&e)));
        items.push(CheckItem::form(
            format!("d phi_e{} = A - tau^*A", axis + 1),
            &lhs.sub(&rhs),
        ));
    }
    for axis in 0..l.d {
        let e = unit(l.d, axis);
        items.push(CheckItem::form(
            format!("tau_e{}^*B = B", axis + 1),
            &b.shift(&qvec_int(&e)).sub(&b),
        ));
    }
    let mut report = CheckReport::new(
        "line connection",
        "d phi_i = A - tau_i^*A ; tau_i^*B = B",
        items,
    );
    if a.components().any(|(_, f)| has_constant_term(f)) {
        report = report.with_note("A has a constant part; adding constant 1-forms leaves these identities unchanged (gauge freedom)");
    }
    Ok((report, b))
}

fn has_constant_term(f: &PolyTrig) -> bool {
    f.terms().any(|(m, c)| m.is_constant() && !c.is_zero())
}

/// Exponent of `s_A(v) = exp(−i∫_{Δ¹(x;v)} A)` as a function of `x`.
pub fn translation_section(l: &LineData, v: &[Q]) -> Result<U1Function, MagneticError> {
    let a = l.connection()?;
    let integral = AffineSimplex::delta1(v).integrate(a)?;
    Ok(U1Function::new(integral.neg()))
}

/// `θ(x + i) − θ(x) − φ_i(x) + φ_i(x − v) ∈ 2πℤ` for every generator, where
/// `θ` is the exponent of `s_A(v)`.
pub fn check_section_membership(l: &LineData, v: &[Q]) -> Result<CheckReport, MagneticError> {
    let theta = translation_section(l, v)?.into_exponent();
    let items = (0..l.d)
        .map(|axis| {
            let e = unit(l.d, axis);
            let phi = l.phi(&e);
            let diff = theta
                .shift(&qvec_int(&e))
                .sub(&theta)
                .sub(&phi)
                .add(&phi.shift(&qvec_neg(v)));
            CheckItem::phase(format!("v={} i=e{}", format_qvec(v), axis + 1), &diff)
        })
        .collect();
    Ok(CheckReport::new(
        "section membership",
        "s(v)(x+i) = f_i(x) f_i(x-v)^-1 s(v)(x)",
        items,
    ))
}

/// Exponent of `c(v, v') = exp(−i∫_{Δ²(x;v',v)} dA)`.
pub fn two_cocycle(l: &LineData, v: &[Q], v_prime: &[Q]) -> Result<U1Function, MagneticError> {
    let b = l.curvature()?;
    let integral = AffineSimplex::delta2(v_prime, v).integrate(&b)?;
    Ok(U1Function::new(integral.neg()))
}

/// `θ_s(v)(x) + θ_s(v')(x − v) − θ_s(v+v')(x) = θ_c(v,v')(x)`, i.e.
/// `s(v)·τ_v^*s(v') = c(v,v')·s(v+v')`.
pub fn verify_projective_relation(
    l: &LineData,
    v: &[Q],
    v_prime: &[Q],
) -> Result<CheckReport, MagneticError> {
    let sv = translation_section(l, v)?.into_exponent();
    let svp = translation_section(l, v_prime)?.into_exponent();
    let svv = translation_section(l, &qvec_add(v, v_prime))?.into_exponent();
    let c = two_cocycle(l, v, v_prime)?.into_exponent();
    let diff = sv.add(&svp.shift(&qvec_neg(v))).sub(&svv).sub(&c);
    let item = CheckItem::phase(
        format!("v={} v'={}", format_qvec(v), format_qvec(v_prime)),
        &diff,
    );
    Ok(CheckReport::new(
        "projective relation",
        "s(v) tau_v^*s(v') = c(v,v') s(v+v')",
        vec![item],
    ))
}

/// `(1/2π)∫ B` over each coordinate unit square at the origin, via the two
/// triangles `x_a ≥ x_b` and `x_b ≥ x_a`.
pub fn chern_numbers(l: &LineData) -> Result<Vec<(Vec<usize>, i64)>, MagneticError> {
    let b = l.curvature()?;
    let origin = vec![Q::zero(); l.d];
    let mut out = Vec::new();
    for a in 0..l.d {
        for c in a + 1..l.d {
            let (ea, ec) = (qvec_int(&unit(l.d, a)), qvec_int(&unit(l.d, c)));
            let upper =
                AffineSimplex::fixed(&origin, vec![ea.clone(), ec.clone()]).integrate(&b)?;
            let lower = AffineSimplex::fixed(&origin, vec![ec, ea]).integrate(&b)?;
            let period = upper
                .sub(&lower)
                .constant_term()
                .unwrap_or_else(Scalar::zero);
            let face = format!("({},{})", a + 1, c + 1);
            let k = winding_number(&period)
                .map_err(|value| MagneticError::NonIntegerFlux { face, value })?;
            out.push((vec![a + 1, c + 1], k));
        }
    }
    Ok(out)
}
