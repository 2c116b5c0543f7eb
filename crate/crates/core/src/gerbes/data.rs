use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::forms::{AffineSimplex, Form};
use crate::magnetic::{lattice_box, lattice_pairs, substitute_lattice, unit};
use crate::polytrig::scalar::qvec_int;
use crate::polytrig::{winding_number, PolyTrig, Scalar, Q};
use crate::report::{fmt_lattice, CheckItem, CheckReport};

use super::GerbeError;

/// A gerbe on `T^d`: a closed-form 2-cocycle family `φ_{i,j}(x)` in the
/// variables `(x, i, j)`, a 1-form family `A_i = Σ_a a[a](x, i) dx_a` and a
/// curving `B` on ℝ^d.
#[derive(Clone, Debug, PartialEq)]
pub struct GerbeData {
    d: usize,
    phi: PolyTrig,
    a: Vec<PolyTrig>,
    b: Form,
}

fn two_pi(m: &Q) -> Scalar {
    Scalar::pi_multiple(m * Q::from_integer(2.into()))
}

impl GerbeData {
    pub fn new(d: usize, phi: PolyTrig, a: Vec<PolyTrig>, b: Form) -> Result<Self, GerbeError> {
        if phi.dim() != 3 * d {
            return Err(GerbeError::Dimension(format!(
                "cocycle needs {} variables (x, i, j), has {}",
                3 * d,
                phi.dim()
            )));
        }
        if a.len() != d || a.iter().any(|c| c.dim() != 2 * d) {
            return Err(GerbeError::Dimension(format!(
                "need {d} connection components in {} variables (x, i)",
                2 * d
            )));
        }
        if b.dim() != d || b.degree() != 2 {
            return Err(GerbeError::Dimension(
                "curving must be a 2-form on ℝ^d".into(),
            ));
        }
        Ok(GerbeData { d, phi, a, b })
    }

    /// Constant curvature `H = 2πm dx_1∧dx_2∧dx_3` on `T³`:
    /// `φ_{i,j} = −2πm j_1 i_2 x_3`, `A_i = 2πm i_1 x_2 dx_3`,
    /// `B = 2πm x_1 dx_2∧dx_3`.
    pub fn constant_h(m: Q) -> Self {
        let c = two_pi(&m);
        let phi = PolyTrig::monomial(9, vec![0, 0, 1, 0, 1, 0, 1, 0, 0], -c.clone());
        let a3 = PolyTrig::monomial(6, vec![0, 1, 0, 1, 0, 0], c.clone());
        let b = Form::from_components(
            3,
            2,
            [(vec![1, 2], PolyTrig::monomial(3, vec![1, 0, 0], c))],
        )
        .expect("valid 2-form");
        GerbeData {
            d: 3,
            phi,
            a: vec![PolyTrig::zero(6), PolyTrig::zero(6), a3],
            b,
        }
    }

    /// A gerbe on `T²` with `B = (2πn x_1 + f) dx_1∧dx_2`, `f` periodic,
    /// `A_i = 2πn i_1 x_1 dx_2` and `φ_{i,j} = −2πn i_1 j_1 x_2`.
    pub fn planar(n: i64, periodic: PolyTrig) -> Result<Self, GerbeError> {
        if periodic.dim() != 2 {
            return Err(GerbeError::Dimension(
                "planar curving must be a function of two variables".into(),
            ));
        }
        let c = two_pi(&Q::from_integer(n.into()));
        let phi = PolyTrig::monomial(6, vec![0, 1, 1, 0, 1, 0], -c.clone());
        let a2 = PolyTrig::monomial(4, vec![1, 0, 1, 0], c.clone());
        let f = PolyTrig::monomial(2, vec![1, 0], c).add(&periodic);
        let b = Form::from_components(2, 2, [(vec![0, 1], f)])?;
        let g = GerbeData {
            d: 2,
            phi,
            a: vec![PolyTrig::zero(4), a2],
            b,
        };
        for axis in 0..2 {
            let e = qvec_int(&unit(2, axis));
            if !periodic.shift(&e).sub(&periodic).is_negligible() {
                return Err(GerbeError::NotPeriodic(periodic.to_string()));
            }
        }
        Ok(g)
    }

    /// The trivial gerbe with zero connective structure.
    pub fn zero(d: usize) -> Self {
        GerbeData {
            d,
            phi: PolyTrig::zero(3 * d),
            a: vec![PolyTrig::zero(2 * d); d],
            b: Form::zero(d, 2),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn phi_family(&self) -> &PolyTrig {
        &self.phi
    }

    pub fn a_family(&self) -> &[PolyTrig] {
        &self.a
    }

    pub fn b(&self) -> &Form {
        &self.b
    }

    pub fn with_b(mut self, b: Form) -> Result<Self, GerbeError> {
        if b.dim() != self.d || b.degree() != 2 {
            return Err(GerbeError::Dimension(
                "curving must be a 2-form on ℝ^d".into(),
            ));
        }
        self.b = b;
        Ok(self)
    }

    /// `H = dB`.
    pub fn curvature(&self) -> Form {
        self.b.d()
    }

    /// `φ_{i,j}` as a function of `x`.
    pub fn phi(&self, i: &[i64], j: &[i64]) -> PolyTrig {
        substitute_lattice(&self.phi, self.d, &[i, j])
    }

    /// `A_i` as a 1-form on ℝ^d.
    pub fn a_form(&self, i: &[i64]) -> Form {
        Form::one_form(
            self.a
                .iter()
                .map(|c| substitute_lattice(c, self.d, &[i]))
                .collect(),
        )
    }

    /// All data pulled back along `x ↦ x + y`.
    pub fn translate(&self, y: &[Q]) -> GerbeData {
        let pad = |k: usize| {
            let mut v = y.to_vec();
            v.resize(k * self.d, Q::zero());
            v
        };
        GerbeData {
            d: self.d,
            phi: self.phi.shift(&pad(3)),
            a: self.a.iter().map(|c| c.shift(&pad(2))).collect(),
            b: self.b.shift(y),
        }
    }
}

fn add_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All triples with entries in `-r..=r`.
pub fn lattice_triples(d: usize, r: i64) -> Vec<[Vec<i64>; 3]> {
    let b = lattice_box(d, r);
    let mut out = Vec::with_capacity(b.len().pow(3));
    for i in &b {
        for j in &b {
            for k in &b {
                out.push([i.clone(), j.clone(), k.clone()]);
            }
        }
    }
    out
}

/// `φ_{i,j}(x) + φ_{i+j,k}(x) − φ_{i,j+k}(x) − φ_{j,k}(x + i) ∈ 2πℤ`.
pub fn check_gerbe_cocycle(g: &GerbeData, triples: &[[Vec<i64>; 3]]) -> CheckReport {
    let mut keys: Vec<(Vec<i64>, Vec<i64>)> = triples
        .iter()
        .flat_map(|[i, j, k]| {
            [
                (i.clone(), j.clone()),
                (add_i(i, j), k.clone()),
                (i.clone(), add_i(j, k)),
                (j.clone(), k.clone()),
            ]
        })
        .collect();
    keys.sort();
    keys.dedup();
    let table: HashMap<(Vec<i64>, Vec<i64>), PolyTrig> = keys
        .into_par_iter()
        .map(|(i, j)| {
            let f = g.phi(&i, &j);
            ((i, j), f)
        })
        .collect();
    let get = |i: Vec<i64>, j: Vec<i64>| &table[&(i, j)];
    let items = triples
        .par_iter()
        .map(|[i, j, k]| {
            let diff = get(i.clone(), j.clone())
                .add(get(add_i(i, j), k.clone()))
                .sub(get(i.clone(), add_i(j, k)))
                .sub(&get(j.clone(), k.clone()).shift(&qvec_int(i)));
            CheckItem::phase(
                format!(
                    "i={} j={} k={}",
                    fmt_lattice(i),
                    fmt_lattice(j),
                    fmt_lattice(k)
                ),
                &diff,
            )
        })
        .collect();
    CheckReport::new(
        "gerbe cocycle",
        "phi_{i,j}(x) + phi_{i+j,k}(x) - phi_{i,j+k}(x) - phi_{j,k}(x+i) in 2*pi*Z",
        items,
    )
}

/// On lattice vectors with entries in `-r..=r`:
/// `dφ_{i,j} = A_{i+j} − A_i − τ_i^*A_j`, `dA_i = τ_i^*B − B`, and
/// `τ_i^*H = H` for `H = dB`. Returns the report and `H`.
pub fn check_gerbe_connection(g: &GerbeData, r: i64) -> (CheckReport, Form) {
    let h = g.curvature();
    let vectors = lattice_box(g.d, r);
    let a_table: HashMap<Vec<i64>, Form> = {
        let mut keys: Vec<Vec<i64>> = lattice_box(g.d, 2 * r);
        keys.sort();
        keys.into_par_iter()
            .map(|i| {
                let a = g.a_form(&i);
                (i, a)
            })
            .collect()
    };
    let mut items: Vec<CheckItem> = lattice_pairs(g.d, r)
        .par_iter()
        .map(|(i, j)| {
            let lhs = Form::function(g.phi(i, j)).d();
            let rhs = a_table[&add_i(i, j)]
                .sub(&a_table[i])
                .sub(&a_table[j].shift(&qvec_int(i)));
            CheckItem::form(
                format!("d phi i={} j={}", fmt_lattice(i), fmt_lattice(j)),
                &lhs.sub(&rhs),
            )
        })
        .collect();
    items.extend(
        vectors
            .par_iter()
            .map(|i| {
                let diff = a_table[i].d().sub(&g.b.shift(&qvec_int(i)).sub(&g.b));
                CheckItem::form(format!("d A_{}", fmt_lattice(i)), &diff)
            })
            .collect::<Vec<_>>(),
    );
    for axis in 0..g.d {
        let e = qvec_int(&unit(g.d, axis));
        items.push(CheckItem::form(
            format!("tau_e{}^*H = H", axis + 1),
            &h.shift(&e).sub(&h),
        ));
    }
    (
        CheckReport::new(
            "gerbe connection",
            "d phi_{i,j} = A_{i+j} - A_i - tau_i^*A_j ; d A_i = tau_i^*B - B ; tau_i^*H = H",
            items,
        ),
        h,
    )
}

/// Periods `(1/2π)∫ H` over the coordinate unit 3-cubes at the origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FluxClass {
    /// `(a, b, c)` 1-based with `a < b < c`, and the integer period.
    pub faces: Vec<(Vec<usize>, i64)>,
}

impl FluxClass {
    pub fn is_trivial(&self) -> bool {
        self.faces.iter().all(|(_, k)| *k == 0)
    }
}

const PERMS3: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
];

/// `∫_{[0,1]^3} H` in the coordinate directions `axes`, via the six
/// simplices `x_{σ1} ≥ x_{σ2} ≥ x_{σ3}`.
fn cube_period(h: &Form, axes: [usize; 3]) -> Result<Scalar, GerbeError> {
    let d = h.dim();
    let origin = vec![Q::zero(); d];
    let mut total = Scalar::zero();
    for (perm, sign) in PERMS3 {
        let edges = perm.iter().map(|&p| qvec_int(&unit(d, axes[p]))).collect();
        let value = AffineSimplex::fixed(&origin, edges)
            .integrate(h)?
            .constant_term()
            .unwrap_or_else(Scalar::zero);
        total = if sign > 0 {
            &total + &value
        } else {
            &total - &value
        };
    }
    Ok(total)
}

/// The integer periods of `H`; fails on non-integer periods or when `H`
/// does not descend to `T^d`.
pub fn flux_class(g: &GerbeData) -> Result<FluxClass, GerbeError> {
    let h = g.curvature();
    for axis in 0..g.d {
        let e = qvec_int(&unit(g.d, axis));
        let diff = h.shift(&e).sub(&h);
        if !diff.components().all(|(_, f)| f.is_negligible()) {
            return Err(GerbeError::NotInvariant(format!(
                "tau_e{}^*H - H = {diff}",
                axis + 1
            )));
        }
    }
    let mut faces = Vec::new();
    for a in 0..g.d {
        for b in a + 1..g.d {
            for c in b + 1..g.d {
                let period = cube_period(&h, [a, b, c])?;
                let label = format!("({},{},{})", a + 1, b + 1, c + 1);
                let k = winding_number(&period)
                    .map_err(|value| GerbeError::NonIntegerFlux { face: label, value })?;
                faces.push((vec![a + 1, b + 1, c + 1], k));
            }
        }
    }
    Ok(FluxClass { faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytrig::{parse_expr, q, qi};

    #[test]
    fn constant_h_data() {
        let g = GerbeData::constant_h(qi(1));
        assert_eq!(g.phi(&[1, 0, 0], &[0, 1, 0]), PolyTrig::zero(3));
        assert_eq!(
            g.phi(&[0, 1, 0], &[1, 0, 0]),
            parse_expr("-2*pi*x3", 3).unwrap()
        );
        assert_eq!(
            g.a_form(&[1, 0, 0]),
            Form::one_form(vec![
                PolyTrig::zero(3),
                PolyTrig::zero(3),
                parse_expr("2*pi*x2", 3).unwrap()
            ])
        );
        assert_eq!(
            g.curvature(),
            Form::constant(3, &[0, 1, 2], Scalar::pi_multiple(qi(2)))
        );
    }

    #[test]
    fn constant_h_cocycle_and_connection() {
        for m in [1, 2, -1] {
            let g = GerbeData::constant_h(qi(m));
            let rep = check_gerbe_cocycle(&g, &lattice_triples(3, 1));
            assert_eq!(rep.items.len(), 19683);
            assert!(rep.passed);
            let (conn, h) = check_gerbe_connection(&g, 1);
            assert!(conn.passed, "{:?}", conn.failures().next());
            assert_eq!(
                h,
                Form::constant(3, &[0, 1, 2], Scalar::pi_multiple(qi(2 * m)))
            );
            assert_eq!(flux_class(&g).unwrap().faces, vec![(vec![1, 2, 3], m)]);
        }
    }

    #[test]
    fn half_flux_is_rejected() {
        let g = GerbeData::constant_h(q(1, 2));
        let rep = check_gerbe_cocycle(&g, &[[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]]);
        assert!(!rep.passed);
        assert_eq!(rep.items[0].residue, "pi");
        let err = flux_class(&g).unwrap_err();
        assert_eq!(err.to_string(), "non-integer period 1/2 on face (1,2,3)");
    }

    #[test]
    fn flux_is_translation_invariant() {
        let g = GerbeData::constant_h(qi(2));
        let t = g.translate(&[q(1, 3), q(-1, 2), q(3, 4)]);
        assert_eq!(flux_class(&t).unwrap(), flux_class(&g).unwrap());
        assert!(check_gerbe_connection(&t, 1).0.passed);
        assert!(check_gerbe_cocycle(&t, &lattice_triples(3, 1)[..500]).passed);
    }

    #[test]
    fn wavy_curving_keeps_the_period() {
        // B + cos(2πx_1) dx_2∧dx_3 has dB shifted by an exact periodic term.
        let g = GerbeData::constant_h(qi(1));
        let wave =
            Form::from_components(3, 2, [(vec![1, 2], parse_expr("sin(2*pi*x1)", 3).unwrap())])
                .unwrap();
        let g2 = g
            .with_b(GerbeData::constant_h(qi(1)).b().add(&wave))
            .unwrap();
        assert_eq!(flux_class(&g2).unwrap().faces, vec![(vec![1, 2, 3], 1)]);
    }

    #[test]
    fn non_closed_perturbation_fails_connection() {
        let g = GerbeData::constant_h(qi(1));
        let bad = g.b().add(
            &Form::from_components(3, 2, [(vec![0, 1], parse_expr("x3", 3).unwrap())]).unwrap(),
        );
        let g = g.with_b(bad).unwrap();
        assert!(!check_gerbe_connection(&g, 1).0.passed);
    }

    #[test]
    fn non_descending_curvature_is_an_error() {
        let b =
            Form::from_components(3, 2, [(vec![1, 2], parse_expr("x1^2", 3).unwrap())]).unwrap();
        let g = GerbeData::zero(3).with_b(b).unwrap();
        assert!(matches!(flux_class(&g), Err(GerbeError::NotInvariant(_))));
    }

    #[test]
    fn planar_and_zero() {
        let g = GerbeData::planar(3, parse_expr("cos(2*pi*(x1 + x2))", 2).unwrap()).unwrap();
        assert!(check_gerbe_cocycle(&g, &lattice_triples(2, 1)).passed);
        assert!(check_gerbe_connection(&g, 1).0.passed);
        assert!(flux_class(&g).unwrap().faces.is_empty());
        assert!(GerbeData::planar(1, parse_expr("x1", 2).unwrap()).is_err());
        let z = GerbeData::zero(4);
        assert!(check_gerbe_connection(&z, 1).0.passed);
        assert!(flux_class(&z).unwrap().is_trivial());
        assert_eq!(flux_class(&z).unwrap().faces.len(), 4);
    }
}
