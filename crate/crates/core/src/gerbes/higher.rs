use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::cohomology::{is_coboundary_of, is_cocycle, GroupCochain};
use crate::forms::{integrate_path, integrate_path_symbolic, AffineSimplex, Form, PLPath};
use crate::magnetic::unit;
use crate::polytrig::scalar::{format_qvec, qvec_int, qvec_neg};
use crate::polytrig::{PolyTrig, Scalar, U1Function, Q};
use crate::report::{fmt_lattice, CheckItem, CheckReport};

use super::{GerbeData, GerbeError};

fn add_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Exponent of `g_i(v) = exp(i∫_{Δ¹(x;v)} A_i)`.
pub fn higher_section(g: &GerbeData, v: &[Q], i: &[i64]) -> Result<U1Function, GerbeError> {
    Ok(U1Function::new(
        AffineSimplex::delta1(v).integrate(&g.a_form(i))?,
    ))
}

/// `f_{i,j}(x) g_i(x) g_j(x + i) = g_{i+j}(x) f_{i,j}(x − v)` for each pair,
/// i.e. `θ_i(x) + θ_j(x+i) − θ_{i+j}(x) + φ_{i,j}(x) − φ_{i,j}(x−v) ∈ 2πℤ`.
pub fn check_higher_section(
    g: &GerbeData,
    v: &[Q],
    pairs: &[(Vec<i64>, Vec<i64>)],
) -> Result<CheckReport, GerbeError> {
    let items = pairs
        .par_iter()
        .map(|(i, j)| -> Result<CheckItem, GerbeError> {
            let ti = higher_section(g, v, i)?.into_exponent();
            let tj = higher_section(g, v, j)?.into_exponent();
            let tij = higher_section(g, v, &add_i(i, j))?.into_exponent();
            let phi = g.phi(i, j);
            let diff = ti
                .add(&tj.shift(&qvec_int(i)))
                .sub(&tij)
                .add(&phi)
                .sub(&phi.shift(&qvec_neg(v)));
            Ok(CheckItem::phase(
                format!(
                    "v={} i={} j={}",
                    format_qvec(v),
                    fmt_lattice(i),
                    fmt_lattice(j)
                ),
                &diff,
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CheckReport::new(
        "higher section",
        "f_{i,j}(x) g_i(x) g_j(x+i) = g_{i+j}(x) f_{i,j}(x-v)",
        items,
    ))
}

/// Exponent of `Π_{v,v'} = exp(−i∫_{Δ²(x;v',v)} B)`.
pub fn pi_isomorphism(g: &GerbeData, v: &[Q], v_prime: &[Q]) -> Result<U1Function, GerbeError> {
    Ok(U1Function::new(
        AffineSimplex::delta2(v_prime, v).integrate(g.b())?.neg(),
    ))
}

/// Exponent of `ω(u,v,w) = exp(i∫_{Δ³(x;w,v,u)} H)`.
pub fn omega_3cocycle(g: &GerbeData, u: &[Q], v: &[Q], w: &[Q]) -> Result<U1Function, GerbeError> {
    Ok(U1Function::new(
        AffineSimplex::delta3(w, v, u).integrate(&g.curvature())?,
    ))
}

/// `Π_{u,v+w} ∘ τ_{−u}^*Π_{v,w} = ω(u,v,w) Π_{u+v,w} ∘ Π_{u,v}` where
/// `τ_{−u}^*` evaluates at `x − u`.
pub fn pentagon_check(g: &GerbeData, u: &[Q], v: &[Q], w: &[Q]) -> Result<CheckItem, GerbeError> {
    let add = crate::polytrig::scalar::qvec_add;
    let lhs = pi_isomorphism(g, u, &add(v, w))?
        .into_exponent()
        .add(&pi_isomorphism(g, v, w)?.into_exponent().shift(&qvec_neg(u)));
    let rhs = omega_3cocycle(g, u, v, w)?
        .into_exponent()
        .add(pi_isomorphism(g, &add(u, v), w)?.exponent())
        .add(pi_isomorphism(g, u, v)?.exponent());
    Ok(CheckItem::phase(
        format!(
            "u={} v={} w={}",
            format_qvec(u),
            format_qvec(v),
            format_qvec(w)
        ),
        &lhs.sub(&rhs),
    ))
}

/// `Π_{v,v'}` relates the higher sections: for each lattice vector `i`,
/// `g_i(v)(x) g_i(v')(x − v) = g_i(v+v')(x) Π_{v,v'}(x) Π_{v,v'}(x + i)^{-1}`.
pub fn check_pi_intertwines(
    g: &GerbeData,
    v: &[Q],
    v_prime: &[Q],
    lattice: &[Vec<i64>],
) -> Result<CheckReport, GerbeError> {
    let add = crate::polytrig::scalar::qvec_add;
    let pi = pi_isomorphism(g, v, v_prime)?.into_exponent();
    let items = lattice
        .par_iter()
        .map(|i| -> Result<CheckItem, GerbeError> {
            let lhs = higher_section(g, v, i)?.into_exponent().add(
                &higher_section(g, v_prime, i)?
                    .into_exponent()
                    .shift(&qvec_neg(v)),
            );
            let rhs = higher_section(g, &add(v, v_prime), i)?
                .into_exponent()
                .sub(&pi.shift(&qvec_int(i)))
                .add(&pi);
            Ok(CheckItem::phase(
                format!(
                    "v={} v'={} i={}",
                    format_qvec(v),
                    format_qvec(v_prime),
                    fmt_lattice(i)
                ),
                &lhs.sub(&rhs),
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CheckReport::new(
        "Pi intertwines sections",
        "g_i(v) tau_v^*g_i(v') = g_i(v+v') Pi_{v,v'} (tau_i^*Pi_{v,v'})^-1",
        items,
    ))
}

/// `Π` as a group 2-cochain.
pub fn pi_cochain(g: &GerbeData) -> GroupCochain {
    let g = Arc::new(g.clone());
    let d = g.dim();
    GroupCochain::new(2, d, move |v| {
        pi_isomorphism(&g, &v[0], &v[1])
            .expect("dimensions checked")
            .into_exponent()
    })
}

/// `ω` as a group 3-cochain.
pub fn omega_cochain(g: &GerbeData) -> GroupCochain {
    let g = Arc::new(g.clone());
    let d = g.dim();
    GroupCochain::new(3, d, move |v| {
        omega_3cocycle(&g, &v[0], &v[1], &v[2])
            .expect("dimensions checked")
            .into_exponent()
    })
}

/// `δω = 1` on 4-tuples, plus `ω = δΠ` on the leading triples of each tuple.
pub fn omega_cocycle_check(g: &GerbeData, quadruples: &[Vec<Vec<Q>>]) -> CheckReport {
    let omega = omega_cochain(g);
    let mut report = is_cocycle(&omega, quadruples);
    let triples: Vec<Vec<Vec<Q>>> = quadruples.iter().map(|t| t[..3].to_vec()).collect();
    let exact = is_coboundary_of(&omega, &pi_cochain(g), &triples);
    report.items.extend(exact.items.into_iter().map(|mut i| {
        i.label = format!("omega = delta Pi at {}", i.label);
        i
    }));
    report.passed = report.items.iter().all(|i| i.passed);
    report.identity = "delta omega = 1 ; omega = delta Pi".into();
    report
}

/// `∫_γ ι_{V'} ι_V H`.
pub fn transgress(
    g: &GerbeData,
    path: &PLPath,
    v: &[Q],
    v_prime: &[Q],
) -> Result<Scalar, GerbeError> {
    let h = g.curvature();
    let form = h.interior(v)?.interior(v_prime)?;
    Ok(integrate_path(&form, path)?)
}

fn directional(f: &PolyTrig, v: &[Q]) -> PolyTrig {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(PolyTrig::zero(f.dim()), |acc, (a, c)| {
            acc.add(&f.partial(a).scale_q(c))
        })
}

/// For a loop `γ`, the translation parameter `x` and
/// `a_V(x) = ∫_{γ+x} ι_V B`: `V'·∇a_V − V·∇a_{V'} = ∫_{γ+x} ι_V ι_{V'} H`.
pub fn transgression_curvature_check(
    g: &GerbeData,
    loop_: &PLPath,
    v: &[Q],
    v_prime: &[Q],
) -> Result<CheckItem, GerbeError> {
    if !loop_.is_closed() {
        return Err(GerbeError::Dimension(format!(
            "path from {} to {} is not closed",
            format_qvec(loop_.start()),
            format_qvec(loop_.end())
        )));
    }
    let a_v = integrate_path_symbolic(&g.b().interior(v)?, loop_)?;
    let a_vp = integrate_path_symbolic(&g.b().interior(v_prime)?, loop_)?;
    let curvature = directional(&a_v, v_prime).sub(&directional(&a_vp, v));
    let expected = integrate_path_symbolic(&g.curvature().interior(v_prime)?.interior(v)?, loop_)?;
    let diff = curvature.sub(&expected);
    Ok(CheckItem::exact(
        format!("V={} V'={}", format_qvec(v), format_qvec(v_prime)),
        &diff,
    ))
}

/// `∫_{Δ²} dι_V B = V·∇_x ∫_{Δ²} B − ∫_{Δ²} ι_V H` on `Δ²(x;v',v)`.
pub fn lie_decomposition_check(
    g: &GerbeData,
    v_prime: &[Q],
    v: &[Q],
    field: &[Q],
) -> Result<CheckItem, GerbeError> {
    let s = AffineSimplex::delta2(v_prime, v);
    let lhs = s.integrate(&g.b().interior(field)?.d())?;
    let flux = s.integrate(g.b())?;
    let rhs = directional(&flux, field).sub(&s.integrate(&g.curvature().interior(field)?)?);
    Ok(CheckItem::exact(
        format!(
            "V={} v'={} v={}",
            format_qvec(field),
            format_qvec(v_prime),
            format_qvec(v)
        ),
        &lhs.sub(&rhs),
    ))
}

/// Replace `B` by `B + dΛ` for a periodic 1-form `Λ`: then
/// `Π' = Π·(δλ)^{-1}` with `λ(v) = exp(i∫_{Δ¹(x;v)} Λ)`, and `ω' = ω`.
pub fn b_gauge_check(
    g: &GerbeData,
    lambda: &Form,
    pairs: &[Vec<Vec<Q>>],
    triples: &[Vec<Vec<Q>>],
) -> Result<CheckReport, GerbeError> {
    if lambda.dim() != g.dim() || lambda.degree() != 1 {
        return Err(GerbeError::Dimension(
            "gauge parameter must be a 1-form on ℝ^d".into(),
        ));
    }
    for axis in 0..g.dim() {
        let e = qvec_int(&unit(g.dim(), axis));
        if !lambda
            .shift(&e)
            .sub(lambda)
            .components()
            .all(|(_, f)| f.is_negligible())
        {
            return Err(GerbeError::NotPeriodic(lambda.to_string()));
        }
    }
    let gauged = g.clone().with_b(g.b().add(&lambda.d()))?;
    let (pi, pi2) = (pi_cochain(g), pi_cochain(&gauged));
    let lam = Arc::new(lambda.clone());
    let d = g.dim();
    let lambda_cochain = GroupCochain::new(1, d, move |v| {
        AffineSimplex::delta1(&v[0])
            .integrate(&lam)
            .expect("dimensions checked")
    });
    let mut items: Vec<CheckItem> =
        is_coboundary_of(&pi2.mul(&pi.inv()), &lambda_cochain.inv(), pairs)
            .items
            .into_iter()
            .map(|mut i| {
                i.label = format!("Pi' = Pi (delta lambda)^-1 at {}", i.label);
                i
            })
            .collect();
    let (om, om2) = (omega_cochain(g), omega_cochain(&gauged));
    items.extend(
        triples
            .par_iter()
            .map(|t| {
                let diff = om2.exponent(t).sub(&om.exponent(t));
                let label: Vec<String> = t.iter().map(|v| format_qvec(v)).collect();
                CheckItem::exact(format!("omega' = omega at {}", label.join(" ")), &diff)
            })
            .collect::<Vec<_>>(),
    );
    Ok(CheckReport::new(
        "B-field gauge",
        "B -> B + d Lambda: Pi -> Pi (delta lambda)^-1, omega unchanged",
        items,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::sample_tuples;
    use crate::gerbes::lattice_triples;
    use crate::magnetic::lattice_pairs;
    use crate::polytrig::{parse_expr, q, qi};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(x: &[(i64, i64)]) -> Vec<Q> {
        x.iter().map(|&(n, d)| q(n, d)).collect()
    }

    #[test]
    fn constant_h_section_and_membership() {
        let g = GerbeData::constant_h(qi(1));
        let s = higher_section(&g, &v(&[(1, 2), (1, 3), (1, 5)]), &[1, 0, 0]).unwrap();
        // 2π v3 (x2 − v2/2)
        assert_eq!(s.exponent(), &parse_expr("2*pi*1/5*(x2 - 1/6)", 3).unwrap());
        let rep =
            check_higher_section(&g, &v(&[(1, 2), (1, 3), (1, 5)]), &lattice_pairs(3, 1)).unwrap();
        assert!(rep.passed, "{:?}", rep.failures().next());
    }

    #[test]
    fn swapped_membership_identity_fails() {
        // f(x−v) g_i g_j(x+i) = g_{i+j} f(x) leaves 4πm j1 i2 v3.
        let g = GerbeData::constant_h(qi(1));
        let vv = v(&[(1, 2), (1, 3), (1, 5)]);
        let (i, j) = (vec![0, 1, 0], vec![1, 0, 0]);
        let t = |k: &[i64]| higher_section(&g, &vv, k).unwrap().into_exponent();
        let phi = g.phi(&i, &j);
        let diff = t(&i)
            .add(&t(&j).shift(&qvec_int(&i)))
            .sub(&t(&add_i(&i, &j)))
            .sub(&phi)
            .add(&phi.shift(&qvec_neg(&vv)));
        let item = CheckItem::phase("swapped", &diff);
        assert!(!item.passed);
        assert_eq!(item.residue, "4/5*pi");
    }

    #[test]
    fn omega_of_unit_vectors() {
        let g = GerbeData::constant_h(qi(1));
        let e = |a: usize| qvec_int(&unit(3, a));
        let w = omega_3cocycle(&g, &e(0), &e(1), &e(2)).unwrap();
        assert_eq!(
            w.exponent(),
            &PolyTrig::constant(3, Scalar::pi_multiple(q(-1, 3)))
        );
        let w = omega_3cocycle(&g, &e(2), &e(1), &e(0)).unwrap();
        assert_eq!(
            w.exponent(),
            &PolyTrig::constant(3, Scalar::pi_multiple(q(1, 3)))
        );
        // π m/3 · det[w|v|u]
        let (a, b, c) = (
            v(&[(1, 2), (0, 1), (1, 1)]),
            v(&[(1, 3), (2, 1), (0, 1)]),
            v(&[(0, 1), (-1, 4), (1, 1)]),
        );
        let det = crate::forms::form::det(&[
            vec![c[0].clone(), b[0].clone(), a[0].clone()],
            vec![c[1].clone(), b[1].clone(), a[1].clone()],
            vec![c[2].clone(), b[2].clone(), a[2].clone()],
        ]);
        assert_eq!(
            omega_3cocycle(&g, &a, &b, &c).unwrap().exponent(),
            &PolyTrig::constant(3, Scalar::pi_multiple(det / qi(3)))
        );
    }

    #[test]
    fn pentagon_and_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = GerbeData::constant_h(qi(2));
        let samples = sample_tuples(&mut rng, 3, 4, 20, &[1, 2, 3, 5]);
        for s in &samples {
            assert!(pentagon_check(&g, &s[0], &s[1], &s[2]).unwrap().passed);
        }
        assert!(omega_cocycle_check(&g, &samples).passed);
    }

    #[test]
    fn broken_omega_is_detected() {
        let g = GerbeData::constant_h(qi(1));
        let omega = omega_cochain(&g);
        let bad = GroupCochain::new(3, 3, move |t| {
            let k = &(&t[0][0] * &t[1][1]) * &t[2][2];
            omega.exponent(t).add(&PolyTrig::var(3, 0).scale_q(&k))
        });
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(!is_cocycle(&bad, &sample_tuples(&mut rng, 3, 4, 10, &[1, 2, 3])).passed);
    }

    #[test]
    fn planar_gerbe_is_associative() {
        let g = GerbeData::planar(
            2,
            parse_expr("sin(2*pi*x2) + 3*cos(2*pi*(x1 - x2))", 2).unwrap(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in sample_tuples(&mut rng, 2, 3, 10, &[1, 2, 4]) {
            assert!(omega_3cocycle(&g, &s[0], &s[1], &s[2])
                .unwrap()
                .exponent()
                .is_zero());
            assert!(pentagon_check(&g, &s[0], &s[1], &s[2]).unwrap().passed);
        }
    }

    #[test]
    fn transgression() {
        let g = GerbeData::constant_h(qi(1));
        let path = PLPath::straight(&[qi(0), qi(0), qi(0)], &[qi(0), qi(0), qi(1)]);
        let e = |a: usize| qvec_int(&unit(3, a));
        assert_eq!(
            transgress(&g, &path, &e(0), &e(1)).unwrap(),
            Scalar::pi_multiple(qi(2))
        );
        assert_eq!(
            transgress(&g, &path, &e(1), &e(0)).unwrap(),
            Scalar::pi_multiple(qi(-2))
        );
        let loop_ = PLPath::new(vec![
            v(&[(0, 1), (0, 1), (0, 1)]),
            v(&[(1, 2), (0, 1), (1, 4)]),
            v(&[(0, 1), (1, 1), (1, 2)]),
            v(&[(0, 1), (0, 1), (0, 1)]),
        ])
        .unwrap();
        let wavy = g
            .clone()
            .with_b(
                g.b().add(
                    &Form::from_components(
                        3,
                        2,
                        [(vec![0, 2], parse_expr("cos(2*pi*x2)", 3).unwrap())],
                    )
                    .unwrap(),
                ),
            )
            .unwrap();
        for gg in [&g, &wavy] {
            let item = transgression_curvature_check(
                gg,
                &loop_,
                &v(&[(1, 1), (1, 2), (0, 1)]),
                &v(&[(0, 1), (1, 4), (1, 1)]),
            )
            .unwrap();
            assert!(item.passed, "{item:?}");
        }
        assert!(transgression_curvature_check(&g, &path, &e(0), &e(1)).is_err());
    }

    #[test]
    fn lie_decomposition() {
        let g = GerbeData::constant_h(qi(1));
        let wavy = g
            .clone()
            .with_b(
                g.b().add(
                    &Form::from_components(
                        3,
                        2,
                        [(vec![0, 1], parse_expr("x3*sin(2*pi*x1)", 3).unwrap())],
                    )
                    .unwrap(),
                ),
            )
            .unwrap();
        for gg in [&g, &wavy] {
            let item = lie_decomposition_check(
                gg,
                &v(&[(1, 2), (0, 1), (1, 4)]),
                &v(&[(0, 1), (1, 4), (-1, 2)]),
                &v(&[(1, 1), (2, 1), (-1, 1)]),
            )
            .unwrap();
            assert!(item.passed, "{item:?}");
        }
    }

    #[test]
    fn b_gauge_invariance() {
        let g = GerbeData::constant_h(qi(1));
        let lambda = Form::one_form(vec![
            parse_expr("cos(2*pi*x2)", 3).unwrap(),
            PolyTrig::zero(3),
            parse_expr("sin(2*pi*(x1 + x2))", 3).unwrap(),
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pairs = sample_tuples(&mut rng, 3, 2, 8, &[1, 2, 4]);
        let triples = sample_tuples(&mut rng, 3, 3, 8, &[1, 2, 4]);
        let rep = b_gauge_check(&g, &lambda, &pairs, &triples).unwrap();
        assert!(rep.passed, "{:?}", rep.failures().next());
        let bad = Form::one_form(vec![
            parse_expr("x2", 3).unwrap(),
            PolyTrig::zero(3),
            PolyTrig::zero(3),
        ]);
        assert!(b_gauge_check(&g, &bad, &pairs, &triples).is_err());
        // The cocycle and connection conditions are untouched by the gauge change.
        let gauged = g.clone().with_b(g.b().add(&lambda.d())).unwrap();
        assert!(crate::gerbes::check_gerbe_connection(&gauged, 1).0.passed);
        assert!(crate::gerbes::check_gerbe_cocycle(&gauged, &lattice_triples(3, 1)[..100]).passed);
    }

    #[test]
    fn pi_intertwines_higher_sections() {
        let lattice = crate::magnetic::lattice_box(3, 1);
        let g = GerbeData::constant_h(qi(1));
        let (v, w) = (
            vec![q(1, 2), q(1, 3), q(1, 5)],
            vec![q(-1, 4), q(2, 3), q(1, 2)],
        );
        assert!(check_pi_intertwines(&g, &v, &w, &lattice).unwrap().passed);
        let wavy = g
            .clone()
            .with_b(
                g.b().add(
                    &Form::one_form(vec![
                        parse_expr("cos(2*pi*x3)", 3).unwrap(),
                        parse_expr("0", 3).unwrap(),
                        parse_expr("sin(2*pi*x1)", 3).unwrap(),
                    ])
                    .d(),
                ),
            )
            .unwrap();
        assert!(
            check_pi_intertwines(&wavy, &v, &w, &lattice)
                .unwrap()
                .passed
        );
        let flipped = g.clone().with_b(g.b().neg()).unwrap();
        assert!(
            !check_pi_intertwines(&flipped, &v, &w, &lattice)
                .unwrap()
                .passed
        );
    }
}
