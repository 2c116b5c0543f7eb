use crate::forms::{integrate_path_symbolic, BilinearCell, PLPath};
use crate::polytrig::scalar::{format_qvec, qvec_is_zero};
use crate::polytrig::{q, PolyTrig, Scalar, U1Function, Q};
use crate::report::{CheckItem, CheckReport};
use num_traits::Zero;
use rand::Rng;

use super::{LineData, MagneticError};

/// A path in the translation group starting at 0 together with a gauge
/// transformation `e^{iθ}` that descends to `T^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymElement {
    pub path: PLPath,
    pub gauge: U1Function,
}

impl SymElement {
    pub fn new(path: PLPath, gauge: U1Function) -> Result<Self, MagneticError> {
        if !qvec_is_zero(path.start()) {
            return Err(MagneticError::NotBased(format_qvec(path.start())));
        }
        if gauge.dim() != path.dim() {
            return Err(MagneticError::Dimension(
                "gauge and path dimensions differ".into(),
            ));
        }
        if !gauge.is_periodic() {
            return Err(MagneticError::NotPeriodic(gauge.exponent().to_string()));
        }
        Ok(SymElement { path, gauge })
    }

    pub fn identity(d: usize) -> Self {
        SymElement {
            path: PLPath::constant(&vec![Q::from_integer(0.into()); d]),
            gauge: U1Function::one(d),
        }
    }

    pub fn endpoint(&self) -> &[Q] {
        self.path.end()
    }

    /// Same endpoint and equal gauges (as U(1)-valued functions).
    pub fn same_as(&self, other: &Self) -> bool {
        self.endpoint() == other.endpoint() && self.gauge.equals(&other.gauge)
    }
}

/// `(γ, φ)·(γ', φ') = (γ + γ', e^{−i∫_{cell} dA} · φ(· + γ'(1)) · φ')`, where
/// the cell is swept by `x + γ'(t_1) + γ(t_2)`, `t_2 ≤ t_1`; its boundary is
/// `γ'_x`, then `γ` from `x + γ'(1)`, then `(γ + γ')_x` backwards.
pub fn sym_product(
    a: &SymElement,
    b: &SymElement,
    l: &LineData,
) -> Result<SymElement, MagneticError> {
    let curvature = l.curvature()?;
    let cell = BilinearCell::new(b.path.clone(), a.path.clone())?;
    let flux = cell.integrate(&curvature)?;
    let exponent = flux
        .neg()
        .add(a.gauge.shift(b.endpoint()).exponent())
        .add(b.gauge.exponent());
    Ok(SymElement {
        path: a.path.pointwise_sum(&b.path),
        gauge: U1Function::new(exponent),
    })
}

/// The gauge factor relating two paths with the same endpoint:
/// `(γ, φ) ∼ (α, T·φ)` with `T = exp(−i(∫_{γ_x} A − ∫_{α_x} A))`.
pub fn path_transport(
    l: &LineData,
    alpha: &PLPath,
    gamma: &PLPath,
) -> Result<U1Function, MagneticError> {
    if alpha.end() != gamma.end() || alpha.start() != gamma.start() {
        return Err(MagneticError::EndpointMismatch(
            format_qvec(alpha.end()),
            format_qvec(gamma.end()),
        ));
    }
    let a = l.connection()?;
    let along_gamma = integrate_path_symbolic(a, gamma)?;
    let along_alpha = integrate_path_symbolic(a, alpha)?;
    Ok(U1Function::new(along_alpha.sub(&along_gamma)))
}

/// Representative on the straight path to the same endpoint.
pub fn normal_form(e: &SymElement, l: &LineData) -> Result<SymElement, MagneticError> {
    let straight = PLPath::straight(e.path.start(), e.endpoint());
    let t = path_transport(l, &straight, &e.path)?;
    Ok(SymElement {
        path: straight,
        gauge: t.mul(&e.gauge),
    })
}

/// Both elements represent the same class, and products with every partner
/// (on either side) do as well.
pub fn check_equivalent_pair(
    e1: &SymElement,
    e2: &SymElement,
    partners: &[SymElement],
    l: &LineData,
) -> Result<CheckReport, MagneticError> {
    let same = |x: &SymElement, y: &SymElement| -> Result<bool, MagneticError> {
        Ok(normal_form(x, l)?.same_as(&normal_form(y, l)?))
    };
    let mut items = vec![CheckItem::new("classes agree", same(e1, e2)?, "")];
    for (n, b) in partners.iter().enumerate() {
        let right = same(&sym_product(e1, b, l)?, &sym_product(e2, b, l)?)?;
        items.push(CheckItem::new(
            format!("partner {n} on the right"),
            right,
            "",
        ));
        let left = same(&sym_product(b, e1, l)?, &sym_product(b, e2, l)?)?;
        items.push(CheckItem::new(format!("partner {n} on the left"), left, ""));
    }
    Ok(CheckReport::new(
        "extension equivalence",
        "(gamma, phi) ~ (alpha, hol(alpha, gamma) phi) is compatible with the product",
        items,
    ))
}

/// Replace `(γ, φ)` by `(α, hol(α,γ)·φ)` and check compatibility with the
/// product against the given partners.
pub fn sym_equivalence_check(
    gamma: &PLPath,
    alpha: &PLPath,
    gauge: &U1Function,
    partners: &[SymElement],
    l: &LineData,
) -> Result<CheckReport, MagneticError> {
    let e1 = SymElement::new(gamma.clone(), gauge.clone())?;
    let t = path_transport(l, alpha, gamma)?;
    let e2 = SymElement {
        path: alpha.clone(),
        gauge: t.mul(gauge),
    };
    check_equivalent_pair(&e1, &e2, partners, l)
}

/// `(ab)c = a(bc)` as an exact identity.
pub fn check_associativity(
    a: &SymElement,
    b: &SymElement,
    c: &SymElement,
    l: &LineData,
) -> Result<CheckItem, MagneticError> {
    let left = sym_product(&sym_product(a, b, l)?, c, l)?;
    let right = sym_product(a, &sym_product(b, c, l)?, l)?;
    let same_path =
        left.path.vertices() == right.path.vertices() && left.path.knots() == right.path.knots();
    let diff = left.gauge.exponent().sub(right.gauge.exponent());
    let mut item = CheckItem::exact("(ab)c = a(bc)", &diff);
    if !same_path {
        item.passed = false;
        item.residue = "paths differ".into();
    }
    Ok(item)
}

/// `1·a = a = a·1`.
pub fn check_unit(a: &SymElement, l: &LineData) -> Result<CheckItem, MagneticError> {
    let one = SymElement::identity(a.path.dim());
    let left = sym_product(&one, a, l)?;
    let right = sym_product(a, &one, l)?;
    let ok = left.endpoint() == a.endpoint()
        && right.endpoint() == a.endpoint()
        && left
            .gauge
            .exponent()
            .sub(a.gauge.exponent())
            .is_negligible()
        && right
            .gauge
            .exponent()
            .sub(a.gauge.exponent())
            .is_negligible();
    Ok(CheckItem::new("1 a = a = a 1", ok, ""))
}

/// A gauge exponent that descends to `T^d`: a few waves `c·cos/sin(2π m·x)`
/// plus `2π n·x` with small integer `m`, `n`.
pub fn random_periodic_gauge<R: Rng>(rng: &mut R, d: usize) -> U1Function {
    let mut theta = PolyTrig::zero(d);
    for _ in 0..rng.gen_range(1..=2) {
        let freq: Vec<Q> = (0..d)
            .map(|_| Q::from_integer(rng.gen_range(-1..=1).into()))
            .collect();
        let c = Scalar::rational(q(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
        theta = theta.add(&if rng.gen_bool(0.5) {
            PolyTrig::cos_wave(d, freq, c)
        } else {
            PolyTrig::sin_wave(d, freq, c)
        });
    }
    let winding: Vec<Scalar> = (0..d)
        .map(|_| Scalar::pi_multiple(Q::from_integer((2 * rng.gen_range(-1..=1)).into())))
        .collect();
    U1Function::new(theta.add(&PolyTrig::linear(&winding, Scalar::zero())))
}

/// A based path with `segments` quarter-rational segments and a random
/// periodic gauge.
pub fn random_sym_element<R: Rng>(rng: &mut R, d: usize, segments: usize) -> SymElement {
    let mut vertices = vec![vec![Q::zero(); d]];
    for _ in 0..segments {
        let last = vertices.last().expect("nonempty").clone();
        vertices.push(
            last.iter()
                .map(|x| x + q(rng.gen_range(-4..=4), 4))
                .collect(),
        );
    }
    let path = PLPath::new(vertices).expect("at least one vertex");
    SymElement {
        path,
        gauge: random_periodic_gauge(rng, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::integrate_path_symbolic;
    use crate::polytrig::parse_expr;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(x: &[(i64, i64)]) -> Vec<Q> {
        x.iter().map(|&(n, d)| q(n, d)).collect()
    }

    fn origin() -> Vec<Q> {
        p(&[(0, 1), (0, 1)])
    }

    #[test]
    fn straight_paths_product() {
        let n = 2;
        let l = LineData::landau(n);
        let (u, v) = (p(&[(1, 2), (3, 4)]), p(&[(-1, 4), (1, 1)]));
        let a = SymElement::new(PLPath::straight(&origin(), &u), U1Function::one(2)).unwrap();
        let b = SymElement::new(PLPath::straight(&origin(), &v), U1Function::one(2)).unwrap();
        let prod = sym_product(&a, &b, &l).unwrap();
        // πN(u1 v2 − u2 v1)
        let expected = (&(&u[0] * &v[1]) - &(&u[1] * &v[0])) * Q::from_integer(n.into());
        assert_eq!(
            prod.gauge.exponent(),
            &PolyTrig::constant(2, Scalar::pi_multiple(expected))
        );
        // Brute force: the cell flux equals the line integral around its boundary.
        let cell = BilinearCell::new(b.path.clone(), a.path.clone()).unwrap();
        let around =
            integrate_path_symbolic(l.connection().unwrap(), &cell.boundary_loop()).unwrap();
        assert_eq!(prod.gauge.exponent(), &around.neg());
    }

    #[test]
    fn unit_and_associativity() {
        let l = LineData::landau(1);
        let g = |s: &str| U1Function::new(parse_expr(s, 2).unwrap());
        let a = SymElement::new(
            PLPath::new(vec![origin(), p(&[(1, 2), (1, 4)]), p(&[(3, 4), (-1, 2)])]).unwrap(),
            g("cos(2*pi*x1) + 2*pi*x2"),
        )
        .unwrap();
        let b = SymElement::new(
            PLPath::new(vec![origin(), p(&[(-1, 4), (1, 1)]), p(&[(1, 4), (1, 4)])]).unwrap(),
            g("sin(2*pi*(x1 - x2))"),
        )
        .unwrap();
        let c = SymElement::new(
            PLPath::new(vec![origin(), p(&[(0, 1), (1, 2)]), p(&[(1, 1), (1, 1)])]).unwrap(),
            g("1/2 - 2*pi*x1"),
        )
        .unwrap();
        assert!(check_unit(&a, &l).unwrap().passed);
        assert!(check_associativity(&a, &b, &c, &l).unwrap().passed);
    }

    #[test]
    fn equivalence_and_falsification() {
        let l = LineData::landau(1);
        let end = p(&[(1, 2), (1, 2)]);
        let gamma = PLPath::straight(&origin(), &end);
        let alpha = PLPath::new(vec![origin(), p(&[(1, 2), (0, 1)]), end.clone()]).unwrap();
        let gauge = U1Function::new(parse_expr("cos(2*pi*x2)", 2).unwrap());
        let partner = SymElement::new(
            PLPath::straight(&origin(), &p(&[(1, 4), (-3, 4)])),
            U1Function::one(2),
        )
        .unwrap();
        let rep = sym_equivalence_check(&gamma, &alpha, &gauge, std::slice::from_ref(&partner), &l)
            .unwrap();
        assert!(rep.passed, "{rep:?}");

        let e1 = SymElement::new(gamma.clone(), gauge.clone()).unwrap();
        let flipped = path_transport(&l, &alpha, &gamma).unwrap().inv();
        let e2 = SymElement {
            path: alpha,
            gauge: flipped.mul(&gauge),
        };
        assert!(
            !check_equivalent_pair(&e1, &e2, &[partner], &l)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn random_elements_associate() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let l = LineData::landau(1);
        for _ in 0..5 {
            let (a, b, c) = (
                random_sym_element(&mut rng, 2, 2),
                random_sym_element(&mut rng, 2, 2),
                random_sym_element(&mut rng, 2, 2),
            );
            assert!(a.gauge.is_periodic());
            assert!(check_associativity(&a, &b, &c, &l).unwrap().passed);
            assert!(check_unit(&a, &l).unwrap().passed);
        }
    }

    #[test]
    fn rejects_non_periodic_gauge() {
        let path = PLPath::straight(&origin(), &p(&[(1, 1), (0, 1)]));
        assert!(SymElement::new(path, U1Function::new(parse_expr("pi*x1", 2).unwrap())).is_err());
    }
}
