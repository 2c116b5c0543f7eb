//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_gerbe::cohomology::{
    is_coboundary_of, is_cocycle, random_vector, sample_tuples, GroupCochain,
};
use torus_gerbe::forms::selftest::random_simplex;
use torus_gerbe::forms::Form;
use torus_gerbe::forms::{stokes_selftest, PLPath};
use torus_gerbe::gerbes::{
    check_gerbe_cocycle, check_gerbe_connection, check_higher_section, flux_class, lattice_triples,
    omega_3cocycle, omega_cochain, pentagon_check, pi_cochain, GerbeData,
};
use torus_gerbe::hilbert::{
    admissible_pairs, cocycle_residual, geometric_cocycle, verify_all_pairs, ThetaBasis,
    COCYCLE_TOLERANCE,
};
use torus_gerbe::magnetic::{
    check_associativity, check_connection, check_equivalent_pair, check_line_cocycle,
    check_section_membership, check_unit, lattice_pairs, path_transport, random_periodic_gauge,
    random_sym_element, sym_equivalence_check, translation_section, two_cocycle,
    verify_projective_relation, CocycleFamily, LineData, SymElement,
};
use torus_gerbe::polytrig::{parse_expr, parse_with, q, qi, PolyTrig, Scalar, VarScheme, Q};

const DENOMINATORS: [i64; 6] = [1, 2, 3, 4, 5, 7];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed >= limit {
            out.passed = false;
            out.detail = format!("{}; over the {:?} budget", out.detail, limit);
        }
    }
    (out, elapsed)
}

fn stokes_suite() -> Outcome {
    match stokes_selftest(2024, 200, &[2, 3], &[1, 2, 3]) {
        Ok(rep) => outcome(
            rep.passed,
            format!(
                "{} pairs over k in 1..=3, d in 2..=3, all exact",
                rep.items.len()
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn landau() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for n in 1..=3i64 {
        let l = LineData::landau(n);
        if !check_line_cocycle(&l, &lattice_pairs(2, 2)).passed {
            failures.push(format!("N={n} cocycle"));
        }
        if !check_connection(&l).map(|(r, _)| r.passed).unwrap_or(false) {
            failures.push(format!("N={n} connection"));
        }
        let nq = qi(n);
        for _ in 0..50 {
            let v = random_vector(&mut rng, 2, 2, &DENOMINATORS);
            let w = random_vector(&mut rng, 2, 2, &DENOMINATORS);
            // s_A(v) exponent 2πN v_1 (x_2 − v_2/2).
            let expected_s = PolyTrig::linear(
                &[Scalar::zero(), Scalar::pi_multiple(qi(2) * &nq * &v[0])],
                Scalar::pi_multiple(-(&nq * &v[0] * &v[1])),
            );
            if translation_section(&l, &v).unwrap().exponent() != &expected_s {
                failures.push(format!("N={n} s_A({v:?})"));
            }
            // c(v, w) = exp(−iπN(w_1 v_2 − w_2 v_1)).
            let expected_c = PolyTrig::constant(
                2,
                Scalar::pi_multiple(-(&nq * (&w[0] * &v[1] - &w[1] * &v[0]))),
            );
            if two_cocycle(&l, &v, &w).unwrap().exponent() != &expected_c {
                failures.push(format!("N={n} c({v:?}, {w:?})"));
            }
            if !verify_projective_relation(&l, &v, &w).unwrap().passed {
                failures.push(format!("N={n} projective relation at {v:?}, {w:?}"));
            }
        }
    }
    let detail = if failures.is_empty() {
        "N=1..3: cocycle, connection, s_A and c closed forms, projective relation on 50 pairs each"
            .to_string()
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn operators() -> Outcome {
    let mut total = 0;
    for n in 1..=6 {
        match verify_all_pairs(n, COCYCLE_TOLERANCE) {
            Ok(rep) if rep.passed => total += rep.items.len(),
            Ok(rep) => {
                let f = rep.failures().next().unwrap();
                return outcome(false, format!("N={n}: {} residual {}", f.label, f.residue));
            }
            Err(e) => return outcome(false, e.to_string()),
        }
        let basis = ThetaBasis::new(n).unwrap();
        if !basis.validate(2 * n).passed {
            return outcome(
                false,
                format!("N={n}: basis sections are not quasi-periodic"),
            );
        }
    }
    outcome(
        true,
        format!("{total} admissible pairs for N=1..6 within {COCYCLE_TOLERANCE:e}"),
    )
}

fn pentagon() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in [1i64, 2] {
        let g = GerbeData::constant_h(qi(m));
        let triples = sample_tuples(&mut rng, 3, 3, 100, &DENOMINATORS);
        for t in &triples {
            let item = pentagon_check(&g, &t[0], &t[1], &t[2]).unwrap();
            if !item.passed {
                return outcome(
                    false,
                    format!("m={m}: pentagon at {} leaves {}", item.label, item.residue),
                );
            }
        }
        let e = |a: usize| (0..3).map(|b| qi((a == b) as i64)).collect::<Vec<Q>>();
        let omega = omega_3cocycle(&g, &e(0), &e(1), &e(2)).unwrap();
        let expected = PolyTrig::constant(3, Scalar::pi_multiple(q(-m, 3)));
        if omega.exponent() != &expected {
            return outcome(
                false,
                format!("m={m}: omega(e1,e2,e3) exponent {}", omega.exponent()),
            );
        }
        let quadruples = sample_tuples(&mut rng, 3, 4, 100, &DENOMINATORS);
        if !is_cocycle(&omega_cochain(&g), &quadruples).passed {
            return outcome(false, format!("m={m}: delta omega != 1"));
        }
    }
    outcome(true, "m=1,2: pentagon on 100+ triples, omega(e1,e2,e3) = exp(-i pi m/3), delta omega = 1 on 100+ quadruples")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn flux() -> Outcome {
    for m in [1i64, 2, -1, 3] {
        match flux_class(&GerbeData::constant_h(qi(m))) {
            Ok(c) if c.faces == vec![(vec![1, 2, 3], m)] => {}
            other => return outcome(false, format!("m={m}: {other:?}")),
        }
    }
    for n in 1..=3 {
        match torus_gerbe::magnetic::chern_numbers(&LineData::landau(n)) {
            Ok(c) if c == vec![(vec![1, 2], n)] => {}
            other => return outcome(false, format!("Landau N={n}: {other:?}")),
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_gerbe-check"))
        .args(["flux", "--config"])
        .arg(fixture("constant_h_half.toml"))
        .output()
        .expect("binary runs");
    let stderr = String::from_utf8_lossy(&out.stderr);
    let ok = out.status.code() == Some(3) && stderr.contains("non-integer period 1/2");
    outcome(
        ok,
        format!(
            "integer m give integer classes; m = 1/2 exits {:?}: {}",
            out.status.code(),
            stderr.trim()
        ),
    )
}

fn extension_product() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let l = LineData::landau(1);
    for k in 0..50 {
        let (a, b, c) = (
            random_sym_element(&mut rng, 2, 2),
            random_sym_element(&mut rng, 2, 2),
            random_sym_element(&mut rng, 2, 2),
        );
        if !check_associativity(&a, &b, &c, &l).unwrap().passed {
            return outcome(false, format!("triple {k} not associative"));
        }
        if !check_unit(&a, &l).unwrap().passed {
            return outcome(false, format!("element {k} not unital"));
        }
    }
    for k in 0..25 {
        let gamma = random_sym_element(&mut rng, 2, 2).path;
        let mid = random_vector(&mut rng, 2, 1, &[4]);
        let alpha = PLPath::new(vec![gamma.start().to_vec(), mid, gamma.end().to_vec()]).unwrap();
        let gauge = random_periodic_gauge(&mut rng, 2);
        let partners = [
            random_sym_element(&mut rng, 2, 2),
            random_sym_element(&mut rng, 2, 1),
        ];
        if !sym_equivalence_check(&gamma, &alpha, &gauge, &partners, &l)
            .unwrap()
            .passed
        {
            return outcome(false, format!("path pair {k} breaks the equivalence"));
        }
    }
    outcome(
        true,
        "Landau N=1: 50 associative and unital triples, 25 equivalent path pairs",
    )
}

fn falsification() -> Outcome {
    let mut caught = Vec::new();
    let mut missed = Vec::new();
    let mut expect_fail = |name: &str, failed: bool| {
        if failed {
            caught.push(name.to_string())
        } else {
            missed.push(name.to_string())
        }
    };

    // Line cocycle with the wrong sign against the Landau connection.
    let flipped = LineData::new(
        2,
        CocycleFamily::Generators(vec![PolyTrig::zero(2), parse_expr("-2*pi*x1", 2).unwrap()]),
        LineData::landau(1).connection().ok().cloned(),
    )
    .unwrap();
    expect_fail(
        "wrong-sign line cocycle",
        !check_connection(&flipped).unwrap().0.passed,
    );
    // Non-integer line transition.
    let broken = LineData::new(
        2,
        CocycleFamily::Closed(
            parse_with("pi*i1*i2", &VarScheme::new(&[('x', 2), ('i', 2)])).unwrap(),
        ),
        None,
    )
    .unwrap();
    expect_fail(
        "non-cocycle line data",
        !check_line_cocycle(&broken, &lattice_pairs(2, 1)).passed,
    );
    // Corrupted connection in the section identity.
    let bent = LineData::landau(2).with_connection(Some(Form::one_form(vec![
        parse_expr("-4*pi*x2 + x1*x2", 2).unwrap(),
        PolyTrig::zero(2),
    ])));
    expect_fail(
        "corrupted A",
        !check_section_membership(&bent, &[q(1, 2), q(1, 3)])
            .unwrap()
            .passed,
    );

    // Wrong-sign gerbe cocycle.
    let g = GerbeData::constant_h(qi(1));
    let wrong = GerbeData::new(
        3,
        g.phi_family().neg(),
        g.a_family().to_vec(),
        g.b().clone(),
    )
    .unwrap();
    expect_fail(
        "wrong-sign gerbe cocycle (connection)",
        !check_gerbe_connection(&wrong, 1).0.passed,
    );
    expect_fail(
        "wrong-sign gerbe cocycle (higher section)",
        !check_higher_section(&wrong, &[q(1, 2), q(1, 3), q(1, 5)], &lattice_pairs(3, 1))
            .unwrap()
            .passed,
    );
    // Half flux.
    let half = GerbeData::constant_h(q(1, 2));
    let rep = check_gerbe_cocycle(&half, &lattice_triples(3, 1));
    expect_fail(
        "half-flux cocycle",
        !rep.passed && rep.failures().any(|i| i.residue == "pi"),
    );
    expect_fail("half-flux class", flux_class(&half).is_err());
    // Dropped associator: Π alone does not associate when H ≠ 0.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let triples = sample_tuples(&mut rng, 3, 3, 20, &DENOMINATORS);
    expect_fail(
        "dropped omega",
        !is_coboundary_of(&GroupCochain::trivial(3, 3), &pi_cochain(&g), &triples).passed,
    );

    // Conjugated operator cocycle.
    let n = 3;
    let worst = admissible_pairs(n)
        .iter()
        .map(|(v, w)| {
            cocycle_residual(n, v, w, geometric_cocycle(n, v, w).unwrap().conj()).unwrap()
        })
        .fold(0.0f64, f64::max);
    expect_fail("conjugated operator cocycle", worst > 1e-3);

    // Inverted path transport in the extension.
    let l = LineData::landau(1);
    let origin = vec![qi(0), qi(0)];
    let end = vec![q(1, 2), q(1, 2)];
    let gamma = PLPath::straight(&origin, &end);
    let alpha = PLPath::new(vec![origin.clone(), vec![q(1, 2), qi(0)], end]).unwrap();
    let gauge = torus_gerbe::polytrig::U1Function::one(2);
    let e1 = SymElement::new(gamma.clone(), gauge.clone()).unwrap();
    let e2 = SymElement {
        path: alpha.clone(),
        gauge: path_transport(&l, &alpha, &gamma).unwrap().inv(),
    };
    let partner = SymElement::new(PLPath::straight(&origin, &[q(1, 4), q(-3, 4)]), gauge).unwrap();
    expect_fail(
        "inverted transport",
        !check_equivalent_pair(&e1, &e2, &[partner], &l)
            .unwrap()
            .passed,
    );

    // Stokes with the boundary orientation reversed.
    let mut r = ChaCha8Rng::seed_from_u64(19);
    let mut stokes_caught = false;
    for _ in 0..10 {
        let w = torus_gerbe::forms::selftest::random_form(&mut r, 2, 1);
        let s = random_simplex(&mut r, 2, 2);
        let lhs = s.integrate(&w.d()).unwrap();
        if !lhs.is_zero() {
            stokes_caught |= !lhs
                .add(&s.boundary().unwrap().integrate(&w, 0).unwrap())
                .is_zero();
        }
    }
    expect_fail("reversed boundary", stokes_caught);

    let detail = if missed.is_empty() {
        format!("{} corrupted inputs all rejected", caught.len())
    } else {
        format!("not rejected: {}", missed.join(", "))
    };
    outcome(missed.is_empty(), detail)
}

fn random_periodic(rng: &mut ChaCha8Rng) -> PolyTrig {
    let mut f = PolyTrig::zero(2);
    for _ in 0..rng.gen_range(1..=3) {
        let freq = vec![qi(rng.gen_range(-2..=2)), qi(rng.gen_range(-2..=2))];
        let c = Scalar::rational(q(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
        f = f.add(&if rng.gen_bool(0.5) {
            PolyTrig::cos_wave(2, freq, c)
        } else {
            PolyTrig::sin_wave(2, freq, c)
        });
    }
    f
}

fn planar() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut gerbes = vec![GerbeData::zero(2)];
    for n in -1..=2 {
        gerbes.push(GerbeData::planar(n, random_periodic(&mut rng)).unwrap());
    }
    for (k, g) in gerbes.iter().enumerate() {
        if !check_gerbe_connection(g, 1).0.passed
            || !check_gerbe_cocycle(g, &lattice_triples(2, 1)).passed
        {
            return outcome(false, format!("planar gerbe {k} is not valid data"));
        }
        let triples = sample_tuples(&mut rng, 2, 3, 40, &[1, 2, 4]);
        let omega = omega_cochain(g);
        if let Some(t) = triples.iter().find(|t| !omega.exponent(t).is_zero()) {
            return outcome(false, format!("planar gerbe {k}: omega({t:?}) != 1"));
        }
        // ω ≡ 1 turns the pentagon into δΠ = 1.
        if !is_coboundary_of(&GroupCochain::trivial(3, 2), &pi_cochain(g), &triples).passed {
            return outcome(false, format!("planar gerbe {k}: Pi is not associative"));
        }
        if let Some(t) = triples
            .iter()
            .find(|t| !pentagon_check(g, &t[0], &t[1], &t[2]).unwrap().passed)
        {
            return outcome(false, format!("planar gerbe {k}: pentagon fails at {t:?}"));
        }
    }
    outcome(
        true,
        format!(
            "{} planar gerbes: omega = 1 and Pi associates exactly",
            gerbes.len()
        ),
    )
}

fn main() {
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("Stokes suite", Some(Duration::from_secs(10)), stokes_suite),
        ("Landau reproduction", None, landau),
        (
            "operator cross-validation",
            Some(Duration::from_secs(30)),
            operators,
        ),
        ("gerbe pentagon", Some(Duration::from_secs(30)), pentagon),
        ("flux quantization", None, flux),
        ("extension product", None, extension_product),
        ("falsification controls", None, falsification),
        ("planar degeneration", None, planar),
    ];
    let mut all = true;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let (out, elapsed) = timed(*limit, f);
        all &= out.passed;
        println!(
            "criterion {} [{}] {name} ({:.2?}): {}",
            k + 1,
            if out.passed { "PASS" } else { "FAIL" },
            elapsed,
            out.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
