use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{is_coboundary_of, is_cocycle, random_vector, sample_tuples, GroupCochain};
use crate::forms::{stokes_selftest, PLPath};
use crate::gerbes::{
    check_gerbe_cocycle, check_gerbe_connection, check_higher_section, check_pi_intertwines,
    flux_class, higher_section, lattice_triples, omega_3cocycle, omega_cochain,
    omega_cocycle_check, pentagon_check, pi_cochain, pi_isomorphism, GerbeData, GerbeError,
};
use crate::hilbert::{
    geometric_cocycle, phase_table, verify_all_pairs, ThetaBasis, COCYCLE_TOLERANCE,
};
use crate::magnetic::{
    check_associativity, check_connection, check_line_cocycle, check_section_membership,
    check_unit, chern_numbers, lattice_box, lattice_pairs, random_periodic_gauge,
    random_sym_element, sym_equivalence_check, sym_product, translation_section, two_cocycle,
    verify_projective_relation, LineData, MagneticError,
};
use crate::polytrig::scalar::{format_qvec, qvec_int};
use crate::polytrig::{constant_mod_2pi, q, PolyTrig, Q};
use crate::report::{CheckItem, CheckReport};

use super::config::{Model, Scenario};
use super::{CliError, Command};

const DENOMINATORS: [i64; 6] = [1, 2, 3, 4, 5, 6];
const DEFAULT_SAMPLES: usize = 100;
const DEFAULT_ASSOC_SAMPLES: usize = 50;
const DEFAULT_EQUIVALENCE_SAMPLES: usize = 25;
const DEFAULT_STOKES_SAMPLES: usize = 200;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub tolerance: Option<f64>,
}

/// A named quantity: its exponent `θ` and the phase of `e^{iθ}` when `θ` is
/// constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Value {
    pub quantity: String,
    pub label: String,
    pub exponent: String,
    pub phase: Option<String>,
}

impl Value {
    fn of(quantity: &str, label: impl Into<String>, exponent: &PolyTrig) -> Self {
        Value {
            quantity: quantity.into(),
            label: label.into(),
            exponent: exponent.to_string(),
            phase: constant_mod_2pi(exponent).map(|r| r.to_string()),
        }
    }

    fn text(quantity: &str, label: impl Into<String>, text: impl Into<String>) -> Self {
        Value {
            quantity: quantity.into(),
            label: label.into(),
            exponent: text.into(),
            phase: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub scenario: Option<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    pub values: Vec<Value>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn value(&self, quantity: &str, label: &str) -> Option<&Value> {
        self.values
            .iter()
            .find(|v| v.quantity == quantity && v.label == label)
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Config(e.to_string()))?;
        w.write_record(["quantity", "label", "exponent", "phase"])
            .map_err(|e| CliError::Config(e.to_string()))?;
        for v in &self.values {
            w.write_record([
                &v.quantity,
                &v.label,
                &v.exponent,
                v.phase.as_deref().unwrap_or(""),
            ])
            .map_err(|e| CliError::Config(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_err(e: impl std::fmt::Display) -> CliError {
    CliError::Check(e.to_string())
}

fn magnetic_err(e: MagneticError) -> CliError {
    match e {
        MagneticError::MissingConnection | MagneticError::Dimension(_) => {
            CliError::Config(e.to_string())
        }
        MagneticError::NonIntegerFlux { .. } => CliError::Quantization(e.to_string()),
        other => CliError::Check(other.to_string()),
    }
}

fn gerbe_err(e: GerbeError) -> CliError {
    match e {
        GerbeError::NonIntegerFlux { .. } => CliError::Quantization(e.to_string()),
        GerbeError::Dimension(_) => CliError::Config(e.to_string()),
        other => CliError::Check(other.to_string()),
    }
}

/// Concatenate the items of several reports of the same identity.
fn merge(reports: Vec<CheckReport>) -> Option<CheckReport> {
    let mut it = reports.into_iter();
    let mut first = it.next()?;
    for r in it {
        first.items.extend(r.items);
        first.notes.extend(r.notes);
    }
    first.notes.dedup();
    first.passed = first.items.iter().all(|i| i.passed);
    Some(first)
}

fn unit_q(d: usize, a: usize) -> Vec<Q> {
    let mut e = vec![0i64; d];
    e[a] = 1;
    qvec_int(&e)
}

fn tuple_label(t: &[Vec<Q>]) -> String {
    t.iter()
        .map(|v| format_qvec(v))
        .collect::<Vec<_>>()
        .join(" ")
}

struct Ctx<'a> {
    scenario: Option<&'a Scenario>,
    rng: ChaCha8Rng,
    checks: Vec<CheckReport>,
    values: Vec<Value>,
    notes: Vec<String>,
}

impl Ctx<'_> {
    fn dim(&self) -> usize {
        self.scenario.map_or(0, |s| s.dim)
    }

    fn radius(&self) -> i64 {
        self.scenario.and_then(|s| s.checks.radius).unwrap_or(1)
    }

    fn samples(&self) -> usize {
        self.scenario
            .and_then(|s| s.checks.samples)
            .unwrap_or(DEFAULT_SAMPLES)
    }

    fn vectors(&mut self, fallback: usize) -> Vec<Vec<Q>> {
        let given = self
            .scenario
            .map(|s| s.checks.vectors.clone())
            .unwrap_or_default();
        if !given.is_empty() {
            return given;
        }
        let d = self.dim();
        (0..fallback)
            .map(|_| random_vector(&mut self.rng, d, 1, &DENOMINATORS))
            .collect()
    }

    /// Configured tuples, then `count` random ones (with degenerate extras).
    fn tuples(&mut self, len: usize, count: usize) -> (Vec<Vec<Vec<Q>>>, usize) {
        let s = self.scenario.expect("scenario present");
        let given = match len {
            2 => s.checks.pairs.clone(),
            3 => s.checks.triples.clone(),
            _ => Vec::new(),
        };
        let n_given = given.len();
        let mut all = given;
        all.extend(sample_tuples(
            &mut self.rng,
            s.dim,
            len,
            count,
            &DENOMINATORS,
        ));
        (all, n_given)
    }

    fn push(&mut self, report: Option<CheckReport>) {
        if let Some(r) = report {
            self.checks.push(r);
        }
    }
}

fn model(scenario: Option<&Scenario>) -> &Model {
    &scenario
        .expect("commands that need a scenario check for it")
        .model
}

fn gerbe_only(cmd: Command, scenario: Option<&Scenario>) -> Result<&GerbeData, CliError> {
    match model(scenario) {
        Model::Gerbe(g) => Ok(g),
        Model::Line(_) => Err(CliError::Config(format!(
            "`{}` needs a gerbe scenario",
            cmd.name()
        ))),
    }
}

fn line_only(cmd: Command, scenario: Option<&Scenario>) -> Result<&LineData, CliError> {
    match model(scenario) {
        Model::Line(l) => Ok(l),
        Model::Gerbe(_) => Err(CliError::Config(format!(
            "`{}` needs a line scenario",
            cmd.name()
        ))),
    }
}

/// Run one command. `scenario` may be `None` only for `operators` and
/// `stokes-selftest`.
pub fn run(
    cmd: Command,
    scenario: Option<&Scenario>,
    opts: &RunOptions,
) -> Result<Report, CliError> {
    if scenario.is_none() && !matches!(cmd, Command::Operators | Command::StokesSelftest) {
        return Err(CliError::Config(format!(
            "`{}` needs a scenario",
            cmd.name()
        )));
    }
    let mut ctx = Ctx {
        scenario,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        checks: Vec::new(),
        values: Vec::new(),
        notes: Vec::new(),
    };
    match cmd {
        Command::CheckCocycle => check_cocycle(&mut ctx),
        Command::CheckConnection => check_connection_cmd(&mut ctx)?,
        Command::Section => section(&mut ctx)?,
        Command::Twist2 => twist2(&mut ctx)?,
        Command::Twist3 => twist3(&mut ctx)?,
        Command::Pentagon => pentagon(&mut ctx, gerbe_only(cmd, scenario)?)?,
        Command::Flux => flux(&mut ctx)?,
        Command::SymProduct => sym(&mut ctx, line_only(cmd, scenario)?)?,
        Command::Cohomology => cohomology(&mut ctx)?,
        Command::Operators => operators(&mut ctx, opts)?,
        Command::StokesSelftest => stokes(&mut ctx, opts)?,
    }
    let Ctx {
        mut checks,
        values,
        notes,
        ..
    } = ctx;
    checks.sort_by(|a, b| a.check.cmp(&b.check));
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report {
        schema: 1,
        command: cmd.name().into(),
        scenario: scenario.map(|s| s.name.clone()),
        seed: opts.seed,
        tolerance: opts.tolerance,
        passed,
        checks,
        values,
        notes,
    })
}

fn check_cocycle(ctx: &mut Ctx) {
    let r = ctx.radius();
    let d = ctx.dim();
    let report = match model(ctx.scenario) {
        Model::Line(l) => check_line_cocycle(l, &lattice_pairs(d, r)),
        Model::Gerbe(g) => check_gerbe_cocycle(g, &lattice_triples(d, r)),
    };
    ctx.push(Some(report));
}

fn check_connection_cmd(ctx: &mut Ctx) -> Result<(), CliError> {
    let (report, curvature, name) = match model(ctx.scenario) {
        Model::Line(l) => {
            let (rep, b) = check_connection(l).map_err(magnetic_err)?;
            (rep, b, "B")
        }
        Model::Gerbe(g) => {
            let (rep, h) = check_gerbe_connection(g, ctx.radius());
            (rep, h, "H")
        }
    };
    ctx.values
        .push(Value::text(name, "curvature", curvature.to_string()));
    ctx.push(Some(report));
    Ok(())
}

fn section(ctx: &mut Ctx) -> Result<(), CliError> {
    let vectors = ctx.vectors(5);
    let d = ctx.dim();
    match model(ctx.scenario) {
        Model::Line(l) => {
            let mut reports = Vec::new();
            for v in &vectors {
                reports.push(check_section_membership(l, v).map_err(magnetic_err)?);
                let s = translation_section(l, v).map_err(magnetic_err)?;
                ctx.values
                    .push(Value::of("s", format_qvec(v), s.exponent()));
            }
            ctx.push(merge(reports));
        }
        Model::Gerbe(g) => {
            let pairs = lattice_pairs(d, ctx.radius());
            let mut reports = Vec::new();
            for v in &vectors {
                reports.push(check_higher_section(g, v, &pairs).map_err(gerbe_err)?);
                for a in 0..d {
                    let mut e = vec![0i64; d];
                    e[a] = 1;
                    let s = higher_section(g, v, &e).map_err(gerbe_err)?;
                    ctx.values.push(Value::of(
                        "g",
                        format!("v={} i=e{}", format_qvec(v), a + 1),
                        s.exponent(),
                    ));
                }
            }
            ctx.push(merge(reports));
        }
    }
    Ok(())
}

fn twist2(ctx: &mut Ctx) -> Result<(), CliError> {
    let count = ctx.samples();
    let (pairs, n_given) = ctx.tuples(2, count);
    let d = ctx.dim();
    let shown = n_given.max(1);
    match model(ctx.scenario) {
        Model::Line(l) => {
            let mut reports = Vec::new();
            for (k, p) in pairs.iter().enumerate() {
                reports.push(verify_projective_relation(l, &p[0], &p[1]).map_err(magnetic_err)?);
                if k < shown {
                    let c = two_cocycle(l, &p[0], &p[1]).map_err(magnetic_err)?;
                    ctx.values
                        .push(Value::of("c", tuple_label(p), c.exponent()));
                }
            }
            ctx.push(merge(reports));
        }
        Model::Gerbe(g) => {
            let lattice = lattice_box(d, ctx.radius());
            let mut reports = Vec::new();
            for (k, p) in pairs.iter().enumerate() {
                reports.push(check_pi_intertwines(g, &p[0], &p[1], &lattice).map_err(gerbe_err)?);
                if k < shown {
                    let pi = pi_isomorphism(g, &p[0], &p[1]).map_err(gerbe_err)?;
                    ctx.values
                        .push(Value::of("Pi", tuple_label(p), pi.exponent()));
                }
            }
            ctx.push(merge(reports));
        }
    }
    Ok(())
}

fn line_c_cochain(l: &LineData) -> Result<GroupCochain, CliError> {
    l.connection().map_err(magnetic_err)?;
    let l = Arc::new(l.clone());
    let d = l.dim();
    Ok(GroupCochain::new(2, d, move |v| {
        two_cocycle(&l, &v[0], &v[1])
            .expect("connection checked")
            .into_exponent()
    }))
}

fn line_s_cochain(l: &LineData) -> Result<GroupCochain, CliError> {
    l.connection().map_err(magnetic_err)?;
    let l = Arc::new(l.clone());
    let d = l.dim();
    Ok(GroupCochain::new(1, d, move |v| {
        translation_section(&l, &v[0])
            .expect("connection checked")
            .into_exponent()
    }))
}

fn default_triple(d: usize) -> Vec<Vec<Q>> {
    (0..3).map(|a| unit_q(d, a.min(d - 1))).collect()
}

fn twist3(ctx: &mut Ctx) -> Result<(), CliError> {
    let count = ctx.samples();
    let d = ctx.dim();
    match model(ctx.scenario) {
        Model::Line(l) => {
            let (triples, _) = ctx.tuples(3, count);
            let c = line_c_cochain(l)?;
            ctx.push(Some(is_cocycle(&c, &triples)));
        }
        Model::Gerbe(g) => {
            let (mut triples, n_given) = ctx.tuples(3, 0);
            triples.truncate(n_given);
            if triples.is_empty() && d >= 3 {
                triples.push(default_triple(d));
            }
            for t in &triples {
                let w = omega_3cocycle(g, &t[0], &t[1], &t[2]).map_err(gerbe_err)?;
                ctx.values
                    .push(Value::of("omega", tuple_label(t), w.exponent()));
            }
            let quadruples = sample_tuples(&mut ctx.rng, d, 4, count, &DENOMINATORS);
            ctx.push(Some(is_cocycle(&omega_cochain(g), &quadruples)));
        }
    }
    Ok(())
}

fn pentagon(ctx: &mut Ctx, g: &GerbeData) -> Result<(), CliError> {
    let count = ctx.samples();
    let d = ctx.dim();
    let (mut triples, n_given) = ctx.tuples(3, count);
    let mut shown: Vec<Vec<Vec<Q>>> = triples[..n_given].to_vec();
    if d >= 3 {
        let basis = default_triple(d);
        if !shown.contains(&basis) {
            shown.push(basis.clone());
            triples.push(basis);
        }
    }
    for t in &shown {
        let w = omega_3cocycle(g, &t[0], &t[1], &t[2]).map_err(gerbe_err)?;
        ctx.values
            .push(Value::of("omega", tuple_label(t), w.exponent()));
    }
    let items = triples
        .iter()
        .map(|t| pentagon_check(g, &t[0], &t[1], &t[2]))
        .collect::<Result<Vec<_>, _>>()
        .map_err(gerbe_err)?;
    ctx.push(Some(CheckReport::new(
        "pentagon",
        "Pi_{u,v+w} tau_{-u}^*Pi_{v,w} = omega(u,v,w) Pi_{u+v,w} Pi_{u,v}",
        items,
    )));
    if g.curvature().is_zero() {
        ctx.notes
            .push("H = 0: omega is identically 1 and the relation is plain associativity".into());
    }
    Ok(())
}

fn flux(ctx: &mut Ctx) -> Result<(), CliError> {
    match model(ctx.scenario) {
        Model::Line(l) => {
            let numbers = chern_numbers(l).map_err(magnetic_err)?;
            for (face, k) in &numbers {
                ctx.values.push(Value::text(
                    "c1",
                    format!("({},{})", face[0], face[1]),
                    k.to_string(),
                ));
            }
            ctx.push(Some(CheckReport::new(
                "flux quantization",
                "(1/2pi) integral of B over unit 2-faces is an integer",
                vec![CheckItem::new(
                    format!("{} faces", numbers.len()),
                    true,
                    "0",
                )],
            )));
        }
        Model::Gerbe(g) => match flux_class(g) {
            Ok(class) => {
                for (face, k) in &class.faces {
                    ctx.values.push(Value::text(
                        "flux",
                        format!("({},{},{})", face[0], face[1], face[2]),
                        k.to_string(),
                    ));
                }
                ctx.push(Some(CheckReport::new(
                    "flux quantization",
                    "(1/2pi) integral of H over unit 3-faces is an integer",
                    vec![CheckItem::new(
                        format!("{} faces", class.faces.len()),
                        true,
                        "0",
                    )],
                )));
                if class.faces.is_empty() {
                    ctx.notes
                        .push("fewer than three dimensions: no 3-faces".into());
                }
            }
            Err(GerbeError::NotInvariant(msg)) => ctx.push(Some(CheckReport::new(
                "flux quantization",
                "H descends to the torus",
                vec![CheckItem::new("translation invariance", false, msg)],
            ))),
            Err(e) => return Err(gerbe_err(e)),
        },
    }
    Ok(())
}

fn sym(ctx: &mut Ctx, l: &LineData) -> Result<(), CliError> {
    l.connection().map_err(magnetic_err)?;
    let d = l.dim();
    let s = ctx.scenario.expect("scenario present");
    let assoc = s.checks.assoc_samples.unwrap_or(DEFAULT_ASSOC_SAMPLES);
    let equiv = s
        .checks
        .equivalence_samples
        .unwrap_or(DEFAULT_EQUIVALENCE_SAMPLES);
    let mut assoc_items = Vec::new();
    let mut unit_items = Vec::new();
    for n in 0..assoc {
        let (a, b, c) = (
            random_sym_element(&mut ctx.rng, d, 2),
            random_sym_element(&mut ctx.rng, d, 2),
            random_sym_element(&mut ctx.rng, d, 2),
        );
        let mut item = check_associativity(&a, &b, &c, l).map_err(magnetic_err)?;
        item.label = format!("triple {n}");
        assoc_items.push(item);
        let mut item = check_unit(&a, l).map_err(magnetic_err)?;
        item.label = format!("element {n}");
        unit_items.push(item);
        if n == 0 {
            let ab = sym_product(&a, &b, l).map_err(magnetic_err)?;
            ctx.values.push(Value::of(
                "product",
                format!("end {}", format_qvec(ab.endpoint())),
                ab.gauge.exponent(),
            ));
        }
    }
    ctx.push(Some(CheckReport::new(
        "associativity",
        "(ab)c = a(bc)",
        assoc_items,
    )));
    ctx.push(Some(CheckReport::new("unit", "1 a = a = a 1", unit_items)));
    let mut reports = Vec::new();
    for n in 0..equiv {
        let gamma = random_sym_element(&mut ctx.rng, d, 2).path;
        let mid = random_vector(&mut ctx.rng, d, 1, &[4]);
        let alpha = PLPath::new(vec![gamma.start().to_vec(), mid, gamma.end().to_vec()])
            .map_err(check_err)?;
        let gauge = random_periodic_gauge(&mut ctx.rng, d);
        let partners = vec![
            random_sym_element(&mut ctx.rng, d, 2),
            random_sym_element(&mut ctx.rng, d, 1),
        ];
        let mut rep =
            sym_equivalence_check(&gamma, &alpha, &gauge, &partners, l).map_err(magnetic_err)?;
        for item in &mut rep.items {
            item.label = format!("pair {n}: {}", item.label);
        }
        reports.push(rep);
    }
    ctx.push(merge(reports));
    Ok(())
}

fn cohomology(ctx: &mut Ctx) -> Result<(), CliError> {
    let count = ctx.samples();
    let d = ctx.dim();
    match model(ctx.scenario) {
        Model::Line(l) => {
            let c = line_c_cochain(l)?;
            let s = line_s_cochain(l)?;
            let (pairs, _) = ctx.tuples(2, count);
            let (triples, _) = ctx.tuples(3, count);
            let mut exact = is_coboundary_of(&c, &s, &pairs);
            exact.identity = "c = delta s".into();
            ctx.push(Some(exact));
            ctx.push(Some(is_cocycle(&c, &triples)));
            let normalized = c.is_normalized_on(&pairs);
            ctx.push(Some(CheckReport::new(
                "normalization",
                "c(0, v) = c(v, 0) = 1",
                vec![CheckItem::new("sampled pairs", normalized, "")],
            )));
        }
        Model::Gerbe(g) => {
            let quadruples = sample_tuples(&mut ctx.rng, d, 4, count, &DENOMINATORS);
            ctx.push(Some(omega_cocycle_check(g, &quadruples)));
            let (pairs, _) = ctx.tuples(2, count);
            let normalized = pi_cochain(g).is_normalized_on(&pairs);
            ctx.push(Some(CheckReport::new(
                "normalization",
                "Pi(0, v) = Pi(v, 0) = 1",
                vec![CheckItem::new("sampled pairs", normalized, "")],
            )));
        }
    }
    Ok(())
}

fn operators(ctx: &mut Ctx, opts: &RunOptions) -> Result<(), CliError> {
    let tol = opts.tolerance.unwrap_or(COCYCLE_TOLERANCE);
    let fluxes: Vec<i64> = match ctx.scenario.map(|s| s.checks.operators_flux.clone()) {
        Some(f) if !f.is_empty() => f,
        _ => (1..=6).collect(),
    };
    let mut cocycle = Vec::new();
    let mut basis = Vec::new();
    for &n in &fluxes {
        cocycle.push(verify_all_pairs(n, tol).map_err(|e| CliError::Config(e.to_string()))?);
        basis.push(
            ThetaBasis::new(n)
                .map_err(|e| CliError::Config(e.to_string()))?
                .validate(n),
        );
        let (a, b) = (vec![q(1, n), q(0, 1)], vec![q(0, 1), q(1, n)]);
        let c = geometric_cocycle(n, &a, &b).map_err(check_err)?;
        ctx.values.push(Value::text(
            "c",
            format!("N={n} v=e1/N v'=e2/N"),
            format!("{:.12}", c.arg()),
        ));
        for (v, r, s, arg) in phase_table(n).map_err(check_err)? {
            ctx.values.push(Value::text(
                "P",
                format!("N={n} v={v} [{r},{s}]"),
                format!("{arg:.12}"),
            ));
        }
    }
    ctx.push(merge(cocycle));
    ctx.push(merge(basis));
    ctx.notes
        .push(format!("operator comparisons use tolerance {tol:e}"));
    Ok(())
}

fn stokes(ctx: &mut Ctx, opts: &RunOptions) -> Result<(), CliError> {
    let samples = ctx
        .scenario
        .and_then(|s| s.checks.stokes_samples)
        .unwrap_or(DEFAULT_STOKES_SAMPLES);
    let report = stokes_selftest(opts.seed, samples, &[2, 3], &[1, 2, 3]).map_err(check_err)?;
    ctx.push(Some(report));
    Ok(())
}
