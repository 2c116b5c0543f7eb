//! Scenario files (TOML).
//!
//! ```toml
//! name = "constant H, m = 1"
//! kind = "gerbe"          # or "line"
//! dim = 3
//! seed = 7                # optional; --seed wins
//!
//! [cocycle]
//! closed = "-2*pi*j1*i2*x3"          # line: x#, i#   gerbe: x#, i#, j#
//! # generators = ["0", "2*pi*x1"]    # line only: φ_{e_a} in x#
//!
//! [connection]
//! a = ["0", "0", "2*pi*i1*x2"]       # line: A in x#   gerbe: A_i in x#, i#
//! b = [{ dx = [2, 3], coeff = "2*pi*x1" }]   # gerbe curving, 1-based
//!
//! [checks]                            # every key optional
//! radius = 1
//! vectors = [["1/2", "1/3", "1/5"]]
//! pairs = [[["1/2", 0, 0], [0, "1/3", 0]]]
//! triples = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]]
//! field = [1, 0, 0]
//! samples = 100
//! assoc_samples = 50
//! equivalence_samples = 25
//! operators_flux = [1, 2, 3]
//! stokes_samples = 200
//! ```

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::forms::Form;
use crate::gerbes::GerbeData;
use crate::magnetic::{CocycleFamily, LineData};
use crate::polytrig::{parse_expr, parse_with, PolyTrig, VarScheme, Q};

use super::CliError;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Line,
    Gerbe,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Int(i64),
    Text(String),
}

impl Rational {
    fn value(&self) -> Result<Q, CliError> {
        match self {
            Rational::Int(n) => Ok(Q::from_integer((*n).into())),
            Rational::Text(s) => Q::from_str(s.trim())
                .map_err(|e| CliError::Config(format!("bad rational {s:?}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleTable {
    pub closed: Option<String>,
    pub generators: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BTerm {
    pub dx: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionTable {
    pub a: Vec<String>,
    #[serde(default)]
    pub b: Vec<BTerm>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksTable {
    pub radius: Option<i64>,
    #[serde(default)]
    pub vectors: Vec<Vec<Rational>>,
    #[serde(default)]
    pub pairs: Vec<[Vec<Rational>; 2]>,
    #[serde(default)]
    pub triples: Vec<[Vec<Rational>; 3]>,
    pub field: Option<Vec<Rational>>,
    pub samples: Option<usize>,
    pub assoc_samples: Option<usize>,
    pub equivalence_samples: Option<usize>,
    #[serde(default)]
    pub operators_flux: Vec<i64>,
    pub stokes_samples: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: Option<u32>,
    pub name: String,
    pub kind: Kind,
    pub dim: usize,
    pub seed: Option<u64>,
    pub cocycle: CocycleTable,
    pub connection: Option<ConnectionTable>,
    #[serde(default)]
    pub checks: ChecksTable,
}

/// The geometric data of a scenario.
#[derive(Clone, Debug)]
pub enum Model {
    Line(LineData),
    Gerbe(GerbeData),
}

/// Parsed check parameters with rationals resolved.
#[derive(Clone, Debug, Default)]
pub struct Checks {
    pub radius: Option<i64>,
    pub vectors: Vec<Vec<Q>>,
    pub pairs: Vec<Vec<Vec<Q>>>,
    pub triples: Vec<Vec<Vec<Q>>>,
    pub field: Option<Vec<Q>>,
    pub samples: Option<usize>,
    pub assoc_samples: Option<usize>,
    pub equivalence_samples: Option<usize>,
    pub operators_flux: Vec<i64>,
    pub stokes_samples: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub dim: usize,
    pub seed: Option<u64>,
    pub model: Model,
    pub checks: Checks,
}

fn expr(text: &str, scheme: &VarScheme, what: &str) -> Result<PolyTrig, CliError> {
    parse_with(text, scheme).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

fn vector(entries: &[Rational], d: usize, what: &str) -> Result<Vec<Q>, CliError> {
    if entries.len() != d {
        return Err(CliError::Config(format!(
            "{what}: expected {d} entries, found {}",
            entries.len()
        )));
    }
    entries.iter().map(Rational::value).collect()
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let file: ScenarioFile =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(s) = file.schema {
            if s != 1 {
                return Err(CliError::Config(format!("unsupported schema {s}")));
            }
        }
        let d = file.dim;
        if d == 0 {
            return Err(CliError::Config("dim must be positive".into()));
        }
        let model = match file.kind {
            Kind::Line => Model::Line(line_model(&file, d)?),
            Kind::Gerbe => Model::Gerbe(gerbe_model(&file, d)?),
        };
        let c = &file.checks;
        let checks = Checks {
            radius: c.radius,
            vectors: c
                .vectors
                .iter()
                .map(|v| vector(v, d, "checks.vectors"))
                .collect::<Result<_, _>>()?,
            pairs: c
                .pairs
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|v| vector(v, d, "checks.pairs"))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?,
            triples: c
                .triples
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|v| vector(v, d, "checks.triples"))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?,
            field: c
                .field
                .as_ref()
                .map(|v| vector(v, d, "checks.field"))
                .transpose()?,
            samples: c.samples,
            assoc_samples: c.assoc_samples,
            equivalence_samples: c.equivalence_samples,
            operators_flux: c.operators_flux.clone(),
            stokes_samples: c.stokes_samples,
        };
        Ok(Scenario {
            name: file.name,
            dim: d,
            seed: file.seed,
            model,
            checks,
        })
    }
}

fn line_model(file: &ScenarioFile, d: usize) -> Result<LineData, CliError> {
    let family = match (&file.cocycle.closed, &file.cocycle.generators) {
        (Some(text), None) => CocycleFamily::Closed(expr(
            text,
            &VarScheme::new(&[('x', d), ('i', d)]),
            "cocycle.closed",
        )?),
        (None, Some(gens)) => CocycleFamily::Generators(
            gens.iter()
                .map(|g| {
                    parse_expr(g, d)
                        .map_err(|e| CliError::Config(format!("cocycle.generators: {e}")))
                })
                .collect::<Result<_, _>>()?,
        ),
        _ => {
            return Err(CliError::Config(
                "cocycle needs exactly one of `closed` or `generators`".into(),
            ))
        }
    };
    let connection = match &file.connection {
        Some(conn) => {
            if !conn.b.is_empty() {
                return Err(CliError::Config(
                    "line scenarios take no curving `b`".into(),
                ));
            }
            if conn.a.len() != d {
                return Err(CliError::Config(format!(
                    "connection.a needs {d} components"
                )));
            }
            let comps = conn
                .a
                .iter()
                .map(|t| expr(t, &VarScheme::spatial(d), "connection.a"))
                .collect::<Result<_, _>>()?;
            Some(Form::one_form(comps))
        }
        None => None,
    };
    LineData::new(d, family, connection).map_err(|e| CliError::Config(e.to_string()))
}

fn gerbe_model(file: &ScenarioFile, d: usize) -> Result<GerbeData, CliError> {
    let phi = match (&file.cocycle.closed, &file.cocycle.generators) {
        (Some(text), None) => expr(
            text,
            &VarScheme::new(&[('x', d), ('i', d), ('j', d)]),
            "cocycle.closed",
        )?,
        _ => {
            return Err(CliError::Config(
                "gerbe cocycle must be given as `closed` in x#, i#, j#".into(),
            ))
        }
    };
    let conn = file
        .connection
        .as_ref()
        .ok_or_else(|| CliError::Config("gerbe scenarios need [connection]".into()))?;
    if conn.a.len() != d {
        return Err(CliError::Config(format!(
            "connection.a needs {d} components"
        )));
    }
    let scheme = VarScheme::new(&[('x', d), ('i', d)]);
    let a = conn
        .a
        .iter()
        .map(|t| expr(t, &scheme, "connection.a"))
        .collect::<Result<_, _>>()?;
    let mut comps = Vec::new();
    for term in &conn.b {
        if term.dx.len() != 2 || term.dx.iter().any(|&k| k == 0 || k > d) {
            return Err(CliError::Config(format!(
                "connection.b: dx must be two indices in 1..={d}"
            )));
        }
        let f = expr(&term.coeff, &VarScheme::spatial(d), "connection.b")?;
        comps.push((term.dx.iter().map(|k| k - 1).collect(), f));
    }
    let b = Form::from_components(d, 2, comps)
        .map_err(|e| CliError::Config(format!("connection.b: {e}")))?;
    GerbeData::new(d, phi, a, b).map_err(|e| CliError::Config(e.to_string()))
}
