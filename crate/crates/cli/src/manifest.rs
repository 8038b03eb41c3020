//! Manifest files: a TOML description of a chart, a frame, its metric, an
//! optional almost-contact structure, named distributions and optional
//! reference values to compare against.
//!
//! ```toml
//! [chart]
//! coords = ["x", "t"]
//! excluded = "t != 0"        # optional
//!
//! [frame]
//! names = ["E1", "E2"]
//! fields = [["t", "0"], ["0", "1"]]   # coordinate-basis coefficients
//!
//! [metric]
//! components = [["1", "0"], ["0", "-1"]]
//! ```
//!
//! `[structure]` holds `phi` (rows, `phi[i][j]` is the `E_i` component of
//! `φE_j`) and `xi` (frame components). Each `[[submanifold]]` has a `name`,
//! a list of `tangent` fields in frame components and an optional `leaf`
//! table mapping a coordinate to an expression in the others.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Deserialize;
use thiserror::Error;
use tsgeom::frame::{Chart, Frame, GeometryError, Manifold, MetricFrame, VectorField};
use tsgeom::structure::{StructureData, StructureError};
use tsgeom::submanifold::{Leaf, SubmanifoldSpec};
use tsgeom::{Expr, ExprMatrix, SymbolicError};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read manifest {path}: {message}")]
    Io { path: String, message: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad expression in {field}: {source}")]
    Expression { field: String, source: SymbolicError },
    #[error("dimension mismatch in {field}: expected {expected}, found {found}")]
    Dimension {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("frame fields are linearly dependent (determinant {determinant})")]
    SingularFrame { determinant: String },
    #[error("metric is not symmetric: g_{i}{j} != g_{j}{i}", i = .0 + 1, j = .1 + 1)]
    AsymmetricMetric(usize, usize),
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("invalid chart: {0}")]
    Chart(String),
    #[error("invalid structure block: {0}")]
    Structure(String),
    #[error("invalid submanifold '{name}': {message}")]
    Submanifold { name: String, message: String },
    #[error("invalid reference block: {0}")]
    Reference(String),
}

impl ManifestError {
    /// Stable error code, distinct per failure class.
    pub fn code(&self) -> &'static str {
        match self {
            ManifestError::Io { .. } => "M000",
            ManifestError::Syntax { .. } => "M001",
            ManifestError::Expression { .. } => "M002",
            ManifestError::Dimension { .. } => "M003",
            ManifestError::SingularFrame { .. } => "M004",
            ManifestError::AsymmetricMetric(..) => "M005",
            ManifestError::DegenerateMetric => "M006",
            ManifestError::Chart(_) => "M007",
            ManifestError::Structure(_) => "M008",
            ManifestError::Submanifold { .. } => "M009",
            ManifestError::Reference(_) => "M010",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    chart: RawChart,
    frame: RawFrame,
    metric: RawMetric,
    structure: Option<RawStructure>,
    #[serde(default)]
    submanifold: Vec<RawSubmanifold>,
    reference: Option<RawReference>,
    #[serde(default)]
    options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    coords: Vec<String>,
    excluded: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrame {
    names: Option<Vec<String>>,
    fields: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    components: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    phi: Vec<Vec<String>>,
    xi: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubmanifold {
    name: String,
    tangent: Vec<Vec<String>>,
    leaf: Option<BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReference {
    alpha: Option<String>,
    beta: Option<String>,
    xi_alpha: Option<String>,
    xi_beta: Option<String>,
    #[serde(default)]
    connection: Vec<RawConnectionEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConnectionEntry {
    x: usize,
    y: usize,
    value: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

/// Literature values to compare the engine's results against.
#[derive(Clone, Debug, Default)]
pub struct Reference {
    pub alpha: Option<Expr>,
    pub beta: Option<Expr>,
    pub xi_alpha: Option<Expr>,
    pub xi_beta: Option<Expr>,
    /// `(x, y, ∇_{E_x} E_y)` with zero-based indices.
    pub connection: Vec<(usize, usize, Vec<Expr>)>,
}

/// A validated manifest.
#[derive(Clone, Debug)]
pub struct Manifest {
    pub manifold: Manifold,
    pub frame_names: Vec<String>,
    pub structure: Option<StructureData>,
    pub submanifolds: Vec<SubmanifoldSpec>,
    pub reference: Option<Reference>,
    pub options: Options,
}

impl Manifest {
    pub fn dim(&self) -> usize {
        self.manifold.dim()
    }

    pub fn submanifold(&self, name: &str) -> Option<&SubmanifoldSpec> {
        self.submanifolds.iter().find(|s| s.name == name)
    }
}

pub fn load_manifest(path: &str) -> Result<Manifest, ManifestError> {
    let text = std::fs::read_to_string(path).map_err(|e| ManifestError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    parse_manifest(&text)
}

fn line_column(text: &str, span: Option<Range<usize>>) -> (usize, usize) {
    let Some(span) = span else { return (0, 0) };
    let before = &text[..span.start.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let raw: RawManifest = toml::from_str(text).map_err(|e| {
        let (line, column) = line_column(text, e.span());
        ManifestError::Syntax {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    build(raw)
}

fn expect_len(field: &str, expected: usize, found: usize) -> Result<(), ManifestError> {
    if expected == found {
        Ok(())
    } else {
        Err(ManifestError::Dimension {
            field: field.to_string(),
            expected,
            found,
        })
    }
}

fn parse_vec(chart: &Chart, field: &str, src: &[String], len: usize) -> Result<Vec<Expr>, ManifestError> {
    expect_len(field, len, src.len())?;
    src.iter()
        .enumerate()
        .map(|(k, s)| {
            chart.parse(s).map_err(|source| ManifestError::Expression {
                field: format!("{field}[{}]", k + 1),
                source,
            })
        })
        .collect()
}

fn parse_square(chart: &Chart, field: &str, rows: &[Vec<String>], n: usize) -> Result<ExprMatrix, ManifestError> {
    expect_len(field, n, rows.len())?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vec(chart, &format!("{field}[{}]", i + 1), r, n))
        .collect::<Result<Vec<_>, _>>()?;
    ExprMatrix::from_rows(rows).map_err(|source| ManifestError::Expression {
        field: field.to_string(),
        source,
    })
}

fn geometry(e: GeometryError) -> ManifestError {
    match e {
        GeometryError::SingularFrame { determinant } => ManifestError::SingularFrame { determinant },
        GeometryError::AsymmetricMetric(i, j) => ManifestError::AsymmetricMetric(i, j),
        GeometryError::DegenerateMetric => ManifestError::DegenerateMetric,
        GeometryError::DimensionMismatch { expected, found } => ManifestError::Dimension {
            field: "frame".into(),
            expected,
            found,
        },
        other => ManifestError::Chart(other.to_string()),
    }
}

fn build(raw: RawManifest) -> Result<Manifest, ManifestError> {
    let chart = Chart::new(raw.chart.coords, raw.chart.excluded).map_err(|e| ManifestError::Chart(e.to_string()))?;
    let n = chart.dim();

    expect_len("frame.fields", n, raw.frame.fields.len())?;
    let fields = raw
        .frame
        .fields
        .iter()
        .enumerate()
        .map(|(i, f)| parse_vec(&chart, &format!("frame.fields[{}]", i + 1), f, n).map(VectorField::new))
        .collect::<Result<Vec<_>, _>>()?;
    let frame_names = match raw.frame.names {
        Some(names) => {
            expect_len("frame.names", n, names.len())?;
            names
        }
        None => (1..=n).map(|i| format!("E{i}")).collect(),
    };
    let frame = Frame::new(&chart, fields).map_err(geometry)?;

    let g = parse_square(&chart, "metric.components", &raw.metric.components, n)?;
    if let Some((i, j)) = g.asymmetric_entry() {
        return Err(ManifestError::AsymmetricMetric(i, j));
    }
    let metric = MetricFrame::new(g).map_err(geometry)?;
    let manifold = Manifold::new(chart, frame, metric).map_err(geometry)?;
    let chart = &manifold.chart;

    let structure = match raw.structure {
        None => None,
        Some(st) => {
            let phi = parse_square(chart, "structure.phi", &st.phi, n)?;
            let xi = parse_vec(chart, "structure.xi", &st.xi, n)?;
            Some(
                StructureData::new(&manifold, phi, xi)
                    .map_err(|e: StructureError| ManifestError::Structure(e.to_string()))?,
            )
        }
    };

    let mut submanifolds: Vec<SubmanifoldSpec> = Vec::new();
    for sub in raw.submanifold {
        let err = |message: String| ManifestError::Submanifold {
            name: sub.name.clone(),
            message,
        };
        if submanifolds.iter().any(|s| s.name == sub.name) {
            return Err(err("duplicate name".into()));
        }
        if sub.tangent.is_empty() {
            return Err(err("no tangent fields".into()));
        }
        let tangent = sub
            .tangent
            .iter()
            .enumerate()
            .map(|(a, f)| parse_vec(chart, &format!("submanifold.{}.tangent[{}]", sub.name, a + 1), f, n))
            .collect::<Result<Vec<_>, _>>()?;
        let mut spec = SubmanifoldSpec::new(sub.name.clone(), tangent);
        if let Some(leaf) = &sub.leaf {
            let mut subs = Vec::new();
            for (coord, value) in leaf {
                let idx = chart
                    .index_of(coord)
                    .ok_or_else(|| err(format!("leaf solves unknown coordinate '{coord}'")))?;
                let v = chart.parse(value).map_err(|source| ManifestError::Expression {
                    field: format!("submanifold.{}.leaf.{coord}", sub.name),
                    source,
                })?;
                subs.push((idx, v));
            }
            spec = spec.with_leaf(Leaf::new(subs));
        }
        submanifolds.push(spec);
    }

    let reference = raw
        .reference
        .map(|r| {
            let opt = |field: &str, s: &Option<String>| {
                s.as_ref()
                    .map(|s| {
                        chart.parse(s).map_err(|source| ManifestError::Expression {
                            field: format!("reference.{field}"),
                            source,
                        })
                    })
                    .transpose()
            };
            let mut connection = Vec::new();
            for (k, c) in r.connection.iter().enumerate() {
                if c.x == 0 || c.y == 0 || c.x > n || c.y > n {
                    return Err(ManifestError::Reference(format!(
                        "connection entry {} uses frame index outside 1..={n}",
                        k + 1
                    )));
                }
                let v = parse_vec(chart, &format!("reference.connection[{}].value", k + 1), &c.value, n)?;
                connection.push((c.x - 1, c.y - 1, v));
            }
            Ok(Reference {
                alpha: opt("alpha", &r.alpha)?,
                beta: opt("beta", &r.beta)?,
                xi_alpha: opt("xi_alpha", &r.xi_alpha)?,
                xi_beta: opt("xi_beta", &r.xi_beta)?,
                connection,
            })
        })
        .transpose()?;

    Ok(Manifest {
        manifold,
        frame_names,
        structure,
        submanifolds,
        reference,
        options: raw.options,
    })
}
