//! Charts, vector fields as first-order operators, frames, frame metrics, and
//! the Levi-Civita connection from the Koszul formula.
//!
//! Tensors are stored in frame components. A vector `X = Σ a_i E_i` is the
//! slice `a`; brackets are taken in the coordinate basis and converted back.

use thiserror::Error;

use crate::symbolic::{dot, parse_expr, Expr, ExprMatrix, SymbolicError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("chart has no coordinates")]
    EmptyChart,
    #[error("duplicate coordinate '{0}'")]
    DuplicateCoordinate(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("frame is singular (determinant {determinant})")]
    SingularFrame { determinant: String },
    #[error("metric is not symmetric at ({0}, {1})")]
    AsymmetricMetric(usize, usize),
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// An ordered set of coordinate names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    coords: Vec<String>,
    excluded: Option<String>,
}

impl Chart {
    pub fn new(coords: Vec<String>, excluded: Option<String>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyChart);
        }
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(GeometryError::DuplicateCoordinate(c.clone()));
            }
        }
        Ok(Chart { coords, excluded })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn names(&self) -> &[String] {
        &self.coords
    }

    pub fn excluded_locus(&self) -> Option<&str> {
        self.excluded.as_deref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn parse(&self, src: &str) -> Result<Expr, SymbolicError> {
        parse_expr(src, &self.coords)
    }

    pub fn render(&self, e: &Expr) -> String {
        e.to_text(&self.coords)
    }

    /// Partial derivative with respect to the named coordinate.
    pub fn differentiate(&self, e: &Expr, coord: &str) -> Result<Expr, SymbolicError> {
        let i = self
            .index_of(coord)
            .ok_or_else(|| SymbolicError::UnknownCoordinate(coord.to_string()))?;
        Ok(e.derivative(i))
    }
}

/// A vector field given by its components in the coordinate basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    coeffs: Vec<Expr>,
}

impl VectorField {
    pub fn new(coeffs: Vec<Expr>) -> Self {
        VectorField { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Expr] {
        &self.coeffs
    }

    fn same_dim(&self, other: &VectorField) -> Result<(), GeometryError> {
        if self.dim() != other.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Directional derivative `X(f) = Σ X^i ∂f/∂x_i`.
    pub fn apply(&self, f: &Expr) -> Expr {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * &f.derivative(i))
            .sum()
    }

    /// `[X, Y] = XY - YX`, with the second-order terms cancelled.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField, GeometryError> {
        self.same_dim(other)?;
        let coeffs = (0..self.dim())
            .map(|k| &self.apply(&other.coeffs[k]) - &other.apply(&self.coeffs[k]))
            .collect();
        Ok(VectorField { coeffs })
    }
}

/// An ordered basis of vector fields on a chart.
#[derive(Clone, Debug)]
pub struct Frame {
    fields: Vec<VectorField>,
    matrix: ExprMatrix,
    inverse: ExprMatrix,
}

impl Frame {
    /// Rejects frames whose coefficient matrix has zero determinant.
    pub fn new(chart: &Chart, fields: Vec<VectorField>) -> Result<Self, GeometryError> {
        let n = chart.dim();
        if fields.len() != n {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                found: fields.len(),
            });
        }
        for f in &fields {
            if f.dim() != n {
                return Err(GeometryError::DimensionMismatch {
                    expected: n,
                    found: f.dim(),
                });
            }
        }
        let cols: Vec<Vec<Expr>> = fields.iter().map(|f| f.coeffs.clone()).collect();
        let matrix = ExprMatrix::from_columns(&cols)?;
        let det = matrix.determinant();
        if det.is_zero() {
            return Err(GeometryError::SingularFrame {
                determinant: chart.render(&det),
            });
        }
        let inverse = matrix.inverse()?;
        debug_assert!(inverse.mul(&matrix).is_identity());
        Ok(Frame {
            fields,
            matrix,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.fields.len()
    }

    pub fn field(&self, i: usize) -> &VectorField {
        &self.fields[i]
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    /// Coordinate-to-frame change of basis.
    pub fn inverse_matrix(&self) -> &ExprMatrix {
        &self.inverse
    }

    pub fn determinant(&self) -> Expr {
        self.matrix.determinant()
    }

    /// Frame components `c` with `Σ c_k E_k = X`.
    pub fn to_frame_components(&self, x: &VectorField) -> Result<Vec<Expr>, GeometryError> {
        if x.dim() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(self.inverse.mul_vec(&x.coeffs))
    }

    /// The vector field `Σ c_k E_k`.
    pub fn combine(&self, comps: &[Expr]) -> VectorField {
        VectorField::new(self.matrix.mul_vec(comps))
    }

    /// `E_i(f)`.
    pub fn apply(&self, i: usize, f: &Expr) -> Expr {
        self.fields[i].apply(f)
    }
}

/// Frame components `g_ij = g(E_i, E_j)` of a metric.
#[derive(Clone, Debug)]
pub struct MetricFrame {
    g: ExprMatrix,
    g_inv: ExprMatrix,
}

impl MetricFrame {
    pub fn new(components: ExprMatrix) -> Result<Self, GeometryError> {
        if let Some((i, j)) = components.asymmetric_entry() {
            return Err(GeometryError::AsymmetricMetric(i, j));
        }
        let g_inv = components.inverse().map_err(|_| GeometryError::DegenerateMetric)?;
        Ok(MetricFrame { g: components, g_inv })
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn components(&self) -> &ExprMatrix {
        &self.g
    }

    pub fn inverse(&self) -> &ExprMatrix {
        &self.g_inv
    }

    pub fn get(&self, i: usize, j: usize) -> &Expr {
        &self.g[(i, j)]
    }

    /// `g(X, Y)` for frame-component vectors.
    pub fn pair(&self, x: &[Expr], y: &[Expr]) -> Expr {
        dot(x, &self.g.mul_vec(y))
    }

    /// Lowers a vector: `(g(X, E_0), ..., g(X, E_{n-1}))`.
    pub fn lower(&self, x: &[Expr]) -> Vec<Expr> {
        self.g.mul_vec(x)
    }

    pub fn raise(&self, w: &[Expr]) -> Vec<Expr> {
        self.g_inv.mul_vec(w)
    }

    /// Number of negative directions, counted from the pivots of a
    /// symmetric elimination. Only meaningful for constant metrics; returns
    /// `None` otherwise.
    pub fn negative_directions(&self) -> Option<usize> {
        let n = self.dim();
        let mut a: Vec<Vec<_>> = (0..n)
            .map(|i| (0..n).map(|j| self.g[(i, j)].as_rational()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        // Sylvester: count negative pivots of an LDL^T factorization.
        let mut neg = 0;
        let mut remaining: Vec<usize> = (0..n).collect();
        while let Some(&first) = remaining.first() {
            let p = remaining
                .iter()
                .copied()
                .find(|&k| !num_traits::Zero::is_zero(&a[k][k]));
            let p = match p {
                Some(p) => p,
                None => {
                    // All diagonal entries vanish: combine with a partner row.
                    let q = remaining
                        .iter()
                        .copied()
                        .find(|&k| !num_traits::Zero::is_zero(&a[first][k]))?;
                    for c in 0..n {
                        let v = a[q][c].clone();
                        a[first][c] += v;
                    }
                    for r in 0..n {
                        let v = a[r][q].clone();
                        a[r][first] += v;
                    }
                    first
                }
            };
            let piv = a[p][p].clone();
            if num_traits::Signed::is_negative(&piv) {
                neg += 1;
            }
            remaining.retain(|&k| k != p);
            for &r in &remaining {
                let f = &a[r][p] / &piv;
                for &c in &remaining {
                    let v = &f * &a[p][c];
                    a[r][c] -= v;
                }
            }
        }
        Some(neg)
    }
}

/// Levi-Civita connection in a frame: `∇_{E_i} E_j = Σ_k gamma[i][j][k] E_k`.
/// Also keeps the frame structure functions `[E_i, E_j] = Σ_k brackets[i][j][k] E_k`.
#[derive(Clone, Debug)]
pub struct Connection {
    pub gamma: Vec<Vec<Vec<Expr>>>,
    pub brackets: Vec<Vec<Vec<Expr>>>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    /// `Γ^k_{ij}`.
    pub fn coefficient(&self, k: usize, i: usize, j: usize) -> &Expr {
        &self.gamma[i][j][k]
    }
}

/// Frame structure functions `[E_i, E_j]` in frame components.
pub fn frame_brackets(frame: &Frame) -> Result<Vec<Vec<Vec<Expr>>>, GeometryError> {
    let n = frame.dim();
    let mut out = vec![vec![vec![Expr::zero(); n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let b = frame.field(i).bracket(frame.field(j))?;
            let c = frame.to_frame_components(&b)?;
            out[j][i] = c.iter().map(|e| -e).collect();
            out[i][j] = c;
        }
    }
    Ok(out)
}

pub const KOSZUL_CONVENTION: &str =
    "2g(nabla_X Y, Z) = X g(Y,Z) + Y g(X,Z) - Z g(X,Y) + g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)";

/// Koszul formula in a frame:
/// `2g(∇_X Y, Z) = Xg(Y,Z) + Yg(X,Z) - Zg(X,Y) + g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)`.
pub fn koszul_connection(frame: &Frame, metric: &MetricFrame) -> Result<Connection, GeometryError> {
    let n = frame.dim();
    if metric.dim() != n {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            found: metric.dim(),
        });
    }
    let brackets = frame_brackets(frame)?;
    // g([E_a, E_b], E_c)
    let lowered: Vec<Vec<Vec<Expr>>> = brackets
        .iter()
        .map(|row| row.iter().map(|v| metric.lower(v)).collect())
        .collect();
    // E_a(g_bc)
    let dg: Vec<Vec<Vec<Expr>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).map(|c| frame.apply(a, metric.get(b, c))).collect())
                .collect()
        })
        .collect();
    let half = Expr::rational(1, 2);
    let mut gamma = vec![vec![vec![Expr::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let low: Vec<Expr> = (0..n)
                .map(|k| {
                    let s = &(&(&dg[i][j][k] + &dg[j][i][k]) - &dg[k][i][j])
                        + &(&(&lowered[i][j][k] - &lowered[j][k][i]) + &lowered[k][i][j]);
                    &s * &half
                })
                .collect();
            gamma[i][j] = metric.raise(&low);
        }
    }
    Ok(Connection { gamma, brackets })
}

/// A chart with a frame, a frame metric, and its Levi-Civita connection.
#[derive(Clone, Debug)]
pub struct Manifold {
    pub chart: Chart,
    pub frame: Frame,
    pub metric: MetricFrame,
    pub connection: Connection,
}

impl Manifold {
    pub fn new(chart: Chart, frame: Frame, metric: MetricFrame) -> Result<Self, GeometryError> {
        let connection = koszul_connection(&frame, &metric)?;
        Ok(Manifold {
            chart,
            frame,
            metric,
            connection,
        })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn basis(&self, i: usize) -> Vec<Expr> {
        unit(self.dim(), i)
    }

    /// `X(f)` for `X` in frame components.
    pub fn derive(&self, x: &[Expr], f: &Expr) -> Expr {
        if f.is_constant() {
            return Expr::zero();
        }
        x.iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| a * &self.frame.apply(i, f))
            .sum()
    }

    /// `∇_X Y = Σ_j X(b_j) E_j + Σ a_i b_j Γ^k_{ij} E_k`.
    pub fn covariant(&self, x: &[Expr], y: &[Expr]) -> Vec<Expr> {
        let n = self.dim();
        let mut out: Vec<Expr> = y.iter().map(|b| self.derive(x, b)).collect();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for k in 0..n {
                    let g = &self.connection.gamma[i][j][k];
                    if !g.is_zero() {
                        out[k] = &out[k] + &(&ab * g);
                    }
                }
            }
        }
        out
    }

    /// `[X, Y]` of frame-component vectors, in frame components.
    pub fn bracket(&self, x: &[Expr], y: &[Expr]) -> Vec<Expr> {
        let n = self.dim();
        let mut out: Vec<Expr> = (0..n)
            .map(|k| &self.derive(x, &y[k]) - &self.derive(y, &x[k]))
            .collect();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for k in 0..n {
                    let c = &self.connection.brackets[i][j][k];
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    pub fn pair(&self, x: &[Expr], y: &[Expr]) -> Expr {
        self.metric.pair(x, y)
    }

    /// `g(X, Y)` for coordinate-basis vector fields.
    pub fn metric_pair(&self, x: &VectorField, y: &VectorField) -> Result<Expr, GeometryError> {
        let a = self.frame.to_frame_components(x)?;
        let b = self.frame.to_frame_components(y)?;
        Ok(self.metric.pair(&a, &b))
    }

    /// `∇_X Y` for coordinate-basis vector fields.
    pub fn covariant_derivative(&self, x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
        let a = self.frame.to_frame_components(x)?;
        let b = self.frame.to_frame_components(y)?;
        Ok(self.frame.combine(&self.covariant(&a, &b)))
    }

    pub fn render(&self, e: &Expr) -> String {
        self.chart.render(e)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Expr> {
    (0..n)
        .map(|k| if k == i { Expr::one() } else { Expr::zero() })
        .collect()
}

pub fn scale_vec(k: &Expr, v: &[Expr]) -> Vec<Expr> {
    v.iter().map(|e| k * e).collect()
}

pub fn add_vec(a: &[Expr], b: &[Expr]) -> Vec<Expr> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Expr], b: &[Expr]) -> Vec<Expr> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_zero_vec(v: &[Expr]) -> bool {
    v.iter().all(Expr::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(
            ["x1", "x2", "x3", "x4", "t"].iter().map(|s| s.to_string()).collect(),
            Some("t != 0".into()),
        )
        .unwrap()
    }

    fn vf(c: &Chart, s: [&str; 5]) -> VectorField {
        VectorField::new(s.iter().map(|e| c.parse(e).unwrap()).collect())
    }

    #[test]
    fn chart_validation() {
        assert_eq!(Chart::new(vec![], None), Err(GeometryError::EmptyChart));
        assert_eq!(
            Chart::new(vec!["x".into(), "x".into()], None),
            Err(GeometryError::DuplicateCoordinate("x".into()))
        );
        let c = chart();
        let t2 = c.parse("t^2").unwrap();
        assert_eq!(c.differentiate(&t2, "t").unwrap(), c.parse("2*t").unwrap());
        assert!(c.differentiate(&t2, "x1").unwrap().is_zero());
        assert_eq!(
            c.differentiate(&t2, "y"),
            Err(SymbolicError::UnknownCoordinate("y".into()))
        );
    }

    #[test]
    fn vector_field_application() {
        let c = chart();
        let e5 = vf(&c, ["0", "0", "0", "0", "1"]);
        let e2 = vf(&c, ["0", "t", "0", "0", "0"]);
        let e1 = vf(&c, ["t", "0", "0", "0", "t*x2"]);
        assert_eq!(e5.apply(&c.parse("t^2/2").unwrap()), c.parse("t").unwrap());
        assert!(e2.apply(&c.parse("t").unwrap()).is_zero());
        assert_eq!(e1.apply(&c.parse("t").unwrap()), c.parse("t*x2").unwrap());
    }

    #[test]
    fn bracket_of_mismatched_fields_is_rejected() {
        let a = VectorField::new(vec![Expr::one()]);
        let b = VectorField::new(vec![Expr::one(), Expr::zero()]);
        assert!(matches!(a.bracket(&b), Err(GeometryError::DimensionMismatch { .. })));
        assert!(is_zero_vec(a.bracket(&a).unwrap().coeffs()));
    }

    #[test]
    fn singular_frame_rejected() {
        let c = Chart::new(vec!["x".into(), "y".into()], None).unwrap();
        let f = VectorField::new(vec![Expr::var(1), Expr::one()]);
        let g = VectorField::new(vec![&Expr::var(1) * &Expr::var(0), Expr::var(0)]);
        assert!(matches!(
            Frame::new(&c, vec![f, g]),
            Err(GeometryError::SingularFrame { .. })
        ));
    }

    #[test]
    fn metric_validation_and_signature() {
        let m = ExprMatrix::from_rows(vec![vec![Expr::one(), Expr::int(2)], vec![Expr::int(3), Expr::one()]]).unwrap();
        assert_eq!(MetricFrame::new(m).unwrap_err(), GeometryError::AsymmetricMetric(0, 1));
        let m = ExprMatrix::from_rows(vec![vec![Expr::one(), Expr::one()], vec![Expr::one(), Expr::one()]]).unwrap();
        assert_eq!(MetricFrame::new(m).unwrap_err(), GeometryError::DegenerateMetric);
        let lorentz =
            ExprMatrix::from_rows(vec![vec![Expr::zero(), Expr::one()], vec![Expr::one(), Expr::zero()]]).unwrap();
        assert_eq!(MetricFrame::new(lorentz).unwrap().negative_directions(), Some(1));
        let mut d = ExprMatrix::identity(3);
        d[(2, 2)] = Expr::int(-1);
        assert_eq!(MetricFrame::new(d).unwrap().negative_directions(), Some(1));
    }
}
