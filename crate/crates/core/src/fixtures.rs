//! Built-in manifolds used by tests, benchmarks and documentation.
//!
//! All live on the chart `(x1, x2, x3, x4, t)` with frame metric
//! `diag(1, 1, 1, 1, -1)`.

use crate::frame::{add_vec, Chart, Frame, Manifold, MetricFrame, VectorField};
use crate::structure::StructureData;
use crate::submanifold::{Leaf, SubmanifoldSpec};
use crate::symbolic::{Expr, ExprMatrix};

const COORDS: [&str; 5] = ["x1", "x2", "x3", "x4", "t"];

fn chart(excluded: Option<&str>) -> Chart {
    Chart::new(
        COORDS.iter().map(|s| s.to_string()).collect(),
        excluded.map(str::to_string),
    )
    .expect("valid chart")
}

fn lorentz_metric() -> MetricFrame {
    let mut g = ExprMatrix::identity(5);
    g[(4, 4)] = Expr::int(-1);
    MetricFrame::new(g).expect("nondegenerate")
}

fn field(c: &Chart, comps: [&str; 5]) -> VectorField {
    VectorField::new(comps.iter().map(|e| c.parse(e).expect("valid expression")).collect())
}

/// `phi[i][j]` entries given as `(i, j, value)`.
fn phi_matrix(entries: &[(usize, usize, i64)]) -> ExprMatrix {
    let mut phi = ExprMatrix::zeros(5);
    for &(i, j, v) in entries {
        phi[(i, j)] = Expr::int(v);
    }
    phi
}

fn ints(v: [i64; 5]) -> Vec<Expr> {
    v.iter().map(|&k| Expr::int(k)).collect()
}

/// The 5-dimensional example on `t ≠ 0` with
/// `E1 = t(∂x1 + x2 ∂t)`, `E2 = t ∂x2`, `E3 = t(∂x3 + x4 ∂t)`, `E4 = t ∂x4`,
/// `E5 = ξ = ∂t` and `φE1 = -E2`, `φE2 = E1`, `φE3 = -E4`, `φE4 = E3`.
pub fn example() -> (Manifold, StructureData) {
    example_with_phi(phi_matrix(&[(1, 0, -1), (0, 1, 1), (3, 2, -1), (2, 3, 1)]))
}

/// The example with `φE1 = -E3` in place of `φE1 = -E2`.
pub fn example_corrupted() -> (Manifold, StructureData) {
    example_with_phi(phi_matrix(&[(2, 0, -1), (0, 1, 1), (3, 2, -1), (2, 3, 1)]))
}

fn example_with_phi(phi: ExprMatrix) -> (Manifold, StructureData) {
    let c = chart(Some("t != 0"));
    let fields = vec![
        field(&c, ["t", "0", "0", "0", "t*x2"]),
        field(&c, ["0", "t", "0", "0", "0"]),
        field(&c, ["0", "0", "t", "0", "t*x4"]),
        field(&c, ["0", "0", "0", "t", "0"]),
        field(&c, ["0", "0", "0", "0", "1"]),
    ];
    let frame = Frame::new(&c, fields).expect("invertible frame");
    let m = Manifold::new(c, frame, lorentz_metric()).expect("manifold");
    let s = StructureData::new(&m, phi, m.basis(4)).expect("structure");
    (m, s)
}

/// `D = span{E1 + E3, E2 + E4, E5}`.
pub fn example_distribution(m: &Manifold) -> SubmanifoldSpec {
    SubmanifoldSpec::new(
        "D",
        vec![
            add_vec(&m.basis(0), &m.basis(2)),
            add_vec(&m.basis(1), &m.basis(3)),
            m.basis(4),
        ],
    )
}

/// The leaf `x4 = x2` of `D`, on which the distribution does not bend.
pub fn example_leaf(m: &Manifold) -> SubmanifoldSpec {
    let mut d = example_distribution(m).with_leaf(Leaf::new(vec![(3, Expr::var(1))]));
    d.name = "D0".into();
    d
}

/// `span{E1, E5}`: involutive, contains ξ, but not φ-stable.
pub fn example_non_invariant(m: &Manifold) -> SubmanifoldSpec {
    SubmanifoldSpec::new("N", vec![m.basis(0), m.basis(4)])
}

fn coordinate_manifold() -> Manifold {
    let c = chart(None);
    let fields = (0..5)
        .map(|i| VectorField::new(ints(std::array::from_fn(|k| i64::from(k == i)))))
        .collect();
    let frame = Frame::new(&c, fields).expect("coordinate frame");
    Manifold::new(c, frame, lorentz_metric()).expect("manifold")
}

/// Flat space with `φ = 0`, which is not almost-contact.
pub fn flat() -> (Manifold, StructureData) {
    let m = coordinate_manifold();
    let s = StructureData::new(&m, ExprMatrix::zeros(5), m.basis(4)).expect("structure");
    (m, s)
}

/// The coordinate plane `span{∂x1, ∂x2, ∂t}`.
pub fn flat_distribution(m: &Manifold) -> SubmanifoldSpec {
    SubmanifoldSpec::new("P", vec![m.basis(0), m.basis(1), m.basis(4)])
}

/// Flat space with the swap structure `φ∂1 = ∂2`, `φ∂2 = ∂1`, `φ∂3 = ∂4`,
/// `φ∂4 = ∂3`, `ξ = ∂t`; cosymplectic (α = β = 0).
pub fn negative_control() -> (Manifold, StructureData) {
    let m = coordinate_manifold();
    let phi = phi_matrix(&[(1, 0, 1), (0, 1, 1), (3, 2, 1), (2, 3, 1)]);
    let s = StructureData::new(&m, phi, m.basis(4)).expect("structure");
    (m, s)
}

/// A curved invariant distribution in flat space, with `s = x1 + x2`:
/// `w1 = ∂1 - ∂2`, `w2 = ∂1 + ∂2 + s²(∂3 + ∂4)`, `w3 = ∂t`.
/// `φw1 = -w1` and `φw2 = w2`, so it is φ-stable, and `w2` bends.
pub fn negative_control_distribution(m: &Manifold) -> SubmanifoldSpec {
    let c = &m.chart;
    let p = |s: &str| c.parse(s).expect("valid expression");
    SubmanifoldSpec::new(
        "C",
        vec![
            vec![p("1"), p("-1"), p("0"), p("0"), p("0")],
            vec![p("1"), p("1"), p("(x1 + x2)^2"), p("(x1 + x2)^2"), p("0")],
            vec![p("0"), p("0"), p("0"), p("0"), p("1")],
        ],
    )
}
