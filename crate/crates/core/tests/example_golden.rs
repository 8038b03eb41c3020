//! Frozen values of the five-dimensional example. Values printed with the
//! example are compared exactly; the remaining ones were computed once by
//! the engine, cross-checked by hand, and frozen.

use tsgeom::curvature::{ricci, riemann, scalar};
use tsgeom::fixtures;
use tsgeom::frame::Manifold;
use tsgeom::structure::{check_structure, classify, extract_alpha_beta, Classification, CHECK_PHI_SQUARED};
use tsgeom::submanifold::Submanifold;
use tsgeom::Expr;

fn p(m: &Manifold, s: &str) -> Expr {
    m.chart.parse(s).unwrap()
}

fn vec5(m: &Manifold, v: [&str; 5]) -> Vec<Expr> {
    v.iter().map(|s| p(m, s)).collect()
}

#[test]
fn brackets() {
    let (m, _) = fixtures::example();
    let b = |i: usize, j: usize| m.bracket(&m.basis(i - 1), &m.basis(j - 1));
    for i in 1..=4 {
        let mut want = vec![Expr::zero(); 5];
        want[i - 1] = p(&m, "-1/t");
        assert_eq!(b(i, 5), want, "[E{i},E5]");
    }
    assert_eq!(b(1, 2), vec5(&m, ["0", "x2", "0", "0", "-t^2"]));
    assert_eq!(b(1, 3), vec5(&m, ["-x4", "0", "x2", "0", "0"]));
    assert_eq!(b(1, 4), vec5(&m, ["0", "0", "0", "x2", "0"]));
    // not printed with the example
    assert_eq!(b(2, 3), vec5(&m, ["0", "-x4", "0", "0", "0"]));
    assert_eq!(b(2, 4), vec5(&m, ["0", "0", "0", "0", "0"]));
    assert_eq!(b(3, 4), vec5(&m, ["0", "0", "0", "x4", "-t^2"]));
}

#[test]
fn connection_along_xi() {
    let (m, _) = fixtures::example();
    let nab = |i: usize| m.covariant(&m.basis(i - 1), &m.basis(4));
    assert_eq!(nab(1), vec5(&m, ["-1/t", "-t^2/2", "0", "0", "0"]));
    assert_eq!(nab(2), vec5(&m, ["t^2/2", "-1/t", "0", "0", "0"]));
    assert_eq!(nab(3), vec5(&m, ["0", "0", "-1/t", "-t^2/2", "0"]));
    assert_eq!(nab(4), vec5(&m, ["0", "0", "t^2/2", "-1/t", "0"]));
    assert!(nab(5).iter().all(Expr::is_zero));
}

#[test]
fn alpha_beta_and_their_derivatives() {
    let (m, s) = fixtures::example();
    let ab = extract_alpha_beta(&m, &s).unwrap();
    assert_eq!(ab.alpha, p(&m, "-t^2/2"));
    assert_eq!(ab.beta, p(&m, "-1/t"));
    assert_eq!(ab.xi_alpha, p(&m, "-t"));
    assert_eq!(ab.xi_beta, p(&m, "1/t^2"));
    assert!(ab.nabla_xi.holds());
    assert!(!ab.nabla_phi.holds());
    assert_eq!(classify(&ab.alpha, &ab.beta), Classification::General);
}

#[test]
fn phi_squared_is_minus_identity_on_the_contact_plane() {
    let (m, s) = fixtures::example();
    let r = check_structure(&m, &s);
    let c = r.get(CHECK_PHI_SQUARED).unwrap();
    assert!(!c.holds());
    assert!(r.metric_almost_contact());
    for i in 0..4 {
        let mut want = vec![Expr::zero(); 5];
        want[i] = Expr::int(-1);
        assert_eq!(s.apply_phi2(&m.basis(i)), want);
    }
}

#[test]
fn ricci_and_scalar_curvature() {
    let (m, _) = fixtures::example();
    let r = riemann(&m);
    let s = ricci(&r, &m.metric);
    assert_eq!(s.get(4, 4), &p(&m, "(t^6 - 8)/t^2"));
    assert_eq!(s.get(0, 1), &p(&m, "t"));
    assert_eq!(s.get(2, 3), &p(&m, "t"));
    assert_eq!(s.get(0, 4), &p(&m, "-3*x2/t"));
    assert_eq!(s.get(2, 4), &p(&m, "-3*x4/t"));
    assert_eq!(scalar(&s, &m.metric), p(&m, "t^4 - 12*x2^2 - 12*x4^2 + 28/t^2"));
}

#[test]
fn second_fundamental_form_of_the_distribution() {
    let (m, _) = fixtures::example();
    let sub = Submanifold::new(&m, &fixtures::example_distribution(&m)).unwrap();
    let bend = vec5(&m, ["x2 - x4", "0", "-(x2 - x4)", "0", "0"]);
    let sig = |a: usize, b: usize| sub.split.normal_vector(&sub.sigma[a][b]);
    assert_eq!(sig(0, 0), bend);
    assert_eq!(sig(1, 1), bend);
    assert!(sig(0, 1).iter().all(Expr::is_zero));
    for a in 0..3 {
        assert!(sig(a, 2).iter().all(Expr::is_zero));
    }
    assert!(!sub.is_totally_geodesic());
}

#[test]
fn normal_curvature_on_the_diagonal_leaf() {
    let (m, _) = fixtures::example();
    let sub = Submanifold::new(&m, &fixtures::example_leaf(&m)).unwrap();
    assert!(sub.is_totally_geodesic());
    let rp = sub.normal_curvature(&m);
    let r = |a, b, al| -> Vec<Expr> { rp.on_frame(a, b, al).iter().map(|e| sub.split.restrict(e)).collect() };
    assert_eq!(r(0, 1, 0), vec![Expr::zero(), p(&m, "-t^4")]);
    assert_eq!(r(0, 1, 1), vec![p(&m, "t^4"), Expr::zero()]);
    assert_eq!(r(0, 2, 0), vec![Expr::zero(), p(&m, "-2*x2*t^2")]);
    assert!(r(1, 2, 0).iter().all(Expr::is_zero));
}

#[test]
fn theorem_gap_condition() {
    let (m, s) = fixtures::example();
    let ab = extract_alpha_beta(&m, &s).unwrap();
    let gap = |a: &Expr, b: &Expr, xb: &Expr| &(&a.square() + &b.square()) - xb;
    assert_eq!(gap(&ab.alpha, &ab.beta, &ab.xi_beta), p(&m, "t^4/4"));
    assert_eq!(gap(&p(&m, "t^2/2"), &p(&m, "-1/t"), &p(&m, "1/t^2")), p(&m, "t^4/4"));
}
