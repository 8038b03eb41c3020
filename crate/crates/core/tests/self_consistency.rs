//! Engine identities that must hold on every manifold and distribution.

use tsgeom::check::IdentityCheck;
use tsgeom::curvature::{
    antisymmetry_check, bianchi_check, metric_compatibility_check, pair_symmetry_check, ricci, ricci_symmetry_check,
    riemann, torsion_check,
};
use tsgeom::fixtures;
use tsgeom::frame::Manifold;
use tsgeom::submanifold::{
    gauss_equation_check, normal_metric_check, reciprocity_check, sigma_symmetry_check, Submanifold, SubmanifoldSpec,
};

fn ambient_checks(m: &Manifold) -> Vec<IdentityCheck> {
    let r = riemann(m);
    let s = ricci(&r, &m.metric);
    vec![
        torsion_check(m),
        metric_compatibility_check(m),
        antisymmetry_check(&r),
        bianchi_check(&r),
        pair_symmetry_check(&r, &m.metric),
        ricci_symmetry_check(&s),
    ]
}

fn submanifold_checks(m: &Manifold, spec: &SubmanifoldSpec) -> Vec<IdentityCheck> {
    let sub = Submanifold::new(m, spec).unwrap();
    let r = riemann(m);
    let mut v = vec![
        sigma_symmetry_check(&sub),
        reciprocity_check(&sub),
        normal_metric_check(m, &sub),
    ];
    v.extend(gauss_equation_check(m, &sub, &r));
    v
}

fn assert_all(checks: &[IdentityCheck]) {
    for c in checks {
        assert!(c.holds(), "{} fails at {:?}", c.id, c.witnesses().first());
        assert!(c.checked() > 0, "{} is vacuous", c.id);
    }
}

#[test]
fn example() {
    let (m, _) = fixtures::example();
    assert_all(&ambient_checks(&m));
    assert_all(&submanifold_checks(&m, &fixtures::example_distribution(&m)));
    assert_all(&submanifold_checks(&m, &fixtures::example_leaf(&m)));
    assert_all(&submanifold_checks(&m, &fixtures::example_non_invariant(&m)));
}

#[test]
fn flat() {
    let (m, _) = fixtures::flat();
    assert_all(&ambient_checks(&m));
    assert!(riemann(&m).is_zero());
    assert_all(&submanifold_checks(&m, &fixtures::flat_distribution(&m)));
}

#[test]
fn negative_control_bends_and_still_satisfies_the_identities() {
    let (m, _) = fixtures::negative_control();
    assert_all(&ambient_checks(&m));
    let spec = fixtures::negative_control_distribution(&m);
    assert!(!Submanifold::new(&m, &spec).unwrap().is_totally_geodesic());
    assert_all(&submanifold_checks(&m, &spec));
}
