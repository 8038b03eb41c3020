use proptest::prelude::*;
use tsgeom::fixtures;
use tsgeom::frame::unit;
use tsgeom::structure::extract_alpha_beta;
use tsgeom::submanifold::Submanifold;
use tsgeom::tachibana::{
    bilinear_tensor, curvature_dot, sigma_tensor, tachibana_q, theorem_report, Ambient, Bundle, CovariantTensorField,
};
use tsgeom::{Expr, ExprMatrix};

const DIM: usize = 3;

fn small() -> impl Strategy<Value = Expr> {
    (-3i64..=3, 0usize..3, 0u32..2).prop_map(|(k, v, e)| {
        let x = Expr::var(v);
        let mut out = Expr::int(k);
        for _ in 0..e {
            out = &out * &x;
        }
        out
    })
}

fn symmetric_matrix() -> impl Strategy<Value = ExprMatrix> {
    prop::collection::vec(small(), DIM * DIM).prop_map(|v| {
        let mut a = ExprMatrix::zeros(DIM);
        for i in 0..DIM {
            for j in i..DIM {
                a[(i, j)] = v[i * DIM + j].clone();
                a[(j, i)] = v[i * DIM + j].clone();
            }
        }
        a
    })
}

fn tensor(rank: usize, fiber: usize) -> impl Strategy<Value = CovariantTensorField> {
    let bundle = if fiber == 1 { Bundle::Scalar } else { Bundle::Normal };
    prop::collection::vec(prop::collection::vec(small(), fiber), DIM.pow(rank as u32))
        .prop_map(move |comps| CovariantTensorField::new(rank, bundle, DIM, fiber, comps, vec![]).unwrap())
}

fn antisymmetric_in_last_two(q: &CovariantTensorField) -> bool {
    let r = q.rank();
    q.components().all(|(idx, v)| {
        let mut sw = idx.clone();
        sw.swap(r - 2, r - 1);
        v.iter().zip(q.get(&sw)).all(|(a, b)| (a + b).is_zero())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn q_is_antisymmetric_in_its_last_two_slots(a in symmetric_matrix(), t in (1usize..=3).prop_flat_map(|r| tensor(r, 2))) {
        prop_assert!(antisymmetric_in_last_two(&tachibana_q(&a, &t).unwrap()));
    }

    #[test]
    fn q_is_additive(a in symmetric_matrix(), t1 in tensor(2, 1), t2 in tensor(2, 1)) {
        let lhs = tachibana_q(&a, &t1.add(&t2).unwrap()).unwrap();
        let rhs = tachibana_q(&a, &t1).unwrap().add(&tachibana_q(&a, &t2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_of_a_form_on_itself_vanishes(a in symmetric_matrix()) {
        prop_assert!(tachibana_q(&a, &bilinear_tensor(&a).unwrap()).unwrap().is_zero());
    }
}

fn on_fixtures(f: impl Fn(&CovariantTensorField, &ExprMatrix)) {
    let (m, _) = fixtures::example();
    let d = Submanifold::new(&m, &fixtures::example_distribution(&m)).unwrap();
    f(&sigma_tensor(&d).unwrap(), d.split.tangent_gram());
    let (m, _) = fixtures::negative_control();
    let c = Submanifold::new(&m, &fixtures::negative_control_distribution(&m)).unwrap();
    f(&sigma_tensor(&c).unwrap(), c.split.tangent_gram());
}

#[test]
fn q_identities_on_fixture_distributions() {
    on_fixtures(|sigma, g| {
        assert!(tachibana_q(g, &bilinear_tensor(g).unwrap()).unwrap().is_zero());
        let q = tachibana_q(g, sigma).unwrap();
        assert!(antisymmetric_in_last_two(&q));
        let doubled = tachibana_q(g, &sigma.add(sigma).unwrap()).unwrap();
        assert_eq!(doubled, q.add(&q).unwrap());
    });
}

#[test]
fn curvature_dot_matches_the_expansion_along_xi() {
    // (R(xi,Y).sigma)(U,V) = R-perp(xi,Y) sigma(U,V) - sigma(R(xi,Y)U, V) - sigma(U, R(xi,Y)V)
    let (m, s) = fixtures::negative_control();
    let sub = Submanifold::new(&m, &fixtures::negative_control_distribution(&m)).unwrap();
    let ab = extract_alpha_beta(&m, &s).unwrap();
    let amb = Ambient::new(&m, &s, ab.alpha, ab.beta).unwrap();
    let sigma = sigma_tensor(&sub).unwrap();
    let rperp = sub.normal_curvature(&m);
    let t = sub.split.tangent().to_vec();
    let op = |a: usize, b: usize, c: usize| sub.split.tangential_coeffs(&m, &amb.riemann.apply(&t[a], &t[b], &t[c]));
    let dot = curvature_dot(&op, &rperp, &sigma).unwrap();
    let k = sub.dim();
    let xi = 2;
    for y in 0..k {
        for u in 0..k {
            for v in 0..k {
                let mut want = rperp.apply(&unit(k, xi), &unit(k, y), sigma.get(&[u, v]));
                for c in 0..k {
                    let ru = &op(xi, y, u)[c];
                    let rv = &op(xi, y, v)[c];
                    for (w, (p, q)) in want.iter_mut().zip(sigma.get(&[c, v]).iter().zip(sigma.get(&[u, c]))) {
                        *w = &(&*w - &(ru * p)) - &(rv * q);
                    }
                }
                assert_eq!(dot.get(&[xi, y, u, v]), want.as_slice());
            }
        }
    }
}

#[test]
fn vanishing_sigma_makes_every_hypothesis_vanish() {
    let (m, s) = fixtures::example();
    let ab = extract_alpha_beta(&m, &s).unwrap();
    let amb = Ambient::new(&m, &s, ab.alpha, ab.beta).unwrap();
    let leaf = Submanifold::new(&m, &fixtures::example_leaf(&m)).unwrap();
    for t in 2..=9 {
        let r = theorem_report(&amb, &leaf, t).unwrap();
        assert!(r.hypothesis_zero && r.totally_geodesic && r.verdict, "theorem {t}");
    }
}
