//! The Tachibana operator `Q(A, T)`, the wedge endomorphism `X ∧_A Y`, the
//! action of curvature operators on the second fundamental form, and the
//! evaluators for the theorems on invariant submanifolds.
//!
//! Tensors here live on the tangent frame of a submanifold: slot indices
//! range over `e_a`, values are scalars or coefficient vectors over the
//! tangent or normal frame.

use thiserror::Error;

use crate::check::{IdentityCheck, Witness};
use crate::curvature::{
    concircular, half_dimension, ricci, riemann, scalar, CurvatureError, CurvatureTensor, RicciTensor,
};
use crate::frame::{sub_vec, unit, Manifold};
use crate::structure::StructureData;
use crate::submanifold::{require_invariant, NormalCurvature, Submanifold, SubmanifoldError};
use crate::symbolic::{Expr, ExprMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TachibanaError {
    #[error("Q(A, T) needs a tensor of rank at least 1")]
    RankZero,
    #[error("tensor shape mismatch")]
    ShapeMismatch,
    #[error("tensor is not symmetric in slots {slots:?} at {index:?}")]
    NotSymmetric { slots: (usize, usize), index: Vec<usize> },
    #[error("theorem {0} is not one of 2..=9")]
    UnknownTheorem(u8),
    #[error("theorem evaluation refused: {0}")]
    Refused(#[from] SubmanifoldError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundle {
    Scalar,
    Tangent,
    Normal,
}

/// A `(0, k)` tensor in frame components: `comps[flat(i_1..i_k)]` is the
/// value, a vector of length `fiber` (1 for scalars).
#[derive(Clone, Debug, PartialEq)]
pub struct CovariantTensorField {
    rank: usize,
    bundle: Bundle,
    dim: usize,
    fiber: usize,
    comps: Vec<Vec<Expr>>,
    symmetries: Vec<(usize, usize)>,
}

impl CovariantTensorField {
    /// Builds a tensor and enforces the declared slot symmetries.
    pub fn new(
        rank: usize,
        bundle: Bundle,
        dim: usize,
        fiber: usize,
        comps: Vec<Vec<Expr>>,
        symmetries: Vec<(usize, usize)>,
    ) -> Result<Self, TachibanaError> {
        if comps.len() != dim.pow(rank as u32) || comps.iter().any(|v| v.len() != fiber) {
            return Err(TachibanaError::ShapeMismatch);
        }
        if bundle == Bundle::Scalar && fiber != 1 {
            return Err(TachibanaError::ShapeMismatch);
        }
        if symmetries.iter().any(|&(p, q)| p >= rank || q >= rank) {
            return Err(TachibanaError::ShapeMismatch);
        }
        let t = CovariantTensorField {
            rank,
            bundle,
            dim,
            fiber,
            comps,
            symmetries,
        };
        for &(p, q) in &t.symmetries {
            for flat in 0..t.comps.len() {
                let idx = t.index_of(flat);
                let mut sw = idx.clone();
                sw.swap(p, q);
                if t.get(&idx) != t.get(&sw) {
                    return Err(TachibanaError::NotSymmetric {
                        slots: (p, q),
                        index: idx,
                    });
                }
            }
        }
        Ok(t)
    }

    pub fn from_fn(
        rank: usize,
        bundle: Bundle,
        dim: usize,
        fiber: usize,
        symmetries: Vec<(usize, usize)>,
        f: impl Fn(&[usize]) -> Vec<Expr>,
    ) -> Result<Self, TachibanaError> {
        let comps = (0..dim.pow(rank as u32))
            .map(|flat| f(&multi_index(flat, rank, dim)))
            .collect();
        CovariantTensorField::new(rank, bundle, dim, fiber, comps, symmetries)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bundle(&self) -> Bundle {
        self.bundle
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fiber(&self) -> usize {
        self.fiber
    }

    pub fn symmetries(&self) -> &[(usize, usize)] {
        &self.symmetries
    }

    pub fn index_of(&self, flat: usize) -> Vec<usize> {
        multi_index(flat, self.rank, self.dim)
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &[Expr] {
        &self.comps[self.flat(idx)]
    }

    pub fn components(&self) -> impl Iterator<Item = (Vec<usize>, &[Expr])> {
        self.comps
            .iter()
            .enumerate()
            .map(|(flat, v)| (self.index_of(flat), v.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(Expr::is_zero)
    }

    /// Nonzero entries; the fiber slot is appended to the index for bundle
    /// values.
    pub fn nonzero(&self) -> Vec<Witness> {
        let mut out = Vec::new();
        for (idx, v) in self.components() {
            for (r, e) in v.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let mut index = idx.clone();
                if self.bundle != Bundle::Scalar {
                    index.push(r);
                }
                out.push(Witness {
                    index,
                    value: e.clone(),
                });
            }
        }
        out
    }

    /// Applies `f` to every scalar entry.
    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> CovariantTensorField {
        CovariantTensorField {
            comps: self.comps.iter().map(|v| v.iter().map(&f).collect()).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &CovariantTensorField) -> Result<CovariantTensorField, TachibanaError> {
        if (self.rank, self.bundle, self.dim, self.fiber) != (other.rank, other.bundle, other.dim, other.fiber) {
            return Err(TachibanaError::ShapeMismatch);
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        let symmetries = self
            .symmetries
            .iter()
            .filter(|s| other.symmetries.contains(s))
            .copied()
            .collect();
        Ok(CovariantTensorField {
            comps,
            symmetries,
            ..self.clone()
        })
    }

    /// A check whose components are this tensor against zero.
    pub fn zero_check(&self, id: &str, description: &str) -> IdentityCheck {
        let mut c = IdentityCheck::new(id, description);
        let zero = vec![Expr::zero(); self.fiber];
        for (idx, v) in self.components() {
            if self.bundle == Bundle::Scalar {
                c.push(idx, v[0].clone(), Expr::zero());
            } else {
                c.push_vec(&idx, v, &zero);
            }
        }
        c
    }
}

fn multi_index(mut flat: usize, rank: usize, dim: usize) -> Vec<usize> {
    let mut idx = vec![0; rank];
    for slot in idx.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
    idx
}

/// A symmetric `(0, 2)` scalar tensor from its matrix.
pub fn bilinear_tensor(a: &ExprMatrix) -> Result<CovariantTensorField, TachibanaError> {
    CovariantTensorField::from_fn(2, Bundle::Scalar, a.dim(), 1, vec![(0, 1)], |i| {
        vec![a[(i[0], i[1])].clone()]
    })
}

/// `(X ∧_A Y)Z = A(Y,Z)X - A(X,Z)Y` for frame-coefficient vectors.
pub fn wedge_apply(a: &ExprMatrix, x: &[Expr], y: &[Expr], z: &[Expr]) -> Vec<Expr> {
    let az = a.mul_vec(z);
    let ayz = crate::symbolic::dot(y, &az);
    let axz = crate::symbolic::dot(x, &az);
    x.iter().zip(y).map(|(xi, yi)| &(&ayz * xi) - &(&axz * yi)).collect()
}

/// `Q(A,T)(X_1..X_k; X, Y) = -Σ_s T(X_1, .., (X ∧_A Y)X_s, .., X_k)`.
pub fn tachibana_q(a: &ExprMatrix, t: &CovariantTensorField) -> Result<CovariantTensorField, TachibanaError> {
    let k = t.rank;
    if k == 0 {
        return Err(TachibanaError::RankZero);
    }
    if a.dim() != t.dim {
        return Err(TachibanaError::ShapeMismatch);
    }
    CovariantTensorField::from_fn(k + 2, t.bundle, t.dim, t.fiber, t.symmetries.clone(), |idx| {
        let (args, xy) = idx.split_at(k);
        let (x, y) = (xy[0], xy[1]);
        let mut out = vec![Expr::zero(); t.fiber];
        let mut slot_args = args.to_vec();
        for s in 0..k {
            let i = args[s];
            // (e_x ∧ e_y) e_i = A(y,i) e_x - A(x,i) e_y
            for (coef, w) in [(&a[(y, i)], x), (&-&a[(x, i)], y)] {
                if coef.is_zero() {
                    continue;
                }
                slot_args[s] = w;
                for (o, v) in out.iter_mut().zip(t.get(&slot_args)) {
                    if !v.is_zero() {
                        *o = &*o - &(coef * v);
                    }
                }
            }
            slot_args[s] = i;
        }
        out
    })
}

/// `(F(X,Y)·T)(U,V) = F⊥(X,Y)T(U,V) - T(F(X,Y)U, V) - T(U, F(X,Y)V)` for a
/// symmetric normal-valued `T`, with slots ordered `(X, Y, U, V)`.
/// `fop(a, b, c)` is `F(e_a, e_b)e_c` in tangent coefficients.
pub fn curvature_dot(
    fop: &dyn Fn(usize, usize, usize) -> Vec<Expr>,
    fperp: &NormalCurvature,
    t: &CovariantTensorField,
) -> Result<CovariantTensorField, TachibanaError> {
    if t.rank != 2 || t.bundle != Bundle::Normal {
        return Err(TachibanaError::ShapeMismatch);
    }
    let m = t.dim;
    let ops: Vec<Vec<Vec<Vec<Expr>>>> = (0..m)
        .map(|a| (0..m).map(|b| (0..m).map(|c| fop(a, b, c)).collect()).collect())
        .collect();
    let basis: Vec<Vec<Expr>> = (0..m).map(|a| unit(m, a)).collect();
    let apply_t = |u: &[Expr], v: &[Expr]| {
        let mut out = vec![Expr::zero(); t.fiber];
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if ui.is_zero() || vj.is_zero() {
                    continue;
                }
                let f = ui * vj;
                for (o, w) in out.iter_mut().zip(t.get(&[i, j])) {
                    if !w.is_zero() {
                        *o = &*o + &(&f * w);
                    }
                }
            }
        }
        out
    };
    CovariantTensorField::from_fn(4, Bundle::Normal, m, t.fiber, vec![(2, 3)], |idx| {
        let (x, y, u, v) = (idx[0], idx[1], idx[2], idx[3]);
        let perp = fperp.apply(&basis[x], &basis[y], t.get(&[u, v]));
        let a = apply_t(&ops[x][y][u], &basis[v]);
        let b = apply_t(&basis[u], &ops[x][y][v]);
        sub_vec(&sub_vec(&perp, &a), &b)
    })
}

/// Ambient quantities shared by every theorem evaluation.
#[derive(Clone, Debug)]
pub struct Ambient<'a> {
    pub m: &'a Manifold,
    pub s: &'a StructureData,
    pub alpha: Expr,
    pub beta: Expr,
    pub xi_alpha: Expr,
    pub xi_beta: Expr,
    pub riemann: CurvatureTensor,
    pub ricci: RicciTensor,
    pub tau: Expr,
    pub concircular: CurvatureTensor,
    /// `n` of the `(2n+1)`-dimensional ambient manifold.
    pub n: i64,
}

impl<'a> Ambient<'a> {
    pub fn new(m: &'a Manifold, s: &'a StructureData, alpha: Expr, beta: Expr) -> Result<Self, TachibanaError> {
        let r = riemann(m);
        let ric = ricci(&r, &m.metric);
        let tau = scalar(&ric, &m.metric);
        let conc = concircular(&r, &m.metric, &tau)?;
        let n = half_dimension(m.dim())? as i64;
        Ok(Ambient {
            m,
            s,
            xi_alpha: m.derive(s.xi(), &alpha),
            xi_beta: m.derive(s.xi(), &beta),
            alpha,
            beta,
            riemann: r,
            ricci: ric,
            tau,
            concircular: conc,
            n,
        })
    }

    /// Ricci tensor restricted to the tangent frame of `sub`.
    pub fn ricci_on(&self, sub: &Submanifold) -> ExprMatrix {
        let t = sub.split.tangent();
        let k = t.len();
        let mut a = ExprMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                a[(i, j)] = self.ricci.apply(&t[i], &t[j]);
            }
        }
        a
    }

    /// `tan(F(e_a, e_b)e_c)` for an ambient curvature-like tensor.
    fn tangential_op<'b>(
        &'b self,
        f: &'b CurvatureTensor,
        sub: &'b Submanifold,
    ) -> impl Fn(usize, usize, usize) -> Vec<Expr> + 'b {
        move |a, b, c| {
            let t = sub.split.tangent();
            sub.split.tangential_coeffs(self.m, &f.apply(&t[a], &t[b], &t[c]))
        }
    }
}

/// `σ` as a symmetric normal-valued `(0, 2)` tensor.
pub fn sigma_tensor(sub: &Submanifold) -> Result<CovariantTensorField, TachibanaError> {
    CovariantTensorField::from_fn(2, Bundle::Normal, sub.dim(), sub.codim(), vec![(0, 1)], |i| {
        sub.sigma[i[0]][i[1]].clone()
    })
}

/// `∇̃σ` as a normal-valued `(0, 3)` tensor with slots `(X, Y, Z)`.
pub fn nabla_sigma_tensor(m: &Manifold, sub: &Submanifold) -> Result<CovariantTensorField, TachibanaError> {
    let ns = sub.nabla_sigma(m);
    CovariantTensorField::from_fn(3, Bundle::Normal, sub.dim(), sub.codim(), vec![(1, 2)], |i| {
        ns[i[0]][i[1]][i[2]].clone()
    })
}

/// One condition of a theorem's conclusion: `expr = 0`, or the
/// totally-geodesic flag when `expr` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Disjunct {
    pub label: String,
    pub expr: Option<Expr>,
    pub holds: bool,
}

impl Disjunct {
    fn condition(label: &str, expr: Expr) -> Self {
        Disjunct {
            label: label.to_string(),
            holds: expr.is_zero(),
            expr: Some(expr),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: u8,
    pub hypothesis_label: String,
    pub hypothesis: CovariantTensorField,
    pub hypothesis_zero: bool,
    pub totally_geodesic: bool,
    /// The conclusion as stated, totally-geodesic flag first.
    pub disjuncts: Vec<Disjunct>,
    /// The final condition reached in the argument for the theorem.
    pub proof_conditions: Vec<Disjunct>,
    pub notes: Vec<String>,
    pub verdict: bool,
}

impl TheoremReport {
    /// Labels of the disjuncts that hold.
    pub fn rescued_by(&self) -> Vec<&str> {
        self.disjuncts
            .iter()
            .filter(|d| d.holds)
            .map(|d| d.label.as_str())
            .collect()
    }
}

pub const THEOREMS: std::ops::RangeInclusive<u8> = 2..=9;

/// Evaluates the hypothesis tensor and conclusion of a theorem on an
/// invariant submanifold. A theorem passes when its hypothesis tensor is
/// nonzero (nothing is claimed) or when one of its stated disjuncts holds;
/// the `Q(g, σ)` theorem is an equivalence and passes when both sides agree.
pub fn theorem_report(amb: &Ambient, sub: &Submanifold, which: u8) -> Result<TheoremReport, TachibanaError> {
    if !THEOREMS.contains(&which) {
        return Err(TachibanaError::UnknownTheorem(which));
    }
    require_invariant(amb.m, amb.s, &sub.split)?;
    let m = amb.m;
    let restrict = |e: &Expr| sub.split.restrict(e);
    let g = sub.split.tangent_gram().clone();
    let ric = amb.ricci_on(sub);
    let sigma = sigma_tensor(sub)?;
    let (label, hyp) = match which {
        2 => ("Q(S,sigma)", tachibana_q(&ric, &sigma)?),
        3 => ("Q(g,sigma)", tachibana_q(&g, &sigma)?),
        4 => ("Q(S,nabla sigma)", tachibana_q(&ric, &nabla_sigma_tensor(m, sub)?)?),
        5 => ("Q(g,nabla sigma)", tachibana_q(&g, &nabla_sigma_tensor(m, sub)?)?),
        _ => {
            let rperp = sub.normal_curvature(m);
            let (f, lbl_g, lbl_s) = if which <= 7 {
                (&amb.riemann, "Q(g,R.sigma)", "Q(S,R.sigma)")
            } else {
                (&amb.concircular, "Q(g,C.sigma)", "Q(S,C.sigma)")
            };
            let dot = curvature_dot(&amb.tangential_op(f, sub), &rperp, &sigma)?;
            if which.is_multiple_of(2) {
                (lbl_g, tachibana_q(&g, &dot)?)
            } else {
                (lbl_s, tachibana_q(&ric, &dot)?)
            }
        }
    };
    let hyp = hyp.map(restrict);
    let hypothesis_zero = hyp.is_zero();
    let totally_geodesic = sub.is_totally_geodesic();

    let (al, be, xa, xb) = (&amb.alpha, &amb.beta, &amb.xi_alpha, &amb.xi_beta);
    let n = amb.n;
    let k = Expr::int(2 * n * (2 * n + 1));
    // a = α² + β² - ξ(β), p = 2αβ - ξ(α)
    let a = &(&al.square() + &be.square()) - xb;
    let p = &(al * be).scale(2) - xa;
    let b = &al.square() - &be.square();
    let minus = &(xb - xa) - &(be - al).square();
    let plus = &(xb + xa) - &(be + al).square();
    let tau = &amb.tau;
    let tau_plus = tau - &(&k * &(&(al + be).square() - &(xa + xb)));
    let tau_minus = tau - &(&k * &(&(al - be).square() - &(xa - xb)));
    let tg = Disjunct {
        label: "totally geodesic".into(),
        expr: None,
        holds: totally_geodesic,
    };
    let cond = |label: &str, e: &Expr| Disjunct::condition(label, restrict(e));
    let mut notes = Vec::new();
    let (disjuncts, proof): (Vec<Disjunct>, Vec<Disjunct>) = match which {
        2 => (
            vec![cond("xi(beta) = alpha^2 + beta^2", &a)],
            vec![cond("-2n(alpha^2 + beta^2 - xi(beta)) = 0", &a.scale(-2 * n))],
        ),
        3 => (vec![], vec![]),
        4 => (
            vec![
                cond("xi(beta) = alpha^2 + beta^2", &a),
                cond("alpha^2 - beta^2 = 0", &b),
            ],
            vec![cond(
                "-2n(alpha^2 + beta^2 - xi(beta))(alpha^2 - beta^2) = 0",
                &(&a * &b).scale(-2 * n),
            )],
        ),
        5 => (
            vec![cond("alpha^2 - beta^2 = 0", &b)],
            vec![cond("alpha^2 - beta^2 = 0", &b)],
        ),
        6 => {
            notes.push(
                "stated with eta(grad f) = xi(f); the proof's factor [a^2+b^2-xi(b)]^2 - [2ab-xi(a)]^2 splits into the same two conditions".into(),
            );
            (
                vec![
                    cond("eta(grad(beta - alpha)) = (beta - alpha)^2", &minus),
                    cond("eta(grad(beta + alpha)) = (beta + alpha)^2", &plus),
                ],
                vec![cond(
                    "[alpha^2 + beta^2 - xi(beta)]^2 - [2 alpha beta - xi(alpha)]^2 = 0",
                    &(&a.square() - &p.square()),
                )],
            )
        }
        7 => (
            vec![
                cond("xi(beta) = alpha^2 + beta^2", &a),
                cond("xi(beta - alpha) = (alpha - beta)^2", &minus),
                cond("xi(beta + alpha) = (alpha + beta)^2", &plus),
            ],
            vec![cond(
                "2n(alpha^2 + beta^2 - xi(beta))([alpha^2 + beta^2 - xi(beta)]^2 - [2 alpha beta - xi(alpha)]^2) = 0",
                &(&a * &(&a.square() - &p.square())).scale(2 * n),
            )],
        ),
        8 => {
            let q = &a - &(tau / &k);
            notes.push(
                "the stated minus case uses xi(alpha - beta); the proof's factor gives tau = 2n(2n+1)[(alpha - beta)^2 - xi(beta - alpha)], reported separately".into(),
            );
            let proof_minus = tau - &(&k * &(&(al - be).square() - &(xb - xa)));
            (
                vec![
                    cond("tau = 2n(2n+1)[(alpha + beta)^2 - xi(alpha + beta)]", &tau_plus),
                    cond("tau = 2n(2n+1)[(alpha - beta)^2 - xi(alpha - beta)]", &tau_minus),
                ],
                vec![
                    cond(
                        "[alpha^2 + beta^2 - xi(beta) - tau/(2n(2n+1))]^2 - [2 alpha beta - xi(alpha)]^2 = 0",
                        &(&q.square() - &p.square()),
                    ),
                    cond("tau = 2n(2n+1)[(alpha - beta)^2 - xi(beta - alpha)]", &proof_minus),
                ],
            )
        }
        _ => {
            notes.push(
                "the proof's final expression does not factor into the stated conditions; its zero status is reported on its own".into(),
            );
            let xi_tau = m.derive(amb.s.xi(), tau);
            let inner = &(&(&al.square() + &be.square()) - &(xb - &(&xi_tau / &k))).square() - &p.square();
            (
                vec![
                    cond("tau = 2n(2n+1)(2 alpha beta - xi(alpha))", &(tau - &(&k * &p))),
                    cond("tau = -2n(2n+1)(2 alpha beta - xi(alpha))", &(tau + &(&k * &p))),
                    cond("tau = 2n(2n+1)[(alpha + beta)^2 - xi(alpha + beta)]", &tau_plus),
                    cond("tau = 2n(2n+1)[(alpha - beta)^2 - xi(alpha - beta)]", &tau_minus),
                ],
                vec![cond(
                    "2n(alpha^2 + beta^2 - xi(beta))([alpha^2 + beta^2 - xi(beta - tau/(2n(2n+1)))]^2 - [2 alpha beta - xi(alpha)]^2) = 0",
                    &(&a * &inner).scale(2 * n),
                )],
            )
        }
    };
    let mut all = vec![tg];
    all.extend(disjuncts);
    let verdict = if which == 3 {
        hypothesis_zero == totally_geodesic
    } else {
        !hypothesis_zero || all.iter().any(|d| d.holds)
    };
    Ok(TheoremReport {
        theorem: which,
        hypothesis_label: label.to_string(),
        hypothesis: hyp,
        hypothesis_zero,
        totally_geodesic,
        disjuncts: all,
        proof_conditions: proof,
        notes,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::structure::extract_alpha_beta;

    fn q_antisymmetric(q: &CovariantTensorField) -> bool {
        let r = q.rank();
        q.components().all(|(idx, v)| {
            let mut sw = idx.clone();
            sw.swap(r - 2, r - 1);
            v.iter().zip(q.get(&sw)).all(|(a, b)| (a + b).is_zero())
        })
    }

    #[test]
    fn wedge_examples() {
        let (m, _) = fixtures::example();
        let g = m.metric.components();
        let xi = m.basis(4);
        let e1 = crate::frame::add_vec(&m.basis(0), &m.basis(2));
        assert!(wedge_apply(g, &xi, &xi, &e1).iter().all(Expr::is_zero));
        let minus_e1: Vec<Expr> = e1.iter().map(|e| -e).collect();
        assert_eq!(wedge_apply(g, &e1, &xi, &xi), minus_e1);
    }

    #[test]
    fn q_of_metric_on_metric_vanishes() {
        let (m, _) = fixtures::example();
        let g = m.metric.components();
        let q = tachibana_q(g, &bilinear_tensor(g).unwrap()).unwrap();
        assert_eq!(q.rank(), 4);
        assert!(q.is_zero());
    }

    #[test]
    fn rank_zero_is_rejected() {
        let t = CovariantTensorField::new(0, Bundle::Scalar, 3, 1, vec![vec![Expr::one()]], vec![]).unwrap();
        assert_eq!(tachibana_q(&ExprMatrix::identity(3), &t), Err(TachibanaError::RankZero));
    }

    #[test]
    fn symmetry_is_enforced() {
        let comps = vec![
            vec![Expr::zero()],
            vec![Expr::one()],
            vec![Expr::zero()],
            vec![Expr::zero()],
        ];
        assert!(matches!(
            CovariantTensorField::new(2, Bundle::Scalar, 2, 1, comps, vec![(0, 1)]),
            Err(TachibanaError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn negative_control_sigma_is_seen_by_q() {
        let (m, s) = fixtures::negative_control();
        let p = extract_alpha_beta(&m, &s).unwrap();
        let amb = Ambient::new(&m, &s, p.alpha, p.beta).unwrap();
        let sub = Submanifold::new(&m, &fixtures::negative_control_distribution(&m)).unwrap();
        let sigma = sigma_tensor(&sub).unwrap();
        let q = tachibana_q(sub.split.tangent_gram(), &sigma).unwrap();
        assert!(!q.is_zero());
        assert!(q_antisymmetric(&q));
        let r = theorem_report(&amb, &sub, 3).unwrap();
        assert!(!r.hypothesis_zero && !r.totally_geodesic && r.verdict);
    }

    #[test]
    fn diagonal_leaf_passes_every_theorem_via_total_geodesy() {
        let (m, s) = fixtures::example();
        let p = extract_alpha_beta(&m, &s).unwrap();
        let amb = Ambient::new(&m, &s, p.alpha, p.beta).unwrap();
        let sub = Submanifold::new(&m, &fixtures::example_leaf(&m)).unwrap();
        for t in THEOREMS {
            let r = theorem_report(&amb, &sub, t).unwrap();
            assert!(r.hypothesis_zero, "theorem {t}");
            assert!(r.verdict, "theorem {t}");
            assert_eq!(r.rescued_by()[0], "totally geodesic");
        }
    }

    #[test]
    fn non_invariant_is_refused() {
        let (m, s) = fixtures::example();
        let p = extract_alpha_beta(&m, &s).unwrap();
        let amb = Ambient::new(&m, &s, p.alpha, p.beta).unwrap();
        let sub = Submanifold::new(&m, &fixtures::example_non_invariant(&m)).unwrap();
        assert!(matches!(theorem_report(&amb, &sub, 2), Err(TachibanaError::Refused(_))));
        assert!(matches!(
            theorem_report(&amb, &sub, 10),
            Err(TachibanaError::UnknownTheorem(10))
        ));
    }
}
