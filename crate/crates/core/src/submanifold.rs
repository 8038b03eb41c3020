//! Submanifolds modeled as distributions spanned by ambient frame
//! combinations: the orthogonal splitting, the Gauss and Weingarten
//! decompositions, the second fundamental form and its covariant derivative,
//! normal curvature, invariance, and the identities an invariant submanifold
//! of a trans-Sasakian manifold satisfies.
//!
//! Tangent vectors are carried as coefficient vectors over the tangent frame
//! `e_a`, normal vectors over the normal frame `n_α`. Normal fields are
//! orthogonal but not normalized, so every projection goes through a Gram
//! solve.

use thiserror::Error;

use crate::check::{IdentityCheck, Witness};
use crate::curvature::{connection_curvature, CurvatureTensor};
use crate::frame::{add_vec, is_zero_vec, scale_vec, sub_vec, unit, Manifold};
use crate::structure::StructureData;
use crate::symbolic::{dot, Expr, ExprMatrix, SymbolicError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubmanifoldError {
    #[error("submanifold '{0}' has no tangent fields")]
    Empty(String),
    #[error("tangent field {index} has {found} components, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("more tangent fields ({found}) than the ambient dimension ({ambient})")]
    TooManyFields { found: usize, ambient: usize },
    #[error("induced metric is degenerate: tangent fields are dependent or span a null direction")]
    DegenerateInducedMetric,
    #[error("normal complement contains a null direction; unsupported")]
    NullNormalDirection,
    #[error("distribution is not involutive ({} bracket components leave it)", .0.len())]
    NotInvolutive(Vec<Witness>),
    #[error("leaf equation {constraint} is not preserved by tangent field {field}")]
    InvalidLeaf { constraint: usize, field: usize },
    #[error("leaf equation {0} solves a coordinate that also appears on a right-hand side")]
    CyclicLeaf(usize),
    #[error("submanifold is not invariant (xi tangent: {xi_tangent}, phi-stable: {phi_stable})")]
    NotInvariant { xi_tangent: bool, phi_stable: bool },
}

/// A named list of tangent fields in ambient frame components, optionally
/// restricted to one leaf of the distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmanifoldSpec {
    pub name: String,
    pub tangent: Vec<Vec<Expr>>,
    pub leaf: Option<Leaf>,
}

impl SubmanifoldSpec {
    pub fn new(name: impl Into<String>, tangent: Vec<Vec<Expr>>) -> Self {
        SubmanifoldSpec {
            name: name.into(),
            tangent,
            leaf: None,
        }
    }

    pub fn with_leaf(mut self, leaf: Leaf) -> Self {
        self.leaf = Some(leaf);
        self
    }
}

/// One integral manifold of a distribution, cut out by solving coordinates:
/// `x_i = h_i`. Quantities are computed on the whole chart and restricted by
/// substitution before they are tested for zero; this is exact because
/// tangent derivatives commute with restriction to an integral manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct Leaf {
    subs: Vec<(usize, Expr)>,
}

impl Leaf {
    pub fn new(subs: Vec<(usize, Expr)>) -> Self {
        Leaf { subs }
    }

    pub fn substitutions(&self) -> &[(usize, Expr)] {
        &self.subs
    }

    pub fn restrict(&self, e: &Expr) -> Result<Expr, SymbolicError> {
        self.subs
            .iter()
            .try_fold(e.clone(), |acc, (var, h)| acc.substitute(*var, h))
    }

    /// Restricts both sides of every component. A component whose
    /// denominator vanishes on the leaf is kept unrestricted.
    pub fn restrict_check(&self, c: &IdentityCheck) -> IdentityCheck {
        let mut out = IdentityCheck::new(c.id.clone(), c.description.clone());
        for comp in c.components() {
            match (self.restrict(&comp.lhs), self.restrict(&comp.rhs)) {
                (Ok(l), Ok(r)) => out.push(comp.index.clone(), l, r),
                _ => out.push(comp.index.clone(), comp.lhs.clone(), comp.rhs.clone()),
            }
        }
        out
    }

    fn validate(&self, m: &Manifold, tangent: &[Vec<Expr>]) -> Result<(), SubmanifoldError> {
        for (k, (var, h)) in self.subs.iter().enumerate() {
            if self
                .subs
                .iter()
                .any(|(v, _)| h.numerator().contains_var(*v) || h.denominator().contains_var(*v))
            {
                return Err(SubmanifoldError::CyclicLeaf(k));
            }
            let c = &Expr::var(*var) - h;
            for (field, e) in tangent.iter().enumerate() {
                let d = self.restrict(&m.derive(e, &c)).unwrap_or_else(|_| Expr::one());
                if !d.is_zero() {
                    return Err(SubmanifoldError::InvalidLeaf { constraint: k, field });
                }
            }
        }
        Ok(())
    }
}

/// `T M̃ = TM ⊕ T⊥M` along the distribution, with both Gram matrices.
#[derive(Clone, Debug)]
pub struct Splitting {
    leaf: Option<Leaf>,
    tangent: Vec<Vec<Expr>>,
    normal: Vec<Vec<Expr>>,
    tangent_gram: ExprMatrix,
    tangent_gram_inv: ExprMatrix,
    normal_gram: ExprMatrix,
    normal_gram_inv: ExprMatrix,
}

impl Splitting {
    pub fn new(m: &Manifold, spec: &SubmanifoldSpec) -> Result<Self, SubmanifoldError> {
        let n = m.dim();
        if spec.tangent.is_empty() {
            return Err(SubmanifoldError::Empty(spec.name.clone()));
        }
        if spec.tangent.len() > n {
            return Err(SubmanifoldError::TooManyFields {
                found: spec.tangent.len(),
                ambient: n,
            });
        }
        for (index, v) in spec.tangent.iter().enumerate() {
            if v.len() != n {
                return Err(SubmanifoldError::DimensionMismatch {
                    index,
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let tangent = spec.tangent.clone();
        if let Some(leaf) = &spec.leaf {
            leaf.validate(m, &tangent)?;
        }
        let tangent_gram = gram(m, &tangent);
        let tangent_gram_inv = tangent_gram
            .inverse()
            .map_err(|_| SubmanifoldError::DegenerateInducedMetric)?;
        let normal = normal_complement(m, &tangent, &tangent_gram_inv)?;
        let normal_gram = gram(m, &normal);
        let normal_gram_inv = normal_gram
            .inverse()
            .map_err(|_| SubmanifoldError::NullNormalDirection)?;
        Ok(Splitting {
            leaf: spec.leaf.clone(),
            tangent,
            normal,
            tangent_gram,
            tangent_gram_inv,
            normal_gram,
            normal_gram_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.tangent.len()
    }

    pub fn leaf(&self) -> Option<&Leaf> {
        self.leaf.as_ref()
    }

    /// Restricts a scalar to the leaf, if one is set.
    pub fn restrict(&self, e: &Expr) -> Expr {
        match &self.leaf {
            Some(leaf) => leaf.restrict(e).unwrap_or_else(|_| e.clone()),
            None => e.clone(),
        }
    }

    /// Restricts a finished check to the leaf, if one is set.
    pub fn finish(&self, c: IdentityCheck) -> IdentityCheck {
        match &self.leaf {
            Some(leaf) => leaf.restrict_check(&c),
            None => c,
        }
    }

    pub fn codim(&self) -> usize {
        self.normal.len()
    }

    pub fn tangent(&self) -> &[Vec<Expr>] {
        &self.tangent
    }

    pub fn normal(&self) -> &[Vec<Expr>] {
        &self.normal
    }

    pub fn tangent_gram(&self) -> &ExprMatrix {
        &self.tangent_gram
    }

    pub fn normal_gram(&self) -> &ExprMatrix {
        &self.normal_gram
    }

    /// Coefficients over `e_a` of the tangential part of an ambient vector.
    pub fn tangential_coeffs(&self, m: &Manifold, v: &[Expr]) -> Vec<Expr> {
        project(m, &self.tangent, &self.tangent_gram_inv, v)
    }

    /// Coefficients over `n_α` of the normal part of an ambient vector.
    pub fn normal_coeffs(&self, m: &Manifold, v: &[Expr]) -> Vec<Expr> {
        project(m, &self.normal, &self.normal_gram_inv, v)
    }

    pub fn tangent_vector(&self, c: &[Expr]) -> Vec<Expr> {
        combine(&self.tangent, c)
    }

    pub fn normal_vector(&self, c: &[Expr]) -> Vec<Expr> {
        combine(&self.normal, c)
    }

    /// Residual of membership in the tangent span, as normal coefficients.
    pub fn off_tangent(&self, m: &Manifold, v: &[Expr]) -> Vec<Expr> {
        self.normal_coeffs(m, v)
    }
}

fn gram(m: &Manifold, vs: &[Vec<Expr>]) -> ExprMatrix {
    let k = vs.len();
    let mut g = ExprMatrix::zeros(k);
    for i in 0..k {
        for j in i..k {
            let v = m.pair(&vs[i], &vs[j]);
            g[(j, i)] = v.clone();
            g[(i, j)] = v;
        }
    }
    g
}

fn project(m: &Manifold, basis: &[Vec<Expr>], gram_inv: &ExprMatrix, v: &[Expr]) -> Vec<Expr> {
    if basis.is_empty() {
        return Vec::new();
    }
    let low = m.metric.lower(v);
    let pairs: Vec<Expr> = basis.iter().map(|b| dot(b, &low)).collect();
    gram_inv.mul_vec(&pairs)
}

fn combine(basis: &[Vec<Expr>], c: &[Expr]) -> Vec<Expr> {
    let n = basis.first().map_or(0, Vec::len);
    let mut out = vec![Expr::zero(); n];
    for (b, k) in basis.iter().zip(c) {
        if k.is_zero() {
            continue;
        }
        out = add_vec(&out, &scale_vec(k, b));
    }
    out
}

/// Orthogonal complement by Gram–Schmidt over the ambient frame fields,
/// without normalization. Each normal is rescaled so that its first nonzero
/// component is 1.
fn normal_complement(
    m: &Manifold,
    tangent: &[Vec<Expr>],
    tangent_gram_inv: &ExprMatrix,
) -> Result<Vec<Vec<Expr>>, SubmanifoldError> {
    let n = m.dim();
    let want = n - tangent.len();
    let mut normals: Vec<Vec<Expr>> = Vec::new();
    let mut norms: Vec<Expr> = Vec::new();
    for i in 0..n {
        if normals.len() == want {
            break;
        }
        let e = unit(n, i);
        let c = project(m, tangent, tangent_gram_inv, &e);
        let mut v = sub_vec(&e, &combine(tangent, &c));
        for (u, nu) in normals.iter().zip(&norms) {
            let k = &m.pair(&v, u) / nu;
            if !k.is_zero() {
                v = sub_vec(&v, &scale_vec(&k, u));
            }
        }
        if is_zero_vec(&v) {
            continue;
        }
        let nv = m.pair(&v, &v);
        if nv.is_zero() {
            continue;
        }
        let lead = v
            .iter()
            .find(|e| !e.is_zero())
            .expect("nonzero")
            .inv()
            .expect("nonzero");
        let v = scale_vec(&lead, &v);
        norms.push(m.pair(&v, &v));
        normals.push(v);
    }
    if normals.len() != want {
        return Err(SubmanifoldError::NullNormalDirection);
    }
    Ok(normals)
}

/// `[e_a, e_b]` must lie in the distribution; witnesses are `[a, b, α]` with
/// the normal component of the bracket.
pub fn involutivity_check(m: &Manifold, split: &Splitting) -> IdentityCheck {
    let mut c = IdentityCheck::new("involutive", "[e_a, e_b] is tangent");
    let k = split.dim();
    let zero = vec![Expr::zero(); split.codim()];
    for a in 0..k {
        for b in a + 1..k {
            let br = m.bracket(&split.tangent[a], &split.tangent[b]);
            c.push_vec(&[a, b], &split.off_tangent(m, &br), &zero);
        }
    }
    split.finish(c)
}

/// All induced data of an involutive distribution with nondegenerate
/// induced metric.
#[derive(Clone, Debug)]
pub struct Submanifold {
    pub name: String,
    pub split: Splitting,
    /// `[e_a, e_b] = Σ_c brackets[a][b][c] e_c`.
    pub brackets: Vec<Vec<Vec<Expr>>>,
    /// `∇_{e_a} e_b = Σ_c induced[a][b][c] e_c`.
    pub induced: Vec<Vec<Vec<Expr>>>,
    /// `σ(e_a, e_b) = Σ_α sigma[a][b][α] n_α`.
    pub sigma: Vec<Vec<Vec<Expr>>>,
    /// `A_{n_α} e_a = Σ_c shape[α][a][c] e_c`.
    pub shape: Vec<Vec<Vec<Expr>>>,
    /// `∇⊥_{e_a} n_α = Σ_β normal_conn[a][α][β] n_β`.
    pub normal_conn: Vec<Vec<Vec<Expr>>>,
}

impl Submanifold {
    pub fn new(m: &Manifold, spec: &SubmanifoldSpec) -> Result<Self, SubmanifoldError> {
        let split = Splitting::new(m, spec)?;
        let inv = involutivity_check(m, &split);
        if !inv.holds() {
            return Err(SubmanifoldError::NotInvolutive(inv.witnesses().to_vec()));
        }
        let k = split.dim();
        let q = split.codim();
        let mut brackets = vec![vec![vec![Expr::zero(); k]; k]; k];
        let mut induced = vec![vec![Vec::new(); k]; k];
        let mut sigma = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                if a < b {
                    let br = m.bracket(&split.tangent[a], &split.tangent[b]);
                    let c = split.tangential_coeffs(m, &br);
                    brackets[b][a] = c.iter().map(|e| -e).collect();
                    brackets[a][b] = c;
                }
                let d = m.covariant(&split.tangent[a], &split.tangent[b]);
                induced[a][b] = split.tangential_coeffs(m, &d);
                sigma[a][b] = split.normal_coeffs(m, &d);
            }
        }
        let mut shape = vec![vec![Vec::new(); k]; q];
        let mut normal_conn = vec![vec![Vec::new(); q]; k];
        for a in 0..k {
            for al in 0..q {
                let d = m.covariant(&split.tangent[a], &split.normal[al]);
                shape[al][a] = split.tangential_coeffs(m, &d).iter().map(|e| -e).collect();
                normal_conn[a][al] = split.normal_coeffs(m, &d);
            }
        }
        Ok(Submanifold {
            name: spec.name.clone(),
            split,
            brackets,
            induced,
            sigma,
            shape,
            normal_conn,
        })
    }

    pub fn dim(&self) -> usize {
        self.split.dim()
    }

    pub fn codim(&self) -> usize {
        self.split.codim()
    }

    /// `X(f)` for `X` in tangent coefficients.
    pub fn derive(&self, m: &Manifold, x: &[Expr], f: &Expr) -> Expr {
        if f.is_constant() {
            return Expr::zero();
        }
        m.derive(&self.split.tangent_vector(x), f)
    }

    fn derive_basis(&self, m: &Manifold, a: usize, f: &Expr) -> Expr {
        if f.is_constant() {
            return Expr::zero();
        }
        m.derive(&self.split.tangent[a], f)
    }

    /// Induced connection `∇_X Y` on tangent coefficients.
    pub fn covariant(&self, m: &Manifold, x: &[Expr], y: &[Expr]) -> Vec<Expr> {
        let mut out: Vec<Expr> = y.iter().map(|b| self.derive(m, x, b)).collect();
        bilinear_into(&mut out, x, y, &self.induced);
        out
    }

    /// Normal connection `∇⊥_X W` on normal coefficients.
    pub fn normal_covariant(&self, m: &Manifold, x: &[Expr], w: &[Expr]) -> Vec<Expr> {
        let mut out: Vec<Expr> = w.iter().map(|b| self.derive(m, x, b)).collect();
        bilinear_into(&mut out, x, w, &self.normal_conn);
        out
    }

    /// `σ(X, Y)` in normal coefficients.
    pub fn sigma_apply(&self, x: &[Expr], y: &[Expr]) -> Vec<Expr> {
        let mut out = vec![Expr::zero(); self.codim()];
        bilinear_into(&mut out, x, y, &self.sigma);
        out
    }

    /// `A_W X` in tangent coefficients.
    pub fn shape_apply(&self, w: &[Expr], x: &[Expr]) -> Vec<Expr> {
        let mut out = vec![Expr::zero(); self.dim()];
        bilinear_into(&mut out, w, x, &self.shape);
        out
    }

    pub fn is_totally_geodesic(&self) -> bool {
        self.sigma
            .iter()
            .flatten()
            .flatten()
            .all(|e| self.split.restrict(e).is_zero())
    }

    /// Curvature of the induced connection over the tangent frame.
    pub fn induced_curvature(&self, m: &Manifold) -> CurvatureTensor {
        let k = self.dim();
        let derive = |a: usize, f: &Expr| self.derive_basis(m, a, f);
        CurvatureTensor::from_components(connection_curvature(k, k, &derive, &self.induced, &self.brackets))
    }

    /// `R⊥(e_a, e_b) n_α = Σ_β out[a][b][α][β] n_β`.
    pub fn normal_curvature(&self, m: &Manifold) -> NormalCurvature {
        let k = self.dim();
        let derive = |a: usize, f: &Expr| self.derive_basis(m, a, f);
        NormalCurvature {
            comps: connection_curvature(k, self.codim(), &derive, &self.normal_conn, &self.brackets),
        }
    }

    /// `(∇̃_{e_a} σ)(e_b, e_c) = Σ_α out[a][b][c][α] n_α`.
    pub fn nabla_sigma(&self, m: &Manifold) -> Vec<Vec<Vec<Vec<Expr>>>> {
        let k = self.dim();
        let basis: Vec<Vec<Expr>> = (0..k).map(|a| unit(k, a)).collect();
        let mut out = vec![vec![vec![Vec::new(); k]; k]; k];
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let d = self.normal_covariant(m, &basis[a], &self.sigma[b][c]);
                    let s1 = self.sigma_apply(&self.induced[a][b], &basis[c]);
                    let s2 = self.sigma_apply(&basis[b], &self.induced[a][c]);
                    out[a][b][c] = sub_vec(&sub_vec(&d, &s1), &s2);
                }
            }
        }
        out
    }
}

/// `out_r += Σ_{i,j} x_i y_j t[i][j][r]`.
fn bilinear_into(out: &mut [Expr], x: &[Expr], y: &[Expr], t: &[Vec<Vec<Expr>>]) {
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a * b;
            for (r, slot) in out.iter_mut().enumerate() {
                let c = &t[i][j][r];
                if !c.is_zero() {
                    *slot = &*slot + &(&ab * c);
                }
            }
        }
    }
}

/// Curvature of the normal connection.
#[derive(Clone, Debug)]
pub struct NormalCurvature {
    comps: Vec<Vec<Vec<Vec<Expr>>>>,
}

impl NormalCurvature {
    pub fn on_frame(&self, a: usize, b: usize, al: usize) -> &[Expr] {
        &self.comps[a][b][al]
    }

    /// `R⊥(X, Y) W` with `X, Y` tangent and `W` normal coefficients.
    pub fn apply(&self, x: &[Expr], y: &[Expr], w: &[Expr]) -> Vec<Expr> {
        let q = w.len();
        let mut out = vec![Expr::zero(); q];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() || a == b {
                    continue;
                }
                let xy = xa * yb;
                for (al, wa) in w.iter().enumerate() {
                    if wa.is_zero() {
                        continue;
                    }
                    let f = &xy * wa;
                    for (be, slot) in out.iter_mut().enumerate() {
                        let r = &self.comps[a][b][al][be];
                        if !r.is_zero() {
                            *slot = &*slot + &(&f * r);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().flatten().flatten().all(Expr::is_zero)
    }
}

pub fn sigma_symmetry_check(sub: &Submanifold) -> IdentityCheck {
    let mut c = IdentityCheck::new("sigma symmetric", "sigma(X,Y) = sigma(Y,X)");
    let k = sub.dim();
    for a in 0..k {
        for b in a + 1..k {
            c.push_vec(&[a, b], &sub.sigma[a][b], &sub.sigma[b][a]);
        }
    }
    sub.split.finish(c)
}

/// `g(A_V X, Y) = g(σ(X,Y), V)` over all frame triples.
pub fn reciprocity_check(sub: &Submanifold) -> IdentityCheck {
    let mut c = IdentityCheck::new("shape reciprocity", "g(A_V X, Y) = g(sigma(X,Y), V)");
    let k = sub.dim();
    let gt = sub.split.tangent_gram();
    let gn = sub.split.normal_gram();
    for al in 0..sub.codim() {
        for a in 0..k {
            for b in 0..k {
                let lhs = dot(&sub.shape[al][a], &gt.column(b));
                let rhs = dot(&sub.sigma[a][b], &gn.column(al));
                c.push(vec![al, a, b], lhs, rhs);
            }
        }
    }
    sub.split.finish(c)
}

/// `X g(V, W) = g(∇⊥_X V, W) + g(V, ∇⊥_X W)` on normal frame fields.
pub fn normal_metric_check(m: &Manifold, sub: &Submanifold) -> IdentityCheck {
    let mut c = IdentityCheck::new(
        "normal metric compatibility",
        "X g(V,W) = g(nabla_X V, W) + g(V, nabla_X W)",
    );
    let gn = sub.split.normal_gram();
    let k = sub.dim();
    let q = sub.codim();
    for a in 0..k {
        for al in 0..q {
            for be in al..q {
                let lhs = sub.derive_basis(m, a, &gn[(al, be)]);
                let rhs = &dot(&sub.normal_conn[a][al], &gn.column(be)) + &dot(&sub.normal_conn[a][be], &gn.column(al));
                c.push(vec![a, al, be], lhs, rhs);
            }
        }
    }
    sub.split.finish(c)
}

/// Tangency of ξ and φ-stability of the distribution.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub xi_tangent: IdentityCheck,
    pub phi_stable: IdentityCheck,
}

impl InvarianceReport {
    pub fn is_invariant(&self) -> bool {
        self.xi_tangent.holds() && self.phi_stable.holds()
    }
}

/// Membership of ξ and of every `φe_a` in the distribution; witnesses carry
/// the normal components that obstruct membership.
pub fn check_invariant(m: &Manifold, s: &StructureData, split: &Splitting) -> InvarianceReport {
    let zero = vec![Expr::zero(); split.codim()];
    let mut xi_tangent = IdentityCheck::new("xi tangent", "xi lies in the distribution");
    xi_tangent.push_vec(&[], &split.off_tangent(m, s.xi()), &zero);
    let mut phi_stable = IdentityCheck::new("phi(TM) in TM", "phi e_a lies in the distribution");
    for (a, e) in split.tangent().iter().enumerate() {
        phi_stable.push_vec(&[a], &split.off_tangent(m, &s.apply_phi(e)), &zero);
    }
    InvarianceReport {
        xi_tangent: split.finish(xi_tangent),
        phi_stable: split.finish(phi_stable),
    }
}

pub fn require_invariant(m: &Manifold, s: &StructureData, split: &Splitting) -> Result<(), SubmanifoldError> {
    let inv = check_invariant(m, s, split);
    if inv.is_invariant() {
        Ok(())
    } else {
        Err(SubmanifoldError::NotInvariant {
            xi_tangent: inv.xi_tangent.holds(),
            phi_stable: inv.phi_stable.holds(),
        })
    }
}

pub const CHECK_T1_CURVATURE: &str = "R~(X,Y)xi = R(X,Y)xi";
pub const CHECK_T1_NORMAL_STABLE: &str = "phi(T-perp M) in T-perp M";
pub const CHECK_T1_SIGMA_PHI_SWAP: &str = "sigma(X,phiY) = sigma(phiX,Y)";
pub const CHECK_T1_SIGMA_PHI_OUT: &str = "sigma(X,phiY) = phi sigma(X,Y)";
pub const CHECK_T1_SIGMA_XI: &str = "sigma(X,xi) = 0";
pub const CHECK_T1_SHAPE_XI: &str = "A_V xi = 0";

/// Identities of an invariant submanifold: ambient versus induced curvature
/// on ξ, φ-compatibility of σ, and the vanishing of `σ(X, ξ)` and `A_V ξ`.
/// `phi σ(X,Y)` is only evaluated after the normal bundle is checked to be
/// φ-stable.
pub fn verify_theorem1(
    m: &Manifold,
    s: &StructureData,
    sub: &Submanifold,
    ambient: &CurvatureTensor,
) -> Result<Vec<IdentityCheck>, SubmanifoldError> {
    require_invariant(m, s, &sub.split)?;
    let k = sub.dim();
    let q = sub.codim();
    let split = &sub.split;
    let basis: Vec<Vec<Expr>> = (0..k).map(|a| unit(k, a)).collect();
    let xi_t = split.tangential_coeffs(m, s.xi());
    let phi_t: Vec<Vec<Expr>> = split
        .tangent()
        .iter()
        .map(|e| split.tangential_coeffs(m, &s.apply_phi(e)))
        .collect();
    let induced = sub.induced_curvature(m);

    let mut eq19 = IdentityCheck::new(CHECK_T1_CURVATURE, "ambient and induced curvature agree on xi");
    for a in 0..k {
        for b in 0..k {
            let lhs = ambient.apply(&split.tangent()[a], &split.tangent()[b], s.xi());
            let rhs = split.tangent_vector(&induced.apply(&basis[a], &basis[b], &xi_t));
            eq19.push_vec(&[a, b], &lhs, &rhs);
        }
    }

    let mut stable = IdentityCheck::new(CHECK_T1_NORMAL_STABLE, "phi n_alpha is normal");
    let zero_t = vec![Expr::zero(); k];
    for (al, v) in split.normal().iter().enumerate() {
        stable.push_vec(&[al], &split.tangential_coeffs(m, &s.apply_phi(v)), &zero_t);
    }
    let stable = split.finish(stable);

    let mut swap = IdentityCheck::new(CHECK_T1_SIGMA_PHI_SWAP, "sigma(X, phi Y) = sigma(phi X, Y)");
    let mut out = IdentityCheck::new(CHECK_T1_SIGMA_PHI_OUT, "sigma(X, phi Y) = phi sigma(X, Y)");
    for a in 0..k {
        for b in 0..k {
            let lhs = sub.sigma_apply(&basis[a], &phi_t[b]);
            swap.push_vec(&[a, b], &lhs, &sub.sigma_apply(&phi_t[a], &basis[b]));
            if stable.holds() {
                let v = split.normal_vector(&sub.sigma[a][b]);
                out.push_vec(&[a, b], &lhs, &split.normal_coeffs(m, &s.apply_phi(&v)));
            }
        }
    }

    let mut sxi = IdentityCheck::new(CHECK_T1_SIGMA_XI, "sigma(X, xi) = 0");
    let zero_n = vec![Expr::zero(); q];
    for a in 0..k {
        sxi.push_vec(&[a], &sub.sigma_apply(&basis[a], &xi_t), &zero_n);
    }
    let mut axi = IdentityCheck::new(CHECK_T1_SHAPE_XI, "A_V xi = 0");
    for al in 0..q {
        axi.push_vec(&[al], &sub.shape_apply(&unit(q, al), &xi_t), &zero_t);
    }
    Ok([eq19, stable, swap, out, sxi, axi]
        .into_iter()
        .map(|c| split.finish(c))
        .collect())
}

pub const CHECK_GAUSS_TANGENTIAL: &str = "Gauss equation (tangential)";
pub const CHECK_GAUSS_NORMAL: &str = "Gauss equation (normal)";

/// `R̃(X,Y)Z = R(X,Y)Z + A_{σ(X,Z)}Y - A_{σ(Y,Z)}X + (∇̃_Xσ)(Y,Z) - (∇̃_Yσ)(X,Z)`
/// split into its tangential and normal parts.
pub fn gauss_equation_check(m: &Manifold, sub: &Submanifold, ambient: &CurvatureTensor) -> [IdentityCheck; 2] {
    let k = sub.dim();
    let split = &sub.split;
    let basis: Vec<Vec<Expr>> = (0..k).map(|a| unit(k, a)).collect();
    let induced = sub.induced_curvature(m);
    let ns = sub.nabla_sigma(m);
    let mut tan = IdentityCheck::new(
        CHECK_GAUSS_TANGENTIAL,
        "tan R~(X,Y)Z = R(X,Y)Z + A_sigma(X,Z) Y - A_sigma(Y,Z) X",
    );
    let mut nor = IdentityCheck::new(
        CHECK_GAUSS_NORMAL,
        "nor R~(X,Y)Z = (nabla_X sigma)(Y,Z) - (nabla_Y sigma)(X,Z)",
    );
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let r = ambient.apply(&split.tangent()[a], &split.tangent()[b], &split.tangent()[c]);
                let rt = split.tangential_coeffs(m, &r);
                let rn = split.normal_coeffs(m, &r);
                let rhs_t = add_vec(
                    &induced.apply(&basis[a], &basis[b], &basis[c]),
                    &sub_vec(
                        &sub.shape_apply(&sub.sigma[a][c], &basis[b]),
                        &sub.shape_apply(&sub.sigma[b][c], &basis[a]),
                    ),
                );
                tan.push_vec(&[a, b, c], &rt, &rhs_t);
                nor.push_vec(&[a, b, c], &rn, &sub_vec(&ns[a][b][c], &ns[b][a][c]));
            }
        }
    }
    [split.finish(tan), split.finish(nor)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::riemann;
    use crate::fixtures;

    #[test]
    fn example_distribution_bends_off_the_diagonal_leaf() {
        let (m, s) = fixtures::example();
        let sub = Submanifold::new(&m, &fixtures::example_distribution(&m)).unwrap();
        let e1m3: Vec<Expr> = [1, 0, -1, 0, 0].iter().map(|&k| Expr::int(k)).collect();
        let e2m4: Vec<Expr> = [0, 1, 0, -1, 0].iter().map(|&k| Expr::int(k)).collect();
        assert_eq!(sub.split.normal(), &[e1m3, e2m4]);
        // σ(e1, e2) and σ(·, ξ) vanish, σ(e1, e1) = σ(e2, e2) = (x2 - x4)(E1 - E3)
        let bend = vec![m.chart.parse("x2 - x4").unwrap(), Expr::zero()];
        assert_eq!(sub.sigma[0][0], bend);
        assert_eq!(sub.sigma[1][1], bend);
        assert!(is_zero_vec(&sub.sigma[0][1]));
        assert!((0..3).all(|a| is_zero_vec(&sub.sigma[a][2])));
        assert!(!sub.is_totally_geodesic());
        assert!(reciprocity_check(&sub).holds());
        assert!(sigma_symmetry_check(&sub).holds());
        assert!(normal_metric_check(&m, &sub).holds());
        assert!(check_invariant(&m, &s, &sub.split).is_invariant());
        for c in gauss_equation_check(&m, &sub, &riemann(&m)) {
            assert!(c.holds(), "{}", c.id);
        }
    }

    #[test]
    fn diagonal_leaf_is_totally_geodesic() {
        let (m, s) = fixtures::example();
        let sub = Submanifold::new(&m, &fixtures::example_leaf(&m)).unwrap();
        assert!(sub.is_totally_geodesic());
        let r = riemann(&m);
        for c in verify_theorem1(&m, &s, &sub, &r).unwrap() {
            assert!(c.holds(), "{}", c.id);
        }
        for c in gauss_equation_check(&m, &sub, &r) {
            assert!(c.holds(), "{}", c.id);
        }
    }

    #[test]
    fn leaf_must_be_an_integral_manifold() {
        let (m, _) = fixtures::example();
        let bad = fixtures::example_distribution(&m).with_leaf(Leaf::new(vec![(4, Expr::int(1))]));
        assert_eq!(
            Splitting::new(&m, &bad).unwrap_err(),
            SubmanifoldError::InvalidLeaf {
                constraint: 0,
                field: 0
            }
        );
        let cyclic =
            fixtures::example_distribution(&m).with_leaf(Leaf::new(vec![(3, Expr::var(1)), (1, Expr::var(3))]));
        assert_eq!(
            Splitting::new(&m, &cyclic).unwrap_err(),
            SubmanifoldError::CyclicLeaf(0)
        );
    }

    #[test]
    fn non_invariant_distribution_is_refused() {
        let (m, s) = fixtures::example();
        let spec = SubmanifoldSpec::new("N", vec![m.basis(0), m.basis(4)]);
        let sub = Submanifold::new(&m, &spec).unwrap();
        let inv = check_invariant(&m, &s, &sub.split);
        assert!(inv.xi_tangent.holds());
        assert!(!inv.phi_stable.holds());
        assert!(inv.phi_stable.witnesses().iter().all(|w| w.index[0] == 0));
        assert!(matches!(
            verify_theorem1(&m, &s, &sub, &riemann(&m)),
            Err(SubmanifoldError::NotInvariant {
                xi_tangent: true,
                phi_stable: false
            })
        ));
    }

    #[test]
    fn distribution_without_xi_is_not_invariant() {
        let (m, s) = fixtures::example();
        let d = fixtures::example_distribution(&m);
        let spec = SubmanifoldSpec::new("e1e2", d.tangent[..2].to_vec());
        let split = Splitting::new(&m, &spec).unwrap();
        let inv = check_invariant(&m, &s, &split);
        assert!(!inv.xi_tangent.holds());
        assert!(!involutivity_check(&m, &split).holds());
        assert!(matches!(
            Submanifold::new(&m, &spec),
            Err(SubmanifoldError::NotInvolutive(_))
        ));
    }

    #[test]
    fn full_dimensional_spec_has_empty_normal_frame() {
        let (m, _) = fixtures::example();
        let spec = SubmanifoldSpec::new("all", (0..5).map(|i| m.basis(i)).collect());
        let sub = Submanifold::new(&m, &spec).unwrap();
        assert_eq!(sub.codim(), 0);
        assert!(sub.is_totally_geodesic());
    }

    #[test]
    fn null_tangent_direction_is_rejected() {
        let (m, _) = fixtures::example();
        let null = add_vec(&m.basis(0), &m.basis(4));
        let spec = SubmanifoldSpec::new("null", vec![null]);
        assert_eq!(
            Splitting::new(&m, &spec).unwrap_err(),
            SubmanifoldError::DegenerateInducedMetric
        );
    }

    #[test]
    fn curved_distribution_in_flat_space() {
        let (m, s) = fixtures::negative_control();
        let sub = Submanifold::new(&m, &fixtures::negative_control_distribution(&m)).unwrap();
        assert!(check_invariant(&m, &s, &sub.split).is_invariant());
        assert!(!sub.is_totally_geodesic());
        assert!(sigma_symmetry_check(&sub).holds());
        assert!(reciprocity_check(&sub).holds());
        assert!(normal_metric_check(&m, &sub).holds());
        let r = riemann(&m);
        for c in gauss_equation_check(&m, &sub, &r) {
            assert!(c.holds(), "{}", c.id);
        }
        let ns = sub.nabla_sigma(&m);
        assert!(ns.iter().flatten().flatten().flatten().any(|e| !e.is_zero()));
    }
}
