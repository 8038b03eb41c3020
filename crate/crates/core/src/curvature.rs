//! Riemann, Ricci, scalar, and concircular curvature in frame components,
//! with the structural identities they must satisfy.
//!
//! Conventions: `R(X,Y)Z = ∇_X∇_Y Z - ∇_Y∇_X Z - ∇_[X,Y] Z`, Ricci contracts
//! the first slot `S(Y,Z) = Σ_i R^i_{iYZ}`, and `τ = Σ g^{jk} S_jk`.

use thiserror::Error;

use crate::check::IdentityCheck;
use crate::frame::{add_vec, scale_vec, Manifold, MetricFrame};
use crate::structure::StructureData;
use crate::symbolic::{dot, Expr, ExprMatrix};

pub const CURVATURE_CONVENTION: &str = "R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z";
pub const RICCI_CONVENTION: &str = "S(Y,Z) = sum_i R^i_(i Y Z) (contraction over the first slot)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("concircular curvature needs odd dimension 2n+1, got {0}")]
    EvenDimension(usize),
}

/// Curvature of a connection on a frame bundle:
/// `R(u_a, u_b) s_β = Σ_δ out[a][b][β][δ] s_δ`.
///
/// `conn[a][β]` holds the components of `∇_{u_a} s_β` along the fiber frame,
/// `brackets[a][b]` the components of `[u_a, u_b]` along the base frame, and
/// `derive(a, f)` computes `u_a(f)`.
pub fn connection_curvature(
    base_dim: usize,
    fiber_dim: usize,
    derive: &dyn Fn(usize, &Expr) -> Expr,
    conn: &[Vec<Vec<Expr>>],
    brackets: &[Vec<Vec<Expr>>],
) -> Vec<Vec<Vec<Vec<Expr>>>> {
    let zero = vec![Expr::zero(); fiber_dim];
    let mut out = vec![vec![vec![zero.clone(); fiber_dim]; base_dim]; base_dim];
    for a in 0..base_dim {
        for b in a + 1..base_dim {
            for beta in 0..fiber_dim {
                let mut v: Vec<Expr> = (0..fiber_dim)
                    .map(|d| &derive(a, &conn[b][beta][d]) - &derive(b, &conn[a][beta][d]))
                    .collect();
                for g in 0..fiber_dim {
                    let wb = &conn[b][beta][g];
                    let wa = &conn[a][beta][g];
                    for (d, slot) in v.iter_mut().enumerate() {
                        let mut acc = Expr::zero();
                        if !wb.is_zero() && !conn[a][g][d].is_zero() {
                            acc = &acc + &(wb * &conn[a][g][d]);
                        }
                        if !wa.is_zero() && !conn[b][g][d].is_zero() {
                            acc = &acc - &(wa * &conn[b][g][d]);
                        }
                        if !acc.is_zero() {
                            *slot = &*slot + &acc;
                        }
                    }
                }
                for e in 0..base_dim {
                    let c = &brackets[a][b][e];
                    if c.is_zero() {
                        continue;
                    }
                    for (d, slot) in v.iter_mut().enumerate() {
                        if !conn[e][beta][d].is_zero() {
                            *slot = &*slot - &(c * &conn[e][beta][d]);
                        }
                    }
                }
                out[b][a][beta] = v.iter().map(|e| -e).collect();
                out[a][b][beta] = v;
            }
        }
    }
    out
}

/// `R(E_i, E_j) E_k = Σ_l comps[i][j][k][l] E_l`.
#[derive(Clone, Debug)]
pub struct CurvatureTensor {
    comps: Vec<Vec<Vec<Vec<Expr>>>>,
}

impl CurvatureTensor {
    pub fn from_components(comps: Vec<Vec<Vec<Vec<Expr>>>>) -> Self {
        CurvatureTensor { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    /// `R^l_{ijk}`.
    pub fn get(&self, l: usize, i: usize, j: usize, k: usize) -> &Expr {
        &self.comps[i][j][k][l]
    }

    pub fn on_frame(&self, i: usize, j: usize, k: usize) -> &[Expr] {
        &self.comps[i][j][k]
    }

    /// `R(X, Y) Z` for frame-component vectors.
    pub fn apply(&self, x: &[Expr], y: &[Expr], z: &[Expr]) -> Vec<Expr> {
        let n = self.dim();
        let mut out = vec![Expr::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in z.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let abc = &ab * c;
                    for (l, slot) in out.iter_mut().enumerate() {
                        let r = &self.comps[i][j][k][l];
                        if !r.is_zero() {
                            *slot = &*slot + &(&abc * r);
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

pub fn riemann(m: &Manifold) -> CurvatureTensor {
    let n = m.dim();
    let derive = |a: usize, f: &Expr| {
        if f.is_constant() {
            Expr::zero()
        } else {
            m.frame.apply(a, f)
        }
    };
    CurvatureTensor {
        comps: connection_curvature(n, n, &derive, &m.connection.gamma, &m.connection.brackets),
    }
}

#[derive(Clone, Debug)]
pub struct RicciTensor {
    comps: ExprMatrix,
}

impl RicciTensor {
    pub fn get(&self, j: usize, k: usize) -> &Expr {
        &self.comps[(j, k)]
    }

    pub fn matrix(&self) -> &ExprMatrix {
        &self.comps
    }

    pub fn apply(&self, x: &[Expr], y: &[Expr]) -> Expr {
        dot(x, &self.comps.mul_vec(y))
    }
}

/// Ricci tensor by contraction over the first slot: `S_jk = Σ_i R^i_{ijk}`.
pub fn ricci(r: &CurvatureTensor, _g: &MetricFrame) -> RicciTensor {
    let n = r.dim();
    let mut comps = ExprMatrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            comps[(j, k)] = (0..n).map(|i| r.get(i, i, j, k).clone()).sum();
        }
    }
    RicciTensor { comps }
}

/// Scalar curvature `τ = Σ g^{jk} S_jk`.
pub fn scalar(s: &RicciTensor, g: &MetricFrame) -> Expr {
    let n = g.dim();
    let mut tau = Expr::zero();
    for j in 0..n {
        for k in 0..n {
            let gi = &g.inverse()[(j, k)];
            if !gi.is_zero() {
                tau = &tau + &(gi * s.get(j, k));
            }
        }
    }
    tau
}

/// Half-dimension `n` of a `(2n+1)`-dimensional manifold.
pub fn half_dimension(dim: usize) -> Result<usize, CurvatureError> {
    if dim.is_multiple_of(2) {
        return Err(CurvatureError::EvenDimension(dim));
    }
    Ok((dim - 1) / 2)
}

/// `C(X,Y)Z = R(X,Y)Z - τ/(2n(2n+1)) {g(Y,Z)X - g(X,Z)Y}`.
pub fn concircular(r: &CurvatureTensor, g: &MetricFrame, tau: &Expr) -> Result<CurvatureTensor, CurvatureError> {
    let dim = r.dim();
    let n = half_dimension(dim)? as i64;
    let k = tau / &Expr::int(2 * n * (2 * n + 1));
    let mut comps = r.comps.clone();
    for i in 0..dim {
        for j in 0..dim {
            for kk in 0..dim {
                // l = i term: + g_jk, l = j term: - g_ik
                let gjk = g.get(j, kk);
                if !gjk.is_zero() {
                    comps[i][j][kk][i] = &comps[i][j][kk][i] - &(&k * gjk);
                }
                let gik = g.get(i, kk);
                if !gik.is_zero() {
                    comps[i][j][kk][j] = &comps[i][j][kk][j] + &(&k * gik);
                }
            }
        }
    }
    Ok(CurvatureTensor { comps })
}

/// `R^l_{ijk} + R^l_{jik} = 0`.
pub fn antisymmetry_check(r: &CurvatureTensor) -> IdentityCheck {
    let n = r.dim();
    let mut c = IdentityCheck::new("riemann-antisymmetry", "R(X,Y)Z + R(Y,X)Z = 0");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let neg: Vec<Expr> = r.on_frame(j, i, k).iter().map(|e| -e).collect();
                c.push_vec(&[i, j, k], r.on_frame(i, j, k), &neg);
            }
        }
    }
    c
}

/// First Bianchi identity `R^l_{ijk} + R^l_{jki} + R^l_{kij} = 0`.
pub fn bianchi_check(r: &CurvatureTensor) -> IdentityCheck {
    let n = r.dim();
    let mut c = IdentityCheck::new("first-bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0");
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in 0..n {
                    let s = &(r.get(l, i, j, k) + r.get(l, j, k, i)) + r.get(l, k, i, j);
                    c.push(vec![i, j, k, l], s, Expr::zero());
                }
            }
        }
    }
    c
}

/// `g(R(X,Y)Z, W) = g(R(Z,W)X, Y)`.
pub fn pair_symmetry_check(r: &CurvatureTensor, g: &MetricFrame) -> IdentityCheck {
    let n = r.dim();
    let mut c = IdentityCheck::new("pair-symmetry", "g(R(X,Y)Z,W) = g(R(Z,W)X,Y)");
    let low: Vec<Vec<Vec<Vec<Expr>>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| g.lower(r.on_frame(i, j, k))).collect())
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for w in 0..n {
                    c.push(vec![i, j, k, w], low[i][j][k][w].clone(), low[k][w][i][j].clone());
                }
            }
        }
    }
    c
}

pub fn ricci_symmetry_check(s: &RicciTensor) -> IdentityCheck {
    let n = s.comps.dim();
    let mut c = IdentityCheck::new("ricci-symmetry", "S(X,Y) = S(Y,X)");
    for j in 0..n {
        for k in j + 1..n {
            c.push(vec![j, k], s.get(j, k).clone(), s.get(k, j).clone());
        }
    }
    c
}

/// `∇_X Y - ∇_Y X - [X,Y] = 0` on frame pairs.
pub fn torsion_check(m: &Manifold) -> IdentityCheck {
    let n = m.dim();
    let mut c = IdentityCheck::new("torsion-free", "nabla_X Y - nabla_Y X = [X,Y]");
    for i in 0..n {
        for j in i + 1..n {
            let l: Vec<Expr> = (0..n)
                .map(|k| m.connection.coefficient(k, i, j) - m.connection.coefficient(k, j, i))
                .collect();
            c.push_vec(&[i, j], &l, &m.connection.brackets[i][j]);
        }
    }
    c
}

/// `E_i g(E_j,E_k) = g(∇_{E_i}E_j, E_k) + g(E_j, ∇_{E_i}E_k)`.
pub fn metric_compatibility_check(m: &Manifold) -> IdentityCheck {
    let n = m.dim();
    let mut c = IdentityCheck::new("metric-compatible", "X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla_X Z)");
    for i in 0..n {
        let lowered: Vec<Vec<Expr>> = (0..n).map(|j| m.metric.lower(&m.connection.gamma[i][j])).collect();
        for j in 0..n {
            for k in j..n {
                let lhs = m.frame.apply(i, m.metric.get(j, k));
                let rhs = &lowered[j][k] + &lowered[k][j];
                c.push(vec![i, j, k], lhs, rhs);
            }
        }
    }
    c
}

pub const CHECK_PROP_R_XI: &str = "R(X,Y)xi";
pub const CHECK_PROP_ETA_R: &str = "eta(R(X,Y)Z)";
pub const CHECK_PROP_R_XI_X_XI: &str = "R(xi,X)xi";
pub const CHECK_PROP_S_X_XI: &str = "S(X,xi)";

/// Residuals of the four curvature identities of a trans-Sasakian manifold,
/// evaluated with the supplied α, β over all frame arguments.
pub fn verify_proposition1(
    m: &Manifold,
    s: &StructureData,
    alpha: &Expr,
    beta: &Expr,
    r: &CurvatureTensor,
    ric: &RicciTensor,
) -> Result<Vec<IdentityCheck>, CurvatureError> {
    let dim = m.dim();
    let n = half_dimension(dim)? as i64;
    let ab2 = &alpha.square() + &beta.square();
    let two_ab = (alpha * beta).scale(2);
    let xi = s.xi();
    let xi_alpha = m.derive(xi, alpha);
    let xi_beta = m.derive(xi, beta);
    let frame: Vec<Vec<Expr>> = (0..dim).map(|i| m.basis(i)).collect();
    let phi: Vec<Vec<Expr>> = frame.iter().map(|e| s.apply_phi(e)).collect();
    let phi2: Vec<Vec<Expr>> = frame.iter().map(|e| s.apply_phi2(e)).collect();
    let d_alpha: Vec<Expr> = frame.iter().map(|e| m.derive(e, alpha)).collect();
    let d_beta: Vec<Expr> = frame.iter().map(|e| m.derive(e, beta)).collect();
    let eta = s.eta();

    let mut eq6 = IdentityCheck::new(
        CHECK_PROP_R_XI,
        "R(X,Y)xi = (a^2+b^2)[eta(Y)X - eta(X)Y] + 2ab[eta(Y)phiX - eta(X)phiY] + Y(a)phiX - X(a)phiY + Y(b)phi^2X - X(b)phi^2Y",
    );
    for i in 0..dim {
        for j in 0..dim {
            let lhs = r.apply(&frame[i], &frame[j], xi);
            let rhs: Vec<Expr> = (0..dim)
                .map(|l| {
                    let t1 = &ab2 * &(&(&eta[j] * &frame[i][l]) - &(&eta[i] * &frame[j][l]));
                    let t2 = &two_ab * &(&(&eta[j] * &phi[i][l]) - &(&eta[i] * &phi[j][l]));
                    let t3 = &(&d_alpha[j] * &phi[i][l]) - &(&d_alpha[i] * &phi[j][l]);
                    let t4 = &(&d_beta[j] * &phi2[i][l]) - &(&d_beta[i] * &phi2[j][l]);
                    &(&t1 + &t2) + &(&t3 + &t4)
                })
                .collect();
            eq6.push_vec(&[i, j], &lhs, &rhs);
        }
    }

    let mut eq7 = IdentityCheck::new(CHECK_PROP_ETA_R, "eta(R(X,Y)Z) = (a^2+b^2) g(eta(Y)X - eta(X)Y, Z)");
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let lhs = s.eta_of(r.on_frame(i, j, k));
                let rhs = &ab2 * &(&(&eta[j] * m.metric.get(i, k)) - &(&eta[i] * m.metric.get(j, k)));
                eq7.push(vec![i, j, k], lhs, rhs);
            }
        }
    }

    let mut eq8 = IdentityCheck::new(
        CHECK_PROP_R_XI_X_XI,
        "R(xi,X)xi = (a^2+b^2-xi(b)) phi^2 X + (2ab - xi(a)) phi X",
    );
    let c_phi2 = &ab2 - &xi_beta;
    let c_phi = &two_ab - &xi_alpha;
    for i in 0..dim {
        let lhs = r.apply(xi, &frame[i], xi);
        let rhs = add_vec(&scale_vec(&c_phi2, &phi2[i]), &scale_vec(&c_phi, &phi[i]));
        eq8.push_vec(&[i], &lhs, &rhs);
    }

    let mut eq9 = IdentityCheck::new(
        CHECK_PROP_S_X_XI,
        "S(X,xi) = [2n(a^2+b^2) - xi(b)] eta(X) + (2n-1) X(b) - (phiX)(a)",
    );
    let lead = &ab2.scale(2 * n) - &xi_beta;
    for i in 0..dim {
        let lhs = ric.apply(&frame[i], xi);
        let rhs = &(&(&lead * &eta[i]) + &d_beta[i].scale(2 * n - 1)) - &m.derive(&phi[i], alpha);
        eq9.push(vec![i], lhs, rhs);
    }
    Ok(vec![eq6, eq7, eq8, eq9])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Chart, Frame, VectorField};

    /// Stereographic patch of the round 2-sphere of radius `r` with its
    /// orthonormal frame `E_i = (1 + x² + y²)/(2r) ∂_i`.
    fn sphere(r: i64) -> Manifold {
        let chart = Chart::new(vec!["x".into(), "y".into()], None).unwrap();
        let f = chart.parse(&format!("(1 + x^2 + y^2)/(2*{r})")).unwrap();
        let e1 = VectorField::new(vec![f.clone(), Expr::zero()]);
        let e2 = VectorField::new(vec![Expr::zero(), f]);
        let frame = Frame::new(&chart, vec![e1, e2]).unwrap();
        Manifold::new(chart, frame, MetricFrame::new(ExprMatrix::identity(2)).unwrap()).unwrap()
    }

    #[test]
    fn round_sphere_scalar_curvature() {
        for r in [1, 2, 3] {
            let m = sphere(r);
            assert!(torsion_check(&m).holds());
            assert!(metric_compatibility_check(&m).holds());
            let rm = riemann(&m);
            let s = ricci(&rm, &m.metric);
            assert_eq!(scalar(&s, &m.metric), Expr::rational(2, r * r));
            // positive sectional curvature 1/r² under the pinned sign convention
            let k = m
                .metric
                .pair(&rm.apply(&m.basis(0), &m.basis(1), &m.basis(1)), &m.basis(0));
            assert_eq!(k, Expr::rational(1, r * r));
        }
    }

    #[test]
    fn concircular_rejects_even_dimension() {
        let m = sphere(1);
        let rm = riemann(&m);
        assert_eq!(
            concircular(&rm, &m.metric, &Expr::int(2)).unwrap_err(),
            CurvatureError::EvenDimension(2)
        );
    }
}
