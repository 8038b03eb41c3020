//! Lorentzian almost-contact structures `(φ, ξ, η, g)`: axiom checks,
//! extraction of the trans-Sasakian functions α and β, and classification.

use std::fmt;

use thiserror::Error;

use crate::check::IdentityCheck;
use crate::frame::{add_vec, is_zero_vec, scale_vec, unit, GeometryError, Manifold};
use crate::symbolic::{dot, Expr, ExprMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("structure dimension {found} does not match manifold dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure is not metric almost-contact; failing checks: {0:?}")]
    NotAlmostContact(Vec<String>),
    #[error("alpha and beta are not determined: phi X and phi^2 X are dependent for every frame X")]
    Underdetermined,
    #[error("nabla xi is not of the form -alpha phi X - beta phi^2 X")]
    NotTransSasakian(Box<TransSasakianParams>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `φE_j = Σ_i phi[i][j] E_i`, `ξ` in frame components, `η_i = g(E_i, ξ)`.
#[derive(Clone, Debug)]
pub struct StructureData {
    phi: ExprMatrix,
    phi2: ExprMatrix,
    xi: Vec<Expr>,
    eta: Vec<Expr>,
}

impl StructureData {
    pub fn new(m: &Manifold, phi: ExprMatrix, xi: Vec<Expr>) -> Result<Self, StructureError> {
        let n = m.dim();
        for found in [phi.dim(), xi.len()] {
            if found != n {
                return Err(StructureError::DimensionMismatch { expected: n, found });
            }
        }
        let eta = m.metric.lower(&xi);
        let phi2 = phi.mul(&phi);
        Ok(StructureData { phi, phi2, xi, eta })
    }

    pub fn phi(&self) -> &ExprMatrix {
        &self.phi
    }

    pub fn xi(&self) -> &[Expr] {
        &self.xi
    }

    pub fn eta(&self) -> &[Expr] {
        &self.eta
    }

    pub fn apply_phi(&self, v: &[Expr]) -> Vec<Expr> {
        self.phi.mul_vec(v)
    }

    /// The endomorphism `φ∘φ` (the matrix square, not `I + η⊗ξ`).
    pub fn apply_phi2(&self, v: &[Expr]) -> Vec<Expr> {
        self.phi2.mul_vec(v)
    }

    pub fn eta_of(&self, v: &[Expr]) -> Expr {
        dot(&self.eta, v)
    }
}

/// Named structure checks with witnesses.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub checks: Vec<IdentityCheck>,
}

pub const CHECK_ETA_XI: &str = "eta(xi)=-1";
pub const CHECK_PHI_SQUARED: &str = "phi^2=I+eta(x)xi";
pub const CHECK_METRIC: &str = "g(phiX,phiY)=g(X,Y)+eta(X)eta(Y)";
pub const CHECK_PHI_XI: &str = "phi(xi)=0";
pub const CHECK_ETA_PHI: &str = "eta(phi)=0";

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }

    pub fn get(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failing(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.holds())
            .map(|c| c.id.clone())
            .collect()
    }

    /// `η(ξ) = -1` together with the compatibility of `g` with `φ`: the part
    /// of the axioms that α, β extraction needs.
    pub fn metric_almost_contact(&self) -> bool {
        [CHECK_ETA_XI, CHECK_METRIC]
            .iter()
            .all(|id| self.get(id).is_some_and(IdentityCheck::holds))
    }
}

/// Checks `φ² = I + η⊗ξ`, `η(ξ) = -1`, `g(φX,φY) = g(X,Y) + η(X)η(Y)`,
/// `φξ = 0` and `η∘φ = 0` on frame components.
pub fn check_structure(m: &Manifold, s: &StructureData) -> StructureReport {
    let n = m.dim();
    let mut eta_xi = IdentityCheck::new(CHECK_ETA_XI, "eta(xi) = -1");
    eta_xi.push(vec![], s.eta_of(&s.xi), Expr::int(-1));

    let mut phi_sq = IdentityCheck::new(CHECK_PHI_SQUARED, "phi^2 X = X + eta(X) xi");
    for j in 0..n {
        for i in 0..n {
            let id = if i == j { Expr::one() } else { Expr::zero() };
            phi_sq.push(vec![i, j], s.phi2[(i, j)].clone(), &id + &(&s.xi[i] * &s.eta[j]));
        }
    }

    let mut metric = IdentityCheck::new(CHECK_METRIC, "g(phi X, phi Y) = g(X,Y) + eta(X) eta(Y)");
    let phi_cols: Vec<Vec<Expr>> = (0..n).map(|j| s.phi.column(j)).collect();
    for i in 0..n {
        for j in i..n {
            let lhs = m.pair(&phi_cols[i], &phi_cols[j]);
            let rhs = m.metric.get(i, j) + &(&s.eta[i] * &s.eta[j]);
            metric.push(vec![i, j], lhs, rhs);
        }
    }

    let mut phi_xi = IdentityCheck::new(CHECK_PHI_XI, "phi xi = 0");
    let zero = vec![Expr::zero(); n];
    phi_xi.push_vec(&[], &s.apply_phi(&s.xi), &zero);

    let mut eta_phi = IdentityCheck::new(CHECK_ETA_PHI, "eta(phi X) = 0");
    for (j, col) in phi_cols.iter().enumerate() {
        eta_phi.push(vec![j], s.eta_of(col), Expr::zero());
    }

    StructureReport {
        checks: vec![eta_xi, phi_sq, metric, phi_xi, eta_phi],
    }
}

/// α, β with the residual checks of the trans-Sasakian equations.
#[derive(Clone, Debug, PartialEq)]
pub struct TransSasakianParams {
    pub alpha: Expr,
    pub beta: Expr,
    pub xi_alpha: Expr,
    pub xi_beta: Expr,
    /// `∇_X ξ = -αφX - βφ²X`.
    pub nabla_xi: IdentityCheckSummary,
    /// `(∇_X φ)Y = α{g(X,Y)ξ - η(Y)X} + β{g(φX,Y)ξ - η(Y)φX}`.
    pub nabla_phi: IdentityCheckSummary,
    /// `(∇_X η)Y = αg(φX,Y) + βg(φX,φY)`.
    pub nabla_eta: IdentityCheckSummary,
}

/// Owned result of an identity check, kept alongside the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheckSummary {
    pub id: String,
    pub checked: usize,
    pub witnesses: Vec<crate::check::Witness>,
}

impl IdentityCheckSummary {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

impl From<&IdentityCheck> for IdentityCheckSummary {
    fn from(c: &IdentityCheck) -> Self {
        IdentityCheckSummary {
            id: c.id.clone(),
            checked: c.checked(),
            witnesses: c.witnesses().to_vec(),
        }
    }
}

pub const CHECK_NABLA_XI: &str = "nabla xi = -alpha phi - beta phi^2";
pub const CHECK_NABLA_PHI: &str = "nabla phi (trans-Sasakian)";
pub const CHECK_NABLA_ETA: &str = "nabla eta";

/// `∇_X ξ` residual against `-αφX - βφ²X` over the frame.
pub fn nabla_xi_check(m: &Manifold, s: &StructureData, alpha: &Expr, beta: &Expr) -> IdentityCheck {
    let mut c = IdentityCheck::new(CHECK_NABLA_XI, "nabla_X xi = -alpha phi X - beta phi^2 X");
    for i in 0..m.dim() {
        let e = m.basis(i);
        let lhs = m.covariant(&e, &s.xi);
        let rhs = add_vec(
            &scale_vec(&-alpha, &s.apply_phi(&e)),
            &scale_vec(&-beta, &s.apply_phi2(&e)),
        );
        c.push_vec(&[i], &lhs, &rhs);
    }
    c
}

/// Residual of the defining equation in the type-correct reading
/// `β{g(φX,Y)ξ - η(Y)φX}`.
pub fn nabla_phi_check(m: &Manifold, s: &StructureData, alpha: &Expr, beta: &Expr) -> IdentityCheck {
    let n = m.dim();
    let mut c = IdentityCheck::new(
        CHECK_NABLA_PHI,
        "(nabla_X phi)Y = alpha{g(X,Y)xi - eta(Y)X} + beta{g(phiX,Y)xi - eta(Y)phiX}",
    );
    for i in 0..n {
        let x = m.basis(i);
        let phix = s.apply_phi(&x);
        for j in 0..n {
            let y = m.basis(j);
            let phiy = s.apply_phi(&y);
            let lhs: Vec<Expr> = {
                let a = m.covariant(&x, &phiy);
                let b = s.apply_phi(&m.covariant(&x, &y));
                a.iter().zip(&b).map(|(p, q)| p - q).collect()
            };
            let a_part = add_vec(&scale_vec(m.metric.get(i, j), &s.xi), &scale_vec(&-&s.eta[j], &x));
            let b_part = add_vec(&scale_vec(&m.pair(&phix, &y), &s.xi), &scale_vec(&-&s.eta[j], &phix));
            let rhs = add_vec(&scale_vec(alpha, &a_part), &scale_vec(beta, &b_part));
            c.push_vec(&[i, j], &lhs, &rhs);
        }
    }
    c
}

pub fn nabla_eta_check(m: &Manifold, s: &StructureData, alpha: &Expr, beta: &Expr) -> IdentityCheck {
    let n = m.dim();
    let mut c = IdentityCheck::new(CHECK_NABLA_ETA, "(nabla_X eta)Y = alpha g(phiX,Y) + beta g(phiX,phiY)");
    for i in 0..n {
        let x = m.basis(i);
        let phix = s.apply_phi(&x);
        for j in 0..n {
            let y = m.basis(j);
            let lhs = &m.derive(&x, &s.eta[j]) - &s.eta_of(&m.covariant(&x, &y));
            let rhs = &(alpha * &m.pair(&phix, &y)) + &(beta * &m.pair(&phix, &s.apply_phi(&y)));
            c.push(vec![i, j], lhs, rhs);
        }
    }
    c
}

/// Solves `∇_X ξ = -αφX - βφ²X` for α, β from two independent frame
/// components, then verifies the equation on the whole frame and evaluates
/// the companion equations for `∇φ` and `∇η`.
pub fn extract_alpha_beta(m: &Manifold, s: &StructureData) -> Result<TransSasakianParams, StructureError> {
    let report = check_structure(m, s);
    if !report.metric_almost_contact() {
        return Err(StructureError::NotAlmostContact(report.failing()));
    }
    let n = m.dim();
    // rows (φX_r, φ²X_r, ∇_Xξ_r) over all frame X and components r
    let mut rows: Vec<(Expr, Expr, Expr)> = Vec::new();
    for i in 0..n {
        let e = unit(n, i);
        let p = s.apply_phi(&e);
        if is_zero_vec(&p) {
            continue;
        }
        let p2 = s.apply_phi2(&e);
        let d = m.covariant(&e, &s.xi);
        for r in 0..n {
            if !p[r].is_zero() || !p2[r].is_zero() {
                rows.push((p[r].clone(), p2[r].clone(), d[r].clone()));
            }
        }
    }
    let (alpha, beta) = solve_pair(&rows).ok_or(StructureError::Underdetermined)?;
    let xi_alpha = m.derive(&s.xi, &alpha);
    let xi_beta = m.derive(&s.xi, &beta);
    let params = TransSasakianParams {
        nabla_xi: (&nabla_xi_check(m, s, &alpha, &beta)).into(),
        nabla_phi: (&nabla_phi_check(m, s, &alpha, &beta)).into(),
        nabla_eta: (&nabla_eta_check(m, s, &alpha, &beta)).into(),
        alpha,
        beta,
        xi_alpha,
        xi_beta,
    };
    if !params.nabla_xi.holds() {
        return Err(StructureError::NotTransSasakian(Box::new(params)));
    }
    Ok(params)
}

/// Finds two rows `(a, b, d)` with `a*b' - a'*b ≠ 0` and solves
/// `-α a - β b = d` on them.
fn solve_pair(rows: &[(Expr, Expr, Expr)]) -> Option<(Expr, Expr)> {
    for (k, (a1, b1, d1)) in rows.iter().enumerate() {
        for (a2, b2, d2) in &rows[k + 1..] {
            let det = &(a1 * b2) - &(a2 * b1);
            if det.is_zero() {
                continue;
            }
            // [a1 b1; a2 b2] (α, β) = -(d1, d2)
            let alpha = &(&(b1 * d2) - &(b2 * d1)) / &det;
            let beta = &(&(a2 * d1) - &(a1 * d2)) / &det;
            return Some((alpha, beta));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Cosymplectic,
    LorentzianKenmotsu,
    LorentzianSasakian,
    BetaKenmotsu,
    AlphaSasakian,
    General,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Cosymplectic => "cosymplectic",
            Classification::LorentzianKenmotsu => "Lorentzian Kenmotsu",
            Classification::LorentzianSasakian => "Lorentzian Sasakian",
            Classification::BetaKenmotsu => "Lorentzian beta-Kenmotsu",
            Classification::AlphaSasakian => "Lorentzian alpha-Sasakian",
            Classification::General => "trans-Sasakian (general)",
        })
    }
}

/// Classifies by α and β; a function counts as constant when it depends on no
/// coordinate.
pub fn classify(alpha: &Expr, beta: &Expr) -> Classification {
    match (alpha.is_zero(), beta.is_zero()) {
        (true, true) => Classification::Cosymplectic,
        (true, false) if beta.is_one() => Classification::LorentzianKenmotsu,
        (false, true) if alpha.is_one() => Classification::LorentzianSasakian,
        (true, false) if beta.is_constant() => Classification::BetaKenmotsu,
        (false, true) if alpha.is_constant() => Classification::AlphaSasakian,
        _ => Classification::General,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_table() {
        let t = Expr::var(0);
        let a = &t.square() / &Expr::int(2);
        let b = -&t.inv().unwrap();
        assert_eq!(classify(&a, &b), Classification::General);
        assert_eq!(
            classify(&Expr::zero(), &Expr::one()),
            Classification::LorentzianKenmotsu
        );
        assert_eq!(
            classify(&Expr::one(), &Expr::zero()),
            Classification::LorentzianSasakian
        );
        assert_eq!(classify(&Expr::zero(), &Expr::int(3)), Classification::BetaKenmotsu);
        assert_eq!(
            classify(&Expr::rational(1, 2), &Expr::zero()),
            Classification::AlphaSasakian
        );
        assert_eq!(classify(&Expr::zero(), &Expr::zero()), Classification::Cosymplectic);
        assert_eq!(classify(&Expr::zero(), &t), Classification::General);
        assert_eq!(classify(&t, &Expr::zero()), Classification::General);
    }

    #[test]
    fn pair_solver_uses_independent_rows() {
        // -α·1 - β·0 = 2 ; -α·1 - β·1 = 5 → α = -2, β = -3
        let rows = vec![
            (Expr::one(), Expr::zero(), Expr::int(2)),
            (Expr::int(2), Expr::zero(), Expr::int(4)),
            (Expr::one(), Expr::one(), Expr::int(5)),
        ];
        assert_eq!(solve_pair(&rows), Some((Expr::int(-2), Expr::int(-3))));
        assert_eq!(solve_pair(&rows[..2]), None);
    }
}
