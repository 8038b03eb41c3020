//! Identity checks: componentwise `lhs - rhs` residuals with witnesses, plus a
//! seeded pointwise cross-check of symbolic zero verdicts.

use crate::symbolic::{Expr, PointSampler};

/// Number of random points used to cross-check a symbolic zero verdict.
pub const CROSS_CHECK_POINTS: usize = 3;

#[derive(Clone, Debug)]
pub struct Component {
    pub index: Vec<usize>,
    pub lhs: Expr,
    pub rhs: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub index: Vec<usize>,
    pub value: Expr,
}

/// Result of evaluating both sides of every component at random rational
/// points.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub points: usize,
    pub agreed: bool,
    pub mismatch: Option<Vec<usize>>,
}

/// An identity evaluated over a set of frame components.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub id: String,
    pub description: String,
    components: Vec<Component>,
    witnesses: Vec<Witness>,
}

impl IdentityCheck {
    pub fn new(id: impl Into<String>, description: impl Into<String>) -> Self {
        IdentityCheck {
            id: id.into(),
            description: description.into(),
            components: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn push(&mut self, index: Vec<usize>, lhs: Expr, rhs: Expr) {
        let residual = &lhs - &rhs;
        if !residual.is_zero() {
            self.witnesses.push(Witness {
                index: index.clone(),
                value: residual,
            });
        }
        self.components.push(Component { index, lhs, rhs });
    }

    /// Pushes a vector-valued component; the component slot is appended to
    /// `index`.
    pub fn push_vec(&mut self, index: &[usize], lhs: &[Expr], rhs: &[Expr]) {
        debug_assert_eq!(lhs.len(), rhs.len());
        for (k, (l, r)) in lhs.iter().zip(rhs).enumerate() {
            let mut idx = index.to_vec();
            idx.push(k);
            self.push(idx, l.clone(), r.clone());
        }
    }

    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn checked(&self) -> usize {
        self.components.len()
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Evaluates both sides of every component at `points` random rational
    /// points and compares them exactly.
    pub fn cross_check(&self, sampler: &mut PointSampler, points: usize) -> CrossCheck {
        let exprs: Vec<&Expr> = self
            .components
            .iter()
            .flat_map(|c| [&c.lhs, &c.rhs])
            .filter(|e| !e.denominator().is_constant())
            .collect();
        let mut used = 0;
        for _ in 0..points {
            let Some(pt) = sampler.point_avoiding(&exprs) else {
                break;
            };
            used += 1;
            for c in &self.components {
                let (Ok(l), Ok(r)) = (c.lhs.eval(&pt), c.rhs.eval(&pt)) else {
                    continue;
                };
                if l != r {
                    return CrossCheck {
                        points: used,
                        agreed: false,
                        mismatch: Some(c.index.clone()),
                    };
                }
            }
        }
        CrossCheck {
            points: used,
            agreed: used == points,
            mismatch: None,
        }
    }
}
