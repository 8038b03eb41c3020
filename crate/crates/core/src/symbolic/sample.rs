use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Expr;

/// Seeded source of random rational points, used to cross-check symbolic
/// zero verdicts by exact evaluation.
pub struct PointSampler {
    rng: ChaCha8Rng,
    dim: usize,
}

impl PointSampler {
    pub fn new(seed: u64, dim: usize) -> Self {
        PointSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            dim,
        }
    }

    fn draw(&mut self) -> Vec<BigRational> {
        (0..self.dim)
            .map(|_| {
                let n: i64 = self.rng.gen_range(-24..=24);
                let d: i64 = self.rng.gen_range(1..=7);
                BigRational::new(BigInt::from(n), BigInt::from(d))
            })
            .collect()
    }

    /// A point at which none of `exprs` has a pole. Gives up after a fixed
    /// number of draws, which only happens for expressions that are
    /// undefined on a dense set.
    pub fn point_avoiding(&mut self, exprs: &[&Expr]) -> Option<Vec<BigRational>> {
        for _ in 0..256 {
            let p = self.draw();
            if exprs.iter().all(|e| e.eval(&p).is_ok()) {
                return Some(p);
            }
        }
        None
    }
}
