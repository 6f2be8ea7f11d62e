//! Seeded random parameter points over small-denominator rationals.
//!
//! Every draw comes from ChaCha8 seeded with a `u64`, so a run is replayed
//! exactly by reusing the printed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ansatz::ParamPoint;
use crate::chains::ChainRates;
use crate::error::{Error, Result};
use crate::exact::{Rational, Ring};
use crate::moments::MomentEngine;
use crate::q1::Q1Params;
use crate::words::{Letter, Word};

const MAX_ATTEMPTS: usize = 1000;

/// What a sampled point must satisfy beyond the genericity horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointOptions {
    /// Reject `q = 0` (needed wherever `1/q` appears).
    pub nonzero_q: bool,
    /// Reject points with `⟨W|A^r|V⟩ = 0` for some `r ≤ a_bracket_max`.
    pub a_bracket_max: usize,
}

impl Default for PointOptions {
    fn default() -> Self {
        PointOptions { nonzero_q: true, a_bracket_max: 6 }
    }
}

pub struct PointSampler {
    seed: u64,
    max_den: i64,
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { seed, max_den: 9, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform over `p/d` with `2 ≤ d ≤ 9` and `|p| < d`.
    pub fn rational(&mut self) -> Rational {
        let d = self.rng.gen_range(2..=self.max_den);
        let p = self.rng.gen_range(-(d - 1)..=d - 1);
        Rational::new(p, d)
    }

    /// Strictly inside `(0, 1)`.
    pub fn unit_positive(&mut self) -> Rational {
        let d = self.rng.gen_range(2..=self.max_den);
        Rational::new(self.rng.gen_range(1..d), d)
    }

    pub fn param_point(&mut self, opts: PointOptions) -> Result<ParamPoint<Rational>> {
        for _ in 0..MAX_ATTEMPTS {
            let (a, b, c, d, q) = (self.rational(), self.rational(), self.rational(), self.rational(), self.rational());
            if opts.nonzero_q && q.is_zero() {
                continue;
            }
            let Ok(p) = ParamPoint::new(a, b, c, d, q) else { continue };
            if opts.a_bracket_max > 0 {
                let engine = MomentEngine::new(&p)?;
                let mut ok = true;
                for r in 0..=opts.a_bracket_max {
                    if engine.a_bracket(r)?.is_zero() {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
            }
            return Ok(p);
        }
        Err(Error::degenerate(format!("no generic point after {MAX_ATTEMPTS} draws (seed {})", self.seed)))
    }

    /// Rates in `(0, 1)` with `q ∈ [0, 1)` and `u = 1`, valid for simulation.
    pub fn chain_rates(&mut self) -> ChainRates<Rational> {
        let q = self.unit_positive() - Rational::new(1, 2);
        ChainRates {
            alpha: self.unit_positive(),
            beta: self.unit_positive(),
            gamma: self.unit_positive(),
            delta: self.unit_positive(),
            q: if q.is_negative() { Rational::zero() } else { q },
            u: Rational::one(),
        }
    }

    pub fn q1_params(&mut self) -> Result<Q1Params> {
        for _ in 0..MAX_ATTEMPTS {
            let v = [self.unit_positive(), self.unit_positive(), self.unit_positive(), self.unit_positive()];
            let [a, b, c, d] = v;
            if let Ok(p) = Q1Params::new(a, b, c, d) {
                return Ok(p);
            }
        }
        Err(Error::degenerate(format!("no admissible rates after {MAX_ATTEMPTS} draws (seed {})", self.seed)))
    }

    pub fn de_word(&mut self, n: usize) -> Word {
        Word((0..n).map(|_| if self.rng.gen::<bool>() { Letter::D } else { Letter::E }).collect())
    }
}

/// `count` points from one seeded stream.
pub fn sample_points(seed: u64, count: usize, opts: PointOptions) -> Result<Vec<ParamPoint<Rational>>> {
    let mut s = PointSampler::new(seed);
    (0..count).map(|_| s.param_point(opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = sample_points(7, 3, PointOptions::default()).unwrap();
        let b = sample_points(7, 3, PointOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_points(8, 3, PointOptions::default()).unwrap());
    }

    #[test]
    fn draws_are_in_range() {
        let mut s = PointSampler::new(1);
        for _ in 0..200 {
            let x = s.rational();
            assert!(x.abs() < Rational::one());
            let y = s.unit_positive();
            assert!(!y.is_negative() && !y.is_zero() && y < Rational::one());
        }
        let p = s.param_point(PointOptions::default()).unwrap();
        assert!(!p.q.is_zero());
        let r = s.chain_rates();
        assert!(!r.q.is_negative() && r.q < Rational::one());
        assert_eq!(s.de_word(6).len(), 6);
    }
}
