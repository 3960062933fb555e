//! Seeded random rationals, vectors and generator lists.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cornet::CaseRng;
use crate::geometry::{RVec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplerConfig {
    pub max_generators: usize,
    /// Inclusive numerator range; for integer carriers, the coordinate range.
    pub numerators: [i64; 2],
    pub denominators: Vec<u64>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            max_generators: 5,
            numerators: [-8, 8],
            denominators: vec![1, 2, 4],
        }
    }
}

impl SamplerConfig {
    pub fn integer_range(lo: i64, hi: i64) -> Self {
        SamplerConfig {
            numerators: [lo, hi],
            denominators: vec![1],
            ..Self::default()
        }
    }

    pub fn integer(&self, rng: &mut CaseRng) -> i64 {
        let [lo, hi] = self.numerators;
        rng.gen_range(lo..=hi)
    }

    pub fn rational(&self, rng: &mut CaseRng) -> Rational {
        let num = self.integer(rng);
        let den = *self.denominators.choose(rng).unwrap_or(&1);
        Rational::new(BigInt::from(num), BigInt::from(den.max(1)))
    }

    /// A rational in `[0, hi]` with a configured denominator.
    pub fn nonnegative(&self, rng: &mut CaseRng) -> Rational {
        let hi = self.numerators[1].max(1);
        let num = rng.gen_range(0..=hi);
        let den = *self.denominators.choose(rng).unwrap_or(&1);
        Rational::new(BigInt::from(num), BigInt::from(den.max(1)))
    }

    pub fn vector(&self, rng: &mut CaseRng, dim: usize) -> RVec {
        RVec::new((0..dim).map(|_| self.rational(rng)).collect())
    }

    pub fn integer_vector(&self, rng: &mut CaseRng, dim: usize) -> RVec {
        RVec::new(
            (0..dim)
                .map(|_| Rational::from_integer(BigInt::from(self.integer(rng))))
                .collect(),
        )
    }

    pub fn generator_count(&self, rng: &mut CaseRng) -> usize {
        rng.gen_range(1..=self.max_generators.max(1))
    }
}
