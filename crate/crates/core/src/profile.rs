//! Voter profiles: rational-weighted distributions and integer multisets.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::choice::ChoiceFunction;
use crate::error::{Error, Result};
use crate::prob::ProbMatrix;
use crate::rational::{one, Rational};

/// A distribution over voter choice functions: positive rational weights
/// summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProfile {
    n: usize,
    voters: Vec<(ChoiceFunction, Rational)>,
}

impl WeightedProfile {
    pub fn new(n: usize, voters: Vec<(ChoiceFunction, Rational)>) -> Result<Self> {
        if voters.is_empty() {
            return Err(Error::EmptyProfile);
        }
        let mut total = Rational::zero();
        for (c, w) in &voters {
            if c.n() != n {
                return Err(Error::DimensionMismatch(c.n(), n));
            }
            if !w.is_positive() {
                return Err(Error::NonpositiveWeight);
            }
            total += w;
        }
        if total != one() {
            return Err(Error::WeightsDoNotSumToOne(total.to_string()));
        }
        Ok(WeightedProfile { n, voters })
    }

    /// Build from a weight map; keys are already deduplicated and sorted.
    pub fn from_map(n: usize, map: BTreeMap<ChoiceFunction, Rational>) -> Result<Self> {
        WeightedProfile::new(n, map.into_iter().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn voters(&self) -> &[(ChoiceFunction, Rational)] {
        &self.voters
    }

    /// Sum duplicate voters and sort for a canonical form.
    pub fn merged(&self) -> Self {
        let mut map: BTreeMap<ChoiceFunction, Rational> = BTreeMap::new();
        for (c, w) in &self.voters {
            *map.entry(c.clone()).or_insert_with(Rational::zero) += w;
        }
        WeightedProfile {
            n: self.n,
            voters: map.into_iter().collect(),
        }
    }

    /// The matrix induced by the distribution: the weighted average of the
    /// voters' embedded matrices.
    pub fn induced_matrix(&self) -> ProbMatrix {
        let embedded: Vec<(Rational, ProbMatrix)> = self
            .voters
            .iter()
            .map(|(c, w)| (w.clone(), ProbMatrix::of_choice(c)))
            .collect();
        let parts: Vec<(Rational, &ProbMatrix)> =
            embedded.iter().map(|(w, m)| (w.clone(), m)).collect();
        ProbMatrix::convex_combine(&parts).expect("profile weights sum to 1")
    }

    /// Convex mixture of profiles, flattened and merged.
    pub fn mix(parts: &[(Rational, &WeightedProfile)]) -> Result<WeightedProfile> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::EmptyProfile);
        };
        let n = first.n;
        let mut total = Rational::zero();
        let mut map: BTreeMap<ChoiceFunction, Rational> = BTreeMap::new();
        for (w, p) in parts {
            if p.n != n {
                return Err(Error::DimensionMismatch(p.n, n));
            }
            if !w.is_positive() {
                return Err(Error::NonpositiveWeight);
            }
            total += w;
            for (c, pw) in &p.voters {
                *map.entry(c.clone()).or_insert_with(Rational::zero) += w * pw;
            }
        }
        if total != one() {
            return Err(Error::WeightsDoNotSumToOne(total.to_string()));
        }
        WeightedProfile::from_map(n, map)
    }

    /// Clear denominators: each weight times the least common multiple of all
    /// weight denominators becomes an integer multiplicity. Scaling by a
    /// positive constant preserves every strict inequality and tie, so the
    /// integer profile has the identical majority relation.
    pub fn rationalize(&self) -> IntegerProfile {
        let lcm = self
            .voters
            .iter()
            .fold(BigInt::one(), |acc, (_, w)| acc.lcm(w.denom()));
        let voters = self
            .voters
            .iter()
            .map(|(c, w)| {
                let scaled = w * Rational::from_integer(lcm.clone());
                debug_assert!(scaled.is_integer());
                let m = scaled
                    .to_integer()
                    .to_biguint()
                    .expect("positive weight scales to positive integer");
                (c.clone(), m)
            })
            .collect();
        IntegerProfile {
            n: self.n,
            voters,
        }
    }
}

/// A finite multiset of voters with positive integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerProfile {
    n: usize,
    voters: Vec<(ChoiceFunction, BigUint)>,
}

impl IntegerProfile {
    pub fn new(n: usize, voters: Vec<(ChoiceFunction, BigUint)>) -> Result<Self> {
        if voters.is_empty() {
            return Err(Error::EmptyProfile);
        }
        for (c, m) in &voters {
            if c.n() != n {
                return Err(Error::DimensionMismatch(c.n(), n));
            }
            if m.is_zero() {
                return Err(Error::NonpositiveWeight);
            }
        }
        Ok(IntegerProfile { n, voters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn voters(&self) -> &[(ChoiceFunction, BigUint)] {
        &self.voters
    }

    /// Total voter count, multiplicities included.
    pub fn total(&self) -> BigUint {
        self.voters.iter().map(|(_, m)| m).sum()
    }

    /// Number of distinct voters.
    pub fn distinct(&self) -> usize {
        self.voters.len()
    }

    /// Sum duplicates and sort voters canonically.
    pub fn merged(&self) -> Self {
        let mut map: BTreeMap<ChoiceFunction, BigUint> = BTreeMap::new();
        for (c, m) in &self.voters {
            *map.entry(c.clone()).or_insert_with(BigUint::zero) += m;
        }
        IntegerProfile {
            n: self.n,
            voters: map.into_iter().collect(),
        }
    }

    /// View as a distribution with weights `multiplicity / total`.
    pub fn to_weighted(&self) -> WeightedProfile {
        let total = BigInt::from(self.total());
        let voters = self
            .voters
            .iter()
            .map(|(c, m)| {
                (
                    c.clone(),
                    Rational::new(BigInt::from(m.clone()), total.clone()),
                )
            })
            .collect();
        WeightedProfile {
            n: self.n,
            voters,
        }
    }
}
