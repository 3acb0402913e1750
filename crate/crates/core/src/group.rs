//! Canonical descriptions of finite abelian groups.
//!
//! The working representation is the primary decomposition: one
//! [`PrimaryComponent`] per prime, holding the non-decreasing partition of
//! cyclic p-power factors. Invariant factors are derived from it by
//! right-aligning the partitions, which is the unique recombination that
//! yields a divisibility chain. Two inputs describing isomorphic groups
//! always canonicalize to identical values, so `==` is group isomorphism.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::arith::{self, factorize, nat, pow, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor must be at least 2, got {0}")]
    InvalidFactor(Natural),
    #[error("{0} is not prime")]
    NotPrime(Natural),
    #[error("partition must be a non-empty, non-decreasing list of positive integers")]
    InvalidPartition,
    #[error("component primes must be strictly ascending, {0} repeats or is out of order")]
    UnorderedPrimes(Natural),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The Sylow p-part of a finite abelian group: a prime together with the
/// non-decreasing partition `a_1 <= a_2 <= ... <= a_m` of its cyclic
/// p-power factors `Z_{p^a_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimaryComponent {
    prime: Natural,
    partition: Vec<u32>,
}

impl PrimaryComponent {
    pub fn new(prime: Natural, partition: Vec<u32>) -> Result<Self, GroupError> {
        if !arith::is_prime(&prime) {
            return Err(GroupError::NotPrime(prime));
        }
        if partition.is_empty()
            || partition[0] == 0
            || partition.windows(2).any(|w| w[0] > w[1])
        {
            return Err(GroupError::InvalidPartition);
        }
        Ok(Self { prime, partition })
    }

    pub fn prime(&self) -> &Natural {
        &self.prime
    }

    /// The exponent partition, non-decreasing.
    pub fn partition(&self) -> &[u32] {
        &self.partition
    }

    /// Number of direct cyclic factors of this p-part.
    pub fn num_factors(&self) -> usize {
        self.partition.len()
    }

    /// Largest part, i.e. the exponent of `p` in the group exponent.
    pub fn largest_part(&self) -> u32 {
        *self.partition.last().expect("partition is non-empty")
    }

    /// Sum of the parts, i.e. the exponent of `p` in the group order.
    pub fn weight(&self) -> u64 {
        self.partition.iter().map(|a| u64::from(*a)).sum()
    }

    /// Order of this p-part, `p^weight`.
    pub fn order(&self) -> Natural {
        pow(&self.prime, self.weight())
    }
}

impl fmt::Display for PrimaryComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}", self.prime, self.partition)
    }
}

/// A finite abelian group up to isomorphism.
///
/// Held as primary components with strictly ascending primes; the trivial
/// group is the empty component list. Construction canonicalizes, so
/// structural equality decides isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianGroup {
    components: Vec<PrimaryComponent>,
}

impl AbelianGroup {
    /// The group with one element.
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds a group from primary components; primes must be strictly ascending.
    pub fn from_components(components: Vec<PrimaryComponent>) -> Result<Self, GroupError> {
        for w in components.windows(2) {
            if w[0].prime >= w[1].prime {
                return Err(GroupError::UnorderedPrimes(w[1].prime.clone()));
            }
        }
        Ok(Self { components })
    }

    /// Canonicalizes an arbitrary direct product of cyclic groups.
    ///
    /// Factors may come in any order and need not form a divisibility chain;
    /// each is split into prime powers, which are grouped by prime and
    /// sorted. An empty list yields the trivial group; any factor below 2 is
    /// rejected.
    pub fn from_cyclic_factors(factors: &[Natural]) -> Result<Self, GroupError> {
        let mut per_prime: Vec<(Natural, Vec<u32>)> = Vec::new();
        for factor in factors {
            if *factor < nat(2) {
                return Err(GroupError::InvalidFactor(factor.clone()));
            }
            let fact = factorize(factor).expect("factor >= 2 is nonzero");
            for (p, e) in fact.factors() {
                match per_prime.iter_mut().find(|(q, _)| q == p) {
                    Some((_, parts)) => parts.push(*e),
                    None => per_prime.push((p.clone(), vec![*e])),
                }
            }
        }
        per_prime.sort_by(|a, b| a.0.cmp(&b.0));
        let components = per_prime
            .into_iter()
            .map(|(prime, mut partition)| {
                partition.sort_unstable();
                PrimaryComponent { prime, partition }
            })
            .collect();
        Ok(Self { components })
    }

    /// The cyclic group of order `n >= 1`; `n = 1` gives the trivial group.
    pub fn cyclic(n: &Natural) -> Result<Self, GroupError> {
        if n.is_one() {
            return Ok(Self::trivial());
        }
        Self::from_cyclic_factors(std::slice::from_ref(n))
    }

    pub fn components(&self) -> &[PrimaryComponent] {
        &self.components
    }

    /// The p-part of the group, if `p` divides its order.
    pub fn component_for(&self, p: &Natural) -> Option<&PrimaryComponent> {
        self.components.iter().find(|c| c.prime() == p)
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    /// A group is cyclic exactly when every p-part is cyclic.
    pub fn is_cyclic(&self) -> bool {
        self.components.iter().all(|c| c.num_factors() == 1)
    }

    /// Group order, the product of all component orders.
    pub fn order(&self) -> Natural {
        self.components
            .iter()
            .fold(Natural::one(), |acc, c| acc * c.order())
    }

    /// Group exponent: the largest element order, `prod p^(largest part)`.
    pub fn exponent(&self) -> Natural {
        self.components.iter().fold(Natural::one(), |acc, c| {
            acc * pow(c.prime(), u64::from(c.largest_part()))
        })
    }

    /// The unique chain `d_1 | d_2 | ... | d_m` with the group isomorphic to
    /// the product of the `Z_{d_i}`.
    ///
    /// Partitions are right-aligned: the i-th largest part of every prime
    /// goes into the i-th largest invariant factor. The trivial group has no
    /// invariant factors.
    pub fn invariant_factors(&self) -> Vec<Natural> {
        let m = self
            .components
            .iter()
            .map(|c| c.num_factors())
            .max()
            .unwrap_or(0);
        (0..m)
            .map(|i| {
                self.components
                    .iter()
                    .fold(Natural::one(), |acc, c| {
                        let len = c.num_factors();
                        // Right-aligned: component index i - (m - len).
                        match (i + len).checked_sub(m) {
                            Some(j) => acc * pow(c.prime(), u64::from(c.partition[j])),
                            None => acc,
                        }
                    })
            })
            .collect()
    }

    /// Canonical textual form, e.g. `Z4 x Z16`; the trivial group is `Z1`.
    pub fn spec_string(&self) -> String {
        let factors = self.invariant_factors();
        if factors.is_empty() {
            return "Z1".to_owned();
        }
        factors
            .iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// Parses the group-spec grammar.
///
/// A spec is a list of cyclic factors joined by `x`, `*`, or `,`; each factor
/// is `Z<n>`, `C<n>`, or a bare `<n>`, case-insensitive, whitespace ignored.
/// `"Z4 x Z16"`, `"12*720"`, and `"4,16"` are all valid. Factors below 2 are
/// rejected.
pub fn parse_group_spec(s: &str) -> Result<AbelianGroup, GroupError> {
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let mut factors: Vec<Natural> = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Err(GroupError::Parse {
                pos,
                msg: if factors.is_empty() {
                    "empty group spec".to_owned()
                } else {
                    "expected a cyclic factor after separator".to_owned()
                },
            });
        }
        if matches!(bytes[pos], b'Z' | b'z' | b'C' | b'c') {
            pos += 1;
        }
        skip_ws(&mut pos);
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(GroupError::Parse {
                pos,
                msg: "expected digits of a cyclic factor".to_owned(),
            });
        }
        let digits = &s[start..pos];
        let value = Natural::from_str(digits).expect("ascii digits parse");
        if value < nat(2) {
            return Err(GroupError::InvalidFactor(value));
        }
        factors.push(value);

        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        match bytes[pos] {
            b'x' | b'X' | b'*' | b',' => pos += 1,
            _ => {
                return Err(GroupError::Parse {
                    pos,
                    msg: format!(
                        "expected `x`, `*`, or `,` before {:?}",
                        &s[pos..s.len().min(pos + 8)]
                    ),
                });
            }
        }
    }

    AbelianGroup::from_cyclic_factors(&factors)
}

impl FromStr for AbelianGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}
