//! Recovering a group from its order spectrum.
//!
//! Counting is invertible for finite abelian groups: within one prime, the
//! cumulative count through `p^alpha` is `p^(sum_i min(alpha, a_i))`, so the
//! exact logs of the cumulative counts are partial sums of the conjugate
//! partition — `c(alpha) = #{i : a_i >= alpha}` — and transposing recovers
//! the partition itself. Mixed orders carry no extra information, so the
//! reconstruction runs per prime on the prime-power entries and then
//! re-verifies the entire input against the forward computation, which turns
//! every inconsistency (wrong mixed counts, missing or extra orders) into a
//! clean rejection.
//!
//! Candidates that belong to no finite abelian group are reported as
//! [`NotRealizable`] with the first reason found, in deterministic order.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{self, factorize, pow, Natural};
use crate::group::{AbelianGroup, PrimaryComponent};
use crate::spectra::{self, OrderSpectrum, SpectraError, SpectrumDto};

/// An order-to-count map as claimed by external input, before any
/// mathematical validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumCandidate {
    entries: BTreeMap<Natural, Natural>,
}

/// Structural problems with candidate input; these are malformed data, as
/// opposed to well-formed spectra that no group realizes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumParseError {
    #[error("invalid spectrum JSON: {0}")]
    Json(String),
    #[error("{text:?} is not a decimal natural number")]
    BadNumber { text: String },
    #[error("duplicate entry for order {0}")]
    DuplicateOrder(Natural),
    #[error("0 is not a valid element order")]
    ZeroOrder,
    #[error("explicit zero count at order {0}; spectra list realized orders only")]
    ZeroCount(Natural),
}

impl SpectrumCandidate {
    /// Builds a candidate from raw pairs, rejecting order 0, zero counts,
    /// and duplicate orders.
    pub fn from_entries<I>(entries: I) -> Result<Self, SpectrumParseError>
    where
        I: IntoIterator<Item = (Natural, Natural)>,
    {
        let mut map = BTreeMap::new();
        for (order, count) in entries {
            if order.is_zero() {
                return Err(SpectrumParseError::ZeroOrder);
            }
            if count.is_zero() {
                return Err(SpectrumParseError::ZeroCount(order));
            }
            if map.insert(order.clone(), count).is_some() {
                return Err(SpectrumParseError::DuplicateOrder(order));
            }
        }
        Ok(Self { entries: map })
    }

    /// Candidate view of a computed spectrum; by construction well-formed.
    pub fn from_spectrum(spectrum: &OrderSpectrum) -> Self {
        Self {
            entries: spectrum.entries().clone(),
        }
    }

    /// Parses the spectrum JSON format. The `group` and `exponent` fields
    /// are ignored: reconstruction derives both and the caller compares
    /// expectations afterwards.
    pub fn from_json(text: &str) -> Result<Self, SpectrumParseError> {
        let dto: SpectrumDto =
            serde_json::from_str(text).map_err(|e| SpectrumParseError::Json(e.to_string()))?;
        let parse = |text: &str| {
            Natural::from_str(text).map_err(|_| SpectrumParseError::BadNumber {
                text: text.to_owned(),
            })
        };
        let mut pairs = Vec::with_capacity(dto.entries.len());
        for entry in &dto.entries {
            pairs.push((parse(&entry.order)?, parse(&entry.count)?));
        }
        Self::from_entries(pairs)
    }

    pub fn entries(&self) -> &BTreeMap<Natural, Natural> {
        &self.entries
    }

    /// Sum of all claimed counts; for a genuine spectrum, the group order.
    pub fn claimed_order(&self) -> Natural {
        self.entries
            .values()
            .fold(Natural::zero(), |acc, c| acc + c)
    }
}

/// Why a well-formed candidate belongs to no finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotRealizable {
    #[error("a spectrum has exactly one element of order 1")]
    BadIdentityCount,
    #[error("no elements of order {prime}^{alpha}, yet higher powers of {prime} occur")]
    GapInPrimePowers { prime: Natural, alpha: u32 },
    #[error("cumulative count {cumulative} through {prime}^{alpha} is not a power of {prime}")]
    CumulativeNotPrimePower {
        prime: Natural,
        alpha: u32,
        cumulative: Natural,
    },
    #[error("per-power multiplicities increase at {prime}^{alpha}; no partition has that profile")]
    NonMonotoneConjugate { prime: Natural, alpha: u32 },
    #[error("order {order}: claimed {claimed} elements, but the reconstructed group has {actual}")]
    CountMismatch {
        order: Natural,
        claimed: Natural,
        actual: Natural,
    },
    #[error("order {0} is not realized by the reconstructed group")]
    ExtraOrder(Natural),
    #[error("order {0} is realized by the reconstructed group but missing from the input")]
    MissingOrder(Natural),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("spectrum is not realizable: {0}")]
    NotRealizable(#[from] NotRealizable),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Recovers the p-part whose exact counts at `p^0, ..., p^A` are `counts`.
///
/// Cumulative sums must be powers of `p`; their exact logs are partial sums
/// of the conjugate partition, whose increments must be non-increasing.
/// Transposing the conjugate yields the partition.
///
/// Panics unless `p` is prime and `counts` has at least two entries (a
/// p-part exists only when some positive power of `p` occurs).
pub fn reconstruct_primary_component(
    p: &Natural,
    counts: &[Natural],
) -> Result<PrimaryComponent, NotRealizable> {
    assert!(arith::is_prime(p), "{p} is not prime");
    assert!(
        counts.len() >= 2,
        "counts must cover alpha = 0..=A with A >= 1"
    );
    if !counts[0].is_one() {
        return Err(NotRealizable::BadIdentityCount);
    }
    for (alpha, count) in counts.iter().enumerate().skip(1) {
        if count.is_zero() {
            return Err(NotRealizable::GapInPrimePowers {
                prime: p.clone(),
                alpha: alpha as u32,
            });
        }
    }

    // s[alpha] = log_p of the cumulative count, by exact repeated division.
    let mut cumulative = Natural::zero();
    let mut logs = Vec::with_capacity(counts.len());
    for (alpha, count) in counts.iter().enumerate() {
        cumulative += count;
        logs.push(exact_log(p, &cumulative).ok_or_else(|| {
            NotRealizable::CumulativeNotPrimePower {
                prime: p.clone(),
                alpha: alpha as u32,
                cumulative: cumulative.clone(),
            }
        })?);
    }

    // conjugate[alpha - 1] = #{i : a_i >= alpha}, which must not increase.
    let conjugate: Vec<u64> = logs.windows(2).map(|w| w[1] - w[0]).collect();
    for (i, w) in conjugate.windows(2).enumerate() {
        if w[1] > w[0] {
            return Err(NotRealizable::NonMonotoneConjugate {
                prime: p.clone(),
                alpha: (i + 2) as u32,
            });
        }
    }

    // Transpose: part j (1-based) is the number of alphas with c >= j.
    let num_parts = conjugate[0];
    let partition: Vec<u32> = (1..=num_parts)
        .rev()
        .map(|j| conjugate.iter().filter(|c| **c >= j).count() as u32)
        .collect();
    Ok(PrimaryComponent::new(p.clone(), partition).expect("transpose yields a valid partition"))
}

/// Exact base-`p` logarithm of `n`, or `None` when `n` is not a power of `p`.
fn exact_log(p: &Natural, n: &Natural) -> Option<u64> {
    let mut n = n.clone();
    let mut log = 0u64;
    while !n.is_one() {
        if !(&n % p).is_zero() {
            return None;
        }
        n /= p;
        log += 1;
    }
    Some(log)
}

/// Reconstructs the unique finite abelian group with the claimed spectrum,
/// or explains why none exists.
///
/// Runs the per-prime inversion on the prime-power entries, reassembles the
/// group, and then verifies the full input entry-for-entry against the
/// forward computation — so mixed-order counts, missing orders, and extra
/// orders are all rejected without case analysis.
pub fn reconstruct(candidate: &SpectrumCandidate) -> Result<AbelianGroup, ReconstructError> {
    let entries = candidate.entries();
    if entries.get(&Natural::one()) != Some(&Natural::one()) {
        return Err(NotRealizable::BadIdentityCount.into());
    }

    // Gather, per prime, the largest power that occurs in any key and the
    // counts at the pure prime-power keys.
    let mut primes: BTreeMap<Natural, u32> = BTreeMap::new();
    for order in entries.keys() {
        if order.is_one() {
            continue;
        }
        let fact = factorize(order).expect("orders are nonzero");
        let pure = fact.num_primes() == 1;
        for (p, e) in fact.factors() {
            let seen = primes.entry(p.clone()).or_insert(0);
            // Mixed keys flag the prime but contribute no pure power.
            if pure {
                *seen = (*seen).max(*e);
            }
        }
    }

    let mut components = Vec::with_capacity(primes.len());
    for (p, top) in &primes {
        if *top == 0 {
            // The prime occurs only inside mixed orders: its own powers are
            // absent, which no group allows.
            return Err(NotRealizable::GapInPrimePowers {
                prime: p.clone(),
                alpha: 1,
            }
            .into());
        }
        let counts: Vec<Natural> = (0..=*top)
            .map(|alpha| {
                if alpha == 0 {
                    Natural::one()
                } else {
                    entries
                        .get(&pow(p, u64::from(alpha)))
                        .cloned()
                        .unwrap_or_else(Natural::zero)
                }
            })
            .collect();
        components.push(reconstruct_primary_component(p, &counts)?);
    }
    let group =
        AbelianGroup::from_components(components).expect("BTreeMap iteration is ascending");

    // Forward verification; report the first disagreement in order.
    let actual = spectra::spectrum(&group)?;
    let mut claimed_iter = entries.iter().peekable();
    let mut actual_iter = actual.entries().iter().peekable();
    loop {
        match (claimed_iter.peek(), actual_iter.peek()) {
            (None, None) => break,
            (Some((order, _)), None) => {
                return Err(NotRealizable::ExtraOrder((*order).clone()).into());
            }
            (None, Some((order, _))) => {
                return Err(NotRealizable::MissingOrder((*order).clone()).into());
            }
            (Some((co, cc)), Some((ao, ac))) => {
                if co < ao {
                    return Err(NotRealizable::ExtraOrder((*co).clone()).into());
                }
                if ao < co {
                    return Err(NotRealizable::MissingOrder((*ao).clone()).into());
                }
                if cc != ac {
                    return Err(NotRealizable::CountMismatch {
                        order: (*co).clone(),
                        claimed: (*cc).clone(),
                        actual: (*ac).clone(),
                    }
                    .into());
                }
                claimed_iter.next();
                actual_iter.next();
            }
        }
    }
    Ok(group)
}
