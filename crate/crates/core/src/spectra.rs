//! Exact element-order counting for finite abelian groups.
//!
//! For a p-part with partition `a_1 <= ... <= a_m`, the number of elements
//! of order dividing `p^alpha` is `p^(sum_i min(alpha, a_i))`: each cyclic
//! factor `Z_{p^a_i}` contributes exactly `p^min(alpha, a_i)` such elements.
//! Counts of exact order `p^alpha` are consecutive differences of that
//! cumulative function, and counts of arbitrary order multiply across the
//! primary components because component orders are coprime. The whole
//! spectrum of a group is therefore one product per divisor of the exponent.
//!
//! All counts are arbitrary-precision: a p-part of shape `[1; 20]` already
//! has `2^20`-scale counts at single orders, and real inputs grow far past
//! `u64`.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, divisor_lattice, factorize, pow, ArithError, Natural};
use crate::group::{AbelianGroup, PrimaryComponent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{0} is not prime")]
    NotPrime(Natural),
}

/// Number of elements of order dividing `p^alpha` in the p-part `c`,
/// i.e. `p^(sum_i min(alpha, a_i))`.
///
/// This is the cumulative form of [`count_prime_power`]: it equals the sum
/// of the exact counts at `p^0, ..., p^alpha`, and is constant once `alpha`
/// reaches the largest part.
pub fn cumulative_count(c: &PrimaryComponent, alpha: u32) -> Natural {
    let clamped: u64 = c
        .partition()
        .iter()
        .map(|a| u64::from(alpha.min(*a)))
        .sum();
    pow(c.prime(), clamped)
}

/// Number of elements of order exactly `p^alpha` in the p-part `c`.
///
/// Zero whenever `alpha` exceeds the largest part; one at `alpha = 0`.
pub fn count_prime_power(c: &PrimaryComponent, alpha: u32) -> Natural {
    if alpha == 0 {
        return Natural::one();
    }
    if alpha > c.largest_part() {
        return Natural::from(0u32);
    }
    cumulative_count(c, alpha) - cumulative_count(c, alpha - 1)
}

/// Number of elements of order exactly `d >= 1` in `g`.
///
/// Splits `d` into prime powers and multiplies the per-component counts;
/// any prime of `d` outside the group, or any power past the component's
/// largest part, makes the count zero.
pub fn count_order(g: &AbelianGroup, d: &Natural) -> Result<Natural, SpectraError> {
    let fact = factorize(d)?;
    let mut count = Natural::one();
    for (p, beta) in fact.factors() {
        let per_prime = match g.component_for(p) {
            Some(c) => count_prime_power(c, *beta),
            None => return Ok(Natural::from(0u32)),
        };
        if per_prime == Natural::from(0u32) {
            return Ok(per_prime);
        }
        count *= per_prime;
    }
    Ok(count)
}

/// Number of elements of prime order `p`: `p^m - 1` with `m` the number of
/// cyclic factors of the p-part, or zero when `p` does not divide the order.
pub fn count_prime_order(g: &AbelianGroup, p: &Natural) -> Result<Natural, SpectraError> {
    if !arith::is_prime(p) {
        return Err(SpectraError::NotPrime(p.clone()));
    }
    Ok(match g.component_for(p) {
        Some(c) => pow(p, c.num_factors() as u64) - Natural::one(),
        None => Natural::from(0u32),
    })
}

/// The full order spectrum of `g`: one entry per divisor of the exponent.
pub fn spectrum(g: &AbelianGroup) -> Result<OrderSpectrum, SpectraError> {
    let exponent = g.exponent();
    let lattice = divisor_lattice(&exponent)?;
    debug_assert_eq!(lattice.base().num_primes(), g.components().len());

    // One table of exact counts per prime, indexed by the power.
    let tables: Vec<Vec<Natural>> = g
        .components()
        .iter()
        .map(|c| {
            (0..=c.largest_part())
                .map(|alpha| count_prime_power(c, alpha))
                .collect()
        })
        .collect();

    let mut entries = BTreeMap::new();
    for i in 0..lattice.len() {
        let count = lattice
            .exponents(i)
            .iter()
            .enumerate()
            .fold(Natural::one(), |acc, (k, beta)| {
                acc * &tables[k][*beta as usize]
            });
        entries.insert(lattice.value(i).clone(), count);
    }
    Ok(OrderSpectrum {
        group: Some(g.clone()),
        exponent,
        entries,
    })
}

/// Exact map from element order to element count.
///
/// Keys are exactly the divisors of the exponent, the entry at 1 is 1, and
/// the counts sum to the group order. `group` is present when the spectrum
/// was computed from a canonical group and absent when it was tallied by
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpectrum {
    group: Option<AbelianGroup>,
    exponent: Natural,
    entries: BTreeMap<Natural, Natural>,
}

impl OrderSpectrum {
    /// Wraps a raw tally; the exponent is the largest order present.
    pub(crate) fn from_tally(
        group: Option<AbelianGroup>,
        entries: BTreeMap<Natural, Natural>,
    ) -> Self {
        let exponent = entries
            .keys()
            .next_back()
            .cloned()
            .unwrap_or_else(Natural::one);
        Self {
            group,
            exponent,
            entries,
        }
    }

    pub fn group(&self) -> Option<&AbelianGroup> {
        self.group.as_ref()
    }

    pub fn exponent(&self) -> &Natural {
        &self.exponent
    }

    /// Orders mapped to counts, ascending by order.
    pub fn entries(&self) -> &BTreeMap<Natural, Natural> {
        &self.entries
    }

    /// Count at `order`, zero when the order is not realized.
    pub fn count(&self, order: &Natural) -> Natural {
        self.entries
            .get(order)
            .cloned()
            .unwrap_or_else(|| Natural::from(0u32))
    }

    /// Sum of all counts; for a valid spectrum this is the group order.
    pub fn total(&self) -> Natural {
        self.entries
            .values()
            .fold(Natural::from(0u32), |acc, c| acc + c)
    }

    /// Entry-for-entry equality, ignoring how the spectra were produced.
    pub fn same_entries(&self, other: &OrderSpectrum) -> bool {
        self.entries == other.entries
    }

    /// Serializes to the spectrum JSON format: all numbers as decimal
    /// strings, entries ascending by order. Output is byte-deterministic.
    pub fn to_json(&self) -> String {
        let dto = SpectrumDto {
            group: self.group.as_ref().map(AbelianGroup::spec_string),
            exponent: self.exponent.to_string(),
            entries: self
                .entries
                .iter()
                .map(|(order, count)| EntryDto {
                    order: order.to_string(),
                    count: count.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&dto).expect("spectrum serializes")
    }
}

/// Wire form of [`OrderSpectrum`]; shared with the reconstruction parser.
#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct SpectrumDto {
    pub group: Option<String>,
    pub exponent: String,
    pub entries: Vec<EntryDto>,
}

#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct EntryDto {
    pub order: String,
    pub count: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;
    use crate::group::parse_group_spec;

    fn comp(p: u64, parts: &[u32]) -> PrimaryComponent {
        PrimaryComponent::new(nat(p), parts.to_vec()).unwrap()
    }

    fn group(spec: &str) -> AbelianGroup {
        parse_group_spec(spec).unwrap()
    }

    /// Literal recurrence form, kept independent of the closed form above:
    /// extends the partition one cyclic factor at a time via
    /// `f_{m+1}(alpha) = p^alpha * g_m(alpha) - p^(alpha-1) * g_m(alpha-1)`,
    /// valid for alpha up to the part being appended (the count is zero past
    /// the largest part).
    fn count_by_recurrence(p: u64, partition: &[u32], alpha: u32) -> Natural {
        let p = nat(p);
        let top = *partition.last().unwrap();
        // f-table for the first factor: phi(p^alpha) up to a_1, then zero.
        let mut f: Vec<Natural> = (0..=top)
            .map(|a| {
                if a == 0 {
                    Natural::one()
                } else if a <= partition[0] {
                    pow(&p, u64::from(a)) - pow(&p, u64::from(a - 1))
                } else {
                    Natural::from(0u32)
                }
            })
            .collect();
        for part in &partition[1..] {
            let g: Vec<Natural> = f
                .iter()
                .scan(Natural::from(0u32), |acc, x| {
                    *acc += x;
                    Some(acc.clone())
                })
                .collect();
            f = (0..=top)
                .map(|a| {
                    if a == 0 {
                        Natural::one()
                    } else if a <= *part {
                        pow(&p, u64::from(a)) * &g[a as usize]
                            - pow(&p, u64::from(a - 1)) * &g[(a - 1) as usize]
                    } else {
                        Natural::from(0u32)
                    }
                })
                .collect();
        }
        f.get(alpha as usize).cloned().unwrap_or(Natural::from(0u32))
    }

    #[test]
    fn paper_example_counts_for_z4_z16() {
        let c = comp(2, &[2, 4]);
        let expected = [1u64, 3, 12, 16, 32];
        for (alpha, want) in expected.iter().enumerate() {
            assert_eq!(count_prime_power(&c, alpha as u32), nat(*want), "alpha={alpha}");
        }
        assert_eq!(count_prime_power(&c, 5), nat(0));
    }

    #[test]
    fn per_prime_counts_of_the_order_120_example() {
        assert_eq!(count_prime_power(&comp(2, &[2, 4]), 3), nat(16));
        assert_eq!(count_prime_power(&comp(3, &[1, 2]), 1), nat(8));
        assert_eq!(count_prime_power(&comp(5, &[1]), 1), nat(4));
    }

    #[test]
    fn cumulative_counts() {
        let c = comp(2, &[2, 4]);
        assert_eq!(cumulative_count(&c, 0), nat(1));
        assert_eq!(cumulative_count(&c, 2), nat(16)); // 1 + 3 + 12
        assert_eq!(cumulative_count(&c, 4), nat(64)); // whole 2-part
        assert_eq!(cumulative_count(&c, 9), nat(64));
        assert_eq!(cumulative_count(&comp(7, &[3]), 0), nat(1));
    }

    #[test]
    fn closed_form_matches_recurrence() {
        let partitions: &[&[u32]] = &[&[1], &[3], &[2, 4], &[1, 1, 1], &[1, 2, 2, 3]];
        for p in [2u64, 3, 5] {
            for partition in partitions {
                let c = comp(p, partition);
                for alpha in 0..=(*partition.last().unwrap() + 2) {
                    assert_eq!(
                        count_prime_power(&c, alpha),
                        count_by_recurrence(p, partition, alpha),
                        "p={p} partition={partition:?} alpha={alpha}"
                    );
                }
            }
        }
    }

    #[test]
    fn count_order_of_the_paper_group() {
        let g = group("Z12 x Z720");
        assert_eq!(count_order(&g, &nat(120)).unwrap(), nat(512));
    }

    #[test]
    fn count_order_edges() {
        let g = group("Z4 x Z16");
        assert_eq!(count_order(&g, &nat(1)).unwrap(), nat(1));
        assert_eq!(count_order(&g, &nat(3)).unwrap(), nat(0)); // 3 does not divide 64
        assert_eq!(count_order(&g, &nat(32)).unwrap(), nat(0)); // past the exponent
        assert_eq!(
            count_order(&g, &nat(0)),
            Err(SpectraError::Arith(ArithError::Zero))
        );
    }

    #[test]
    fn count_order_of_z6_z12() {
        // Oracle-checked: Z6 x Z12 has 24 elements of order 6 (3 of order 2
        // in its 2-part times 8 of order 3 in its 3-part).
        let g = group("Z6 x Z12");
        assert_eq!(count_order(&g, &nat(6)).unwrap(), nat(24));
    }

    #[test]
    fn prime_order_counts() {
        assert_eq!(count_prime_order(&group("Z4 x Z16"), &nat(2)).unwrap(), nat(3));
        assert_eq!(count_prime_order(&group("Z3 x Z9"), &nat(3)).unwrap(), nat(8));
        assert_eq!(count_prime_order(&group("Z4 x Z16"), &nat(5)).unwrap(), nat(0));
        assert_eq!(
            count_prime_order(&group("Z4 x Z16"), &nat(6)),
            Err(SpectraError::NotPrime(nat(6)))
        );
    }

    #[test]
    fn spectrum_of_z4_z16() {
        let s = spectrum(&group("Z4 x Z16")).unwrap();
        let want: Vec<(u64, u64)> = vec![(1, 1), (2, 3), (4, 12), (8, 16), (16, 32)];
        let got: Vec<(Natural, Natural)> =
            s.entries().iter().map(|(o, c)| (o.clone(), c.clone())).collect();
        assert_eq!(
            got,
            want.into_iter().map(|(o, c)| (nat(o), nat(c))).collect::<Vec<_>>()
        );
        assert_eq!(s.total(), nat(64));
        assert_eq!(s.exponent(), &nat(16));
    }

    #[test]
    fn spectrum_of_trivial_group() {
        let s = spectrum(&AbelianGroup::trivial()).unwrap();
        assert_eq!(s.entries().len(), 1);
        assert_eq!(s.count(&nat(1)), nat(1));
    }

    #[test]
    fn spectrum_of_z30_is_euler_phi() {
        let s = spectrum(&group("Z30")).unwrap();
        let want = [(1, 1), (2, 1), (3, 2), (5, 4), (6, 2), (10, 4), (15, 8), (30, 8)];
        assert_eq!(s.entries().len(), want.len());
        for (o, c) in want {
            assert_eq!(s.count(&nat(o)), nat(c), "order {o}");
        }
    }

    #[test]
    fn spectrum_respects_the_divisor_cap() {
        // A squarefree exponent with 20 primes has 2^20 > 10^6 divisors.
        let primes: Vec<Natural> = [
            2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
        ]
        .iter()
        .map(|p| nat(*p))
        .collect();
        let g = AbelianGroup::from_cyclic_factors(&primes).unwrap();
        assert!(matches!(
            spectrum(&g),
            Err(SpectraError::Arith(ArithError::DivisorCapExceeded { .. }))
        ));
    }

    #[test]
    fn spectrum_json_shape() {
        let s = spectrum(&group("Z4 x Z16")).unwrap();
        assert_eq!(
            s.to_json(),
            r#"{"group":"Z4 x Z16","exponent":"16","entries":[{"order":"1","count":"1"},{"order":"2","count":"3"},{"order":"4","count":"12"},{"order":"8","count":"16"},{"order":"16","count":"32"}]}"#
        );
    }
}
