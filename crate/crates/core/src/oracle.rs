//! Brute-force ground truth for order counting.
//!
//! Enumerates every element of a small direct product of cyclic groups and
//! tallies orders directly. Nothing here touches the counting formulas: the
//! only shared code is gcd/lcm, so agreement between this module and
//! [`crate::spectra`] is a genuine cross-check rather than a tautology.
//!
//! The enumerator takes raw cyclic factors, not a canonical group, so it
//! also exercises canonicalization: permuted or CRT-recombined factor lists
//! must tally identically.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{gcd, lcm, nat, Natural};
use crate::spectra::OrderSpectrum;

/// Default bound on the number of elements [`enumerate_spectrum`] will visit.
pub const DEFAULT_ENUM_CAP: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{product} elements to enumerate, more than the cap of {cap}")]
    TooManyElements { product: Natural, cap: u64 },
    #[error("cyclic factor must be at least 1")]
    ZeroFactor,
}

/// Order of the element `residues` in the direct product of the `Z_d` for
/// `d` in `factors`.
///
/// The order of residue `r` modulo `d` is `d / gcd(d, r)`, and the order of
/// a tuple is the lcm across components; the zero tuple has order 1.
///
/// Panics when `residues` and `factors` differ in length or a residue is not
/// reduced modulo its factor.
pub fn element_order(residues: &[Natural], factors: &[Natural]) -> Natural {
    assert_eq!(
        residues.len(),
        factors.len(),
        "tuple length must match factor count"
    );
    let mut order = Natural::one();
    for (r, d) in residues.iter().zip(factors) {
        assert!(!d.is_zero(), "modulus must be positive");
        assert!(r < d, "residue {r} not reduced modulo {d}");
        order = lcm(&order, &(d / gcd(d, r)));
    }
    order
}

/// Tallies the order of every element of the direct product of the `Z_d`,
/// visiting tuples in row-major order.
pub fn enumerate_spectrum(factors: &[Natural]) -> Result<OrderSpectrum, OracleError> {
    enumerate_spectrum_with_cap(factors, DEFAULT_ENUM_CAP)
}

/// [`enumerate_spectrum`] with an explicit element cap.
pub fn enumerate_spectrum_with_cap(
    factors: &[Natural],
    cap: u64,
) -> Result<OrderSpectrum, OracleError> {
    let mut product = Natural::one();
    for d in factors {
        if d.is_zero() {
            return Err(OracleError::ZeroFactor);
        }
        product *= d;
    }
    if product > nat(cap) {
        return Err(OracleError::TooManyElements { product, cap });
    }

    // Everything fits in u64 below the cap; precompute per-component order
    // tables so the inner loop is a few u64 gcds per element.
    let moduli: Vec<u64> = factors
        .iter()
        .map(|d| d.to_u64().expect("factor fits u64 under cap"))
        .collect();
    let order_tables: Vec<Vec<u64>> = moduli
        .iter()
        .map(|&d| (0..d).map(|r| d / gcd_u64(d, r)).collect())
        .collect();

    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    let mut residues = vec![0u64; moduli.len()];
    loop {
        let order = residues
            .iter()
            .zip(&order_tables)
            .fold(1u64, |acc, (r, table)| lcm_u64(acc, table[*r as usize]));
        *tally.entry(order).or_insert(0) += 1;

        // Row-major odometer: bump the last coordinate first.
        let mut pos = residues.len();
        loop {
            if pos == 0 {
                let entries = tally
                    .into_iter()
                    .map(|(order, count)| (nat(order), nat(count)))
                    .collect();
                return Ok(OrderSpectrum::from_tally(None, entries));
            }
            pos -= 1;
            residues[pos] += 1;
            if residues[pos] < moduli[pos] {
                break;
            }
            residues[pos] = 0;
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nats(values: &[u64]) -> Vec<Natural> {
        values.iter().map(|v| nat(*v)).collect()
    }

    fn entry(s: &OrderSpectrum, order: u64) -> Natural {
        s.count(&nat(order))
    }

    #[test]
    fn order_of_identity() {
        assert_eq!(element_order(&nats(&[0, 0]), &nats(&[4, 16])), nat(1));
    }

    #[test]
    fn order_of_involutions() {
        assert_eq!(element_order(&nats(&[2, 8]), &nats(&[4, 16])), nat(2));
    }

    #[test]
    fn order_is_lcm_of_component_orders() {
        // (1, 2) in Z4 x Z16: orders 4 and 8, lcm 8.
        assert_eq!(element_order(&nats(&[1, 2]), &nats(&[4, 16])), nat(8));
    }

    #[test]
    #[should_panic(expected = "not reduced")]
    fn rejects_unreduced_residue() {
        element_order(&nats(&[4, 0]), &nats(&[4, 16]));
    }

    #[test]
    fn tallies_z4_z16() {
        let s = enumerate_spectrum(&nats(&[4, 16])).unwrap();
        for (order, count) in [(1u64, 1u64), (2, 3), (4, 12), (8, 16), (16, 32)] {
            assert_eq!(entry(&s, order), nat(count), "order {order}");
        }
        assert_eq!(s.total(), nat(64));
        assert!(s.group().is_none());
    }

    #[test]
    fn empty_product_is_the_trivial_group() {
        let s = enumerate_spectrum(&[]).unwrap();
        assert_eq!(s.entries().len(), 1);
        assert_eq!(entry(&s, 1), nat(1));
    }

    #[test]
    fn tallies_z6_z12() {
        let s = enumerate_spectrum(&nats(&[6, 12])).unwrap();
        assert_eq!(s.total(), nat(72));
        assert_eq!(entry(&s, 6), nat(24));
    }

    #[test]
    fn tally_is_invariant_under_factor_permutation_and_crt() {
        let a = enumerate_spectrum(&nats(&[6, 4])).unwrap();
        let b = enumerate_spectrum(&nats(&[4, 6])).unwrap();
        let c = enumerate_spectrum(&nats(&[2, 12])).unwrap();
        assert!(a.same_entries(&b));
        assert!(a.same_entries(&c));
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_spectrum_with_cap(&nats(&[100, 100]), 5000).unwrap_err();
        assert_eq!(
            err,
            OracleError::TooManyElements {
                product: nat(10_000),
                cap: 5000
            }
        );
        assert_eq!(
            enumerate_spectrum(&nats(&[0])),
            Err(OracleError::ZeroFactor)
        );
    }

    #[test]
    fn factors_of_one_are_inert() {
        let a = enumerate_spectrum(&nats(&[1, 30, 1])).unwrap();
        let b = enumerate_spectrum(&nats(&[30])).unwrap();
        assert!(a.same_entries(&b));
    }
}
