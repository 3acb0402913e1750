//! Exact integer arithmetic, prime factorization, and divisor lattices.
//!
//! Element counts in even modest abelian groups outgrow fixed-width integers
//! (a count of the form `p^(m*alpha)` overflows `u64` already at `p = 2`,
//! `m = 20`, `alpha = 4`), so the base numeric type is the arbitrary-precision
//! [`Natural`]. Divisors are stored as exponent vectors over the primes of
//! their base, which turns the lattice operations gcd and lcm into
//! componentwise min and max.
//!
//! Factorization is deterministic trial division with a 6k±1 wheel. Inputs
//! are group orders at desk scale; values whose second-largest prime factor
//! exceeds roughly 2^32 will factor slowly, which is acceptable here.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision non-negative integer used throughout the crate.
pub type Natural = BigUint;

/// Shorthand for `Natural::from`, mostly for tests and literals.
pub fn nat(n: u64) -> Natural {
    Natural::from(n)
}

/// Greatest common divisor.
pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

/// Least common multiple. `lcm(0, x) = 0` by convention of the backing crate.
pub fn lcm(a: &Natural, b: &Natural) -> Natural {
    a.lcm(b)
}

/// Default bound on the number of divisors a [`DivisorLattice`] may hold.
///
/// Guards against accidental memory blowups from adversarial input such as
/// highly composite CLI arguments.
pub const DEFAULT_DIVISOR_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("{value} has {divisors} divisors, more than the cap of {cap}")]
    DivisorCapExceeded {
        value: Natural,
        divisors: Natural,
        cap: u64,
    },
}

/// The prime factorization of a positive integer.
///
/// Primes are strictly ascending and every exponent is at least 1; the
/// factorization of 1 is the empty product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
}

impl Factorization {
    /// The `(prime, exponent)` pairs, primes ascending.
    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    /// Number of distinct primes.
    pub fn num_primes(&self) -> usize {
        self.factors.len()
    }

    /// Exponent of `p` in the factored value (0 when `p` does not divide it).
    pub fn exponent_of(&self, p: &Natural) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    /// Recomputes the factored value as `prod p^e`.
    pub fn value(&self) -> Natural {
        self.factors
            .iter()
            .fold(Natural::one(), |acc, (p, e)| acc * pow(p, u64::from(*e)))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `base^exp` over [`Natural`].
pub fn pow(base: &Natural, exp: u64) -> Natural {
    num_traits::Pow::pow(base, exp)
}

/// Factors `n >= 1` by trial division; `factorize(&nat(1))` is the empty product.
pub fn factorize(n: &Natural) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    if let Some(small) = n.to_u64() {
        let factors = factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (nat(p), e))
            .collect();
        return Ok(Factorization { factors });
    }

    // Values beyond u64: same wheel, arbitrary-precision candidates.
    let mut rest = n.clone();
    let mut factors: Vec<(Natural, u32)> = Vec::new();
    let strip = |rest: &mut Natural, d: &Natural, factors: &mut Vec<(Natural, u32)>| {
        let mut e = 0u32;
        while (&*rest % d).is_zero() {
            *rest /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
    };
    strip(&mut rest, &nat(2), &mut factors);
    strip(&mut rest, &nat(3), &mut factors);
    let mut d = nat(5);
    let two = nat(2);
    let four = nat(4);
    while &d * &d <= rest {
        strip(&mut rest, &d, &mut factors);
        let d2 = &d + &two;
        if &d2 * &d2 <= rest {
            strip(&mut rest, &d2, &mut factors);
        }
        d += &four;
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let strip = |n: &mut u64, d: u64, factors: &mut Vec<(u64, u32)>| {
        let mut e = 0u32;
        while (*n).is_multiple_of(d) {
            *n /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
    };
    strip(&mut n, 2, &mut factors);
    strip(&mut n, 3, &mut factors);
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        strip(&mut n, d, &mut factors);
        strip(&mut n, d + 2, &mut factors);
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Deterministic primality by trial division, at the same desk scale as
/// [`factorize`].
pub fn is_prime(n: &Natural) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        if small % 2 == 0 {
            return small == 2;
        }
        if small % 3 == 0 {
            return small == 3;
        }
        let mut d = 5u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 || small % (d + 2) == 0 {
                return false;
            }
            d += 6;
        }
        return true;
    }
    matches!(factorize(n), Ok(f) if f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// The lattice of all divisors of a positive integer.
///
/// Divisors are held both as ascending numeric values and as exponent vectors
/// over the base primes; meet and join are componentwise min and max, i.e.
/// gcd and lcm. Construction fails when the divisor count exceeds the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorLattice {
    base: Factorization,
    values: Vec<Natural>,
    exps: Vec<Vec<u32>>,
    // Mixed-radix strides over the base exponents, so an exponent vector maps
    // to its sorted position without hashing.
    strides: Vec<u64>,
    by_radix: Vec<u32>,
}

/// Builds the divisor lattice of `n` under [`DEFAULT_DIVISOR_CAP`].
pub fn divisor_lattice(n: &Natural) -> Result<DivisorLattice, ArithError> {
    divisor_lattice_with_cap(n, DEFAULT_DIVISOR_CAP)
}

/// Builds the divisor lattice of `n`, rejecting more than `cap` divisors.
pub fn divisor_lattice_with_cap(n: &Natural, cap: u64) -> Result<DivisorLattice, ArithError> {
    let base = factorize(n)?;
    let count = base
        .factors
        .iter()
        .fold(Natural::one(), |acc, (_, e)| acc * nat(u64::from(*e) + 1));
    if count > nat(cap) {
        return Err(ArithError::DivisorCapExceeded {
            value: n.clone(),
            divisors: count,
            cap,
        });
    }
    let count = count.to_usize().expect("divisor count fits usize under cap");

    let k = base.factors.len();
    let mut strides = vec![1u64; k];
    for i in (0..k.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * (u64::from(base.factors[i + 1].1) + 1);
    }

    // Enumerate in radix order, then sort by numeric value.
    let mut entries: Vec<(Natural, Vec<u32>, usize)> = Vec::with_capacity(count);
    entries.push((Natural::one(), vec![0; k], 0));
    for (i, (p, e)) in base.factors.iter().enumerate() {
        let prev = std::mem::take(&mut entries);
        for (value, exps, radix) in prev {
            let mut pv = Natural::one();
            for j in 0..=*e {
                let mut exps_j = exps.clone();
                exps_j[i] = j;
                entries.push((
                    &value * &pv,
                    exps_j,
                    radix + u64::from(j) as usize * strides[i] as usize,
                ));
                if j < *e {
                    pv *= p;
                }
            }
        }
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));

    let mut by_radix = vec![0u32; count];
    let mut values = Vec::with_capacity(count);
    let mut exps = Vec::with_capacity(count);
    for (pos, (value, exp, radix)) in entries.into_iter().enumerate() {
        by_radix[radix] = pos as u32;
        values.push(value);
        exps.push(exp);
    }
    Ok(DivisorLattice {
        base,
        values,
        exps,
        strides,
        by_radix,
    })
}

impl DivisorLattice {
    pub fn base(&self) -> &Factorization {
        &self.base
    }

    /// Number of divisors.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty() // never: 1 always divides
    }

    /// All divisors, ascending.
    pub fn values(&self) -> &[Natural] {
        &self.values
    }

    /// The divisor at sorted position `i`.
    pub fn value(&self, i: usize) -> &Natural {
        &self.values[i]
    }

    /// Exponent vector of the divisor at sorted position `i`.
    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    /// Sorted position of divisor `d`, if `d` divides the base value.
    pub fn index_of(&self, d: &Natural) -> Option<usize> {
        self.values.binary_search(d).ok()
    }

    /// Index of 1.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the base value.
    pub fn top(&self) -> usize {
        self.values.len() - 1
    }

    fn position(&self, exps: &[u32]) -> usize {
        let radix: u64 = exps
            .iter()
            .zip(&self.strides)
            .map(|(e, s)| u64::from(*e) * s)
            .sum();
        self.by_radix[radix as usize] as usize
    }

    /// Meet (gcd) of the divisors at positions `i` and `j`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let exps: Vec<u32> = self.exps[i]
            .iter()
            .zip(&self.exps[j])
            .map(|(a, b)| *a.min(b))
            .collect();
        self.position(&exps)
    }

    /// Join (lcm) of the divisors at positions `i` and `j`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let exps: Vec<u32> = self.exps[i]
            .iter()
            .zip(&self.exps[j])
            .map(|(a, b)| *a.max(b))
            .collect();
        self.position(&exps)
    }

    /// Covering pairs `(lower, upper)` of the divisibility order, sorted by
    /// position. `upper / lower` is prime exactly when `upper` covers `lower`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for (k, (_, e)) in self.base.factors.iter().enumerate() {
                if self.exps[i][k] < *e {
                    let mut up = self.exps[i].clone();
                    up[k] += 1;
                    edges.push((i, self.position(&up)));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// The multiset of chain lengths of this product-of-chains lattice:
    /// the base exponents, sorted descending. Two divisor lattices are
    /// isomorphic as lattices exactly when their shapes are equal.
    pub fn shape(&self) -> Vec<u32> {
        let mut shape: Vec<u32> = self.base.factors.iter().map(|(_, e)| *e).collect();
        shape.sort_unstable_by(|a, b| b.cmp(a));
        shape
    }
}

/// Multiset of chain lengths of `lattice`; see [`DivisorLattice::shape`].
pub fn lattice_shape(lattice: &DivisorLattice) -> Vec<u32> {
    lattice.shape()
}
