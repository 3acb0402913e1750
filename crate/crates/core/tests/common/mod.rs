//! Shared helpers for the integration suites: exhaustive group enumeration
//! and the independent oracles the properties are checked against.

#![allow(dead_code)] // each test binary uses its own subset

use ordlat::arith::{factorize, nat, DivisorLattice, Natural};
use ordlat::group::{AbelianGroup, PrimaryComponent};

/// All partitions of `n` as non-decreasing lists of positive parts.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn extend(remaining: u32, min_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in min_part..=remaining {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order exactly `n`, i.e. every choice of one
/// partition per prime exponent of `n`.
pub fn groups_of_order(n: u64) -> Vec<AbelianGroup> {
    let fact = factorize(&nat(n)).expect("positive order");
    let mut stems: Vec<Vec<PrimaryComponent>> = vec![Vec::new()];
    for (p, e) in fact.factors() {
        let parts = partitions(*e);
        let mut next = Vec::with_capacity(stems.len() * parts.len());
        for stem in &stems {
            for partition in &parts {
                let mut stem = stem.clone();
                stem.push(PrimaryComponent::new(p.clone(), partition.clone()).unwrap());
                next.push(stem);
            }
        }
        stems = next;
    }
    stems
        .into_iter()
        .map(|components| AbelianGroup::from_components(components).unwrap())
        .collect()
}

/// Every abelian group of order at most `max`, the trivial group included.
pub fn groups_up_to(max: u64) -> Vec<AbelianGroup> {
    (1..=max).flat_map(groups_of_order).collect()
}

/// Euler's totient, by its own trial division; deliberately not routed
/// through the library.
pub fn euler_phi(n: u64) -> u64 {
    let mut remaining = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= remaining {
        if remaining.is_multiple_of(p) {
            while remaining.is_multiple_of(p) {
                remaining /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if remaining > 1 {
        result -= result / remaining;
    }
    result
}

/// Per-prime count of elements of order `p^alpha`, computed by the literal
/// recurrence (one cyclic factor appended at a time) instead of the closed
/// form the library uses.
pub fn count_by_recurrence(p: u64, partition: &[u32], alpha: u32) -> Natural {
    use ordlat::arith::pow;
    let p = nat(p);
    let top = *partition.last().expect("non-empty partition");
    let mut f: Vec<Natural> = (0..=top)
        .map(|a| {
            if a == 0 {
                nat(1)
            } else if a <= partition[0] {
                pow(&p, u64::from(a)) - pow(&p, u64::from(a - 1))
            } else {
                nat(0)
            }
        })
        .collect();
    for part in &partition[1..] {
        let mut cumulative = nat(0);
        let g: Vec<Natural> = f
            .iter()
            .map(|x| {
                cumulative += x;
                cumulative.clone()
            })
            .collect();
        f = (0..=top)
            .map(|a| {
                if a == 0 {
                    nat(1)
                } else if a <= *part {
                    pow(&p, u64::from(a)) * &g[a as usize]
                        - pow(&p, u64::from(a - 1)) * &g[(a - 1) as usize]
                } else {
                    nat(0)
                }
            })
            .collect();
    }
    f.get(alpha as usize).cloned().unwrap_or_else(|| nat(0))
}

/// All permutations of `items`, for exhaustive order-insensitivity checks.
pub fn permutations(items: &[u64]) -> Vec<Vec<u64>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, *head);
            out.push(tail);
        }
    }
    out
}

/// Brute-force lattice isomorphism search: backtracks over bijections,
/// pruning on meets with already-placed elements (the meet of two divisors
/// never sits above either), and verifies both operation tables on any
/// complete bijection. Exponential in principle; meant for tiny lattices.
pub fn brute_force_lattice_iso(a: &DivisorLattice, b: &DivisorLattice) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        a: &DivisorLattice,
        b: &DivisorLattice,
        i: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = a.len();
        if i == n {
            for x in 0..n {
                for y in 0..n {
                    if map[a.meet(x, y)] != b.meet(map[x], map[y])
                        || map[a.join(x, y)] != b.join(map[x], map[y])
                    {
                        return false;
                    }
                }
            }
            return true;
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            // meet(i, k) for k < i is already placed, so it must agree.
            let consistent =
                (0..i).all(|k| map[a.meet(i, k)] == b.meet(j, map[k]));
            if !consistent {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if extend(a, b, i + 1, map, used) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }

    extend(a, b, 0, &mut map, &mut used)
}
