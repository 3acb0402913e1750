//! The order canonical E-lattice of a finite abelian group.
//!
//! An E-lattice is a set with two associative, commutative operations `⋏`
//! and `⋎` such that `a⋏a = a⋎a = φ(a)` and `a⋏(a⋎b) = a⋎(a⋏b) = φ(a)` for
//! the induced idempotent map `φ`; it is canonical when every `⋏`/`⋎` result
//! is a fixed point of `φ`. On a finite abelian group, collapsing elements
//! of equal order gives such a structure: `φ` sends an element to the chosen
//! representative of its order class, and `⋏`/`⋎` are the gcd/lcm of the
//! representatives' orders pulled back to representatives. The fixed points
//! form a lattice isomorphic to the divisor lattice of the group exponent.
//!
//! Two views are provided. [`ELatticeDescriptor`] is the compact one — the
//! divisor lattice of the exponent with each divisor annotated by its class
//! cardinality — and is what the isomorphism test works on. For small groups
//! [`build_explicit`] materializes the carrier itself, so the axioms can be
//! verified exhaustively rather than taken on faith.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{divisor_lattice, nat, DivisorLattice, Natural};
use crate::group::AbelianGroup;
use crate::spectra::{self, SpectraError};

/// Default bound on the carrier size of [`build_explicit`].
pub const DEFAULT_ELEMENT_CAP: u64 = 5000;

/// Largest carrier for which [`check_axioms`] runs the O(n^3) associativity
/// scan; pairwise axioms run up to [`PAIRWISE_AXIOM_CAP`].
pub const ASSOCIATIVITY_CAP: usize = 100;

/// Largest carrier [`check_axioms`] accepts at all.
pub const PAIRWISE_AXIOM_CAP: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ELatticeError {
    #[error("group of order {order} exceeds the element cap of {cap}")]
    CarrierTooLarge { order: Natural, cap: u64 },
    #[error("carrier of {len} elements exceeds the axiom-check cap of {cap}")]
    AxiomCheckTooLarge { len: usize, cap: usize },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Compact stand-in for the order canonical E-lattice: the divisor lattice
/// of the exponent (the fixed points, up to the canonical isomorphism) with
/// the cardinality of each order class attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ELatticeDescriptor {
    fix_lattice: DivisorLattice,
    class_size: BTreeMap<Natural, Natural>,
}

/// Builds the descriptor of `g`: fix lattice plus class sizes.
pub fn descriptor(g: &AbelianGroup) -> Result<ELatticeDescriptor, SpectraError> {
    let spectrum = spectra::spectrum(g)?;
    let fix_lattice = divisor_lattice(&g.exponent())?;
    Ok(ELatticeDescriptor {
        fix_lattice,
        class_size: spectrum.entries().clone(),
    })
}

impl ELatticeDescriptor {
    pub fn fix_lattice(&self) -> &DivisorLattice {
        &self.fix_lattice
    }

    /// Number of elements in each order class, keyed by order.
    pub fn class_size(&self) -> &BTreeMap<Natural, Natural> {
        &self.class_size
    }

    /// Hasse diagram in DOT, nodes labeled `order (count)`, covering edges
    /// only, ascending node order; byte-deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n  rankdir=BT;\n");
        for (order, count) in &self.class_size {
            out.push_str(&format!("  {order} [label=\"{order} ({count})\"];\n"));
        }
        for (lo, hi) in self.fix_lattice.covers() {
            out.push_str(&format!(
                "  {} -> {};\n",
                self.fix_lattice.value(lo),
                self.fix_lattice.value(hi)
            ));
        }
        out.push_str("}\n");
        out
    }

    /// Descriptor JSON: nodes ascending by order, covering edges as
    /// `[lower, upper]` pairs, all numbers as decimal strings.
    pub fn to_json(&self) -> String {
        let dto = DescriptorDto {
            exponent: self.fix_lattice.value(self.fix_lattice.top()).to_string(),
            nodes: self
                .class_size
                .iter()
                .map(|(order, count)| NodeDto {
                    order: order.to_string(),
                    count: count.to_string(),
                })
                .collect(),
            edges: self
                .fix_lattice
                .covers()
                .into_iter()
                .map(|(lo, hi)| {
                    (
                        self.fix_lattice.value(lo).to_string(),
                        self.fix_lattice.value(hi).to_string(),
                    )
                })
                .collect(),
        };
        serde_json::to_string(&dto).expect("descriptor serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct DescriptorDto {
    exponent: String,
    nodes: Vec<NodeDto>,
    edges: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeDto {
    order: String,
    count: String,
}

/// Carrier-level order canonical E-lattice of a small group.
///
/// Elements are residue tuples of the invariant-factor product, enumerated
/// row-major (so in lexicographic order). The representative of each order
/// class is its lexicographically smallest element. `⋏`/`⋎` only depend on
/// the order classes of their arguments, so they are stored as tables on
/// classes and pulled back through `φ`.
#[derive(Debug, Clone)]
pub struct ExplicitELattice {
    moduli: Vec<u64>,
    carrier: Vec<Vec<u64>>,
    orders: Vec<u64>,
    class_orders: Vec<u64>,
    class_of: Vec<u32>,
    reps: Vec<u32>,
    phi: Vec<u32>,
    meet_table: Vec<u32>,
    join_table: Vec<u32>,
}

/// Enumerates the elements of `g` and populates `φ` and the `⋏`/`⋎` tables.
/// Fails when the group order exceeds `element_cap`.
pub fn build_explicit(
    g: &AbelianGroup,
    element_cap: u64,
) -> Result<ExplicitELattice, ELatticeError> {
    let order = g.order();
    if order > nat(element_cap) {
        return Err(ELatticeError::CarrierTooLarge {
            order,
            cap: element_cap,
        });
    }
    let moduli: Vec<u64> = g
        .invariant_factors()
        .iter()
        .map(|d| d.to_u64().expect("invariant factor fits u64 under cap"))
        .collect();

    let carrier: Vec<Vec<u64>> = if moduli.is_empty() {
        vec![Vec::new()]
    } else {
        moduli
            .iter()
            .map(|&d| 0..d)
            .multi_cartesian_product()
            .collect()
    };

    let orders: Vec<u64> = carrier
        .iter()
        .map(|tuple| {
            tuple
                .iter()
                .zip(&moduli)
                .fold(1u64, |acc, (r, d)| lcm_u64(acc, d / gcd_u64(*d, *r)))
        })
        .collect();

    let mut class_orders: Vec<u64> = orders.to_vec();
    class_orders.sort_unstable();
    class_orders.dedup();

    let class_of: Vec<u32> = orders
        .iter()
        .map(|o| class_orders.binary_search(o).expect("order is a class") as u32)
        .collect();

    // Row-major enumeration is lexicographic, so the first element seen in a
    // class is its lex-smallest member.
    let mut reps = vec![u32::MAX; class_orders.len()];
    for (i, class) in class_of.iter().enumerate() {
        if reps[*class as usize] == u32::MAX {
            reps[*class as usize] = i as u32;
        }
    }

    let phi: Vec<u32> = class_of.iter().map(|c| reps[*c as usize]).collect();

    let nc = class_orders.len();
    let mut meet_table = vec![0u32; nc * nc];
    let mut join_table = vec![0u32; nc * nc];
    for i in 0..nc {
        for j in 0..nc {
            let meet = gcd_u64(class_orders[i], class_orders[j]);
            let join = lcm_u64(class_orders[i], class_orders[j]);
            meet_table[i * nc + j] = class_orders
                .binary_search(&meet)
                .expect("gcd of element orders is an element order")
                as u32;
            join_table[i * nc + j] = class_orders
                .binary_search(&join)
                .expect("lcm of element orders is an element order")
                as u32;
        }
    }

    Ok(ExplicitELattice {
        moduli,
        carrier,
        orders,
        class_orders,
        class_of,
        reps,
        phi,
        meet_table,
        join_table,
    })
}

impl ExplicitELattice {
    /// Carrier size, the group order.
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// The invariant-factor moduli of the residue tuples.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// The residue tuple at carrier index `i`.
    pub fn element(&self, i: usize) -> &[u64] {
        &self.carrier[i]
    }

    /// Carrier index of `tuple`, if present.
    pub fn index_of(&self, tuple: &[u64]) -> Option<usize> {
        self.carrier.binary_search_by(|e| e.as_slice().cmp(tuple)).ok()
    }

    /// Order of the element at index `i`.
    pub fn order_of(&self, i: usize) -> u64 {
        self.orders[i]
    }

    /// `φ`: index of the representative of `i`'s order class.
    pub fn phi(&self, i: usize) -> usize {
        self.phi[i] as usize
    }

    /// `a ⋏ b`: representative of the class at the gcd of the two orders.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let nc = self.class_orders.len();
        let class = self.meet_table[self.class_of[a] as usize * nc + self.class_of[b] as usize];
        self.reps[class as usize] as usize
    }

    /// `a ⋎ b`: representative of the class at the lcm of the two orders.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let nc = self.class_orders.len();
        let class = self.join_table[self.class_of[a] as usize * nc + self.class_of[b] as usize];
        self.reps[class as usize] as usize
    }

    /// The distinct element orders, ascending; these label the classes.
    pub fn class_orders(&self) -> &[u64] {
        &self.class_orders
    }

    /// Representatives (Fix `φ`), one carrier index per class.
    pub fn representatives(&self) -> Vec<usize> {
        self.reps.iter().map(|r| *r as usize).collect()
    }

    /// Class cardinalities keyed by order, in the same shape as a spectrum.
    pub fn class_sizes(&self) -> BTreeMap<Natural, Natural> {
        let mut sizes: BTreeMap<u64, u64> = BTreeMap::new();
        for order in &self.orders {
            *sizes.entry(*order).or_insert(0) += 1;
        }
        sizes.into_iter().map(|(o, c)| (nat(o), nat(c))).collect()
    }

    /// Overwrites one `⋏`-table entry (by class indices). This deliberately
    /// breaks the structure; it exists so negative tests and demonstrations
    /// can show [`check_axioms`] catching a corrupted table.
    pub fn corrupt_meet(&mut self, class_a: usize, class_b: usize, result_class: usize) {
        let nc = self.class_orders.len();
        self.meet_table[class_a * nc + class_b] = result_class as u32;
    }

    fn render(&self, i: usize) -> String {
        let parts: Vec<String> = self.carrier[i].iter().map(u64::to_string).collect();
        format!("({})", parts.join(", "))
    }
}

/// Outcome of a single axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed,
    Failed { witness: String },
    /// Not run, e.g. the associativity scan above [`ASSOCIATIVITY_CAP`].
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

/// Per-axiom results of [`check_axioms`], with a witness for each failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub carrier_len: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    /// True when no check failed (skipped checks do not count as failures).
    pub fn all_passed(&self) -> bool {
        !self
            .checks
            .iter()
            .any(|c| matches!(c.outcome, CheckOutcome::Failed { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, CheckOutcome::Failed { .. }))
    }
}

/// Exhaustively verifies the E-lattice axioms on an explicit carrier.
///
/// Pairwise axioms (commutativity, diagonal collapse, absorption, the `φ`
/// identities, canonicity, and the equal-order class structure) run on
/// carriers up to [`PAIRWISE_AXIOM_CAP`]; the associativity triple scan runs
/// up to [`ASSOCIATIVITY_CAP`] and is reported as skipped beyond that.
pub fn check_axioms(e: &ExplicitELattice) -> Result<AxiomReport, ELatticeError> {
    let n = e.len();
    if n > PAIRWISE_AXIOM_CAP {
        return Err(ELatticeError::AxiomCheckTooLarge {
            len: n,
            cap: PAIRWISE_AXIOM_CAP,
        });
    }

    let mut checks = Vec::new();

    // phi is idempotent.
    checks.push(check_all(
        "phi idempotent: phi(phi(a)) = phi(a)",
        (0..n).find_map(|a| {
            (e.phi(e.phi(a)) != e.phi(a)).then(|| format!("a={}", e.render(a)))
        }),
    ));

    // Im phi = Fix phi.
    checks.push(check_all("Im phi = Fix phi", {
        let image: std::collections::BTreeSet<usize> = (0..n).map(|a| e.phi(a)).collect();
        let fixed: std::collections::BTreeSet<usize> =
            (0..n).filter(|&a| e.phi(a) == a).collect();
        (image != fixed).then(|| {
            format!(
                "image has {} elements, fixed-point set has {}",
                image.len(),
                fixed.len()
            )
        })
    }));

    // Kernel classes are exactly the equal-order classes.
    checks.push(check_all(
        "phi(a) = phi(b) iff ord(a) = ord(b)",
        pairs(n).find_map(|(a, b)| {
            ((e.phi(a) == e.phi(b)) != (e.order_of(a) == e.order_of(b)))
                .then(|| format!("a={}, b={}", e.render(a), e.render(b)))
        }),
    ));

    // Axiom b): commutativity.
    checks.push(check_all(
        "commutativity: a⋏b = b⋏a and a⋎b = b⋎a",
        pairs(n).find_map(|(a, b)| {
            (e.meet(a, b) != e.meet(b, a) || e.join(a, b) != e.join(b, a))
                .then(|| format!("a={}, b={}", e.render(a), e.render(b)))
        }),
    ));

    // Axiom c): the diagonal collapses to phi.
    checks.push(check_all(
        "diagonal: a⋏a = a⋎a = phi(a)",
        (0..n).find_map(|a| {
            (e.meet(a, a) != e.phi(a) || e.join(a, a) != e.phi(a))
                .then(|| format!("a={}", e.render(a)))
        }),
    ));

    // Axiom d): absorption collapses to phi.
    checks.push(check_all(
        "absorption: a⋏(a⋎b) = a⋎(a⋏b) = phi(a)",
        pairs(n).find_map(|(a, b)| {
            (e.meet(a, e.join(a, b)) != e.phi(a) || e.join(a, e.meet(a, b)) != e.phi(a))
                .then(|| format!("a={}, b={}", e.render(a), e.render(b)))
        }),
    ));

    // Derived identity: a⋏phi(a) = a⋎phi(a) = phi(a).
    checks.push(check_all(
        "a⋏phi(a) = a⋎phi(a) = phi(a)",
        (0..n).find_map(|a| {
            (e.meet(a, e.phi(a)) != e.phi(a) || e.join(a, e.phi(a)) != e.phi(a))
                .then(|| format!("a={}", e.render(a)))
        }),
    ));

    // Derived identity: phi slides through ⋏.
    checks.push(check_all(
        "a⋏phi(b) = phi(a)⋏b = phi(a)⋏phi(b) = phi(a⋏b)",
        pairs_full(n).find_map(|(a, b)| {
            let want = e.phi(e.meet(a, b));
            (e.meet(a, e.phi(b)) != want
                || e.meet(e.phi(a), b) != want
                || e.meet(e.phi(a), e.phi(b)) != want)
                .then(|| format!("a={}, b={}", e.render(a), e.render(b)))
        }),
    ));

    // Derived identity: phi slides through ⋎.
    checks.push(check_all(
        "a⋎phi(b) = phi(a)⋎b = phi(a)⋎phi(b) = phi(a⋎b)",
        pairs_full(n).find_map(|(a, b)| {
            let want = e.phi(e.join(a, b));
            (e.join(a, e.phi(b)) != want
                || e.join(e.phi(a), b) != want
                || e.join(e.phi(a), e.phi(b)) != want)
                .then(|| format!("a={}, b={}", e.render(a), e.render(b)))
        }),
    ));

    // Canonical property: results land in Fix phi.
    checks.push(check_all(
        "canonicity: a⋏b and a⋎b lie in Fix phi",
        pairs_full(n).find_map(|(a, b)| {
            let m = e.meet(a, b);
            let j = e.join(a, b);
            (e.phi(m) != m || e.phi(j) != j)
                .then(|| format!("a={}, b={}", e.render(a), e.render(b)))
        }),
    ));

    // Axiom a): associativity, cubic and therefore capped separately.
    if n <= ASSOCIATIVITY_CAP {
        checks.push(check_all(
            "associativity: (a⋏b)⋏c = a⋏(b⋏c) and (a⋎b)⋎c = a⋎(b⋎c)",
            triples(n).find_map(|(a, b, c)| {
                (e.meet(e.meet(a, b), c) != e.meet(a, e.meet(b, c))
                    || e.join(e.join(a, b), c) != e.join(a, e.join(b, c)))
                    .then(|| {
                        format!(
                            "a={}, b={}, c={}",
                            e.render(a),
                            e.render(b),
                            e.render(c)
                        )
                    })
            }),
        ));
    } else {
        checks.push(AxiomCheck {
            name: "associativity: (a⋏b)⋏c = a⋏(b⋏c) and (a⋎b)⋎c = a⋎(b⋎c)",
            outcome: CheckOutcome::Skipped {
                reason: format!("carrier of {n} exceeds the triple-scan cap of {ASSOCIATIVITY_CAP}"),
            },
        });
    }

    Ok(AxiomReport {
        carrier_len: n,
        checks,
    })
}

fn check_all(name: &'static str, witness: Option<String>) -> AxiomCheck {
    AxiomCheck {
        name,
        outcome: match witness {
            None => CheckOutcome::Passed,
            Some(witness) => CheckOutcome::Failed { witness },
        },
    }
}

/// Unordered pairs with `a <= b`; enough for symmetric predicates.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a..n).map(move |b| (a, b)))
}

/// All ordered pairs; needed when the predicate is not symmetric in a, b.
fn pairs_full(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))
    })
}

/// Result of the E-lattice isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoDecision {
    /// The witness maps each prime of the first group's order to the prime
    /// of the second whose order classes it must correspond to.
    Isomorphic { witness: Vec<(Natural, Natural)> },
    NotIsomorphic,
}

impl IsoDecision {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoDecision::Isomorphic { .. })
    }
}

/// Decides whether the order canonical E-lattices of `g` and `h` are
/// isomorphic.
///
/// A lattice isomorphism between two divisor lattices is a bijection of
/// primes preserving chain lengths (products of chains have no other
/// automorphisms), and an E-lattice isomorphism additionally needs every
/// order class to be matched with one of equal cardinality — bijections
/// inside classes then exist automatically. Because class sizes multiply
/// across coprime orders, it is enough to compare the per-prime count
/// vectors under the candidate prime bijection. The search tries candidates
/// in ascending order, so a returned witness is the lexicographically
/// smallest one. The decision is made from the descriptors alone; no
/// canonical forms are compared.
pub fn iso(g: &AbelianGroup, h: &AbelianGroup) -> IsoDecision {
    let left = prime_profiles(g);
    let right = prime_profiles(h);
    if left.len() != right.len() {
        return IsoDecision::NotIsomorphic;
    }
    let mut assignment: Vec<usize> = Vec::with_capacity(left.len());
    let mut used = vec![false; right.len()];
    if assign(&left, &right, &mut assignment, &mut used) {
        let witness = assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| (left[i].0.clone(), right[j].0.clone()))
            .collect();
        IsoDecision::Isomorphic { witness }
    } else {
        IsoDecision::NotIsomorphic
    }
}

struct PrimeProfile(Natural, u32, Vec<Natural>);

fn prime_profiles(g: &AbelianGroup) -> Vec<PrimeProfile> {
    g.components()
        .iter()
        .map(|c| {
            let gamma = c.largest_part();
            let counts = (0..=gamma)
                .map(|alpha| spectra::count_prime_power(c, alpha))
                .collect();
            PrimeProfile(c.prime().clone(), gamma, counts)
        })
        .collect()
}

fn assign(
    left: &[PrimeProfile],
    right: &[PrimeProfile],
    assignment: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = assignment.len();
    if i == left.len() {
        return true;
    }
    for j in 0..right.len() {
        if used[j] {
            continue;
        }
        // Chain lengths must match for the fix lattices to correspond, and
        // the class sizes along that chain must agree.
        if left[i].1 != right[j].1 || left[i].2 != right[j].2 {
            continue;
        }
        used[j] = true;
        assignment.push(j);
        if assign(left, right, assignment, used) {
            return true;
        }
        assignment.pop();
        used[j] = false;
    }
    false
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
