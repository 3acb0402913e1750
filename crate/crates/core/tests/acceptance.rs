//! Acceptance suite: each test runs one criterion at its stated tolerance
//! (exact, throughout) and prints a single pass/fail line with the elapsed
//! time. Run with `--nocapture` to see the lines:
//!
//! ```text
//! cargo test -p ordlat --test acceptance -- --nocapture
//! ```

mod common;

use std::time::{Duration, Instant};

use common::{groups_up_to, partitions};
use ordlat::arith::{nat, pow, Natural};
use ordlat::elattice::{
    build_explicit, check_axioms, descriptor, iso, CheckOutcome, DEFAULT_ELEMENT_CAP,
};
use ordlat::group::{AbelianGroup, PrimaryComponent};
use ordlat::oracle::enumerate_spectrum;
use ordlat::reconstruct::{reconstruct, NotRealizable, ReconstructError, SpectrumCandidate};
use ordlat::spectra::{count_order, count_prime_power, spectrum};

fn criterion(name: &str, budget: Duration, run: impl FnOnce() -> Result<(), String>) {
    let started = Instant::now();
    let result = run();
    let elapsed = started.elapsed();
    match &result {
        Ok(()) if elapsed <= budget => {
            println!("{name}: pass ({elapsed:.2?}, budget {budget:?})");
        }
        Ok(()) => println!("{name}: FAIL (over budget: {elapsed:.2?} > {budget:?})"),
        Err(msg) => println!("{name}: FAIL ({msg}; {elapsed:.2?})"),
    }
    if let Err(msg) = result {
        panic!("{name}: {msg}");
    }
    assert!(
        elapsed <= budget,
        "{name}: {elapsed:?} exceeded the {budget:?} budget"
    );
}

fn group(spec: &str) -> AbelianGroup {
    spec.parse().expect("valid group spec")
}

#[test]
fn criterion_1_spectrum_of_z4_z16_exact() {
    let g = group("Z4 x Z16");
    criterion(
        "criterion 1 (Z4 x Z16 spectrum, exact)",
        Duration::from_millis(1),
        || {
            let s = spectrum(&g).map_err(|e| e.to_string())?;
            let want: Vec<(Natural, Natural)> = [(1u64, 1u64), (2, 3), (4, 12), (8, 16), (16, 32)]
                .iter()
                .map(|(o, c)| (nat(*o), nat(*c)))
                .collect();
            let got: Vec<(Natural, Natural)> = s
                .entries()
                .iter()
                .map(|(o, c)| (o.clone(), c.clone()))
                .collect();
            if got != want {
                return Err(format!("spectrum was {got:?}"));
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_2_count_512_of_order_120() {
    let g = group("Z12 x Z720");
    criterion(
        "criterion 2 (512 elements of order 120 in Z12 x Z720)",
        Duration::from_millis(1),
        || {
            let per_prime = [(2u64, 3u32, 16u64), (3, 1, 8), (5, 1, 4)];
            for (p, alpha, want) in per_prime {
                let c = g.component_for(&nat(p)).ok_or("missing component")?;
                let got = count_prime_power(c, alpha);
                if got != nat(want) {
                    return Err(format!("count at {p}^{alpha} was {got}, wanted {want}"));
                }
            }
            let got = count_order(&g, &nat(120)).map_err(|e| e.to_string())?;
            if got != nat(16 * 8 * 4) {
                return Err(format!("count at 120 was {got}, wanted 512"));
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_3_prime_order_counts_follow_p_to_the_m() {
    criterion(
        "criterion 3 (count at p is p^m - 1, p in {2,3,5,7}, weight <= 6)",
        Duration::from_secs(1),
        || {
            for p in [2u64, 3, 5, 7] {
                for weight in 1..=6u32 {
                    for partition in partitions(weight) {
                        let m = partition.len() as u64;
                        let c = PrimaryComponent::new(nat(p), partition.clone())
                            .map_err(|e| e.to_string())?;
                        let got = count_prime_power(&c, 1);
                        let want = pow(&nat(p), m) - nat(1);
                        if got != want {
                            return Err(format!(
                                "p={p} partition={partition:?}: {got} != {want}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_4_formula_agrees_with_enumeration_up_to_2000() {
    let groups = groups_up_to(2000);
    criterion(
        "criterion 4 (formula vs. exhaustive enumeration, every group of order <= 2000)",
        Duration::from_secs(120),
        || {
            for g in &groups {
                let formula = spectrum(g).map_err(|e| e.to_string())?;
                let tallied =
                    enumerate_spectrum(&g.invariant_factors()).map_err(|e| e.to_string())?;
                if !formula.same_entries(&tallied) {
                    return Err(format!("{g}: formula and enumeration disagree"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_5_iso_decision_matches_canonical_equality_up_to_200() {
    let groups = groups_up_to(200);
    criterion(
        "criterion 5 (E-lattice iso iff canonical equality, all pairs of order <= 200)",
        Duration::from_secs(60),
        || {
            for (i, g) in groups.iter().enumerate() {
                for h in &groups[i..] {
                    let decided = iso(g, h).is_isomorphic();
                    let canonical = g == h;
                    if decided != canonical {
                        return Err(format!(
                            "({g}, {h}): iso said {decided}, canonical equality is {canonical}"
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_6_reconstruction_round_trips_up_to_10000() {
    let groups = groups_up_to(10_000);
    criterion(
        "criterion 6 (reconstruct(spectrum(G)) = G, every group of order <= 10^4)",
        Duration::from_secs(120),
        || {
            for g in &groups {
                let s = spectrum(g).map_err(|e| e.to_string())?;
                let rebuilt = reconstruct(&SpectrumCandidate::from_spectrum(&s))
                    .map_err(|e| format!("{g}: {e}"))?;
                if &rebuilt != g {
                    return Err(format!("{g} came back as {rebuilt}"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_7_axioms_hold_on_every_explicit_lattice_up_to_100() {
    let groups = groups_up_to(100);
    criterion(
        "criterion 7 (full axiom pass on explicit E-lattices of order <= 100)",
        Duration::from_secs(60),
        || {
            if !groups.contains(&group("Z4 x Z16")) {
                return Err("enumeration is missing Z4 x Z16".to_owned());
            }
            for g in &groups {
                let e = build_explicit(g, DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?;
                let report = check_axioms(&e).map_err(|e| e.to_string())?;
                if !report.all_passed() {
                    let failure = report.failures().next().unwrap();
                    return Err(format!("{g}: {} failed: {:?}", failure.name, failure.outcome));
                }
                // Order <= 100 means the associativity scan must actually run.
                if report
                    .checks
                    .iter()
                    .any(|c| matches!(c.outcome, CheckOutcome::Skipped { .. }))
                {
                    return Err(format!("{g}: a check was skipped"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_8_negative_controls() {
    criterion(
        "criterion 8 (negative controls: corrupted table, bad cumulative, Z9 vs Z25)",
        Duration::from_secs(1),
        || {
            // A corrupted meet table must fail with a witness.
            let mut e =
                build_explicit(&group("Z4 x Z16"), DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?;
            e.corrupt_meet(1, 2, 4);
            let report = check_axioms(&e).map_err(|e| e.to_string())?;
            if report.all_passed() {
                return Err("corrupted meet table went undetected".to_owned());
            }
            let has_witness = report
                .failures()
                .all(|c| matches!(&c.outcome, CheckOutcome::Failed { witness } if !witness.is_empty()));
            if !has_witness {
                return Err("failure reported without a witness".to_owned());
            }

            // A non-power-of-p cumulative sum must be NotRealizable.
            let candidate =
                SpectrumCandidate::from_entries([(nat(1), nat(1)), (nat(2), nat(5))])
                    .map_err(|e| e.to_string())?;
            match reconstruct(&candidate) {
                Err(ReconstructError::NotRealizable(NotRealizable::CumulativeNotPrimePower {
                    cumulative,
                    ..
                })) if cumulative == nat(6) => {}
                other => return Err(format!("expected a cumulative rejection, got {other:?}")),
            }

            // Z9 and Z25: isomorphic fix lattices (3-chains), different class
            // sizes, so not E-lattice isomorphic.
            let z9 = group("Z9");
            let z25 = group("Z25");
            let shapes_match = descriptor(&z9)
                .map_err(|e| e.to_string())?
                .fix_lattice()
                .shape()
                == descriptor(&z25).map_err(|e| e.to_string())?.fix_lattice().shape();
            if !shapes_match {
                return Err("Z9 and Z25 fix lattices should have equal shape".to_owned());
            }
            if iso(&z9, &z25).is_isomorphic() {
                return Err("Z9 and Z25 reported isomorphic".to_owned());
            }
            Ok(())
        },
    );
}
