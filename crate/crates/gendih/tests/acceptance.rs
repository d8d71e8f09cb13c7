//! Acceptance gate: twelve numbered criteria, each printing one
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines for passing criteria as well.

use num_bigint::BigInt;
use num_rational::BigRational;

use gendih::census::{
    census_exhaustive, census_sampled, m3k2_counts, sample_subset, trial_rng,
};
use gendih::collisions::{
    cross_group_collision_totals, expected_xa_bound, expected_xa_exact, mean_xa_sampled,
    redundant_triple_count, triple_class_bounds, triple_class_counts, CrossVerdict,
    DEFAULT_CROSS_BUDGET, DEFAULT_TRIPLE_BUDGET,
};
use gendih::combinat::{binomial, for_each_combination, ratio};
use gendih::expectation::{
    binomial_identity_holds, expectation_curve, expected_diffset_size_in, prob_missing_cross_sum,
    prob_missing_diff_cyclic, prob_missing_sum_cyclic, EvalMode,
};
use gendih::bounds::{proportion_condition, proportion_sweep};
use gendih::group::GroupSpec;
use gendih::setops::SubsetD;

const CENSUS_BUDGET: u64 = 10_000_000;

fn report(number: u32, name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("PASS criterion {number:02} {name}: {detail}"),
        Err(detail) => {
            println!("FAIL criterion {number:02} {name}: {detail}");
            panic!("criterion {number:02} {name}: {detail}");
        }
    }
}

fn cyclic(n: u64) -> GroupSpec {
    GroupSpec::cyclic(n as u32).expect("valid modulus")
}

#[test]
fn criterion_01_three_element_census_counts() {
    report(1, "three-element census counts", (|| {
        let mut details = Vec::new();
        for (n, required) in [(5u64, 50u64), (6, 60), (8, 160)] {
            let counts = m3k2_counts(n).map_err(|e| e.to_string())?;
            if counts.closed_form != counts.exhaustive {
                return Err(format!(
                    "n={n}: closed form {} disagrees with census {}",
                    counts.closed_form, counts.exhaustive
                ));
            }
            if counts.exhaustive != required {
                return Err(format!(
                    "n={n}: census and closed form both count {} MSTD sets at m=3, k=2, \
                     but the required count is {required}",
                    counts.exhaustive
                ));
            }
            details.push(format!("n={n}: {}", counts.exhaustive));
        }
        Ok(details.join(", "))
    })());
}

#[test]
fn criterion_02_small_censuses_prefer_sums() {
    report(2, "small censuses prefer sums", (|| {
        let mut narrowest = (0u64, 0u64, u64::MAX);
        for n in 3..=12u64 {
            for m in [2u64, 3] {
                let census = census_exhaustive(&cyclic(n), m, None, CENSUS_BUDGET)
                    .map_err(|e| e.to_string())?;
                let tally = census.aggregate();
                if tally.mstd <= tally.mdts {
                    return Err(format!(
                        "n={n}, m={m}: {} MSTD vs {} MDTS",
                        tally.mstd, tally.mdts
                    ));
                }
                if tally.mstd - tally.mdts < narrowest.2 {
                    narrowest = (n, m, tally.mstd - tally.mdts);
                }
            }
        }
        Ok(format!(
            "MSTD strictly ahead for n=3..12, m=2,3; narrowest margin {} at n={}, m={}",
            narrowest.2, narrowest.0, narrowest.1
        ))
    })());
}

#[test]
fn criterion_03_oversized_subsets_balance() {
    report(3, "oversized subsets balance", (|| {
        let mut checked = 0u64;
        for n in 3..=8u64 {
            let spec = cyclic(n);
            for m in n + 1..=2 * n {
                let space = binomial(2 * n, m);
                if space <= 10_000_000u64.into() {
                    let mut bad = None;
                    for_each_combination(2 * n as u32, m as u32, |combo| {
                        if bad.is_some() {
                            return;
                        }
                        let set =
                            SubsetD::new(&spec, combo.iter().map(|&c| c as u64)).expect("in range");
                        if !set.sumset().is_full() || !set.diffset().is_full() {
                            bad = Some(set.members());
                        }
                    });
                    if let Some(members) = bad {
                        return Err(format!("n={n}, m={m}: {members:?} is not full on both sides"));
                    }
                    checked += 1;
                } else {
                    let mut indices = Vec::new();
                    for trial in 0..10_000u64 {
                        let mut rng = trial_rng(3, trial);
                        sample_subset(&mut rng, 2 * n, m, &mut indices);
                        let set = SubsetD::new(&spec, indices.iter().copied()).expect("in range");
                        if !set.sumset().is_full() || !set.diffset().is_full() {
                            return Err(format!(
                                "n={n}, m={m}: sampled {indices:?} is not full on both sides"
                            ));
                        }
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!(
            "all subsets with m > n fill both the sumset and the difference set ({checked} cells)"
        ))
    })());
}

#[test]
fn criterion_04_expected_difference_size_is_exact() {
    report(4, "expected difference size is exact", (|| {
        for n in [3u64, 5, 7] {
            let spec = cyclic(n);
            for m in 1..=2 * n {
                let mut total = 0u64;
                for_each_combination(2 * n as u32, m as u32, |combo| {
                    let set =
                        SubsetD::new(&spec, combo.iter().map(|&c| c as u64)).expect("in range");
                    total += set.diffset().len();
                });
                let mean = BigRational::new(
                    BigInt::from(total),
                    BigInt::from(binomial(2 * n, m)),
                );
                let formula = expected_diffset_size_in(n, m, EvalMode::Rational)
                    .map_err(|e| e.to_string())?;
                let exact = formula.exact.ok_or("rational mode must carry an exact value")?;
                if exact != mean {
                    return Err(format!("n={n}, m={m}: formula {exact} vs brute mean {mean}"));
                }
                if (n, m) == (3, 2) && exact != ratio(12, 5) {
                    return Err(format!("anchor (3,2) is {exact}, wanted 12/5"));
                }
                if (n, m) == (5, 2) && exact != ratio(22, 9) {
                    return Err(format!("anchor (5,2) is {exact}, wanted 22/9"));
                }
            }
        }
        Ok("formula equals the brute-force mean for n=3,5,7 at every m, \
            anchors 12/5 and 22/9 included"
            .into())
    })());
}

#[test]
fn criterion_05_large_prime_crossing() {
    report(5, "large prime crossing", (|| {
        let n = 10_007u64;
        let curve = expectation_curve(n, 1_000, 1).map_err(|e| e.to_string())?;
        let crossing = curve.crossing.ok_or("no m reached E >= n by m=1000")?;
        if !(138..=140).contains(&crossing) {
            return Err(format!("first m with E >= n is {crossing}, wanted 138..=140"));
        }
        let at_1000 = curve
            .points
            .iter()
            .find(|p| p.m == 1_000)
            .ok_or("curve is missing the m=1000 point")?;
        let floor = 2.0 * n as f64 - 0.5;
        if at_1000.expected_diff < floor {
            return Err(format!("E(m=1000) = {} < {floor}", at_1000.expected_diff));
        }
        Ok(format!(
            "crossing at m={crossing} (1.3875*sqrt(n) = {:.1}), E(m=1000) = {:.3} >= {floor}",
            1.3875 * (n as f64).sqrt(),
            at_1000.expected_diff
        ))
    })());
}

#[test]
fn criterion_06_collision_mean_bound() {
    report(6, "collision mean bound", (|| {
        for n in [5u64, 7] {
            let spec = cyclic(n);
            let j = spec.involution_count();
            for m in 1..=3u64 {
                let exact = expected_xa_exact(&spec, m, DEFAULT_TRIPLE_BUDGET)
                    .map_err(|e| e.to_string())?;
                let (mi, ni, ji) = (m as i64, n as i64, j as i64);
                let bound = ratio(7 * mi.pow(4), 32 * ni)
                    + ratio(mi.pow(3), ni)
                    + ratio(5 * ji * mi * mi, 8 * ni);
                if exact > bound {
                    return Err(format!("n={n}, m={m}: E[X_A] = {exact} exceeds bound {bound}"));
                }
            }
        }
        let spec = cyclic(101);
        let sampled = mean_xa_sampled(&spec, 6, 100_000, 0xC0FFEE).map_err(|e| e.to_string())?;
        let bound = expected_xa_bound(101, 1, 6);
        let margin = bound - sampled.mean;
        if margin < 3.0 * sampled.std_error {
            return Err(format!(
                "n=101, m=6: mean {} is within 3 standard errors ({}) of bound {bound}",
                sampled.mean, sampled.std_error
            ));
        }
        Ok(format!(
            "exact E[X_A] within bound for n=5,7 at m<=3; sampled mean {:.4} sits {:.1} \
             standard errors below the bound {:.4}",
            sampled.mean,
            margin / sampled.std_error,
            bound
        ))
    })());
}

#[test]
fn criterion_07_triple_class_bounds_and_partition() {
    report(7, "triple class bounds and partition", (|| {
        let mut specs: Vec<GroupSpec> = (2..=10).map(|q| cyclic(q)).collect();
        for text in ["Z2xZ2", "Z2xZ3", "Z2xZ4", "Z2xZ5", "Z3xZ3"] {
            specs.push(GroupSpec::parse(text).map_err(|e| e.to_string())?);
        }
        for spec in &specs {
            let n = spec.order();
            let j = spec.involution_count();
            let counts = triple_class_counts(spec, DEFAULT_TRIPLE_BUDGET)
                .map_err(|e| e.to_string())?;
            let bounds = triple_class_bounds(n, j);
            for (class, (&count, &bound)) in
                counts.counts.iter().zip(bounds.iter()).enumerate()
            {
                if count > bound {
                    return Err(format!(
                        "{}: class {} holds {count} triples, above the bound {bound}",
                        spec.render(),
                        class + 1
                    ));
                }
            }
            if counts.redundant != redundant_triple_count(n) {
                return Err(format!(
                    "{}: {} redundant triples, expected {}",
                    spec.render(),
                    counts.redundant,
                    redundant_triple_count(n)
                ));
            }
            if counts.total() != (2 * n).pow(3) {
                return Err(format!(
                    "{}: classes plus redundant sum to {}, not (2n)^3 = {}",
                    spec.render(),
                    counts.total(),
                    (2 * n).pow(3)
                ));
            }
        }
        Ok(format!(
            "bounds and exact partition hold for all {} groups of order <= 10",
            specs.len()
        ))
    })());
}

#[test]
fn criterion_08_cross_group_dichotomy() {
    report(8, "cross group dichotomy", (|| {
        let mut details = Vec::new();
        for n in 2..=5u32 {
            let totals =
                cross_group_collision_totals(n, DEFAULT_CROSS_BUDGET).map_err(|e| e.to_string())?;
            let expected = if n % 2 == 0 {
                CrossVerdict::ProductLarger
            } else {
                CrossVerdict::Equal
            };
            if totals.verdict != expected {
                return Err(format!(
                    "n={n}: product total {} vs cyclic total {}",
                    totals.product_total, totals.cyclic_total
                ));
            }
            details.push(format!("n={n}: {}/{}", totals.product_total, totals.cyclic_total));
        }
        Ok(format!("equal for odd n, product side larger for even n ({})", details.join(", ")))
    })());
}

#[test]
fn criterion_09_flip_proportion_threshold() {
    report(9, "flip proportion threshold", (|| {
        let at_six = proportion_condition(6);
        if at_six.value != ratio(41, 64) {
            return Err(format!("m=6 value is {}, wanted 41/64", at_six.value));
        }
        if !(at_six.pass && at_six.value > ratio(3, 5)) {
            return Err("41/64 must pass the 3/5 threshold".into());
        }
        if let Some(m) = proportion_sweep(6, 2_000) {
            return Err(format!("condition fails at m={m}"));
        }
        Ok("exact value 41/64 at m=6; condition holds for every m in 6..=2000".into())
    })());
}

#[test]
fn criterion_10_large_window_census() {
    report(10, "large window census", (|| {
        let spec = cyclic(2_311);
        let census = census_sampled(&spec, 6, 100_000, 0xBEADED).map_err(|e| e.to_string())?;
        let (mstd_lo, mstd_hi) = census.wilson_mstd().ok_or("missing MSTD interval")?;
        let (mdts_lo, mdts_hi) = census.wilson_mdts().ok_or("missing MDTS interval")?;
        let (ub_lo, ub_hi) =
            census.wilson_mstd_among_unbalanced().ok_or("missing conditional interval")?;
        if mstd_lo <= mdts_hi {
            return Err(format!(
                "MSTD interval [{mstd_lo:.4}, {mstd_hi:.4}] does not clear \
                 MDTS interval [{mdts_lo:.4}, {mdts_hi:.4}]"
            ));
        }
        if mstd_lo <= 0.5 {
            return Err(format!("overall MSTD interval low {mstd_lo:.4} is not above 1/2"));
        }
        if ub_lo <= 0.5 {
            return Err(format!("conditional MSTD interval low {ub_lo:.4} is not above 1/2"));
        }
        Ok(format!(
            "n=2311, m=6, 100000 samples: MSTD [{mstd_lo:.4}, {mstd_hi:.4}] above \
             MDTS [{mdts_lo:.4}, {mdts_hi:.4}]; among unbalanced [{ub_lo:.4}, {ub_hi:.4}]; \
             both above 1/2"
        ))
    })());
}

#[test]
fn criterion_11_probability_kernels_match_oracles() {
    report(11, "probability kernels match oracles", (|| {
        for n in 2..=10u64 {
            let masks: Vec<u32> = (0..1u32 << n).collect();
            let reach = |mask: u32, diff: bool| -> u32 {
                let mut out = 0u32;
                for a in 0..n {
                    if mask & (1 << a) == 0 {
                        continue;
                    }
                    for b in 0..n {
                        if mask & (1 << b) == 0 {
                            continue;
                        }
                        let c = if diff { (n + a - b) % n } else { (a + b) % n };
                        out |= 1 << c;
                    }
                }
                out
            };
            let sums: Vec<u32> = masks.iter().map(|&s| reach(s, false)).collect();
            let diffs: Vec<u32> = masks.iter().map(|&s| reach(s, true)).collect();
            for t in 0..=n {
                for i in 0..n {
                    for (kind, table) in [("sum", &sums), ("diff", &diffs)] {
                        let favorable = masks
                            .iter()
                            .zip(table.iter())
                            .filter(|(s, r)| {
                                s.count_ones() as u64 == t && *r & (1u32 << i) == 0
                            })
                            .count();
                        let closed = if kind == "sum" {
                            prob_missing_sum_cyclic(n, i, t)
                        } else {
                            prob_missing_diff_cyclic(n, i, t)
                        };
                        let exact = closed.exact.ok_or("kernel must be exact")?;
                        let oracle = BigRational::new(
                            BigInt::from(favorable),
                            BigInt::from(binomial(n, t)),
                        );
                        if exact != oracle {
                            return Err(format!(
                                "{kind} kernel at n={n}, i={i}, size {t}: \
                                 closed form {exact} vs oracle {oracle}"
                            ));
                        }
                    }
                }
            }
            let negated = |mask: u32| -> u32 {
                let mut out = 0u32;
                for a in 0..n {
                    if mask & (1 << a) != 0 {
                        out |= 1 << ((n - a) % n);
                    }
                }
                out
            };
            for k in 0..=n {
                for mk in 0..=n {
                    let mut favorable = 0u64;
                    for s2 in masks.iter().filter(|s| s.count_ones() as u64 == k) {
                        let forbidden = negated(*s2);
                        favorable += masks
                            .iter()
                            .filter(|s1| s1.count_ones() as u64 == mk && *s1 & forbidden == 0)
                            .count() as u64;
                    }
                    let closed = prob_missing_cross_sum(n, k, mk);
                    let exact = closed.exact.ok_or("kernel must be exact")?;
                    let oracle = BigRational::new(
                        BigInt::from(favorable),
                        BigInt::from(binomial(n, k) * binomial(n, mk)),
                    );
                    if exact != oracle {
                        return Err(format!(
                            "two-set kernel at n={n}, k={k}, mk={mk}: \
                             closed form {exact} vs oracle {oracle}"
                        ));
                    }
                }
            }
        }
        Ok("sum, difference, and two-set kernels match exhaustive oracles for all n <= 10".into())
    })());
}

#[test]
fn criterion_12_binomial_doubling_identity() {
    report(12, "binomial doubling identity", (|| {
        for n in 1..=60u64 {
            for m in 0..=n {
                if !binomial_identity_holds(n, m) {
                    return Err(format!("identity fails at n={n}, m={m}"));
                }
            }
        }
        Ok("doubling identity holds in exact integers for all n <= 60".into())
    })());
}
