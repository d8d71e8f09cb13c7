//! Runtime verification battery: re-derives the library's central
//! quantities from scratch at small scale and reports one line per
//! check. The `verify` subcommand runs this and exits nonzero on any
//! failure.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::bounds::{proportion_condition, proportion_sweep};
use crate::census::{census_exhaustive, m3k2_counts, sample_subset, trial_rng};
use crate::collisions::{
    count_xa, cross_group_collision_totals, expected_xa_exact, mean_xa_exhaustive,
    redundant_triple_count, triple_class_bounds, triple_class_counts, xa_from_quadruples,
    xa_from_triples, CrossVerdict, DEFAULT_CROSS_BUDGET, DEFAULT_TRIPLE_BUDGET,
};
use crate::combinat::{binomial, for_each_combination, ratio};
use crate::expectation::{
    binomial_identity_holds, expected_diffset_size, prob_missing_diff_cyclic,
    prob_missing_sum_cyclic,
};
use crate::group::GroupSpec;
use crate::setops::SubsetD;

type Check = (&'static str, fn() -> Result<(), String>);

fn fail(message: String) -> Result<(), String> {
    Err(message)
}

fn group_axioms() -> Result<(), String> {
    for expr in ["Z5", "Z6", "Z2xZ3"] {
        let spec = GroupSpec::parse(expr).unwrap();
        let order = 2 * spec.order();
        let e = 0u64;
        for a in 0..order {
            if spec.mul_idx(a, e) != a || spec.mul_idx(e, a) != a {
                return fail(format!("{expr}: identity fails at {a}"));
            }
            let inv = spec.inv_idx(a);
            if spec.mul_idx(a, inv) != e || spec.mul_idx(inv, a) != e {
                return fail(format!("{expr}: inverse fails at {a}"));
            }
            for b in 0..order {
                for c in 0..order {
                    let left = spec.mul_idx(spec.mul_idx(a, b), c);
                    let right = spec.mul_idx(a, spec.mul_idx(b, c));
                    if left != right {
                        return fail(format!("{expr}: associativity fails at {a},{b},{c}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn pair_sizes_match_direct_products() -> Result<(), String> {
    let mut rng = trial_rng(0xEC0, 0);
    for expr in ["Z5", "Z8", "Z2xZ3", "Z3xZ3"] {
        let spec = GroupSpec::parse(expr).unwrap();
        let order = 2 * spec.order();
        let mut picks = Vec::new();
        for _ in 0..60 {
            let m = rng.gen_range(1..=order.min(6));
            sample_subset(&mut rng, order, m, &mut picks);
            let a = SubsetD::new(&spec, picks.iter().copied()).unwrap();
            let members = a.members();
            let mut sums = vec![false; order as usize];
            let mut diffs = vec![false; order as usize];
            for &x in &members {
                for &y in &members {
                    sums[spec.mul_idx(x, y) as usize] = true;
                    diffs[spec.mul_idx(x, spec.inv_idx(y)) as usize] = true;
                }
            }
            let direct = (
                sums.iter().filter(|&&b| b).count() as u64,
                diffs.iter().filter(|&&b| b).count() as u64,
            );
            if a.pair_sizes() != direct {
                return fail(format!("{expr} {picks:?}: {:?} vs {direct:?}", a.pair_sizes()));
            }
        }
    }
    Ok(())
}

fn triple_count_closed_form() -> Result<(), String> {
    for n in 3..=8u64 {
        let counts = m3k2_counts(n).map_err(|e| e.to_string())?;
        if counts.closed_form != counts.exhaustive {
            return fail(format!(
                "n={n}: closed form {} vs census {}",
                counts.closed_form, counts.exhaustive
            ));
        }
    }
    Ok(())
}

fn small_censuses_prefer_sums() -> Result<(), String> {
    for n in 3..=8u32 {
        let spec = GroupSpec::cyclic(n).unwrap();
        for m in [2u64, 3] {
            let tally = census_exhaustive(&spec, m, None, 10_000_000)
                .map_err(|e| e.to_string())?
                .aggregate();
            if tally.mstd <= tally.mdts {
                return fail(format!("n={n} m={m}: mstd {} <= mdts {}", tally.mstd, tally.mdts));
            }
        }
    }
    Ok(())
}

fn oversized_subsets_balance() -> Result<(), String> {
    for n in 3..=5u32 {
        let spec = GroupSpec::cyclic(n).unwrap();
        for m in (2 * n as u64 - 2)..=(2 * n as u64) {
            if m <= n as u64 {
                continue;
            }
            let tally = census_exhaustive(&spec, m, None, 10_000_000)
                .map_err(|e| e.to_string())?
                .aggregate();
            if tally.balanced != tally.total {
                return fail(format!("n={n} m={m}: {} of {} balanced", tally.balanced, tally.total));
            }
        }
    }
    Ok(())
}

fn collision_counters_agree() -> Result<(), String> {
    let mut rng = trial_rng(0xEC1, 0);
    for expr in ["Z4", "Z6", "Z2xZ2"] {
        let spec = GroupSpec::parse(expr).unwrap();
        let order = 2 * spec.order();
        let mut picks = Vec::new();
        for _ in 0..50 {
            let m = rng.gen_range(1..=order.min(5));
            sample_subset(&mut rng, order, m, &mut picks);
            let a = SubsetD::new(&spec, picks.iter().copied()).unwrap();
            let (fast, quad, tri) = (count_xa(&a), xa_from_quadruples(&a), xa_from_triples(&a));
            if fast != quad || fast != tri {
                return fail(format!("{expr} {picks:?}: {fast}/{quad}/{tri}"));
            }
        }
    }
    Ok(())
}

fn accounting_inequality() -> Result<(), String> {
    let mut rng = trial_rng(0xEC2, 0);
    for expr in ["Z5", "Z7", "Z2xZ3"] {
        let spec = GroupSpec::parse(expr).unwrap();
        let order = 2 * spec.order();
        let mut picks = Vec::new();
        for _ in 0..80 {
            let m = rng.gen_range(1..=order.min(6));
            sample_subset(&mut rng, order, m, &mut picks);
            let a = SubsetD::new(&spec, picks.iter().copied()).unwrap();
            let report = crate::collisions::CollisionReport::new(&a);
            if report.sum_size + report.xa < report.naive_sum_slots {
                return fail(format!("{expr} {picks:?}: accounting violated"));
            }
            if report.xa == 0 && report.sum_size != report.naive_sum_slots {
                return fail(format!("{expr} {picks:?}: collision-free size not exact"));
            }
        }
    }
    Ok(())
}

fn triple_partition() -> Result<(), String> {
    for expr in ["Z3", "Z5", "Z7", "Z2xZ3"] {
        let spec = GroupSpec::parse(expr).unwrap();
        let n = spec.order();
        let classes = triple_class_counts(&spec, DEFAULT_TRIPLE_BUDGET).map_err(|e| e.to_string())?;
        if classes.total() != (2 * n).pow(3) {
            return fail(format!("{expr}: classes do not partition the cube"));
        }
        if classes.redundant != redundant_triple_count(n) {
            return fail(format!("{expr}: redundant count off"));
        }
        let bounds = triple_class_bounds(n, spec.involution_count());
        for (count, bound) in classes.counts.iter().zip(bounds) {
            if *count > bound {
                return fail(format!("{expr}: class bound violated"));
            }
        }
    }
    Ok(())
}

fn collision_expectations_agree() -> Result<(), String> {
    let spec = GroupSpec::cyclic(5).unwrap();
    for m in 1..=3u64 {
        let from_classes = expected_xa_exact(&spec, m, DEFAULT_TRIPLE_BUDGET)
            .map_err(|e| e.to_string())?;
        let from_subsets = mean_xa_exhaustive(&spec, m, 1_000_000).map_err(|e| e.to_string())?;
        if from_classes != from_subsets {
            return fail(format!("m={m}: {from_classes} vs {from_subsets}"));
        }
    }
    Ok(())
}

fn probability_kernels() -> Result<(), String> {
    for n in 2..=7u64 {
        for i in 0..n {
            for t in 0..=n {
                let mut sum_hits = 0u64;
                let mut diff_hits = 0u64;
                let mut total = 0u64;
                for_each_combination(n as u32, t as u32, |s| {
                    total += 1;
                    let in_sum = s
                        .iter()
                        .any(|&a| s.iter().any(|&b| (u64::from(a) + u64::from(b)) % n == i));
                    let in_diff = s
                        .iter()
                        .any(|&a| s.iter().any(|&b| (u64::from(a) + n - u64::from(b)) % n == i));
                    sum_hits += u64::from(!in_sum);
                    diff_hits += u64::from(!in_diff);
                });
                let expect_sum = BigRational::new(BigInt::from(sum_hits), BigInt::from(total));
                let expect_diff = BigRational::new(BigInt::from(diff_hits), BigInt::from(total));
                if prob_missing_sum_cyclic(n, i, t).exact != Some(expect_sum) {
                    return fail(format!("sum kernel off at n={n} i={i} t={t}"));
                }
                if prob_missing_diff_cyclic(n, i, t).exact != Some(expect_diff) {
                    return fail(format!("diff kernel off at n={n} i={i} k={t}"));
                }
            }
        }
    }
    Ok(())
}

fn diffset_expectation_formula() -> Result<(), String> {
    for n in [3u64, 5] {
        let spec = GroupSpec::cyclic(n as u32).unwrap();
        for m in 1..=2 * n {
            let mut total_diff = 0u64;
            let mut count = 0u64;
            for_each_combination(2 * n as u32, m as u32, |combo| {
                let a = SubsetD::new(&spec, combo.iter().map(|&v| u64::from(v))).unwrap();
                total_diff += a.pair_sizes().1;
                count += 1;
            });
            let brute = BigRational::new(BigInt::from(total_diff), BigInt::from(count));
            let formula = expected_diffset_size(n, m).map_err(|e| e.to_string())?;
            if formula.exact != Some(brute) {
                return fail(format!("n={n} m={m}: formula disagrees with the mean"));
            }
        }
    }
    Ok(())
}

fn proportion_threshold() -> Result<(), String> {
    let six = proportion_condition(6);
    if six.value != ratio(41, 64) || !six.pass {
        return fail(format!("m=6 value {}", six.value));
    }
    if let Some(m) = proportion_sweep(6, 100) {
        return fail(format!("proportion fails at m={m}"));
    }
    Ok(())
}

fn binomial_identity() -> Result<(), String> {
    for n in 0..=20u64 {
        for m in 0..=n {
            if !binomial_identity_holds(n, m) {
                return fail(format!("identity fails at n={n} m={m}"));
            }
        }
    }
    Ok(())
}

fn cross_collision_dichotomy() -> Result<(), String> {
    let even = cross_group_collision_totals(2, DEFAULT_CROSS_BUDGET).map_err(|e| e.to_string())?;
    if even.verdict != CrossVerdict::ProductLarger {
        return fail("n=2: expected the product group to collide more".into());
    }
    let odd = cross_group_collision_totals(3, DEFAULT_CROSS_BUDGET).map_err(|e| e.to_string())?;
    if odd.verdict != CrossVerdict::Equal {
        return fail("n=3: expected equal totals".into());
    }
    Ok(())
}

fn census_totals() -> Result<(), String> {
    let spec = GroupSpec::parse("Z6").unwrap();
    for m in 1..=4u64 {
        let report = census_exhaustive(&spec, m, None, 10_000_000).map_err(|e| e.to_string())?;
        for row in &report.rows {
            let expect = binomial(6, row.k) * binomial(6, m - row.k);
            if BigInt::from(row.tally.total) != BigInt::from(expect) {
                return fail(format!("m={m} k={}: row total off", row.k));
            }
        }
        if BigInt::from(report.aggregate().total) != BigInt::from(binomial(12, m)) {
            return fail(format!("m={m}: aggregate total off"));
        }
    }
    Ok(())
}

const CHECKS: &[Check] = &[
    ("group_axioms", group_axioms),
    ("pair_sizes_match_direct_products", pair_sizes_match_direct_products),
    ("census_totals_are_hypergeometric", census_totals),
    ("m3k2_closed_form_matches_census", triple_count_closed_form),
    ("small_censuses_prefer_sums", small_censuses_prefer_sums),
    ("oversized_subsets_balance", oversized_subsets_balance),
    ("collision_counters_agree", collision_counters_agree),
    ("accounting_inequality_holds", accounting_inequality),
    ("triple_classes_partition", triple_partition),
    ("collision_expectations_agree", collision_expectations_agree),
    ("probability_kernels_match_enumeration", probability_kernels),
    ("diffset_expectation_formula", diffset_expectation_formula),
    ("proportion_threshold", proportion_threshold),
    ("binomial_identity", binomial_identity),
    ("cross_collision_dichotomy", cross_collision_dichotomy),
];

/// Runs every check, printing one `ok`/`FAIL` line per check to `out`.
/// Returns whether all of them passed.
pub fn run_all(out: &mut dyn Write) -> io::Result<bool> {
    let mut passed = 0usize;
    for (name, check) in CHECKS {
        match check() {
            Ok(()) => {
                passed += 1;
                writeln!(out, "ok   {name}")?;
            }
            Err(detail) => writeln!(out, "FAIL {name}: {detail}")?,
        }
    }
    writeln!(out, "{passed} of {} checks passed", CHECKS.len())?;
    Ok(passed == CHECKS.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_battery_passes_and_reports_each_check() {
        let mut buf = Vec::new();
        let ok = run_all(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(ok, "{text}");
        assert_eq!(text.lines().filter(|l| l.starts_with("ok   ")).count(), CHECKS.len());
        assert!(!text.contains("FAIL"));
    }
}
